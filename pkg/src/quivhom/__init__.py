"""Homology of weighted directed graphs (quivers) and homology-based
per-vertex feature vectors."""

from .errors import (
    ChainCapExceeded,
    CyclicQuiverError,
    FieldModeError,
    MorphismError,
    ParseError,
    QuivhomError,
    WeightError,
)
from .fas import FasResult, berger_shor, to_dag
from .features import FeatureMatrix, derive_seed, feature_matrix, feature_vector
from .homology import (
    ChainComplexSlice,
    QuiverMorphism,
    Representation,
    boundary1_matrix,
    build_chain_complex,
    dim_h1,
    h1_kernel_basis,
    homology_dims,
    induced_chain_map,
    scalar_representation,
)
from .ingest import (
    jaccard_weights,
    load_attributes,
    load_weighted_edges,
    orient_undirected,
    read_feature_matrix,
    write_feature_matrix,
)
from .linalg import EXACT, FLOAT, DenseMatrix
from .quiver import (
    InducedSubquiver,
    NChain,
    Path,
    Quiver,
    WeightedQuiver,
    count_nchains,
    enumerate_nchains,
    enumerate_paths,
    find_cycle,
    induced_subquiver,
    is_acyclic,
    k_hop_vertices,
    make_nchain,
    make_path,
    topological_order,
)

__version__ = "0.1.0"

__all__ = [
    "ChainCapExceeded",
    "ChainComplexSlice",
    "CyclicQuiverError",
    "DenseMatrix",
    "EXACT",
    "FLOAT",
    "FasResult",
    "FeatureMatrix",
    "FieldModeError",
    "InducedSubquiver",
    "MorphismError",
    "NChain",
    "ParseError",
    "Path",
    "Quiver",
    "QuiverMorphism",
    "QuivhomError",
    "Representation",
    "WeightError",
    "WeightedQuiver",
    "berger_shor",
    "boundary1_matrix",
    "build_chain_complex",
    "count_nchains",
    "derive_seed",
    "dim_h1",
    "enumerate_nchains",
    "enumerate_paths",
    "feature_matrix",
    "feature_vector",
    "find_cycle",
    "h1_kernel_basis",
    "homology_dims",
    "induced_chain_map",
    "induced_subquiver",
    "is_acyclic",
    "jaccard_weights",
    "k_hop_vertices",
    "load_attributes",
    "load_weighted_edges",
    "make_nchain",
    "make_path",
    "orient_undirected",
    "read_feature_matrix",
    "scalar_representation",
    "to_dag",
    "topological_order",
    "write_feature_matrix",
]
