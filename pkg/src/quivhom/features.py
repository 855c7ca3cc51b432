"""Per-vertex homology feature vectors.

For each vertex v and hop radius k = 1..H: take the forward k-hop
neighborhood of v, induce the subquiver, break cycles with the seeded
feedback-arc-set pass, and record dim H1 of the resulting weighted DAG.
The N x H matrix of those dimensions is the node feature matrix; rerunning
with the same seed reproduces it exactly, regardless of thread count,
because every (vertex, hop) pair works from its own derived seed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .fas import berger_shor
from .homology import boundary1_matrix, scalar_representation
from .linalg import EXACT
from .quiver import WeightedQuiver, induced_subquiver, k_hop_vertices

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    """One step of the splitmix64 mixer (Steele-Lea-Flood constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *parts: int) -> int:
    """Mix a base seed with integer labels into a new 64-bit seed."""
    h = seed & _MASK64
    for p in parts:
        h = _splitmix64(h ^ (p & _MASK64))
    return h


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """N x H matrix of per-vertex homology dimensions plus the run config."""

    rows: tuple[tuple[int, ...], ...]
    hops: int
    seed: int
    mode: str = EXACT
    tol: float = 1e-9

    @property
    def vertex_count(self) -> int:
        return len(self.rows)


def feature_vector(
    wq: WeightedQuiver,
    v: int,
    hops: int,
    seed: int,
    mode: str = EXACT,
    tol: float = 1e-9,
) -> tuple[int, ...]:
    """dim H1 of the k-hop DAG around v, for k = 1..hops."""
    if hops < 1:
        raise ValueError("hops must be positive")
    rep = scalar_representation(mode)
    out: list[int] = []
    for k in range(1, hops + 1):
        sub = induced_subquiver(wq, k_hop_vertices(wq.quiver, v, k))
        dag = berger_shor(sub.wq, derive_seed(seed, v, k)).kept
        m = dag.arrow_count
        if m == 0:
            out.append(0)
            continue
        boundary = boundary1_matrix(dag, rep)
        out.append(m - boundary.rank(tol))
    return tuple(out)


def feature_matrix(
    wq: WeightedQuiver,
    hops: int,
    seed: int,
    mode: str = EXACT,
    tol: float = 1e-9,
    threads: int = 1,
) -> FeatureMatrix:
    """Feature vectors for every vertex, assembled row-wise.

    The per-(vertex, hop) seeds are derived from the base seed, so serial
    and parallel runs produce identical matrices.
    """
    vertices = range(wq.vertex_count)

    def one(v: int) -> tuple[int, ...]:
        return feature_vector(wq, v, hops, seed, mode, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = tuple(pool.map(one, vertices))
    else:
        rows = tuple(one(v) for v in vertices)
    return FeatureMatrix(rows=rows, hops=hops, seed=seed, mode=mode, tol=tol)
