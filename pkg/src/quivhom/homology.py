"""Homology of weighted acyclic quivers.

Two routes to the same numbers:

* the fast path: dim H1 is the nullity of the degree-1 boundary matrix
  whose column for an arrow u holds -I at the source block and the weight
  action at the target block (H_n vanishes for n >= 2 on acyclic quivers);
* a brute-force chain complex over the nondegenerate chains of the free
  category, optionally truncated by composite path length, which recomputes
  the same homology from first principles and is used to cross-check the
  fast path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import CyclicQuiverError, FieldModeError, MorphismError, WeightError
from .linalg import EXACT, FLOAT, DenseMatrix
from .quiver import (
    NChain,
    Path,
    WeightedQuiver,
    enumerate_nchains,
    is_acyclic,
    find_cycle,
)

# A block is a small dense d x d matrix stored as nested tuples.
_Block = tuple


@dataclass(frozen=True)
class Representation:
    """A weight action on a d-dimensional coefficient module.

    ``act`` maps a weight (an exact rational) to an invertible d x d
    DenseMatrix in the given field mode, and must be multiplicative:
    act(w1 * w2) == act(w1) @ act(w2). The 1-dimensional scalar action
    act(w) = [[w]] is the default used by the feature pipeline.
    """

    dim: int
    act: Callable[[Fraction], DenseMatrix]
    mode: str = EXACT

    def action(self, w: Fraction) -> DenseMatrix:
        m = self.act(w)
        if (m.rows, m.cols) != (self.dim, self.dim):
            raise ValueError("weight action has wrong shape")
        if m.mode != self.mode:
            raise FieldModeError("weight action mode does not match representation")
        return m


def scalar_representation(mode: str = EXACT) -> Representation:
    """The 1-dimensional representation acting by multiplication."""
    if mode == FLOAT:
        return Representation(1, lambda w: DenseMatrix(1, 1, (float(w),), FLOAT), FLOAT)
    return Representation(1, lambda w: DenseMatrix(1, 1, (Fraction(w),), EXACT), EXACT)


def _require_acyclic(wq: WeightedQuiver) -> None:
    if not is_acyclic(wq.quiver):
        raise CyclicQuiverError(
            "weighted quiver homology requires an acyclic quiver",
            cycle=find_cycle(wq.quiver),
        )


def _check_invertible(rep: Representation, weights: Sequence[Fraction]) -> dict[Fraction, DenseMatrix]:
    """Action matrices for each distinct weight, verified invertible."""
    actions: dict[Fraction, DenseMatrix] = {}
    for w in weights:
        if w in actions:
            continue
        m = rep.action(w)
        if m.rank() != rep.dim:
            raise WeightError(f"action of weight {w} is not invertible")
        actions[w] = m
    return actions


def path_weight(wq: WeightedQuiver, p: Path) -> Fraction:
    """The multiplicative extension of the arrow weights to a path."""
    w = Fraction(1)
    for a in p.arrows:
        w *= wq.weights[a]
    return w


def boundary1_matrix(wq: WeightedQuiver, rep: Representation | None = None) -> DenseMatrix:
    """The degree-1 boundary matrix of (Q, w) with coefficients in rep.

    Rows are vertex x coordinate blocks, columns arrow x coordinate blocks;
    the column block of arrow u is -I at the source and the action of w(u)
    at the target. dim H1 equals its nullity.
    """
    rep = rep or scalar_representation()
    _require_acyclic(wq)
    actions = _check_invertible(rep, wq.weights)
    d = rep.dim
    q = wq.quiver
    zero = 0.0 if rep.mode == FLOAT else Fraction(0)
    one = 1.0 if rep.mode == FLOAT else Fraction(1)
    rows = q.vertex_count * d
    cols = q.arrow_count * d
    ent = [zero] * (rows * cols)
    for a, (s, t) in enumerate(q.arrows):
        act = actions[wq.weights[a]]
        for r in range(d):
            for c in range(d):
                ent[(t * d + r) * cols + a * d + c] += act.at(r, c)
            ent[(s * d + r) * cols + a * d + r] -= one
    return DenseMatrix(rows, cols, tuple(ent), rep.mode)


def dim_h1(wq: WeightedQuiver, rep: Representation | None = None, tol: float = 1e-9) -> int:
    """dim H1(Q, w; M) = columns - rank of the degree-1 boundary matrix."""
    m = boundary1_matrix(wq, rep)
    return m.cols - m.rank(tol)


def h1_kernel_basis(
    wq: WeightedQuiver, rep: Representation | None = None
) -> list[tuple[Fraction, ...]]:
    """A basis of H1 as kernel vectors indexed by arrow x coordinate."""
    rep = rep or scalar_representation()
    if rep.mode != EXACT:
        raise FieldModeError("kernel basis requires exact mode")
    return boundary1_matrix(wq, rep).kernel_basis()


@dataclass(frozen=True, eq=False)
class ChainComplexSlice:
    """Degrees 0..n_max of the nondegenerate chain complex of F(Q) with
    coefficients twisted by the weight action, optionally ell-truncated.

    ``bases[0]`` is the vertex list; ``bases[n]`` the NChain basis in
    degree n. ``boundaries[n]`` maps degree n to degree n-1 (index 0 is
    None). The d0 face of a chain is twisted by the action of the weight
    of its first morphism; middle faces compose consecutive morphisms with
    alternating signs; the last face drops the final morphism.
    """

    wq: WeightedQuiver
    rep: Representation
    n_max: int
    ell: int | None
    bases: tuple
    boundaries: tuple

    def basis_sizes(self) -> list[int]:
        return [len(b) for b in self.bases]


def _chain_faces(
    wq: WeightedQuiver, chain: NChain
) -> list[tuple[object, int, Fraction | None]]:
    """Faces of a chain as (face key, sign, weight-or-None).

    The face key is an NChain (or a vertex index in degree 1). A non-None
    weight marks the d0 face, whose coefficient block is the action of
    that weight; all other faces carry sign * identity.
    """
    parts = chain.parts
    n = len(parts)
    w0 = path_weight(wq, parts[0])
    if n == 1:
        # d0 = target twisted by the path weight, d1 = source
        return [(parts[0].target, 1, w0), (parts[0].source, -1, None)]
    faces: list[tuple[object, int, Fraction | None]] = [
        (NChain(parts[1:]), 1, w0)
    ]
    sign = -1
    for i in range(1, n):
        merged = parts[i - 1].compose(parts[i])
        faces.append((NChain(parts[:i - 1] + (merged,) + parts[i + 1:]), sign, None))
        sign = -sign
    faces.append((NChain(parts[:-1]), sign, None))
    return faces


def build_chain_complex(
    wq: WeightedQuiver,
    rep: Representation | None = None,
    n_max: int = 3,
    ell: int | None = None,
) -> ChainComplexSlice:
    """Enumerate chain bases up to degree n_max and build all boundary
    matrices; verifies boundary-of-boundary == 0 during construction."""
    rep = rep or scalar_representation()
    _require_acyclic(wq)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    actions = _check_invertible(rep, wq.weights)
    d = rep.dim
    q = wq.quiver

    def action_of(w: Fraction) -> DenseMatrix:
        m = actions.get(w)
        if m is None:
            m = rep.action(w)
            actions[w] = m
        return m

    bases: list[tuple] = [tuple(range(q.vertex_count))]
    index: list[dict] = [{v: v for v in range(q.vertex_count)}]
    for n in range(1, n_max + 1):
        chains = tuple(enumerate_nchains(q, n, ell))
        bases.append(chains)
        index.append({c: i for i, c in enumerate(chains)})

    # per-degree columns: chain index -> list of (face row index, coeff block)
    sparse: list[list[list[tuple[int, DenseMatrix]]]] = [[]]
    identity = DenseMatrix.identity(d, rep.mode)
    neg_identity = DenseMatrix.zeros(d, d, rep.mode).sub(identity)
    for n in range(1, n_max + 1):
        cols: list[list[tuple[int, DenseMatrix]]] = []
        face_index = index[n - 1]
        for chain in bases[n]:
            col: list[tuple[int, DenseMatrix]] = []
            for key, sign, w in _chain_faces(wq, chain):
                # truncation closure: faces never gain composite length,
                # so a missing key would mean a broken basis
                fi = face_index[key]
                if w is not None:
                    block = action_of(w)
                    if sign < 0:
                        block = DenseMatrix.zeros(d, d, rep.mode).sub(block)
                else:
                    block = identity if sign > 0 else neg_identity
                col.append((fi, block))
            cols.append(col)
        sparse.append(cols)

    _verify_square_zero(sparse, d, rep.mode)

    boundaries: list[DenseMatrix | None] = [None]
    zero = 0.0 if rep.mode == FLOAT else Fraction(0)
    for n in range(1, n_max + 1):
        rows = len(bases[n - 1]) * d
        ncols = len(bases[n]) * d
        ent = [zero] * (rows * ncols)
        for ci, col in enumerate(sparse[n]):
            for fi, block in col:
                for r in range(d):
                    base = (fi * d + r) * ncols + ci * d
                    for c in range(d):
                        ent[base + c] += block.at(r, c)
        boundaries.append(DenseMatrix(rows, ncols, tuple(ent), rep.mode))

    return ChainComplexSlice(
        wq=wq,
        rep=rep,
        n_max=n_max,
        ell=ell,
        bases=tuple(bases),
        boundaries=tuple(boundaries),
    )


def _verify_square_zero(sparse, d: int, mode: str) -> None:
    """Assert boundary(n-1) @ boundary(n) == 0, column by column.

    Exact mode demands literal zeros; float mode allows rounding noise
    (float(a)*float(b) need not equal float(a*b))."""
    for n in range(2, len(sparse)):
        for ci, col in enumerate(sparse[n]):
            acc: dict[int, DenseMatrix] = {}
            for fi, block in col:
                for gi, block2 in sparse[n - 1][fi]:
                    prod = block2.matmul(block)
                    cur = acc.get(gi)
                    acc[gi] = prod if cur is None else _block_add(cur, prod)
            for gi, total in acc.items():
                if mode == FLOAT:
                    ok = all(abs(x) < 1e-9 for x in total.entries)
                else:
                    ok = total.is_zero()
                if not ok:
                    raise AssertionError(
                        f"boundary squared nonzero at degree {n}, column {ci}"
                    )


def _block_add(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    return DenseMatrix(
        a.rows, a.cols, tuple(x + y for x, y in zip(a.entries, b.entries)), a.mode
    )


def homology_dims(c: ChainComplexSlice, tol: float = 1e-9) -> list[int]:
    """dim H_n for n = 0..n_max-1.

    H_n = (nullity of boundary n) - (rank of boundary n+1), with the
    degree-0 boundary the zero map.
    """
    d = c.rep.dim
    ranks = [0] + [m.rank(tol) for m in c.boundaries[1:]]
    dims: list[int] = []
    for n in range(c.n_max):
        kernel = len(c.bases[n]) * d - ranks[n]
        dims.append(kernel - ranks[n + 1])
    return dims


@dataclass(frozen=True)
class QuiverMorphism:
    """A morphism of weighted quivers: vertex and arrow maps plus a map
    on weights (None means the identity on weights)."""

    vertex_map: tuple[int, ...]
    arrow_map: tuple[int, ...]
    weight_map: Callable[[Fraction], Fraction] | None = None

    def map_weight(self, w: Fraction) -> Fraction:
        return w if self.weight_map is None else self.weight_map(w)


def _validate_morphism(f: QuiverMorphism, src: WeightedQuiver, dst: WeightedQuiver) -> None:
    if len(f.vertex_map) != src.vertex_count:
        raise MorphismError("vertex map has wrong length")
    if len(f.arrow_map) != src.arrow_count:
        raise MorphismError("arrow map has wrong length")
    for v in f.vertex_map:
        if not (0 <= v < dst.vertex_count):
            raise MorphismError(f"vertex image {v} out of range")
    for a, b in enumerate(f.arrow_map):
        if not (0 <= b < dst.arrow_count):
            raise MorphismError(f"arrow image {b} out of range")
        s, t = src.quiver.arrows[a]
        s2, t2 = dst.quiver.arrows[b]
        if f.vertex_map[s] != s2 or f.vertex_map[t] != t2:
            raise MorphismError(f"arrow {a}: endpoints not preserved")
        if dst.weights[b] != f.map_weight(src.weights[a]):
            raise MorphismError(f"arrow {a}: weights not compatible")


def induced_chain_map(
    f: QuiverMorphism,
    phi: DenseMatrix,
    src: ChainComplexSlice,
    dst: ChainComplexSlice,
) -> list[DenseMatrix]:
    """Per-degree matrices of the chain map sending a basis chain to its
    image chain with coefficients pushed through phi.

    Raises MorphismError when f fails source/target/weight preservation,
    phi has the wrong shape or fails to intertwine the two weight actions,
    or an image chain is missing from the target basis.
    """
    _validate_morphism(f, src.wq, dst.wq)
    if src.n_max != dst.n_max:
        raise MorphismError("complexes cover different degree ranges")
    if (phi.rows, phi.cols) != (dst.rep.dim, src.rep.dim):
        raise MorphismError("phi has wrong shape")
    for w in set(src.wq.weights):
        left = dst.rep.action(f.map_weight(w)).matmul(phi)
        right = phi.matmul(src.rep.action(w))
        if left != right:
            raise MorphismError(f"phi does not intertwine the action of {w}")

    def map_path(p: Path) -> Path:
        arrows = tuple(f.arrow_map[a] for a in p.arrows)
        return Path(arrows, f.vertex_map[p.source], f.vertex_map[p.target])

    d_src, d_dst = src.rep.dim, dst.rep.dim
    zero = 0.0 if phi.mode == FLOAT else Fraction(0)
    out: list[DenseMatrix] = []
    for n in range(src.n_max + 1):
        rows = len(dst.bases[n]) * d_dst
        cols = len(src.bases[n]) * d_src
        ent = [zero] * (rows * cols)
        dst_index = {c: i for i, c in enumerate(dst.bases[n])}
        for ci, chain in enumerate(src.bases[n]):
            if n == 0:
                image = f.vertex_map[chain]
            else:
                image = NChain(tuple(map_path(p) for p in chain.parts))
            fi = dst_index.get(image)
            if fi is None:
                raise MorphismError(f"image of degree-{n} basis chain {ci} "
                                    "is missing from the target basis")
            for r in range(d_dst):
                base = (fi * d_dst + r) * cols + ci * d_src
                for c in range(d_src):
                    ent[base + c] += phi.at(r, c)
        out.append(DenseMatrix(rows, cols, tuple(ent), phi.mode))
    return out
