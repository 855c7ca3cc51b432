"""Quivers (multidigraphs), paths, composable chains, and neighborhoods.

Vertices are dense integer indices 0..N-1 and arrows carry stable indices
0..M-1; parallel arrows and self-loops are legal. A path is a nonempty
composable sequence of arrows; identities are never represented as paths.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CyclicQuiverError, WeightError


@dataclass(frozen=True)
class Quiver:
    """A finite quiver: ``vertex_count`` vertices and a tuple of
    (source, target) arrow pairs indexed by position."""

    vertex_count: int
    arrows: tuple[tuple[int, int], ...]

    def __init__(self, vertex_count: int, arrows: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in arrows))
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        for i, (s, t) in enumerate(self.arrows):
            if not (0 <= s < vertex_count and 0 <= t < vertex_count):
                raise ValueError(f"arrow {i}: endpoint ({s}, {t}) out of range")

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    def source(self, arrow: int) -> int:
        return self.arrows[arrow][0]

    def target(self, arrow: int) -> int:
        return self.arrows[arrow][1]

    @cached_property
    def out_arrows(self) -> tuple[tuple[int, ...], ...]:
        """Arrow indices leaving each vertex, ascending."""
        out: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (s, _) in enumerate(self.arrows):
            out[s].append(i)
        return tuple(tuple(a) for a in out)

    @cached_property
    def in_arrows(self) -> tuple[tuple[int, ...], ...]:
        """Arrow indices entering each vertex, ascending."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for i, (_, t) in enumerate(self.arrows):
            inc[t].append(i)
        return tuple(tuple(a) for a in inc)


@dataclass(frozen=True)
class WeightedQuiver:
    """A quiver with one nonzero rational weight per arrow.

    Weights live in the multiplicative group of the field, so zero is
    rejected at construction. Float pipelines reinterpret the stored
    rationals at matrix-build time; storage is always exact.
    """

    quiver: Quiver
    weights: tuple[Fraction, ...]

    def __init__(self, quiver: Quiver, weights: Iterable[Fraction | int | str]):
        object.__setattr__(self, "quiver", quiver)
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in weights))
        if len(self.weights) != quiver.arrow_count:
            raise ValueError(
                f"{len(self.weights)} weights for {quiver.arrow_count} arrows"
            )
        for i, w in enumerate(self.weights):
            if w == 0:
                raise WeightError(f"arrow {i} has zero weight")

    @property
    def vertex_count(self) -> int:
        return self.quiver.vertex_count

    @property
    def arrow_count(self) -> int:
        return self.quiver.arrow_count


@dataclass(frozen=True)
class Path:
    """A composable, nonempty sequence of arrow indices.

    ``source``/``target`` are the endpoints of the whole path; length is the
    number of arrows. Paths are the nonidentity morphisms of the free
    category on the quiver.
    """

    arrows: tuple[int, ...]
    source: int
    target: int

    @property
    def length(self) -> int:
        return len(self.arrows)

    def compose(self, other: Path) -> Path:
        """The concatenation self-then-other (requires target == other.source)."""
        if self.target != other.source:
            raise ValueError("paths are not composable")
        return Path(self.arrows + other.arrows, self.source, other.target)


def make_path(q: Quiver, arrows: Sequence[int]) -> Path:
    """Build a Path from arrow indices, checking composability."""
    if not arrows:
        raise ValueError("a path has at least one arrow")
    for a, b in zip(arrows, arrows[1:]):
        if q.target(a) != q.source(b):
            raise ValueError(f"arrows {a} and {b} are not composable")
    return Path(tuple(arrows), q.source(arrows[0]), q.target(arrows[-1]))


@dataclass(frozen=True)
class NChain:
    """A composable tuple of paths: a nondegenerate chain in the free
    category. ``parts[0]`` is the first morphism applied (diagram order)."""

    parts: tuple[Path, ...]

    @property
    def order(self) -> int:
        return len(self.parts)

    @property
    def total_length(self) -> int:
        return sum(p.length for p in self.parts)

    @property
    def source(self) -> int:
        return self.parts[0].source

    @property
    def target(self) -> int:
        return self.parts[-1].target


def make_nchain(parts: Sequence[Path]) -> NChain:
    """Build an NChain, checking composability of consecutive paths."""
    if not parts:
        raise ValueError("a chain has at least one morphism")
    for a, b in zip(parts, parts[1:]):
        if a.target != b.source:
            raise ValueError("chain morphisms are not composable")
    return NChain(tuple(parts))


def topological_order(q: Quiver) -> list[int] | None:
    """Kahn's algorithm. Returns a topological order, or None if cyclic.

    Ties are broken by smallest vertex index so the order is deterministic.
    """
    indeg = [0] * q.vertex_count
    for _, t in q.arrows:
        indeg[t] += 1
    # a heap frontier keeps the order reproducible
    frontier = [v for v in range(q.vertex_count) if indeg[v] == 0]
    heapq.heapify(frontier)
    order: list[int] = []
    while frontier:
        v = heapq.heappop(frontier)
        order.append(v)
        for a in q.out_arrows[v]:
            t = q.target(a)
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(frontier, t)
    if len(order) != q.vertex_count:
        return None
    return order


def is_acyclic(q: Quiver) -> bool:
    """True iff the quiver has no directed cycle (self-loops count)."""
    return topological_order(q) is not None


def find_cycle(q: Quiver) -> list[int] | None:
    """A directed cycle as a vertex list v0,...,vk with vk == v0, or None."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = [WHITE] * q.vertex_count
    parent: dict[int, int] = {}
    for root in range(q.vertex_count):
        if color[root] != WHITE:
            continue
        stack: list[tuple[int, Iterator[int]]] = [(root, iter(q.out_arrows[root]))]
        color[root] = GRAY
        while stack:
            v, it = stack[-1]
            advanced = False
            for a in it:
                w = q.target(a)
                if color[w] == GRAY:
                    cycle = [w]
                    u = v
                    while u != w:
                        cycle.append(u)
                        u = parent[u]
                    cycle.append(w)
                    cycle.reverse()
                    return cycle
                if color[w] == WHITE:
                    color[w] = GRAY
                    parent[w] = v
                    stack.append((w, iter(q.out_arrows[w])))
                    advanced = True
                    break
            if not advanced:
                color[v] = BLACK
                stack.pop()
    return None


def _require_acyclic(q: Quiver, what: str) -> None:
    if not is_acyclic(q):
        raise CyclicQuiverError(f"{what} requires an acyclic quiver",
                                cycle=find_cycle(q))


def iter_paths(q: Quiver, max_length: int | None = None) -> Iterator[Path]:
    """Yield all paths of length 1..max_length in lexicographic order of
    their arrow-index sequences. Unbounded enumeration needs acyclicity.

    Iterative DFS: path depth is bounded by the longest path, not the
    interpreter recursion limit.
    """
    if max_length is None:
        _require_acyclic(q, "unbounded path enumeration")
    elif max_length < 1:
        raise ValueError("max_length must be positive")

    for first in range(q.arrow_count):
        source = q.source(first)
        arrows = [first]
        yield Path((first,), source, q.target(first))
        if max_length == 1:
            continue
        stack = [iter(q.out_arrows[q.target(first)])]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                arrows.pop()
                continue
            arrows.append(nxt)
            yield Path(tuple(arrows), source, q.target(nxt))
            if max_length is None or len(arrows) < max_length:
                stack.append(iter(q.out_arrows[q.target(nxt)]))
            else:
                arrows.pop()


def enumerate_paths(q: Quiver, max_length: int | None = None) -> list[Path]:
    """All paths of length 1..max_length (all paths when unbounded)."""
    return list(iter_paths(q, max_length))


def iter_nchains(q: Quiver, n: int, ell: int | None = None) -> Iterator[NChain]:
    """Yield all composable n-tuples of paths, i.e. nondegenerate n-chains
    of the free category; with finite ``ell``, only chains whose composite
    has length at most ell. Deterministic lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    _require_acyclic(q, "chain enumeration")
    # every other part of an n-chain contributes at least one arrow
    cap = None if ell is None else ell - (n - 1)
    if cap is not None and cap < 1:
        return
    if n == 1:
        # stream: degree-1 enumeration must not materialize the path list,
        # so count-with-cap callers stay memory-flat on huge inputs
        for p in iter_paths(q, cap):
            yield NChain((p,))
        return
    all_paths = list(iter_paths(q, cap))
    by_source: dict[int, list[Path]] = {}
    for p in all_paths:
        by_source.setdefault(p.source, []).append(p)

    parts: list[Path] = []

    def extend(end: int, used: int, remaining: int) -> Iterator[NChain]:
        if remaining == 0:
            yield NChain(tuple(parts))
            return
        budget = None if ell is None else ell - used - (remaining - 1)
        for p in by_source.get(end, ()):
            if budget is not None and p.length > budget:
                continue
            parts.append(p)
            yield from extend(p.target, used + p.length, remaining - 1)
            parts.pop()

    for p in all_paths:
        parts.append(p)
        yield from extend(p.target, p.length, n - 1)
        parts.pop()


def enumerate_nchains(q: Quiver, n: int, ell: int | None = None) -> list[NChain]:
    """All nondegenerate n-chains, optionally length-truncated by ell."""
    return list(iter_nchains(q, n, ell))


def count_nchains(
    q: Quiver, n: int, ell: int | None = None, cap: int | None = None
) -> int:
    """Number of nondegenerate n-chains; stops early at cap + 1."""
    count = 0
    for _ in iter_nchains(q, n, ell):
        count += 1
        if cap is not None and count > cap:
            return count
    return count


def k_hop_vertices(q: Quiver, v: int, k: int) -> set[int]:
    """Vertices reachable from v by a directed path of length <= k,
    including v itself."""
    if not (0 <= v < q.vertex_count):
        raise ValueError(f"vertex {v} out of range")
    if k < 0:
        raise ValueError("k must be nonnegative")
    seen = {v}
    frontier = deque([(v, 0)])
    while frontier:
        u, d = frontier.popleft()
        if d == k:
            continue
        for a in q.out_arrows[u]:
            t = q.target(a)
            if t not in seen:
                seen.add(t)
                frontier.append((t, d + 1))
    return seen


@dataclass(frozen=True, eq=False)
class InducedSubquiver:
    """An induced subquiver together with the old<->new index maps."""

    wq: WeightedQuiver
    vertex_to_sub: dict[int, int]
    sub_to_vertex: tuple[int, ...]
    arrow_to_sub: dict[int, int]
    sub_to_arrow: tuple[int, ...]


def induced_subquiver(wq: WeightedQuiver, vs: Iterable[int]) -> InducedSubquiver:
    """The subquiver on vertex set vs: exactly the arrows with both
    endpoints in vs, weights carried over. New vertex indices follow
    ascending original index."""
    q = wq.quiver
    sub_to_vertex = tuple(sorted(set(vs)))
    for v in sub_to_vertex:
        if not (0 <= v < q.vertex_count):
            raise ValueError(f"vertex {v} out of range")
    vertex_to_sub = {v: i for i, v in enumerate(sub_to_vertex)}
    sub_arrows: list[tuple[int, int]] = []
    sub_weights: list[Fraction] = []
    sub_to_arrow: list[int] = []
    arrow_to_sub: dict[int, int] = {}
    for i, (s, t) in enumerate(q.arrows):
        if s in vertex_to_sub and t in vertex_to_sub:
            arrow_to_sub[i] = len(sub_arrows)
            sub_to_arrow.append(i)
            sub_arrows.append((vertex_to_sub[s], vertex_to_sub[t]))
            sub_weights.append(wq.weights[i])
    sub = WeightedQuiver(Quiver(len(sub_to_vertex), sub_arrows), sub_weights)
    return InducedSubquiver(
        wq=sub,
        vertex_to_sub=vertex_to_sub,
        sub_to_vertex=sub_to_vertex,
        arrow_to_sub=arrow_to_sub,
        sub_to_arrow=tuple(sub_to_arrow),
    )
