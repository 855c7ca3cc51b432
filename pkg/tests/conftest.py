from __future__ import annotations

import random
from fractions import Fraction

import pytest

from quivhom import Quiver, WeightedQuiver


def random_nonzero_fraction(rng: random.Random, span: int = 6) -> Fraction:
    num = rng.choice([x for x in range(-span, span + 1) if x != 0])
    return Fraction(num, rng.randint(1, span))


def random_acyclic_weighted_quiver(
    rng: random.Random, max_vertices: int = 8, max_arrows: int = 14
) -> WeightedQuiver:
    """Random acyclic quiver: arrows only go forward along a hidden random
    vertex order, so parallel arrows are possible but cycles are not."""
    n = rng.randint(1, max_vertices)
    order = list(range(n))
    rng.shuffle(order)
    arrows = []
    if n >= 2:
        for _ in range(rng.randint(0, max_arrows)):
            i, j = sorted(rng.sample(range(n), 2))
            arrows.append((order[i], order[j]))
    weights = [random_nonzero_fraction(rng) for _ in arrows]
    return WeightedQuiver(Quiver(n, arrows), weights)


def random_digraph(
    rng: random.Random,
    max_vertices: int = 50,
    max_arrows: int = 400,
    self_loops: bool = False,
) -> WeightedQuiver:
    """Random digraph, cycles allowed (self-loops only when requested)."""
    n = rng.randint(1, max_vertices)
    arrows = []
    for _ in range(rng.randint(0, max_arrows)):
        s, t = rng.randrange(n), rng.randrange(n)
        if s == t and not self_loops:
            continue
        arrows.append((s, t))
    weights = [random_nonzero_fraction(rng) for _ in arrows]
    return WeightedQuiver(Quiver(n, arrows), weights)


def weak_component_count(q: Quiver) -> int:
    """Union-find over arrows with orientation ignored."""
    parent = list(range(q.vertex_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in q.arrows:
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rs] = rt
    return len({find(v) for v in range(q.vertex_count)})


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
