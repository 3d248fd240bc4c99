"""Canonical star separations and the star order built from them.

For a vertex v the canonical star separation ``S_v = (A_v, C_v, B_v)``
takes B_v to be the heaviest component of ``G - N[v]`` (the one with the
smallest vertex on ties), C_v to be v plus the neighbours of v that see
B_v, and A_v to be everything else. Comparing these separations yields the
order ``≤_A`` whose minimal elements form the star covering.
"""

from __future__ import annotations

import logging
import time
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import LaminarityViolation, NotBipartite, OrderViolation
from .graph import closed_neighborhood, components
from .models import EMPTY, Graph, OrderRelation, Separation, StarSeparation, VertexSet, Weights

logger = logging.getLogger(__name__)

AnySeparation = Separation | StarSeparation


# ---------------------------------------------------------------------------
# Canonical separations
# ---------------------------------------------------------------------------


def canonical_star_separation(
    g: Graph, w: Weights, v: int, universe: VertexSet | None = None
) -> StarSeparation:
    """The canonical star separation for ``v`` under weights ``w``."""
    everything = g.vertices if universe is None else universe
    star = closed_neighborhood(g, (v,))
    rest = everything - star
    comps = components(g, rest)
    if not comps:
        return StarSeparation(Separation(EMPTY, star, everything), v)
    heaviest = comps[0]
    heaviest_weight = w.of(heaviest)
    for comp in comps[1:]:
        weight = w.of(comp)
        if weight > heaviest_weight:
            heaviest, heaviest_weight = comp, weight
    cut = [v]
    loose = []
    for u in g.adjacency[v]:
        (cut if g.neighbors(u) & heaviest else loose).append(u)
    a = frozenset(loose).union(*(comp for comp in comps if comp is not heaviest))
    return StarSeparation(Separation(a, frozenset(cut), everything), v)


def canonical_separations(g: Graph, w: Weights) -> tuple[StarSeparation, ...]:
    """Canonical star separations of every vertex, indexed by center."""
    start = time.monotonic()
    everything = g.vertices
    seps = tuple(canonical_star_separation(g, w, v, everything) for v in range(g.n))
    logger.debug("Computed %d canonical star separations in %.3fs", g.n, time.monotonic() - start)
    return seps


# ---------------------------------------------------------------------------
# Star twins and the star order
# ---------------------------------------------------------------------------


def are_star_twins(separations: Sequence[StarSeparation], u: int, v: int) -> bool:
    """Whether ``B_u = B_v``, ``C_u - u = C_v - v`` and ``A_u - v = A_v - u``."""
    if u == v:
        raise ValueError("star twins are two distinct vertices")
    su, sv = separations[u], separations[v]
    # B_u = B_v iff A_u ∪ C_u = A_v ∪ C_v, as both live in the same universe.
    if su.a | su.c != sv.a | sv.c:
        return False
    return su.c - {u} == sv.c - {v} and su.a - {v} == sv.a - {u}


def leq_A(separations: Sequence[StarSeparation], x: int, y: int) -> bool:
    """``x ≤_A y``: equal, or star twins with ``x < y``, or not twins and ``y ∈ A_x``."""
    if x == y:
        return True
    if are_star_twins(separations, x, y):
        return x < y
    return y in separations[x].a


def build_order(g: Graph, w: Weights, separations: Sequence[StarSeparation] | None = None) -> OrderRelation:
    """Materialize ``≤_A`` and audit that it is a partial order.

    Star twins always lie in each other's A-part, so both the successor sets
    and the twin classes are read off the A-parts alone.
    """
    seps = tuple(separations) if separations is not None else canonical_separations(g, w)
    successors: list[VertexSet] = []
    twins: list[VertexSet] = []
    for x in range(g.n):
        succ = []
        tw = []
        for y in seps[x].a:
            if are_star_twins(seps, x, y):
                tw.append(y)
                if x < y:
                    succ.append(y)
            else:
                succ.append(y)
        successors.append(frozenset(succ))
        twins.append(frozenset(tw))

    for x in range(g.n):
        for y in successors[x]:
            if x in successors[y]:
                raise OrderViolation((x, y, x))
    for x in range(g.n):
        succ_x = successors[x]
        for y in succ_x:
            for z in successors[y]:
                if z != x and z not in succ_x:
                    raise OrderViolation((x, y, z))

    order = OrderRelation(seps, tuple(successors), tuple(twins))
    logger.debug(
        "Star order: %d comparable pairs, %d twin pairs",
        sum(len(s) for s in successors),
        sum(len(t) for t in twins) // 2,
    )
    return order


def star_covering(order: OrderRelation) -> VertexSet:
    """The ``≤_A``-minimal vertices."""
    return frozenset(v for v, count in enumerate(order.predecessor_count) if count == 0)


def covering_sequence(order: OrderRelation, x: VertexSet) -> tuple[StarSeparation, ...]:
    """Separations of the vertices of ``x`` ordered by center."""
    return tuple(order.separations[v] for v in sorted(x))


# ---------------------------------------------------------------------------
# Relations between separations
# ---------------------------------------------------------------------------


def is_loosely_noncrossing(s1: AnySeparation, s2: AnySeparation) -> bool:
    return not (s1.a & s2.c) and not (s2.a & s1.c)


def is_noncrossing(s1: AnySeparation, s2: AnySeparation) -> bool:
    return is_loosely_noncrossing(s1, s2) and not (s1.a & s2.a)


def is_shield(s1: AnySeparation, s2: AnySeparation) -> bool:
    """Whether ``B1 ∪ C1 ⊆ B2 ∪ C2``; both separations must share a universe."""
    return s2.a <= s1.a


def laminarity_violation(seq: Sequence[StarSeparation]) -> tuple[int, int, int] | None:
    """A witness ``(anchor1, anchor2, v)`` with ``v ∈ A(S1) ∩ C(S2)``, or ``None``.

    A sequence is loosely laminar iff the union of its A-parts misses the
    union of its C-parts, because A(S) ∩ C(S) is always empty.
    """
    owner: dict[int, int] = {}
    for s in seq:
        for v in s.a:
            owner.setdefault(v, s.anchor)
    for s in seq:
        for v in s.c:
            if v in owner:
                return owner[v], s.anchor, v
    return None


def is_loosely_laminar(seq: Sequence[StarSeparation]) -> bool:
    return laminarity_violation(seq) is None


# ---------------------------------------------------------------------------
# Bipartition of the covering
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    """The two sides of the covering and their separation sequences."""

    x1: VertexSet
    x2: VertexSet
    seq1: tuple[StarSeparation, ...]
    seq2: tuple[StarSeparation, ...]


def _odd_cycle(parent: dict[int, int | None], u: int, v: int) -> list[int]:
    up = [u]
    while parent[up[-1]] is not None:
        up.append(parent[up[-1]])  # type: ignore[arg-type]
    depth = {x: i for i, x in enumerate(up)}
    down = [v]
    while down[-1] not in depth:
        down.append(parent[down[-1]])  # type: ignore[arg-type]
    meet = down[-1]
    return up[: depth[meet] + 1] + list(reversed(down[:-1]))


def two_coloring(g: Graph, x: VertexSet) -> tuple[VertexSet, VertexSet]:
    """BFS 2-coloring of ``g[x]``; the smallest vertex of each component goes to side one."""
    color: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for start in sorted(x):
        if start in color:
            continue
        color[start] = 0
        parent[start] = None
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.adjacency[u]:
                if v not in x:
                    continue
                if v not in color:
                    color[v] = 1 - color[u]
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    raise NotBipartite(_odd_cycle(parent, u, v))
    side1 = frozenset(v for v, c in color.items() if c == 0)
    return side1, x - side1


def bipartition_sequences(g: Graph, order: OrderRelation, x: VertexSet) -> Bipartition:
    """Split the covering ``x`` into two loosely laminar separation sequences."""
    x1, x2 = two_coloring(g, x)
    seq1 = covering_sequence(order, x1)
    seq2 = covering_sequence(order, x2)
    for seq in (seq1, seq2):
        bad = laminarity_violation(seq)
        if bad:
            raise LaminarityViolation(*bad)
    logger.debug("Covering split into sides of %d and %d vertices", len(x1), len(x2))
    return Bipartition(x1, x2, seq1, seq2)


# ---------------------------------------------------------------------------
# Structural audits
# ---------------------------------------------------------------------------


def shield_or_twin_violations(order: OrderRelation) -> list[tuple[int, int]]:
    """Pairs ``(u, v)`` with ``u ∈ A_v`` where neither are they twins nor does S_v shield S_u."""
    seps = order.separations
    bad = []
    for v, sv in enumerate(seps):
        for u in sorted(sv.a):
            if u not in order.twins[v] and not is_shield(sv, seps[u]):
                bad.append((u, v))
    return bad


def crossing_violations(g: Graph, order: OrderRelation) -> list[tuple[int, int]]:
    """Non-adjacent, ``≤_A``-incomparable pairs whose separations are not loosely non-crossing.

    Only pairs with some ``v ∈ A_x ∩ C_y`` can fail, and ``C_y ⊆ N[y]``,
    so candidates ``y`` are found around each vertex of ``A_x``.
    """
    seps = order.separations
    bad = set()
    for x, sx in enumerate(seps):
        for v in sx.a:
            for y in (v, *g.adjacency[v]):
                if y == x or g.adjacent(x, y) or v not in seps[y].c:
                    continue
                if order.leq(x, y) or order.leq(y, x):
                    continue
                bad.add((min(x, y), max(x, y)))
    return sorted(bad)
