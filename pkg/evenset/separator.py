"""Even set representations and the tame separator built on top of them.

Two constructions produce an :class:`~evenset.models.EvenSetSeparator`:

* a ball ``N^{δ+3}[v]`` that already balances the weight, laid out as
  singleton layers in BFS order (:attr:`Branch.BALL`);
* otherwise the star pipeline: canonical separations, the star order, its
  covering, the bag tower and finally the even set representation of the
  core bag minus the star-free bag (:attr:`Branch.PIPELINE`).
"""

from __future__ import annotations

import heapq
import logging
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .bags import core_bag, star_free_bag
from .errors import (
    ComponentBoundViolation,
    LayerOverflow,
    NotConnected,
    NotUniform,
    RepresentationGap,
    Truncated,
)
from .graph import PATH_CAP, ball, bfs_order, components, is_connected, is_independent, iter_components, neighborhood
from .models import (
    BagTower,
    Branch,
    ComponentInfo,
    EvenSetSeparator,
    Graph,
    IteratedEvenSet,
    OrderRelation,
    VertexSet,
    Weights,
)
from .recognition import is_even_pair
from .stars import (
    are_star_twins,
    bipartition_sequences,
    build_order,
    canonical_separations,
    crossing_violations,
    shield_or_twin_violations,
    star_covering,
)

logger = logging.getLogger(__name__)

#: Smallest admissible balance constant.
MIN_C = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Even set representation
# ---------------------------------------------------------------------------


def linear_extension(order: OrderRelation) -> dict[int, int]:
    """Positions in a topological order of ``≤_A``, smallest ready id first."""
    n = len(order.successors)
    indegree = list(order.predecessor_count)
    ready = [v for v in range(n) if indegree[v] == 0]
    heapq.heapify(ready)
    position: dict[int, int] = {}
    while ready:
        v = heapq.heappop(ready)
        position[v] = len(position)
        for u in order.successors[v]:
            indegree[u] -= 1
            if indegree[u] == 0:
                heapq.heappush(ready, u)
    if len(position) != n:
        # build_order already rejects cycles, so this only fires on hand-made relations
        raise ValueError("star order has a cycle")
    return position


def even_set_representation(g: Graph, tower: BagTower, order: OrderRelation, delta: int) -> IteratedEvenSet:
    """Layer ``ℛ - β`` by the latest rank each vertex takes inside some ``A_x ∩ ℛ``, x in the first side.

    ``tower.core`` must be set. Trailing empty layers are dropped, so a core
    equal to the star-free bag yields no layers at all.
    """
    if tower.core is None:
        raise ValueError("bag tower has no core bag")
    core = tower.core
    rest = core - tower.beta
    if not rest:
        return IteratedEvenSet(())
    position = linear_extension(order)
    bound = delta * delta
    level: dict[int, int] = {}
    for x in sorted(tower.x1):
        members = order.separations[x].a & core
        if len(members) > bound:
            raise LayerOverflow(x, len(members), bound)
        for rank, v in enumerate(sorted(members, key=position.__getitem__), start=1):
            if v in rest and rank > level.get(v, 0):
                level[v] = rank
    missing = rest - level.keys()
    if missing:
        raise RepresentationGap(frozenset(missing))
    layers: list[set[int]] = [set() for _ in range(max(level.values()))]
    for v, i in level.items():
        layers[i - 1].add(v)
    return IteratedEvenSet(tuple(frozenset(layer) for layer in layers if layer))


def representation_violations(order: OrderRelation, iterated: IteratedEvenSet) -> list[tuple[int, int]]:
    """Pairs ``(v, x)`` with x in some layer, v in that layer or later, ``x ∈ A_v`` and no star twins.

    A strict ``v <_A x`` must place v in an earlier layer than x.
    """
    seps = order.separations
    bad = []
    remaining = set(iterated.union)
    for layer in iterated.layers:
        for x in sorted(layer):
            for v in sorted(remaining):
                if v != x and x in seps[v].a and not are_star_twins(seps, v, x):
                    bad.append((v, x))
        remaining -= layer
    return bad


def layer_hit_violations(g: Graph, tower: BagTower, iterated: IteratedEvenSet) -> list[tuple[int, int]]:
    """``(layer index, component min)`` where a layer meets a component of ``γ - β`` twice."""
    bad = []
    comps = components(g, tower.gamma - tower.beta)
    for i, layer in enumerate(iterated.layers):
        for comp in comps:
            if len(layer & comp) > 1:
                bad.append((i, min(comp)))
    return bad


# ---------------------------------------------------------------------------
# Separator constructions
# ---------------------------------------------------------------------------


def ball_bound(delta: int) -> int:
    """``1 + δ + ... + δ^{δ+3}``, the largest possible ``|N^{δ+3}[v]|``."""
    return sum(delta**i for i in range(delta + 4))


def separator_depth_bound(c: Fraction, d: int) -> int:
    """Smallest integer ``z ≥ 1`` with ``c^((z-1)/(d+1)) ≤ 1/2``.

    Closed form in floating point, settled with exact integers only when the
    estimate lies within rounding distance of an integer.
    """
    c = Fraction(c)
    if not 0 < c < 1:
        raise ValueError(f"c must lie strictly between 0 and 1, got {c}")
    # c^t <= 2^-(d+1)  <=>  p^t * 2^(d+1) <= q^t,  z = t + 1
    p, q = c.numerator, c.denominator
    x = (d + 1) / (math.log2(q) - math.log2(p))
    t = math.ceil(x)
    if abs(x - round(x)) < 1e-9 * max(1.0, x):
        t = round(x)

        def holds(s: int) -> bool:
            return p**s * 2 ** (d + 1) <= q**s

        if not holds(t):
            t += 1
        elif t > 0 and holds(t - 1):
            t -= 1
    return max(t, 0) + 1


def _component_infos(g: Graph, removed: VertexSet) -> tuple[ComponentInfo, ...]:
    return tuple(ComponentInfo(comp, neighborhood(g, comp)) for comp in components(g, g.vertices - removed))


def find_balanced_ball(g: Graph, w: Weights, c: Fraction, radius: int) -> tuple[int, VertexSet] | None:
    """The smallest ``v`` whose ``radius``-ball leaves only components of weight at most ``c``."""
    for v in range(g.n):
        x = ball(g, v, radius)
        if w.of(g.vertices - x) <= c:
            return v, x
        if all(w.of(comp) <= c for comp in iter_components(g, g.vertices - x)):
            return v, x
    return None


def build_separator_no_balanced(
    g: Graph, w: Weights, c: Fraction, delta: int | None = None
) -> EvenSetSeparator:
    """The star pipeline separator ``(X1, X2, L1, ..., Lk)`` with ``d = δ + 1``.

    Meant for graphs where no ``(δ+3)``-ball balances ``w``. Structural
    audits raise :class:`~evenset.errors.StructureAuditError` subclasses when
    the input is outside the class; the soft audits are counted in
    ``audits``.
    """
    delta = g.max_degree if delta is None else delta
    start = time.monotonic()
    seps = canonical_separations(g, w)
    order = build_order(g, w, seps)
    covering = star_covering(order)
    bipartition = bipartition_sequences(g, order, covering)
    tower = star_free_bag(g, w, bipartition, covering)
    tower = replace(tower, core=core_bag(g, tower, order))
    representation = even_set_representation(g, tower, order, delta)
    layers = tuple(layer for layer in (tower.x1, tower.x2, *representation.layers) if layer)
    iterated = IteratedEvenSet(layers)
    d = delta + 1

    infos = _component_infos(g, iterated.union)
    for info in infos:
        if len(info.neighborhood) > d:
            raise ComponentBoundViolation(info.vertices, f"|N(D)| = {len(info.neighborhood)} exceeds {d}")
        if w.of(info.vertices) > c:
            raise ComponentBoundViolation(info.vertices, f"w(D) = {w.of(info.vertices)} exceeds {c}")

    audits: dict[str, object] = {
        "covering": len(covering),
        "x1": len(tower.x1),
        "x2": len(tower.x2),
        "gamma": len(tower.gamma),
        "beta": len(tower.beta),
        "core": len(tower.core or ()),
        "representation_layers": representation.k,
        "weight_conserved": tower.weights_beta.total == w.total,
        "max_core_a_part": max((len(seps[x].a & tower.core) for x in tower.x1), default=0)
        if tower.core is not None
        else 0,
        "shield_or_twin_violations": len(shield_or_twin_violations(order)),
        "crossing_violations": len(crossing_violations(g, order)),
        "representation_violations": len(representation_violations(order, representation)),
        "layer_hit_violations": len(layer_hit_violations(g, tower, representation)),
    }
    elapsed = time.monotonic() - start
    logger.info(
        "Pipeline separator: n=%d, k=%d, d=%d, %d components in %.2fs", g.n, iterated.k, d, len(infos), elapsed
    )
    return EvenSetSeparator(iterated, Fraction(c), d, Branch.PIPELINE, infos, audits)


def tame_separator(g: Graph, w: Weights, c: Fraction, delta: int | None = None) -> EvenSetSeparator:
    """An even set separator of a connected graph under uniform weights.

    Tries every ball of radius ``δ + 3`` first and falls back to
    :func:`build_separator_no_balanced`.
    """
    c = Fraction(c)
    if not MIN_C <= c < 1:
        raise ValueError(f"c must lie in [1/2, 1), got {c}")
    if g.n == 0 or not is_connected(g):
        raise NotConnected("separator input graph must be connected and nonempty")
    if not w.is_uniform:
        raise NotUniform("separator weights must be uniform over their support")
    delta = g.max_degree if delta is None else delta
    radius = delta + 3

    found = find_balanced_ball(g, w, c, radius)
    if found is None:
        logger.debug("No balanced %d-ball in %d vertices; running the star pipeline", radius, g.n)
        return build_separator_no_balanced(g, w, c, delta)

    v, x = found
    order = bfs_order(g, v, radius)
    layers = tuple(frozenset((u,)) for u in order)
    infos = _component_infos(g, x)
    logger.debug("Balanced ball at %d: %d vertices, %d components", v, len(x), len(infos))
    audits = {"ball_center": v, "radius": radius, "ball_size": len(x)}
    return EvenSetSeparator(IteratedEvenSet(layers), c, ball_bound(delta), Branch.BALL, infos, audits, center=v)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One failed separator check."""

    kind: str
    detail: str
    vertices: tuple[int, ...] = ()


@dataclass
class VerificationReport:
    """Outcome of :func:`verify_separator`."""

    violations: list[Violation] = field(default_factory=list)
    undecided: list[tuple[int, int]] = field(default_factory=list)
    checks: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": list(self.checks),
            "violations": [
                {"kind": v.kind, "detail": v.detail, "vertices": list(v.vertices)} for v in self.violations
            ],
            "undecided": [list(pair) for pair in self.undecided],
        }


def _check_evenness(
    g: Graph, layers: Sequence[VertexSet], report: VerificationReport, path_cap: int
) -> None:
    removed: VertexSet = frozenset()
    for i, layer in enumerate(layers):
        residual, ids = g.induced(g.vertices - removed)
        local = {old: new for new, old in enumerate(ids)}
        members = sorted(layer)
        for j, u in enumerate(members):
            for v in members[j + 1 :]:
                if g.adjacent(u, v):
                    continue
                try:
                    even = is_even_pair(residual, local[u], local[v], path_cap)
                except Truncated:
                    logger.warning("Even pair check for %d, %d in layer %d hit the path cap", u, v, i)
                    report.undecided.append((u, v))
                    continue
                if not even:
                    report.violations.append(Violation("odd-pair", f"layer {i}: odd induced path", (u, v)))
        removed = removed | layer


def verify_separator(
    g: Graph,
    sep: EvenSetSeparator,
    w: Weights | None = None,
    full_evenness: bool = False,
    path_cap: int = PATH_CAP,
) -> VerificationReport:
    """Re-check a separator from scratch; problems are reported, never raised."""
    w = Weights.uniform(g.n) if w is None else w
    report = VerificationReport()
    layers = sep.layers

    report.checks.append("disjoint")
    seen: set[int] = set()
    for i, layer in enumerate(layers):
        outside = sorted(v for v in layer if not 0 <= v < g.n)
        if outside:
            report.violations.append(Violation("range", f"layer {i} has unknown vertices", tuple(outside)))
        overlap = sorted(seen & layer)
        if overlap:
            report.violations.append(Violation("overlap", f"layer {i} repeats earlier vertices", tuple(overlap)))
        seen |= layer
    if any(v.kind == "range" for v in report.violations):
        return report

    report.checks.append("independent")
    for i, layer in enumerate(layers):
        if not is_independent(g, layer):
            edge = next((u, v) for u in sorted(layer) for v in sorted(g.neighbors(u) & layer) if u < v)
            report.violations.append(Violation("independence", f"layer {i} contains an edge", edge))

    report.checks.append("components")
    infos = _component_infos(g, frozenset(seen))
    for info in infos:
        if len(info.neighborhood) > sep.d:
            report.violations.append(
                Violation(
                    "attachment",
                    f"|N(D)| = {len(info.neighborhood)} exceeds d = {sep.d}",
                    tuple(sorted(info.vertices)),
                )
            )
        weight = w.of(info.vertices)
        if weight > sep.c:
            report.violations.append(
                Violation("balance", f"w(D) = {weight} exceeds c = {sep.c}", tuple(sorted(info.vertices)))
            )
    recorded = {info.vertices for info in sep.components}
    if recorded != {info.vertices for info in infos}:
        report.violations.append(Violation("components", "recorded components differ from recomputed ones"))

    if full_evenness:
        report.checks.append("evenness")
        _check_evenness(g, layers, report, path_cap)

    logger.debug("Separator verification: %d violations, %d undecided", len(report.violations), len(report.undecided))
    return report
