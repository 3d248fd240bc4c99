"""Central bags and the star-free, intermediate and core bags built from them.

A central bag keeps ``⋂ (B(S) ∪ C(S))`` over a loosely laminar sequence of
separations and moves the weight of every deleted A-part onto the anchor of
the first separation that deletes it. Weight is therefore conserved exactly.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction

from .errors import AnchorOutsideBag, BagMismatch, CoreAuditError, LaminarityViolation, StructureAuditError
from .graph import components, is_connected, neighborhood
from .models import BagTower, CentralBag, Graph, OrderRelation, StarSeparation, VertexSet, Weights
from .stars import Bipartition, laminarity_violation

logger = logging.getLogger(__name__)


def central_bag(
    g: Graph, w: Weights, seq: Sequence[StarSeparation], within: VertexSet | None = None
) -> CentralBag:
    """The central bag of ``seq``, optionally inside the induced subgraph on ``within``.

    Separations are restricted to ``within`` first. The returned weights are
    indexed over all of ``g`` and vanish outside the bag.
    """
    universe = g.vertices if within is None else within
    if within is None:
        restricted = tuple(seq)
    else:
        restricted = tuple(StarSeparation(s.sep.restrict(universe), s.center) for s in seq)

    anchors = [s.anchor for s in restricted]
    if len(set(anchors)) != len(anchors):
        raise ValueError("a vertex anchors more than one separation")
    bad = laminarity_violation(restricted)
    if bad:
        raise LaminarityViolation(*bad)

    removed = frozenset().union(*(s.a for s in restricted))
    bag = universe - removed
    absorbed: set[int] = set()
    log: dict[int, Fraction] = {}
    for s in restricted:
        if s.anchor not in bag:
            raise AnchorOutsideBag(s.anchor)
        log[s.anchor] = w.of(s.a - absorbed)
        absorbed |= s.a

    zero = Fraction(0)
    values = tuple(w[v] + log.get(v, zero) if v in bag else zero for v in range(g.n))
    transferred = Weights(values)
    if transferred.total != w.of(universe):
        raise StructureAuditError(f"central bag lost weight: {transferred.total} != {w.of(universe)}")
    if bag and is_connected(g, universe) and not is_connected(g, bag):
        raise StructureAuditError("central bag of a connected graph is disconnected")
    logger.debug("Central bag: %d of %d vertices kept, %d anchors", len(bag), len(universe), len(restricted))
    return CentralBag(bag, transferred, log, restricted)


def inflation_bound_holds(w: Weights, bag: CentralBag) -> bool:
    """Whether no bag weight exceeds the largest input weight plus the heaviest A-part."""
    heaviest = max((w.of(s.a) for s in bag.source_sequence), default=Fraction(0))
    return bag.transferred_weights.max_value <= w.max_value + heaviest


def star_free_bag(g: Graph, w: Weights, bipartition: Bipartition, covering: VertexSet) -> BagTower:
    """γ from the second side's sequence, then β inside γ from the first side's."""
    gamma_bag = central_bag(g, w, bipartition.seq2)
    beta_bag = central_bag(g, gamma_bag.transferred_weights, bipartition.seq1, within=gamma_bag.vertices)
    beta = beta_bag.vertices
    if beta != covering:
        raise BagMismatch(covering - beta, beta - covering)
    for side in (bipartition.x1, bipartition.x2):
        for v in side:
            if g.neighbors(v) & side:
                raise StructureAuditError(f"side containing {v} is not independent in the star-free bag")
    logger.debug("Bag tower: |gamma| = %d, |beta| = %d", len(gamma_bag.vertices), len(beta))
    return BagTower(
        beta=beta,
        gamma=gamma_bag.vertices,
        x1=bipartition.x1,
        x2=bipartition.x2,
        weights_beta=beta_bag.transferred_weights,
        weights_gamma=gamma_bag.transferred_weights,
    )


def core_bag(g: Graph, tower: BagTower, order: OrderRelation) -> VertexSet:
    """``ℛ = β ∪ ⋃ C_x`` over the second side, with its component audit."""
    seps = order.separations
    core = tower.beta.union(*(seps[x].c for x in tower.x2))
    if not core <= tower.gamma:
        raise CoreAuditError(core - tower.gamma, "core bag leaves the intermediate bag")

    owners: dict[int, list[int]] = {}
    for x in sorted(tower.beta):
        for v in seps[x].a:
            owners.setdefault(v, []).append(x)
    for comp in components(g, g.vertices - core):
        first = min(comp)
        if not any(comp <= seps[x].a for x in owners.get(first, ())):
            raise CoreAuditError(comp, "not contained in A_x for any x of the star-free bag")
        if len(neighborhood(g, comp)) > g.max_degree + 1:
            raise CoreAuditError(comp, f"neighbourhood larger than {g.max_degree + 1}")
    logger.debug("Core bag: %d vertices", len(core))
    return core
