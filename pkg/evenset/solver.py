"""Maximum weight independent set by separator recursion and submodular minimization.

:func:`solve` splits a graph into components and brute-forces small ones.
Larger ones get a tame separator ``(L_1, ..., L_k)`` computed under uniform
weights. The choice on each layer is then made by minimizing the negated
value function over the layer's still-available vertices, which is
submodular because every layer is an even set of what remains. Values
below the last layer come from lazily filled per-component tables.
"""

from __future__ import annotations

import logging
import sys
import time
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from itertools import combinations
from typing import Any

from .errors import (
    ComponentBoundViolation,
    InstanceTooLarge,
    InvalidWeights,
    NonConvergence,
    NotPawFriendlyEvidence,
    PreconditionFailed,
    StructureAuditError,
)
from .formats import parse_fraction
from .graph import PATH_CAP, components, is_independent
from .models import EMPTY, Branch, Graph, VertexSet, Weights
from .recognition import BERGE_CAP, check_preconditions
from .separator import separator_depth_bound, tame_separator
from .sfm import MAX_ITERATIONS, SfmOracle, check_submodularity, minimize

logger = logging.getLogger(__name__)

#: Hard cap of :func:`brute_force_mwis`.
BRUTE_CAP = 30

#: Layer recursion nests a few frames per layer.
RECURSION_LIMIT = 10_000


@dataclass(frozen=True)
class SolveOptions:
    """Tuning knobs of :func:`solve`."""

    c: Fraction = Fraction(3, 5)
    base_threshold: int = 20
    brute_cap: int = BRUTE_CAP
    sfm_brute_limit: int = 10
    mnp_max_iterations: int = MAX_ITERATIONS
    spot_checks: int = 0
    check: bool = False
    berge_cap: int = BERGE_CAP
    path_cap: int = PATH_CAP

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", Fraction(self.c))
        if not Fraction(1, 2) < self.c < 1:
            raise ValueError(f"c must lie in (1/2, 1), got {self.c}")
        if self.base_threshold > self.brute_cap:
            raise ValueError("base_threshold may not exceed brute_cap")

    @classmethod
    def from_config(cls, cfg: Mapping[str, Any], **overrides: Any) -> SolveOptions:
        """Pick the solver keys out of a loaded configuration."""
        names = {f.name for f in fields(cls)}
        values = {key: cfg[key] for key in names if key in cfg}
        values.update({k: v for k, v in overrides.items() if v is not None})
        if isinstance(values.get("c"), str):
            values["c"] = parse_fraction(values["c"])
        return cls(**values)


@dataclass
class SolverStats:
    """Counters collected during one :func:`solve` call."""

    branch: Branch | None = None
    depth: int = 0
    separators: int = 0
    sfm_calls: int = 0
    oracle_calls: int = 0
    brute_calls: int = 0
    table_entries: int = 0
    z: int | None = None
    elapsed: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["branch"] = None if self.branch is None else self.branch.name.lower()
        return data


@dataclass(frozen=True)
class SolverResult:
    weight: int
    solution: VertexSet
    stats: SolverStats = field(default_factory=SolverStats, compare=False)

    def to_dict(self) -> dict[str, Any]:
        return {"weight": self.weight, "solution": sorted(self.solution), "stats": self.stats.to_dict()}


def _check_weights(g: Graph, weights: Sequence[int] | None) -> tuple[int, ...]:
    if weights is None:
        return (1,) * g.n
    values = tuple(weights)
    if len(values) != g.n:
        raise InvalidWeights(f"expected {g.n} weights, got {len(values)}")
    for v, x in enumerate(values):
        if isinstance(x, bool) or not isinstance(x, int):
            raise InvalidWeights(f"weight of vertex {v} is not an integer ({x!r})")
        if x < 0:
            raise InvalidWeights(f"weight of vertex {v} is negative ({x})")
    return values


def verify_solution(g: Graph, weights: Sequence[int] | None, result: SolverResult) -> bool:
    """Re-check independence and the weight of ``result`` from scratch."""
    values = (1,) * g.n if weights is None else tuple(weights)
    if any(not 0 <= v < g.n for v in result.solution):
        return False
    if not is_independent(g, result.solution):
        return False
    return sum(values[v] for v in result.solution) == result.weight


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------


class _BranchAndBound:
    """Bitmask branch and bound with a greedy clique cover bound."""

    def __init__(self, g: Graph, weights: Sequence[int]) -> None:
        self.weights = weights
        self.nbr = [sum(1 << u for u in row) for row in g.adjacency]
        self.by_weight = sorted(range(g.n), key=lambda v: (-weights[v], v))
        self.incumbent = 0

    def best(self, mask: int) -> int:
        self.incumbent = 0
        self._search(mask, 0)
        return self.incumbent

    def _bound(self, mask: int) -> int:
        cliques: list[int] = []
        total = 0
        for v in self.by_weight:
            if not mask >> v & 1:
                continue
            for i, clique in enumerate(cliques):
                if clique & self.nbr[v] == clique:
                    cliques[i] = clique | 1 << v
                    break
            else:
                cliques.append(1 << v)
                total += self.weights[v]
        return total

    def _search(self, mask: int, acc: int) -> None:
        rest = mask
        bits = mask
        while bits:
            low = bits & -bits
            bits ^= low
            v = low.bit_length() - 1
            if not self.nbr[v] & mask:
                acc += self.weights[v]
                rest ^= low
        mask = rest
        if acc > self.incumbent:
            self.incumbent = acc
        if not mask or acc + self._bound(mask) <= self.incumbent:
            return
        pivot, degree = -1, -1
        bits = mask
        while bits:
            low = bits & -bits
            bits ^= low
            v = low.bit_length() - 1
            d = (self.nbr[v] & mask).bit_count()
            if d > degree:
                pivot, degree = v, d
        self._search(mask & ~(1 << pivot) & ~self.nbr[pivot], acc + self.weights[pivot])
        self._search(mask & ~(1 << pivot), acc)


def brute_force_mwis(g: Graph, weights: Sequence[int] | None = None, cap: int = BRUTE_CAP) -> SolverResult:
    """Exact MWIS; among optimal sets the one with the lexicographically smallest sorted list."""
    if g.n > cap:
        raise InstanceTooLarge(g.n, cap, "brute-force MWIS input")
    values = _check_weights(g, weights)
    bb = _BranchAndBound(g, values)
    full = (1 << g.n) - 1
    opt = bb.best(full)

    chosen: list[int] = []
    acc = 0
    mask = full
    while acc < opt:
        for v in range(g.n):
            if not mask >> v & 1:
                continue
            sub = mask & ~((1 << (v + 1)) - 1) & ~bb.nbr[v]
            if acc + values[v] + bb.best(sub) == opt:
                chosen.append(v)
                acc += values[v]
                mask = sub
                break
        else:
            raise AssertionError("optimum not reconstructible")
    stats = SolverStats(brute_calls=1)
    return SolverResult(opt, frozenset(chosen), stats)


# ---------------------------------------------------------------------------
# Component tables
# ---------------------------------------------------------------------------


class ComponentTable:
    """``g_D(A) = α(D - N(A))`` for one component ``D`` left by a separator.

    Entries are computed on first lookup and keyed by ``A ∩ N(D)``.
    """

    def __init__(self, solver: _Solver, vertices: VertexSet, neighborhood: VertexSet, depth: int) -> None:
        self.solver = solver
        self.vertices = vertices
        self.neighborhood = neighborhood
        self.depth = depth
        self.entries: dict[VertexSet, tuple[int, VertexSet]] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, chosen: Iterable[int]) -> tuple[int, VertexSet]:
        """Value and witness for the part of ``chosen`` that touches this component."""
        a = self.neighborhood.intersection(chosen)
        entry = self.entries.get(a)
        if entry is None:
            g = self.solver.g
            blocked = frozenset().union(*(g.neighbors(v) for v in a))
            entry = self.solver.mwis(self.vertices - blocked, self.depth)
            self.entries[a] = entry
            self.solver.stats.table_entries += 1
        return entry

    def fill(self) -> None:
        """Compute every entry up front."""
        ordered = sorted(self.neighborhood)
        for size in range(len(ordered) + 1):
            for a in combinations(ordered, size):
                self.lookup(a)


# ---------------------------------------------------------------------------
# Recursion
# ---------------------------------------------------------------------------


class _LayerProgram:
    """The nested maximization over the layers of one separator.

    ``value(t, y)`` is the best weight obtainable below layer ``t`` once the
    set ``y`` has been chosen in earlier layers. It only depends on the part
    of ``y`` adjacent to what remains, which keys the memo.
    """

    def __init__(
        self,
        solver: _Solver,
        universe: VertexSet,
        layers: Sequence[VertexSet],
        tables: Sequence[ComponentTable],
    ) -> None:
        self.solver = solver
        self.g = solver.g
        self.layers = tuple(layers)
        self.tables = tuple(tables)
        self.k = len(layers)
        residual = [universe]
        for layer in layers:
            residual.append(residual[-1] - layer)
        self.residual = residual
        touch = []
        prefix: VertexSet = EMPTY
        for t in range(self.k + 1):
            rest = residual[t]
            touch.append(frozenset(v for v in prefix if self.g.neighbors(v) & rest))
            if t < self.k:
                prefix = prefix | layers[t]
        self.touch = touch
        self.owner = {v: i for i, table in enumerate(self.tables) for v in table.vertices}
        self.memo: dict[tuple[int, VertexSet], tuple[int, VertexSet]] = {}

    def run(self) -> tuple[int, VertexSet]:
        total = self.value(0, EMPTY)
        y: VertexSet = EMPTY
        for t in range(self.k):
            y = y | self.memo[(t, y & self.touch[t])][1]
        witness = y.union(*(table.lookup(y)[1] for table in self.tables))
        if self.solver.weight(witness) != total:
            raise StructureAuditError(f"replayed witness weighs {self.solver.weight(witness)}, expected {total}")
        return total, witness

    def value(self, t: int, y: VertexSet) -> int:
        if t == self.k:
            return sum(table.lookup(y)[0] for table in self.tables)
        key = (t, y & self.touch[t])
        hit = self.memo.get(key)
        if hit is None:
            hit = self._maximize(t, y)
            self.memo[key] = hit
        return hit[0]

    def _units(self, t: int, blocked: VertexSet) -> list[VertexSet]:
        if t + 1 == self.k:
            return [table.vertices for table in self.tables]
        return components(self.g, self.residual[t + 1] - blocked)

    def _maximize(self, t: int, y: VertexSet) -> tuple[int, VertexSet]:
        g = self.g
        solver = self.solver
        blocked = frozenset().union(*(g.neighbors(v) for v in y & self.touch[t]))
        live = self.residual[t + 1] - blocked
        fixed: list[int] = []
        candidates: list[int] = []
        for v in sorted(self.layers[t] - blocked):
            if solver.weights[v] == 0:
                continue
            if g.neighbors(v) & live:
                candidates.append(v)
            else:
                fixed.append(v)

        # elements meeting a common unit below must be decided together
        unit_of: dict[int, int] = {}
        for i, unit in enumerate(self._units(t, blocked)):
            for v in unit:
                unit_of[v] = i
        parent = {v: v for v in candidates}

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        first: dict[int, int] = {}
        for v in candidates:
            for u in g.neighbors(v):
                i = unit_of.get(u)
                if i is None:
                    continue
                if i in first:
                    a, b = find(first[i]), find(v)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
                else:
                    first[i] = v
        blocks: dict[int, list[int]] = {}
        for v in candidates:
            blocks.setdefault(find(v), []).append(v)

        base = y | frozenset(fixed)
        chosen = set(fixed)
        for block in sorted(blocks.values()):
            chosen |= self._minimize_block(t, base, block)
        picked = frozenset(chosen)
        return solver.weight(picked) + self.value(t + 1, y | picked), picked

    def _minimize_block(self, t: int, base: VertexSet, block: list[int]) -> VertexSet:
        solver = self.solver

        def negated(c: frozenset) -> int:
            return -(solver.weight(c) + self.value(t + 1, base | c))

        oracle = SfmOracle(block, negated)
        options = solver.options
        if options.spot_checks and len(block) >= 2:
            report = check_submodularity(oracle, "sampled", count=options.spot_checks, seed=t)
            if not report.ok:
                a, b = report.violations[0]
                raise NotPawFriendlyEvidence(
                    f"value function of layer {t} is not submodular on {sorted(a)}, {sorted(b)}"
                )
        result = minimize(oracle, options.sfm_brute_limit, options.mnp_max_iterations)
        solver.stats.sfm_calls += 1
        solver.stats.oracle_calls += result.oracle_calls
        logger.debug("Layer %d: %s over %d elements -> %d", t, result.method.value, len(block), -result.value)
        return frozenset(result.minimizer)


class _Solver:
    def __init__(self, g: Graph, weights: Sequence[int], options: SolveOptions) -> None:
        self.g = g
        self.weights = weights
        self.options = options
        self.stats = SolverStats()
        self.memo: dict[VertexSet, tuple[int, VertexSet]] = {}

    def weight(self, vertices: Iterable[int]) -> int:
        weights = self.weights
        return sum(weights[v] for v in vertices)

    def mwis(self, vertices: VertexSet, depth: int = 0) -> tuple[int, VertexSet]:
        """Maximum weight independent set of ``g[vertices]``."""
        if not vertices:
            return 0, EMPTY
        hit = self.memo.get(vertices)
        if hit is not None:
            return hit
        comps = components(self.g, vertices)
        if len(comps) > 1:
            total, solution = 0, set()
            for comp in comps:
                value, part = self.mwis(comp, depth)
                total += value
                solution |= part
            result = (total, frozenset(solution))
        elif not any(self.weights[v] for v in vertices):
            result = (0, EMPTY)
        elif len(vertices) <= self.options.base_threshold:
            h, ids = self.g.induced(vertices)
            found = brute_force_mwis(h, [self.weights[v] for v in ids], self.options.brute_cap)
            self.stats.brute_calls += 1
            result = (found.weight, frozenset(ids[v] for v in found.solution))
        else:
            result = self._separate(vertices, depth)
        self.memo[vertices] = result
        return result

    def _separate(self, vertices: VertexSet, depth: int) -> tuple[int, VertexSet]:
        c = self.options.c
        h, ids = self.g.induced(vertices)
        sep = tame_separator(h, Weights.uniform(h.n), c)
        self.stats.separators += 1
        self.stats.depth = max(self.stats.depth, depth + 1)
        if self.stats.branch is None:
            self.stats.branch = sep.branch
            self.stats.z = separator_depth_bound(c, sep.d)

        layers = [frozenset(ids[v] for v in layer) for layer in sep.layers]
        tables = []
        for info in sep.components:
            comp = frozenset(ids[v] for v in info.vertices)
            nbhd = frozenset(ids[v] for v in info.neighborhood)
            if len(comp) > c * len(vertices):
                raise ComponentBoundViolation(comp, f"more than {c} of {len(vertices)} vertices")
            if len(nbhd) > sep.d:
                raise ComponentBoundViolation(comp, f"|N(D)| = {len(nbhd)} exceeds {sep.d}")
            tables.append(ComponentTable(self, comp, nbhd, depth + 1))
        logger.debug(
            "Depth %d: %d vertices, %s separator with %d layers and %d components",
            depth,
            len(vertices),
            sep.branch.name.lower(),
            sep.k,
            len(tables),
        )
        return _LayerProgram(self, vertices, layers, tables).run()


def alpha_extend(
    g: Graph,
    weights: Sequence[int] | None,
    s: Iterable[int],
    a: Iterable[int],
    options: SolveOptions | None = None,
) -> tuple[int, VertexSet]:
    """Best weight of an independent set ``I`` with ``I ∩ s = a``, with a witness."""
    s, a = frozenset(s), frozenset(a)
    if not is_independent(g, s):
        raise ValueError("s must be independent")
    if not a <= s:
        raise ValueError("a must be a subset of s")
    values = _check_weights(g, weights)
    solver = _Solver(g, values, options or SolveOptions())
    blocked = frozenset().union(*(g.neighbors(v) for v in a))
    value, witness = solver.mwis(g.vertices - s - blocked)
    return solver.weight(a) + value, a | witness


def solve(g: Graph, weights: Sequence[int] | None = None, options: SolveOptions | None = None) -> SolverResult:
    """Exact maximum weight independent set of ``g`` with nonnegative integer ``weights``.

    Raises :class:`NotPawFriendlyEvidence` when the machinery meets behaviour
    that is impossible inside the class, and :class:`PreconditionFailed`
    when ``options.check`` is set and a forbidden structure is found.
    """
    options = options or SolveOptions()
    values = _check_weights(g, weights)
    if options.check:
        report = check_preconditions(g, options.berge_cap, options.path_cap)
        if report.witness is not None:
            raise PreconditionFailed(report, report.witness)
    if sys.getrecursionlimit() < RECURSION_LIMIT:
        sys.setrecursionlimit(RECURSION_LIMIT)

    start = time.monotonic()
    solver = _Solver(g, values, options)
    try:
        weight, solution = solver.mwis(g.vertices)
    except (StructureAuditError, NonConvergence) as e:
        raise NotPawFriendlyEvidence(str(e)) from e
    solver.stats.elapsed = time.monotonic() - start
    result = SolverResult(weight, solution, solver.stats)
    if not verify_solution(g, values, result):
        raise NotPawFriendlyEvidence("assembled solution failed verification")
    logger.info(
        "Solved n=%d: weight %d, %d separators, %d SFM calls in %.2fs",
        g.n,
        weight,
        solver.stats.separators,
        solver.stats.sfm_calls,
        solver.stats.elapsed,
    )
    return result
