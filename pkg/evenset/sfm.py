"""Submodular function minimization over an evaluation oracle.

Two minimizers share one result type. :func:`minimize_brute` enumerates
the power set. :func:`minimize_mnp` runs the Fujishige-Wolfe minimum norm
point iteration in floating point and certifies its answer exactly: the
iterate is rebuilt as a rational convex combination of integer greedy
vertices of the base polytope, and since every such point ``x`` satisfies
``x⁻(V) ≤ min f``, a candidate set within 1 of ``x⁻(V)`` is optimal for
integer valued ``f``.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import GroundTooLarge, NonConvergence

logger = logging.getLogger(__name__)

#: Largest ground set :func:`minimize_brute` accepts.
BRUTE_LIMIT = 22

#: Largest ground set exhaustive submodularity checks accept.
EXHAUSTIVE_LIMIT = 14

#: Default cap on Wolfe major cycles.
MAX_ITERATIONS = 50_000

#: Oracle values cached before memoization stops growing.
CACHE_LIMIT = 1 << 16

# Wolfe tolerances
Z1 = 1e-12
Z2 = 1e-10


class SfmMethod(str, enum.Enum):
    BRUTE = "brute"
    MNP = "mnp"


class SfmOracle:
    """Memoized integer set function over an ordered ground set.

    Subsets are passed as iterables of ground elements; ``calls`` counts
    evaluations that missed the cache.
    """

    def __init__(self, ground: Iterable[Hashable], fn: Callable[[frozenset], int]) -> None:
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground set has repeated elements")
        self.index = {e: i for i, e in enumerate(self.ground)}
        self.fn = fn
        self.calls = 0
        self._cache: dict[frozenset, int] = {}

    def __len__(self) -> int:
        return len(self.ground)

    def __call__(self, subset: Iterable[Hashable]) -> int:
        key = frozenset(subset)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        value = self.fn(key)
        self.calls += 1
        if len(self._cache) < CACHE_LIMIT:
            self._cache[key] = value
        return value

    def key(self, subset: Iterable[Hashable]) -> tuple[int, ...]:
        """Tie-break key: the sorted ground positions of ``subset``."""
        return tuple(sorted(self.index[e] for e in subset))


@dataclass(frozen=True)
class SfmResult:
    minimizer: frozenset
    value: int
    method: SfmMethod
    oracle_calls: int


def _better(oracle: SfmOracle, value: int, subset: frozenset, best: tuple[int, frozenset] | None) -> bool:
    if best is None or value < best[0]:
        return True
    return value == best[0] and oracle.key(subset) < oracle.key(best[1])


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------


def minimize_brute(oracle: SfmOracle, limit: int = BRUTE_LIMIT) -> SfmResult:
    """Global minimizer by enumeration; ties go to the lexicographically smallest set."""
    n = len(oracle)
    if n > limit:
        raise GroundTooLarge(n, limit)
    calls = oracle.calls
    best: tuple[int, frozenset] | None = None
    for size in range(n + 1):
        for combo in combinations(oracle.ground, size):
            subset = frozenset(combo)
            value = oracle(subset)
            if _better(oracle, value, subset, best):
                best = (value, subset)
    assert best is not None
    return SfmResult(best[1], best[0], SfmMethod.BRUTE, oracle.calls - calls)


# ---------------------------------------------------------------------------
# Minimum norm point
# ---------------------------------------------------------------------------


class _Wolfe:
    """State of one minimum norm point run over the normalized function."""

    def __init__(self, oracle: SfmOracle) -> None:
        self.oracle = oracle
        self.n = len(oracle)
        self.base = oracle(())
        self.best: tuple[int, frozenset] = (self.base, frozenset())

    def greedy(self, x: np.ndarray) -> list[int]:
        """Greedy base vertex for ascending ``x``; every prefix set is a candidate minimizer."""
        order = np.argsort(x, kind="mergesort")
        vertex = [0] * self.n
        prefix: list[Hashable] = []
        previous = self.base
        for i in order:
            prefix.append(self.oracle.ground[i])
            subset = frozenset(prefix)
            value = self.oracle(subset)
            vertex[i] = value - previous
            previous = value
            if _better(self.oracle, value, subset, self.best):
                self.best = (value, subset)
        return vertex

    def float_gap(self, x: np.ndarray) -> float:
        return float(self.best[0] - self.base) - float(np.minimum(x, 0.0).sum())

    def gap(self, vertices: Sequence[Sequence[int]], weights: np.ndarray) -> Fraction:
        """``best - x⁻(V)`` for the exact point the float weights describe."""
        lam = [Fraction(float(max(a, 0.0))) for a in weights]
        total = sum(lam, Fraction(0))
        if total == 0:
            lam = [Fraction(1, len(lam))] * len(lam)
        else:
            lam = [a / total for a in lam]
        negative = Fraction(0)
        for i in range(self.n):
            coord = sum((a * q[i] for a, q in zip(lam, vertices) if a), Fraction(0))
            if coord < 0:
                negative += coord
        return (self.best[0] - self.base) - negative


def _affine_minimizer(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Minimum norm point of the affine hull of the rows of ``s`` with its affine coefficients."""
    m = s.shape[0]
    gram = s @ s.T
    bordered = np.zeros((m + 1, m + 1))
    bordered[0, 1:] = 1.0
    bordered[1:, 0] = 1.0
    bordered[1:, 1:] = gram
    rhs = np.zeros(m + 1)
    rhs[0] = 1.0
    try:
        sol = np.linalg.solve(bordered, rhs)
    except np.linalg.LinAlgError:
        sol = np.linalg.lstsq(bordered, rhs, rcond=None)[0]
    coeffs = sol[1:]
    return coeffs, coeffs @ s


def minimize_mnp(oracle: SfmOracle, max_iterations: int = MAX_ITERATIONS) -> SfmResult:
    """Exact minimizer of an integer submodular function by the minimum norm point method.

    Raises :class:`NonConvergence` when no certificate is reached within
    ``max_iterations`` major cycles, which for integer functions means the
    oracle is not submodular.
    """
    calls = oracle.calls
    wolfe = _Wolfe(oracle)
    n = wolfe.n
    if n == 0:
        return SfmResult(frozenset(), wolfe.base, SfmMethod.MNP, oracle.calls - calls)

    vertices = [wolfe.greedy(np.zeros(n))]
    s = np.array(vertices, dtype=float)
    lam = np.array([1.0])
    x = s[0].copy()
    gap = wolfe.gap(vertices, lam)

    for iteration in range(1, max_iterations + 1):
        if gap < 1:
            value, subset = wolfe.best
            logger.debug("MNP certified after %d cycles over %d elements (gap %s)", iteration - 1, n, gap)
            return SfmResult(subset, value, SfmMethod.MNP, oracle.calls - calls)

        q = wolfe.greedy(x)
        qf = np.array(q, dtype=float)
        scale = max(float(qf @ qf), float(np.max(np.einsum("ij,ij->i", s, s))))
        if q in vertices or float(x @ qf) >= float(x @ x) - Z1 * scale:
            # float iterate is optimal but the exact gap disagrees
            gap = wolfe.gap(vertices, lam)
            if gap < 1:
                continue
            raise NonConvergence(iteration, gap)
        vertices.append(q)
        s = np.vstack((s, qf))
        lam = np.append(lam, 0.0)

        while True:
            coeffs, y = _affine_minimizer(s)
            if np.all(coeffs >= -Z2):
                lam, x = np.clip(coeffs, 0.0, None), y
                break
            mask = (lam - coeffs) > Z2
            theta = min(1.0, float(np.min(lam[mask] / (lam - coeffs)[mask]))) if mask.any() else 1.0
            lam = theta * coeffs + (1 - theta) * lam
            keep = lam > Z2
            if keep.all():
                keep[int(np.argmin(lam))] = False
            s = s[keep]
            lam = lam[keep]
            vertices = [v for v, k in zip(vertices, keep) if k]
            lam = lam / lam.sum()
            x = lam @ s
        gap = wolfe.gap(vertices, lam) if wolfe.float_gap(x) < 1 + Z2 else Fraction(wolfe.float_gap(x))

    raise NonConvergence(max_iterations, gap)


def minimize(oracle: SfmOracle, brute_limit: int = 10, max_iterations: int = MAX_ITERATIONS) -> SfmResult:
    """Brute force up to ``brute_limit`` elements, minimum norm point above."""
    if len(oracle) <= brute_limit:
        return minimize_brute(oracle, max(brute_limit, 0))
    return minimize_mnp(oracle, max_iterations)


# ---------------------------------------------------------------------------
# Submodularity checks
# ---------------------------------------------------------------------------


@dataclass
class SubmodularityReport:
    """Pairs ``(A, B)`` with ``f(A) + f(B) < f(A ∪ B) + f(A ∩ B)``."""

    mode: str
    checked: int = 0
    violations: list[tuple[frozenset, frozenset]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_submodularity(
    oracle: SfmOracle, mode: str = "exhaustive", count: int = 1000, seed: int = 0
) -> SubmodularityReport:
    """Look for submodularity violations exhaustively or on ``count`` random pairs.

    The exhaustive mode tests ``f(A+i) + f(A+j) ≥ f(A+i+j) + f(A)`` for
    every ``A`` and ``i, j ∉ A``, which is equivalent to the full inequality.
    """
    ground = oracle.ground
    report = SubmodularityReport(mode)
    if mode == "exhaustive":
        if len(ground) > EXHAUSTIVE_LIMIT:
            raise GroundTooLarge(len(ground), EXHAUSTIVE_LIMIT)
        for size in range(len(ground) - 1):
            for combo in combinations(ground, size):
                a = frozenset(combo)
                rest = [e for e in ground if e not in a]
                fa = oracle(a)
                for i, j in combinations(rest, 2):
                    ai, aj = a | {i}, a | {j}
                    report.checked += 1
                    if oracle(ai) + oracle(aj) < oracle(ai | aj) + fa:
                        report.violations.append((ai, aj))
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        for _ in range(count):
            picks = rng.integers(0, 2, size=(2, len(ground)))
            a = frozenset(e for e, bit in zip(ground, picks[0]) if bit)
            b = frozenset(e for e, bit in zip(ground, picks[1]) if bit)
            report.checked += 1
            if oracle(a) + oracle(b) < oracle(a | b) + oracle(a & b):
                report.violations.append((a, b))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if report.violations:
        logger.debug("Submodularity check (%s): %d violations", mode, len(report.violations))
    return report
