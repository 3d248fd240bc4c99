"""Exception hierarchy for evenset.

Every error raised by the library derives from :class:`EvensetError`, and
carries the offending vertices or sets as attributes so callers (and the
CLI) can print a witness instead of a bare message.
"""

from __future__ import annotations

from collections.abc import Sequence


class EvensetError(Exception):
    """Base class for all evenset errors."""


# ---------------------------------------------------------------------------
# Graph construction and parsing
# ---------------------------------------------------------------------------


class GraphError(EvensetError):
    """The input does not describe a simple undirected graph."""


class LoopOrMultiEdge(GraphError):
    """A self-loop or a repeated edge was supplied."""

    def __init__(self, u: int, v: int, line: int | None = None) -> None:
        self.u = u
        self.v = v
        self.line = line
        kind = "self-loop" if u == v else "duplicate edge"
        where = f" on line {line}" if line is not None else ""
        super().__init__(f"{kind} {u}-{v}{where}")


class ParseError(GraphError):
    """A text format could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class InstanceTooLarge(EvensetError):
    """A brute-force routine was asked to run beyond its cap."""

    def __init__(self, size: int, cap: int, what: str = "instance") -> None:
        self.size = size
        self.cap = cap
        super().__init__(f"{what} has {size} vertices, cap is {cap}")


class Truncated(EvensetError):
    """Path enumeration hit its cap before a decision was reached."""

    def __init__(self, u: int, v: int, cap: int) -> None:
        self.u = u
        self.v = v
        self.cap = cap
        super().__init__(f"induced path enumeration {u}..{v} truncated after {cap} paths")


# ---------------------------------------------------------------------------
# Structural audits
# ---------------------------------------------------------------------------


class StructureAuditError(EvensetError):
    """A structural tripwire fired; the input is probably outside the class."""


class OrderViolation(StructureAuditError):
    """The star order is not antisymmetric or not transitive."""

    def __init__(self, cycle: Sequence[int]) -> None:
        self.cycle = tuple(cycle)
        super().__init__(f"star order is not a partial order: {' <= '.join(map(str, self.cycle))}")


class NotBipartite(StructureAuditError):
    """An odd cycle was found where a bipartite graph was required."""

    def __init__(self, cycle: Sequence[int]) -> None:
        self.cycle = tuple(cycle)
        super().__init__(f"odd cycle {list(self.cycle)}")


class LaminarityViolation(StructureAuditError):
    """Two separations of a sequence are not loosely non-crossing."""

    def __init__(self, first: int, second: int, vertex: int) -> None:
        self.pair = (first, second)
        self.vertex = vertex
        super().__init__(
            f"separations anchored at {first} and {second} cross: {vertex} lies in A of one and C of the other"
        )


class AnchorOutsideBag(StructureAuditError):
    """A separation's anchor fell outside the central bag."""

    def __init__(self, anchor: int) -> None:
        self.anchor = anchor
        super().__init__(f"anchor {anchor} is not in the central bag")


class BagMismatch(StructureAuditError):
    """The star-free bag differs from the star covering."""

    def __init__(self, missing: frozenset[int], extra: frozenset[int]) -> None:
        self.missing = missing
        self.extra = extra
        super().__init__(f"star-free bag differs from the covering: missing {sorted(missing)}, extra {sorted(extra)}")


class CoreAuditError(StructureAuditError):
    """A component outside the core bag is not confined to one A-part."""

    def __init__(self, component: frozenset[int], reason: str) -> None:
        self.component = component
        super().__init__(f"component {sorted(component)} outside the core bag: {reason}")


class LayerOverflow(StructureAuditError):
    """Some A_x ∩ core is larger than the degree bound allows."""

    def __init__(self, center: int, size: int, bound: int) -> None:
        self.center = center
        self.size = size
        self.bound = bound
        super().__init__(f"A_{center} meets the core bag in {size} vertices, bound is {bound}")


class RepresentationGap(StructureAuditError):
    """A vertex of the core bag could not be placed in any layer."""

    def __init__(self, vertices: frozenset[int]) -> None:
        self.vertices = vertices
        super().__init__(f"vertices {sorted(vertices)} lie in no A-part of the first side")


class ComponentBoundViolation(StructureAuditError):
    """A component left by a separator is too heavy or too well attached."""

    def __init__(self, component: frozenset[int], reason: str) -> None:
        self.component = component
        super().__init__(f"component {sorted(component)}: {reason}")


# ---------------------------------------------------------------------------
# Separator inputs
# ---------------------------------------------------------------------------


class SeparatorInputError(EvensetError, ValueError):
    """The graph or weights handed to the separator are not acceptable."""


class NotConnected(SeparatorInputError):
    """The graph must be connected."""


class NotUniform(SeparatorInputError):
    """The weight function must be uniform with total 1."""


# ---------------------------------------------------------------------------
# Submodular minimization
# ---------------------------------------------------------------------------


class SfmError(EvensetError):
    """Submodular minimization failed."""


class GroundTooLarge(SfmError):
    """Exhaustive minimization was asked for a ground set above its limit."""

    def __init__(self, size: int, limit: int) -> None:
        self.size = size
        self.limit = limit
        super().__init__(f"ground set of {size} elements exceeds the exhaustive limit {limit}")


class NonConvergence(SfmError):
    """The minimum-norm-point iteration did not certify a minimizer."""

    def __init__(self, iterations: int, gap: object) -> None:
        self.iterations = iterations
        self.gap = gap
        super().__init__(f"no certificate after {iterations} iterations (gap {gap})")


# ---------------------------------------------------------------------------
# Solver and generators
# ---------------------------------------------------------------------------


class NotPawFriendlyEvidence(EvensetError):
    """The solver met behaviour that cannot occur on paw-friendly graphs."""


class PreconditionFailed(EvensetError):
    """A forbidden structure was found while preconditions were being enforced."""

    def __init__(self, report: object, witness: object) -> None:
        self.report = report
        self.witness = witness
        super().__init__(f"input is outside the class: {witness}")


class InvalidWeights(EvensetError, ValueError):
    """Weights are negative, non-integral, or of the wrong length."""


class GenerationError(EvensetError, ValueError):
    """Generator parameters are out of range."""


class RejectionBudgetExceeded(GenerationError):
    """Rejection sampling ran out of attempts."""

    def __init__(self, attempts: int) -> None:
        self.attempts = attempts
        super().__init__(f"no class member found in {attempts} attempts")
