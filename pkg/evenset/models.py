"""Domain types used by evenset.

All types are frozen dataclasses: once built, a graph, a weight function or
a separator can be shared freely between threads and cached by identity.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import GraphError, InvalidWeights, LoopOrMultiEdge

#: A set of vertex ids of one graph.
VertexSet = frozenset[int]

EMPTY: VertexSet = frozenset()


# ---------------------------------------------------------------------------
# Graph and weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    max_degree: int = field(init=False)
    _sets: tuple[VertexSet, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adjacency)}")
        sets = []
        for v, row in enumerate(self.adjacency):
            members = frozenset(row)
            if v in members:
                raise LoopOrMultiEdge(v, v)
            if len(members) != len(row):
                dup = next(u for i, u in enumerate(row) if u in row[:i])
                raise LoopOrMultiEdge(v, dup)
            if list(row) != sorted(row):
                raise GraphError(f"adjacency of {v} is not sorted")
            if row and (row[0] < 0 or row[-1] >= self.n):
                raise GraphError(f"adjacency of {v} mentions a vertex outside 0..{self.n - 1}")
            sets.append(members)
        for v, members in enumerate(sets):
            for u in members:
                if v not in sets[u]:
                    raise GraphError(f"edge {v}-{u} is not symmetric")
        object.__setattr__(self, "max_degree", max((len(row) for row in self.adjacency), default=0))
        object.__setattr__(self, "_sets", tuple(sets))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph from an edge list, rejecting loops and repeats."""
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} mentions a vertex outside 0..{n - 1}")
            if u == v or v in rows[u]:
                raise LoopOrMultiEdge(u, v)
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(tuple(sorted(row)) for row in rows))

    @cached_property
    def vertices(self) -> VertexSet:
        return frozenset(range(self.n))

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(len(row) for row in self.adjacency) // 2

    def neighbors(self, v: int) -> VertexSet:
        return self._sets[v]

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield u, v

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Return the induced subgraph relabelled to ``0..k-1`` and the old ids in order."""
        old = tuple(sorted(vertices))
        new = {v: i for i, v in enumerate(old)}
        rows = tuple(tuple(sorted(new[u] for u in self._sets[v] if u in new)) for v in old)
        return Graph(len(old), rows), old

    def complement(self) -> Graph:
        everyone = range(self.n)
        return Graph(
            self.n,
            tuple(tuple(u for u in everyone if u != v and u not in self._sets[v]) for v in everyone),
        )


@dataclass(frozen=True)
class Weights:
    """Exact nonnegative rational vertex weights."""

    values: tuple[Fraction, ...]
    total: Fraction = field(init=False)

    def __post_init__(self) -> None:
        values = tuple(Fraction(x) for x in self.values)
        for v, x in enumerate(values):
            if x < 0:
                raise InvalidWeights(f"weight of vertex {v} is negative ({x})")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "total", sum(values, Fraction(0)))

    @classmethod
    def uniform(cls, n: int, support: Iterable[int] | None = None) -> Weights:
        """Weight ``1/|support|`` on ``support`` (default: all of ``0..n-1``), zero elsewhere."""
        members = frozenset(range(n) if support is None else support)
        if not members:
            raise InvalidWeights("a uniform weight function needs a nonempty support")
        share = Fraction(1, len(members))
        zero = Fraction(0)
        return cls(tuple(share if v in members else zero for v in range(n)))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> Fraction:
        return self.values[v]

    def of(self, vertices: Iterable[int]) -> Fraction:
        """Total weight of ``vertices``."""
        values = self.values
        return sum((values[v] for v in vertices), Fraction(0))

    @property
    def max_value(self) -> Fraction:
        return max(self.values, default=Fraction(0))

    @property
    def is_uniform(self) -> bool:
        support = [x for x in self.values if x]
        return self.total == 1 and len(set(support)) == 1

    def with_values(self, updates: Mapping[int, Fraction]) -> Weights:
        values = list(self.values)
        for v, x in updates.items():
            values[v] = x
        return Weights(tuple(values))


# ---------------------------------------------------------------------------
# Separations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Separation:
    """A triple ``(A, C, B)`` partitioning ``universe`` with A anticomplete to B.

    Only A and C are stored; B is derived from the universe on demand, which
    keeps a full table of star separations linear in the size of the A-parts.
    """

    a: VertexSet
    c: VertexSet
    universe: VertexSet = field(repr=False)

    @cached_property
    def b(self) -> VertexSet:
        return self.universe - self.a - self.c

    def restrict(self, h: VertexSet) -> Separation:
        """The separation ``(A ∩ H, C ∩ H, B ∩ H)`` of the induced subgraph on ``h``."""
        return Separation(self.a & h, self.c & h, h)

    def is_valid(self, g: Graph) -> bool:
        if self.a & self.c or not (self.a | self.c) <= self.universe:
            return False
        return not any(g.neighbors(v) & self.b for v in self.a)

    def is_skewed(self, w: Weights, eps: Fraction) -> bool:
        return w.of(self.a) < eps or w.of(self.b) < eps


@dataclass(frozen=True)
class StarSeparation:
    """A canonical star separation together with its center."""

    sep: Separation
    center: int

    @property
    def anchor(self) -> int:
        return self.center

    @property
    def a(self) -> VertexSet:
        return self.sep.a

    @property
    def c(self) -> VertexSet:
        return self.sep.c

    @property
    def b(self) -> VertexSet:
        return self.sep.b


@dataclass(frozen=True)
class OrderRelation:
    """The star order ``≤_A`` as strict successor sets plus star-twin classes."""

    separations: tuple[StarSeparation, ...]
    successors: tuple[VertexSet, ...]
    twins: tuple[VertexSet, ...]

    def leq(self, x: int, y: int) -> bool:
        return x == y or y in self.successors[x]

    @cached_property
    def predecessor_count(self) -> tuple[int, ...]:
        counts = [0] * len(self.successors)
        for succ in self.successors:
            for y in succ:
                counts[y] += 1
        return tuple(counts)


# ---------------------------------------------------------------------------
# Recognition witnesses
# ---------------------------------------------------------------------------


class StructureKind(str, enum.Enum):
    C4 = "C4"
    PRISM = "Prism"
    PAW = "Paw"
    ODD_HOLE = "OddHole"
    ODD_ANTIHOLE = "OddAntihole"


def _is_induced_cycle(g: Graph, cycle: tuple[int, ...], *, complement: bool = False) -> bool:
    k = len(cycle)
    if len(set(cycle)) != k or k < 3:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.adjacent(cycle[i], cycle[j]) != (consecutive != complement):
                return False
    return True


def _is_induced_path(g: Graph, path: tuple[int, ...]) -> bool:
    k = len(path)
    if len(set(path)) != k:
        return False
    return all(g.adjacent(path[i], path[j]) == (j == i + 1) for i in range(k) for j in range(i + 1, k))


@dataclass(frozen=True)
class StructureWitness:
    """Vertices inducing a forbidden or notable structure.

    ``vertices`` is in canonical order:

    * C4, odd hole: cycle order starting at the smallest vertex.
    * odd antihole: cycle order of the hole in the complement.
    * paw: ``(a, c, b1, b2)``, where ``a`` is the degree-3 vertex and ``c`` the pendant.
    * prism: the three paths ``a_i .. b_i`` concatenated; ``paths`` holds them separately.
    """

    kind: StructureKind
    vertices: tuple[int, ...]
    paths: tuple[tuple[int, ...], ...] = ()

    def __str__(self) -> str:
        return f"{self.kind.value} on {' '.join(map(str, self.vertices))}"

    def validate(self, g: Graph) -> bool:
        """Re-check the claimed edges and non-edges against ``g``."""
        vs = self.vertices
        if self.kind is StructureKind.C4:
            return len(vs) == 4 and _is_induced_cycle(g, vs)
        if self.kind is StructureKind.ODD_HOLE:
            return len(vs) >= 5 and len(vs) % 2 == 1 and _is_induced_cycle(g, vs)
        if self.kind is StructureKind.ODD_ANTIHOLE:
            return len(vs) >= 5 and len(vs) % 2 == 1 and _is_induced_cycle(g, vs, complement=True)
        if self.kind is StructureKind.PAW:
            if len(vs) != 4 or len(set(vs)) != 4:
                return False
            a, c, b1, b2 = vs
            edges = [(a, b1), (a, b2), (b1, b2), (a, c)]
            non_edges = [(c, b1), (c, b2)]
            return all(g.adjacent(x, y) for x, y in edges) and not any(g.adjacent(x, y) for x, y in non_edges)
        return self._validate_prism(g)

    def _validate_prism(self, g: Graph) -> bool:
        if len(self.paths) != 3 or any(len(p) < 2 for p in self.paths):
            return False
        if sum(self.paths, ()) != self.vertices or len(set(self.vertices)) != len(self.vertices):
            return False
        if not all(_is_induced_path(g, p) for p in self.paths):
            return False
        ends = [(p[0], p[-1]) for p in self.paths]
        for i in range(3):
            for j in range(i + 1, 3):
                allowed = {frozenset((ends[i][0], ends[j][0])), frozenset((ends[i][1], ends[j][1]))}
                for x in self.paths[i]:
                    for y in self.paths[j]:
                        if g.adjacent(x, y) != (frozenset((x, y)) in allowed):
                            return False
        return True


# ---------------------------------------------------------------------------
# Bags and separators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CentralBag:
    """A central bag with the weight of removed A-parts moved onto anchors."""

    vertices: VertexSet
    transferred_weights: Weights
    anchor_log: Mapping[int, Fraction]
    source_sequence: tuple[StarSeparation, ...]


@dataclass(frozen=True)
class BagTower:
    """The nested bags ``β ⊆ γ`` (and later ``ℛ``) of one decomposition."""

    beta: VertexSet
    gamma: VertexSet
    x1: VertexSet
    x2: VertexSet
    weights_beta: Weights
    weights_gamma: Weights
    core: VertexSet | None = None


@dataclass(frozen=True)
class IteratedEvenSet:
    """Ordered, pairwise disjoint layers ``(L_1, ..., L_k)``."""

    layers: tuple[VertexSet, ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for layer in self.layers:
            if seen & layer:
                raise ValueError(f"layers overlap in {sorted(seen & layer)}")
            seen |= layer

    @property
    def k(self) -> int:
        return len(self.layers)

    @cached_property
    def union(self) -> VertexSet:
        return frozenset().union(*self.layers)

    def prefix(self, i: int) -> VertexSet:
        """Union of the layers before index ``i`` (0-based)."""
        return frozenset().union(*self.layers[:i])


@dataclass(frozen=True)
class ComponentInfo:
    """A component D left by a separator, with its neighbourhood N(D)."""

    vertices: VertexSet
    neighborhood: VertexSet


class Branch(enum.IntEnum):
    """Which construction produced a tame separator."""

    BALL = 1
    PIPELINE = 2


@dataclass(frozen=True)
class EvenSetSeparator:
    """An iterated even set whose removal leaves only small, thinly attached components."""

    iterated: IteratedEvenSet
    c: Fraction
    d: int
    branch: Branch
    components: tuple[ComponentInfo, ...]
    audits: Mapping[str, object] = field(default_factory=dict)
    center: int | None = None

    @property
    def k(self) -> int:
        return self.iterated.k

    @property
    def layers(self) -> tuple[VertexSet, ...]:
        return self.iterated.layers

    @property
    def params(self) -> tuple[int, Fraction, int]:
        return self.k, self.c, self.d
