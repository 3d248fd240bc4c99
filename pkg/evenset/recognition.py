"""Detection of the structures that define the graph class.

The detectors are exact but exponential in the worst case. They are meant
for generated and test instances: C4 and paw search is polynomial, prism
search enumerates induced paths between triangle pairs, and the Berge check
enumerates holes in the graph and its complement under a vertex cap.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import permutations

from .errors import InstanceTooLarge, Truncated
from .graph import PATH_CAP, closed_neighborhood, components, is_connected, iter_induced_paths
from .models import Graph, StructureKind, StructureWitness, VertexSet

logger = logging.getLogger(__name__)

#: Largest graph the brute-force Berge check accepts.
BERGE_CAP = 64


# ---------------------------------------------------------------------------
# C4, paws, triangles
# ---------------------------------------------------------------------------


def find_c4(g: Graph) -> StructureWitness | None:
    """Lexicographically first induced 4-cycle ``(a, b, c, d)`` with ``a`` smallest and ``b < d``."""
    adj = g.adjacency
    for a in range(g.n):
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[b]:
                if c <= a or g.adjacent(a, c):
                    continue
                for d in adj[c]:
                    if d > b and g.adjacent(a, d) and not g.adjacent(b, d):
                        return StructureWitness(StructureKind.C4, (a, b, c, d))
    return None


def find_paws(g: Graph) -> list[StructureWitness]:
    """All induced paws ``(a, c, b1, b2)`` with ``b1 < b2``, sorted."""
    found = []
    for a in range(g.n):
        nbrs = g.adjacency[a]
        for i, b1 in enumerate(nbrs):
            for b2 in nbrs[i + 1 :]:
                if not g.adjacent(b1, b2):
                    continue
                for c in nbrs:
                    if c in (b1, b2) or g.adjacent(c, b1) or g.adjacent(c, b2):
                        continue
                    found.append(StructureWitness(StructureKind.PAW, (a, c, b1, b2)))
    found.sort(key=lambda w: w.vertices)
    return found


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    found = []
    for a in range(g.n):
        for b in g.adjacency[a]:
            if b <= a:
                continue
            for c in g.adjacency[b]:
                if c > b and g.adjacent(a, c):
                    found.append((a, b, c))
    return found


# ---------------------------------------------------------------------------
# Prisms
# ---------------------------------------------------------------------------


def _link_triangles(
    g: Graph, tops: tuple[int, ...], bottoms: tuple[int, ...], budget: list[int]
) -> tuple[tuple[int, ...], ...] | None:
    """Three induced paths ``tops[i]``..``bottoms[i]`` with no edges between them but the triangles'."""
    for i in range(3):
        for j in range(3):
            if i != j and g.adjacent(tops[i], bottoms[j]):
                return None
    ends = [(tops[i], bottoms[i]) for i in range(3)]

    def search(i: int, chosen: list[tuple[int, ...]], taken: VertexSet) -> tuple[tuple[int, ...], ...] | None:
        if i == 3:
            return tuple(chosen)
        others = [v for j in range(3) if j != i for v in ends[j]]
        forbidden = taken | closed_neighborhood(g, others)
        for path in iter_induced_paths(g, ends[i][0], ends[i][1], forbidden_interior=forbidden):
            budget[0] -= 1
            if budget[0] < 0:
                raise Truncated(ends[i][0], ends[i][1], budget[1])
            interior = path[1:-1]
            found = search(i + 1, [*chosen, path], taken | closed_neighborhood(g, interior))
            if found:
                return found
        return None

    return search(0, [], frozenset())


def find_prism(g: Graph, cap: int = PATH_CAP) -> StructureWitness | None:
    """First induced prism over disjoint triangle pairs, or ``None``.

    Raises :class:`Truncated` when more than ``cap`` connecting paths are tried.
    """
    tris = triangles(g)
    budget = [cap, cap]
    for i, t1 in enumerate(tris):
        for t2 in tris[i + 1 :]:
            if set(t1) & set(t2):
                continue
            for bottoms in permutations(t2):
                paths = _link_triangles(g, t1, bottoms, budget)
                if paths:
                    return StructureWitness(StructureKind.PRISM, sum(paths, ()), paths)
    return None


# ---------------------------------------------------------------------------
# Holes, antiholes, Berge
# ---------------------------------------------------------------------------


def _find_odd_hole(g: Graph) -> tuple[int, ...] | None:
    """An odd hole as ``(s, p1, ..., pk)`` with ``s`` its smallest vertex and ``p1 < pk``."""
    for s in range(g.n):
        allowed = frozenset(range(s + 1, g.n))
        around = closed_neighborhood(g, (s,))
        nbrs = [u for u in g.adjacency[s] if u > s]
        for i, first in enumerate(nbrs):
            for last in nbrs[i + 1 :]:
                if g.adjacent(first, last):
                    continue
                for path in iter_induced_paths(g, first, last, allowed=allowed, forbidden_interior=around):
                    # hole length is len(path) + 1
                    if len(path) % 2 == 0:
                        return (s, *path)
    return None


def is_berge(g: Graph, cap: int = BERGE_CAP) -> tuple[bool, StructureWitness | None]:
    """Whether ``g`` has no odd hole and no odd antihole, with a witness when it does."""
    if g.n > cap:
        raise InstanceTooLarge(g.n, cap, "Berge check input")
    hole = _find_odd_hole(g)
    if hole:
        return False, StructureWitness(StructureKind.ODD_HOLE, hole)
    antihole = _find_odd_hole(g.complement())
    if antihole:
        return False, StructureWitness(StructureKind.ODD_ANTIHOLE, antihole)
    return True, None


# ---------------------------------------------------------------------------
# Even pairs and breaking
# ---------------------------------------------------------------------------


def is_even_pair(g: Graph, u: int, v: int, cap: int = PATH_CAP) -> bool:
    """Whether every induced ``u``-``v`` path has even length."""
    if u == v:
        raise ValueError("an even pair needs two distinct vertices")
    if g.adjacent(u, v):
        return False
    seen = 0
    for path in iter_induced_paths(g, u, v):
        if seen == cap:
            raise Truncated(u, v, cap)
        if len(path) % 2 == 0:
            return False
        seen += 1
    return True


def breaks(g: Graph, v: int, x: VertexSet) -> bool:
    """Whether no component D of ``G - N[v]`` has ``x ⊆ N[D]``."""
    if v in x:
        raise ValueError(f"{v} must not lie in the set it breaks")
    rest = g.vertices - closed_neighborhood(g, (v,))
    return not any(x <= closed_neighborhood(g, comp) for comp in components(g, rest))


def paw_breaker(g: Graph, paw: StructureWitness) -> int | None:
    """The vertex breaking ``paw`` as prescribed for paw-friendly graphs, if any.

    Either ``a`` breaks ``{c, b1, b2}``, or ``b1`` breaks ``{c, b2}``, or
    ``b2`` breaks ``{c, b1}``.
    """
    a, c, b1, b2 = paw.vertices
    if breaks(g, a, frozenset((c, b1, b2))):
        return a
    if breaks(g, b1, frozenset((c, b2))):
        return b1
    if breaks(g, b2, frozenset((c, b1))):
        return b2
    return None


def unbroken_paws(g: Graph) -> list[StructureWitness]:
    return [paw for paw in find_paws(g) if paw_breaker(g, paw) is None]


# ---------------------------------------------------------------------------
# Class report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassReport:
    """What is known about membership of a graph in the solver's class."""

    n: int
    connected: bool
    max_degree: int
    c4: StructureWitness | None
    prism: StructureWitness | None
    berge: bool | None
    berge_witness: StructureWitness | None = None
    unbroken_paws: tuple[StructureWitness, ...] | None = field(default=None)

    @property
    def c4_free(self) -> bool:
        return self.c4 is None

    @property
    def prism_free(self) -> bool:
        return self.prism is None

    @property
    def witness(self) -> StructureWitness | None:
        """The first forbidden structure found, if any."""
        return self.c4 or self.prism or self.berge_witness

    @property
    def in_class(self) -> bool:
        """No witness found; Bergeness may still be unchecked."""
        return self.witness is None

    def to_dict(self) -> dict:
        def dump(w: StructureWitness | None) -> dict | None:
            return None if w is None else {"kind": w.kind.value, "vertices": list(w.vertices)}

        return {
            "n": self.n,
            "connected": self.connected,
            "max_degree": self.max_degree,
            "c4_free": self.c4_free,
            "c4": dump(self.c4),
            "prism_free": self.prism_free,
            "prism": dump(self.prism),
            "berge": "unchecked" if self.berge is None else self.berge,
            "berge_witness": dump(self.berge_witness),
            "unbroken_paws": (
                "unchecked" if self.unbroken_paws is None else [dump(p) for p in self.unbroken_paws]
            ),
        }


def check_preconditions(g: Graph, berge_cap: int = BERGE_CAP, path_cap: int = PATH_CAP) -> ClassReport:
    """Report connectivity, C4, prism and Berge evidence for ``g``."""
    c4 = find_c4(g)
    prism = find_prism(g, path_cap)
    berge: bool | None = None
    berge_witness = None
    paws: tuple[StructureWitness, ...] | None = None
    if g.n <= berge_cap:
        berge, berge_witness = is_berge(g, berge_cap)
        paws = tuple(unbroken_paws(g))
    else:
        logger.debug("Skipping Berge check: %d vertices exceeds cap %d", g.n, berge_cap)
    report = ClassReport(
        n=g.n,
        connected=is_connected(g),
        max_degree=g.max_degree,
        c4=c4,
        prism=prism,
        berge=berge,
        berge_witness=berge_witness,
        unbroken_paws=paws,
    )
    logger.debug("Class report: %s", report.to_dict())
    return report
