"""Neighbourhood, component and path primitives over :class:`~evenset.models.Graph`.

Vertex ids double as the fixed vertex ordering, so every routine here is
deterministic: components come out sorted by their smallest member and
paths are explored in increasing neighbour order.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .models import EMPTY, Graph, VertexSet

logger = logging.getLogger(__name__)

#: Default number of induced paths enumerated before giving up.
PATH_CAP = 1_000_000


def iter_components(g: Graph, alive: Iterable[int]) -> Iterator[VertexSet]:
    """Lazily yield the components of ``g[alive]`` by smallest member."""
    remaining = set(alive)
    for start in sorted(remaining):
        if start not in remaining:
            continue
        remaining.discard(start)
        members = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if u in remaining:
                    remaining.discard(u)
                    members.append(u)
                    queue.append(u)
        yield frozenset(members)


def components(g: Graph, alive: Iterable[int]) -> list[VertexSet]:
    """Connected components of the subgraph induced on ``alive``, ordered by smallest member."""
    return list(iter_components(g, alive))


def is_connected(g: Graph, alive: Iterable[int] | None = None) -> bool:
    vertices = g.vertices if alive is None else frozenset(alive)
    return len(components(g, vertices)) <= 1


def ball(g: Graph, v: int, d: int) -> VertexSet:
    """All vertices within BFS distance ``d`` of ``v``."""
    return frozenset(bfs_order(g, v, d))


def bfs_order(g: Graph, v: int, d: int | None = None, alive: VertexSet | None = None) -> list[int]:
    """Vertices within distance ``d`` of ``v`` by (distance, id)."""
    dist = {v: 0}
    order = [v]
    frontier = [v]
    level = 0
    while frontier and (d is None or level < d):
        level += 1
        nxt: set[int] = set()
        for x in frontier:
            for u in g.adjacency[x]:
                if u not in dist and (alive is None or u in alive):
                    nxt.add(u)
        frontier = sorted(nxt)
        for u in frontier:
            dist[u] = level
        order.extend(frontier)
    return order


def neighborhood(g: Graph, x: Iterable[int]) -> VertexSet:
    """N(X): vertices outside ``x`` with a neighbour in ``x``."""
    members = frozenset(x)
    out: set[int] = set()
    for v in members:
        out.update(g.adjacency[v])
    return frozenset(out) - members


def closed_neighborhood(g: Graph, x: Iterable[int]) -> VertexSet:
    """N[X] = X ∪ N(X)."""
    members = frozenset(x)
    return members | neighborhood(g, members)


def is_independent(g: Graph, x: Iterable[int]) -> bool:
    members = frozenset(x)
    return not any(g.neighbors(v) & members for v in members)


def components_with_neighborhoods(g: Graph, alive: Iterable[int]) -> list[tuple[VertexSet, VertexSet]]:
    """Components of ``g[alive]`` paired with their neighbourhoods in the whole of ``g``."""
    return [(comp, neighborhood(g, comp)) for comp in components(g, alive)]


# ---------------------------------------------------------------------------
# Induced paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathEnumeration:
    """Result of :func:`enumerate_induced_paths`."""

    paths: tuple[tuple[int, ...], ...]
    truncated: bool

    @property
    def lengths(self) -> list[int]:
        """Lengths in edges, one per path."""
        return [len(p) - 1 for p in self.paths]


def iter_induced_paths(
    g: Graph,
    u: int,
    v: int,
    *,
    allowed: VertexSet | None = None,
    forbidden_interior: VertexSet = EMPTY,
) -> Iterator[tuple[int, ...]]:
    """Yield induced ``u``-``v`` paths by DFS with chordality pruning.

    Interior vertices must lie in ``allowed`` (when given) and outside
    ``forbidden_interior``. A vertex is appended only if it has no neighbour
    on the path other than the current end, so every prefix is itself an
    induced path.
    """
    if u == v:
        return
    path = [u]
    on_path = {u}
    # blocked[x] counts path vertices, other than the end, adjacent to x.
    blocked: dict[int, int] = {}

    def extend() -> Iterator[tuple[int, ...]]:
        if blocked.get(v):
            return
        end = path[-1]
        if g.adjacent(end, v):
            yield (*path, v)
            return
        for x in g.adjacency[end]:
            if x in on_path or x == v or blocked.get(x):
                continue
            if x in forbidden_interior or (allowed is not None and x not in allowed):
                continue
            for y in g.adjacency[end]:
                blocked[y] = blocked.get(y, 0) + 1
            path.append(x)
            on_path.add(x)
            yield from extend()
            on_path.discard(x)
            path.pop()
            for y in g.adjacency[end]:
                blocked[y] -= 1

    yield from extend()


def enumerate_induced_paths(g: Graph, u: int, v: int, cap: int = PATH_CAP) -> PathEnumeration:
    """All induced paths from ``u`` to ``v``, stopping after ``cap`` of them."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    found: list[tuple[int, ...]] = []
    truncated = False
    for path in iter_induced_paths(g, u, v):
        if len(found) == cap:
            truncated = True
            break
        found.append(path)
    if truncated:
        logger.debug("Induced paths %d..%d truncated at %d", u, v, cap)
    return PathEnumeration(tuple(found), truncated)
