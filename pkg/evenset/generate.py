"""Instance generators for the graph class the solver targets.

Cycles, paths and 1-subdivisions of simple graphs are bipartite and
triangle-free, hence perfect and prism-free; they are C4-free as long as
cycles have length at least 6. Random graphs are certified by rejection
through :mod:`evenset.recognition`.
"""

from __future__ import annotations

import enum
import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

import networkx as nx
import numpy as np

from .errors import GenerationError, InstanceTooLarge, RejectionBudgetExceeded, Truncated
from .graph import PATH_CAP
from .models import Graph
from .recognition import BERGE_CAP, find_c4, find_prism, is_berge

logger = logging.getLogger(__name__)

#: Attempts made by the filtered random generator before giving up.
MAX_ATTEMPTS = 1000


class GeneratorKind(str, enum.Enum):
    CYCLE = "cycle"
    PATH = "path"
    SUBDIVIDED = "subdivided"
    FILTERED_RANDOM = "filtered-random"


@dataclass(frozen=True)
class GeneratedInstance:
    """A generated graph with a note on how it was made and why it is in the class."""

    graph: Graph
    note: str
    kind: GeneratorKind
    params: Mapping[str, Any] = field(default_factory=dict)


def cycle(length: int) -> Graph:
    """The cycle ``0-1-...-(length-1)-0``."""
    if length < 6 or length % 2:
        raise GenerationError(f"cycle length must be even and at least 6, got {length}")
    return Graph.from_edges(length, ((i, (i + 1) % length) for i in range(length)))


def path(length: int) -> Graph:
    """The path on ``length`` vertices."""
    if length < 1:
        raise GenerationError(f"path length must be positive, got {length}")
    return Graph.from_edges(length, ((i, i + 1) for i in range(length - 1)))


def subdivide(g: Graph) -> Graph:
    """Replace every edge by a path of length two; new vertices follow the old ones in edge order."""
    edges = []
    for i, (u, v) in enumerate(g.edges()):
        mid = g.n + i
        edges.append((u, mid))
        edges.append((mid, v))
    return Graph.from_edges(g.n + g.m, edges)


def _from_networkx(nxg: nx.Graph) -> Graph:
    return Graph.from_edges(nxg.number_of_nodes(), nxg.edges())


def subdivided(base: str = "random", n: int = 4, degree: int = 3, seed: int = 0) -> Graph:
    """1-subdivision of a random ``degree``-regular graph or of the complete graph ``K_n``."""
    if base == "random":
        try:
            nxg = nx.random_regular_graph(degree, n, seed=seed)
        except nx.NetworkXError as e:
            raise GenerationError(str(e)) from None
    elif base == "complete":
        if n < 1:
            raise GenerationError(f"complete base needs at least one vertex, got {n}")
        nxg = nx.complete_graph(n)
    else:
        raise GenerationError(f"unknown base {base!r}")
    return subdivide(_from_networkx(nxg))


def filtered_random(
    n: int,
    p: float,
    seed: int = 0,
    attempts: int = MAX_ATTEMPTS,
    berge_cap: int = BERGE_CAP,
    path_cap: int = PATH_CAP,
) -> Graph:
    """First ``G(n, p)`` sample that is C4-free, prism-free and Berge."""
    if n > berge_cap:
        raise InstanceTooLarge(n, berge_cap, "filtered random graph")
    if not 0 <= p <= 1:
        raise GenerationError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    for attempt in range(attempts):
        g = _from_networkx(nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31))))
        if find_c4(g) is not None:
            continue
        try:
            if find_prism(g, path_cap) is not None:
                continue
        except Truncated:
            continue
        if is_berge(g, berge_cap)[0]:
            logger.debug("Filtered random graph accepted after %d attempts", attempt + 1)
            return g
    raise RejectionBudgetExceeded(attempts)


def generate(kind: GeneratorKind | str, params: Mapping[str, Any] | None = None, seed: int = 0) -> GeneratedInstance:
    """Dispatch to a generator; the same ``seed`` always yields the same graph."""
    kind = GeneratorKind(kind)
    params = dict(params or {})
    if kind is GeneratorKind.CYCLE:
        length = int(params.get("len", 8))
        g = cycle(length)
        note = f"C{length}: even cycle, bipartite and C4-free"
    elif kind is GeneratorKind.PATH:
        length = int(params.get("len", 8))
        g = path(length)
        note = f"P{length}: path, bipartite and C4-free"
    elif kind is GeneratorKind.SUBDIVIDED:
        base = str(params.get("base", "random"))
        n = int(params.get("n", 4))
        degree = int(params.get("degree", 3))
        g = subdivided(base, n, degree, seed)
        label = f"K{n}" if base == "complete" else f"random {degree}-regular graph on {n} vertices"
        note = f"1-subdivision of {label}: bipartite, triangle-free, C4-free"
    else:
        n = int(params.get("n", 12))
        p = float(params.get("p", 0.2))
        g = filtered_random(n, p, seed, int(params.get("attempts", MAX_ATTEMPTS)))
        note = f"G({n}, {p}) sample certified C4-free, prism-free and Berge"
    logger.debug("Generated %s: n=%d, m=%d", kind.value, g.n, g.m)
    return GeneratedInstance(g, note, kind, params)
