"""Test utilities for the evenset test suite."""

from collections.abc import Sequence

import networkx as nx

from evenset.models import Graph


def cycle_graph(n: int) -> Graph:
    """The cycle ``0-1-...-(n-1)-0`` of any length, odd ones included."""
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def pendant_cycle(m: int) -> Graph:
    """Cycle ``0..m-1`` with a pendant ``m + i`` hanging off every cycle vertex ``i``."""
    edges = [(i, (i + 1) % m) for i in range(m)]
    edges.extend((i, m + i) for i in range(m))
    return Graph.from_edges(2 * m, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def prism_graph() -> Graph:
    """Two triangles ``0,1,2`` and ``3,4,5`` joined by a matching."""
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def paw_graph() -> Graph:
    """Triangle ``0,2,3`` with the pendant ``1`` on ``0``."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (2, 3)])


def to_networkx(g: Graph) -> nx.Graph:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return nxg


def from_networkx(nxg: nx.Graph) -> Graph:
    relabelled = nx.convert_node_labels_to_integers(nxg)
    return Graph.from_edges(relabelled.number_of_nodes(), relabelled.edges())


def networkx_mwis(g: Graph, weights: Sequence[int] | None = None) -> int:
    """Maximum weight independent set value through a max weight clique of the complement."""
    values = [1] * g.n if weights is None else list(weights)
    comp = nx.complement(to_networkx(g))
    for v in range(g.n):
        comp.nodes[v]["weight"] = values[v]
    if g.n == 0:
        return 0
    _, weight = nx.max_weight_clique(comp, weight="weight")
    return weight


def bipartite_alpha(g: Graph) -> int:
    """Independence number of a bipartite graph by König's theorem."""
    nxg = to_networkx(g)
    matching = nx.max_weight_matching(nxg, maxcardinality=True)
    return g.n - len(matching)


def bipartite_mwis(g: Graph, weights: Sequence[int]) -> int:
    """Maximum weight independent set of a bipartite graph as total weight minus a minimum cut."""
    nxg = to_networkx(g)
    color = nx.bipartite.color(nxg)
    flow = nx.DiGraph()
    flow.add_nodes_from(["s", "t"])
    for v in range(g.n):
        if color[v] == 0:
            flow.add_edge("s", v, capacity=weights[v])
        else:
            flow.add_edge(v, "t", capacity=weights[v])
    for u, v in g.edges():
        left, right = (u, v) if color[u] == 0 else (v, u)
        flow.add_edge(left, right)
    cut, _ = nx.minimum_cut(flow, "s", "t")
    return sum(weights) - cut
