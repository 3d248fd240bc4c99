"""Property-based tests for evenset using hypothesis."""

import unittest

import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from evenset.errors import GraphError, ParseError, RejectionBudgetExceeded
from evenset.formats import parse_dimacs, parse_fraction, render_dimacs
from evenset.generate import cycle, filtered_random, path, subdivided
from evenset.models import Graph
from evenset.solver import SolveOptions, brute_force_mwis, solve, verify_solution
from tests.utils import bipartite_mwis, pendant_cycle

#: Small separator threshold so short instances still go through the layer program.
LOW_THRESHOLD = SolveOptions(base_threshold=4)


@st.composite
def small_class_graphs(draw) -> Graph:
    """Paths, even cycles and subdivided cubic graphs small enough for the oracle."""
    kind = draw(st.sampled_from(["path", "cycle", "subdivided"]))
    if kind == "path":
        return path(draw(st.integers(min_value=1, max_value=30)))
    if kind == "cycle":
        return cycle(2 * draw(st.integers(min_value=3, max_value=15)))
    return subdivided("random", draw(st.sampled_from([4, 6, 8])), 3, seed=draw(st.integers(0, 1000)))


def weights_for(n: int) -> st.SearchStrategy[list[int]]:
    return st.lists(st.integers(min_value=0, max_value=9), min_size=n, max_size=n)


small_ids = st.integers(min_value=-1, max_value=8).map(str)

dimacs_line = st.one_of(
    st.builds(lambda kind, n, m: f"p {kind} {n} {m}", st.sampled_from(["edge", "col", "graph"]), small_ids, small_ids),
    st.builds(lambda u, v: f"e {u} {v}", small_ids, small_ids),
    st.sampled_from(["c comment", "", "e 1", "x 1 2", "p edge 3", "e a b"]),
)


def dimacs_text() -> st.SearchStrategy[str]:
    """Short DIMACS-like documents with small vertex ids."""
    return st.lists(dimacs_line, max_size=12).map("\n".join)


class TestPropertySolve(unittest.TestCase):
    """solve() against the brute-force and min-cut references."""

    @given(data=st.data())
    @settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_matches_brute_force(self, data) -> None:
        """On small class graphs the solver finds the brute-force optimum."""
        g = data.draw(small_class_graphs())
        weights = data.draw(weights_for(g.n))
        result = solve(g, weights, LOW_THRESHOLD)
        self.assertEqual(result.weight, brute_force_mwis(g, weights).weight)
        self.assertTrue(verify_solution(g, weights, result))

    def test_filtered_random_match_brute_force(self) -> None:
        """Seeded filtered random graphs with weights up to 100 match the brute-force optimum."""
        solved = 0
        for seed in range(240):
            n = 10 + seed % 9
            try:
                g = filtered_random(n, 1.5 / n, seed=seed)
            except RejectionBudgetExceeded:
                continue
            weights = [int(x) for x in np.random.default_rng(seed).integers(0, 101, size=n)]
            result = solve(g, weights, LOW_THRESHOLD)
            self.assertEqual(result.weight, brute_force_mwis(g, weights).weight, f"seed {seed}")
            self.assertTrue(verify_solution(g, weights, result))
            solved += 1
        self.assertGreaterEqual(solved, 200)

    @given(half=st.integers(min_value=15, max_value=25), data=st.data())
    @settings(max_examples=8, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_long_cycles_match_min_cut(self, half, data) -> None:
        """Weighted even cycles past the ball regime agree with the min-cut optimum."""
        g = cycle(2 * half)
        weights = data.draw(weights_for(g.n))
        result = solve(g, weights)
        self.assertEqual(result.weight, bipartite_mwis(g, weights))
        self.assertTrue(verify_solution(g, weights, result))

    @given(m=st.sampled_from([16, 20, 24]), data=st.data())
    @settings(max_examples=6, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    def test_pendant_cycles_match_min_cut(self, m, data) -> None:
        """Weighted pendant cycles agree with the min-cut optimum."""
        g = pendant_cycle(m)
        weights = data.draw(weights_for(g.n))
        result = solve(g, weights)
        self.assertEqual(result.weight, bipartite_mwis(g, weights))

    @given(g=small_class_graphs())
    @settings(max_examples=20, deadline=None)
    def test_uniform_solution_is_maximal(self, g) -> None:
        """A maximum independent set cannot be extended by any vertex."""
        result = solve(g, None, LOW_THRESHOLD)
        for v in g.vertices - result.solution:
            self.assertTrue(g.neighbors(v) & result.solution)


class TestPropertyParse(unittest.TestCase):
    """The parsers either succeed or raise a library error."""

    @given(text=dimacs_text())
    @settings(max_examples=200, deadline=2000)
    def test_dimacs_never_crashes(self, text: str) -> None:
        """parse_dimacs raises only GraphError subclasses."""
        try:
            g = parse_dimacs(text)
        except GraphError:
            return
        self.assertEqual(parse_dimacs(render_dimacs(g)), g)

    @given(num=st.integers(min_value=-1000, max_value=1000), den=st.integers(min_value=1, max_value=1000))
    def test_fraction_text(self, num: int, den: int) -> None:
        """num/den text parses to the exact fraction."""
        self.assertEqual(parse_fraction(f"{num}/{den}") * den, num)

    @given(text=st.text(alphabet=st.sampled_from(list("0123456789/ -.x")), max_size=20))
    def test_fraction_never_crashes(self, text: str) -> None:
        """Arbitrary text either parses or raises ParseError."""
        try:
            parse_fraction(text)
        except ParseError:
            pass


if __name__ == "__main__":
    unittest.main()
