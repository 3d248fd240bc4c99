"""Tests for the instance generators."""

import unittest

from evenset.errors import GenerationError, InstanceTooLarge, RejectionBudgetExceeded
from evenset.generate import GeneratorKind, cycle, filtered_random, generate, path, subdivide, subdivided
from evenset.recognition import check_preconditions, find_c4
from tests.utils import complete_graph


class TestGenerators(unittest.TestCase):
    """Tests for the deterministic generators."""

    def test_cycle(self):
        """Cycles have one edge per vertex."""
        g = cycle(10)
        self.assertEqual((g.n, g.m, g.max_degree), (10, 10, 2))

    def test_cycle_length_checked(self):
        """Odd and short cycles are outside the class."""
        for length in (4, 7):
            with self.assertRaises(GenerationError):
                cycle(length)

    def test_path(self):
        """Paths have one edge fewer than vertices."""
        g = path(5)
        self.assertEqual((g.n, g.m), (5, 4))
        with self.assertRaises(GenerationError):
            path(0)

    def test_subdivide(self):
        """The midpoint of the i-th edge gets id n + i."""
        g = subdivide(complete_graph(3))
        self.assertEqual((g.n, g.m), (6, 6))
        self.assertEqual(g.neighbors(3), {0, 1})

    def test_subdivided_complete(self):
        """The subdivided K4 has 10 vertices and 12 edges and is in the class."""
        g = subdivided("complete", 4)
        self.assertEqual((g.n, g.m), (10, 12))
        self.assertTrue(check_preconditions(g).in_class)

    def test_subdivided_random_is_seeded(self):
        """The same seed gives the same random regular base."""
        g1 = subdivided("random", 10, 3, seed=7)
        g2 = subdivided("random", 10, 3, seed=7)
        self.assertEqual(g1, g2)
        self.assertEqual(g1.n, 10 + 15)
        self.assertIsNone(find_c4(g1))

    def test_subdivided_bad_params(self):
        """Impossible regular graphs and unknown bases raise GenerationError."""
        with self.assertRaises(GenerationError):
            subdivided("random", 5, 3)
        with self.assertRaises(GenerationError):
            subdivided("grid", 4)


class TestFilteredRandom(unittest.TestCase):
    """Tests for rejection sampling."""

    def test_accepted_graph_is_in_class(self):
        """Accepted samples pass the class checks."""
        g = filtered_random(10, 0.2, seed=3)
        self.assertTrue(check_preconditions(g).in_class)

    def test_deterministic(self):
        """Equal seeds give equal graphs."""
        self.assertEqual(filtered_random(10, 0.2, seed=5), filtered_random(10, 0.2, seed=5))

    def test_too_large(self):
        """Samples must fit under the Berge cap."""
        with self.assertRaises(InstanceTooLarge):
            filtered_random(100, 0.1)

    def test_bad_probability(self):
        """p must be a probability."""
        with self.assertRaises(GenerationError):
            filtered_random(10, 1.5)

    def test_budget(self):
        """Dense samples on many vertices are never C4-free."""
        with self.assertRaises(RejectionBudgetExceeded):
            filtered_random(20, 0.9, attempts=3)


class TestDispatch(unittest.TestCase):
    """Tests for generate()."""

    def test_cycle_kind(self):
        """The default cycle length is 8."""
        instance = generate("cycle")
        self.assertEqual(instance.kind, GeneratorKind.CYCLE)
        self.assertEqual(instance.graph.n, 8)
        self.assertIn("C8", instance.note)

    def test_params(self):
        """Parameters are passed through."""
        instance = generate(GeneratorKind.SUBDIVIDED, {"base": "complete", "n": 5})
        self.assertEqual(instance.graph.n, 5 + 10)
        self.assertIn("K5", instance.note)

    def test_path_kind(self):
        """Paths honour len."""
        self.assertEqual(generate("path", {"len": 3}).graph.m, 2)

    def test_unknown_kind(self):
        """Unknown kinds raise ValueError."""
        with self.assertRaises(ValueError):
            generate("tree")


if __name__ == "__main__":
    unittest.main()
