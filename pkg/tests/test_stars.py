"""Tests for canonical star separations and the star order."""

import unittest
from fractions import Fraction

from evenset.errors import LaminarityViolation, NotBipartite
from evenset.models import Graph, Separation, Weights
from evenset.stars import (
    are_star_twins,
    bipartition_sequences,
    build_order,
    canonical_separations,
    canonical_star_separation,
    covering_sequence,
    crossing_violations,
    is_loosely_laminar,
    is_loosely_noncrossing,
    is_noncrossing,
    is_shield,
    laminarity_violation,
    leq_A,
    shield_or_twin_violations,
    star_covering,
    two_coloring,
)
from tests.utils import cycle_graph, path_graph, pendant_cycle


def claw() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


class TestCanonicalSeparation(unittest.TestCase):
    """Tests for canonical_star_separation()."""

    def test_cycle_vertex(self):
        """On a cycle, A is empty and C is the closed neighbourhood."""
        g = cycle_graph(8)
        s = canonical_star_separation(g, Weights.uniform(8), 0)
        self.assertEqual(s.a, frozenset())
        self.assertEqual(s.c, {7, 0, 1})
        self.assertEqual(s.b, {2, 3, 4, 5, 6})
        self.assertTrue(s.sep.is_valid(g))

    def test_pendant_cycle_vertex(self):
        """A cycle vertex cuts off its own pendant and the two neighbouring ones."""
        g = pendant_cycle(6)
        s = canonical_star_separation(g, Weights.uniform(12), 2)
        self.assertEqual(s.a, {7, 8, 9})
        self.assertEqual(s.c, {1, 2, 3})

    def test_pendant_vertex(self):
        """A pendant's separation has an empty A-part."""
        g = pendant_cycle(6)
        s = canonical_star_separation(g, Weights.uniform(12), 8)
        self.assertEqual(s.a, frozenset())
        self.assertEqual(s.c, {8, 2})

    def test_tie_goes_to_smallest_component(self):
        """Equal-weight components are broken by their smallest vertex."""
        s = canonical_star_separation(claw(), Weights.uniform(4), 1)
        self.assertEqual(s.b, {2})
        self.assertEqual(s.a, {3})

    def test_heaviest_component_wins(self):
        """A heavier component becomes B."""
        w = Weights((Fraction(1, 8), Fraction(1, 8), Fraction(1, 8), Fraction(5, 8)))
        s = canonical_star_separation(claw(), w, 1)
        self.assertEqual(s.b, {3})
        self.assertEqual(s.a, {2})

    def test_dominating_vertex(self):
        """When N[v] is everything, B is empty."""
        s = canonical_star_separation(claw(), Weights.uniform(4), 0)
        self.assertEqual(s.a, frozenset())
        self.assertEqual(s.b, frozenset())


class TestStarOrder(unittest.TestCase):
    """Tests for star twins and the order ≤_A."""

    def setUp(self):
        self.g = claw()
        self.seps = canonical_separations(self.g, Weights.uniform(4))

    def test_twins(self):
        """Leaves 2 and 3 of the claw are star twins, 1 and 3 are not."""
        self.assertTrue(are_star_twins(self.seps, 2, 3))
        self.assertFalse(are_star_twins(self.seps, 1, 3))

    def test_twins_need_two_vertices(self):
        """A vertex is not its own twin."""
        with self.assertRaises(ValueError):
            are_star_twins(self.seps, 2, 2)

    def test_leq_between_twins_follows_ids(self):
        """Twins are ordered by vertex id."""
        self.assertTrue(leq_A(self.seps, 2, 3))
        self.assertFalse(leq_A(self.seps, 3, 2))
        self.assertTrue(leq_A(self.seps, 1, 3))
        self.assertTrue(leq_A(self.seps, 3, 3))

    def test_build_order(self):
        """The materialized order agrees with leq_A and finds the minimal vertices."""
        order = build_order(self.g, Weights.uniform(4), self.seps)
        self.assertEqual(order.successors[1], {3})
        self.assertEqual(order.successors[3], frozenset())
        self.assertEqual(order.twins[2], {3})
        self.assertEqual(order.predecessor_count, (0, 0, 0, 2))
        self.assertEqual(star_covering(order), {0, 1, 2})
        for x in range(4):
            for y in range(4):
                self.assertEqual(order.leq(x, y), leq_A(self.seps, x, y))

    def test_pendant_cycle_covering(self):
        """The cycle vertices are exactly the minimal elements."""
        g = pendant_cycle(6)
        order = build_order(g, Weights.uniform(12))
        self.assertEqual(star_covering(order), set(range(6)))
        self.assertEqual([s.center for s in covering_sequence(order, frozenset({4, 0, 2}))], [0, 2, 4])
        self.assertEqual(shield_or_twin_violations(order), [])
        self.assertEqual(crossing_violations(g, order), [])

    def test_cycle_order_is_empty(self):
        """On a cycle nothing is comparable and every vertex covers."""
        order = build_order(cycle_graph(10), Weights.uniform(10))
        self.assertEqual(star_covering(order), set(range(10)))
        self.assertEqual(sum(len(s) for s in order.successors), 0)


class TestSeparationRelations(unittest.TestCase):
    """Tests for crossing, shields and laminarity."""

    def setUp(self):
        self.universe = frozenset(range(6))

    def sep(self, a, c):
        return Separation(frozenset(a), frozenset(c), self.universe)

    def test_noncrossing(self):
        """Disjoint A-parts away from the other C-part do not cross."""
        s1, s2 = self.sep({0}, {1}), self.sep({3}, {2})
        self.assertTrue(is_loosely_noncrossing(s1, s2))
        self.assertTrue(is_noncrossing(s1, s2))

    def test_loosely_noncrossing_only(self):
        """Shared A-parts are allowed only loosely."""
        s1, s2 = self.sep({0}, {1}), self.sep({0}, {2})
        self.assertTrue(is_loosely_noncrossing(s1, s2))
        self.assertFalse(is_noncrossing(s1, s2))

    def test_crossing(self):
        """An A-part meeting the other C-part crosses."""
        self.assertFalse(is_loosely_noncrossing(self.sep({0}, {1}), self.sep({3}, {0})))

    def test_shield(self):
        """S1 shields S2 when A2 is inside A1."""
        self.assertTrue(is_shield(self.sep({0, 1}, {2}), self.sep({0}, {3})))
        self.assertFalse(is_shield(self.sep({0}, {2}), self.sep({0, 1}, {3})))

    def test_laminarity(self):
        """A pendant inside a cycle vertex's A-part cannot anchor a C-part of the same sequence."""
        g = pendant_cycle(6)
        seps = canonical_separations(g, Weights.uniform(12))
        self.assertEqual(laminarity_violation((seps[0], seps[7])), (0, 7, 7))
        self.assertTrue(is_loosely_laminar((seps[0], seps[2], seps[4])))


class TestBipartition(unittest.TestCase):
    """Tests for the two-coloring of the covering."""

    def test_two_coloring(self):
        """The smallest vertex of each component goes to side one."""
        x1, x2 = two_coloring(cycle_graph(6), frozenset(range(6)))
        self.assertEqual(x1, {0, 2, 4})
        self.assertEqual(x2, {1, 3, 5})

    def test_two_coloring_respects_subset(self):
        """Vertices outside x are ignored."""
        x1, x2 = two_coloring(path_graph(5), frozenset({0, 1, 3, 4}))
        self.assertEqual(x1, {0, 3})
        self.assertEqual(x2, {1, 4})

    def test_odd_cycle_rejected(self):
        """An odd cycle in the covering raises NotBipartite with the cycle."""
        with self.assertRaises(NotBipartite) as ctx:
            two_coloring(cycle_graph(5), frozenset(range(5)))
        self.assertEqual(len(ctx.exception.cycle) % 2, 1)

    def test_bipartition_sequences(self):
        """Both sides of a pendant cycle's covering are loosely laminar."""
        g = pendant_cycle(6)
        order = build_order(g, Weights.uniform(12))
        parts = bipartition_sequences(g, order, star_covering(order))
        self.assertEqual(parts.x1, {0, 2, 4})
        self.assertEqual([s.center for s in parts.seq2], [1, 3, 5])

    def test_laminarity_violation_raised(self):
        """A covering side with a non-laminar sequence raises."""
        g = pendant_cycle(6)
        order = build_order(g, Weights.uniform(12))
        with self.assertRaises(LaminarityViolation):
            bipartition_sequences(g, order, frozenset({0, 7}))


if __name__ == "__main__":
    unittest.main()
