import random
from unittest import TestCase

from plumb.errors import NonBipartiteError, ParseError, PreconditionError
from plumb.seifgraph import (
    EdgeColoring,
    fundamental_path,
    is_alternating,
    is_valid_pair,
    lca,
    parse_graph,
    path_sign,
    path_sum_sign,
    prune_pendants,
    render_graph,
    rooted_tree,
    seifert_stats,
    bfs_tree,
    depth_coloring,
)

from tests.fixtures import FIG8_GRAPH, PATH3_GRAPH, SEED, SEVEN_FIVE_GRAPH, TRIANGLE_GRAPH, random_graph


def coloring(*signs: int) -> EdgeColoring:
    return EdgeColoring({i: s for i, s in enumerate(signs)})


class TestParseGraph(TestCase):
    def test_seven_five(self):
        g = parse_graph(SEVEN_FIVE_GRAPH)
        self.assertEqual(len(g.vertices), 4)
        self.assertEqual(len(g.edges), 7)
        self.assertEqual(g.components, 1)
        self.assertEqual([e.sign for e in g.edges], [1, 1, 1, 1, 1, -1, -1])
        self.assertEqual((g.edge(5).u, g.edge(5).v), ("a", "d"))

    def test_fig8_bipartition(self):
        g = parse_graph(FIG8_GRAPH)
        self.assertEqual(len(g.edges), 10)
        classes = {v for v in g.vertices if g.side[v] == g.side["v"]}
        self.assertEqual(classes, {"v", "v5", "v6"})

    def test_odd_cycle(self):
        with self.assertRaises(NonBipartiteError) as ctx:
            parse_graph(TRIANGLE_GRAPH)
        self.assertEqual(len(ctx.exception.cycle), 3)
        self.assertIsInstance(ctx.exception, ParseError)

    def test_bad_lines(self):
        for text in (
            "vertex a\nvertex a\n",
            "vertex a\nedge a b +\n",
            "vertex a\nedge a a +\n",
            "vertex a\nvertex b\nedge a b *\n",
            "vertex a\ncomponents 0\n",
            "node a\n",
        ):
            with self.subTest(text=text):
                with self.assertRaises(ParseError):
                    parse_graph(text)

    def test_render_reparses(self):
        g = parse_graph(SEVEN_FIVE_GRAPH)
        again = parse_graph(render_graph(g))
        self.assertEqual(again.vertices, g.vertices)
        self.assertEqual(again.edges, g.edges)
        self.assertEqual(again.components, 1)


class TestPrune(TestCase):
    def test_path_cascades(self):
        g, removed = prune_pendants(parse_graph(PATH3_GRAPH))
        self.assertEqual(removed, 2)
        self.assertEqual(len(g.vertices), 1)
        self.assertEqual(g.edges, ())

    def test_seven_five_unchanged(self):
        g = parse_graph(SEVEN_FIVE_GRAPH)
        pruned, removed = prune_pendants(g)
        self.assertEqual(removed, 0)
        self.assertEqual(pruned.edges, g.edges)

    def test_fig8_drops_pendant(self):
        g = parse_graph(FIG8_GRAPH)
        pruned, removed = prune_pendants(g)
        self.assertEqual(removed, 1)
        self.assertNotIn("v1", pruned)
        self.assertEqual(sorted(e.id for e in pruned.edges), list(range(1, 10)))
        self.assertEqual(len(pruned.edges) - len(pruned.vertices), len(g.edges) - len(g.vertices))
        self.assertEqual(prune_pendants(pruned)[1], 0)

    def test_keeps_bipartition(self):
        rng = random.Random(SEED + 13)
        for _ in range(300):
            g = random_graph(rng, max_vertices=10, max_edges=14)
            pruned, removed = prune_pendants(g)
            self.assertTrue(pruned.is_connected())
            self.assertEqual(len(pruned.vertices), len(g.vertices) - removed)
            for e in pruned.edges:
                self.assertNotEqual(pruned.side[e.u], pruned.side[e.v])


class TestTrees(TestCase):
    def setUp(self):
        self.g = parse_graph(SEVEN_FIVE_GRAPH)
        # path b-a-d-c
        self.path_tree = rooted_tree(self.g, {0, 5, 6}, "b")

    def test_depths(self):
        self.assertEqual(self.path_tree.depth, {"b": 0, "a": 1, "d": 2, "c": 3})
        self.assertEqual(self.path_tree.coedges, [1, 2, 3, 4])

    def test_rejects_non_spanning(self):
        with self.assertRaises(PreconditionError):
            rooted_tree(self.g, {0, 1, 5}, "a")
        with self.assertRaises(PreconditionError):
            rooted_tree(self.g, {0, 5}, "a")
        with self.assertRaises(PreconditionError):
            rooted_tree(self.g, {0, 5, 6}, "z")

    def test_depth_coloring(self):
        kappa = depth_coloring(self.path_tree)
        self.assertEqual(kappa.kappa, {0: -1, 5: 1, 6: -1})
        flipped = depth_coloring(self.path_tree, True)
        self.assertEqual(flipped.kappa, {0: 1, 5: -1, 6: 1})
        self.assertTrue(flipped.flipped)
        self.assertEqual(kappa.flip(), flipped)

    def test_single_edge_tree(self):
        g = parse_graph("vertex x\nvertex y\nedge x y +\n")
        for root in ("x", "y"):
            self.assertEqual(depth_coloring(rooted_tree(g, {0}, root)).kappa, {0: -1})

    def test_lca(self):
        t = rooted_tree(self.g, {0, 2, 5}, "a")
        self.assertEqual(lca(t, "a", "c"), "a")
        self.assertEqual(lca(t, "c", "d"), "a")
        self.assertEqual(lca(t, "c", "b"), "b")
        self.assertEqual(lca(t, "d", "d"), "d")

    def test_fundamental_path(self):
        t = rooted_tree(self.g, {0, 5, 6}, "a")
        self.assertEqual(fundamental_path(t, 2), [0, 5, 6])
        self.assertEqual(fundamental_path(t, 1), [0])
        with self.assertRaises(PreconditionError):
            fundamental_path(t, 5)

    def test_paths_are_odd(self):
        g = parse_graph(FIG8_GRAPH)
        t = bfs_tree(g, "v")
        for e in t.coedges:
            self.assertEqual(len(fundamental_path(t, e)) % 2, 1)

    def test_valid_pairs(self):
        self.assertTrue(is_valid_pair(self.g, self.path_tree))
        self.assertFalse(is_valid_pair(self.g, rooted_tree(self.g, {0, 2, 5}, "a")))
        tree_only = parse_graph(PATH3_GRAPH)
        self.assertTrue(is_valid_pair(tree_only, bfs_tree(tree_only, "y")))


class TestPathSigns(TestCase):
    def test_alternating(self):
        self.assertTrue(is_alternating([0], coloring(-1)))
        self.assertTrue(is_alternating([0, 1, 2], coloring(-1, 1, -1)))
        self.assertFalse(is_alternating([0, 1, 2], coloring(-1, -1, 1)))

    def test_product(self):
        self.assertEqual(path_sign([0], coloring(-1)), -1)
        self.assertEqual(path_sign([0, 1, 2], coloring(-1, 1, -1)), 1)
        self.assertEqual(path_sign([0, 1, 2], coloring(1, -1, 1)), -1)

    def test_sum(self):
        self.assertEqual(path_sum_sign([0, 1, 2], coloring(-1, 1, -1)), -1)
        self.assertEqual(path_sum_sign([0, 1, 2], coloring(1, -1, 1)), 1)
        with self.assertRaises(PreconditionError):
            path_sum_sign([0, 1], coloring(1, -1))

    def test_flip_negates_odd_paths(self):
        kappa = coloring(1, -1, 1)
        for rule in (path_sign, path_sum_sign):
            self.assertEqual(rule([0, 1, 2], kappa.flip()), -rule([0, 1, 2], kappa))


class TestStats(TestCase):
    def test_seven_five(self):
        stats = seifert_stats(parse_graph(SEVEN_FIVE_GRAPH), 1)
        self.assertEqual((stats.s, stats.c, stats.g_c), (4, 7, 2))
        self.assertEqual(2 * stats.g_c + stats.l - 1, stats.c - stats.s + 1)

    def test_disc(self):
        self.assertEqual(seifert_stats(parse_graph("vertex o\n"), 1).g_c, 0)

    def test_parity_violation(self):
        with self.assertRaises(PreconditionError):
            seifert_stats(parse_graph(SEVEN_FIVE_GRAPH), 2)
        with self.assertRaises(PreconditionError):
            seifert_stats(parse_graph(SEVEN_FIVE_GRAPH), 0)
