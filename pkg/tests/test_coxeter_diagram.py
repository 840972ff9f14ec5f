import sys
import unittest
from pathlib import Path
# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from lib.coxeterDiagram import (
    INFINITY,
    CoxeterDiagram,
    is_even,
    is_odd,
    parse_diagram,
    parse_label,
)
from lib.errors import (
    BadLabel,
    DiagramError,
    DuplicateEdge,
    EmptyDiagram,
    ParseError,
    SelfEdge,
    UnknownVertex,
)

SAMPLE = """\
# a small test diagram
vertex a
edge a b 3
edge b c 4   # trailing comment
edge c d inf
vertex e
"""


class ParseDiagramTest(unittest.TestCase):

    def setUp(self):
        self.d = parse_diagram(SAMPLE)

    def test_vertices_keep_file_order(self):
        self.assertEqual(self.d.vertices, ("a", "b", "c", "d", "e"))
        self.assertEqual(self.d.rank, 5)

    def test_labels_are_symmetric(self):
        self.assertEqual(self.d.label("a", "b"), 3)
        self.assertEqual(self.d.label("c", "b"), 4)
        self.assertIs(self.d.label("d", "c"), INFINITY)

    def test_absent_pairs_are_unjoined(self):
        self.assertEqual(self.d.label("a", "c"), 2)
        self.assertEqual(self.d.label("e", "a"), 2)

    def test_vertex_against_itself(self):
        self.assertEqual(self.d.label("b", "b"), 1)

    def test_unknown_vertex(self):
        with self.assertRaises(UnknownVertex):
            self.d.label("a", "z")

    def test_neighbors_and_odd_edges(self):
        self.assertEqual(self.d.neighbors("c"), ["b", "d"])
        self.assertEqual(self.d.odd_neighbors("b"), ["a"])
        self.assertEqual(self.d.odd_edges(), [("a", "b")])

    def test_repeated_edge_with_same_label_is_accepted(self):
        d = parse_diagram("edge a b 5\nedge b a 5\n")
        self.assertEqual(len(d.edges), 1)

    def test_conflicting_edge(self):
        with self.assertRaises(DuplicateEdge):
            parse_diagram("edge a b 3\nedge b a 4\n")

    def test_self_edge(self):
        with self.assertRaises(SelfEdge):
            parse_diagram("edge a a 3\n")

    def test_bad_labels(self):
        for token in ("2", "1", "x", "3.5"):
            with self.subTest(token=token), self.assertRaises(BadLabel):
                parse_diagram(f"edge a b {token}\n")

    def test_errors_carry_line_numbers(self):
        with self.assertRaises(ParseError) as ctx:
            parse_diagram("vertex a\nedge a b 2\n")
        self.assertEqual(ctx.exception.line_no, 2)
        self.assertTrue(str(ctx.exception).startswith("line 2:"))

    def test_unknown_directive(self):
        with self.assertRaises(ParseError):
            parse_diagram("node a\n")

    def test_empty_input(self):
        with self.assertRaises(EmptyDiagram):
            parse_diagram("# nothing here\n\n")

    def test_parse_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            parse_diagram("edge a b 0\n")


class LabelHelpersTest(unittest.TestCase):

    def test_parity(self):
        self.assertTrue(is_even(2))
        self.assertTrue(is_even(6))
        self.assertFalse(is_even(INFINITY))
        self.assertTrue(is_odd(3))
        self.assertFalse(is_odd(1))
        self.assertFalse(is_odd(INFINITY))

    def test_parse_label(self):
        self.assertEqual(parse_label("7"), 7)
        self.assertIs(parse_label("inf"), INFINITY)


class CoxeterDiagramTest(unittest.TestCase):

    def test_edges_are_normalized(self):
        d = CoxeterDiagram.from_edges([("c", "b", 3), ("b", "a", 4)], ["a", "b", "c"])
        self.assertEqual(d.edges, (("a", "b", 4), ("b", "c", 3)))

    def test_equal_regardless_of_edge_order(self):
        d1 = CoxeterDiagram.from_edges([("a", "b", 3), ("b", "c", 3)])
        d2 = CoxeterDiagram(("a", "b", "c"), (("c", "b", 3), ("a", "b", 3)))
        self.assertEqual(d1, d2)

    def test_rejects_bad_construction(self):
        with self.assertRaises(DiagramError):
            CoxeterDiagram(("a", "a"), ())
        with self.assertRaises(UnknownVertex):
            CoxeterDiagram(("a",), (("a", "b", 3),))
        with self.assertRaises(BadLabel):
            CoxeterDiagram(("a", "b"), (("a", "b", 2),))

    def test_induced(self):
        d = parse_diagram(SAMPLE).induced(["b", "c", "e"])
        self.assertEqual(d.vertices, ("b", "c", "e"))
        self.assertEqual(d.edges, (("b", "c", 4),))

    def test_relabeled(self):
        d = parse_diagram("edge a b 5\n").relabeled({"a": "x", "b": "y"})
        self.assertEqual(d.label("x", "y"), 5)


class SerializationTest(unittest.TestCase):

    def setUp(self):
        self.d = parse_diagram(SAMPLE)

    def test_text_round_trip(self):
        self.assertEqual(parse_diagram(self.d.to_text()), self.d)

    def test_text_format(self):
        d = parse_diagram("edge a b inf\n")
        self.assertEqual(d.to_text(), "vertex a\nvertex b\nedge a b inf\n")

    def test_dot(self):
        dot = self.d.to_dot()
        self.assertTrue(dot.startswith("graph D {\n"))
        self.assertIn('  "a" -- "b";\n', dot)
        self.assertIn('  "b" -- "c" [label="4"];\n', dot)
        self.assertIn('  "c" -- "d" [label="inf", style=dashed];\n', dot)
        self.assertIn('  "e";\n', dot)
        self.assertTrue(dot.endswith("}\n"))

    def test_dict_uses_inf_string(self):
        payload = self.d.to_dict()
        self.assertIn(["c", "d", "inf"], payload["edges"])
        self.assertEqual(CoxeterDiagram.from_dict(payload), self.d)

    def test_malformed_dict(self):
        with self.assertRaises(ParseError):
            CoxeterDiagram.from_dict({"edges": [["a", "b"]]})
        with self.assertRaises(BadLabel):
            CoxeterDiagram.from_dict({"edges": [["a", "b", 2]]})


if __name__ == "__main__":
    unittest.main()
