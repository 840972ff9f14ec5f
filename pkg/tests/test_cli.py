import sys
import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock
# Add the project root to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from lib.builtinDiagrams import builtin_diagram, type_a, type_e
from lib.coxeterDiagram import CoxeterDiagram, parse_diagram
from lib.errors import ConflictingCertificates
from scripts.coxeter_centralizer import execute
from services.centralizer_service import centralizer_diagram
from services.diagram_analysis_service import diagrams_isomorphic


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = execute(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class BuiltinVerbTest(unittest.TestCase):

    def test_prints_diagram_file(self):
        code, out, _ = run("builtin", "A:3")
        self.assertEqual(code, 0)
        self.assertEqual(out, "vertex a1\nvertex a2\nvertex a3\nedge a1 a2 3\nedge a2 a3 3\n")

    def test_lists_names(self):
        code, out, _ = run("builtin")
        self.assertEqual(code, 0)
        self.assertIn("Y555\n", out)

    def test_json(self):
        code, out, _ = run("builtin", "affA:1", "--json")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["edges"], [["a1", "a2", "inf"]])

    def test_unknown_name(self):
        code, out, err = run("builtin", "Q:1")
        self.assertEqual(code, 1)
        self.assertEqual(out, "")
        self.assertIn("unknown builtin", err)


class DiagramFileTest(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_reads_diagram_file(self):
        path = self.dir / "e8.cox"
        path.write_text(type_e(8).to_text(), encoding="utf-8")
        code, out, _ = run("centralize", "--diagram", str(path), "--reflection", "e1", "--json")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["gamma_rank"], 0)
        self.assertEqual(payload["spherical"], {"types": ["E7"], "order": 2903040})
        # the emitted diagram parses back to W_Omega
        domega = CoxeterDiagram.from_dict(payload["domega"])
        self.assertTrue(diagrams_isomorphic(domega, type_e(7))[0])

    def test_parse_error(self):
        path = self.dir / "bad.cox"
        path.write_text("edge a b 2\n", encoding="utf-8")
        code, _, err = run("info", "--diagram", str(path))
        self.assertEqual(code, 1)
        self.assertIn("line 1", err)

    def test_missing_file(self):
        code, _, err = run("info", "--diagram", str(self.dir / "absent.cox"))
        self.assertEqual(code, 1)
        self.assertTrue(err.startswith("error:"))

    def test_dot_output(self):
        path = self.dir / "domega.dot"
        code, _, _ = run("centralize", "--builtin", "A:5", "--reflection", "a1", "--dot", str(path))
        self.assertEqual(code, 0)
        dot = path.read_text(encoding="utf-8")
        self.assertTrue(dot.startswith("graph DOmega {"))
        self.assertIn('"a1>a3" -- "a1>a4";', dot)

    def test_dot_refused_for_cycles(self):
        code, _, err = run("centralize", "--builtin", "affA:3", "--reflection", "a1", "--dot", str(self.dir / "x.dot"))
        self.assertEqual(code, 1)
        self.assertIn("cycle rank 1", err)
        self.assertFalse((self.dir / "x.dot").exists())


class InfoVerbTest(unittest.TestCase):

    def test_text(self):
        code, out, _ = run("info", "--builtin", "B:3")
        self.assertEqual(code, 0)
        self.assertEqual(
            out,
            "rank: 3\n"
            "odd components: 2\n"
            "  b1: b1 b2 (cycle rank 0)\n"
            "  b3: b3 (cycle rank 0)\n"
            "reflection classes: 2\n"
            "spherical: B3 (order 48)\n",
        )

    def test_json(self):
        code, out, _ = run("info", "--builtin", "affA:2", "--json")
        payload = json.loads(out)
        self.assertEqual(payload["odd_components"][0]["cycle_rank"], 1)
        self.assertIsNone(payload["spherical"])


class CentralizeVerbTest(unittest.TestCase):

    def test_a5_text(self):
        code, out, _ = run("centralize", "--builtin", "A:5", "--reflection", "a1")
        self.assertEqual(code, 0)
        self.assertEqual(
            out,
            "reflection: a1\n"
            "gamma rank: 0\n"
            "gamma words:\n"
            "domega: 3 vertices, A3 (order 24)\n"
            "  vertex a1>a3\n"
            "  vertex a1>a4\n"
            "  vertex a1>a5\n"
            "  edge a1>a3 a1>a4 3\n"
            "  edge a1>a4 a1>a5 3\n"
            "class words:\n"
            "  a1>a3: a3\n"
            "  a1>a4: a4\n"
            "  a1>a5: a5\n",
        )

    def test_domega_block_is_the_diagram_file(self):
        code, out, _ = run("centralize", "--builtin", "F4", "--reflection", "f1")
        self.assertEqual(code, 0)
        domega = centralizer_diagram(builtin_diagram("F4"), "f1").domega
        block = "".join(f"  {line}\n" for line in domega.to_text().splitlines())
        self.assertIn(block, out)
        self.assertIn("  edge f1>f4 f2>f3 4\n", out)

    def test_empty_domega(self):
        code, out, _ = run("centralize", "--builtin", "I2:5", "--reflection", "i1")
        self.assertEqual(code, 0)
        self.assertIn("domega: 0 vertices, trivial (order 1)\n", out)
        self.assertNotIn("\n  \n", out)
        self.assertTrue(out.endswith("class words:\n"))

    def test_cycles(self):
        code, out, _ = run("centralize", "--builtin", "affA:3", "--reflection", "a1")
        self.assertEqual(code, 0)
        self.assertIn("gamma rank: 1\n", out)
        self.assertIn("domega: UNSUPPORTED-CYCLES\n", out)
        self.assertIn("  a2 a1 a3 a2 a4 a3 a1 a4\n", out)

    def test_all_words(self):
        code, out, _ = run("centralize", "--builtin", "A:3", "--reflection", "a1", "--all-words", "--json")
        self.assertEqual(code, 0)
        self.assertEqual(
            json.loads(out)["r_words"],
            {"a1>a3": "a3", "a3>a1": "a2 a1 a3 a2 a1 a2 a3 a1 a2"},
        )

    def test_tail_classes(self):
        code, out, _ = run("centralize", "--builtin", "A:4", "--reflection", "a1", "--tail-classes")
        self.assertEqual(code, 0)
        tails = out.split("tail classes:\n")[1]
        self.assertIn("  a1>a3: a1>a3 -> a1>a3\n", tails)
        self.assertIn("  a3>a1: a3>a1 a4>a1 -> a1>a3\n", tails)

    def test_output_is_stable(self):
        args = ("centralize", "--builtin", "bugaenko8", "--reflection", "v1", "--all-words")
        self.assertEqual(run(*args), run(*args))

    def test_unknown_reflection(self):
        code, out, err = run("centralize", "--builtin", "A:3", "--reflection", "zz")
        self.assertEqual(code, 1)
        self.assertIn("unknown vertex", err)

    def test_missing_reflection_is_a_usage_error(self):
        code, _, err = run("centralize", "--builtin", "A:3")
        self.assertEqual(code, 1)
        self.assertIn("--reflection", err)

    def test_needs_exactly_one_source(self):
        code, _, _ = run("info")
        self.assertEqual(code, 1)

    def test_conflicts_exit_with_two(self):
        with mock.patch(
            "services.centralizer_service.CentralizerService.compute_edge_labels",
            side_effect=ConflictingCertificates("boom"),
        ):
            code, _, err = run("centralize", "--builtin", "A:4", "--reflection", "a1")
        self.assertEqual(code, 2)
        self.assertIn("internal error: boom", err)


class BlowupVerbTest(unittest.TestCase):

    def test_d4(self):
        code, out, _ = run("blowup", "--builtin", "D:4")
        self.assertEqual(code, 0)
        self.assertEqual(out, "vertex d1-d2-d3\nvertex d1-d2-d4\nvertex d3-d2-d4\n")

    def test_a5(self):
        code, out, _ = run("blowup", "--builtin", "A:5")
        self.assertTrue(diagrams_isomorphic(parse_diagram(out), type_a(3))[0])

    def test_rejects_labels(self):
        code, _, err = run("blowup", "--builtin", "B:4")
        self.assertEqual(code, 1)
        self.assertIn("labeled 3", err)


class VerifyVerbTest(unittest.TestCase):

    def test_y555(self):
        code, out, _ = run("verify", "--builtin", "Y555", "--reflection", "c")
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(len(lines), 6)
        self.assertTrue(all(line.startswith("PASS ") for line in lines))


class BruteVerbTest(unittest.TestCase):

    def test_a3(self):
        code, out, _ = run("brute", "--builtin", "A:3", "--reflection", "a1")
        self.assertEqual(code, 0)
        self.assertEqual(
            out,
            "group order: 24\n"
            "centralizer order: 4\n"
            "predicted order: 4\n"
            "reflection classes: 1\n"
            "generators closure: EQUAL\n",
        )

    def test_json(self):
        code, out, _ = run("brute", "--builtin", "B:3", "--reflection", "b3", "--json")
        payload = json.loads(out)
        self.assertEqual(payload["centralizer_order"], 16)
        self.assertEqual(payload["predicted_order"], 16)
        self.assertEqual(payload["reflection_classes"], [["b1", "b2"], ["b3"]])

    def test_infinite_group(self):
        code, _, err = run("brute", "--builtin", "affA:2", "--reflection", "a1")
        self.assertEqual(code, 1)
        self.assertIn("spherical", err)

    def test_max_order(self):
        code, _, _ = run("brute", "--builtin", "A:5", "--reflection", "a1", "--max-order", "100")
        self.assertEqual(code, 1)


if __name__ == "__main__":
    unittest.main()
