import contextlib
import dataclasses
import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from singquartic.cli import main
from singquartic.families import cayley_cubic
from singquartic.ff2k import field_new
from singquartic.singular import analyze

SURFACES = Path(__file__).resolve().parents[1] / "surfaces"
SMALL = ["--field", "GF(2^4)", "--threads", "2"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class CliTests(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name, text):
        path = Path(self.tmp.name) / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def test_analyze_text(self):
        code, out, _ = run(*SMALL, "analyze", str(SURFACES / "cayley.txt"))
        self.assertEqual(code, 0)
        self.assertIn("total: 4", out)
        self.assertIn("Node", out)
        self.assertIn("field: GF(2^4)", out)

    def test_analyze_json_is_deterministic(self):
        argv = [*SMALL, "--json", "analyze", str(SURFACES / "pencil_1.txt")]
        code, first, _ = run(*argv)
        _, second, _ = run(*argv)
        self.assertEqual(code, 0)
        self.assertEqual(first, second)
        payload = json.loads(first)
        self.assertEqual(payload["schema"], 1)
        self.assertEqual(payload["total"], 10)
        self.assertEqual(payload["by_defdeg"], {"1": 10})
        self.assertEqual(payload["degree_residual"], 16)

    def test_analyze_smooth(self):
        code, out, _ = run(*SMALL, "--json", "analyze", str(SURFACES / "smooth.txt"))
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["total"], 0)
        self.assertEqual(payload["degree_residual"], 36)
        self.assertFalse(payload["gauss_plane"])

    def test_strict_inconclusive(self):
        code, _, _ = run(*SMALL, "--strict", "analyze", str(SURFACES / "f16.txt"))
        self.assertEqual(code, 3)
        code, _, _ = run(*SMALL, "analyze", str(SURFACES / "f16.txt"))
        self.assertEqual(code, 0)

    def test_strict_inconsistent_degree_formula(self):
        report = analyze(cayley_cubic(field_new(4)), threads=1)
        report = dataclasses.replace(report, degree=dataclasses.replace(report.degree, consistent=False))
        with mock.patch("singquartic.cli.analyze", return_value=report):
            code, _, _ = run(*SMALL, "--strict", "analyze", str(SURFACES / "cayley.txt"))
            self.assertEqual(code, 3)
            code, _, _ = run(*SMALL, "analyze", str(SURFACES / "cayley.txt"))
            self.assertEqual(code, 0)
        code, _, _ = run(*SMALL, "--strict", "analyze", str(SURFACES / "cayley.txt"))
        self.assertEqual(code, 0)

    def test_quadruple_plane(self):
        code, out, _ = run(*SMALL, "--json", "analyze", str(SURFACES / "quadruple_plane.txt"))
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["normality"], "non-normal-detected")

    def test_parse_errors(self):
        code, _, err = run(*SMALL, "analyze", self.write("bad.txt", "x1 + + x2"))
        self.assertEqual(code, 2)
        self.assertIn("position 5", err)
        code, _, _ = run(*SMALL, "analyze", self.write("mixed.txt", "x1^4 + x2^3"))
        self.assertEqual(code, 2)
        code, _, _ = run(*SMALL, "analyze", str(Path(self.tmp.name) / "missing.txt"))
        self.assertEqual(code, 2)

    def test_bad_field(self):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                main(["--field", "GF(3^2)", "analyze", str(SURFACES / "cayley.txt")])
        self.assertEqual(cm.exception.code, 2)

    def test_conic(self):
        code, out, _ = run(*SMALL, "conic", str(SURFACES / "smooth_conic.txt"))
        self.assertEqual(code, 0)
        self.assertIn("class: SmoothConic", out)
        code, out, _ = run(*SMALL, "--json", "conic", self.write("lines.txt", "x1*x3 + x2*x3"))
        payload = json.loads(out)
        self.assertEqual(payload["kind"], "TwoLines")
        self.assertEqual(payload["normal_form"], "x1*x2")
        code, _, _ = run(*SMALL, "conic", str(SURFACES / "klein.txt"))
        self.assertEqual(code, 2)

    def test_critical(self):
        code, out, _ = run("--field", "GF(2^6)", "--json", "critical", str(SURFACES / "klein.txt"))
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["total"], 7)
        self.assertEqual(payload["by_defdeg"], {"1": 1, "3": 6})
        code, out, _ = run(*SMALL, "critical", self.write("square.txt", "x1^2*x2^2 + x3^4"))
        self.assertEqual(code, 0)
        self.assertIn("every point is critical", out)

    def test_families(self):
        code, out, _ = run(*SMALL, "--json", "families", "f16")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["total"], 14)
        self.assertTrue(payload["expectation"]["match"])
        code, out, _ = run(*SMALL, "families", "--subfield", "2", "pencil", "omega")
        self.assertEqual(code, 0)
        self.assertIn("match: yes", out)
        code, _, err = run(*SMALL, "families", "step4", "u", "u", "1")
        self.assertEqual(code, 2)
        self.assertIn("a3", err)

    def test_verify_paper_case(self):
        code, out, _ = run(*SMALL, "--json", "verify-paper", "--case", "f16")
        self.assertEqual(code, 0)
        claims = json.loads(out)["claims"]
        self.assertEqual([c["verdict"] for c in claims], ["PASS"])
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                main([*SMALL, "verify-paper", "--case", "no-such-claim"])
        self.assertEqual(cm.exception.code, 2)

    def test_sweep(self):
        code, out, _ = run(*SMALL, "--json", "sweep", "--values", "1", "--subfield", "2")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(len(payload["rows"]), 31)
        self.assertEqual(payload["failed"], 0)


if __name__ == "__main__":
    unittest.main()
