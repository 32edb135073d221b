"""End-to-end checks of the platfloer command line: exit codes, JSON schemas, determinism."""
import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BINARY = os.environ.get("PLATFLOER_BIN", "build/platfloer")
SCHEMAS = Path(os.environ.get("PLATFLOER_SCHEMAS", "schema/v1"))


def run(*args, env=None):
    return subprocess.run([BINARY, *args], capture_output=True, text=True, env=env, timeout=300)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


class Formats(unittest.TestCase):
    def validated(self, sub, name, *extra):
        out = run(sub, "-n", "4", "s2^3", "--format", "json", *extra)
        self.assertEqual(out.returncode, 0, out.stderr)
        doc = json.loads(out.stdout)
        jsonschema.validate(doc, schema(name))
        return doc

    def test_generators(self):
        doc = self.validated("generators", "generators")
        self.assertEqual(len(doc["generators"]), 18)
        self.assertEqual(len(doc["z"]), 12)

    def test_gradings(self):
        doc = self.validated("gradings", "gradings")
        self.assertEqual(doc["s_R"], "1/2")
        self.assertEqual(doc["generators"]["x2x3"]["R"], "7/2")
        self.assertEqual(doc["z"]["x2"]["Q*"], 4)
        self.assertEqual(doc["z"]["x3"]["P*"], 3)

    def test_homology(self):
        doc = self.validated("homology", "homology")
        self.assertEqual(doc["homology"]["total"], 6)
        self.assertEqual(doc["homology"]["by_R"], [{"level": "1/2", "dim": 3}, {"level": "3/2", "dim": 3}])
        self.assertTrue(doc["degenerate"])
        self.assertEqual(sorted(len(c["members"]) for c in doc["classes"]), [6, 6, 6])

    def test_homology_one_class(self):
        doc = self.validated("homology", "homology", "--class", "2")
        self.assertEqual([c["id"] for c in doc["classes"]], [2])
        self.assertEqual(sorted(doc["classes"][0]["differential"]["x2x3"]), ["t'u", "tu'"])

    def test_check_move(self):
        doc = self.validated("check-move", "check-move", "--move", "A")
        self.assertTrue(doc["fingerprints"]["compared"])
        self.assertTrue(doc["fingerprints"]["equal"])
        mirror = self.validated("check-move", "check-move", "--move", "mirror")
        self.assertIn("R negated", mirror["deltas"])

    def test_csv_and_table(self):
        csv = run("gradings", "-n", "4", "s2^3", "--format", "csv")
        self.assertEqual(csv.returncode, 0)
        self.assertEqual(csv.stdout.splitlines()[0], "kind,name,Q*,P*,Q,P,T,R~,R")
        self.assertEqual(sum(1 for l in csv.stdout.splitlines() if l.startswith("generator,")), 18)
        table = run("homology", "-n", "4", "s2^3")
        self.assertIn("R=1/2: 3 R=3/2: 3 (total 6)", table.stdout)

    def test_deterministic(self):
        for sub in ("generators", "gradings", "homology"):
            for fmt in ("table", "json", "csv"):
                a = run(sub, "-n", "6", "s2 s4^-1 s3", "--format", fmt)
                b = run(sub, "-n", "6", "s2 s4^-1 s3", "--format", fmt)
                self.assertEqual(a.returncode, b.returncode)
                self.assertEqual(a.stdout, b.stdout, f"{sub} {fmt}")

    def test_svg_dump(self):
        with tempfile.TemporaryDirectory() as d:
            path = Path(d) / "fork.svg"
            out = run("generators", "-n", "4", "s2^3", "--dump-svg", str(path))
            self.assertEqual(out.returncode, 0)
            self.assertTrue(path.read_text().lstrip().startswith("<svg"))


class ExitCodes(unittest.TestCase):
    def test_parse_errors(self):
        self.assertEqual(run("gradings", "-n", "4", "s1 s").returncode, 2)
        self.assertEqual(run("gradings", "-n", "3", "s1").returncode, 2)
        self.assertEqual(run("gradings", "-n", "4", "s5").returncode, 2)
        self.assertEqual(run("check-move", "-n", "4", "s2^3", "--move", "Q").returncode, 2)
        self.assertEqual(run("bogus").returncode, 2)
        self.assertEqual(run("gradings", "-n", "4", "s2", "--format", "xml").returncode, 2)

    def test_not_a_knot(self):
        out = run("gradings", "-n", "4", "s1")
        self.assertEqual(out.returncode, 3)
        self.assertIn("components", out.stderr)

    def test_not_nice(self):
        out = run("homology", "-n", "6", "s4^-1 s2", "--format", "json")
        self.assertEqual(out.returncode, 4)
        self.assertIn("6 corners", out.stderr)
        jsonschema.validate(json.loads(out.stdout), schema("diagram"))

    def test_iteration_cap(self):
        env = dict(os.environ, PLATFLOER_ITER_CAP="1")
        out = run("gradings", "-n", "4", "s2^3", env=env)
        self.assertEqual(out.returncode, 5, out.stderr)
        self.assertIn("iteration cap", out.stderr)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0]], verbosity=1)
