import io
import json
import unittest
from unittest.mock import patch

from qinv import codec
from qinv.cli import run
from qinv.invariant import standard_embedding

from .fixtures.fixtures import fixture_path


def invoke(*argv):
    with patch("sys.stdout", new_callable=io.StringIO) as out, patch(
        "sys.stderr", new_callable=io.StringIO
    ) as err:
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCli(unittest.TestCase):
    def test_q_identical(self):
        """
        CLI: Test Q of a file with itself
        """
        path = fixture_path("torus_standard.json")
        self.assertEqual(invoke("q", "--left", path, "--right", path), (0, "0\n", ""))

    def test_q_sphere(self):
        """
        CLI: Test Q of spheres with opposite orientations
        """
        code, out, _ = invoke(
            "q",
            "--left",
            fixture_path("sphere_plus.json"),
            "--right",
            fixture_path("sphere_minus.json"),
        )
        self.assertEqual((code, out), (0, "1\n"))

    def test_q_json_output(self):
        """
        CLI: Test JSON wrapping of a digit
        """
        code, out, _ = invoke(
            "--output",
            "json",
            "q",
            "--left",
            fixture_path("torus_standard.json"),
            "--right",
            fixture_path("torus_swapped.json"),
        )
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {"value": 1})

    def test_q_not_regularly_homotopic(self):
        """
        CLI: Test mismatched forms exit 3 with a reason
        """
        code, out, err = invoke(
            "q",
            "--left",
            fixture_path("torus_standard.json"),
            "--right",
            fixture_path("torus_diagonal.json"),
        )
        self.assertEqual(code, 3)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith("not-regularly-homotopic:"))

    def test_invalid_input(self):
        """
        CLI: Test malformed and invalid inputs exit 2
        """
        for name, reason in (
            ("broken.json", "parse-error"),
            ("torus_overlapping.json", "invalid-embedding"),
            ("missing.json", "parse-error"),
        ):
            code, _, err = invoke("check", "--embedding", fixture_path(name))
            self.assertEqual(code, 2, name)
            self.assertTrue(err.startswith(reason + ":"), err)

    def test_usage_error(self):
        """
        CLI: Test argument errors exit 2
        """
        code, _, err = invoke("q", "--left", fixture_path("torus_standard.json"))
        self.assertEqual(code, 2)
        self.assertIn("--right", err)

    def test_q_system(self):
        """
        CLI: Test Q of systems and component count errors
        """
        left = fixture_path("system_left.json")
        right = fixture_path("system_right.json")
        code, out, _ = invoke("q-system", "--left", left, "--right", right)
        self.assertEqual((code, out), (0, "0\n"))
        short = fixture_path("system_short.json")
        code, _, err = invoke("q-system", "--left", left, "--right", short)
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith("component-count-mismatch:"))

    def test_psi(self):
        """
        CLI: Test psi of the swap and of a non orthogonal map
        """
        form = fixture_path("form_genus1.json")
        code, out, _ = invoke("psi", "--form", form, "--map", fixture_path("swap.json"))
        self.assertEqual((code, out), (0, "1\n"))
        shear = fixture_path("shear.json")
        code, _, err = invoke("psi", "--form", form, "--map", shear)
        self.assertEqual(code, 3)
        self.assertTrue(err.startswith("not-orthogonal:"))

    def test_psi_hat(self):
        """
        CLI: Test psi hat with the recipe cross-check
        """
        code, out, _ = invoke(
            "psi-hat",
            "--left",
            fixture_path("tsd_standard.json"),
            "--right",
            fixture_path("tsd_swapped.json"),
            "--recipe",
        )
        self.assertEqual((code, out), (0, "1\nrecipe: 1\n"))

    def test_psi_hat_json(self):
        """
        CLI: Test JSON output of psi hat is only the value, recipe or not
        """
        left = fixture_path("tsd_standard.json")
        right = fixture_path("tsd_swapped.json")
        for extra in ((), ("--recipe",)):
            code, out, _ = invoke(
                "--output", "json", "psi-hat", "--left", left, "--right", right, *extra
            )
            self.assertEqual(code, 0)
            self.assertEqual(json.loads(out), {"value": 1})

    def test_q_diffeo_and_pullback(self):
        """
        CLI: Test diffeomorphism commands on the swap
        """
        e = fixture_path("torus_standard.json")
        h = fixture_path("diffeo_swap.json")
        code, out, _ = invoke("q-diffeo", "--embedding", e, "--map", h)
        self.assertEqual((code, out), (0, "1\n"))
        code, out, _ = invoke("pullback", "--embedding", e, "--map", h)
        self.assertEqual(code, 0)
        self.assertEqual(
            json.loads(out),
            {"genus": 1, "A0": ["01"], "A1": ["10"], "orientation": "-"},
        )

    def test_complete(self):
        """
        CLI: Test completion with and without a subspace
        """
        form = fixture_path("form_genus2.json")
        lagrangian = fixture_path("lagrangian_genus2.json")
        code, out, _ = invoke("complete", "--form", form, "--subspace", lagrangian)
        self.assertEqual(code, 0)
        t = codec.tsd_from_json(json.loads(out))
        self.assertEqual(t.a.to_strings(), ["1001", "0110"])
        code, out, _ = invoke("complete", "--form", form)
        self.assertEqual(code, 0)
        anisotropic = fixture_path("form_anisotropic.json")
        code, _, err = invoke("complete", "--form", anisotropic)
        self.assertEqual(code, 3)
        self.assertTrue(err.startswith("no-tsd:"))

    def test_standard(self):
        """
        CLI: Test standard embedding output re-parses and is deterministic
        """
        code, out, _ = invoke("standard", "--genus", "2")
        self.assertEqual(code, 0)
        parsed = codec.embedding_from_json(json.loads(out))
        self.assertEqual(parsed, standard_embedding(2))
        self.assertEqual(invoke("standard", "--genus", "2")[1], out)

    def test_check(self):
        """
        CLI: Test validation verdict includes the induced form
        """
        diagonal = fixture_path("torus_diagonal.json")
        code, out, _ = invoke("check", "--embedding", diagonal)
        self.assertEqual(code, 0)
        document = json.loads(out)
        self.assertTrue(document["valid"])
        self.assertEqual(document["form"]["diag"], "01")

    def test_oracle(self):
        """
        CLI: Test the oracle report in dimension 2
        """
        code, out, _ = invoke("oracle", "--dim", "2")
        self.assertEqual(code, 0)
        report = json.loads(out)
        self.assertEqual(report["group_order"], 2)
        self.assertEqual(report["class_count"], 2)
        self.assertEqual(report["violations"], [])
        anisotropic = fixture_path("form_anisotropic.json")
        code, out, _ = invoke("oracle", "--form", anisotropic)
        self.assertEqual(json.loads(out)["flags"], ["no-tsds"])
