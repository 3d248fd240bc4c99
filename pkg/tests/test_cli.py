"""Integration tests for the evenset CLI."""

import json
import os
import shlex
import subprocess
import sys
import tempfile
import unittest

import tomli

from evenset.formats import render_dimacs
from tests.utils import cycle_graph, pendant_cycle


class BaseCLITest(unittest.TestCase):
    """Base class for CLI tests with a private config directory and scratch files."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)
        self.config_dir = os.path.join(self._tmp.name, "config")

    def write_file(self, name, text):
        path = os.path.join(self._tmp.name, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def run_command(self, command, input_data=None, extra_env=None):
        """Helper function to run a command and return the output."""
        env = {
            **os.environ,
            "PYTHONPATH": os.path.join(os.getcwd(), "."),
            "EVENSET_CONFIG_DIR": self.config_dir,
        }
        if extra_env:
            env.update(extra_env)

        result = subprocess.run(
            [sys.executable, "-m", "evenset.cli", *shlex.split(command)],
            shell=False,
            capture_output=True,
            text=True,
            input=input_data,
            env=env,
            check=False,
        )
        return result


class TestCLICommands(BaseCLITest):
    """Tests for gen, solve, oracle and decompose."""

    def test_help_message(self):
        """The --help message lists the commands."""
        result = self.run_command("--help")
        self.assertEqual(result.returncode, 0)
        self.assertIn("Usage", result.stdout)
        self.assertIn("solve", result.stdout)

    def test_gen_cycle(self):
        """gen writes a comment with the certificate and a DIMACS body."""
        result = self.run_command("gen --kind cycle --len 12")
        self.assertEqual(result.returncode, 0)
        lines = result.stdout.splitlines()
        self.assertTrue(lines[0].startswith("c C12"))
        self.assertEqual(lines[1], "p edge 12 12")
        self.assertEqual(len(lines), 14)

    def test_gen_subdivided(self):
        """The subdivided K4 has 10 vertices and 12 edges."""
        result = self.run_command("gen --kind subdivided --base complete --n 4")
        self.assertEqual(result.returncode, 0)
        self.assertIn("p edge 10 12", result.stdout)

    def test_gen_bad_params(self):
        """Generator errors exit with a failure and a message."""
        result = self.run_command("gen --kind cycle --len 7")
        self.assertEqual(result.returncode, 1)
        self.assertIn("Error", result.stderr)

    def test_gen_pipe_into_solve(self):
        """Generated instances can be piped into solve."""
        generated = self.run_command("gen --kind cycle --len 100")
        self.assertEqual(generated.returncode, 0)
        result = self.run_command("--format json solve --c 3/5", input_data=generated.stdout)
        self.assertEqual(result.returncode, 0, result.stderr)
        data = json.loads(result.stdout)
        self.assertEqual(data["weight"], 50)
        self.assertEqual(len(data["solution"]), 50)
        self.assertEqual(data["stats"]["branch"], "pipeline")
        self.assertGreaterEqual(data["stats"]["sfm_calls"], 1)

    def test_solve_table(self):
        """The default output is a table."""
        result = self.run_command("solve", input_data=render_dimacs(cycle_graph(6)))
        self.assertEqual(result.returncode, 0)
        self.assertIn("Maximum Weight Independent Set", result.stdout)
        self.assertIn("Weight", result.stdout)

    def test_solve_quiet(self):
        """--quiet suppresses the table."""
        result = self.run_command("--quiet solve", input_data=render_dimacs(cycle_graph(6)))
        self.assertEqual(result.returncode, 0)
        self.assertEqual(result.stdout, "")

    def test_solve_with_weights(self):
        """A weight file changes the optimum."""
        graph = self.write_file("p4.dimacs", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n")
        weights = self.write_file("p4.weights", "1\n3\n1\n1\n")
        result = self.run_command(f"solve --graph {graph} --weights {weights} --json")
        self.assertEqual(result.returncode, 0)
        data = json.loads(result.stdout)
        self.assertEqual(data["weight"], 4)
        self.assertEqual(data["solution"], [1, 3])

    def test_solve_matches_oracle(self):
        """solve and oracle agree on the subdivided K4."""
        generated = self.run_command("gen --kind subdivided --base complete --n 4").stdout
        solved = json.loads(self.run_command("--format json solve", input_data=generated).stdout)
        oracle = json.loads(self.run_command("--format json oracle", input_data=generated).stdout)
        self.assertEqual(solved["weight"], oracle["weight"])
        self.assertEqual(oracle["stats"]["brute_calls"], 1)

    def test_oracle_cap(self):
        """The oracle refuses graphs above its cap."""
        result = self.run_command("oracle", input_data=render_dimacs(cycle_graph(40)))
        self.assertEqual(result.returncode, 1)
        self.assertIn("cap is 30", result.stderr)

    def test_parse_error_exit_code(self):
        """Malformed graphs exit with 65."""
        result = self.run_command("solve", input_data="p edge 2 1\ne 1 3\n")
        self.assertEqual(result.returncode, 65)
        self.assertIn("line 2", result.stderr)

    def test_negative_weight_exit_code(self):
        """Negative weights exit with 65."""
        weights = self.write_file("bad.weights", "1\n-1\n")
        result = self.run_command(f"solve --weights {weights}", input_data="p edge 2 1\ne 1 2\n")
        self.assertEqual(result.returncode, 65)

    def test_bad_c_exit_code(self):
        """Out-of-range and unparsable c values are usage errors."""
        for c in ("1/3", "1/2", "abc"):
            with self.subTest(c=c):
                result = self.run_command(f"solve --c {c}", input_data=render_dimacs(cycle_graph(6)))
                self.assertEqual(result.returncode, 64)

    def test_unknown_format(self):
        """Unknown output formats are usage errors."""
        result = self.run_command("--format xml solve", input_data=render_dimacs(cycle_graph(6)))
        self.assertEqual(result.returncode, 64)

    def test_missing_file(self):
        """Unreadable files are reported."""
        result = self.run_command("solve --graph /nonexistent/graph.dimacs")
        self.assertEqual(result.returncode, 1)
        self.assertIn("Cannot read", result.stderr)

    def test_check_precondition_exit_code(self):
        """--check on an odd hole exits with 2."""
        result = self.run_command("solve --check", input_data=render_dimacs(cycle_graph(5)))
        self.assertEqual(result.returncode, 2)
        self.assertIn("OddHole", result.stderr)

    def test_evidence_exit_code(self):
        """An odd cycle too long for brute force exits with 3."""
        result = self.run_command("solve", input_data=render_dimacs(cycle_graph(41)))
        self.assertEqual(result.returncode, 3)

    def test_decompose_and_verify(self):
        """A decomposed separator verifies against its graph."""
        graph = self.write_file("pc.dimacs", render_dimacs(pendant_cycle(40)))
        dumped = self.run_command(f"decompose --graph {graph}")
        self.assertEqual(dumped.returncode, 0, dumped.stderr)
        doc = json.loads(dumped.stdout)
        self.assertEqual(doc["branch"], 2)
        self.assertEqual(doc["k"], 2)
        sep = self.write_file("pc.json", dumped.stdout)
        result = self.run_command(f"verify separator --graph {graph} --sep {sep} --full-evenness")
        self.assertEqual(result.returncode, 0, result.stdout)
        self.assertIn("4 checks passed", result.stdout)

    def test_decompose_ball_branch(self):
        """Short cycles are separated by a ball."""
        result = self.run_command("decompose", input_data=render_dimacs(cycle_graph(20)))
        self.assertEqual(json.loads(result.stdout)["branch"], 1)

    def test_decompose_disconnected(self):
        """The separator needs a connected graph."""
        result = self.run_command("decompose", input_data="p edge 4 2\ne 1 2\ne 3 4\n")
        self.assertEqual(result.returncode, 1)
        self.assertIn("connected", result.stderr)


class TestCLIVerify(BaseCLITest):
    """Tests for the verify sub-commands."""

    def test_verify_bad_separator(self):
        """A separator with an odd pair fails verification."""
        graph = self.write_file("c6.dimacs", render_dimacs(cycle_graph(6)))
        components = [{"vertices": [1, 2], "neighborhood": [0, 3]}, {"vertices": [4, 5], "neighborhood": [0, 3]}]
        doc = {"branch": 2, "k": 1, "c": "3/5", "d": 2, "layers": [[0, 3]], "components": components}
        sep = self.write_file("c6.json", json.dumps(doc))
        result = self.run_command(f"--format json verify separator --graph {graph} --sep {sep} --full-evenness")
        self.assertEqual(result.returncode, 1)
        report = json.loads(result.stdout)
        self.assertFalse(report["ok"])
        self.assertEqual([v["kind"] for v in report["violations"]], ["odd-pair"])

    def test_verify_dump_without_components(self):
        """A dump that leaves out the components of G minus L fails verification."""
        graph = self.write_file("c6.dimacs", render_dimacs(cycle_graph(6)))
        doc = {"branch": 2, "k": 1, "c": "3/5", "d": 2, "layers": [[0, 3]], "components": []}
        sep = self.write_file("c6.json", json.dumps(doc))
        result = self.run_command(f"--format json verify separator --graph {graph} --sep {sep}")
        self.assertEqual(result.returncode, 1)
        self.assertEqual([v["kind"] for v in json.loads(result.stdout)["violations"]], ["components"])

    def test_verify_malformed_dump(self):
        """A malformed dump is a data error."""
        graph = self.write_file("c6.dimacs", render_dimacs(cycle_graph(6)))
        sep = self.write_file("bad.json", "{")
        result = self.run_command(f"verify separator --graph {graph} --sep {sep}")
        self.assertEqual(result.returncode, 65)

    def test_verify_class_member(self):
        """An even cycle is in the class."""
        result = self.run_command("verify class", input_data=render_dimacs(cycle_graph(8)))
        self.assertEqual(result.returncode, 0)
        self.assertIn("Class Membership", result.stdout)

    def test_verify_class_json(self):
        """JSON output carries every check and the witness."""
        result = self.run_command("--format json verify class", input_data=render_dimacs(cycle_graph(4)))
        self.assertEqual(result.returncode, 1)
        data = json.loads(result.stdout)
        self.assertFalse(data["c4_free"])
        self.assertEqual(data["c4"]["vertices"], [0, 1, 2, 3])


class TestCLIConfig(BaseCLITest):
    """Tests for the config sub-commands."""

    def test_config_path(self):
        """config path prints the file inside EVENSET_CONFIG_DIR."""
        result = self.run_command("config path")
        self.assertEqual(result.returncode, 0)
        self.assertIn("config.toml", result.stdout)

    def test_config_set_get_unset(self):
        """A value survives on disk until it is unset."""
        result = self.run_command("config set c 2/3")
        self.assertEqual(result.returncode, 0)
        with open(os.path.join(self.config_dir, "config.toml"), "rb") as f:
            self.assertEqual(tomli.load(f)["c"], "2/3")
        self.assertEqual(self.run_command("config get c").stdout.strip(), "2/3")
        self.assertEqual(self.run_command("config unset c").returncode, 0)
        self.assertEqual(self.run_command("config get c").stdout.strip(), "3/5")

    def test_config_set_int(self):
        """Integer keys are stored as integers."""
        self.assertEqual(self.run_command("config set base_threshold 12").returncode, 0)
        data = json.loads(self.run_command("--format json config get base_threshold").stdout)
        self.assertEqual(data, {"base_threshold": 12})

    def test_config_set_invalid(self):
        """Unknown keys and ill-typed values are refused."""
        for command in ("config set nope 1", "config set c abc", "config set brute_cap many"):
            with self.subTest(command=command):
                result = self.run_command(command)
                self.assertEqual(result.returncode, 1)
                self.assertIn("Error", result.stderr)

    def test_config_list(self):
        """config list shows every key."""
        result = self.run_command("--format json config list")
        self.assertEqual(result.returncode, 0)
        self.assertIn("mnp_max_iterations", json.loads(result.stdout))

    def test_config_c_used_by_solve(self):
        """A stored c feeds the solver."""
        self.run_command("config set c 2/3")
        result = self.run_command("decompose", input_data=render_dimacs(cycle_graph(40)))
        self.assertEqual(json.loads(result.stdout)["c"], "2/3")

    def test_config_format_default(self):
        """A stored format applies to every command."""
        self.run_command("config set format json")
        result = self.run_command("solve", input_data=render_dimacs(cycle_graph(6)))
        self.assertEqual(json.loads(result.stdout)["weight"], 3)


if __name__ == "__main__":
    unittest.main()
