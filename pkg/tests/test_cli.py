"""Tests the command-line interface"""

import io
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from weak_model_sets.cli import (
    COMMANDS,
    EXIT_CODES,
    build_settings,
    create_parser,
    main,
)
from weak_model_sets.pointsets.models import MemberJobSettings
from weak_model_sets.pointsets.specs import parse_spec


def run_cli(argv):
    """Exit code, stdout and stderr of one invocation."""
    with patch("sys.stdout", new_callable=io.StringIO) as out, patch(
        "sys.stderr", new_callable=io.StringIO
    ) as err:
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class ClosedPipe(io.StringIO):
    """Stdout whose reader has gone away"""

    def write(self, text):
        """Fail like a pipe with no reader."""
        raise BrokenPipeError(32, "Broken pipe")


class TestParser(unittest.TestCase):
    """Tests create_parser and build_settings"""

    def test_every_command(self):
        """Tests each job has a subcommand"""
        required = {
            "member": ["--point", "1,2"],
            "hole": ["--radius", "3"],
            "autocorr": ["--shifts", "1,0"],
            "freq": ["--radius", "1"],
            "census": ["--radius", "1", "--window-radius", "10"],
        }
        parser = create_parser()
        for name in COMMANDS:
            args = parser.parse_args([name] + required.get(name, []))
            self.assertEqual(name, args.command)
        self.assertEqual({200: 0, 406: 1, 400: 2, 500: 3}, EXIT_CODES)

    def test_member_settings(self):
        """Tests flags become settings and unset flags keep defaults"""
        args = create_parser().parse_args(
            ["member", "--point", "3,4", "--seed", "5", "-v"]
        )
        settings = build_settings(args)
        self.assertIsInstance(settings, MemberJobSettings)
        self.assertEqual((3, 4), settings.point)
        self.assertEqual(5, settings.seed)
        self.assertEqual(1e-8, settings.rel_err)

    def test_window(self):
        """Tests the window flag is split into box corners"""
        args = create_parser().parse_args(
            ["gen", "--window", "0,0,2,3", "--spec", "kfree:2,1"]
        )
        settings = build_settings(args)
        self.assertEqual(((0, 0), (2, 3)), (settings.lower, settings.upper))
        self.assertEqual(parse_spec("kfree:2,1"), settings.spec)


class TestMain(unittest.TestCase):
    """Tests main"""

    def test_member(self):
        """Tests membership answers and exit code 0"""
        code, out, err = run_cli(["member", "--point", "3,4"])
        self.assertEqual((0, "true\n", ""), (code, out, err))
        code, out, _ = run_cli(["member", "--point", "2,4"])
        self.assertEqual((0, "false\n"), (code, out))
        code, out, _ = run_cli(
            ["member", "--spec", "squarefree", "--point", "12"]
        )
        self.assertEqual((0, "false\n"), (code, out))

    def test_invalid_settings(self):
        """Tests a bad spec exits with 2"""
        code, out, err = run_cli(["member", "--spec", "cubes", "--point", "1"])
        self.assertEqual((2, ""), (code, out))
        self.assertIn("Invalid settings for member", err)

    def test_rejected_job(self):
        """Tests a job refused for its window cap exits with 2"""
        code, _, err = run_cli(
            ["gen", "--radius", "10", "--window-cap", "10"]
        )
        self.assertEqual(2, code)
        self.assertIn("441", err)

    def test_output_file(self):
        """Tests --output writes the artifact and prints the message"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "points.csv"
            code, out, _ = run_cli(["gen", "--radius", "3", "-o", str(path)])
            self.assertTrue(path.is_file())
        self.assertEqual(0, code)
        self.assertTrue(out.startswith(f"Wrote {path}"))

    def test_nf_zeta(self):
        """Tests the zeta table is printed"""
        code, out, _ = run_cli(["nf-zeta", "--s", "2,3"])
        self.assertEqual(0, code)
        self.assertIn("s,zeta,certified_error,method", out)

    def test_version(self):
        """Tests --version exits through argparse"""
        with patch("sys.stdout", new_callable=io.StringIO) as out:
            with self.assertRaises(SystemExit) as e:
                main(["--version"])
        self.assertEqual(0, e.exception.code)
        self.assertTrue(out.getvalue().startswith("weak-model-sets "))

    def test_closed_pipe(self):
        """Tests a reader closing stdout early ends quietly with 0"""
        with patch("sys.stdout", new_callable=ClosedPipe), patch(
            "sys.stderr", new_callable=io.StringIO
        ) as err:
            code = main(["member", "--point", "3,4"])
        self.assertEqual((0, ""), (code, err.getvalue()))

    def test_closed_pipe_descriptor(self):
        """Tests stdout is pointed at devnull after the pipe breaks"""
        read_end, write_end = os.pipe()
        os.close(read_end)
        with os.fdopen(write_end, "w") as stdout:
            with patch("sys.stdout", stdout):
                code = main(["member", "--point", "3,4"])
            stdout.write("more output\n")
        self.assertEqual(0, code)


if __name__ == "__main__":
    unittest.main()
