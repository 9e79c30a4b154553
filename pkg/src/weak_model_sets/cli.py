"""
Command-line interface.

Every subcommand builds the JobSettings of one job from its flags, runs the
job and prints the artifact (or, when --output is given, the job message).
Exit codes follow the job status: 0 ok, 1 failed verification, 2 rejected
input, 3 I/O failure. A reader closing stdout early ends the run with 0.

Examples:
  weak-model-sets member --spec visible --point 3,4
  weak-model-sets diffract --spec visible --window 0,0,2,2 --threshold 1e-6
  weak-model-sets entropy --spec kfree:2,1
  weak-model-sets nf-zeta --s 2,3
"""

import argparse
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple, Type

from pydantic import ValidationError

from weak_model_sets import __version__
from weak_model_sets.core import GenericJob
from weak_model_sets.core_models import BaseJobSettings
from weak_model_sets.correlation.jobs import AutocorrJob
from weak_model_sets.correlation.models import AutocorrJobSettings
from weak_model_sets.diffraction.jobs import DiffractJob
from weak_model_sets.diffraction.models import (
    DiffractJobSettings,
    FigureJobSettings,
)
from weak_model_sets.ergodics.jobs import ErgoCheckJob
from weak_model_sets.ergodics.models import ErgoCheckJobSettings
from weak_model_sets.numfield.jobs import (
    NfDiffractJob,
    NfGenerateJob,
    NfZetaJob,
)
from weak_model_sets.numfield.models import (
    NfDiffractJobSettings,
    NfGenerateJobSettings,
    NfZetaJobSettings,
)
from weak_model_sets.patches.jobs import CensusJob, EntropyJob, FrequencyJob
from weak_model_sets.patches.models import (
    CensusJobSettings,
    EntropyJobSettings,
    FrequencyJobSettings,
)
from weak_model_sets.pointsets.jobs import (
    AdmissibleJob,
    GenerateJob,
    HoleJob,
    MemberJob,
)
from weak_model_sets.pointsets.models import (
    AdmissibleJobSettings,
    GenerateJobSettings,
    HoleJobSettings,
    MemberJobSettings,
)

logger = logging.getLogger(__name__)

COMMANDS: Dict[str, Tuple[Type[BaseJobSettings], Type[GenericJob]]] = {
    "gen": (GenerateJobSettings, GenerateJob),
    "member": (MemberJobSettings, MemberJob),
    "admissible": (AdmissibleJobSettings, AdmissibleJob),
    "hole": (HoleJobSettings, HoleJob),
    "autocorr": (AutocorrJobSettings, AutocorrJob),
    "diffract": (DiffractJobSettings, DiffractJob),
    "figure": (FigureJobSettings, DiffractJob),
    "freq": (FrequencyJobSettings, FrequencyJob),
    "census": (CensusJobSettings, CensusJob),
    "entropy": (EntropyJobSettings, EntropyJob),
    "ergocheck": (ErgoCheckJobSettings, ErgoCheckJob),
    "nf-gen": (NfGenerateJobSettings, NfGenerateJob),
    "nf-zeta": (NfZetaJobSettings, NfZetaJob),
    "nf-diffract": (NfDiffractJobSettings, NfDiffractJob),
}

EXIT_CODES = {200: 0, 406: 1, 400: 2, 500: 3}

# Flags that configure the process rather than a job.
_PROCESS_FLAGS = ("command", "verbose", "debug")


def _ints(text: str) -> Tuple[int, ...]:
    """'3,4' -> (3, 4)."""
    try:
        return tuple(int(c) for c in text.split(",") if c.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"Not a list of integers: {text}")


def _floats(text: str) -> List[float]:
    """'100,300' -> [100.0, 300.0]."""
    try:
        return [float(c) for c in text.split(",") if c.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Not a list of numbers: {text}")


def _points(text: str) -> List[Tuple[int, ...]]:
    """'0,0;1,0' -> [(0, 0), (1, 0)]."""
    return [_ints(item) for item in text.split(";") if item.strip()]


class WindowAction(argparse.Action):
    """Split 'x0,y0,x1,y1' into the lower and upper settings."""

    def __call__(self, parser, namespace, values, option_string=None):
        """Store both halves."""
        items = [c.strip() for c in values.split(",") if c.strip()]
        if not items or len(items) % 2:
            parser.error(f"{option_string} needs lower then upper corner")
        half = len(items) // 2
        namespace.lower = tuple(items[:half])
        namespace.upper = tuple(items[half:])


def _common_parser() -> argparse.ArgumentParser:
    """Options shared by every subcommand."""
    common = argparse.ArgumentParser(
        add_help=False, argument_default=argparse.SUPPRESS
    )
    common.add_argument(
        "--spec", help="visible, squarefree, kfree:n,k or bfree:n:b1,b2"
    )
    common.add_argument("--rel-err", dest="rel_err", type=float)
    common.add_argument("--window-cap", dest="window_cap", type=int)
    common.add_argument(
        "--ie-cap", dest="inclusion_exclusion_cap", type=int
    )
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("--cache-dir", dest="cache_dir")
    common.add_argument("-o", "--output", dest="output_path")
    common.add_argument(
        "--config",
        dest="user_settings_config_file",
        help="Versioned JSON settings file",
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", help="INFO logging"
    )
    common.add_argument("--debug", action="store_true", help="DEBUG logging")
    return common


def _figure_flags(parser: argparse.ArgumentParser) -> None:
    """Window, threshold, format and style of a diffraction listing."""
    parser.add_argument("--window", action=WindowAction, help="x0,y0,x1,y1")
    parser.add_argument("--threshold", type=float)
    parser.add_argument(
        "--format", dest="output_format", choices=["csv", "svg"]
    )
    parser.add_argument(
        "--style", choices=["area_proportional", "quartic_rescale"]
    )


def create_parser() -> argparse.ArgumentParser:
    """
    Create the argument parser with one subcommand per job.

    Returns
    -------
    argparse.ArgumentParser

    """
    parser = argparse.ArgumentParser(
        prog="weak-model-sets",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    common = _common_parser()
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        """Subcommand with the shared options."""
        return commands.add_parser(
            name,
            parents=[common],
            help=help_text,
            argument_default=argparse.SUPPRESS,
        )

    gen = add("gen", "write the points of a ball or box")
    gen.add_argument("--radius", type=float)
    gen.add_argument("--window", action=WindowAction, help="box corners")
    gen.add_argument("--format", dest="output_format", choices=["csv", "rle"])

    member = add("member", "test one lattice point")
    member.add_argument("--point", type=_ints, required=True)

    admissible = add("admissible", "test a finite set for admissibility")
    admissible.add_argument("--points", type=_points)
    admissible.add_argument("--input", dest="input_path")

    hole = add("hole", "construct and verify a lattice of holes")
    hole.add_argument("--radius", type=float, required=True)
    hole.add_argument("--translates", type=int)

    autocorr = add("autocorr", "tabulate autocorrelation coefficients")
    autocorr.add_argument("--shifts", type=_points, required=True)
    autocorr.add_argument("--radius", type=float)
    autocorr.add_argument(
        "--closed-form", dest="closed_form", action="store_true"
    )

    _figure_flags(add("diffract", "list the Bragg peaks of a window"))
    _figure_flags(add("figure", "draw the Bragg peaks of a window"))

    freq = add("freq", "frequency of one patch")
    freq.add_argument("--radius", type=float, required=True)
    freq.add_argument("--points", type=_points)
    freq.add_argument(
        "--empirical-radius", dest="empirical_radius", type=float
    )

    census = add("census", "count the patches occurring in a ball")
    census.add_argument("--radius", type=float, required=True)
    census.add_argument(
        "--window-radius", dest="window_radius", type=float, required=True
    )
    census.add_argument(
        "--closed-form", dest="closed_form", action="store_true"
    )

    entropy = add("entropy", "patch counting entropy")
    entropy.add_argument("--log2", action="store_true")
    entropy.add_argument("--precision", type=int)

    ergocheck = add("ergocheck", "residue identities and torus round trip")
    ergocheck.add_argument("--trials", type=int)
    ergocheck.add_argument("--moduli", type=_ints)
    ergocheck.add_argument("--radii", dest="cesaro_radii", type=_floats)
    ergocheck.add_argument("--bound", dest="cesaro_bound", type=float)
    ergocheck.add_argument(
        "--torus-prime-bound", dest="torus_prime_bound", type=int
    )
    ergocheck.add_argument("--torus-trials", dest="torus_trials", type=int)
    ergocheck.add_argument("--translations", type=int)

    nf_gen = add("nf-gen", "embedded k-free integers of Z[sqrt 2]")
    nf_gen.add_argument("--power", type=int)
    nf_gen.add_argument("--radius", type=float)

    nf_zeta = add("nf-zeta", "Dedekind zeta of Q(sqrt 2)")
    nf_zeta.add_argument("--s", dest="points", type=_floats)

    nf_diffract = add("nf-diffract", "Bragg peaks of the embedded set")
    nf_diffract.add_argument("--power", type=int)
    _figure_flags(nf_diffract)
    return parser


def build_settings(args: argparse.Namespace) -> BaseJobSettings:
    """
    JobSettings of the chosen command from the parsed flags.
    Parameters
    ----------
    args : argparse.Namespace

    Returns
    -------
    BaseJobSettings

    """
    settings_class, _ = COMMANDS[args.command]
    fields = {
        key: value
        for key, value in vars(args).items()
        if key not in _PROCESS_FLAGS
    }
    return settings_class(**fields)


def _configure_logging(args: argparse.Namespace) -> None:
    """WARNING by default, INFO with --verbose, DEBUG with --debug."""
    if getattr(args, "debug", False):
        level = logging.DEBUG
    elif getattr(args, "verbose", False):
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s")


def _silence_stdout() -> None:
    """Point the stdout descriptor at devnull so the flush at exit cannot
    raise again."""
    try:
        fileno = sys.stdout.fileno()
    except (AttributeError, OSError):
        return
    devnull = os.open(os.devnull, os.O_WRONLY)
    os.dup2(devnull, fileno)
    os.close(devnull)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.
    Parameters
    ----------
    argv : Optional[Sequence[str]]
      Arguments without the program name; sys.argv[1:] when None.

    Returns
    -------
    int
      The exit code.

    """
    parser = create_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)
    try:
        settings = build_settings(args)
    except (ValidationError, ValueError, OSError) as e:
        logger.debug(f"Settings rejected: {e}")
        sys.stderr.write(f"Invalid settings for {args.command}: {e}\n")
        return EXIT_CODES[400]
    _, job_class = COMMANDS[args.command]
    response = job_class(job_settings=settings).run()
    if response.status_code != 200:
        sys.stderr.write(f"{response.message}\n")
    try:
        if response.data is not None:
            sys.stdout.write(response.data)
        elif response.status_code == 200 and response.message:
            sys.stdout.write(f"{response.message}\n")
        sys.stdout.flush()
    except BrokenPipeError:
        logger.debug("Reader closed stdout before the output was written")
        _silence_stdout()
        return EXIT_CODES[200]
    return EXIT_CODES.get(response.status_code, EXIT_CODES[500])


if __name__ == "__main__":
    sys.exit(main())
