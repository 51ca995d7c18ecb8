"""CLI entry point: argparse and main()."""

import argparse
import sys

from dowling_nested.commands import COMMAND_REGISTRY, OBJECTS, dispatch
from dowling_nested.errors import DowlingError, ResourceCapError, UsageError
from dowling_nested.state import SUITES, RunConfig, config, init_config, load_run_config
from dowling_nested.ui import dbg, dim, error


HELP_EPILOG = """\
Commands:
  build      Build an object and write it as JSON or DOT
  homology   Reduced integer homology of a complex (posets use their order complex)
  verify     Run verification suites and write a JSON verdict

Objects (--object):
  lattice, q0, order-complex, q0-order-complex, tree-complex,
  dowling-tree-complex, building-set, nested-complex

Suites (--suite, comma separated or "all"):
  lattice, building, trees, subdivision, filtration, identities

Exit codes:
  0 all checks pass   1 a check failed   2 usage error   3 size cap exceeded

Examples:
  dowling-nested build --n 3 --group cyclic:2 --object lattice
  dowling-nested build --n 3 --group cyclic:2 --object dowling-tree-complex --format dot
  dowling-nested homology --n 3 --group cyclic:2 --object order-complex
  dowling-nested verify --n 3 --group cyclic:2 --suite all
  dowling-nested verify --suite identities --nmax 7 --kmax 5
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dowling-nested",
        description="dowling-nested: Dowling lattices, nested set complexes and tree complexes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=HELP_EPILOG,
    )
    parser.add_argument("command", choices=sorted(COMMAND_REGISTRY), help="What to do")
    parser.add_argument("--n", type=int, default=None, help="Rank n (default: 3)")
    parser.add_argument(
        "--group", default=None, help="cyclic:M, dihedral:M or table:FILE (default: cyclic:2)"
    )
    parser.add_argument("--object", default=None, choices=OBJECTS, help="Object for build/homology")
    parser.add_argument("--base", default=None, help="Base poset for building sets: lattice, q0, partition")
    parser.add_argument("--building", default=None, help="Building set: minimal or maximal")
    parser.add_argument("--suite", default=None, help="Suites to verify (default: all)")
    parser.add_argument("--cap", type=int, default=None, help="Maximum number of poset elements")
    parser.add_argument("--out", default=None, help="Output file (default: stdout)")
    parser.add_argument("--format", default=None, choices=("json", "dot"), help="Output format")
    parser.add_argument("--nmax", type=int, default=None, help="Largest n for the identities suite")
    parser.add_argument("--kmax", type=int, default=None, help="Largest |G| for the identities suite")
    parser.add_argument("--config", default="", help="JSON run configuration; flags override it")
    parser.add_argument("--debug", action="store_true", help="Debug mode")
    return parser


def _parse_suites(text: str) -> list[str]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if names == ["all"]:
        return list(SUITES)
    return names


def make_run_config(args: argparse.Namespace) -> RunConfig:
    run = load_run_config(args.config) if args.config else RunConfig()
    run.command = args.command
    for key in ("n", "group", "object", "base", "building", "cap", "out", "format", "nmax", "kmax"):
        value = getattr(args, key)
        if value is not None:
            setattr(run, key, value)
            if key == "group":
                run.group_table = None
    if args.suite is not None:
        run.suites = _parse_suites(args.suite)
    run.validate()
    return run


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    init_config()
    if args.debug:
        config.debug = True

    try:
        run = make_run_config(args)
        if run.cap:
            config.size_cap = run.cap
        dbg(f"run config: {run.to_json()}")
        code = dispatch(run)
    except UsageError as e:
        error(str(e))
        dim("See dowling-nested --help")
        code = 2
    except ResourceCapError as e:
        error(str(e))
        dim("Raise the limit with --cap")
        code = 3
    except DowlingError as e:
        error(str(e))
        code = 1
    except KeyboardInterrupt:
        code = 130
    return code


if __name__ == "__main__":
    sys.exit(main())
