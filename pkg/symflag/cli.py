import argparse
import sys
import traceback

from .config import SUPPORTED_COMMANDS, VERSION
from .errors import ConfigError, FlagError, MatrixFormatError, MatrixShapeError, RepresentationError, SignPatternError
from .run_config import RunConfig
from .symflag_tool import SymflagTool
from .utils import print_verbose

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _theta(text: str) -> tuple[int, ...]:
    try:
        members = tuple(sorted({int(part) for part in text.split(",") if part.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None
    if not members:
        raise argparse.ArgumentTypeError("theta must not be empty")
    return members


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, default=2, help='Rank: the group is Sp(2n, R)')
    common.add_argument('--theta', type=_theta, default=None, help='Comma separated subset of 1..n')
    common.add_argument('--samples', type=int, default=10, help='Number of random trials')
    common.add_argument('--seed', type=int, default=0, help='Seed for every random draw')
    common.add_argument('--backend', type=str, default=None, choices=['exact', 'float'], help='Scalar backend (default: exact for verify/check, float for witness)')
    common.add_argument('--tol', type=float, default=None, help='Residual tolerance of the witness search')
    common.add_argument('--epsilon', type=float, default=None, help='Perturbation budget of the witness search')
    common.add_argument('--g', type=str, default=None, help="Horocyclic element: 'identity' or a matrix file")
    common.add_argument('--out', type=str, default=None, help='Write the JSON report here instead of stdout')
    common.add_argument('--dump-locus', type=str, default=None, help='witness sl2c: write (alpha, beta, det) samples of the first trial to this CSV file')
    common.add_argument('--verbose', action='store_true', help='Enable verbose mode')
    common.add_argument('--debug', action='store_true', help='Enable debug mode')

    parser = argparse.ArgumentParser(description="symflag CLI - Verify antipodality statements on symplectic flag manifolds and search for witnesses.")
    parser.add_argument('--version', action='version', version=f'symflag v{VERSION} CLI')
    groups = parser.add_subparsers(dest='group', required=True)

    commands: dict[str, list[str]] = {}
    for command in SUPPORTED_COMMANDS:
        group, name = command.split()
        commands.setdefault(group, []).append(name)
    for group, names in commands.items():
        group_parser = groups.add_parser(group, help=f"{group} commands")
        sub = group_parser.add_subparsers(dest='name', required=True)
        for name in names:
            sub.add_parser(name, parents=[common], help=f"{group} {name}")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    optional = {}
    if args.tol is not None:
        optional["tolerance"] = args.tol
    if args.epsilon is not None:
        optional["epsilon"] = args.epsilon
    return RunConfig(
        command=f"{args.group} {args.name}",
        n=args.n,
        theta=args.theta,
        backend=args.backend,
        samples=args.samples,
        seed=args.seed,
        g=args.g,
        out=args.out,
        dump_locus=args.dump_locus,
        verbose=args.verbose or args.debug,
        debug=args.debug,
        **optional,
    )


def run(argv=None) -> int:
    """Exit code: 0 when every check passes, 1 when one fails, 2 on a usage or input error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    config = config_from_args(args)
    print_verbose(f"symflag v{VERSION} CLI\n", config.verbose)
    if config.debug:
        print_verbose("Debug mode enabled.", True)

    try:
        tool = SymflagTool(config, verbose=config.verbose, debug=config.debug)
        report = tool.run()
    except (ConfigError, MatrixFormatError, MatrixShapeError, FlagError, OSError) as e:
        if config.debug:
            traceback.print_exc()
        print(f"symflag: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RepresentationError as e:
        if config.debug:
            traceback.print_exc()
        print(f"symflag: internal error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except SignPatternError as e:
        if config.debug:
            traceback.print_exc()
        print(f"symflag: sign pattern violated, run aborted: {e}", file=sys.stderr)
        return EXIT_FAIL

    if config.out:
        tool.save_json(config.out)
    else:
        print(tool.to_json())
    print_verbose(f"{config.command}: {'pass' if report.passed else 'fail'}", config.verbose)
    return EXIT_PASS if report.passed else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
