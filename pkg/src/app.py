import argparse
import logging
import sys

from commands import COMMAND_MODULES, EXIT_USAGE, run_guarded
from config import *


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    """
    argparse parser that reports usage errors by exit code instead of exiting.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_arg_parser():
    """
    Builds the command-line parser with the global flags and every subcommand.
    """
    parser = _ArgumentParser(prog=APPLICATION_NAME.lower(), description=APPLICATION_TAGLINE)
    parser.add_argument("--version", action="version", version=f"{APPLICATION_NAME} {APPLICATION_VERSION}")
    parser.add_argument("--json", action="store_true", help="Emit machine-readable line records")
    parser.add_argument("--seed", type=int, default=BENCH_SEED, help="Seed for every random choice")
    parser.add_argument("--state-dir", default=None, help=f"State directory (falls back to ${STATE_DIR_ENV})")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")

    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    for module in COMMAND_MODULES:
        module.add_parser(subparsers)
    return parser


def configure_logging(verbose=False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else LOG_LEVEL,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def main(argv=None):
    """
    Parse the arguments, run the selected command and print its output.

    Returns:
        int: The command's exit code (0 ok, 1 check failed, 2 usage, 3 data).
    """
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    configure_logging(args.verbose)
    result = run_guarded(args.handler, args)

    if result.output:
        sys.stdout.write(result.output)
    for error in result.errors:
        print(f"error: {error}", file=sys.stderr)
    return result.exit_code


# This check ensures that main() is called only when the script is run directly
if __name__ == "__main__":
    sys.exit(main())
