import logging
import re

from commands.common import EXIT_USAGE, CommandResult, failure, open_memory
from memory import summarize

logger = logging.getLogger(__name__)

_DATE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


def add_parser(subparsers):
    parser = subparsers.add_parser("audit-summary", help="Aggregate statistics reconstructed from the stores")
    parser.add_argument("--from", dest="date_from", help="First date, YYYY-MM-DD")
    parser.add_argument("--to", dest="date_to", help="Last date, YYYY-MM-DD")
    parser.set_defaults(handler=run)
    return parser


def run(args):
    for flag, value in (("--from", args.date_from), ("--to", args.date_to)):
        if value and not _DATE.match(value):
            return failure(f"{flag} must be a YYYY-MM-DD date (got {value!r})", EXIT_USAGE)

    summary = summarize(open_memory(args), args.date_from, args.date_to)
    result = CommandResult()
    if args.json:
        result.record(summary.to_record())
    else:
        result.lines.extend(summary.to_lines())
    return result
