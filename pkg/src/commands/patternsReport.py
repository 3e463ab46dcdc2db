import logging

from affect import detect_patterns, review_recent
from commands.common import EXIT_USAGE, CommandResult, failure, open_memory

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("patterns", help="Cross-cycle pattern findings over recent cycles")
    parser.add_argument("--last", type=int, default=None, help="Review only the last N cycles")
    parser.add_argument("--primary-model", default=None, help="Model that is not counted as an escalation")
    parser.set_defaults(handler=run)
    return parser


def run(args):
    if args.last is not None and args.last < 0:
        return failure("--last must be non-negative", EXIT_USAGE)

    reviews = review_recent(open_memory(args), args.last)
    findings = detect_patterns(reviews, primary=args.primary_model)

    result = CommandResult()
    for finding in findings:
        if args.json:
            result.record(finding.to_record())
        else:
            result.emit(f"[{finding.severity.value}] {finding.detector}: {finding.message}")
    if not args.json:
        result.emit(f"{len(findings)} finding(s) over {len(reviews)} cycle(s)")
    return result
