import logging

from commands.common import EXIT_USAGE, CommandResult, failure, open_memory
from config import DEDUP_THRESHOLD, PRUNE_MAX_CONFIDENCE, PRUNE_MIN_AGE_DAYS
from memory import PrunePolicy, run_housekeeping
from utils.timeHelper import from_iso, now_ts

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("housekeep", help="Deduplicate and prune the case store")
    parser.add_argument("--threshold", type=float, default=DEDUP_THRESHOLD, help="Similarity at which cases merge")
    parser.add_argument("--min-age-days", type=float, default=PRUNE_MIN_AGE_DAYS)
    parser.add_argument("--max-confidence", type=float, default=PRUNE_MAX_CONFIDENCE)
    parser.add_argument("--now", default=None, help="Evaluation time (ISO 8601, UTC); defaults to the clock")
    parser.set_defaults(handler=run)
    return parser


def run(args):
    """
    Dedup then prune, appending upserts for merged survivors and removals.
    """
    if not 0.0 < args.threshold <= 1.0:
        return failure("--threshold must be in (0, 1]", EXIT_USAGE)
    try:
        now = from_iso(args.now) if args.now else now_ts()
    except ValueError as e:
        return failure(f"--now is not an ISO 8601 timestamp: {e}", EXIT_USAGE)

    policy = PrunePolicy(args.min_age_days, args.max_confidence)
    outcome = run_housekeeping(open_memory(args), now, args.threshold, policy)
    logger.info(f"Housekeeping merged {len(outcome['merged'])}, pruned {len(outcome['pruned'])}")

    result = CommandResult()
    if args.json:
        result.record({
            "merged": [{"survivor": survivor, "absorbed": absorbed} for survivor, absorbed in outcome["merged"]],
            "pruned": list(outcome["pruned"]),
            "remaining": outcome["remaining"],
        })
        return result
    result.lines.extend(f"merged {absorbed} into {survivor}" for survivor, absorbed in outcome["merged"])
    result.lines.extend(f"pruned {case_id}" for case_id in outcome["pruned"])
    result.emit(
        f"{len(outcome['merged'])} merged, {len(outcome['pruned'])} pruned, {outcome['remaining']} remaining"
    )
    return result
