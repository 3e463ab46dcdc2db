import logging

from affect import annotate_false_positive, load_observations, meta_observe
from commands.common import CommandResult, open_memory
from utils.timeHelper import now_ts

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("meta", help="Meta observer over persisted gate decisions")
    actions = parser.add_subparsers(dest="meta_command", required=True)

    check = actions.add_parser("check", help="Run the cross-cycle detectors")
    check.set_defaults(handler=run_check)

    annotate = actions.add_parser("annotate", help="Flag a cycle's rejection as a false positive")
    annotate.add_argument("cycle_id")
    annotate.set_defaults(handler=run_annotate)
    return parser


def run_check(args):
    now = now_ts()
    history = load_observations(open_memory(args), now)
    interventions = meta_observe(history, now)
    result = CommandResult()
    for intervention in interventions:
        if args.json:
            result.record(intervention.to_record())
        else:
            result.emit(f"{intervention.kind.value} ({intervention.detector}): {intervention.reason}")
    if not args.json:
        result.emit(f"{len(interventions)} intervention(s) over {len(history.observations)} decision(s)")
    return result


def run_annotate(args):
    annotate_false_positive(open_memory(args), args.cycle_id, now_ts())
    result = CommandResult()
    if args.json:
        result.record({"annotated": args.cycle_id})
    else:
        result.emit(f"annotated {args.cycle_id} as a false positive")
    return result
