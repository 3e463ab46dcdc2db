import logging

from commands.common import EXIT_CHECK_FAILED, EXIT_OK, CommandResult, read_json_file
from gate import GateAction, evaluate, load_character, load_sheet, threshold_profile

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("gate-eval", help="Score a decision sheet and run the gate")
    parser.add_argument("sheet", help="Decision sheet JSON file")
    parser.add_argument(
        "--character",
        help="Character JSON file. The built-in character applies when omitted; its categorical "
             "ETHICAL_MORAL/REQUIRED privacy commitment prohibits every sheet that reaches the "
             "calculus at floor 1, so pass a character without it to see the other floors",
    )
    parser.add_argument("--agent", help="Agent profile whose thresholds and features apply")
    parser.set_defaults(handler=run)
    return parser


def run(args):
    """
    Print the decision, D' score, floor index and axiom trail.

    Exit 0 on Accept and 1 on Modify or Reject.
    """
    document = read_json_file(args.sheet)
    if args.agent and isinstance(document, dict):
        document = {**document, "agent": args.agent}
    sheet = load_sheet(document)
    character = load_character(read_json_file(args.character) if args.character else None)
    thresholds = threshold_profile(sheet.gate, sheet.agent)
    decision = evaluate(sheet, character, thresholds)

    result = CommandResult()
    if args.json:
        result.record(decision.to_record())
    else:
        result.emit(f"decision: {decision.action.value.upper()}")
        result.emit(f"D': {decision.dprime:.2f} ({decision.dprime:.6f})")
        result.emit(f"thresholds: modify {thresholds.modify:.2f}, reject {thresholds.reject:.2f}")
        if decision.fast_path:
            result.emit("fast path: below the modify threshold, calculus not consulted")
        else:
            result.emit(f"verdict: {decision.verdict.kind.value} (floor {decision.verdict.floor_index})")
            result.emit(f"reason: {decision.verdict.reason}")
            result.emit(f"axiom trail: [{', '.join(decision.axiom_trail)}]")
    result.exit_code = EXIT_OK if decision.action is GateAction.ACCEPT else EXIT_CHECK_FAILED
    return result
