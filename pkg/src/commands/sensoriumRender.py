import logging

from commands.common import CommandResult, read_json_file
from sensorium import SensoriumState, render

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("sensorium", help="Render the self-state block from a state document")
    parser.add_argument("state", help="Sensorium state JSON document")
    parser.set_defaults(handler=run)
    return parser


def run(args):
    state = SensoriumState.from_document(read_json_file(args.state))
    block = render(state)
    result = CommandResult()
    if args.json:
        result.record({"cycle_id": state.cycle_id, "sensorium": block})
    else:
        result.lines.extend(block.splitlines())
    return result
