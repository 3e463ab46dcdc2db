import logging

from commands.common import EXIT_CHECK_FAILED, CommandResult, open_memory
from memory import FactStore
from utils.timeHelper import now_ts, to_iso
from utils.validators import FACT_SCOPES

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("facts", help="Scoped key-value facts with read-time decay")
    actions = parser.add_subparsers(dest="facts_command", required=True)

    get = actions.add_parser("get", help="Resolved value of one key")
    get.add_argument("key")
    get.add_argument("--scope", choices=FACT_SCOPES)
    get.set_defaults(handler=run_get)

    set_ = actions.add_parser("set", help="Record a fact")
    set_.add_argument("key")
    set_.add_argument("value")
    set_.add_argument("--scope", choices=FACT_SCOPES, default="persistent")
    set_.add_argument("--confidence", type=float, default=1.0)
    set_.set_defaults(handler=run_set)

    list_ = actions.add_parser("list", help="One resolved fact per key")
    list_.add_argument("--scope", choices=FACT_SCOPES)
    list_.set_defaults(handler=run_list)
    return parser


def _fact_record(fact, effective):
    return {**fact.to_payload(), "created_at": to_iso(fact.created_at), "effective_confidence": effective}


def _fact_line(fact, effective):
    return f"{fact.key} = {fact.value} ({fact.scope}, confidence {effective:.3f}, since {to_iso(fact.created_at)})"


def run_get(args):
    found = FactStore(open_memory(args)).get(args.key, now_ts(), args.scope)
    result = CommandResult()
    if found is None:
        result.errors.append(f"No fact for {args.key!r}")
        result.exit_code = EXIT_CHECK_FAILED
        return result
    fact, effective = found
    if args.json:
        result.record(_fact_record(fact, effective))
    else:
        result.emit(_fact_line(fact, effective))
    return result


def run_set(args):
    now = now_ts()
    fact = FactStore(open_memory(args, must_exist=False)).set(
        args.key, args.value, now, scope=args.scope, confidence=args.confidence
    )
    result = CommandResult()
    if args.json:
        result.record(_fact_record(fact, fact.confidence0))
    else:
        result.emit(f"recorded {_fact_line(fact, fact.confidence0)}")
    return result


def run_list(args):
    facts = FactStore(open_memory(args)).list(now_ts(), args.scope)
    result = CommandResult()
    for fact, effective in facts:
        if args.json:
            result.record(_fact_record(fact, effective))
        else:
            result.emit(_fact_line(fact, effective))
    return result
