import logging

from affect import AffectEngine, CycleTelemetry
from commands.common import EXIT_USAGE, CommandResult, failure, open_memory, read_record_file
from config import REPLAY_INTERVAL_SECONDS, REPLAY_START
from utils.errors import ValidationError
from utils.timeHelper import from_iso, to_iso

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser("affect-replay", help="Affect snapshots for a telemetry sequence")
    parser.add_argument("telemetry", help="Telemetry line-record file, one cycle per line")
    parser.add_argument("--start", default=REPLAY_START, help="Timestamp of the first cycle (ISO 8601, UTC)")
    parser.add_argument("--interval", type=float, default=REPLAY_INTERVAL_SECONDS,
                        help="Seconds between replayed cycles")
    parser.add_argument("--persist", action="store_true",
                        help="Append snapshots to the state directory's affect store")
    parser.set_defaults(handler=run)
    return parser


def run(args):
    """
    One snapshot per telemetry record, with calm and pressure threaded through.
    """
    telemetry = []
    for line_number, record in read_record_file(args.telemetry):
        try:
            telemetry.append(CycleTelemetry.from_record(record))
        except (ValidationError, TypeError, ValueError) as e:
            raise ValidationError(f"{args.telemetry}, line {line_number}: {e}") from e

    try:
        start = from_iso(args.start)
    except ValueError as e:
        return failure(f"--start is not an ISO 8601 timestamp: {e}", EXIT_USAGE)

    memory = open_memory(args, must_exist=False) if args.persist else None
    engine = AffectEngine(memory)
    snapshots = engine.replay(telemetry, start, args.interval)
    logger.info(f"Replayed {len(snapshots)} telemetry record(s)")

    result = CommandResult()
    if snapshots and not args.json:
        result.emit(f"{'cycle':<12} {'desp':>6} {'calm':>6} {'conf':>6} {'frust':>6} {'press':>6}  trend")
    for snapshot in snapshots:
        if args.json:
            result.record({**snapshot.to_record(), "timestamp": to_iso(snapshot.timestamp)})
        else:
            result.emit(
                f"{snapshot.cycle_id or '-':<12} {snapshot.desperation:>6.2f} {snapshot.calm:>6.2f} "
                f"{snapshot.confidence:>6.2f} {snapshot.frustration:>6.2f} {snapshot.pressure:>6.2f}  "
                f"{snapshot.trend.value}"
            )
    return result
