import logging

from calculus import DISTRIBUTION_ROWS, EXPECTED_DISTRIBUTION, check_monotonicity, exhaustive_eval, floor_rule_suite
from commands.common import EXIT_CHECK_FAILED, EXIT_OK, CommandResult

logger = logging.getLogger(__name__)


def add_parser(subparsers):
    parser = subparsers.add_parser(
        "calculus-eval",
        help="Exhaustive calculus conformance: distribution, monotonicity and floor rules",
    )
    parser.set_defaults(handler=run)
    return parser


def run(args):
    """
    Evaluate every proposition pair, the monotonicity sweep and the floor-rule suite.

    Exit 0 only when all seven counts match, the run is deterministic,
    no monotonicity violation exists and every floor check passes.
    """
    result = CommandResult()
    distribution = exhaustive_eval()
    violations = check_monotonicity()
    floors = floor_rule_suite()
    mismatches = distribution.diff()
    failed_floors = [check for check in floors if not check.passed]

    if args.json:
        for row in DISTRIBUTION_ROWS:
            result.record({"row": row, "count": distribution.counts[row], "expected": EXPECTED_DISTRIBUTION[row]})
        result.record({
            "total": distribution.total,
            "covered": distribution.covered,
            "deterministic": distribution.deterministic,
            "monotonicity_violations": len(violations),
            "floor_checks": [
                {"name": c.name, "expected": c.expected_floor, "actual": c.actual_floor, "passed": c.passed}
                for c in floors
            ],
        })
    else:
        result.emit(f"{'rule':<36} {'count':>6}")
        for row in DISTRIBUTION_ROWS:
            result.emit(f"{row:<36} {distribution.counts[row]:>6,}")
        result.emit(f"{'total':<36} {distribution.total:>6,}")
        result.emit(f"coverage {distribution.covered:,}/{distribution.total:,}, "
                    f"deterministic: {'yes' if distribution.deterministic else 'no'}")
        result.emit(f"monotonicity violations: {len(violations)}")
        result.emit(f"floor rules: {len(floors) - len(failed_floors)}/{len(floors)} correct")
        for row, expected, actual in mismatches:
            result.emit(f"MISMATCH {row}: expected {expected:,}, got {actual:,}")
        for check in failed_floors:
            result.emit(f"FLOOR {check.name}: expected floor {check.expected_floor}, got {check.actual_floor}")
        for violation in violations[:10]:
            result.emit(f"VIOLATION {violation.strengthened_side.value} {violation.step}: "
                        f"{violation.before} -> {violation.after}")

    conforming = (
        not mismatches
        and not violations
        and not failed_floors
        and distribution.deterministic
        and distribution.covered == distribution.total
    )
    if not conforming:
        logger.warning("Calculus conformance failed")
    result.exit_code = EXIT_OK if conforming else EXIT_CHECK_FAILED
    return result
