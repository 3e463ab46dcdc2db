from __future__ import annotations

from dataclasses import dataclass

from calculus.propositions import Severity, Side, Verdict, VerdictKind
from config import (
    DEFAULT_MODIFY_THRESHOLD,
    DEFAULT_REJECT_THRESHOLD,
    FLOOR_CONSTRAIN_LEVELS,
    FLOOR_PROHIBIT_LEVEL,
)
from utils.errors import ValidationError


@dataclass(frozen=True)
class GateThresholds:
    """
    Modify/reject cut points for a discrepancy score. 0 < modify < reject <= 1.
    """
    modify: float = DEFAULT_MODIFY_THRESHOLD
    reject: float = DEFAULT_REJECT_THRESHOLD

    def __post_init__(self):
        is_valid, error_msg = validate_thresholds(self.modify, self.reject)
        if not is_valid:
            raise ValidationError(error_msg)

    def to_record(self):
        return {"modify": self.modify, "reject": self.reject}


def validate_thresholds(modify, reject):
    """
    Validate a modify/reject threshold pair.

    Returns:
        tuple: (is_valid, error_msg) where error_msg is None when valid.
    """
    if not isinstance(modify, (int, float)) or not isinstance(reject, (int, float)):
        return False, "Thresholds must be numbers"
    if not 0 < modify < reject <= 1:
        return False, f"Thresholds must satisfy 0 < modify < reject <= 1 (got {modify}, {reject})"
    return True, None


def _overridden_flag(resolution):
    # A flagged user proposition losing to the character at superordinate strength
    return (
        resolution.severity is Severity.SUPERORDINATE
        and resolution.winner is Side.SYSTEM
        and resolution.user.flagged
    )


def apply_floor_rules(resolutions, dprime, thresholds, catastrophic_present=False):
    """
    Apply the eight floor rules in priority order; the first to fire decides.

    Args:
        resolutions (list): Resolutions from resolve_all.
        dprime (float): Discrepancy score in [0, 1].
        thresholds (GateThresholds): Modify/reject thresholds.
        catastrophic_present (bool): Whether a catastrophic feature was flagged.

    Returns:
        Verdict: Verdict kind, firing floor index and the full axiom trail.

    Raises:
        ValidationError: On an out-of-range score or invalid thresholds.
    """
    if not 0.0 <= dprime <= 1.0:
        raise ValidationError(f"D' score must lie in [0, 1] (got {dprime})")
    is_valid, error_msg = validate_thresholds(thresholds.modify, thresholds.reject)
    if not is_valid:
        raise ValidationError(error_msg)

    severities = [r.severity for r in resolutions]
    trail = tuple(r.axiom.value for r in resolutions)
    low, high = FLOOR_CONSTRAIN_LEVELS

    def verdict(kind, index, reason):
        return Verdict(kind, index, trail, reason, tuple(resolutions))

    if Severity.ABSOLUTE in severities:
        return verdict(VerdictKind.PROHIBITED, 1, "Absolute severity")
    if any(_overridden_flag(r) and r.system.level.priority >= FLOOR_PROHIBIT_LEVEL for r in resolutions):
        return verdict(VerdictKind.PROHIBITED, 2, f"Superordinate at level {FLOOR_PROHIBIT_LEVEL} or higher")
    if dprime >= thresholds.reject:
        return verdict(VerdictKind.PROHIBITED, 3, f"D' {dprime:.4f} >= reject {thresholds.reject}")
    if catastrophic_present and Severity.SUPERORDINATE in severities:
        return verdict(VerdictKind.CONSTRAINED, 4, "Catastrophic feature with superordinate conflict")
    if severities.count(Severity.COORDINATE) >= 2:
        return verdict(VerdictKind.CONSTRAINED, 5, "Two or more coordinate conflicts")
    if dprime >= thresholds.modify:
        return verdict(VerdictKind.CONSTRAINED, 6, f"D' {dprime:.4f} >= modify {thresholds.modify}")
    if any(_overridden_flag(r) and low <= r.system.level.priority <= high for r in resolutions):
        return verdict(VerdictKind.CONSTRAINED, 7, f"Superordinate between levels {low} and {high}")
    return verdict(VerdictKind.FLOURISHING, 8, "Default")
