from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from calculus import GateThresholds, OrdinalLevel
from config import MAX_IMPORTANCE, MAX_MAGNITUDE, TIGHTEN_FACTOR
from utils.errors import ValidationError


class GateKind(Enum):
    """
    The three points where a decision sheet is scored.
    """
    INPUT = "input"
    TOOL = "tool"
    OUTPUT = "output"


class ScreenResult(Enum):
    FAST_ACCEPT = "FastAccept"
    CONSULT = "Consult"


@dataclass(frozen=True)
class FeatureScore:
    name: str
    importance: int
    magnitude: int
    catastrophic: bool = False
    level_hint: OrdinalLevel = OrdinalLevel.OPERATIONAL

    def __post_init__(self):
        if not 0 <= self.importance <= MAX_IMPORTANCE:
            raise ValidationError(f"Feature {self.name!r}: importance {self.importance} outside [0, {MAX_IMPORTANCE}]")
        if not 0 <= self.magnitude <= MAX_MAGNITUDE:
            raise ValidationError(f"Feature {self.name!r}: magnitude {self.magnitude} outside [0, {MAX_MAGNITUDE}]")


@dataclass(frozen=True)
class DecisionSheet:
    gate: GateKind
    features: tuple
    agent: Optional[str] = None

    def __post_init__(self):
        if not self.features:
            raise ValidationError("Decision sheet needs at least one feature")


def compute_dprime_exact(sheet):
    """
    Discrepancy score as an exact fraction: sum(importance x magnitude) / (5 x 5 x n).
    """
    if not sheet.features:
        raise ValidationError("Decision sheet needs at least one feature")
    numerator = sum(f.importance * f.magnitude for f in sheet.features)
    return Fraction(numerator, MAX_IMPORTANCE * MAX_MAGNITUDE * len(sheet.features))


def compute_dprime(sheet):
    """
    Compute the normalized discrepancy score of a decision sheet.

    Args:
        sheet (DecisionSheet): Scored features for one gate.

    Returns:
        float: Score in [0, 1]; 1 only when every feature is at 5/5.

    Raises:
        ValidationError: If the sheet has no features.
    """
    return float(compute_dprime_exact(sheet))


def screen(score, thresholds):
    # Strictly below modify takes the fast path; the boundary consults the calculus
    return ScreenResult.FAST_ACCEPT if score < thresholds.modify else ScreenResult.CONSULT


def tighten(thresholds, factor=TIGHTEN_FACTOR):
    """
    Scale both thresholds by a factor in (0, 1].

    Args:
        thresholds (GateThresholds): Current thresholds.
        factor (float): Multiplier; 1.0 leaves thresholds unchanged.

    Returns:
        GateThresholds: The tightened thresholds.

    Raises:
        ValidationError: If factor is outside (0, 1].
    """
    if not 0 < factor <= 1:
        raise ValidationError(f"Tighten factor must lie in (0, 1] (got {factor})")
    return GateThresholds(modify=thresholds.modify * factor, reject=thresholds.reject * factor)
