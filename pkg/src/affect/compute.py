from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum

from config import (
    CALM_BASELINE,
    CALM_DELEGATION_FAILURE_PENALTY,
    CALM_GATE_REJECTION_PENALTY,
    CALM_TOOL_FAILURE_PENALTY,
    CONFIDENCE_WEIGHTS,
    EMA_ALPHA,
    FAILURE_STREAK_CAP,
    FAILURE_STREAK_STEP,
    FRUSTRATION_WEIGHTS,
    GATE_REJECTION_TIERS,
    OUTPUT_REJECTION_TIERS,
    PRESSURE_WEIGHTS,
    RETRY_TIERS,
    TOOL_FAILURE_DESPERATION,
    TREND_BAND,
)
from utils.errors import ValidationError
from utils.validators import TELEMETRY_COUNTERS, TELEMETRY_RATES, validate_telemetry_record


class Trend(Enum):
    RISING = "rising"
    FALLING = "falling"
    STABLE = "stable"


@dataclass(frozen=True)
class CycleTelemetry:
    """
    Observable signals of one cycle.
    """
    tool_calls_total: int = 0
    tool_calls_failed: int = 0
    same_tool_retries: int = 0
    gate_rejections: int = 0
    gate_modifications: int = 0
    delegations_total: int = 0
    delegations_failed: int = 0
    recent_success_rate: float = 1.0
    cbr_hit_rate: float = 1.0
    budget_pressure: float = 0.0
    consecutive_failure_cycles: int = 0
    output_gate_rejections: int = 0
    cycle_id: str = ""

    def __post_init__(self):
        is_valid, error_msg = validate_telemetry_record(self.to_record())
        if not is_valid:
            raise ValidationError(error_msg)

    @property
    def tool_failure_rate(self):
        if self.tool_calls_total == 0:
            return 0.0
        return self.tool_calls_failed / self.tool_calls_total

    @property
    def tool_success_rate(self):
        # No tool calls is not evidence of failure
        return 1.0 - self.tool_failure_rate

    @property
    def delegation_failure_rate(self):
        if self.delegations_total == 0:
            return 0.0
        return self.delegations_failed / self.delegations_total

    def to_record(self):
        return asdict(self)

    @classmethod
    def from_record(cls, record):
        """
        Build telemetry from a record; unknown keys are ignored.

        Raises:
            ValidationError: If the record fails validation.
        """
        is_valid, error_msg = validate_telemetry_record(record)
        if not is_valid:
            raise ValidationError(error_msg)
        known = TELEMETRY_COUNTERS + TELEMETRY_RATES + ("budget_pressure", "cycle_id")
        return cls(**{key: record[key] for key in known if key in record})


@dataclass(frozen=True)
class AffectParams:
    ema_alpha: float = EMA_ALPHA
    calm_baseline: float = CALM_BASELINE
    trend_band: float = TREND_BAND
    tool_failure_penalty: float = CALM_TOOL_FAILURE_PENALTY
    gate_rejection_penalty: float = CALM_GATE_REJECTION_PENALTY
    delegation_failure_penalty: float = CALM_DELEGATION_FAILURE_PENALTY
    retry_tiers: tuple = RETRY_TIERS
    gate_rejection_tiers: tuple = GATE_REJECTION_TIERS
    output_rejection_tiers: tuple = OUTPUT_REJECTION_TIERS
    failure_streak_step: float = FAILURE_STREAK_STEP
    failure_streak_cap: float = FAILURE_STREAK_CAP
    tool_failure_desperation: float = TOOL_FAILURE_DESPERATION
    confidence_weights: dict = field(default_factory=lambda: dict(CONFIDENCE_WEIGHTS))
    frustration_weights: dict = field(default_factory=lambda: dict(FRUSTRATION_WEIGHTS))
    pressure_weights: dict = field(default_factory=lambda: dict(PRESSURE_WEIGHTS))

    def __post_init__(self):
        if not 0.0 < self.ema_alpha <= 1.0:
            raise ValidationError("ema_alpha must lie in (0, 1]")
        if self.trend_band < 0:
            raise ValidationError("trend_band must be non-negative")


DEFAULT_PARAMS = AffectParams()


@dataclass(frozen=True)
class AffectSnapshot:
    desperation: float
    calm: float
    confidence: float
    frustration: float
    pressure: float
    trend: Trend
    timestamp: float
    cycle_id: str = ""

    def to_record(self):
        return {
            "cycle_id": self.cycle_id,
            "desperation": self.desperation,
            "calm": self.calm,
            "confidence": self.confidence,
            "frustration": self.frustration,
            "pressure": self.pressure,
            "trend": self.trend.value,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_record(cls, record):
        return cls(
            desperation=float(record["desperation"]),
            calm=float(record["calm"]),
            confidence=float(record["confidence"]),
            frustration=float(record["frustration"]),
            pressure=float(record["pressure"]),
            trend=Trend(record["trend"]),
            timestamp=float(record["timestamp"]),
            cycle_id=record.get("cycle_id", ""),
        )


def clamp(value, low=0.0, high=100.0):
    return max(low, min(high, value))


def _tier(tiers, count):
    return tiers[min(count, len(tiers) - 1)]


def desperation(t, params=DEFAULT_PARAMS):
    """
    Sum of tiered pressure components, clamped to 100.
    """
    total = (
        _tier(params.retry_tiers, t.same_tool_retries)
        + _tier(params.gate_rejection_tiers, t.gate_rejections)
        + min(params.failure_streak_step * t.consecutive_failure_cycles, params.failure_streak_cap)
        + params.tool_failure_desperation * t.tool_failure_rate
        + _tier(params.output_rejection_tiers, t.output_gate_rejections)
    )
    return clamp(total)


def calm_target(t, params=DEFAULT_PARAMS):
    return clamp(
        params.calm_baseline
        - params.tool_failure_penalty * t.tool_calls_failed
        - params.gate_rejection_penalty * t.gate_rejections
        - params.delegation_failure_penalty * t.delegations_failed
    )


def calm(t, prev_calm=CALM_BASELINE, params=DEFAULT_PARAMS):
    """
    Exponential moving average of the per-cycle calm target.

    Args:
        t (CycleTelemetry): This cycle's signals.
        prev_calm (float): Calm after the previous cycle; the baseline bootstraps it.
        params (AffectParams): Alpha, baseline and penalties.

    Returns:
        float: Calm in [0, 100].
    """
    if not 0.0 <= prev_calm <= 100.0:
        raise ValidationError("prev_calm must lie in [0, 100]")
    alpha = params.ema_alpha
    return clamp(alpha * calm_target(t, params) + (1.0 - alpha) * prev_calm)


def confidence(t, params=DEFAULT_PARAMS):
    weights = params.confidence_weights
    return clamp(
        weights["cbr_hit_rate"] * t.cbr_hit_rate
        + weights["recent_success_rate"] * t.recent_success_rate
        + weights["tool_success_rate"] * t.tool_success_rate
    )


def frustration(t, params=DEFAULT_PARAMS):
    weights = params.frustration_weights
    return clamp(
        weights["tool_failure_rate"] * t.tool_failure_rate
        + weights["gate_modifications"] * t.gate_modifications
        + weights["delegation_failure_rate"] * t.delegation_failure_rate
        + weights["budget_pressure"] * t.budget_pressure
    )


def pressure_and_trend(dims, prev_pressure=None, params=DEFAULT_PARAMS):
    """
    Composite pressure and its direction against the previous cycle.

    Args:
        dims (dict): desperation, frustration, confidence and calm.
        prev_pressure (float, optional): Previous pressure; None reads as stable.
        params (AffectParams): Weights and the stable band.

    Returns:
        tuple: (pressure, Trend).
    """
    weights = params.pressure_weights
    pressure = clamp(
        weights["desperation"] * dims["desperation"]
        + weights["frustration"] * dims["frustration"]
        + weights["confidence_gap"] * (100.0 - dims["confidence"])
        + weights["calm_gap"] * (100.0 - dims["calm"])
    )
    if prev_pressure is None:
        return pressure, Trend.STABLE
    delta = pressure - prev_pressure
    if delta > params.trend_band:
        return pressure, Trend.RISING
    if delta < -params.trend_band:
        return pressure, Trend.FALLING
    return pressure, Trend.STABLE


def compute_affect(t, prev_calm=CALM_BASELINE, prev_pressure=None, timestamp=0.0, params=DEFAULT_PARAMS):
    """
    All five dimensions for one cycle.

    Returns:
        AffectSnapshot: The cycle's reading.
    """
    dims = {
        "desperation": desperation(t, params),
        "calm": calm(t, prev_calm, params),
        "confidence": confidence(t, params),
        "frustration": frustration(t, params),
    }
    pressure, trend = pressure_and_trend(dims, prev_pressure, params)
    return AffectSnapshot(pressure=pressure, trend=trend, timestamp=timestamp, cycle_id=t.cycle_id, **dims)
