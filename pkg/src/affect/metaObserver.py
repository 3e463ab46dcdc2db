from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from config import (
    META_FALSE_POSITIVE_RATE,
    META_RATE_LIMIT,
    META_RATE_WINDOW_SECONDS,
    META_REJECTION_MIN,
    META_RETENTION_DAYS,
    META_RISK_SUBWINDOWS,
    META_SLIDING_WINDOW,
    META_TIGHTEN_LIMIT,
    TIGHTEN_FACTOR,
)
from gate import GateAction, tighten
from utils.errors import ValidationError
from utils.timeHelper import SECONDS_PER_DAY

logger = logging.getLogger(__name__)


class InterventionKind(Enum):
    """
    What the observer asks the runtime to do.
    """
    INJECT_CAUTION = "InjectCaution"
    TIGHTEN_THRESHOLDS = "TightenThresholds"
    COOLDOWN = "Cooldown"
    ESCALATE = "Escalate"


DETECTOR_INTERVENTIONS = {
    "rate_limit": InterventionKind.COOLDOWN,
    "cumulative_risk": InterventionKind.INJECT_CAUTION,
    "repeated_rejections": InterventionKind.TIGHTEN_THRESHOLDS,
    "layer3a_persistence": InterventionKind.ESCALATE,
    "high_false_positive": InterventionKind.ESCALATE,
}


@dataclass(frozen=True)
class MetaConfig:
    rate_limit: int = META_RATE_LIMIT
    rate_window_seconds: float = META_RATE_WINDOW_SECONDS
    sliding_window: int = META_SLIDING_WINDOW
    rejection_min: int = META_REJECTION_MIN
    risk_subwindows: int = META_RISK_SUBWINDOWS
    false_positive_rate: float = META_FALSE_POSITIVE_RATE
    tighten_limit: int = META_TIGHTEN_LIMIT
    tighten_factor: float = TIGHTEN_FACTOR

    def __post_init__(self):
        if self.risk_subwindows < 2 or self.sliding_window < 1:
            raise ValidationError("Meta observer windows are too small")


@dataclass(frozen=True)
class GateObservation:
    cycle_id: str
    gate: str
    action: GateAction
    dprime: float
    timestamp: float
    false_positive: bool = False

    def to_payload(self):
        return {
            "type": "observation",
            "cycle_id": self.cycle_id,
            "gate": self.gate,
            "action": self.action.value,
            "dprime": self.dprime,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(
            cycle_id=payload["cycle_id"],
            gate=payload.get("gate", ""),
            action=GateAction(payload["action"]),
            dprime=float(payload["dprime"]),
            timestamp=float(payload["timestamp"]),
        )


@dataclass(frozen=True)
class Tightening:
    timestamp: float
    rejection_rate: float


@dataclass
class MetaHistory:
    """
    Observer state: gate decisions oldest first plus tightenings already applied.
    """
    observations: list = field(default_factory=list)
    tightenings: list = field(default_factory=list)


@dataclass(frozen=True)
class Intervention:
    kind: InterventionKind
    detector: str
    reason: str
    factor: Optional[float] = None

    def to_record(self):
        record = {"kind": self.kind.value, "detector": self.detector, "reason": self.reason}
        if self.factor is not None:
            record["factor"] = self.factor
        return record


def _intervene(detector, reason, config):
    kind = DETECTOR_INTERVENTIONS[detector]
    factor = config.tighten_factor if kind is InterventionKind.TIGHTEN_THRESHOLDS else None
    return Intervention(kind, detector, reason, factor)


def rejection_rate(observations):
    if not observations:
        return 0.0
    rejected = sum(1 for obs in observations if obs.action is GateAction.REJECT)
    return rejected / len(observations)


def _rate_limit(history, now, config):
    recent = {obs.cycle_id for obs in history.observations if now - obs.timestamp < config.rate_window_seconds}
    if len(recent) > config.rate_limit:
        return f"{len(recent)} cycles in the last {config.rate_window_seconds:g}s (limit {config.rate_limit})"
    return None


def _cumulative_risk(history, config):
    observations = history.observations
    size = len(observations) // config.risk_subwindows
    if size == 0:
        return None
    tail = observations[-size * config.risk_subwindows:]
    means = [
        sum(obs.dprime for obs in tail[i * size:(i + 1) * size]) / size
        for i in range(config.risk_subwindows)
    ]
    if all(later > earlier for earlier, later in zip(means, means[1:])):
        return "mean D' rising across sub-windows: " + ", ".join(f"{mean:.3f}" for mean in means)
    return None


def _repeated_rejections(window, config):
    rejected = [obs for obs in window if obs.action is GateAction.REJECT and not obs.false_positive]
    if len(rejected) >= config.rejection_min:
        return f"{len(rejected)} rejections in the last {len(window)} decisions"
    return None


def _layer3a_persistence(history, window, config):
    if len(history.tightenings) < config.tighten_limit:
        return None
    baseline = history.tightenings[-config.tighten_limit].rejection_rate
    current = rejection_rate(window)
    if current >= baseline:
        return f"{len(history.tightenings)} tightenings applied, rejection rate {current:.2f} has not dropped"
    return None


def _high_false_positive(history, config):
    rejected = [obs for obs in history.observations if obs.action is GateAction.REJECT]
    if not rejected:
        return None
    flagged = sum(1 for obs in rejected if obs.false_positive)
    if flagged / len(rejected) > config.false_positive_rate:
        return f"{flagged} of {len(rejected)} rejections flagged as false positives"
    return None


def meta_observe(history, now, config=None):
    """
    Run the five cross-cycle detectors over the observer's history.

    Args:
        history (MetaHistory): Decisions and tightenings, oldest first.
        now (float): Evaluation time in UTC seconds.
        config (MetaConfig, optional): Windows and limits.

    Returns:
        list: Interventions in detector order.
    """
    config = config or MetaConfig()
    window = history.observations[-config.sliding_window:]
    reasons = {
        "rate_limit": _rate_limit(history, now, config),
        "cumulative_risk": _cumulative_risk(history, config),
        "repeated_rejections": _repeated_rejections(window, config),
        "layer3a_persistence": _layer3a_persistence(history, window, config),
        "high_false_positive": _high_false_positive(history, config),
    }
    interventions = [_intervene(detector, reason, config) for detector, reason in reasons.items() if reason]
    for intervention in interventions:
        logger.warning(f"Meta observer {intervention.kind.value} ({intervention.detector}): {intervention.reason}")
    return interventions


def load_observations(memory, now, window_days=META_RETENTION_DAYS):
    """
    Rebuild the observer history from the meta store.

    Only observations younger than `window_days` are kept; false-positive
    annotations are folded onto every observation of the annotated cycle.

    Returns:
        MetaHistory: The restored history.
    """
    cutoff = now - window_days * SECONDS_PER_DAY
    observations, tightenings, flagged = [], [], set()
    for record in memory.replay("meta").records:
        payload = record.payload
        kind = payload.get("type")
        if kind == "annotation":
            flagged.add(payload["cycle_id"])
        elif payload.get("timestamp", record.timestamp) < cutoff:
            continue
        elif kind == "observation":
            observations.append(GateObservation.from_payload(payload))
        elif kind == "tightening":
            tightenings.append(Tightening(float(payload["timestamp"]), float(payload["rejection_rate"])))
    observations = [
        GateObservation(obs.cycle_id, obs.gate, obs.action, obs.dprime, obs.timestamp, obs.cycle_id in flagged)
        for obs in observations
    ]
    logger.info(f"Meta observer restored {len(observations)} observation(s)")
    return MetaHistory(observations, tightenings)


def annotate_false_positive(memory, cycle_id, now):
    return memory.append("meta", {"type": "annotation", "cycle_id": cycle_id, "timestamp": now}, now)


class MetaObserver:
    """
    Records gate decisions and applies the observer's interventions.
    """

    def __init__(self, memory=None, config=None, now=None):
        self.memory = memory
        self.config = config or MetaConfig()
        if memory is not None and now is not None:
            self.history = load_observations(memory, now)
        else:
            self.history = MetaHistory()

    def observe(self, cycle_id, gate, decision, timestamp):
        observation = GateObservation(cycle_id, gate, decision.action, decision.dprime, timestamp)
        self.history.observations.append(observation)
        if self.memory is not None:
            self.memory.append("meta", observation.to_payload(), timestamp)
        return observation

    def check(self, now):
        return meta_observe(self.history, now, self.config)

    def apply(self, interventions, thresholds, now):
        """
        Tighten thresholds when asked to; other interventions leave them unchanged.

        Returns:
            GateThresholds: The thresholds to use from now on.
        """
        for intervention in interventions:
            if intervention.kind is not InterventionKind.TIGHTEN_THRESHOLDS:
                continue
            window = self.history.observations[-self.config.sliding_window:]
            tightening = Tightening(now, rejection_rate(window))
            self.history.tightenings.append(tightening)
            if self.memory is not None:
                self.memory.append(
                    "meta",
                    {"type": "tightening", "timestamp": now, "rejection_rate": tightening.rejection_rate},
                    now,
                )
            thresholds = tighten(thresholds, intervention.factor)
        return thresholds
