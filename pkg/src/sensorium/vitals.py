from __future__ import annotations

import logging
from dataclasses import dataclass

from config import COST_TREND_BAND, FAILURE_SUMMARY_CHARS, NOVELTY_WINDOW, SENSORIUM_WINDOW
from utils.errors import ValidationError
from utils.textHelper import jaccard, truncate
from utils.timeHelper import utc_date

logger = logging.getLogger(__name__)

COST_TRENDS = ("rising", "stable", "falling")
OUTCOME_CREDIT = {"success": 1.0, "partial": 0.5, "failure": 0.0}


@dataclass(frozen=True)
class Vitals:
    """
    Rolling performance summary shown in the sensorium.
    """
    cycles_today: int = 0
    agents_active: int = 0
    success_rate: float = 0.0
    cost_trend: str = "stable"
    cbr_hit_rate: float = 0.0
    novelty: float = 1.0
    recent_failures: str = ""

    def __post_init__(self):
        for name in ("success_rate", "cbr_hit_rate", "novelty"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValidationError(f"vitals.{name} must lie in [0, 1]")
        if self.cost_trend not in COST_TRENDS:
            raise ValidationError(f"vitals.cost_trend must be one of {', '.join(COST_TRENDS)}")

    @classmethod
    def from_document(cls, document):
        return cls(
            cycles_today=int(document.get("cycles_today", 0)),
            agents_active=int(document.get("agents_active", 0)),
            success_rate=float(document.get("success_rate", 0.0)),
            cost_trend=document.get("cost_trend", "stable"),
            cbr_hit_rate=float(document.get("cbr_hit_rate", 0.0)),
            novelty=float(document.get("novelty", 1.0)),
            recent_failures=document.get("recent_failures", ""),
        )


def novelty(input_tokens, recent_inputs, window=NOVELTY_WINDOW):
    """
    How unfamiliar an input is: 1 minus its best Jaccard match in recent history.

    Args:
        input_tokens (Iterable[str]): Keywords of the new input.
        recent_inputs (list): Keyword sets of earlier inputs, oldest first.
        window (int): How many of the most recent inputs to compare.

    Returns:
        float: Novelty in [0, 1]; 1.0 with no history.
    """
    history = list(recent_inputs)[-window:] if window else []
    if not history:
        return 1.0
    return 1.0 - max(jaccard(input_tokens, previous, empty=1.0) for previous in history)


def cost_trend(tokens, band=COST_TREND_BAND):
    """
    Compare mean tokens of the last third of a window against the first third.
    """
    third = len(tokens) // 3
    if third == 0:
        return "stable"
    first = sum(tokens[:third]) / third
    last = sum(tokens[-third:]) / third
    if first == 0:
        return "rising" if last > 0 else "stable"
    change = (last - first) / first
    if change > band:
        return "rising"
    if change < -band:
        return "falling"
    return "stable"


def compute_vitals(entries, now, agents_active=0, input_novelty=1.0, window=SENSORIUM_WINDOW):
    """
    Vitals from the most recent narrative entries.

    Args:
        entries (list): NarrativeEntry records from the replayed store.
        now (float): Render time in UTC seconds.
        agents_active (int): Live sub-agent count.
        input_novelty (float): Novelty of the current input.
        window (int): Number of most recent entries considered.

    Returns:
        Vitals: Neutral values (zero rates, stable) for an empty window.
    """
    ordered = sorted(entries, key=lambda entry: (entry.timestamp, entry.id))
    recent = ordered[-window:] if window else []
    today = utc_date(now)
    cycles_today = len({entry.cycle_id for entry in ordered if utc_date(entry.timestamp) == today})

    if not recent:
        return Vitals(cycles_today=cycles_today, agents_active=agents_active, novelty=input_novelty)

    failures = [entry for entry in recent if entry.outcome == "failure"]
    return Vitals(
        cycles_today=cycles_today,
        agents_active=agents_active,
        success_rate=sum(OUTCOME_CREDIT[entry.outcome] for entry in recent) / len(recent),
        cost_trend=cost_trend([entry.tokens for entry in recent]),
        cbr_hit_rate=sum(1 for entry in recent if entry.case_refs) / len(recent),
        novelty=input_novelty,
        recent_failures=truncate(failures[-1].summary, FAILURE_SUMMARY_CHARS) if failures else "",
    )
