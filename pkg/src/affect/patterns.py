from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

from config import (
    CBR_MISS_RATE,
    COST_OUTLIER_FACTOR,
    MODEL_ESCALATION_MIN,
    REPEATED_FAILURE_MIN,
    TOOL_FAILURE_MIN_CALLS,
    TOOL_FAILURE_RATE,
)
from utils.errors import ValidationError

logger = logging.getLogger(__name__)


class FindingSeverity(Enum):
    INFORMATIONAL = "informational"
    WARNING = "warning"


@dataclass(frozen=True)
class CycleSummary:
    """
    Structured review of one finished cycle.

    Args:
        cycle_id (str): Root node id.
        outcome (str): success, partial or failure ("" when no narrative entry).
        domain (str): Narrative domain.
        tools (tuple): (tool name, failed) per tool call.
        gate_actions (tuple): Gate actions observed during the cycle.
        model (str): Model of the root node.
        tokens (int): Tokens in plus out over the cycle tree.
        case_refs (tuple): Case ids the cycle drew on.
    """
    cycle_id: str
    outcome: str = ""
    domain: str = ""
    tools: tuple = ()
    gate_actions: tuple = ()
    model: str = ""
    tokens: int = 0
    case_refs: tuple = ()
    timestamp: float = 0.0

    def to_record(self):
        return {
            "cycle_id": self.cycle_id,
            "outcome": self.outcome,
            "domain": self.domain,
            "tools": [{"name": name, "failed": failed} for name, failed in self.tools],
            "gate_actions": list(self.gate_actions),
            "model": self.model,
            "tokens": self.tokens,
            "case_refs": list(self.case_refs),
            "timestamp": self.timestamp,
        }


@dataclass(frozen=True)
class PatternFinding:
    detector: str
    severity: FindingSeverity
    evidence: tuple
    message: str
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.evidence:
            raise ValidationError(f"{self.detector} finding needs evidence")

    def to_record(self):
        return {
            "detector": self.detector,
            "severity": self.severity.value,
            "evidence": list(self.evidence),
            "message": self.message,
        }


def repeated_failures(reviews, minimum=REPEATED_FAILURE_MIN):
    by_domain = {}
    for review in reviews:
        if review.outcome == "failure":
            by_domain.setdefault(review.domain, []).append(review.cycle_id)
    return [
        PatternFinding(
            "repeated_failures",
            FindingSeverity.WARNING,
            tuple(cycles),
            f"{len(cycles)} failures in domain {domain or '(none)'}",
            {"domain": domain},
        )
        for domain, cycles in sorted(by_domain.items())
        if len(cycles) >= minimum
    ]


def tool_failure_clusters(reviews, rate=TOOL_FAILURE_RATE, min_calls=TOOL_FAILURE_MIN_CALLS):
    calls = Counter()
    failures = {}
    for review in reviews:
        for name, failed in review.tools:
            calls[name] += 1
            if failed:
                failures.setdefault(name, []).append(review.cycle_id)
    findings = []
    for name in sorted(calls):
        failed_cycles = failures.get(name, [])
        if calls[name] < min_calls or len(failed_cycles) / calls[name] <= rate:
            continue
        findings.append(PatternFinding(
            "tool_failure_cluster",
            FindingSeverity.WARNING,
            tuple(dict.fromkeys(failed_cycles)),
            f"{name} failed {len(failed_cycles)} of {calls[name]} calls",
            {"tool": name, "calls": calls[name], "failures": len(failed_cycles)},
        ))
    return findings


def primary_model(reviews):
    counts = Counter(review.model for review in reviews if review.model)
    if not counts:
        return ""
    # Most used, then alphabetical
    return min(counts, key=lambda model: (-counts[model], model))


def model_escalations(reviews, minimum=MODEL_ESCALATION_MIN, primary=None):
    primary = primary or primary_model(reviews)
    escalated = [review.cycle_id for review in reviews if review.model and review.model != primary]
    if len(escalated) < minimum:
        return []
    return [PatternFinding(
        "model_escalation",
        FindingSeverity.INFORMATIONAL,
        tuple(escalated),
        f"{len(escalated)} cycles escalated past {primary}",
        {"primary": primary},
    )]


def cost_outliers(reviews, factor=COST_OUTLIER_FACTOR):
    if not reviews:
        return []
    average = sum(review.tokens for review in reviews) / len(reviews)
    outliers = [review.cycle_id for review in reviews if average > 0 and review.tokens > factor * average]
    if not outliers:
        return []
    return [PatternFinding(
        "cost_outlier",
        FindingSeverity.INFORMATIONAL,
        tuple(outliers),
        f"{len(outliers)} cycles above {factor:g}x the average of {average:.0f} tokens",
        {"average_tokens": average},
    )]


def cbr_misses(reviews, rate=CBR_MISS_RATE):
    if not reviews:
        return []
    missed = [review.cycle_id for review in reviews if not review.case_refs]
    if not missed or len(missed) / len(reviews) < rate:
        return []
    return [PatternFinding(
        "cbr_miss",
        FindingSeverity.WARNING,
        tuple(missed),
        f"{len(missed)} of {len(reviews)} cycles drew on no cases",
    )]


def detect_patterns(reviews, primary=None):
    """
    Run the five cross-cycle detectors over a review window.

    Args:
        reviews (list): CycleSummary entries, oldest first.
        primary (str, optional): Primary model; defaults to the most used one.

    Returns:
        list: PatternFinding entries grouped by detector.
    """
    reviews = list(reviews)
    findings = (
        repeated_failures(reviews)
        + tool_failure_clusters(reviews)
        + model_escalations(reviews, primary=primary)
        + cost_outliers(reviews)
        + cbr_misses(reviews)
    )
    for finding in findings:
        logger.info(f"Pattern {finding.detector}: {finding.message}")
    return findings
