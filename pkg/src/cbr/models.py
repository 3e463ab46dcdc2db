from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from config import EMBEDDING_DIM, RECENCY_HALF_LIFE_DAYS, RETRIEVAL_K, RETRIEVAL_WEIGHTS
from utils.errors import ValidationError
from utils.textHelper import normalize_keywords
from utils.validators import validate_weights

SIGNAL_NAMES = tuple(RETRIEVAL_WEIGHTS)


class Outcome(Enum):
    SUCCESS = "success"
    PARTIAL = "partial"
    FAILURE = "failure"


@dataclass(frozen=True)
class CbrCase:
    """
    A problem-solution-outcome case with its usage counters.
    """
    id: str
    problem: str
    solution: str
    outcome: Outcome
    domain: str
    keywords: frozenset = frozenset()
    pitfalls: Optional[str] = None
    created_at: float = 0.0
    retrieval_count: int = 0
    success_count: int = 0
    confidence: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "keywords", normalize_keywords(self.keywords))
        if not isinstance(self.outcome, Outcome):
            object.__setattr__(self, "outcome", Outcome(self.outcome))
        if self.retrieval_count < 0 or self.success_count < 0:
            raise ValidationError(f"Case {self.id}: counters must be non-negative")
        if self.success_count > self.retrieval_count:
            raise ValidationError(f"Case {self.id}: success_count exceeds retrieval_count")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValidationError(f"Case {self.id}: confidence outside [0, 1]")

    def to_record(self):
        return {
            "id": self.id,
            "problem": self.problem,
            "solution": self.solution,
            "outcome": self.outcome.value,
            "domain": self.domain,
            "keywords": sorted(self.keywords),
            "pitfalls": self.pitfalls,
            "created_at": self.created_at,
            "retrieval_count": self.retrieval_count,
            "success_count": self.success_count,
            "confidence": self.confidence,
        }

    @classmethod
    def from_record(cls, record):
        return cls(
            id=record["id"],
            problem=record.get("problem", ""),
            solution=record.get("solution", ""),
            outcome=Outcome(record.get("outcome", "success")),
            domain=record.get("domain", ""),
            keywords=frozenset(record.get("keywords", ())),
            pitfalls=record.get("pitfalls"),
            created_at=float(record.get("created_at", 0.0)),
            retrieval_count=int(record.get("retrieval_count", 0)),
            success_count=int(record.get("success_count", 0)),
            confidence=float(record.get("confidence", 0.5)),
        )

    def evolve(self, **changes):
        return replace(self, **changes)


@dataclass(frozen=True)
class RetrievalConfig:
    weights: dict = field(default_factory=lambda: dict(RETRIEVAL_WEIGHTS))
    k: int = RETRIEVAL_K
    recency_half_life_days: float = RECENCY_HALF_LIFE_DAYS
    embedding_dim: int = EMBEDDING_DIM

    def __post_init__(self):
        is_valid, error_msg = validate_weights(self.weights)
        if not is_valid:
            raise ValidationError(error_msg)
        if self.k < 1:
            raise ValidationError("k must be a positive integer")
        if self.recency_half_life_days <= 0:
            raise ValidationError("recency_half_life_days must be positive")
        if self.embedding_dim < 1:
            raise ValidationError("embedding_dim must be a positive integer")

    @property
    def weight_vector(self):
        return tuple(self.weights[name] for name in SIGNAL_NAMES)

    @classmethod
    def from_document(cls, document):
        """
        Build a config from a document, falling back to defaults for missing keys.
        """
        return cls(
            weights=dict(document.get("weights", RETRIEVAL_WEIGHTS)),
            k=int(document.get("k", RETRIEVAL_K)),
            recency_half_life_days=float(document.get("recency_half_life_days", RECENCY_HALF_LIFE_DAYS)),
            embedding_dim=int(document.get("embedding_dim", EMBEDDING_DIM)),
        )

    @classmethod
    def single_signal(cls, name, **kwargs):
        weights = {signal: 0.0 for signal in SIGNAL_NAMES}
        weights[name] = 1.0
        return cls(weights=weights, **kwargs)

    @classmethod
    def without(cls, name, **kwargs):
        # Drop one signal and renormalize the rest
        remaining = {signal: w for signal, w in RETRIEVAL_WEIGHTS.items() if signal != name}
        total = math.fsum(remaining.values())
        weights = {signal: remaining.get(signal, 0.0) / total for signal in SIGNAL_NAMES}
        return cls(weights=weights, **kwargs)


@dataclass(frozen=True)
class ScoredCase:
    case_id: str
    signals: dict
    fused: float
    degraded: bool = False

    def to_record(self):
        return {
            "case_id": self.case_id,
            "fused": self.fused,
            "signals": {name: self.signals[name] for name in SIGNAL_NAMES},
            "degraded": self.degraded,
        }


@dataclass(frozen=True)
class Query:
    text: str
    domain: Optional[str] = None
