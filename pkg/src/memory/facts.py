from __future__ import annotations

import logging
from dataclasses import dataclass

from config import FACT_HALF_LIFE_DAYS
from utils.errors import ValidationError
from utils.timeHelper import age_days
from utils.validators import validate_fact_scope

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecayParams:
    half_life_days: float = FACT_HALF_LIFE_DAYS

    def __post_init__(self):
        if not self.half_life_days > 0:
            raise ValidationError("half_life_days must be positive")


@dataclass(frozen=True)
class FactRecord:
    key: str
    value: str
    scope: str
    confidence0: float
    created_at: float

    def __post_init__(self):
        is_valid, error_msg = validate_fact_scope(self.scope)
        if not is_valid:
            raise ValidationError(error_msg)
        if not 0.0 <= self.confidence0 <= 1.0:
            raise ValidationError(f"Fact {self.key!r}: confidence outside [0, 1]")

    def to_payload(self):
        return {
            "key": self.key,
            "value": self.value,
            "scope": self.scope,
            "confidence": self.confidence0,
            "created_at": self.created_at,
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(
            key=payload["key"],
            value=payload["value"],
            scope=payload.get("scope", "persistent"),
            confidence0=float(payload["confidence"]),
            created_at=float(payload["created_at"]),
        )


def effective_confidence(fact, now, params=None):
    """
    Confidence of a fact at read time: c0 * 2 ** (-age_days / half_life).

    The stored record is never modified.

    Raises:
        ValidationError: If `now` precedes the fact's creation.
    """
    params = params or DecayParams()
    age = age_days(fact.created_at, now)
    if age < 0:
        raise ValidationError(f"Fact {fact.key!r} is dated after the read time")
    return fact.confidence0 * 2.0 ** (-age / params.half_life_days)


def resolve_fact_conflicts(facts, now, params=None):
    """
    Pick the fact to keep among facts sharing a key.

    Args:
        facts (list): One or more FactRecord with the same key.
        now (float): Read time in UTC seconds.
        params (DecayParams, optional): Decay parameters.

    Returns:
        FactRecord: Highest decayed confidence; newer wins ties.
    """
    if not facts:
        raise ValidationError("resolve_fact_conflicts needs at least one fact")
    return max(facts, key=lambda fact: (effective_confidence(fact, now, params), fact.created_at))


class FactStore:
    """
    Scoped key-value facts over the facts store, resolved and decayed at read time.
    """

    def __init__(self, memory, params=None):
        self.memory = memory
        self.params = params or DecayParams()

    def _facts(self, scope=None):
        by_key = {}
        for record in self.memory.replay("facts").records:
            fact = FactRecord.from_payload(record.payload)
            if scope and fact.scope != scope:
                continue
            by_key.setdefault(fact.key, []).append(fact)
        return by_key

    def set(self, key, value, now, scope="persistent", confidence=1.0):
        """
        Record a fact. Earlier values for the key stay on disk.

        Returns:
            FactRecord: The appended fact.
        """
        if not key:
            raise ValidationError("Fact key must be non-empty")
        fact = FactRecord(key, str(value), scope, float(confidence), now)
        self.memory.append("facts", fact.to_payload(), now)
        logger.info(f"Fact {key!r} recorded ({scope}, confidence {confidence})")
        return fact

    def get(self, key, now, scope=None):
        """
        Resolved fact for a key with its effective confidence, or None.

        Returns:
            tuple | None: (FactRecord, effective confidence).
        """
        candidates = self._facts(scope).get(key)
        if not candidates:
            return None
        fact = resolve_fact_conflicts(candidates, now, self.params)
        return fact, effective_confidence(fact, now, self.params)

    def list(self, now, scope=None):
        """
        One resolved fact per key, sorted by key.
        """
        resolved = []
        for key, candidates in sorted(self._facts(scope).items()):
            fact = resolve_fact_conflicts(candidates, now, self.params)
            resolved.append((fact, effective_confidence(fact, now, self.params)))
        return resolved
