from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Optional

from config import THREAD_KEYWORD_CAP, THREAD_THRESHOLD, THREAD_WEIGHTS
from utils.errors import ValidationError
from utils.textHelper import normalize_keywords

logger = logging.getLogger(__name__)

OUTCOMES = ("success", "partial", "failure")

# Returned by assign_thread when no thread scores high enough
NEW_THREAD = "NewThread"


@dataclass(frozen=True)
class NarrativeEntry:
    """
    What happened in one cycle.
    """
    id: str
    cycle_id: str
    timestamp: float
    outcome: str
    intent: str = ""
    domain: str = ""
    location: str = ""
    keywords: frozenset = frozenset()
    summary: str = ""
    case_refs: tuple = ()
    tokens: int = 0

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValidationError(f"Narrative outcome must be one of {', '.join(OUTCOMES)}")
        object.__setattr__(self, "keywords", normalize_keywords(self.keywords))
        object.__setattr__(self, "case_refs", tuple(self.case_refs))

    def to_payload(self):
        return {
            "id": self.id,
            "cycle_id": self.cycle_id,
            "timestamp": self.timestamp,
            "outcome": self.outcome,
            "intent": self.intent,
            "domain": self.domain,
            "location": self.location,
            "keywords": sorted(self.keywords),
            "summary": self.summary,
            "case_refs": list(self.case_refs),
            "tokens": self.tokens,
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(
            id=payload["id"],
            cycle_id=payload.get("cycle_id", ""),
            timestamp=float(payload["timestamp"]),
            outcome=payload["outcome"],
            intent=payload.get("intent", ""),
            domain=payload.get("domain", ""),
            location=payload.get("location", ""),
            keywords=frozenset(payload.get("keywords", ())),
            summary=payload.get("summary", ""),
            case_refs=tuple(payload.get("case_refs", ())),
            tokens=int(payload.get("tokens", 0)),
        )


@dataclass(frozen=True)
class Thread:
    id: str
    title: str
    location: str
    domain: str
    keywords: frozenset = frozenset()
    entry_ids: tuple = field(default=())
    last_active: float = 0.0

    def to_payload(self):
        return {
            "id": self.id,
            "title": self.title,
            "location": self.location,
            "domain": self.domain,
            "keywords": sorted(self.keywords),
            "entry_ids": list(self.entry_ids),
            "last_active": self.last_active,
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(
            id=payload["id"],
            title=payload.get("title", ""),
            location=payload.get("location", ""),
            domain=payload.get("domain", ""),
            keywords=frozenset(payload.get("keywords", ())),
            entry_ids=tuple(payload.get("entry_ids", ())),
            last_active=float(payload.get("last_active", 0.0)),
        )


def thread_score(entry, thread):
    """
    Overlap score: 3 for shared location, 2 for shared domain, 1 per shared keyword (capped).
    """
    score = 0
    if entry.location and entry.location == thread.location:
        score += THREAD_WEIGHTS["location"]
    if entry.domain and entry.domain == thread.domain:
        score += THREAD_WEIGHTS["domain"]
    shared = len(set(entry.keywords) & set(thread.keywords))
    score += THREAD_WEIGHTS["keywords"] * min(shared, THREAD_KEYWORD_CAP)
    return score


def assign_thread(entry, threads, threshold=THREAD_THRESHOLD):
    """
    Choose the thread a narrative entry continues.

    Args:
        entry (NarrativeEntry): The new entry.
        threads (list): Existing threads.
        threshold (int): Minimum overlap score.

    Returns:
        str: The best thread's id, or NEW_THREAD when none reaches the threshold.
    """
    best: Optional[Thread] = None
    best_key = None
    for thread in threads:
        score = thread_score(entry, thread)
        if score < threshold:
            continue
        # Ties go to the most recently active thread
        key = (score, thread.last_active)
        if best_key is None or key > best_key:
            best, best_key = thread, key
    return best.id if best else NEW_THREAD


def thread_entries(entries, threshold=THREAD_THRESHOLD):
    """
    Fold narrative entries, in order, into threads.

    Returns:
        list: Threads in creation order.
    """
    threads = []
    for entry in entries:
        target = assign_thread(entry, threads, threshold)
        if target == NEW_THREAD:
            threads.append(Thread(
                id=f"thread-{len(threads) + 1}",
                title=entry.intent or entry.summary,
                location=entry.location,
                domain=entry.domain,
                keywords=frozenset(entry.keywords),
                entry_ids=(entry.id,),
                last_active=entry.timestamp,
            ))
            continue
        index = next(i for i, thread in enumerate(threads) if thread.id == target)
        thread = threads[index]
        threads[index] = replace(
            thread,
            keywords=frozenset(thread.keywords | entry.keywords),
            entry_ids=thread.entry_ids + (entry.id,),
            last_active=max(thread.last_active, entry.timestamp),
        )
    return threads


def record_entry(memory, entry):
    return memory.append("narrative", entry.to_payload(), entry.timestamp)


def replay_narrative(memory, date_from=None, date_to=None):
    return [
        NarrativeEntry.from_payload(record.payload)
        for record in memory.replay("narrative", date_from, date_to).records
    ]
