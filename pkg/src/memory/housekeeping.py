from __future__ import annotations

import logging
from dataclasses import dataclass

from cbr.models import CbrCase, Outcome
from cbr.signals import case_similarity
from config import DEDUP_THRESHOLD, PRUNE_MAX_CONFIDENCE, PRUNE_MIN_AGE_DAYS
from utils.timeHelper import age_days

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrunePolicy:
    min_age_days: float = PRUNE_MIN_AGE_DAYS
    max_confidence: float = PRUNE_MAX_CONFIDENCE


def _merge(survivor, absorbed):
    pitfalls = [p for p in (survivor.pitfalls, absorbed.pitfalls) if p]
    return survivor.evolve(
        keywords=frozenset(survivor.keywords | absorbed.keywords),
        retrieval_count=survivor.retrieval_count + absorbed.retrieval_count,
        success_count=survivor.success_count + absorbed.success_count,
        confidence=max(survivor.confidence, absorbed.confidence),
        pitfalls="\n".join(pitfalls) if pitfalls else None,
    )


def _dedup_pass(ordered, threshold):
    survivors, merges = [], []
    for case in ordered:
        for index, survivor in enumerate(survivors):
            if case_similarity(survivor, case) >= threshold:
                survivors[index] = _merge(survivor, case)
                merges.append((survivor.id, case.id))
                break
        else:
            survivors.append(case)
    return survivors, merges


def dedup_cases(cases, threshold=DEDUP_THRESHOLD):
    """
    Merge near-duplicate cases, newer into older.

    Greedy passes in creation order: each case is compared with the
    survivors so far and absorbed by the first one at or above threshold.
    A merge widens the survivor's keywords, so passes repeat until one
    merges nothing; no surviving pair is then at or above threshold.

    Args:
        cases (list): Case snapshot.
        threshold (float): Similarity at which two cases merge.

    Returns:
        tuple: (surviving cases, merge log of (survivor id, absorbed id)).
    """
    survivors = sorted(cases, key=lambda case: (case.created_at, case.id))
    merges = []
    while True:
        survivors, merged = _dedup_pass(survivors, threshold)
        if not merged:
            break
        merges.extend(merged)
    if merges:
        logger.info(f"Dedup merged {len(merges)} case(s)")
    return survivors, merges


def prune_cases(cases, now, policy=None):
    """
    Drop old, low-confidence failure cases that carry no pitfall notes.

    Returns:
        tuple: (retained cases, ids of removed cases).
    """
    policy = policy or PrunePolicy()
    retained, removed = [], []
    for case in cases:
        if (
            case.outcome is Outcome.FAILURE
            and age_days(case.created_at, now) > policy.min_age_days
            and case.confidence < policy.max_confidence
            and not case.pitfalls
        ):
            removed.append(case.id)
        else:
            retained.append(case)
    if removed:
        logger.info(f"Pruned {len(removed)} case(s)")
    return retained, removed


def replay_cases(memory):
    """
    Fold the cbr_cases store into the current case snapshot.

    Payloads are {"op": "upsert", "case": {...}} or {"op": "remove", "id": ...};
    later records win.

    Returns:
        list: Live cases in first-seen order.
    """
    cases = {}
    for record in memory.replay("cbr_cases").records:
        op = record.payload.get("op", "upsert")
        if op == "remove":
            cases.pop(record.payload["id"], None)
        else:
            case = CbrCase.from_record(record.payload["case"])
            cases[case.id] = case
    return list(cases.values())


def save_case(memory, case, now):
    return memory.append("cbr_cases", {"op": "upsert", "case": case.to_record()}, now)


def run_housekeeping(memory, now, threshold=DEDUP_THRESHOLD, policy=None):
    """
    Dedup then prune the case store, appending the outcome as new records.

    Returns:
        dict: {"merged": [...], "pruned": [...], "remaining": int}.
    """
    cases = replay_cases(memory)
    survivors, merges = dedup_cases(cases, threshold)
    retained, removed = prune_cases(survivors, now, policy)

    absorbed = {absorbed_id for _, absorbed_id in merges}
    survivor_ids = {survivor_id for survivor_id, _ in merges}
    for case in retained:
        if case.id in survivor_ids:
            save_case(memory, case, now)
    for case_id in sorted(absorbed | set(removed)):
        memory.append("cbr_cases", {"op": "remove", "id": case_id}, now)

    return {"merged": merges, "pruned": removed, "remaining": len(retained)}
