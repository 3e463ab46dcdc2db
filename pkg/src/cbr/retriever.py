from __future__ import annotations

import logging

from cbr.embedding import HashingEmbeddingProvider
from cbr.models import SIGNAL_NAMES, Query, RetrievalConfig, ScoredCase
from cbr.signals import (
    domain_score,
    embedding_score,
    field_score,
    index_score,
    query_fields,
    recency_score,
    utility_score,
)
from utils.textHelper import tokenize
from utils.timeHelper import now_ts

logger = logging.getLogger(__name__)


def score_case(query, case, config, provider, now):
    """
    Compute the six signals of one case for a query.

    An embedding failure degrades that signal to 0 instead of aborting.
    A case dated after the query time (clock skew) is scored as brand new
    and marked degraded.

    Returns:
        tuple: (signals dict, degraded flag).
    """
    degraded = False
    try:
        embedding = embedding_score(query.text, case, provider)
    except Exception as e:
        logger.warning(f"Embedding signal failed for case {case.id}: {str(e)}")
        embedding = 0.0
        degraded = True
    if case.created_at > now:
        logger.warning(f"Case {case.id} is dated after the query time, scoring recency as 1.0")
        recency = 1.0
        degraded = True
    else:
        recency = recency_score(case, now, config.recency_half_life_days)
    signals = {
        "index": index_score(tokenize(query.text), case),
        "embedding": embedding,
        "field": field_score(query_fields(query.text), case),
        "recency": recency,
        "domain": domain_score(query.domain, case),
        "utility": utility_score(case),
    }
    return signals, degraded


def fuse(signals, config):
    return sum(config.weights[name] * signals[name] for name in SIGNAL_NAMES)


def rank_key(fused, case):
    # Higher fused first, then newer, then lexicographic id
    return (-fused, -case.created_at, case.id)


def retrieve(query, cases, config=None, provider=None, now=None):
    """
    Rank cases for a query by weighted fusion of the six signals.

    Args:
        query (Query | str): Query text with optional domain.
        cases (Iterable[CbrCase]): The case base snapshot.
        config (RetrievalConfig, optional): Weights, K and half-life.
        provider (EmbeddingProvider, optional): Defaults to the hashing provider.
        now (float, optional): Query time in UTC seconds; defaults to the clock.

    Returns:
        list: At most config.k ScoredCase entries, best first.
    """
    if isinstance(query, str):
        query = Query(query)
    config = config or RetrievalConfig()
    provider = provider or HashingEmbeddingProvider(config.embedding_dim)
    now = now_ts() if now is None else now

    scored = []
    for case in cases:
        signals, degraded = score_case(query, case, config, provider, now)
        fused = fuse(signals, config)
        scored.append((rank_key(fused, case), ScoredCase(case.id, signals, fused, degraded)))

    scored.sort(key=lambda item: item[0])
    results = [entry for _, entry in scored[:config.k]]
    if any(entry.degraded for entry in results):
        logger.warning("Retrieval ran with a degraded signal")
    return results


def record_outcome(case, success):
    """
    Count one more retrieval of a case, and a success when it helped.

    Returns:
        CbrCase: The updated case; the input is left unchanged.
    """
    return case.evolve(
        retrieval_count=case.retrieval_count + 1,
        success_count=case.success_count + (1 if success else 0),
    )
