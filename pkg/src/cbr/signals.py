"""
The six retrieval signals. Each returns a score in [0, 1].
"""
from __future__ import annotations

import logging

from cbr.embedding import cosine
from config import FIELD_WEIGHTS
from utils.errors import ValidationError
from utils.textHelper import jaccard, token_set
from utils.timeHelper import age_days

logger = logging.getLogger(__name__)


def case_tokens(case):
    return token_set(case.problem) | set(case.keywords)


def index_score(query_tokens, case, tokens=None):
    """
    Fraction of the query's distinct tokens found in the case's problem or keywords.

    `tokens` may carry a precomputed case_tokens(case).
    """
    query = set(query_tokens)
    if not query:
        return 0.0
    tokens = case_tokens(case) if tokens is None else tokens
    return len(query & tokens) / len(query)


def embedding_score(query, case, provider):
    """
    Cosine similarity of query and case problem embeddings, clamped to [0, 1].

    Raises:
        Exception: Whatever the provider raises; retrieve() degrades it to 0.
    """
    similarity = cosine(provider.embed(query), provider.embed(case.problem))
    return min(1.0, max(0.0, similarity))


def query_fields(text):
    # A free-text query is compared against every case field
    tokens = token_set(text)
    return {"problem": tokens, "keywords": tokens, "solution": tokens}


def case_fields(case):
    return {
        "problem": token_set(case.problem),
        "keywords": set(case.keywords),
        "solution": token_set(case.solution),
    }


def field_score(fields, case, target=None):
    """
    Weighted per-field Jaccard between query fields and a case.

    Args:
        fields (dict): Token sets keyed by problem, keywords and solution.
        case (CbrCase): The candidate case.
        target (dict, optional): Precomputed case_fields(case).

    Returns:
        float: sum of FIELD_WEIGHTS[f] * J(query[f], case[f]).
    """
    target = case_fields(case) if target is None else target
    return sum(
        weight * jaccard(fields.get(name, set()), target[name])
        for name, weight in FIELD_WEIGHTS.items()
    )


def recency_score(case, now, half_life_days):
    """
    Half-life decay of a case's age: 2 ** (-age_days / half_life_days).

    Raises:
        ValidationError: If the case is newer than `now`.
    """
    age = age_days(case.created_at, now)
    if age < 0:
        raise ValidationError(f"Case {case.id} is dated after the query time")
    return 2.0 ** (-age / half_life_days)


def domain_score(query_domain, case):
    if not query_domain:
        return 0.0
    return 1.0 if query_domain == case.domain else 0.0


def utility_score(case):
    # Laplace-smoothed success ratio
    return (case.success_count + 1) / (case.retrieval_count + 2)


def case_similarity(a, b):
    """
    Symmetric weighted field similarity between two cases.

    Fields empty on both sides count as identical.
    """
    fields_a, fields_b = case_fields(a), case_fields(b)
    return sum(
        weight * jaccard(fields_a[name], fields_b[name], empty=1.0)
        for name, weight in FIELD_WEIGHTS.items()
    )
