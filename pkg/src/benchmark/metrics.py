from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from config import BENCH_BOOTSTRAP, BENCH_CONFIDENCE, BENCH_SEED, RETRIEVAL_K


def precision_at_k(ranked_ids, relevant, k=RETRIEVAL_K):
    """
    Relevant hits among the first k results, divided by k.
    """
    return sum(1 for case_id in ranked_ids[:k] if case_id in relevant) / k


def reciprocal_rank(ranked_ids, relevant):
    """
    1 / rank of the first relevant result over the full ranking; 0 when none is relevant.
    """
    for rank, case_id in enumerate(ranked_ids, start=1):
        if case_id in relevant:
            return 1.0 / rank
    return 0.0


def bootstrap_ci(values, n_resamples=BENCH_BOOTSTRAP, seed=BENCH_SEED, confidence=BENCH_CONFIDENCE):
    """
    Percentile bootstrap interval of the mean over resampled queries.

    Args:
        values (Sequence[float]): Per-query scores.
        n_resamples (int): Number of resamples.
        seed (int): Seed of the resampling generator.
        confidence (float): Interval mass.

    Returns:
        tuple: (low, high), widened if needed so it contains the mean.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return 0.0, 0.0
    mean = float(values.mean())
    rng = np.random.default_rng(seed)
    indices = rng.integers(0, values.size, size=(n_resamples, values.size))
    means = values[indices].mean(axis=1)
    tail = (1.0 - confidence) / 2.0 * 100.0
    low, high = np.percentile(means, [tail, 100.0 - tail])
    return min(float(low), mean), max(float(high), mean)


@dataclass
class MetricsReport:
    """
    Retrieval quality of one configuration over a query set.
    """
    config: str
    p_at_k: float
    p_ci_low: float
    p_ci_high: float
    mrr: float
    n_queries: int
    k: int = RETRIEVAL_K
    by_difficulty: dict = field(default_factory=dict)

    def to_record(self):
        return {
            "config": self.config,
            "k": self.k,
            "n_queries": self.n_queries,
            "p_at_k": self.p_at_k,
            "p_ci_low": self.p_ci_low,
            "p_ci_high": self.p_ci_high,
            "mrr": self.mrr,
            "by_difficulty": self.by_difficulty,
        }


def summarize_scores(config_name, precisions, reciprocal_ranks, difficulties, k=RETRIEVAL_K,
                     n_resamples=BENCH_BOOTSTRAP, seed=BENCH_SEED):
    """
    Aggregate per-query scores into a MetricsReport.

    Args:
        config_name (str): Label of the configuration.
        precisions (Sequence[float]): P@k per query.
        reciprocal_ranks (Sequence[float]): Reciprocal rank per query.
        difficulties (Sequence[str]): Difficulty label per query.

    Returns:
        MetricsReport: Overall figures with CI plus per-difficulty P@k and MRR.
    """
    precisions = np.asarray(precisions, dtype=float)
    reciprocal_ranks = np.asarray(reciprocal_ranks, dtype=float)
    labels = np.asarray(difficulties)
    low, high = bootstrap_ci(precisions, n_resamples, seed)

    by_difficulty = {}
    for label in dict.fromkeys(difficulties):
        mask = labels == label
        by_difficulty[label] = {
            "p_at_k": float(precisions[mask].mean()),
            "mrr": float(reciprocal_ranks[mask].mean()),
            "n_queries": int(mask.sum()),
        }

    return MetricsReport(
        config=config_name,
        p_at_k=float(precisions.mean()) if precisions.size else 0.0,
        p_ci_low=low,
        p_ci_high=high,
        mrr=float(reciprocal_ranks.mean()) if reciprocal_ranks.size else 0.0,
        n_queries=int(precisions.size),
        k=k,
        by_difficulty=by_difficulty,
    )
