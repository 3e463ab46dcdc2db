from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from benchmark.metrics import precision_at_k, reciprocal_rank, summarize_scores
from cbr.embedding import HashingEmbeddingProvider
from cbr.models import SIGNAL_NAMES, RetrievalConfig
from cbr.signals import (
    case_fields,
    case_tokens,
    domain_score,
    field_score,
    index_score,
    query_fields,
    recency_score,
    utility_score,
)
from config import BENCH_BOOTSTRAP, BENCH_CURVE_SIZES, BENCH_EMBEDDING_DIM, BENCH_SEED, RETRIEVAL_K
from utils.jsonlHelper import dumps_record
from utils.textHelper import tokenize

logger = logging.getLogger(__name__)

RANDOM = "random"


def standard_configs(k=RETRIEVAL_K, embedding_dim=BENCH_EMBEDDING_DIM):
    """
    The compared configurations; None marks the random baseline.
    """
    return {
        "hybrid": RetrievalConfig(k=k, embedding_dim=embedding_dim),
        "dense-only": RetrievalConfig.single_signal("embedding", k=k, embedding_dim=embedding_dim),
        "index-only": RetrievalConfig.single_signal("index", k=k, embedding_dim=embedding_dim),
        "no-embed": RetrievalConfig.without("embedding", k=k, embedding_dim=embedding_dim),
        RANDOM: None,
    }


@dataclass
class SignalTable:
    """
    Every signal of every (query, case) pair, shape (queries, cases, signals).
    """
    values: np.ndarray
    created_at: np.ndarray
    id_order: np.ndarray
    case_ids: list


def compute_signals(benchmark, provider=None, half_life_days=None):
    """
    Score all six signals once for the whole benchmark.

    The same signal functions as live retrieval are used; only the
    embedding cosine is batched as a matrix product of unit vectors.

    Returns:
        SignalTable: The signal tensor plus tie-break keys.
    """
    provider = provider or HashingEmbeddingProvider(BENCH_EMBEDDING_DIM)
    half_life_days = half_life_days or RetrievalConfig().recency_half_life_days
    cases, queries = benchmark.cases, benchmark.queries

    case_vectors = np.stack([provider.embed(case.problem) for case in cases])
    query_vectors = np.stack([provider.embed(query.text) for query in queries])
    embedding = np.clip(query_vectors @ case_vectors.T, 0.0, 1.0)

    tokens = [case_tokens(case) for case in cases]
    fields = [case_fields(case) for case in cases]
    recency = [recency_score(case, benchmark.now, half_life_days) for case in cases]
    utility = [utility_score(case) for case in cases]

    values = np.zeros((len(queries), len(cases), len(SIGNAL_NAMES)))
    column = {name: index for index, name in enumerate(SIGNAL_NAMES)}
    for qi, query in enumerate(queries):
        query_tokens = tokenize(query.text)
        qfields = query_fields(query.text)
        for ci, case in enumerate(cases):
            row = values[qi, ci]
            row[column["index"]] = index_score(query_tokens, case, tokens[ci])
            row[column["field"]] = field_score(qfields, case, fields[ci])
            row[column["recency"]] = recency[ci]
            row[column["domain"]] = domain_score(query.domain, case)
            row[column["utility"]] = utility[ci]
        values[qi, :, column["embedding"]] = embedding[qi]

    ids = [case.id for case in cases]
    id_order = np.empty(len(ids), dtype=int)
    id_order[np.argsort(np.array(ids))] = np.arange(len(ids))
    logger.info(f"Computed signals for {len(queries)} queries x {len(cases)} cases")
    return SignalTable(values, np.array([case.created_at for case in cases]), id_order, ids)


def rank_cases(table, query_index, config, columns, rng=None):
    """
    Case indices (restricted to `columns`) in retrieval order for one query.

    Ties break on newer created_at, then case id, as in live retrieval.
    """
    if config is None:
        return columns[rng.permutation(columns.size)]
    fused = table.values[query_index][columns] @ np.asarray(config.weight_vector)
    order = np.lexsort((table.id_order[columns], -table.created_at[columns], -fused))
    return columns[order]


def evaluate(benchmark, config, name="hybrid", table=None, case_indices=None,
             n_resamples=BENCH_BOOTSTRAP, seed=BENCH_SEED, k=RETRIEVAL_K):
    """
    P@k, MRR and a bootstrap interval for one configuration.

    Args:
        benchmark (Benchmark): Generated corpus, queries and judgments.
        config (RetrievalConfig | None): None ranks randomly.
        name (str): Label for the report.
        table (SignalTable, optional): Precomputed signals.
        case_indices (Sequence[int], optional): Restrict the case base to these cases.

    Returns:
        MetricsReport: Overall and per-difficulty figures.
    """
    table = table or compute_signals(benchmark)
    columns = np.arange(len(benchmark.cases)) if case_indices is None else np.asarray(case_indices)
    visible = {table.case_ids[index] for index in columns}
    rng = np.random.default_rng(seed)

    precisions, reciprocal_ranks = [], []
    for qi, query in enumerate(benchmark.queries):
        ranked = [table.case_ids[index] for index in rank_cases(table, qi, config, columns, rng)]
        relevant = benchmark.judgments[query.id] & visible
        precisions.append(precision_at_k(ranked, relevant, k))
        reciprocal_ranks.append(reciprocal_rank(ranked, relevant))

    return summarize_scores(
        name, precisions, reciprocal_ranks, [query.difficulty for query in benchmark.queries],
        k=k, n_resamples=n_resamples, seed=seed,
    )


def compare_configs(benchmark, configs=None, table=None, n_resamples=BENCH_BOOTSTRAP, seed=BENCH_SEED):
    """
    One MetricsReport per configuration over identical queries.
    """
    configs = standard_configs() if configs is None else configs
    table = table or compute_signals(benchmark)
    reports = []
    for name, config in configs.items():
        k = config.k if config is not None else RETRIEVAL_K
        report = evaluate(benchmark, config, name, table, n_resamples=n_resamples, seed=seed, k=k)
        logger.info(f"{name}: P@{k}={report.p_at_k:.3f} MRR={report.mrr:.3f}")
        reports.append(report)
    return reports


@dataclass(frozen=True)
class CurvePoint:
    size: int
    p_at_k: float
    p_at_k_hard: float

    def to_record(self):
        return {"size": self.size, "p_at_k": self.p_at_k, "p_at_k_hard": self.p_at_k_hard}


def learning_curve(benchmark, sizes=BENCH_CURVE_SIZES, config=None, table=None, seed=BENCH_SEED):
    """
    P@k overall and on hard queries against growing case-base prefixes.

    Prefixes are nested: every size takes the first cases of one seeded
    shuffle of the corpus. The queries stay the same at every size.

    Returns:
        list: One CurvePoint per size.
    """
    config = config or standard_configs()["hybrid"]
    table = table or compute_signals(benchmark)
    order = np.random.default_rng(seed).permutation(len(benchmark.cases))
    points = []
    for size in sizes:
        size = min(int(size), len(benchmark.cases))
        report = evaluate(benchmark, config, "curve", table, order[:size], n_resamples=1, seed=seed, k=config.k)
        hard = report.by_difficulty.get("hard", {}).get("p_at_k", 0.0)
        points.append(CurvePoint(size, report.p_at_k, hard))
    return points


def relative_gain(points, attribute):
    """
    Relative improvement from the first to the last curve point.
    """
    start, end = getattr(points[0], attribute), getattr(points[-1], attribute)
    if start == 0:
        return float("inf") if end > 0 else 0.0
    return (end - start) / start


def format_reports(reports):
    difficulties = list(reports[0].by_difficulty) if reports else []
    header = f"{'config':<12} {'P@K':>6} {'95% CI':>15} {'MRR':>6}" + "".join(f" {d:>7}" for d in difficulties)
    lines = [header, "-" * len(header)]
    for report in reports:
        ci = f"[{report.p_ci_low:.3f}, {report.p_ci_high:.3f}]"
        row = f"{report.config:<12} {report.p_at_k:>6.3f} {ci:>15} {report.mrr:>6.3f}"
        row += "".join(f" {report.by_difficulty[d]['p_at_k']:>7.3f}" for d in difficulties)
        lines.append(row)
    return "\n".join(lines)


def format_curve(points):
    lines = [f"{'size':>5} {'P@K':>6} {'hard':>6}", "-" * 19]
    lines += [f"{p.size:>5} {p.p_at_k:>6.3f} {p.p_at_k_hard:>6.3f}" for p in points]
    return "\n".join(lines)


def report_lines(items):
    return [dumps_record(item.to_record()) for item in items]
