"""Tests for case-based retrieval: the six signals, fusion and ranking,
outcome tracking and case similarity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cbr import (
    SIGNAL_NAMES,
    CbrCase,
    HashingEmbeddingProvider,
    Outcome,
    Query,
    RetrievalConfig,
    case_similarity,
    domain_score,
    embedding_score,
    field_score,
    fuse,
    index_score,
    query_fields,
    recency_score,
    record_outcome,
    retrieve,
    utility_score,
)
from utils.errors import ValidationError
from utils.textHelper import tokenize

NOW = 1_774_794_600.0
DAY = 86400.0

WORDS = ["flask", "port", "forwarding", "bug", "docker", "timeout", "retry", "email", "draft", "calendar"]


def make_case(case_id="c1", problem="flask port forwarding bug", solution="restart the proxy",
              domain="coding", keywords=("flask", "proxy"), age_days=0.0, **kwargs):
    return CbrCase(case_id, problem, solution, Outcome.SUCCESS, domain, frozenset(keywords),
                   created_at=NOW - age_days * DAY, **kwargs)


class _AxisProvider:
    # Each distinct text gets its own basis vector
    dim = 8

    def __init__(self):
        self.seen = {}

    def embed(self, text):
        index = self.seen.setdefault(text, len(self.seen))
        vector = np.zeros(self.dim)
        vector[index] = 1.0
        return vector


class _BrokenProvider:
    dim = 8

    def embed(self, text):
        raise RuntimeError("embedding backend offline")


cases_strategy = st.builds(
    make_case,
    case_id=st.text("abcdef0123", min_size=1, max_size=6),
    problem=st.lists(st.sampled_from(WORDS), max_size=6).map(" ".join),
    solution=st.lists(st.sampled_from(WORDS), max_size=6).map(" ".join),
    domain=st.sampled_from(["coding", "email"]),
    keywords=st.lists(st.sampled_from(WORDS), max_size=4),
    age_days=st.floats(-1, 400),
)


class TestTokenize:

    def test_basic(self):
        assert tokenize("Flask port-forwarding bug") == ["flask", "port", "forwarding", "bug"]

    def test_empty(self):
        assert tokenize("") == []

    def test_length_filter_keeps_duplicates_rule(self):
        assert tokenize("A a AA") == ["aa"]


class TestSignals:

    def test_index_full_overlap(self):
        assert index_score(["flask", "bug"], make_case()) == 1.0

    def test_index_disjoint(self):
        assert index_score(["calendar"], make_case()) == 0.0

    def test_index_half(self):
        assert index_score(["flask", "bug", "calendar", "email"], make_case()) == 0.5

    def test_embedding_identical_text(self):
        provider = HashingEmbeddingProvider(256)
        case = make_case()
        assert embedding_score(case.problem, case, provider) == pytest.approx(1.0)

    def test_embedding_orthogonal_clamps_to_zero(self):
        assert embedding_score("something else", make_case(), _AxisProvider()) == 0.0

    def test_embedding_paraphrase_in_open_interval(self):
        provider = HashingEmbeddingProvider(256)
        score = embedding_score("flask ports forwarded bugs", make_case(), provider)
        assert 0.0 < score < 1.0

    def test_field_identical(self):
        case = make_case(problem="aa bb", solution="aa bb", keywords=("aa", "bb"))
        assert field_score(query_fields("aa bb"), case) == pytest.approx(1.0)

    def test_field_disjoint(self):
        assert field_score(query_fields("calendar"), make_case()) == 0.0

    def test_field_problem_only(self):
        case = make_case(problem="aa bb cc dd", solution="yy", keywords=("zz",))
        fields = {"problem": {"aa", "bb"}, "keywords": set(), "solution": set()}
        assert field_score(fields, case) == pytest.approx(0.25)

    @pytest.mark.parametrize("age,expected", [(0, 1.0), (30, 0.5), (60, 0.25)])
    def test_recency_half_life(self, age, expected):
        assert recency_score(make_case(age_days=age), NOW, 30.0) == pytest.approx(expected)

    def test_recency_future_case(self):
        with pytest.raises(ValidationError):
            recency_score(make_case(age_days=-1), NOW, 30.0)

    def test_domain(self):
        case = make_case(domain="coding")
        assert domain_score("coding", case) == 1.0
        assert domain_score("email", case) == 0.0
        assert domain_score(None, case) == 0.0

    @pytest.mark.parametrize("retrievals,successes,expected", [(0, 0, 0.5), (10, 10, 11 / 12), (10, 0, 1 / 12)])
    def test_utility(self, retrievals, successes, expected):
        case = make_case(retrieval_count=retrievals, success_count=successes)
        assert utility_score(case) == pytest.approx(expected)


class TestRetrieve:

    def test_single_case_fusion(self):
        case = make_case()
        config = RetrievalConfig()
        [scored] = retrieve(Query(case.problem, "coding"), [case], config, now=NOW)
        f = field_score(query_fields(case.problem), case)
        expected = 0.25 + 0.40 + 0.10 * f + 0.05 + 0.10 + 0.10 * 0.5
        assert scored.fused == pytest.approx(expected)

    def test_empty_case_base(self):
        assert retrieve("anything", [], now=NOW) == []

    def test_ties_are_broken_by_id(self):
        cases = [make_case(case_id=f"c{i:02d}") for i in reversed(range(10))]
        results = retrieve(Query("flask bug", "coding"), cases, RetrievalConfig(k=4), now=NOW)
        assert [r.case_id for r in results] == ["c00", "c01", "c02", "c03"]

    def test_newer_case_wins_tie(self):
        cases = [make_case(case_id="old", age_days=0.0), make_case(case_id="new", age_days=0.0)]
        cases[0] = cases[0].evolve(created_at=NOW - 10.0)
        config = RetrievalConfig(weights={name: (1.0 if name == "index" else 0.0) for name in SIGNAL_NAMES})
        results = retrieve("flask", cases, config, now=NOW)
        assert results[0].case_id == "new"

    def test_broken_embedding_degrades(self):
        results = retrieve(Query("flask bug", "coding"), [make_case()], provider=_BrokenProvider(), now=NOW)
        assert results[0].degraded
        assert results[0].signals["embedding"] == 0.0

    def test_future_dated_case_degrades(self):
        skewed = make_case(case_id="f").evolve(created_at=NOW + 5.0)
        [scored] = retrieve(Query("flask bug", "coding"), [skewed], now=NOW)
        assert scored.degraded
        assert scored.signals["recency"] == 1.0

    def test_config_weights_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            RetrievalConfig(weights={name: 0.5 for name in SIGNAL_NAMES})

    def test_without_renormalizes(self):
        config = RetrievalConfig.without("embedding")
        assert config.weights["embedding"] == 0.0
        assert math.fsum(config.weights.values()) == pytest.approx(1.0)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(cases_strategy, max_size=12), st.lists(st.sampled_from(WORDS), min_size=1, max_size=4))
    def test_fusion_is_linear_and_bounded(self, cases, words):
        config = RetrievalConfig()
        results = retrieve(Query(" ".join(words), "coding"), cases, config, now=NOW)
        assert len(results) <= config.k
        for scored in results:
            assert all(0.0 <= value <= 1.0 for value in scored.signals.values())
            assert 0.0 <= scored.fused <= 1.0 + 1e-12
            assert abs(scored.fused - fuse(scored.signals, config)) < 1e-12
        fused = [scored.fused for scored in results]
        assert fused == sorted(fused, reverse=True)


class TestOutcomes:

    def test_success_then_failure(self):
        once = record_outcome(make_case(), True)
        assert (once.retrieval_count, once.success_count) == (1, 1)
        assert utility_score(once) == pytest.approx(2 / 3)
        twice = record_outcome(once, False)
        assert (twice.retrieval_count, twice.success_count) == (2, 1)
        assert utility_score(twice) == pytest.approx(0.5)

    def test_counters_validated(self):
        with pytest.raises(ValidationError):
            make_case(retrieval_count=1, success_count=2)


class TestCaseSimilarity:

    def test_identical(self):
        assert case_similarity(make_case(), make_case(case_id="c2")) == pytest.approx(1.0)

    def test_disjoint(self):
        other = make_case(problem="calendar invite", solution="email draft", keywords=("calendar",))
        assert case_similarity(make_case(), other) == 0.0

    def test_different_solutions(self):
        a = make_case(solution="restart the proxy")
        b = make_case(case_id="c2", solution="restart docker")
        expected = 0.8 + 0.2 * (1 / 4)
        assert case_similarity(a, b) == pytest.approx(expected)

    @given(cases_strategy, cases_strategy)
    def test_symmetric(self, a, b):
        assert case_similarity(a, b) == pytest.approx(case_similarity(b, a))
