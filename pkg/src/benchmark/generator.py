"""
Seeded synthetic corpus, queries and relevance judgments for the retrieval benchmark.

Every (domain, topic) pair owns a handful of frequent ("core") and
infrequent ("rare") pseudo-word tokens; each topic slot also owns a pool of
ambiguous tokens shared by all domains. Tokens are a four-syllable stem plus
a suffix, and paraphrased queries swap the suffix, so a paraphrase shares
most of its character trigrams with the original token but never matches it
exactly.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from cbr.models import CbrCase, Outcome
from config import (
    BENCH_AMBIGUOUS_TOKENS,
    BENCH_CASES,
    BENCH_CORE_TOKENS,
    BENCH_DIFFICULTY_MIX,
    BENCH_DOMAIN_NAMES,
    BENCH_DOMAINS,
    BENCH_EPOCH,
    BENCH_MAX_AGE_DAYS,
    BENCH_MIN_OVERLAP,
    BENCH_MIN_RELEVANT,
    BENCH_QUERIES,
    BENCH_RARE_TOKENS,
    BENCH_RETRY_CAP,
    BENCH_SEED,
    BENCH_TOPICS,
)
from utils.errors import BallastError, ValidationError
from utils.jsonlHelper import dumps_record
from utils.timeHelper import SECONDS_PER_DAY, from_iso

logger = logging.getLogger(__name__)

DIFFICULTIES = ("easy", "medium", "hard")

SYLLABLES = (
    "ba", "ce", "di", "fo", "gu", "ha", "je", "ki", "lo", "mu",
    "na", "pe", "ri", "so", "tu", "va", "we", "xi", "yo", "zu",
)
SUFFIXES = ("s", "ed", "er", "ing", "ion", "al")

# Everyday words that only ever appear in solution text
FILLER_WORDS = (
    "issue", "error", "request", "update", "check", "result", "review", "change",
    "process", "status", "report", "fixed", "applied", "confirmed", "verified", "handled",
    "resolved", "noted", "followed", "restarted", "retried", "adjusted", "cleared", "logged",
)


@dataclass(frozen=True)
class SyntheticSpec:
    n_cases: int = BENCH_CASES
    n_domains: int = BENCH_DOMAINS
    n_queries: int = BENCH_QUERIES
    difficulty_mix: dict = field(default_factory=lambda: dict(BENCH_DIFFICULTY_MIX))
    seed: int = BENCH_SEED
    topics: int = BENCH_TOPICS
    core_tokens: int = BENCH_CORE_TOKENS
    rare_tokens: int = BENCH_RARE_TOKENS
    ambiguous_tokens: int = BENCH_AMBIGUOUS_TOKENS
    min_relevant: int = BENCH_MIN_RELEVANT
    retry_cap: int = BENCH_RETRY_CAP

    def __post_init__(self):
        if set(self.difficulty_mix) - set(DIFFICULTIES):
            raise ValidationError(f"difficulty_mix keys must be among {', '.join(DIFFICULTIES)}")
        if sum(self.difficulty_mix.values()) != self.n_queries:
            raise ValidationError("difficulty counts must sum to n_queries")
        if self.n_cases < 1 or self.n_domains < 1 or self.topics < 1:
            raise ValidationError("n_cases, n_domains and topics must be positive")
        if self.core_tokens < 3 or self.rare_tokens < 2 or self.ambiguous_tokens < 3:
            raise ValidationError("token pools are too small to build queries")

    @classmethod
    def scaled(cls, n_cases=BENCH_CASES, n_queries=BENCH_QUERIES, seed=BENCH_SEED):
        """
        Spec with the default difficulty proportions scaled to `n_queries`.
        """
        total = sum(BENCH_DIFFICULTY_MIX.values())
        mix = {name: count * n_queries // total for name, count in BENCH_DIFFICULTY_MIX.items()}
        mix["easy"] += n_queries - sum(mix.values())
        return cls(n_cases=n_cases, n_queries=n_queries, difficulty_mix=mix, seed=seed)

    def domain_names(self):
        names = list(BENCH_DOMAIN_NAMES[:self.n_domains])
        names += [f"domain{index}" for index in range(len(names), self.n_domains)]
        return names


@dataclass(frozen=True)
class RelevanceRule:
    min_keyword_overlap: int = BENCH_MIN_OVERLAP

    def relevant(self, query, case):
        return (
            query.domain == case.domain
            and len(query.keywords & case.keywords) >= self.min_keyword_overlap
        )


@dataclass(frozen=True)
class BenchQuery:
    """
    A benchmark query. `keywords` holds the base forms the judgment is made on;
    the retrieval engine only ever sees `text` and `domain`.
    """
    id: str
    text: str
    domain: str
    difficulty: str
    keywords: frozenset
    anchor_id: str

    def to_record(self):
        return {
            "id": self.id,
            "text": self.text,
            "domain": self.domain,
            "difficulty": self.difficulty,
            "keywords": sorted(self.keywords),
            "anchor_id": self.anchor_id,
        }


@dataclass
class TopicVocabulary:
    core: list
    rare: list


@dataclass
class Vocabulary:
    """
    Token pools keyed by (domain, topic) plus the per-topic ambiguous pools.
    """
    topics: dict
    ambiguous: dict
    stems: dict

    def variant(self, token, rng):
        stem, suffix = self.stems[token]
        choices = [other for other in SUFFIXES if other != suffix]
        return stem + choices[int(rng.integers(len(choices)))]


@dataclass
class Benchmark:
    spec: SyntheticSpec
    cases: list
    queries: list
    judgments: dict
    now: float

    def relevant_ids(self, query_id, case_ids=None):
        relevant = self.judgments[query_id]
        return relevant if case_ids is None else relevant & set(case_ids)

    def to_lines(self):
        """
        Corpus, queries and judgments as line records, in generation order.
        """
        lines = [dumps_record({"kind": "case", **case.to_record()}) for case in self.cases]
        lines += [dumps_record({"kind": "query", **query.to_record()}) for query in self.queries]
        lines += [
            dumps_record({"kind": "judgment", "query_id": query.id, "relevant": sorted(self.judgments[query.id])})
            for query in self.queries
        ]
        return lines

    def write(self, path):
        with open(path, "w", encoding="utf-8") as f:
            for line in self.to_lines():
                f.write(line + "\n")


def _draw(rng, pool, count):
    picked = rng.choice(len(pool), size=count, replace=False)
    return [pool[int(index)] for index in picked]


def _count(rng, low, high):
    return int(rng.integers(low, high + 1))


def build_vocabulary(spec, rng):
    domains = spec.domain_names()
    seen_stems, stems = set(), {}

    def fresh_token():
        while True:
            stem = "".join(SYLLABLES[int(i)] for i in rng.integers(len(SYLLABLES), size=4))
            if stem not in seen_stems:
                seen_stems.add(stem)
                token = stem + SUFFIXES[int(rng.integers(len(SUFFIXES)))]
                stems[token] = (stem, token[len(stem):])
                return token

    topics = {}
    for domain in domains:
        for topic in range(spec.topics):
            core = [fresh_token() for _ in range(spec.core_tokens)]
            rare = [fresh_token() for _ in range(spec.rare_tokens)]
            topics[(domain, topic)] = TopicVocabulary(core, rare)
    ambiguous = {topic: [fresh_token() for _ in range(spec.ambiguous_tokens)] for topic in range(spec.topics)}
    return Vocabulary(topics, ambiguous, stems)


def _make_case(index, domain, topic, vocabulary, rng, now):
    pool = vocabulary.topics[(domain, topic)]
    keywords = (
        _draw(rng, pool.core, _count(rng, 2, 3))
        + _draw(rng, pool.rare, _count(rng, 1, 2))
        + _draw(rng, vocabulary.ambiguous[topic], _count(rng, 1, 3))
    )
    problem = list(keywords)
    rng.shuffle(problem)
    solution = _draw(rng, list(FILLER_WORDS), _count(rng, 3, 5)) + _draw(rng, keywords, _count(rng, 1, 2))
    rng.shuffle(solution)
    age_days = float(rng.uniform(0.0, BENCH_MAX_AGE_DAYS))
    return CbrCase(
        id=f"case-{index:04d}",
        problem=" ".join(problem),
        solution=" ".join(solution),
        outcome=Outcome.SUCCESS,
        domain=domain,
        keywords=frozenset(keywords),
        created_at=now - age_days * SECONDS_PER_DAY,
    )


def _query_tokens(difficulty, anchor, topic, vocabulary, rng):
    """
    Base-form keywords and surface tokens of one query built from an anchor case.
    """
    pool = vocabulary.topics[(anchor.domain, topic)]
    if difficulty == "easy":
        base = _draw(rng, pool.core, 3)
        return base, list(base)
    if difficulty == "medium":
        base = _draw(rng, pool.core, 3)
        return base, [vocabulary.variant(token, rng) for token in base] + _draw(rng, list(FILLER_WORDS), 2)
    rare = sorted(anchor.keywords & set(pool.rare))
    if len(rare) < 2:
        rare = rare + _draw(rng, [token for token in pool.rare if token not in rare], 2 - len(rare))
    ambiguous = _draw(rng, vocabulary.ambiguous[topic], 2)
    base = rare[:2] + ambiguous
    return base, [vocabulary.variant(token, rng) for token in rare[:2]] + ambiguous


def generate(spec=None):
    """
    Build the corpus, queries and judgments for a spec.

    Identical specs (seed included) produce identical artifacts.

    Args:
        spec (SyntheticSpec, optional): Sizes, mix and seed.

    Returns:
        Benchmark: Cases, queries and the relevant case ids per query.

    Raises:
        BallastError: If some query cannot be given a relevant case within the retry cap.
    """
    spec = spec or SyntheticSpec()
    rng = np.random.default_rng(spec.seed)
    now = from_iso(BENCH_EPOCH)
    vocabulary = build_vocabulary(spec, rng)
    rule = RelevanceRule()

    slots = [(domain, topic) for domain in spec.domain_names() for topic in range(spec.topics)]
    cases, by_slot = [], {}
    for index in range(spec.n_cases):
        # Round-robin keeps domains balanced to within one case
        slot = slots[index % len(slots)]
        case = _make_case(index, *slot, vocabulary, rng, now)
        cases.append(case)
        by_slot.setdefault(slot, []).append(case)

    difficulties = [name for name in DIFFICULTIES for _ in range(spec.difficulty_mix.get(name, 0))]
    queries, judgments = [], {}
    for number, difficulty in enumerate(difficulties):
        query = None
        relevant = set()
        for _ in range(spec.retry_cap):
            domain, topic = slots[int(rng.integers(len(slots)))]
            candidates = by_slot.get((domain, topic))
            if not candidates:
                continue
            anchor = candidates[int(rng.integers(len(candidates)))]
            base, surface = _query_tokens(difficulty, anchor, topic, vocabulary, rng)
            rng.shuffle(surface)
            candidate = BenchQuery(f"q-{number:03d}", " ".join(surface), domain, difficulty, frozenset(base), anchor.id)
            matches = {case.id for case in cases if rule.relevant(candidate, case)}
            if len(matches) > len(relevant):
                query, relevant = candidate, matches
            if len(relevant) >= spec.min_relevant:
                break
        if query is None or not relevant:
            raise BallastError(f"Query {number} has no relevant case after {spec.retry_cap} attempts")
        queries.append(query)
        judgments[query.id] = relevant

    logger.info(f"Generated {len(cases)} cases and {len(queries)} queries (seed {spec.seed})")
    return Benchmark(spec, cases, queries, judgments, now)


def judge(benchmark, rule=None):
    """
    Re-derive every judgment from the relevance rule.
    """
    rule = rule or RelevanceRule()
    return {
        query.id: {case.id for case in benchmark.cases if rule.relevant(query, case)}
        for query in benchmark.queries
    }


def dumps_lines(benchmark):
    return "\n".join(benchmark.to_lines()) + "\n"


def load_lines(text):
    """
    Parse line records written by Benchmark.to_lines back into dictionaries by kind.
    """
    parsed = {"case": [], "query": [], "judgment": []}
    for line in text.splitlines():
        if line.strip():
            record = json.loads(line)
            parsed[record.pop("kind")].append(record)
    return parsed
