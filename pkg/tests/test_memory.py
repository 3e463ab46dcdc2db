"""Tests for the append-only memory stores and everything replayed from them:
facts with read-time decay, narrative threading, case housekeeping and the
cycle log."""

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cbr import CbrCase, Outcome, record_outcome
from memory import (
    NEW_THREAD,
    CycleNode,
    DecayParams,
    FactRecord,
    FactStore,
    MemoryStore,
    NarrativeEntry,
    NodeKind,
    NodeStatus,
    PrunePolicy,
    Thread,
    assign_thread,
    build_tree,
    dedup_cases,
    effective_confidence,
    finalize_cycle,
    pending_anomalies,
    prune_cases,
    record_entry,
    record_node,
    replay_cases,
    replay_narrative,
    replay_nodes,
    resolve_fact_conflicts,
    run_housekeeping,
    save_case,
    thread_entries,
)
from utils.errors import FinalisationError, StoreError, ValidationError
from utils.timeHelper import from_iso

NOW = from_iso("2026-03-29T14:30:00Z")
DAY = 86400.0


def case(case_id, problem="flask port bug", solution="restart proxy", outcome=Outcome.SUCCESS,
         age_days=0.0, confidence=0.5, pitfalls=None, keywords=("flask",), **kwargs):
    return CbrCase(case_id, problem, solution, outcome, "coding", frozenset(keywords), pitfalls,
                   NOW - age_days * DAY, confidence=confidence, **kwargs)


def entry(entry_id, location="", domain="", keywords=(), timestamp=NOW, outcome="success", **kwargs):
    return NarrativeEntry(entry_id, f"cycle-{entry_id}", timestamp, outcome, location=location,
                          domain=domain, keywords=frozenset(keywords), **kwargs)


class TestMemoryStore:

    def test_sequences_start_at_one(self, memory):
        assert memory.append("facts", {"k": 1}, NOW) == 1
        assert memory.append("facts", {"k": 2}, NOW) == 2
        records = memory.replay("facts").records
        assert [(r.sequence, r.payload["k"]) for r in records] == [(1, 1), (2, 2)]

    def test_line_format(self, memory):
        memory.append("narrative", {"id": "n1"}, NOW)
        line = json.loads((memory.memory_dir / "narrative.jsonl").read_text().splitlines()[0])
        assert line == {"v": 1, "store": "narrative", "seq": 1, "ts": "2026-03-29T14:30:00Z", "payload": {"id": "n1"}}

    def test_empty_store(self, memory):
        assert memory.replay("facts").records == []

    def test_unknown_store(self, memory):
        with pytest.raises(ValidationError):
            memory.append("nowhere", {}, NOW)

    def test_sequence_resumes_in_new_session(self, state_dir):
        MemoryStore(state_dir).append("tasks", {"n": 1}, NOW)
        assert MemoryStore(state_dir).append("tasks", {"n": 2}, NOW) == 2

    def test_append_keeps_prefix(self, memory):
        memory.append("comms", {"n": 1}, NOW)
        path = memory.memory_dir / "comms.jsonl"
        before = path.read_bytes()
        memory.append("comms", {"n": 2}, NOW)
        assert path.read_bytes().startswith(before)

    def test_partial_tail_is_skipped(self, memory):
        memory.append("facts", {"n": 1}, NOW)
        path = memory.memory_dir / "facts.jsonl"
        with open(path, "a", encoding="utf-8") as handle:
            handle.write('{"v":1,"store":"fac')
        replayed = memory.replay("facts")
        assert len(replayed.records) == 1
        assert replayed.skipped == 1

    def test_append_after_partial_tail(self, memory):
        memory.append("facts", {"n": 1}, NOW)
        path = memory.memory_dir / "facts.jsonl"
        with open(path, "a", encoding="utf-8") as handle:
            handle.write('{"broken')
        fresh = MemoryStore(memory.state_dir)
        fresh.append("facts", {"n": 2}, NOW)
        assert [r.payload["n"] for r in fresh.replay("facts").records] == [1, 2]

    def test_mid_file_corruption_names_line(self, memory):
        memory.append("facts", {"n": 1}, NOW)
        path = memory.memory_dir / "facts.jsonl"
        text = path.read_text()
        path.write_text("not json\n" + text)
        with pytest.raises(StoreError) as excinfo:
            memory.replay("facts")
        assert excinfo.value.line == 1
        assert "facts.jsonl" in str(excinfo.value)

    def test_cycle_log_rotates_daily(self, memory):
        memory.append("dag_nodes", {"id": "a"}, NOW)
        memory.append("dag_nodes", {"id": "b"}, NOW + DAY)
        files = sorted(p.name for p in memory.cycle_log_dir.iterdir())
        assert files == ["2026-03-29.jsonl", "2026-03-30.jsonl"]
        assert [r.payload["id"] for r in memory.replay("dag_nodes").records] == ["a", "b"]

    def test_date_filter(self, memory):
        memory.append("narrative", {"n": 1}, NOW - 2 * DAY)
        memory.append("narrative", {"n": 2}, NOW)
        assert [r.payload["n"] for r in memory.replay("narrative", date_from="2026-03-28").records] == [2]
        assert memory.replay("narrative", date_to="2026-03-01").records == []

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.dictionaries(st.text(min_size=1, max_size=5), st.integers()), max_size=8))
    def test_replay_reserialize_fixpoint(self, tmp_path_factory, payloads):
        first = MemoryStore(tmp_path_factory.mktemp("first"))
        for payload in payloads:
            first.append("artifacts", payload, NOW)
        replayed = [r.payload for r in first.replay("artifacts").records]
        second = MemoryStore(tmp_path_factory.mktemp("second"))
        for payload in replayed:
            second.append("artifacts", payload, NOW)
        assert [r.payload for r in second.replay("artifacts").records] == replayed == payloads


class TestFacts:

    @pytest.mark.parametrize("age,expected", [(0, 0.8), (30, 0.4), (60, 0.2)])
    def test_decay(self, age, expected):
        fact = FactRecord("k", "v", "persistent", 0.8, NOW - age * DAY)
        assert effective_confidence(fact, NOW) == pytest.approx(expected)

    def test_read_before_creation(self):
        with pytest.raises(ValidationError):
            effective_confidence(FactRecord("k", "v", "persistent", 0.8, NOW + DAY), NOW)

    def test_fresh_beats_confident_old(self):
        fresh = FactRecord("k", "new", "persistent", 0.6, NOW)
        old = FactRecord("k", "old", "persistent", 0.9, NOW - 60 * DAY)
        assert resolve_fact_conflicts([old, fresh], NOW) is fresh

    def test_tie_goes_to_newer(self):
        older = FactRecord("k", "a", "persistent", 0.5, NOW - DAY)
        newer = FactRecord("k", "b", "persistent", 0.5, NOW - DAY + 1)
        params = DecayParams(half_life_days=1e12)
        assert resolve_fact_conflicts([newer, older], NOW, params).value == "b"

    def test_single_fact(self):
        fact = FactRecord("k", "v", "session", 1.0, NOW)
        assert resolve_fact_conflicts([fact], NOW) is fact

    def test_store_never_rewrites(self, memory):
        store = FactStore(memory)
        store.set("city", "Dublin", NOW - 10 * DAY, confidence=0.9)
        store.set("city", "Cork", NOW, confidence=0.9)
        fact, effective = store.get("city", NOW)
        assert fact.value == "Cork"
        assert effective == pytest.approx(0.9)
        assert len(memory.replay("facts").records) == 2

    def test_scope_filter(self, memory):
        store = FactStore(memory)
        store.set("mood", "busy", NOW, scope="session")
        store.set("name", "Ballast", NOW)
        assert store.get("mood", NOW, scope="persistent") is None
        assert [fact.key for fact, _ in store.list(NOW)] == ["mood", "name"]

    def test_invalid_scope(self):
        with pytest.raises(ValidationError):
            FactRecord("k", "v", "forever", 0.5, NOW)

    @given(st.floats(0.0, 1.0), st.floats(0, 3650), st.floats(0, 3650))
    def test_decay_never_increases(self, confidence, age_a, age_b):
        fact = FactRecord("k", "v", "persistent", confidence, NOW)
        young, old = sorted((age_a, age_b))
        assert effective_confidence(fact, NOW + old * DAY) <= effective_confidence(fact, NOW + young * DAY)
        assert 0.0 <= effective_confidence(fact, NOW + old * DAY) <= confidence


class TestThreads:

    def thread(self, thread_id="t1", location="dublin", domain="research", keywords=(), last_active=NOW):
        return Thread(thread_id, "title", location, domain, frozenset(keywords), (), last_active)

    def test_location_and_domain(self):
        assert assign_thread(entry("e", "dublin", "research"), [self.thread()]) == "t1"

    def test_domain_only(self):
        assert assign_thread(entry("e", "cork", "research"), [self.thread()]) == NEW_THREAD

    def test_no_threads(self):
        assert assign_thread(entry("e", "dublin", "research"), []) == NEW_THREAD

    def test_keyword_overlap_is_capped(self):
        many = ("aa", "bb", "cc", "dd", "ee")
        thread = self.thread(location="x", domain="y", keywords=many)
        assert assign_thread(entry("e", keywords=many), [thread]) == NEW_THREAD

    def test_tie_goes_to_most_recent(self):
        threads = [self.thread("old", last_active=NOW - DAY), self.thread("recent", last_active=NOW)]
        assert assign_thread(entry("e", "dublin", "research"), threads) == "recent"

    def test_folding(self):
        entries = [
            entry("e1", "dublin", "research", timestamp=NOW),
            entry("e2", "cork", "email", timestamp=NOW + 1),
            entry("e3", "dublin", "research", timestamp=NOW + 2),
        ]
        threads = thread_entries(entries)
        assert [t.entry_ids for t in threads] == [("e1", "e3"), ("e2",)]
        assert threads[0].last_active == NOW + 2

    def test_invalid_outcome(self):
        with pytest.raises(ValidationError):
            entry("e", outcome="meh")


class TestHousekeeping:

    def test_duplicate_pair_merges(self):
        older = case("a", age_days=2, retrieval_count=3, success_count=2, pitfalls="slow")
        newer = case("b", age_days=1, retrieval_count=1, success_count=1, confidence=0.9, keywords=("proxy",))
        survivors, merges = dedup_cases([newer, older], threshold=0.65)
        assert merges == [("a", "b")]
        [merged] = survivors
        assert merged.id == "a"
        assert (merged.retrieval_count, merged.success_count) == (4, 3)
        assert merged.confidence == 0.9
        assert merged.keywords == frozenset({"flask", "proxy"})
        assert merged.pitfalls == "slow"

    def test_dissimilar_pair_kept(self):
        a = case("a", problem="flask port bug", solution="restart proxy")
        b = case("b", problem="calendar invite", solution="restart proxy", keywords=("calendar",))
        survivors, merges = dedup_cases([a, b])
        assert merges == []
        assert len(survivors) == 2

    def test_widened_survivor_absorbs_earlier_reject(self):
        a = case("a", age_days=3, keywords=("aa", "bb", "cc"))
        x = case("x", age_days=2, keywords=("aa", "bb", "cc", "dd", "ee"))
        b = case("b", age_days=1, keywords=("aa", "bb", "cc", "dd"))
        survivors, merges = dedup_cases([a, x, b])
        assert merges == [("a", "b"), ("a", "x")]
        assert dedup_cases(survivors)[1] == []

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.tuples(st.sampled_from(["flask bug", "flask port bug", "calendar"]),
                              st.sampled_from(["restart", "restart proxy"]),
                              st.frozensets(st.sampled_from(["aa", "bb", "cc", "dd", "ee", "ff"])),
                              st.integers(0, 5)),
                    max_size=10))
    def test_dedup_idempotent(self, specs):
        cases = [case(f"c{i}", problem, solution, age_days=i, keywords=keywords, retrieval_count=uses)
                 for i, (problem, solution, keywords, uses) in enumerate(specs)]
        survivors, _ = dedup_cases(cases)
        again, merges = dedup_cases(survivors)
        assert merges == []
        assert again == survivors
        assert sum(c.retrieval_count for c in survivors) == sum(c.retrieval_count for c in cases)

    def test_prune_old_low_confidence_failure(self):
        doomed = case("a", outcome=Outcome.FAILURE, age_days=40, confidence=0.1)
        retained, removed = prune_cases([doomed], NOW)
        assert (retained, removed) == ([], ["a"])

    def test_prune_keeps_pitfalls(self):
        documented = case("a", outcome=Outcome.FAILURE, age_days=40, confidence=0.1, pitfalls="watch the proxy")
        assert prune_cases([documented], NOW)[1] == []

    def test_prune_keeps_success(self):
        assert prune_cases([case("a", age_days=900, confidence=0.0)], NOW)[1] == []

    def test_prune_policy(self):
        doomed = case("a", outcome=Outcome.FAILURE, age_days=10, confidence=0.1)
        assert prune_cases([doomed], NOW, PrunePolicy(min_age_days=5))[1] == ["a"]

    def test_run_appends_only(self, memory):
        save_case(memory, case("a", age_days=3), NOW - 3 * DAY)
        save_case(memory, case("b", age_days=2), NOW - 2 * DAY)
        save_case(memory, case("c", outcome=Outcome.FAILURE, problem="calendar", keywords=(), age_days=40,
                               confidence=0.1), NOW - 40 * DAY)
        path = memory.memory_dir / "cbr_cases.jsonl"
        before = path.read_bytes()

        outcome = run_housekeeping(memory, NOW)

        assert outcome["merged"] == [("a", "b")]
        assert outcome["pruned"] == ["c"]
        assert outcome["remaining"] == 1
        assert path.read_bytes().startswith(before)
        assert [c.id for c in replay_cases(memory)] == ["a"]

    def test_replay_folds_removals(self, memory):
        save_case(memory, case("a"), NOW)
        memory.append("cbr_cases", {"op": "remove", "id": "a"}, NOW)
        save_case(memory, case("b"), NOW)
        assert [c.id for c in replay_cases(memory)] == ["b"]


class TestOperationSequences:

    KEYS = ("city", "editor", "timezone", "team", "language")
    WORDS = ("flask", "port", "proxy", "docker", "email", "draft")
    OPS = ("fact", "case", "outcome", "narrative", "housekeep")

    def run_ops(self, memory, seed, n_ops):
        rng = np.random.default_rng(seed)
        facts, cases, entries = {}, {}, []
        start = NOW - n_ops * 60.0
        for step in range(n_ops):
            t = start + 60.0 * step
            op = str(rng.choice(self.OPS, p=[0.3, 0.25, 0.2, 0.22, 0.03]))
            if op == "fact":
                confidence = round(float(rng.uniform(0.1, 1.0)), 3)
                fact = FactStore(memory).set(str(rng.choice(self.KEYS)), f"v{step}", t, confidence=confidence)
                facts.setdefault(fact.key, []).append(fact)
            elif op == "case" or (op == "outcome" and not cases):
                keywords = rng.choice(self.WORDS, size=int(rng.integers(1, 4)), replace=False)
                new = CbrCase(f"case-{step}", " ".join(str(w) for w in rng.choice(self.WORDS, size=3)),
                              "restart proxy", Outcome.SUCCESS, "coding", frozenset(str(k) for k in keywords),
                              created_at=t, retrieval_count=int(rng.integers(0, 5)))
                cases[new.id] = new
                save_case(memory, new, t)
            elif op == "outcome":
                case_id = sorted(cases)[int(rng.integers(len(cases)))]
                cases[case_id] = record_outcome(cases[case_id], bool(rng.integers(2)))
                save_case(memory, cases[case_id], t)
            elif op == "narrative":
                new_entry = NarrativeEntry(f"n{step}", f"cycle-{step}", t,
                                           str(rng.choice(["success", "partial", "failure"])), domain="coding",
                                           keywords=frozenset(str(w) for w in rng.choice(self.WORDS, size=2)))
                entries.append(new_entry)
                record_entry(memory, new_entry)
            else:
                totals = (sum(c.retrieval_count for c in cases.values()), sum(c.success_count for c in cases.values()))
                survivors, merges = dedup_cases(list(cases.values()))
                outcome = run_housekeeping(memory, t)
                assert outcome["merged"] == merges
                assert outcome["pruned"] == []
                cases = {c.id: c for c in survivors}
                assert (sum(c.retrieval_count for c in survivors), sum(c.success_count for c in survivors)) == totals
        return facts, cases, entries, start + 60.0 * n_ops

    def assert_replay_matches(self, memory, seed, n_ops):
        facts, cases, entries, now = self.run_ops(memory, seed, n_ops)
        assert {c.id: c for c in replay_cases(memory)} == cases
        assert replay_narrative(memory) == entries
        resolved = [fact for fact, _ in FactStore(memory).list(now)]
        assert resolved == [resolve_fact_conflicts(facts[key], now) for key in sorted(facts)]

    def test_mixed_operations(self, memory):
        self.assert_replay_matches(memory, seed=0, n_ops=200)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_thousand_operations(self, memory, seed):
        self.assert_replay_matches(memory, seed=seed, n_ops=1000)


class TestCycleLog:

    def node(self, node_id, parent=None, kind=NodeKind.TOOL, **kwargs):
        return CycleNode(node_id, kind, kwargs.pop("timestamp", NOW), parent, **kwargs)

    def test_finalize(self):
        done = finalize_cycle(self.node("root", kind=NodeKind.USER), 40756, 189)
        assert done.status is NodeStatus.FINALISED
        assert (done.tokens_in, done.tokens_out) == (40756, 189)

    def test_double_finalisation(self):
        done = finalize_cycle(self.node("root", kind=NodeKind.USER), 1, 1)
        with pytest.raises(FinalisationError):
            finalize_cycle(done, 1, 1)

    def test_pending_anomaly(self):
        nodes = [self.node("root", kind=NodeKind.USER), self.node("t1", "root", tokens_in=10)]
        assert [n.id for n in pending_anomalies(nodes)] == ["root"]

    def test_later_record_wins(self, memory):
        root = self.node("root", kind=NodeKind.USER)
        record_node(memory, root)
        record_node(memory, finalize_cycle(root, 5, 6))
        [node] = replay_nodes(memory)
        assert node.status is NodeStatus.FINALISED
        assert len(memory.replay("dag_nodes").records) == 2

    def test_tree(self):
        nodes = [
            self.node("root", kind=NodeKind.USER),
            self.node("b", "root", timestamp=NOW + 2),
            self.node("a", "root", timestamp=NOW + 1),
            self.node("a1", "a", timestamp=NOW + 3),
        ]
        tree = build_tree(nodes, "root")
        assert [n.id for n in tree.walk()] == ["root", "a", "a1", "b"]
        assert build_tree(nodes, "missing") is None

    def test_parent_loop(self):
        nodes = [self.node("x", "y"), self.node("y", "x")]
        with pytest.raises(ValidationError):
            build_tree(nodes, "x")

    def test_negative_counters(self):
        with pytest.raises(ValidationError):
            self.node("n", tokens_in=-1)
