"""Tests for the sensorium block and the vitals behind it."""

import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, strategies as st

from config import SENSORIUM_SAMPLE_STATE
from memory import NarrativeEntry
from sensorium import SensoriumState, Vitals, compute_vitals, cost_trend, format_duration, novelty, render
from utils.errors import ValidationError
from utils.timeHelper import from_iso

NOW = from_iso("2026-03-29T14:30:00Z")

keyword_sets = st.frozensets(st.sampled_from(["flask", "port", "email", "draft", "proxy"]))


def entry(i, outcome="success", case_refs=("case-1",), timestamp=None, tokens=100, summary=""):
    return NarrativeEntry(f"n{i}", f"cycle-{i}", timestamp if timestamp is not None else NOW - 60 * i,
                          outcome, case_refs=case_refs, tokens=tokens, summary=summary)


class TestRender:

    def test_sample_state(self):
        block = render(SensoriumState.from_document(SENSORIUM_SAMPLE_STATE))
        assert block.startswith("<sensorium>")
        for fragment in ('now="2026-03-29T14:30:00"', 'session_uptime="2h15m"', 'cycles_today="8"',
                         'success_rate="0.75"', 'cbr_hit_rate="0.60"', 'novelty="0.42"',
                         'active_thread="EU AI regulation briefing"'):
            assert fragment in block
        assert "<delegations" not in block
        assert "<tasks" not in block

    def test_parses_as_xml(self):
        root = ET.fromstring(render(SensoriumState.from_document(SENSORIUM_SAMPLE_STATE)))
        assert [child.tag for child in root] == ["clock", "situation", "schedule", "vitals"]
        assert root.find("vitals").get("recent_failures") == "web_search timeout"

    def test_pure(self):
        state = SensoriumState.from_document(SENSORIUM_SAMPLE_STATE)
        assert render(state) == render(state)

    def test_delegations_and_tasks(self):
        document = dict(SENSORIUM_SAMPLE_STATE,
                        delegations=[{"agent": "researcher", "turn_progress": "3/8", "tokens": 1200,
                                      "elapsed_seconds": 95}],
                        tasks=["Draft briefing"])
        root = ET.fromstring(render(SensoriumState.from_document(document)))
        delegation = root.find("delegations/delegation")
        assert delegation.get("agent") == "researcher"
        assert delegation.get("elapsed") == "0h01m"
        assert root.find("tasks/task").get("title") == "Draft briefing"

    def test_control_characters_removed(self):
        document = dict(SENSORIUM_SAMPLE_STATE, active_thread="EU\x07 AI\x00 briefing\x1f",
                        tasks=["Draft\x0b briefing"])
        block = render(SensoriumState.from_document(document))
        root = ET.fromstring(block)
        assert root.find("situation").get("active_thread") == "EU AI briefing"
        assert root.find("tasks/task").get("title") == "Draft briefing"

    @given(st.text(max_size=40))
    def test_any_thread_text_parses(self, text):
        document = dict(SENSORIUM_SAMPLE_STATE, active_thread=text)
        ET.fromstring(render(SensoriumState.from_document(document)))

    def test_escapes_markup(self):
        document = dict(SENSORIUM_SAMPLE_STATE, active_thread='Q&A "<draft>"')
        root = ET.fromstring(render(SensoriumState.from_document(document)))
        assert root.find("situation").get("active_thread") == 'Q&A "<draft>"'

    def test_invalid_source(self):
        with pytest.raises(ValidationError):
            SensoriumState.from_document(dict(SENSORIUM_SAMPLE_STATE, input_source="carrier pigeon"))

    @pytest.mark.parametrize("seconds,expected", [(0, "0h00m"), (8100, "2h15m"), (90061, "25h01m")])
    def test_duration(self, seconds, expected):
        assert format_duration(seconds) == expected


class TestNovelty:

    def test_no_history(self):
        assert novelty({"flask"}, []) == 1.0

    def test_seen_before(self):
        assert novelty({"flask", "port"}, [{"email"}, {"port", "flask"}]) == 0.0

    def test_partial_overlap(self):
        assert novelty({"flask", "port"}, [{"port", "proxy"}]) == pytest.approx(2 / 3)

    def test_window(self):
        assert novelty({"flask"}, [{"flask"}, {"email"}], window=1) == 1.0

    @given(keyword_sets, st.lists(keyword_sets, max_size=5))
    def test_bounds(self, tokens, history):
        assert 0.0 <= novelty(tokens, history) <= 1.0


class TestVitals:

    def test_partial_counts_half(self):
        entries = [entry(i) for i in range(6)] + [entry(i, "partial") for i in range(6, 8)]
        vitals = compute_vitals(entries, NOW)
        assert vitals.success_rate == pytest.approx(0.875)
        assert vitals.cbr_hit_rate == 1.0
        assert vitals.cycles_today == 8

    def test_hit_rate(self):
        entries = [entry(0), entry(1, case_refs=())]
        assert compute_vitals(entries, NOW).cbr_hit_rate == 0.5

    def test_empty_window(self):
        vitals = compute_vitals([], NOW, input_novelty=0.3)
        assert (vitals.success_rate, vitals.cbr_hit_rate, vitals.cost_trend) == (0.0, 0.0, "stable")
        assert vitals.novelty == 0.3
        assert vitals.cycles_today == 0

    def test_yesterday_not_counted(self):
        entries = [entry(0), entry(1, timestamp=NOW - 86400)]
        assert compute_vitals(entries, NOW).cycles_today == 1

    def test_latest_failure_summary(self):
        entries = [entry(2, "failure", summary="calendar sync failed"), entry(1, "failure", summary="web_search timeout")]
        assert compute_vitals(entries, NOW).recent_failures == "web_search timeout"

    @pytest.mark.parametrize("tokens,expected", [
        ([100, 100, 100, 200, 200, 200], "rising"),
        ([200, 200, 200, 100, 100, 100], "falling"),
        ([100, 105, 100, 100, 95, 105], "stable"),
        ([100], "stable"),
    ])
    def test_cost_trend(self, tokens, expected):
        assert cost_trend(tokens) == expected

    def test_rates_validated(self):
        with pytest.raises(ValidationError):
            Vitals(success_rate=1.5)
