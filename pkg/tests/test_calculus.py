"""Tests for the normative calculus: proposition space, pairwise resolution,
floor rules and the exhaustive conformance checks."""

import pytest
from hypothesis import given, strategies as st

from calculus import (
    ABSOLUTE_ROW,
    COORDINATE_ROW,
    EXPECTED_DISTRIBUTION,
    FUTILITY_ROW,
    Axiom,
    GateThresholds,
    Modality,
    NormativeOperator,
    OrdinalLevel,
    Proposition,
    Severity,
    Side,
    VerdictKind,
    apply_floor_rules,
    check_monotonicity,
    enumerate_propositions,
    exhaustive_eval,
    floor_rule_suite,
    parse_level,
    resolve_all,
    resolve_pair,
)
from utils.errors import ValidationError

L, O = OrdinalLevel, NormativeOperator

USER_SPACE = enumerate_propositions(Side.USER)
SYSTEM_SPACE = enumerate_propositions(Side.SYSTEM)


def user(level, operator, modality=Modality.POSSIBLE, flagged=True, description="request"):
    return Proposition(description, level, operator, modality, Side.USER, flagged)


def system(level, operator, modality=Modality.POSSIBLE, description="commitment"):
    return Proposition(description, level, operator, modality, Side.SYSTEM)


def worked_character():
    return [
        system(L.PROFESSIONAL_ETHICS, O.REQUIRED, description="External comms require safety eval"),
        system(L.LEGAL, O.REQUIRED, description="Operator authority over deliverables"),
        system(L.ETHICAL_MORAL, O.OUGHT, description="Produce accurate output"),
    ]


class TestPropositionSpace:

    def test_size_and_first_entry(self):
        assert len(USER_SPACE) == 84
        first = USER_SPACE[0]
        assert (first.level, first.operator, first.modality) == (L.ETHICAL_MORAL, O.REQUIRED, Modality.POSSIBLE)

    def test_every_triple_once(self):
        triples = {(p.level, p.operator, p.modality) for p in USER_SPACE}
        assert len(triples) == 84

    def test_deterministic(self):
        assert enumerate_propositions(Side.USER) == USER_SPACE

    def test_parse_level_rejects_unknown(self):
        assert parse_level("professional_ethics") is L.PROFESSIONAL_ETHICS
        with pytest.raises(ValidationError):
            parse_level("NOT_A_LEVEL")


class TestResolvePair:

    def test_lower_user_loses_to_legal(self):
        resolution = resolve_pair(user(L.PROFESSIONAL_ETHICS, O.REQUIRED), system(L.LEGAL, O.REQUIRED))
        assert resolution.axiom is Axiom.MORAL_PRIORITY
        assert resolution.winner is Side.SYSTEM
        assert resolution.severity is Severity.SUPERORDINATE

    def test_impossible_user_is_futile(self):
        resolution = resolve_pair(user(L.LEGAL, O.REQUIRED, Modality.IMPOSSIBLE), system(L.ETHICAL_MORAL, O.REQUIRED))
        assert (resolution.axiom, resolution.winner, resolution.severity) == (
            Axiom.FUTILITY, None, Severity.NO_CONFLICT)

    def test_indifferent_user(self):
        resolution = resolve_pair(user(L.LEGAL, O.INDIFFERENT), system(L.OPERATIONAL, O.OUGHT))
        assert resolution.axiom is Axiom.INDIFFERENCE
        assert resolution.severity is Severity.NO_CONFLICT

    def test_categorical_commitment_even_when_impossible(self):
        resolution = resolve_pair(user(L.ETHICAL_MORAL, O.REQUIRED),
                                  system(L.ETHICAL_MORAL, O.REQUIRED, Modality.IMPOSSIBLE))
        assert resolution.axiom is Axiom.ABSOLUTE_PROHIBITION
        assert resolution.severity is Severity.ABSOLUTE

    def test_same_level_rank(self):
        resolution = resolve_pair(user(L.ETIQUETTE, O.REQUIRED), system(L.ETIQUETTE, O.OUGHT))
        assert resolution.axiom is Axiom.MORAL_RANK
        assert resolution.winner is Side.USER
        assert resolution.severity is Severity.COORDINATE

    def test_same_level_same_rank_has_no_winner(self):
        resolution = resolve_pair(user(L.ETIQUETTE, O.OUGHT), system(L.ETIQUETTE, O.OUGHT))
        assert resolution.axiom is Axiom.NORMATIVE_OPENNESS
        assert resolution.winner is None
        assert resolution.severity is Severity.NO_CONFLICT

    @given(st.sampled_from(USER_SPACE), st.sampled_from(SYSTEM_SPACE))
    def test_total_and_deterministic(self, u, s):
        first = resolve_pair(u, s)
        assert first == resolve_pair(u, s)
        assert first.axiom in Axiom

    @given(st.sampled_from(USER_SPACE), st.sampled_from(SYSTEM_SPACE))
    def test_compatible_axioms_never_conflict(self, u, s):
        resolution = resolve_pair(u, s)
        if resolution.axiom in (Axiom.NORMATIVE_OPENNESS, Axiom.FUTILITY, Axiom.INDIFFERENCE):
            assert resolution.severity is Severity.NO_CONFLICT
            assert resolution.winner is None

    @given(st.sampled_from(USER_SPACE), st.sampled_from(SYSTEM_SPACE))
    def test_no_conflict_means_no_winner(self, u, s):
        resolution = resolve_pair(u, s)
        if resolution.severity is Severity.NO_CONFLICT:
            assert resolution.winner is None


class TestResolveAll:

    def test_worked_scenario_trail(self):
        users = [user(L.PROFESSIONAL_ETHICS, O.REQUIRED, description="Send debug output"),
                 user(L.OPERATIONAL, O.OUGHT, description="Be helpful")]
        trail = [r.axiom.value for r in resolve_all(users, worked_character())]
        assert trail == ["6.5", "6.3", "6.3", "6.3", "6.3", "6.3"]

    def test_operational_request_dominated(self):
        resolutions = resolve_all([user(L.OPERATIONAL, O.OUGHT, flagged=False)], worked_character())
        assert [r.axiom for r in resolutions] == [Axiom.MORAL_PRIORITY] * 3
        assert all(r.winner is Side.SYSTEM for r in resolutions)

    def test_empty_user_list(self):
        assert resolve_all([], worked_character()) == []


class TestFloorRules:

    def test_authority_overridden_prohibits(self):
        users = [user(L.PROFESSIONAL_ETHICS, O.REQUIRED), user(L.OPERATIONAL, O.OUGHT)]
        verdict = apply_floor_rules(resolve_all(users, worked_character()), 0.4, GateThresholds())
        assert verdict.kind is VerdictKind.PROHIBITED
        assert verdict.floor_index == 2

    def test_unflagged_request_flourishes(self):
        resolutions = resolve_all([user(L.OPERATIONAL, O.OUGHT, flagged=False)], worked_character())
        verdict = apply_floor_rules(resolutions, 0.0, GateThresholds())
        assert (verdict.kind, verdict.floor_index) == (VerdictKind.FLOURISHING, 8)

    def test_compatible_claims_are_not_coordinate_conflicts(self):
        users = [user(L.PROFESSIONAL_ETHICS, O.OUGHT), user(L.PROFESSIONAL_ETHICS, O.OUGHT, description="second")]
        resolutions = resolve_all(users, [system(L.PROFESSIONAL_ETHICS, O.OUGHT)])
        verdict = apply_floor_rules(resolutions, 0.40, GateThresholds())
        assert [(r.axiom, r.severity) for r in resolutions] == [(Axiom.NORMATIVE_OPENNESS, Severity.NO_CONFLICT)] * 2
        assert (verdict.kind, verdict.floor_index) == (VerdictKind.CONSTRAINED, 6)

    def test_empty_resolutions(self):
        verdict = apply_floor_rules([], 0.0, GateThresholds())
        assert (verdict.kind, verdict.floor_index) == (VerdictKind.FLOURISHING, 8)
        assert verdict.axiom_trail == ()

    def test_trail_keeps_every_resolution(self):
        resolutions = resolve_all([user(L.OPERATIONAL, O.OUGHT, flagged=False)], worked_character())
        verdict = apply_floor_rules(resolutions, 0.0, GateThresholds())
        assert len(verdict.axiom_trail) == len(resolutions)

    @pytest.mark.parametrize("dprime", [-0.01, 1.01])
    def test_score_out_of_range(self, dprime):
        with pytest.raises(ValidationError):
            apply_floor_rules([], dprime, GateThresholds())

    def test_thresholds_must_be_ordered(self):
        with pytest.raises(ValidationError):
            GateThresholds(modify=0.6, reject=0.5)

    def test_spot_suite(self):
        checks = floor_rule_suite()
        assert [check.expected_floor for check in checks] == list(range(1, 9))
        assert all(check.passed for check in checks), [c for c in checks if not c.passed]

    @given(st.floats(0.0, 1.0))
    def test_higher_score_never_relaxes_verdict(self, dprime):
        resolutions = resolve_all([user(L.OPERATIONAL, O.OUGHT, flagged=False)],
                                  [system(L.OPERATIONAL, O.OUGHT)])
        thresholds = GateThresholds()
        low = apply_floor_rules(resolutions, dprime, thresholds)
        high = apply_floor_rules(resolutions, min(1.0, dprime + 0.2), thresholds)
        assert high.floor_index <= low.floor_index


class TestConformance:

    def test_distribution(self):
        distribution = exhaustive_eval()
        assert distribution.total == 7056
        assert distribution.covered == 7056
        assert distribution.deterministic
        assert distribution.counts == EXPECTED_DISTRIBUTION
        assert distribution.diff() == []

    def test_named_rows(self):
        counts = exhaustive_eval().counts
        assert counts[FUTILITY_ROW] == 3528
        assert counts[ABSOLUTE_ROW] == 56
        assert counts[COORDINATE_ROW] == 54

    def test_diff_names_the_row(self):
        distribution = exhaustive_eval()
        broken = dict(EXPECTED_DISTRIBUTION, **{ABSOLUTE_ROW: 57})
        assert distribution.diff(broken) == [(ABSOLUTE_ROW, 57, 56)]

    def test_monotone(self):
        assert check_monotonicity() == []

    def test_raising_operator_turns_tie_into_win(self):
        before = resolve_pair(user(L.ECONOMIC, O.OUGHT), system(L.ECONOMIC, O.OUGHT))
        after = resolve_pair(user(L.ECONOMIC, O.REQUIRED), system(L.ECONOMIC, O.OUGHT))
        assert before.winner is None
        assert after.winner is Side.USER
