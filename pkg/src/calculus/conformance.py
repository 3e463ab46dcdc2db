"""
Exhaustive conformance checks for the calculus: the axiom firing
distribution over the full proposition space, monotonicity under
single-step strengthening, and a floor-rule spot suite.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from calculus.floorRules import GateThresholds, apply_floor_rules
from calculus.propositions import (
    Axiom,
    Modality,
    NormativeOperator,
    OrdinalLevel,
    Proposition,
    Side,
    enumerate_propositions,
)
from calculus.resolver import resolve_all, resolve_pair

FUTILITY_ROW = "6.6 Futility"
INDIFFERENCE_ROW = "6.7 Indifference"
SYSTEM_PRIORITY_ROW = "6.3 Moral priority (system wins)"
USER_PRIORITY_ROW = "6.3 Moral priority (user wins)"
ABSOLUTE_ROW = "6.2 Absolute prohibition"
MORAL_RANK_ROW = "6.4 Moral rank"
COORDINATE_ROW = "Coordinate"

DISTRIBUTION_ROWS = (
    FUTILITY_ROW,
    INDIFFERENCE_ROW,
    SYSTEM_PRIORITY_ROW,
    USER_PRIORITY_ROW,
    ABSOLUTE_ROW,
    MORAL_RANK_ROW,
    COORDINATE_ROW,
)

EXPECTED_DISTRIBUTION = {
    FUTILITY_ROW: 3528,
    INDIFFERENCE_ROW: 1176,
    SYSTEM_PRIORITY_ROW: 1040,
    USER_PRIORITY_ROW: 1092,
    ABSOLUTE_ROW: 56,
    MORAL_RANK_ROW: 110,
    COORDINATE_ROW: 54,
}


@dataclass(frozen=True)
class FiringDistribution:
    counts: dict
    total: int
    covered: int
    deterministic: bool

    def diff(self, expected=None):
        """
        Rows whose count differs from the expected distribution.

        Returns:
            list: (row, expected, actual) triples, empty when conforming.
        """
        expected = expected or EXPECTED_DISTRIBUTION
        return [
            (row, expected[row], self.counts.get(row, 0))
            for row in DISTRIBUTION_ROWS
            if self.counts.get(row, 0) != expected[row]
        ]


@dataclass(frozen=True)
class Violation:
    base_user: Proposition
    base_system: Proposition
    strengthened_side: Side
    step: str
    before: str
    after: str


def classify(resolution):
    """
    Map a resolution to its distribution row.
    """
    if resolution.axiom is Axiom.FUTILITY:
        return FUTILITY_ROW
    if resolution.axiom is Axiom.INDIFFERENCE:
        return INDIFFERENCE_ROW
    if resolution.axiom is Axiom.ABSOLUTE_PROHIBITION:
        return ABSOLUTE_ROW
    if resolution.axiom is Axiom.MORAL_PRIORITY:
        return SYSTEM_PRIORITY_ROW if resolution.winner is Side.SYSTEM else USER_PRIORITY_ROW
    if resolution.axiom is Axiom.MORAL_RANK:
        return MORAL_RANK_ROW
    if resolution.axiom is Axiom.NORMATIVE_OPENNESS:
        # Same level, equal rank: the coordinate-tie row
        return COORDINATE_ROW
    return resolution.axiom.value


def _run_once(users, systems):
    return resolve_all(users, systems)


def exhaustive_eval():
    """
    Resolve all 84 x 84 ordered pairs and count which rule fired.

    The space is resolved twice; the second run must match the first
    exactly for the distribution to be reported deterministic.

    Returns:
        FiringDistribution: Counts keyed by distribution row.
    """
    users = enumerate_propositions(Side.USER)
    systems = enumerate_propositions(Side.SYSTEM)
    first = _run_once(users, systems)
    second = _run_once(enumerate_propositions(Side.USER), enumerate_propositions(Side.SYSTEM))
    counts = Counter(classify(r) for r in first)
    return FiringDistribution(
        counts={row: counts.get(row, 0) for row in DISTRIBUTION_ROWS},
        total=len(users) * len(systems),
        covered=sum(1 for r in first if r is not None),
        deterministic=first == second,
    )


# Standing of one side in a resolution: loss < tie < win
_LOSS, _TIE, _WIN = 0, 1, 2
_STANDING_NAMES = {_LOSS: "loss", _TIE: "tie", _WIN: "win"}


def _standing(resolution, side):
    if resolution.winner is None:
        return _TIE
    return _WIN if resolution.winner is side else _LOSS


def _strengthenings(prop):
    """
    Yield (step name, strengthened proposition) for each single-step raise.
    """
    level = prop.level.raised()
    if level is not None:
        yield "level", Proposition(prop.description, level, prop.operator, prop.modality, prop.side, prop.flagged)
    operator = prop.operator.raised()
    if operator is not None:
        yield "operator", Proposition(prop.description, prop.level, operator, prop.modality, prop.side, prop.flagged)
    if prop.modality is Modality.IMPOSSIBLE:
        yield "modality", Proposition(prop.description, prop.level, prop.operator, Modality.POSSIBLE, prop.side, prop.flagged)


def _weakened(base, stronger, side):
    before, after = _standing(base, side), _standing(stronger, side)
    if after < before:
        return True
    return before == _WIN and after == _WIN and stronger.severity < base.severity


def check_monotonicity():
    """
    Verify that strengthening either proposition never weakens its standing.

    Pairs where the user proposition is inert (futility or indifference)
    are exempt: strengthening only moves them into evaluation.

    Returns:
        list: Violations; empty when the calculus is monotone.
    """
    inert = (Axiom.FUTILITY, Axiom.INDIFFERENCE)
    violations = []
    users = enumerate_propositions(Side.USER)
    systems = enumerate_propositions(Side.SYSTEM)
    for user in users:
        for system in systems:
            base = resolve_pair(user, system)
            if base.axiom in inert:
                continue
            for step, stronger_user in _strengthenings(user):
                after = resolve_pair(stronger_user, system)
                if _weakened(base, after, Side.USER):
                    violations.append(Violation(user, system, Side.USER, step,
                                                _STANDING_NAMES[_standing(base, Side.USER)],
                                                _STANDING_NAMES[_standing(after, Side.USER)]))
            for step, stronger_system in _strengthenings(system):
                after = resolve_pair(user, stronger_system)
                if _weakened(base, after, Side.SYSTEM):
                    violations.append(Violation(user, system, Side.SYSTEM, step,
                                                _STANDING_NAMES[_standing(base, Side.SYSTEM)],
                                                _STANDING_NAMES[_standing(after, Side.SYSTEM)]))
    return violations


@dataclass(frozen=True)
class FloorCheck:
    name: str
    expected_floor: int
    actual_floor: int
    axiom_trail: tuple

    @property
    def passed(self):
        return self.expected_floor == self.actual_floor


def _user(level, operator, flagged=True, description="request"):
    return Proposition(description, level, operator, Modality.POSSIBLE, Side.USER, flagged)


def _system(level, operator, description="commitment"):
    return Proposition(description, level, operator, Modality.POSSIBLE, Side.SYSTEM)


def floor_rule_suite(thresholds: Optional[GateThresholds] = None):
    """
    Run one constructed scenario per floor rule and report which floor fired.

    Returns:
        list: FloorCheck per floor, in floor order.
    """
    thresholds = thresholds or GateThresholds()
    L, O = OrdinalLevel, NormativeOperator
    character = [
        _system(L.PROFESSIONAL_ETHICS, O.REQUIRED, "External comms require safety eval"),
        _system(L.LEGAL, O.REQUIRED, "Operator authority over deliverables"),
        _system(L.ETHICAL_MORAL, O.OUGHT, "Produce accurate output"),
    ]
    scenarios = [
        ("absolute prohibition", 1, [_user(L.OPERATIONAL, O.OUGHT)],
         [_system(L.ETHICAL_MORAL, O.REQUIRED)], 0.1, False),
        ("authority overridden", 2, [_user(L.PROFESSIONAL_ETHICS, O.REQUIRED), _user(L.OPERATIONAL, O.OUGHT)],
         character, 0.4, False),
        ("reject threshold", 3, [_user(L.OPERATIONAL, O.OUGHT, flagged=False)],
         [_system(L.PROFESSIONAL_ETHICS, O.REQUIRED)], 0.6, False),
        ("catastrophic superordinate", 4, [_user(L.OPERATIONAL, O.OUGHT)],
         [_system(L.AESTHETIC, O.REQUIRED)], 0.4, True),
        ("coordinate pair", 5, [_user(L.ETIQUETTE, O.REQUIRED)],
         [_system(L.ETIQUETTE, O.OUGHT), _system(L.ETIQUETTE, O.INDIFFERENT)], 0.1, False),
        ("modify threshold", 6, [_user(L.OPERATIONAL, O.OUGHT, flagged=False)],
         [_system(L.OPERATIONAL, O.OUGHT)], 0.4, False),
        ("professional superordinate", 7, [_user(L.OPERATIONAL, O.OUGHT)],
         [_system(L.PROFESSIONAL_ETHICS, O.REQUIRED)], 0.1, False),
        ("benign residue", 8, [_user(L.OPERATIONAL, O.OUGHT, flagged=False)], character, 0.0, False),
    ]
    checks = []
    for name, expected, users, systems, dprime, catastrophic in scenarios:
        verdict = apply_floor_rules(resolve_all(users, systems), dprime, thresholds, catastrophic)
        checks.append(FloorCheck(name, expected, verdict.floor_index, verdict.axiom_trail))
    return checks
