from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from calculus import (
    GateThresholds,
    Modality,
    NormativeOperator,
    OrdinalLevel,
    Proposition,
    Side,
    Verdict,
    VerdictKind,
    apply_floor_rules,
    parse_level,
    parse_modality,
    parse_operator,
    resolve_all,
)
from config import (
    AGENT_PROFILES,
    CATASTROPHIC_MAGNITUDE,
    DEFAULT_CHARACTER,
    GATE_PROFILES,
    OUGHT_MAGNITUDE,
    REQUIRED_MAGNITUDE,
)
from gate.discrepancy import (
    DecisionSheet,
    FeatureScore,
    GateKind,
    ScreenResult,
    compute_dprime,
    screen,
)
from utils.errors import ValidationError
from utils.validators import validate_character_document, validate_sheet_document

logger = logging.getLogger(__name__)


class GateAction(Enum):
    ACCEPT = "Accept"
    MODIFY = "Modify"
    REJECT = "Reject"


ACTION_FOR_VERDICT = {
    VerdictKind.FLOURISHING: GateAction.ACCEPT,
    VerdictKind.CONSTRAINED: GateAction.MODIFY,
    VerdictKind.PROHIBITED: GateAction.REJECT,
}


@dataclass(frozen=True)
class GateDecision:
    """
    Pipeline outcome. A fast-path decision is always Accept and carries no verdict.
    """
    action: GateAction
    dprime: float
    fast_path: bool
    verdict: Optional[Verdict] = None
    thresholds: Optional[GateThresholds] = None

    @property
    def axiom_trail(self):
        return self.verdict.axiom_trail if self.verdict else ()

    def to_record(self):
        return {
            "action": self.action.value,
            "dprime": self.dprime,
            "fast_path": self.fast_path,
            "floor_index": self.verdict.floor_index if self.verdict else None,
            "verdict": self.verdict.kind.value if self.verdict else None,
            "axiom_trail": list(self.axiom_trail),
            "thresholds": self.thresholds.to_record() if self.thresholds else None,
        }


def translate_features(sheet):
    """
    Translate discrepant sheet features into user-side propositions.

    Magnitude 4-5 becomes a Required claim and 2-3 an Ought claim at the
    feature's level hint, both flagged. Features at magnitude 0-1 collapse
    into a single unflagged Operational/Ought residue.

    Args:
        sheet (DecisionSheet): The scored sheet.

    Returns:
        list: User-side propositions, flagged ones first in feature order.
    """
    propositions = []
    has_residue = False
    for feature in sheet.features:
        if feature.magnitude >= REQUIRED_MAGNITUDE:
            operator = NormativeOperator.REQUIRED
        elif feature.magnitude >= OUGHT_MAGNITUDE:
            operator = NormativeOperator.OUGHT
        else:
            has_residue = True
            continue
        propositions.append(Proposition(
            description=feature.name,
            level=feature.level_hint,
            operator=operator,
            modality=Modality.POSSIBLE,
            side=Side.USER,
            flagged=True,
        ))
    if has_residue:
        propositions.append(Proposition(
            description="Benign residue",
            level=OrdinalLevel.OPERATIONAL,
            operator=NormativeOperator.OUGHT,
            modality=Modality.POSSIBLE,
            side=Side.USER,
            flagged=False,
        ))
    return propositions


def catastrophic_present(sheet):
    return any(f.catastrophic and f.magnitude >= CATASTROPHIC_MAGNITUDE for f in sheet.features)


def evaluate(sheet, character, thresholds):
    """
    Run the full gate: score, screen, and consult the calculus when needed.

    Args:
        sheet (DecisionSheet): The scored sheet.
        character (list): System-side propositions.
        thresholds (GateThresholds): Thresholds for this gate/agent.

    Returns:
        GateDecision: Action, score and (unless fast-pathed) the verdict.
    """
    dprime = compute_dprime(sheet)
    if screen(dprime, thresholds) is ScreenResult.FAST_ACCEPT:
        logger.info(f"{sheet.gate.value} gate fast-path accept at D'={dprime:.4f}")
        return GateDecision(GateAction.ACCEPT, dprime, True, None, thresholds)

    user_props = translate_features(sheet)
    resolutions = resolve_all(user_props, [p.as_side(Side.SYSTEM) for p in character])
    verdict = apply_floor_rules(resolutions, dprime, thresholds, catastrophic_present(sheet))
    action = ACTION_FOR_VERDICT[verdict.kind]
    logger.info(
        f"{sheet.gate.value} gate {action.value} at D'={dprime:.4f} "
        f"(floor {verdict.floor_index}, trail {list(verdict.axiom_trail)})"
    )
    return GateDecision(action, dprime, False, verdict, thresholds)


def threshold_profile(gate, agent=None):
    """
    Thresholds for a gate, honouring per-agent overrides.

    Args:
        gate (GateKind | str): Gate name.
        agent (str, optional): Agent identifier.

    Returns:
        GateThresholds: The applicable thresholds.
    """
    gate_name = gate.value if isinstance(gate, GateKind) else str(gate)
    if agent and agent in AGENT_PROFILES:
        return GateThresholds(**AGENT_PROFILES[agent]["thresholds"])
    if gate_name not in GATE_PROFILES:
        raise ValidationError(f"Unknown gate: {gate_name!r}")
    return GateThresholds(**GATE_PROFILES[gate_name]["thresholds"])


def _profile_features(gate_name, agent):
    if agent and agent in AGENT_PROFILES:
        features = AGENT_PROFILES[agent]["features"]
    else:
        features = GATE_PROFILES.get(gate_name, {}).get("features", [])
    return {f["name"]: f for f in features}


def load_sheet(document):
    """
    Build a DecisionSheet from a sheet document.

    Importance, level_hint and catastrophic fall back to the gate (or agent)
    profile when the document omits them.

    Args:
        document (dict): {"gate", "agent", "features": [{"name", "magnitude", ...}]}.

    Returns:
        DecisionSheet: The validated sheet.

    Raises:
        ValidationError: On a malformed document or a feature unknown to the profile
            that does not carry its own importance.
    """
    is_valid, error_msg = validate_sheet_document(document)
    if not is_valid:
        raise ValidationError(error_msg)

    gate = GateKind(document["gate"])
    agent = document.get("agent")
    profile = _profile_features(gate.value, agent)
    features = []
    for raw in document["features"]:
        known = profile.get(raw["name"], {})
        importance = raw.get("importance", known.get("importance"))
        if importance is None:
            raise ValidationError(f"Feature {raw['name']!r} has no importance and is not in the {gate.value} profile")
        features.append(FeatureScore(
            name=raw["name"],
            importance=int(importance),
            magnitude=int(raw["magnitude"]),
            catastrophic=bool(raw.get("catastrophic", known.get("catastrophic", False))),
            level_hint=parse_level(raw.get("level_hint", known.get("level_hint", "OPERATIONAL"))),
        ))
    return DecisionSheet(gate=gate, features=tuple(features), agent=agent)


def load_character(document=None):
    """
    Build system-side propositions from a character document.

    Args:
        document (dict, optional): {"highest_endeavour": [...]}; the default
            character is used when omitted.

    Returns:
        list: System-side propositions in document order.
    """
    document = DEFAULT_CHARACTER if document is None else document
    is_valid, error_msg = validate_character_document(document)
    if not is_valid:
        raise ValidationError(error_msg)
    return [
        Proposition(
            description=entry["description"],
            level=parse_level(entry["level"]),
            operator=parse_operator(entry["operator"]),
            modality=parse_modality(entry.get("modality")),
            side=Side.SYSTEM,
        )
        for entry in document["highest_endeavour"]
    ]
