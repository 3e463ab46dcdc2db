from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from itertools import product
from typing import Optional

from utils.errors import ValidationError


class OrdinalLevel(Enum):
    """
    The fourteen normative levels. The value is the level's priority;
    higher priorities dominate in conflict resolution.
    """
    ETHICAL_MORAL = 6000
    LEGAL = 5000
    PRUDENTIAL = 4500
    SOCIAL_POLITICAL = 4000
    SAFETY_PHYSICAL = 3500
    ENVIRONMENTAL = 3000
    COMMUNITY = 2500
    PROFESSIONAL_ETHICS = 2000
    ECONOMIC = 1500
    ETIQUETTE = 1000
    CONVENTION = 800
    AESTHETIC = 500
    PREFERENCE = 300
    OPERATIONAL = 100

    @property
    def priority(self):
        return self.value

    @property
    def label(self):
        return LEVEL_LABELS[self]

    def raised(self):
        """
        Return the next level up, or None at the top of the hierarchy.
        """
        higher = [level for level in OrdinalLevel if level.priority > self.priority]
        return min(higher, key=lambda level: level.priority) if higher else None


LEVEL_LABELS = {
    OrdinalLevel.ETHICAL_MORAL: "Ethical/Moral",
    OrdinalLevel.LEGAL: "Legal",
    OrdinalLevel.PRUDENTIAL: "Prudential",
    OrdinalLevel.SOCIAL_POLITICAL: "Social-Political",
    OrdinalLevel.SAFETY_PHYSICAL: "Safety (Physical)",
    OrdinalLevel.ENVIRONMENTAL: "Environmental",
    OrdinalLevel.COMMUNITY: "Community",
    OrdinalLevel.PROFESSIONAL_ETHICS: "Professional Ethics",
    OrdinalLevel.ECONOMIC: "Economic",
    OrdinalLevel.ETIQUETTE: "Etiquette",
    OrdinalLevel.CONVENTION: "Convention",
    OrdinalLevel.AESTHETIC: "Aesthetic",
    OrdinalLevel.PREFERENCE: "Preference",
    OrdinalLevel.OPERATIONAL: "Operational",
}


class NormativeOperator(Enum):
    """
    Strength of a norm, valued by rank: Required > Ought > Indifferent.
    """
    REQUIRED = 3
    OUGHT = 2
    INDIFFERENT = 1

    @property
    def rank(self):
        return self.value

    def raised(self):
        stronger = {NormativeOperator.INDIFFERENT: NormativeOperator.OUGHT,
                    NormativeOperator.OUGHT: NormativeOperator.REQUIRED}
        return stronger.get(self)


class Modality(Enum):
    """
    Whether a proposition can currently be acted on.
    """
    POSSIBLE = "POSSIBLE"
    IMPOSSIBLE = "IMPOSSIBLE"


class Side(Enum):
    """
    Which party holds a proposition: the request (user) or the character (system).
    """
    USER = "user"
    SYSTEM = "system"


class Severity(IntEnum):
    """
    Strength of a pairwise conflict, ordered weakest to strongest.
    """
    NO_CONFLICT = 0
    COORDINATE = 1
    SUPERORDINATE = 2
    ABSOLUTE = 3


class Axiom(Enum):
    """
    Resolution rules. Values are the identifiers written to axiom trails.
    """
    ABSOLUTE_PROHIBITION = "6.2"
    MORAL_PRIORITY = "6.3"
    MORAL_RANK = "6.4"
    NORMATIVE_OPENNESS = "6.5"
    FUTILITY = "6.6"
    INDIFFERENCE = "6.7"


class VerdictKind(Enum):
    FLOURISHING = "Flourishing"
    CONSTRAINED = "Constrained"
    PROHIBITED = "Prohibited"


@dataclass(frozen=True)
class Proposition:
    """
    A normative claim held by one side.

    `flagged` marks user propositions translated from a discrepant sheet
    feature; only those can trigger the authority floors.
    """
    description: str
    level: OrdinalLevel
    operator: NormativeOperator
    modality: Modality = Modality.POSSIBLE
    side: Side = Side.USER
    flagged: bool = False

    def as_side(self, side):
        return Proposition(self.description, self.level, self.operator, self.modality, side, self.flagged)

    def to_record(self):
        return {
            "description": self.description,
            "level": self.level.name,
            "operator": self.operator.name,
            "modality": self.modality.name,
            "side": self.side.value,
            "flagged": self.flagged,
        }


@dataclass(frozen=True)
class Resolution:
    axiom: Axiom
    winner: Optional[Side]
    severity: Severity
    user: Proposition
    system: Proposition

    def to_record(self):
        return {
            "axiom": self.axiom.value,
            "winner": self.winner.value if self.winner else None,
            "severity": self.severity.name,
            "user": self.user.description,
            "system": self.system.description,
        }


@dataclass(frozen=True)
class Verdict:
    """
    Calculus outcome: the first floor rule that fired plus the full axiom trail.
    """
    kind: VerdictKind
    floor_index: int
    axiom_trail: tuple = ()
    reason: str = ""
    resolutions: tuple = field(default=(), compare=False)

    def to_record(self):
        return {
            "kind": self.kind.value,
            "floor_index": self.floor_index,
            "axiom_trail": list(self.axiom_trail),
            "reason": self.reason,
        }


def enumerate_propositions(side=Side.USER):
    """
    Build the full proposition space: 14 levels x 3 operators x 2 modalities.

    Ordering is fixed (priority descending, operator rank descending,
    Possible before Impossible).

    Args:
        side (Side): Side assigned to every proposition.

    Returns:
        list: 84 propositions.
    """
    levels = sorted(OrdinalLevel, key=lambda level: level.priority, reverse=True)
    operators = sorted(NormativeOperator, key=lambda op: op.rank, reverse=True)
    modalities = (Modality.POSSIBLE, Modality.IMPOSSIBLE)
    return [
        Proposition(
            description=f"{level.name}/{operator.name}/{modality.name}",
            level=level,
            operator=operator,
            modality=modality,
            side=side,
        )
        for level, operator, modality in product(levels, operators, modalities)
    ]


def parse_level(name):
    """
    Look up a level by its upper-snake identifier (e.g. "PROFESSIONAL_ETHICS").

    Raises:
        ValidationError: If the name is not one of the fourteen levels.
    """
    try:
        return OrdinalLevel[str(name).strip().upper()]
    except KeyError:
        raise ValidationError(f"Unknown ordinal level: {name!r}") from None


def parse_operator(name):
    try:
        return NormativeOperator[str(name).strip().upper()]
    except KeyError:
        raise ValidationError(f"Unknown normative operator: {name!r}") from None


def parse_modality(name):
    if name is None:
        return Modality.POSSIBLE
    try:
        return Modality[str(name).strip().upper()]
    except KeyError:
        raise ValidationError(f"Unknown modality: {name!r}") from None
