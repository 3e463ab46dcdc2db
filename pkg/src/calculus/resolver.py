from calculus.propositions import (
    Axiom,
    Modality,
    NormativeOperator,
    OrdinalLevel,
    Resolution,
    Severity,
    Side,
)


def resolve_pair(user, system):
    """
    Resolve one user proposition against one system proposition.

    Axioms are tried in a fixed order and the first that fires decides:
    futility, indifference, absolute prohibition, moral priority, then
    moral rank or normative openness for same-level pairs.

    Args:
        user (Proposition): The user-side proposition.
        system (Proposition): The system-side proposition.

    Returns:
        Resolution: Axiom, winning side (or None) and severity.
    """
    # Inert user propositions never conflict
    if user.modality is Modality.IMPOSSIBLE:
        return Resolution(Axiom.FUTILITY, None, Severity.NO_CONFLICT, user, system)
    if user.operator is NormativeOperator.INDIFFERENT:
        return Resolution(Axiom.INDIFFERENCE, None, Severity.NO_CONFLICT, user, system)

    # Categorical commitment, whatever the system modality
    if system.level is OrdinalLevel.ETHICAL_MORAL and system.operator is NormativeOperator.REQUIRED:
        return Resolution(Axiom.ABSOLUTE_PROHIBITION, Side.SYSTEM, Severity.ABSOLUTE, user, system)

    if user.level is not system.level:
        winner = Side.USER if user.level.priority > system.level.priority else Side.SYSTEM
        return Resolution(Axiom.MORAL_PRIORITY, winner, Severity.SUPERORDINATE, user, system)

    if user.operator.rank != system.operator.rank:
        winner = Side.USER if user.operator.rank > system.operator.rank else Side.SYSTEM
        return Resolution(Axiom.MORAL_RANK, winner, Severity.COORDINATE, user, system)

    # Same level, same strength: compatible claims
    return Resolution(Axiom.NORMATIVE_OPENNESS, None, Severity.NO_CONFLICT, user, system)


def resolve_all(user_props, system_props):
    """
    Resolve every user proposition against every system proposition.

    Returns:
        list: Resolutions in row-major order (user outer, system inner).
    """
    return [resolve_pair(user, system) for user in user_props for system in system_props]
