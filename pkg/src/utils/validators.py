import math
from config import (
    MAX_IMPORTANCE,
    MAX_MAGNITUDE,
    RETRIEVAL_WEIGHTS,
    STORE_NAMES,
    AUXILIARY_STORE_NAMES,
)

GATE_NAMES = ("input", "tool", "output")
OPERATOR_NAMES = ("REQUIRED", "OUGHT", "INDIFFERENT")
FACT_SCOPES = ("session", "persistent")
TELEMETRY_COUNTERS = (
    "tool_calls_total", "tool_calls_failed", "same_tool_retries",
    "gate_rejections", "gate_modifications", "delegations_total",
    "delegations_failed", "consecutive_failure_cycles", "output_gate_rejections",
)
TELEMETRY_RATES = ("recent_success_rate", "cbr_hit_rate")
BUDGET_PRESSURE_LEVELS = (0, 0.4, 0.8)


def _is_int(value):
    return isinstance(value, int) and not isinstance(value, bool)


def _is_rate(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) and 0.0 <= value <= 1.0


def validate_sheet_document(document):
    """
    Validate a decision sheet document.

    Args:
        document (dict): {"gate": ..., "agent": ..., "features": [...]}.

    Returns:
        tuple: A tuple where the first element is a boolean indicating
               whether the document is valid, and the second element is
               an error message (if any).
    """
    if not isinstance(document, dict):
        return False, "Decision sheet must be an object"

    if document.get("gate") not in GATE_NAMES:
        return False, f"Decision sheet gate must be one of {', '.join(GATE_NAMES)}"

    features = document.get("features")
    if not isinstance(features, list) or not features:
        return False, "Decision sheet needs a non-empty features list"

    for index, feature in enumerate(features):
        if not isinstance(feature, dict) or not feature.get("name"):
            return False, f"Feature {index} needs a name"
        if not _is_int(feature.get("magnitude")) or not 0 <= feature["magnitude"] <= MAX_MAGNITUDE:
            return False, f"Feature {feature['name']!r}: magnitude must be an integer in [0, {MAX_MAGNITUDE}]"
        if "importance" in feature and (
            not _is_int(feature["importance"]) or not 0 <= feature["importance"] <= MAX_IMPORTANCE
        ):
            return False, f"Feature {feature['name']!r}: importance must be an integer in [0, {MAX_IMPORTANCE}]"

    return True, None


def validate_character_document(document):
    """
    Validate a character document (a "highest_endeavour" array).

    Level names are checked when the document is converted to propositions.

    Returns:
        tuple: (is_valid, error_msg).
    """
    if not isinstance(document, dict) or not isinstance(document.get("highest_endeavour"), list):
        return False, "Character document needs a highest_endeavour array"

    for index, entry in enumerate(document["highest_endeavour"]):
        if not isinstance(entry, dict):
            return False, f"Character entry {index} must be an object"
        for key in ("description", "level", "operator"):
            if not entry.get(key):
                return False, f"Character entry {index} is missing {key}"
        if str(entry["operator"]).upper() not in OPERATOR_NAMES:
            return False, f"Character entry {index}: operator must be one of {', '.join(OPERATOR_NAMES)}"

    return True, None


def validate_weights(weights):
    """
    Validate a retrieval weight mapping: the six signals, non-negative, summing to 1.

    Returns:
        tuple: (is_valid, error_msg).
    """
    if set(weights) != set(RETRIEVAL_WEIGHTS):
        return False, f"Weights must name exactly: {', '.join(RETRIEVAL_WEIGHTS)}"
    if any(w < 0 for w in weights.values()):
        return False, "Weights must be non-negative"
    total = math.fsum(weights.values())
    if abs(total - 1.0) > 1e-9:
        return False, f"Weights must sum to 1.0 (got {total})"
    return True, None


def validate_telemetry_record(record):
    """
    Validate one cycle telemetry record.

    Returns:
        tuple: (is_valid, error_msg).
    """
    if not isinstance(record, dict):
        return False, "Telemetry record must be an object"

    for key in TELEMETRY_COUNTERS:
        value = record.get(key, 0)
        if not _is_int(value) or value < 0:
            return False, f"{key} must be a non-negative integer"
    for key in TELEMETRY_RATES:
        if not _is_rate(record.get(key, 0.0)):
            return False, f"{key} must lie in [0, 1]"
    if record.get("budget_pressure", 0) not in BUDGET_PRESSURE_LEVELS:
        return False, "budget_pressure must be one of 0, 0.4, 0.8"

    # Failures can never exceed attempts
    if record.get("tool_calls_failed", 0) > record.get("tool_calls_total", 0):
        return False, "tool_calls_failed exceeds tool_calls_total"
    if record.get("delegations_failed", 0) > record.get("delegations_total", 0):
        return False, "delegations_failed exceeds delegations_total"

    return True, None


def validate_sensorium_document(document):
    """
    Validate a sensorium state document.

    Returns:
        tuple: (is_valid, error_msg).
    """
    if not isinstance(document, dict):
        return False, "Sensorium state must be an object"
    for key in ("now", "cycle_id", "vitals"):
        if key not in document:
            return False, f"Sensorium state is missing {key}"
    if document.get("session_uptime_seconds", 0) < 0:
        return False, "session_uptime_seconds must be non-negative"
    vitals = document["vitals"]
    if not isinstance(vitals, dict):
        return False, "vitals must be an object"
    for key in ("success_rate", "cbr_hit_rate", "novelty"):
        if not _is_rate(vitals.get(key, 0.0)):
            return False, f"vitals.{key} must lie in [0, 1]"
    if vitals.get("cost_trend", "stable") not in ("rising", "stable", "falling"):
        return False, "vitals.cost_trend must be rising, stable or falling"
    return True, None


def validate_fact_scope(scope):
    if scope not in FACT_SCOPES:
        return False, f"Fact scope must be one of {', '.join(FACT_SCOPES)}"
    return True, None


def validate_store_name(store):
    if store not in STORE_NAMES and store not in AUXILIARY_STORE_NAMES:
        return False, f"Unknown store: {store!r}"
    return True, None
