# Gate profiles: per-gate feature definitions and threshold defaults.
# Importance is fixed per feature; magnitude arrives with each decision sheet.
# level_hint is the ordinal level a discrepant feature translates to.
GATE_PROFILES = {
    "input": {
        "thresholds": {"modify": 0.35, "reject": 0.55},
        "features": [
            {"name": "Harmful intent", "importance": 5, "level_hint": "ETHICAL_MORAL", "catastrophic": True},
            {"name": "Prompt injection", "importance": 5, "level_hint": "LEGAL", "catastrophic": True},
            {"name": "Data sensitivity", "importance": 4, "level_hint": "LEGAL", "catastrophic": False},
            {"name": "Scope fit", "importance": 3, "level_hint": "OPERATIONAL", "catastrophic": False},
        ],
    },
    "tool": {
        "thresholds": {"modify": 0.35, "reject": 0.55},
        "features": [
            {"name": "Destructive side effects", "importance": 5, "level_hint": "SAFETY_PHYSICAL", "catastrophic": True},
            {"name": "Data exfiltration", "importance": 5, "level_hint": "LEGAL", "catastrophic": True},
            {"name": "Cost", "importance": 3, "level_hint": "ECONOMIC", "catastrophic": False},
            {"name": "Scope creep", "importance": 2, "level_hint": "OPERATIONAL", "catastrophic": False},
        ],
    },
    "output": {
        "thresholds": {"modify": 0.35, "reject": 0.55},
        "features": [
            {"name": "Sourced claims", "importance": 5, "level_hint": "PROFESSIONAL_ETHICS", "catastrophic": False},
            {"name": "Causal accuracy", "importance": 4, "level_hint": "PROFESSIONAL_ETHICS", "catastrophic": False},
            {"name": "Data currency", "importance": 3, "level_hint": "ECONOMIC", "catastrophic": False},
            {"name": "No credentials", "importance": 5, "level_hint": "LEGAL", "catastrophic": True},
            {"name": "No internal URLs", "importance": 5, "level_hint": "PROFESSIONAL_ETHICS", "catastrophic": False},
            {"name": "No system internals", "importance": 4, "level_hint": "PROFESSIONAL_ETHICS", "catastrophic": False},
            {"name": "Professional tone", "importance": 3, "level_hint": "ETIQUETTE", "catastrophic": False},
            {"name": "Recipient suitability", "importance": 4, "level_hint": "COMMUNITY", "catastrophic": False},
        ],
    },
}

# Agent overrides replace the gate's features and thresholds for that agent
AGENT_PROFILES = {
    "comms": {
        "gate": "output",
        "thresholds": {"modify": 0.30, "reject": 0.50},
        "features": [
            {"name": "No credential exposure", "importance": 5, "level_hint": "LEGAL", "catastrophic": True},
            {"name": "No internal URLs", "importance": 5, "level_hint": "PROFESSIONAL_ETHICS", "catastrophic": False},
            {"name": "No system internals", "importance": 4, "level_hint": "PROFESSIONAL_ETHICS", "catastrophic": False},
            {"name": "Professional tone", "importance": 3, "level_hint": "ETIQUETTE", "catastrophic": False},
            {"name": "Recipient suitability", "importance": 4, "level_hint": "COMMUNITY", "catastrophic": False},
        ],
    },
}
