# Worked decision sheets. Only name and magnitude are given; importance,
# level_hint and catastrophic come from the gate profile.
REPORT_DELIVERY_SHEET = {
    "gate": "output",
    "agent": None,
    "features": [
        {"name": "Sourced claims", "importance": 5, "magnitude": 1},
        {"name": "Causal accuracy", "importance": 4, "magnitude": 1},
        {"name": "Data currency", "importance": 3, "magnitude": 2},
        {"name": "No credentials", "importance": 5, "magnitude": 0},
        {"name": "No internal URLs", "importance": 5, "magnitude": 0},
        {"name": "No system internals", "importance": 4, "magnitude": 1},
        {"name": "Professional tone", "importance": 3, "magnitude": 1},
        {"name": "Recipient suitability", "importance": 4, "magnitude": 0},
    ],
}

DEBUG_EMAIL_SHEET = {
    "gate": "output",
    "agent": "comms",
    "features": [
        {"name": "No credential exposure", "importance": 5, "magnitude": 0},
        {"name": "No internal URLs", "importance": 5, "magnitude": 4},
        {"name": "No system internals", "importance": 4, "magnitude": 5},
        {"name": "Professional tone", "importance": 3, "magnitude": 4},
        {"name": "Recipient suitability", "importance": 4, "magnitude": 3},
    ],
}

# Self-state block for a mid-afternoon cycle
SENSORIUM_SAMPLE_STATE = {
    "now": "2026-03-29T14:30:00Z",
    "session_uptime_seconds": 8100,
    "cycle_id": "a7f3b2c1",
    "input_source": "terminal",
    "queue_depth": 0,
    "active_thread": "EU AI regulation briefing",
    "pending_jobs": 2,
    "overdue_jobs": 0,
    "vitals": {
        "cycles_today": 8,
        "agents_active": 5,
        "success_rate": 0.75,
        "cost_trend": "stable",
        "cbr_hit_rate": 0.60,
        "novelty": 0.42,
        "recent_failures": "web_search timeout",
    },
    "delegations": [],
    "tasks": [],
}

_CLEAN_CYCLE = {
    "tool_calls_total": 3,
    "tool_calls_failed": 0,
    "same_tool_retries": 0,
    "gate_rejections": 0,
    "gate_modifications": 0,
    "delegations_total": 0,
    "delegations_failed": 0,
    "recent_success_rate": 0.9,
    "cbr_hit_rate": 0.6,
    "budget_pressure": 0.0,
    "consecutive_failure_cycles": 0,
    "output_gate_rejections": 0,
}

# Long clean run followed by two cycles of escalating output-gate rejections
AFFECT_CASCADE_TELEMETRY = [
    dict(_CLEAN_CYCLE, cycle_id=f"clean-{i}") for i in range(1, 7)
] + [
    dict(
        _CLEAN_CYCLE,
        cycle_id="cascade-1",
        tool_calls_total=4,
        recent_success_rate=0.25,
        cbr_hit_rate=0.5,
        budget_pressure=0.8,
        output_gate_rejections=2,
    ),
    dict(
        _CLEAN_CYCLE,
        cycle_id="cascade-2",
        tool_calls_total=4,
        delegations_total=4,
        delegations_failed=1,
        recent_success_rate=0.25,
        cbr_hit_rate=0.5,
        budget_pressure=0.8,
        output_gate_rejections=3,
    ),
]
