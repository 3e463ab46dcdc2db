from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from sensorium.vitals import Vitals
from utils.errors import ValidationError
from utils.timeHelper import from_iso
from utils.validators import validate_sensorium_document

INPUT_SOURCES = ("terminal", "web", "scheduler", "email")

# Code points outside the XML 1.0 Char production
XML_DISALLOWED = re.compile(r"[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff\ufffe\uffff]")


@dataclass(frozen=True)
class Delegation:
    agent: str
    turn_progress: str
    tokens: int
    elapsed_seconds: float


@dataclass(frozen=True)
class SensoriumState:
    now: float
    session_uptime_seconds: float
    cycle_id: str
    vitals: Vitals
    input_source: str = "terminal"
    queue_depth: int = 0
    active_thread: Optional[str] = None
    pending_jobs: int = 0
    overdue_jobs: int = 0
    delegations: tuple = field(default=())
    tasks: tuple = field(default=())

    def __post_init__(self):
        if self.session_uptime_seconds < 0:
            raise ValidationError("session uptime must be non-negative")
        if self.input_source not in INPUT_SOURCES:
            raise ValidationError(f"input_source must be one of {', '.join(INPUT_SOURCES)}")
        if min(self.queue_depth, self.pending_jobs, self.overdue_jobs) < 0:
            raise ValidationError("queue and job counts must be non-negative")
        object.__setattr__(self, "delegations", tuple(self.delegations))
        object.__setattr__(self, "tasks", tuple(self.tasks))

    @classmethod
    def from_document(cls, document):
        """
        Build a state from a JSON document.

        Raises:
            ValidationError: If the document fails validation.
        """
        is_valid, error_msg = validate_sensorium_document(document)
        if not is_valid:
            raise ValidationError(error_msg)
        now = document["now"]
        return cls(
            now=from_iso(now) if isinstance(now, str) else float(now),
            session_uptime_seconds=float(document.get("session_uptime_seconds", 0)),
            cycle_id=str(document["cycle_id"]),
            vitals=Vitals.from_document(document["vitals"]),
            input_source=document.get("input_source", "terminal"),
            queue_depth=int(document.get("queue_depth", 0)),
            active_thread=document.get("active_thread"),
            pending_jobs=int(document.get("pending_jobs", 0)),
            overdue_jobs=int(document.get("overdue_jobs", 0)),
            delegations=tuple(
                Delegation(d["agent"], str(d.get("turn_progress", "")), int(d.get("tokens", 0)),
                           float(d.get("elapsed_seconds", 0)))
                for d in document.get("delegations", [])
            ),
            tasks=tuple(document.get("tasks", [])),
        )


def format_clock(ts):
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%S")


def format_duration(seconds):
    minutes = int(seconds) // 60
    return f"{minutes // 60}h{minutes % 60:02d}m"


def format_rate(value):
    return f"{value:.2f}"


def xml_safe(text):
    return XML_DISALLOWED.sub("", text)


def add_element(parent, tag, attributes):
    return ET.SubElement(parent, tag, {key: xml_safe(value) for key, value in attributes.items()})


def render(state):
    """
    Render the self-state block as an indented XML element tree.

    Attribute order is fixed and rates carry two decimals, so equal
    states render to identical text. Delegations and tasks are omitted
    when empty.

    Args:
        state (SensoriumState): The state to render.

    Returns:
        str: The sensorium block.
    """
    root = ET.Element("sensorium")
    add_element(root, "clock", {
        "now": format_clock(state.now),
        "session_uptime": format_duration(state.session_uptime_seconds),
        "cycle_id": state.cycle_id,
    })

    situation = {"input_source": state.input_source, "queue_depth": str(state.queue_depth)}
    if state.active_thread:
        situation["active_thread"] = state.active_thread
    add_element(root, "situation", situation)

    add_element(root, "schedule", {
        "pending_jobs": str(state.pending_jobs),
        "overdue_jobs": str(state.overdue_jobs),
    })

    vitals = state.vitals
    add_element(root, "vitals", {
        "cycles_today": str(vitals.cycles_today),
        "agents_active": str(vitals.agents_active),
        "success_rate": format_rate(vitals.success_rate),
        "cost_trend": vitals.cost_trend,
        "cbr_hit_rate": format_rate(vitals.cbr_hit_rate),
        "novelty": format_rate(vitals.novelty),
        "recent_failures": vitals.recent_failures,
    })

    if state.delegations:
        delegations = add_element(root, "delegations", {})
        for delegation in state.delegations:
            add_element(delegations, "delegation", {
                "agent": delegation.agent,
                "turn_progress": delegation.turn_progress,
                "tokens": str(delegation.tokens),
                "elapsed": format_duration(delegation.elapsed_seconds),
            })

    if state.tasks:
        tasks = add_element(root, "tasks", {})
        for title in state.tasks:
            add_element(tasks, "task", {"title": title})

    ET.indent(root, space="  ")
    return ET.tostring(root, encoding="unicode")
