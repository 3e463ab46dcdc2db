from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

from config import AUXILIARY_STORE_NAMES, STORE_NAMES
from memory.cycleLog import NodeKind, NodeStatus, replay_nodes
from memory.narrative import OUTCOMES

logger = logging.getLogger(__name__)

GATE_ACTIONS = ("Accept", "Modify", "Reject")


def format_failures(total, failures):
    """
    Render a count with its failures, e.g. "3,797 (138 failures, 3.6%)".
    """
    rate = 100.0 * failures / total if total else 0.0
    return f"{total:,} ({failures:,} failures, {rate:.1f}%)"


@dataclass
class AuditSummary:
    """
    Aggregate statistics reconstructed from the stores.
    """
    cycles: int = 0
    tokens_in: int = 0
    tokens_out: int = 0
    tool_calls: int = 0
    tool_failures: int = 0
    gate_decisions: dict = field(default_factory=lambda: {action: 0 for action in GATE_ACTIONS})
    dprime_evaluations: int = 0
    outcomes: dict = field(default_factory=lambda: {outcome: 0 for outcome in OUTCOMES})
    store_sizes: dict = field(default_factory=dict)

    @property
    def tool_call_line(self):
        return format_failures(self.tool_calls, self.tool_failures)

    def to_record(self):
        return {
            "cycles": self.cycles,
            "tokens_in": self.tokens_in,
            "tokens_out": self.tokens_out,
            "tool_calls": self.tool_calls,
            "tool_failures": self.tool_failures,
            "gate_decisions": dict(self.gate_decisions),
            "dprime_evaluations": self.dprime_evaluations,
            "outcomes": dict(self.outcomes),
            "store_sizes": dict(self.store_sizes),
        }

    def to_lines(self):
        lines = [
            f"Cycles: {self.cycles:,}",
            f"Tokens: {self.tokens_in:,} in / {self.tokens_out:,} out",
            f"Tool calls: {self.tool_call_line}",
            "Gate decisions: " + ", ".join(f"{count:,} {action.lower()}" for action, count in self.gate_decisions.items()),
            f"D' evaluations: {self.dprime_evaluations:,}",
            "Outcomes: " + ", ".join(f"{count:,} {outcome}" for outcome, count in self.outcomes.items()),
            "Store sizes:",
        ]
        lines += [f"  {store}: {count:,}" for store, count in self.store_sizes.items()]
        return lines


def summarize(memory, date_from=None, date_to=None):
    """
    Aggregate cycle, token, tool, gate and outcome statistics by replay.

    Args:
        memory (MemoryStore): The state's stores.
        date_from (str, optional): Inclusive YYYY-MM-DD lower bound.
        date_to (str, optional): Inclusive YYYY-MM-DD upper bound.

    Returns:
        AuditSummary: Counts over records dated inside the range.
    """
    summary = AuditSummary()

    for node in replay_nodes(memory, date_from, date_to):
        summary.tokens_in += node.tokens_in
        summary.tokens_out += node.tokens_out
        if node.is_root:
            summary.cycles += 1
        if node.kind is NodeKind.TOOL:
            summary.tool_calls += 1
            if node.status is NodeStatus.FAILED:
                summary.tool_failures += 1

    actions = Counter()
    for record in memory.replay("meta", date_from, date_to).records:
        if record.payload.get("type") == "observation":
            actions[record.payload["action"]] += 1
    summary.gate_decisions = {action: actions.get(action, 0) for action in GATE_ACTIONS}
    summary.dprime_evaluations = sum(actions.values())

    outcomes = Counter(
        record.payload.get("outcome") for record in memory.replay("narrative", date_from, date_to).records
    )
    summary.outcomes = {outcome: outcomes.get(outcome, 0) for outcome in OUTCOMES}

    summary.store_sizes = {
        store: len(memory.replay(store, date_from, date_to).records)
        for store in STORE_NAMES + AUXILIARY_STORE_NAMES
    }
    logger.info(f"Audit summary over {summary.cycles} cycle(s)")
    return summary
