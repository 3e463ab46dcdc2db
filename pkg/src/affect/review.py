from __future__ import annotations

import logging

from affect.patterns import CycleSummary
from memory.cycleLog import NodeKind, NodeStatus, build_tree, replay_nodes
from memory.narrative import replay_narrative

logger = logging.getLogger(__name__)


def _gate_actions_by_cycle(memory):
    actions = {}
    for record in memory.replay("meta").records:
        if record.payload.get("type") == "observation":
            actions.setdefault(record.payload["cycle_id"], []).append(record.payload["action"])
    return actions


def review_recent(memory, n=None):
    """
    Summaries of the most recent cycles, oldest first.

    Joins the cycle log (tools, model, tokens), the narrative store
    (outcome, domain, case references) and the meta store (gate actions).

    Args:
        memory (MemoryStore): The state's stores.
        n (int, optional): How many cycles; all when None.

    Returns:
        list: CycleSummary entries.
    """
    nodes = replay_nodes(memory)
    narrative = {entry.cycle_id: entry for entry in replay_narrative(memory)}
    gate_actions = _gate_actions_by_cycle(memory)

    roots = sorted((node for node in nodes if node.is_root), key=lambda node: (node.timestamp, node.id))
    if n is not None:
        roots = roots[-n:] if n > 0 else []

    summaries = []
    for root in roots:
        tree = build_tree(nodes, root.id)
        members = list(tree.walk())
        entry = narrative.get(root.id)
        summaries.append(CycleSummary(
            cycle_id=root.id,
            outcome=entry.outcome if entry else "",
            domain=entry.domain if entry else "",
            tools=tuple(
                (node.tool or node.model or node.id, node.status is NodeStatus.FAILED)
                for node in members if node.kind is NodeKind.TOOL
            ),
            gate_actions=tuple(gate_actions.get(root.id, ())),
            model=root.model,
            tokens=sum(node.tokens_in + node.tokens_out for node in members),
            case_refs=tuple(entry.case_refs) if entry else (),
            timestamp=root.timestamp,
        ))
    logger.info(f"Reviewed {len(summaries)} cycle(s)")
    return summaries


def inspect_cycle(memory, cycle_id):
    """
    Node tree of one cycle, or None when the cycle is unknown.
    """
    return build_tree(replay_nodes(memory), cycle_id)
