from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional

from utils.errors import FinalisationError, ValidationError

logger = logging.getLogger(__name__)


class NodeKind(Enum):
    """
    What started a cycle node.
    """
    USER = "user"
    SCHEDULER = "scheduler"
    AGENT = "agent"
    TOOL = "tool"


class NodeStatus(Enum):
    PENDING = "pending"
    FINALISED = "finalised"
    FAILED = "failed"


@dataclass(frozen=True)
class CycleNode:
    """
    One node of a cycle tree in the cycle log.

    Root nodes (no parent) are cycles; their id is the cycle id.
    """
    id: str
    kind: NodeKind
    timestamp: float
    parent_id: Optional[str] = None
    model: str = ""
    tool: str = ""
    tokens_in: int = 0
    tokens_out: int = 0
    elapsed_ms: int = 0
    status: NodeStatus = NodeStatus.PENDING

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", NodeKind(self.kind))
        if isinstance(self.status, str):
            object.__setattr__(self, "status", NodeStatus(self.status))
        if min(self.tokens_in, self.tokens_out, self.elapsed_ms) < 0:
            raise ValidationError(f"Cycle node {self.id}: negative counters")

    @property
    def is_root(self):
        return self.parent_id is None

    def to_payload(self):
        return {
            "id": self.id,
            "parent_id": self.parent_id,
            "kind": self.kind.value,
            "model": self.model,
            "tool": self.tool,
            "tokens_in": self.tokens_in,
            "tokens_out": self.tokens_out,
            "elapsed_ms": self.elapsed_ms,
            "status": self.status.value,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_payload(cls, payload):
        return cls(
            id=payload["id"],
            kind=payload["kind"],
            timestamp=float(payload["timestamp"]),
            parent_id=payload.get("parent_id"),
            model=payload.get("model", ""),
            tool=payload.get("tool", ""),
            tokens_in=int(payload.get("tokens_in", 0)),
            tokens_out=int(payload.get("tokens_out", 0)),
            elapsed_ms=int(payload.get("elapsed_ms", 0)),
            status=payload.get("status", NodeStatus.PENDING.value),
        )


def finalize_cycle(node, tokens_in, tokens_out, status=NodeStatus.FINALISED):
    """
    Close a pending node with its token counts.

    Args:
        node (CycleNode): A pending node.
        tokens_in (int): Prompt tokens.
        tokens_out (int): Completion tokens.
        status (NodeStatus): FINALISED or FAILED.

    Returns:
        CycleNode: The closed node.

    Raises:
        FinalisationError: If the node is not pending.
    """
    status = NodeStatus(status)
    if node.status is not NodeStatus.PENDING:
        raise FinalisationError(f"Cycle node {node.id} is already {node.status.value}")
    if status is NodeStatus.PENDING:
        raise ValidationError("Finalisation status must be finalised or failed")
    return replace(node, tokens_in=tokens_in, tokens_out=tokens_out, status=status)


def children_of(nodes):
    children = {}
    for node in nodes:
        if node.parent_id is not None:
            children.setdefault(node.parent_id, []).append(node)
    return children


def pending_anomalies(nodes):
    """
    Nodes left pending with 0/0 tokens although work ran beneath them.

    Returns:
        list: The anomalous nodes in input order.
    """
    children = children_of(nodes)
    return [
        node for node in nodes
        if node.status is NodeStatus.PENDING
        and node.tokens_in == 0 and node.tokens_out == 0
        and children.get(node.id)
    ]


@dataclass
class CycleTree:
    root: CycleNode
    children: list = field(default_factory=list)

    def walk(self):
        yield self.root
        for child in self.children:
            yield from child.walk()

    def to_record(self):
        return {**self.root.to_payload(), "children": [child.to_record() for child in self.children]}


def build_tree(nodes, root_id):
    """
    Assemble the node tree under `root_id`, children in timestamp order.

    Returns:
        CycleTree | None: None when the root is unknown.
    """
    by_id = {node.id: node for node in nodes}
    if root_id not in by_id:
        return None
    children = children_of(nodes)

    def grow(node, seen):
        if node.id in seen:
            raise ValidationError(f"Cycle log has a parent loop at {node.id}")
        seen = seen | {node.id}
        ordered = sorted(children.get(node.id, []), key=lambda child: (child.timestamp, child.id))
        return CycleTree(node, [grow(child, seen) for child in ordered])

    return grow(by_id[root_id], frozenset())


def record_node(memory, node):
    return memory.append("dag_nodes", node.to_payload(), node.timestamp)


def replay_nodes(memory, date_from=None, date_to=None):
    """
    Current state of every cycle node.

    Daily files are merged in date order; a later record for a node id
    replaces the earlier one.

    Returns:
        list: Nodes in first-seen order.
    """
    nodes = {}
    for record in memory.replay("dag_nodes", date_from, date_to).records:
        node = CycleNode.from_payload(record.payload)
        nodes[node.id] = node
    return list(nodes.values())
