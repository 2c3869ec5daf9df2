"""Ego-network expansion by spreading activation.

Starting from a focus node with a fixed energy budget, activation flows
across retained edges: a neighbor is offered energy * weight * decay, and
only offers at or above the firing threshold survive. Expansion is
best-first (highest pending energy next, smaller node id on ties), so a
node's final energy is the maximum over all offers it received before
extraction, and its depth is the hop count of the chosen parent chain.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from .cograph import ThresholdedGraph


@dataclass(frozen=True)
class EgoParams:
    """Expansion parameters; the defaults drive the interactive ego view."""

    initial_energy: float = 1.0
    decay: float = 0.8
    fire_threshold: float = 0.05
    max_depth: Optional[int] = None

    def __post_init__(self):
        if not 0.0 < self.decay <= 1.0:
            raise ValueError(f"decay must lie in (0, 1], got {self.decay}")
        if self.fire_threshold <= 0.0:
            raise ValueError(
                f"fire_threshold must be positive, got {self.fire_threshold}"
            )
        if self.fire_threshold >= self.initial_energy:
            raise ValueError(
                "fire_threshold must be below initial_energy "
                f"({self.fire_threshold} >= {self.initial_energy})"
            )
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError(f"max_depth must be >= 0, got {self.max_depth}")


@dataclass(frozen=True)
class EgoMember:
    id: int
    energy: float
    depth: int
    parent: Optional[int]


@dataclass(frozen=True)
class EgoTree:
    """Members reachable from the focus, each with energy, depth and parent.

    The focus sits at depth 0 with the initial energy and no parent; every
    other member fired at or above the threshold and points to a parent one
    level closer. Members are ordered by (depth, descending energy, id).
    """

    focus: int
    params: EgoParams
    members: tuple[EgoMember, ...]

    @property
    def member_ids(self) -> frozenset[int]:
        return frozenset(member.id for member in self.members)

    def depth_of(self, node_id: int) -> int:
        for member in self.members:
            if member.id == node_id:
                return member.depth
        raise KeyError(f"node {node_id} is not in the tree")


def expand(
    graph: ThresholdedGraph, focus: int, params: EgoParams = EgoParams()
) -> EgoTree:
    """Grow the ego tree from ``focus`` over the graph's retained edges."""
    known = {node.id for node in graph.nodes}
    if focus not in known:
        raise KeyError(f"unknown focus node: {focus}")

    adjacency: dict[int, list[tuple[int, float]]] = defaultdict(list)
    for edge in graph.edges:
        adjacency[edge.source].append((edge.target, edge.weight))
        adjacency[edge.target].append((edge.source, edge.weight))
    for neighbors in adjacency.values():
        neighbors.sort()

    # Lazy-deletion max-heap; the first extraction of a node carries its
    # maximum offer because offered energies never exceed the offerer's.
    counter = 0
    frontier: list[tuple[float, int, int, int, Optional[int]]] = [
        (-params.initial_energy, focus, counter, 0, None)
    ]
    done: dict[int, EgoMember] = {}
    order: list[EgoMember] = []
    while frontier:
        negative_energy, node, _, depth, parent = heapq.heappop(frontier)
        if node in done:
            continue
        member = EgoMember(node, -negative_energy, depth, parent)
        done[node] = member
        order.append(member)
        if params.max_depth is not None and depth >= params.max_depth:
            continue
        for neighbor, weight in adjacency[node]:
            if neighbor in done:
                continue
            offered = member.energy * weight * params.decay
            if offered >= params.fire_threshold:
                counter += 1
                heapq.heappush(
                    frontier, (-offered, neighbor, counter, depth + 1, node)
                )

    order.sort(key=lambda m: (m.depth, -m.energy, m.id))
    return EgoTree(focus=focus, params=params, members=tuple(order))


def to_document(tree: EgoTree) -> dict:
    """Serializable ego document served by the API and printed by the CLI."""
    return {
        "focus": tree.focus,
        "params": {
            "initial_energy": tree.params.initial_energy,
            "decay": tree.params.decay,
            "fire_threshold": tree.params.fire_threshold,
            "max_depth": tree.params.max_depth,
        },
        "members": [
            {
                "id": member.id,
                "energy": member.energy,
                "depth": member.depth,
                "parent": member.parent,
            }
            for member in tree.members
        ],
    }
