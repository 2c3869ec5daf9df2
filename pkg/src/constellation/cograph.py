"""Weighted co-occurrence graph: Jaccard weights, thresholding, stats, JSON round-trip.

Edge weight between two categories is the Jaccard index of their image
sets: |A∩B| / |A∪B|. Weights are stored as floats computed from exact
integer counts, and the counts travel with every edge so any consumer can
recompute the division.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .ingest import Category, CategoryImageIndex


class GraphDocumentError(Exception):
    """A graph document read from disk does not match the expected schema."""


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    weight: float
    intersection: int
    union: int


@dataclass(frozen=True)
class ConstellationGraph:
    """Undirected weighted graph over all categories.

    Nodes ascend by category id; edges ascend by (source, target) with
    source < target, carry strictly positive weights and have no
    duplicates or self-loops. Isolated categories stay in the node list.
    """

    nodes: tuple[Category, ...]
    edges: tuple[Edge, ...]
    image_count: int
    annotation_count: int
    include_crowd: bool = True

    def node_ids(self) -> tuple[int, ...]:
        return tuple(node.id for node in self.nodes)


@dataclass(frozen=True)
class ThresholdedGraph:
    """View of a graph keeping only edges at or above a weight threshold."""

    base: ConstellationGraph
    threshold: float
    edges: tuple[Edge, ...]

    @property
    def nodes(self) -> tuple[Category, ...]:
        return self.base.nodes

    def node_ids(self) -> tuple[int, ...]:
        return self.base.node_ids()


@dataclass(frozen=True)
class GraphStats:
    nodes: int
    edges: int
    average_degree: float
    weight_min: float
    weight_max: float
    weight_mean: float


def jaccard(index: CategoryImageIndex, a: int, b: int) -> float:
    """Relative co-occurrence of two categories: |A∩B| / |A∪B|.

    Defined as 0.0 when both image sets are empty. The self-relation is
    undefined in the graph, so a == b is rejected.
    """
    if a == b:
        raise ValueError(f"self-relation is undefined (category id {a})")
    for category_id in (a, b):
        if category_id not in index.entries:
            raise KeyError(f"unknown category id: {category_id}")
    set_a = index.entries[a]
    set_b = index.entries[b]
    union = len(set_a | set_b)
    if union == 0:
        return 0.0
    return len(set_a & set_b) / union


def build_graph(index: CategoryImageIndex) -> ConstellationGraph:
    """Materialize one edge per unordered category pair with positive weight.

    Iterates images once, accumulating per-image co-occurring pairs, rather
    than intersecting every set pair; the result is identical to direct
    set intersection.
    """
    by_image: dict[int, list[int]] = defaultdict(list)
    for category_id, images in index.entries.items():
        for image_id in images:
            by_image[image_id].append(category_id)

    pair_counts: dict[tuple[int, int], int] = defaultdict(int)
    for categories in by_image.values():
        if len(categories) < 2:
            continue
        for u, v in combinations(sorted(categories), 2):
            pair_counts[(u, v)] += 1

    sizes = {category_id: len(images) for category_id, images in index.entries.items()}
    edges = []
    for (u, v), intersection in sorted(pair_counts.items()):
        union = sizes[u] + sizes[v] - intersection
        edges.append(Edge(u, v, intersection / union, intersection, union))

    return ConstellationGraph(
        nodes=tuple(sorted(index.categories, key=lambda c: c.id)),
        edges=tuple(edges),
        image_count=index.image_count,
        annotation_count=index.annotation_count,
        include_crowd=index.include_crowd,
    )


def filter_graph(graph: ConstellationGraph, threshold: float) -> ThresholdedGraph:
    """Keep edges with weight >= threshold; threshold 0 keeps everything.

    The node set is unchanged, so nodes losing all their links float free.
    """
    if not 0.0 <= threshold <= 0.5:
        raise ValueError(f"threshold must lie in [0, 0.5], got {threshold}")
    if threshold == 0.0:
        kept = graph.edges
    else:
        kept = tuple(edge for edge in graph.edges if edge.weight >= threshold)
    return ThresholdedGraph(base=graph, threshold=threshold, edges=kept)


def stats(graph: ConstellationGraph | ThresholdedGraph) -> GraphStats:
    """Node/edge counts, average degree 2|E|/|V| and weight summary.

    Average degree runs over every node, isolated ones included.
    """
    node_count = len(graph.nodes)
    edge_count = len(graph.edges)
    weights = [edge.weight for edge in graph.edges]
    return GraphStats(
        nodes=node_count,
        edges=edge_count,
        average_degree=2 * edge_count / node_count if node_count else 0.0,
        weight_min=min(weights) if weights else 0.0,
        weight_max=max(weights) if weights else 0.0,
        weight_mean=sum(weights) / len(weights) if weights else 0.0,
    )


def to_document(graph: ConstellationGraph) -> dict:
    """Serializable node-link document; the engine/service/UI contract."""
    return {
        "meta": {
            "images": graph.image_count,
            "annotations": graph.annotation_count,
            "include_crowd": graph.include_crowd,
        },
        "nodes": [
            {"id": n.id, "name": n.name, "supercategory": n.supercategory}
            for n in graph.nodes
        ],
        "edges": [
            {
                "source": e.source,
                "target": e.target,
                "weight": e.weight,
                "intersection": e.intersection,
                "union": e.union,
            }
            for e in graph.edges
        ],
    }


def from_document(document: dict) -> ConstellationGraph:
    try:
        meta = document["meta"]
        nodes = tuple(
            Category(n["id"], n["name"], n["supercategory"])
            for n in document["nodes"]
        )
        edges = tuple(
            Edge(e["source"], e["target"], e["weight"], e["intersection"], e["union"])
            for e in document["edges"]
        )
        return ConstellationGraph(
            nodes=nodes,
            edges=edges,
            image_count=meta["images"],
            annotation_count=meta["annotations"],
            include_crowd=meta.get("include_crowd", True),
        )
    except (KeyError, TypeError) as exc:
        raise GraphDocumentError(f"not a graph document: {exc}") from exc


def write_graph(graph: ConstellationGraph, path: str | Path) -> None:
    """Write the graph document; identical graphs give identical bytes."""
    Path(path).write_text(
        json.dumps(to_document(graph), indent=2) + "\n", encoding="utf-8"
    )


def read_graph(path: str | Path) -> ConstellationGraph:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphDocumentError(f"malformed graph document: {exc}") from exc
    return from_document(document)
