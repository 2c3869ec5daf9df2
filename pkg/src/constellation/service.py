"""Read-only HTTP API over a built graph, plus static hosting for the UI.

Endpoints:
    GET /api/categories                      category list, ascending id
    GET /api/graph?threshold=t               thresholded edges + communities
    GET /api/ego/{id}?threshold&decay&fire   spreading-activation tree
    GET /api/stats                           whole-graph summary

The loaded graph never mutates, so every response is a pure function of
the query; community detection results are memoized per threshold
(quantized to 3 decimals) to keep slider drags smooth.
"""

from __future__ import annotations

from dataclasses import asdict
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from . import community, ego
from .cograph import ConstellationGraph, filter_graph, stats, to_document


def create_app(
    graph: ConstellationGraph, *, static_dir: str | Path | None = None
) -> FastAPI:
    app = FastAPI(title="constellation", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    node_ids = graph.node_ids()
    # Pure memo: concurrent writers race to store the same value.
    assignments: dict[float, community.CommunityAssignment] = {}

    def _checked_threshold(threshold: float) -> float:
        if not 0.0 <= threshold <= 0.5:
            raise HTTPException(
                status_code=400,
                detail=f"threshold must lie in [0, 0.5], got {threshold}",
            )
        return threshold

    def _assignment_at(threshold: float) -> community.CommunityAssignment:
        key = round(threshold, 3)
        cached = assignments.get(key)
        if cached is None:
            cached = community.detect(filter_graph(graph, key))
            assignments[key] = cached
        return cached

    @app.get("/api/categories")
    def categories():
        return [
            {"id": n.id, "name": n.name, "supercategory": n.supercategory}
            for n in graph.nodes
        ]

    @app.get("/api/graph")
    def thresholded_graph(threshold: float = 0.0):
        threshold = _checked_threshold(threshold)
        filtered = filter_graph(graph, threshold)
        assignment = _assignment_at(threshold)
        document = to_document(graph)
        document["threshold"] = threshold
        document["edges"] = [
            {
                "source": e.source,
                "target": e.target,
                "weight": e.weight,
                "intersection": e.intersection,
                "union": e.union,
            }
            for e in filtered.edges
        ]
        communities_block = community.to_document(assignment, node_ids)
        communities_block["threshold"] = threshold
        document["communities"] = communities_block
        return document

    @app.get("/api/ego/{node_id}")
    def ego_tree(
        node_id: int,
        threshold: float = 0.0,
        decay: float = 0.8,
        fire: float = 0.05,
        max_depth: Optional[int] = None,
    ):
        threshold = _checked_threshold(threshold)
        try:
            params = ego.EgoParams(
                decay=decay, fire_threshold=fire, max_depth=max_depth
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        try:
            tree = ego.expand(filter_graph(graph, threshold), node_id, params)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=exc.args[0]) from exc
        document = ego.to_document(tree)
        document["threshold"] = threshold
        return document

    @app.get("/api/stats")
    def graph_stats():
        return asdict(stats(graph))

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
