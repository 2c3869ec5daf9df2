"""Command-line entry point: build, query and serve co-occurrence graphs.

Exit codes: 0 on success, 1 for usage problems, 2 for data errors
(unparseable annotations, conflicting merges, missing files, unknown
focus nodes).
"""

from __future__ import annotations

import difflib
import json
from pathlib import Path

import click

from . import community as community_mod
from . import ego as ego_mod
from .cograph import (
    ConstellationGraph,
    GraphDocumentError,
    build_graph,
    filter_graph,
    read_graph,
    stats,
    write_graph,
)
from .ingest import IngestError, build_index, load_many

_THRESHOLD = click.FloatRange(0.0, 0.5)


@click.group()
def cli():
    """Build and explore object co-occurrence networks."""


@cli.command("build")
@click.option(
    "--annotations",
    "-a",
    "annotation_paths",
    multiple=True,
    required=True,
    type=click.Path(path_type=Path),
    help="COCO-style instances file; repeat for several splits.",
)
@click.option(
    "--out",
    "-o",
    "out_path",
    required=True,
    type=click.Path(path_type=Path),
    help="Where to write the graph document.",
)
@click.option(
    "--include-crowd/--exclude-crowd",
    default=True,
    show_default=True,
    help="Count crowd annotations like ordinary instances.",
)
def cmd_build(annotation_paths, out_path, include_crowd):
    """Parse annotations, build the weighted graph, write it to disk."""
    dataset = load_many(annotation_paths)
    index = build_index(dataset, include_crowd=include_crowd)
    graph = build_graph(index)
    write_graph(graph, out_path)
    summary = stats(graph)
    click.echo(
        f"nodes={summary.nodes} edges={summary.edges} "
        f"avg_degree={summary.average_degree:.2f}"
    )


@cli.command("ego")
@click.argument("focus")
@click.option("--graph", "graph_path", required=True, type=click.Path(path_type=Path))
@click.option("--threshold", default=0.0, show_default=True, type=_THRESHOLD)
@click.option(
    "--decay", default=0.8, show_default=True, type=click.FloatRange(0.0, 1.0, min_open=True)
)
@click.option(
    "--fire", default=0.05, show_default=True, type=click.FloatRange(0.0, min_open=True)
)
@click.option("--max-depth", default=None, type=click.IntRange(min=0))
def cmd_ego(focus, graph_path, threshold, decay, fire, max_depth):
    """Print the spreading-activation tree around FOCUS (name or id)."""
    graph = read_graph(graph_path)
    focus_id = _resolve_focus(graph, focus)
    params = ego_mod.EgoParams(decay=decay, fire_threshold=fire, max_depth=max_depth)
    tree = ego_mod.expand(filter_graph(graph, threshold), focus_id, params)
    click.echo(json.dumps(ego_mod.to_document(tree), indent=2))


@cli.command("communities")
@click.option("--graph", "graph_path", required=True, type=click.Path(path_type=Path))
@click.option("--threshold", default=0.0, show_default=True, type=_THRESHOLD)
@click.option("--json", "as_json", is_flag=True, help="Print the machine-readable block.")
def cmd_communities(graph_path, threshold, as_json):
    """Detect communities on the thresholded graph and print them."""
    graph = read_graph(graph_path)
    assignment = community_mod.detect(filter_graph(graph, threshold))
    if as_json:
        click.echo(
            json.dumps(
                community_mod.to_document(assignment, graph.node_ids()), indent=2
            )
        )
        return
    click.echo(
        f"threshold={threshold} modularity={assignment.modularity:.4f} "
        f"communities={assignment.community_count}"
    )
    names = {node.id: node.name for node in graph.nodes}
    groups: dict[int, list[int]] = {}
    for node_id, comm in assignment.membership.items():
        groups.setdefault(comm, []).append(node_id)
    for comm in sorted(groups):
        members = ", ".join(names[nid] for nid in sorted(groups[comm]))
        click.echo(f"  [{comm}] size={len(groups[comm])}: {members}")


@cli.command("serve")
@click.option("--graph", "graph_path", required=True, type=click.Path(path_type=Path))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=click.IntRange(1, 65535))
@click.option(
    "--ui",
    "ui_dir",
    default=None,
    type=click.Path(path_type=Path),
    help="Static UI bundle to serve at /.",
)
def cmd_serve(graph_path, host, port, ui_dir):
    """Serve the read-only API (and the UI bundle, when built)."""
    import uvicorn

    from .service import create_app

    graph = read_graph(graph_path)
    app = create_app(graph, static_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


def _resolve_focus(graph: ConstellationGraph, focus: str) -> int:
    by_name = {node.name: node.id for node in graph.nodes}
    if focus in by_name:
        return by_name[focus]
    try:
        focus_id = int(focus)
    except ValueError:
        focus_id = None
    if focus_id is not None and any(node.id == focus_id for node in graph.nodes):
        return focus_id
    suggestions = difflib.get_close_matches(focus, by_name, n=3, cutoff=0.5)
    hint = f"; close matches: {', '.join(suggestions)}" if suggestions else ""
    raise click.ClickException(f"unknown focus {focus!r}{hint}")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 2
    except (IngestError, GraphDocumentError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
