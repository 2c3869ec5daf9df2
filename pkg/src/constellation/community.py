"""Community detection by greedy modularity maximization.

Two phases repeated until the score stops improving: local single-node
moves between neighboring communities, then condensation of every
community into a super-node (internal weight becomes a self-loop) and a
rerun on the condensed graph. Everything is deterministic: nodes are
visited in ascending id order and gain ties prefer the smallest community
label; the seed only matters in the optional shuffled mode.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .cograph import ThresholdedGraph

# Moves must improve the score by more than this; float noise loops otherwise.
_MIN_GAIN = 1e-9


@dataclass(frozen=True)
class CommunityAssignment:
    """Node-to-community mapping at one threshold.

    Community indices are dense 0..k-1, ordered by descending community
    size with ties broken by the smallest member node id, so colors stay
    stable run to run. ``q_trace`` holds the modularity after every
    local-move sweep (first entry: the all-singleton start).
    """

    threshold: float
    membership: dict[int, int]
    modularity: float
    sizes: tuple[int, ...]
    q_trace: tuple[float, ...]

    @property
    def community_count(self) -> int:
        return len(self.sizes)


def modularity(
    graph: ThresholdedGraph, membership: Mapping[int, int]
) -> float:
    """Weighted Newman modularity of a node partition.

    Q = (1/2m) * sum_ij [w_ij - k_i*k_j/2m] * delta(c_i, c_j), which for an
    edge list reduces to intra/m - sum_c (tot_c/2m)^2. A graph with zero
    total edge weight scores 0 by definition.
    """
    node_ids = graph.node_ids()
    missing = [nid for nid in node_ids if nid not in membership]
    if missing:
        raise ValueError(f"membership does not cover nodes: {missing[:5]}")

    m = sum(edge.weight for edge in graph.edges)
    if m == 0:
        return 0.0

    degrees: dict[int, float] = defaultdict(float)
    intra = 0.0
    for edge in graph.edges:
        degrees[edge.source] += edge.weight
        degrees[edge.target] += edge.weight
        if membership[edge.source] == membership[edge.target]:
            intra += edge.weight

    totals: dict[int, float] = defaultdict(float)
    for nid in node_ids:
        totals[membership[nid]] += degrees.get(nid, 0.0)
    return intra / m - sum((tot / (2.0 * m)) ** 2 for tot in totals.values())


def detect(
    graph: ThresholdedGraph,
    seed: int = 0,
    *,
    shuffle: bool = False,
    restarts: int = 32,
) -> CommunityAssignment:
    """Run the two-phase optimization and return the best flat partition.

    The first run starts from singletons; the remaining ``restarts - 1``
    runs start from seeded random partitions, which lets the greedy climb
    escape merge-order traps on small graphs. The highest-modularity run
    wins, ties going to the earliest (canonical) run, so the result is a
    pure function of (graph, seed, restarts). ``shuffle`` switches node
    visits to a seeded random order; the default ascending order keeps UI
    colors stable across recomputations.
    """
    node_ids = list(graph.node_ids())
    n = len(node_ids)
    index_of = {nid: i for i, nid in enumerate(node_ids)}
    m = sum(edge.weight for edge in graph.edges)

    if n == 0 or m == 0:
        membership = {nid: i for i, nid in enumerate(node_ids)}
        return CommunityAssignment(
            threshold=graph.threshold,
            membership=membership,
            modularity=0.0,
            sizes=(1,) * n,
            q_trace=(0.0,),
        )

    adjacency: list[dict[int, float]] = [{} for _ in range(n)]
    for edge in graph.edges:
        u, v = index_of[edge.source], index_of[edge.target]
        adjacency[u][v] = adjacency[u].get(v, 0.0) + edge.weight
        adjacency[v][u] = adjacency[v].get(u, 0.0) + edge.weight

    rng = random.Random(seed)
    order_rng = rng if shuffle else None
    best: tuple[float, list[int], list[float]] | None = None
    for run in range(max(1, restarts)):
        if run == 0:
            init = None
        else:
            blocks = rng.randint(1, n)
            init = [rng.randrange(blocks) for _ in range(n)]
        node_to_level, q_trace = _one_run(adjacency, m, init, order_rng)
        final_q = q_trace[-1]
        if best is None or final_q > best[0]:
            best = (final_q, node_to_level, q_trace)

    membership = _canonical_membership(node_ids, best[1])
    sizes: dict[int, int] = defaultdict(int)
    for community in membership.values():
        sizes[community] += 1
    return CommunityAssignment(
        threshold=graph.threshold,
        membership=membership,
        modularity=modularity(graph, membership),
        sizes=tuple(sizes[c] for c in range(len(sizes))),
        q_trace=tuple(best[2]),
    )


def _one_run(adjacency, m, init, order_rng):
    """One full local-moves + condensation cascade from a given start."""
    n = len(adjacency)
    neighbors = [dict(row) for row in adjacency]
    loops = [0.0] * n
    node_to_level = list(range(n))
    q_trace: list[float] = []

    first_level = True
    while True:
        level_n = len(loops)
        k = [sum(neighbors[i].values()) + 2.0 * loops[i] for i in range(level_n)]
        comm, level_trace = _local_moves(neighbors, loops, k, m, order_rng, init)
        init = None
        if first_level:
            q_trace.append(level_trace[0])
            first_level = False
        q_trace.extend(level_trace[1:])

        labels = sorted(set(comm))
        if len(labels) == level_n:
            break
        relabel = {label: idx for idx, label in enumerate(labels)}
        node_to_level = [relabel[comm[i]] for i in node_to_level]
        neighbors, loops = _condense(neighbors, loops, comm, relabel)
    return node_to_level, q_trace


def to_document(
    assignment: CommunityAssignment, node_ids: Sequence[int]
) -> dict:
    """Assignment block appended to graph documents: one index per node."""
    return {
        "threshold": assignment.threshold,
        "modularity": assignment.modularity,
        "membership": [assignment.membership[nid] for nid in node_ids],
    }


def _local_moves(neighbors, loops, k, m, rng, init=None):
    """Sweep nodes, greedily reassigning each to its best community.

    Returns the community label per node and the modularity after the
    initial state and after every sweep. Candidate communities are the
    current one, every neighboring one, and a fresh singleton (detaching);
    comparisons use the move gain l_C - tot_C*k_i/2m, which orders
    candidates identically to the full modularity delta.
    """
    n = len(k)
    comm = list(init) if init is not None else list(range(n))
    tot: dict[int, float] = defaultdict(float)
    size: dict[int, int] = defaultdict(int)
    for i in range(n):
        tot[comm[i]] += k[i]
        size[comm[i]] += 1
    tot, size = dict(tot), dict(size)
    next_label = max(comm) + n + 1
    trace = [_level_modularity(neighbors, loops, m, comm, tot)]

    order = list(range(n))
    moved = True
    while moved:
        moved = False
        if rng is not None:
            rng.shuffle(order)
        for i in order:
            c_old = comm[i]
            links: dict[int, float] = defaultdict(float)
            for j, w in neighbors[i].items():
                links[comm[j]] += w
            tot[c_old] -= k[i]
            size[c_old] -= 1

            best_c = c_old
            best_gain = links.get(c_old, 0.0) - tot[c_old] * k[i] / (2.0 * m)
            for c in sorted(links):
                if c == c_old:
                    continue
                gain = links[c] - tot[c] * k[i] / (2.0 * m)
                if gain > best_gain + _MIN_GAIN * m:
                    best_c, best_gain = c, gain
            if size[c_old] > 0 and 0.0 > best_gain + _MIN_GAIN * m:
                best_c = next_label
                next_label += 1

            tot[best_c] = tot.get(best_c, 0.0) + k[i]
            size[best_c] = size.get(best_c, 0) + 1
            if size[c_old] == 0:
                del tot[c_old]
                del size[c_old]
            comm[i] = best_c
            if best_c != c_old:
                moved = True
        trace.append(_level_modularity(neighbors, loops, m, comm, tot))
    return comm, trace


def _level_modularity(neighbors, loops, m, comm, tot):
    intra = sum(loops)
    for i, adjacency in enumerate(neighbors):
        for j, w in adjacency.items():
            if i < j and comm[i] == comm[j]:
                intra += w
    return intra / m - sum((t / (2.0 * m)) ** 2 for t in tot.values())


def _condense(neighbors, loops, comm, relabel):
    """Merge communities into super-nodes; internal weight becomes a loop."""
    count = len(relabel)
    new_neighbors: list[dict[int, float]] = [{} for _ in range(count)]
    new_loops = [0.0] * count
    for i, adjacency in enumerate(neighbors):
        ci = relabel[comm[i]]
        new_loops[ci] += loops[i]
        for j, w in adjacency.items():
            if j < i:
                continue
            cj = relabel[comm[j]]
            if ci == cj:
                new_loops[ci] += w
            else:
                new_neighbors[ci][cj] = new_neighbors[ci].get(cj, 0.0) + w
                new_neighbors[cj][ci] = new_neighbors[cj].get(ci, 0.0) + w
    return new_neighbors, new_loops


def _canonical_membership(node_ids, node_to_level):
    """Dense community indices ordered by size desc, then smallest member id."""
    members: dict[int, list[int]] = defaultdict(list)
    for nid, level_label in zip(node_ids, node_to_level):
        members[level_label].append(nid)
    ranked = sorted(
        members.values(), key=lambda group: (-len(group), min(group))
    )
    membership: dict[int, int] = {}
    for community, group in enumerate(ranked):
        for nid in group:
            membership[nid] = community
    return membership
