"""Round-synchronous parallel peeling to the k-core, with a per-round trace,
plus a sequential one-vertex-at-a-time k-core oracle.

Each round simultaneously removes every vertex whose current degree is below
k, together with all incident edges; removals are computed from the state at
round start only.  The round count s counts only rounds that removed at least
one vertex, so a graph that already is a k-core has s = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph


@dataclass
class RoundRecord:
    index: int  # 1-based round number
    removed_vertices: np.ndarray
    removed_edges: np.ndarray
    surviving_vertex_count: int
    surviving_edge_count: int
    surviving_deg_ge_k_count: int


@dataclass
class PeelingTrace:
    k: int
    n: int
    m: int
    initial_deg_ge_k: int
    rounds: list
    s: int
    core_vertices: np.ndarray
    core_edges: np.ndarray


def parallel_peel(h: Hypergraph, k: int) -> PeelingTrace:
    """Peel h to its k-core, recording every round.

    Vertices of degree 0 (including initially isolated ones) are removed like
    any other vertex of degree < k.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n, m = h.n, h.m
    deg = h.degrees()
    alive = np.ones(n, dtype=bool)
    edges_cur = h.edges
    eids_cur = np.arange(m, dtype=np.int64)

    rounds = []
    alive_count, edge_count = n, m
    while True:
        removable = alive & (deg < k)
        ids = np.flatnonzero(removable)
        if ids.size == 0:
            break
        alive[ids] = False
        alive_count -= ids.size
        if edge_count:
            hit = removable[edges_cur].any(axis=1)
            gone = eids_cur[hit]
            if gone.size:
                dec = np.bincount(edges_cur[hit].ravel(), minlength=n)
                deg -= dec
                edges_cur = edges_cur[~hit]
                eids_cur = eids_cur[~hit]
                edge_count -= gone.size
        else:
            gone = np.empty(0, dtype=np.int64)
        dgk = int(np.count_nonzero(alive & (deg >= k)))
        rounds.append(
            RoundRecord(
                index=len(rounds) + 1,
                removed_vertices=ids,
                removed_edges=gone,
                surviving_vertex_count=alive_count,
                surviving_edge_count=edge_count,
                surviving_deg_ge_k_count=dgk,
            )
        )
    initial_deg = h.degrees()
    return PeelingTrace(
        k=k,
        n=n,
        m=m,
        initial_deg_ge_k=int(np.count_nonzero(initial_deg >= k)),
        rounds=rounds,
        s=len(rounds),
        core_vertices=np.flatnonzero(alive),
        core_edges=eids_cur,
    )


def sequential_kcore(h: Hypergraph, k: int):
    """k-core by repeatedly deleting one minimum-degree vertex while the
    minimum degree is below k (bucket-queue schedule).

    Returns (core_vertex_ids, core_edge_ids), both sorted ascending.  Serves
    as an order-independence oracle against parallel_peel.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n, m = h.n, h.m
    deg = [0] * n
    inc = [[] for _ in range(n)]
    edges = h.edges.tolist()
    for eid, e in enumerate(edges):
        for v in e:
            deg[v] += 1
            inc[v].append(eid)

    maxdeg = max(deg, default=0)
    buckets = [[] for _ in range(maxdeg + 1)]
    for v in range(n):
        buckets[min(deg[v], maxdeg)].append(v)

    alive_v = [True] * n
    alive_e = [True] * m
    removed = 0
    d = 0
    while removed < n:
        # Find the current minimum occupied bucket below k (lazy deletion).
        while d <= maxdeg and not buckets[d]:
            d += 1
        if d > maxdeg:
            break
        v = buckets[d].pop()
        if not alive_v[v] or deg[v] != d:
            continue  # stale entry
        if d >= k:
            break
        alive_v[v] = False
        removed += 1
        for eid in inc[v]:
            if not alive_e[eid]:
                continue
            alive_e[eid] = False
            for u in edges[eid]:
                if u != v and alive_v[u]:
                    deg[u] -= 1
                    buckets[deg[u]].append(u)
                    if deg[u] < d:
                        d = deg[u]
    core_v = np.flatnonzero(np.array(alive_v, dtype=bool))
    core_e = np.flatnonzero(np.array(alive_e, dtype=bool))
    return core_v, core_e


def graph_after_rounds(trace: PeelingTrace, i: int):
    """Surviving (vertex_ids, edge_ids) after min(i, s) peeling rounds;
    i = 0 returns the whole graph."""
    if i < 0:
        raise ValueError(f"round index must be >= 0, got {i}")
    alive_v = np.ones(trace.n, dtype=bool)
    alive_e = np.ones(trace.m, dtype=bool)
    for rec in trace.rounds[: min(i, trace.s)]:
        alive_v[rec.removed_vertices] = False
        alive_e[rec.removed_edges] = False
    return np.flatnonzero(alive_v), np.flatnonzero(alive_e)
