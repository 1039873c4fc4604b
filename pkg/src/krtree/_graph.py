"""Small directed-graph helpers over dense integer vertex sets.

Graphs are given as successor lists ``succ[v] -> iterable of targets``.
Vertex sets are encoded as Python ints used as bitsets.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence

import networkx as nx


def _digraph(succ: Sequence[Iterable[int]]) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(len(succ)))
    for v, targets in enumerate(succ):
        g.add_edges_from((v, w) for w in targets)
    return g


def scc_ids(succ: Sequence[Iterable[int]]) -> list[int]:
    """Component id per vertex, components numbered by their least vertex."""
    comps = sorted(
        (sorted(c) for c in nx.strongly_connected_components(_digraph(succ))),
        key=lambda c: c[0],
    )
    ids = [0] * len(succ)
    for cid, comp in enumerate(comps):
        for v in comp:
            ids[v] = cid
    return ids


def condensation(succ: Sequence[Iterable[int]], ids: Sequence[int]) -> list[set[int]]:
    """Successor sets of the condensation DAG (no self-loops)."""
    ncomp = max(ids) + 1 if ids else 0
    dag: list[set[int]] = [set() for _ in range(ncomp)]
    for v, targets in enumerate(succ):
        for w in targets:
            if ids[v] != ids[w]:
                dag[ids[v]].add(ids[w])
    return dag


def topological_order(dag: Sequence[Iterable[int]]) -> list[int]:
    g = _digraph(dag)
    return list(nx.lexicographical_topological_sort(g))


def reachability(succ: Sequence[Iterable[int]]) -> list[int]:
    """``reach[v]`` is the bitset of vertices reachable from ``v`` (``v`` included)."""
    ids = scc_ids(succ)
    dag = condensation(succ, ids)
    members = [0] * len(dag)
    for v, c in enumerate(ids):
        members[c] |= 1 << v
    creach = [0] * len(dag)
    for c in reversed(topological_order(dag)):
        mask = members[c]
        for d in dag[c]:
            mask |= creach[d]
        creach[c] = mask
    return [creach[c] for c in ids]


def longest_path_depths(dag: Sequence[Iterable[int]], source: int) -> list[int]:
    """Longest edge count from ``source`` to each DAG vertex (-1 if unreachable)."""
    depth = [-1] * len(dag)
    depth[source] = 0
    for c in topological_order(dag):
        if depth[c] < 0:
            continue
        for d in dag[c]:
            if depth[c] + 1 > depth[d]:
                depth[d] = depth[c] + 1
    return depth


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
