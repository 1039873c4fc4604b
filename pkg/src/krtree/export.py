"""Deterministic DOT, JSON and TSV renderings, plus JSON loaders for round trips.

Every output is a pure function of its input: vertices are listed by index,
edges by source then letter, and JSON keys keep insertion order.
"""
from __future__ import annotations

import json

import numpy as np

from . import cayley
from .cayley import LEFT, RIGHT, CayleyGraph, Edge
from .chiswell import ChiswellTree, ChiswellVertex, EllipticMap, make_context
from .errors import InputError
from .inputs import parse_spec
from .kr import KRElement, KRSemigroup
from .semigroup import FiniteSemigroup, adjoin_identity, opposite, parse_word

TRANSITION_STYLE = 'color="blue", penwidth="2"'
ACTION_STYLE = 'color="red", constraint="false"'


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _q(text) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


# --------------------------------------------------------------------------
# semigroups


def semigroup_dict(S: FiniteSemigroup) -> dict:
    return S.to_dict()


def semigroup_from_dict(doc: dict) -> FiniteSemigroup:
    return parse_spec(doc)


def semigroup_tsv(S: FiniteSemigroup) -> str:
    """Cayley table with element names; the first row lists the right factors."""
    lines = ["\t".join([""] + list(S.names))]
    for x, row in enumerate(S.table):
        lines.append("\t".join([S.names[x]] + [S.names[y] for y in row]))
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Cayley graphs


def cayley_dict(G: CayleyGraph) -> dict:
    return {
        "side": G.side,
        "alphabet": list(G.alphabet),
        "root": G.root,
        "vertices": [{"id": v, "name": G.semigroup.names[v], "scc": G.scc[v]} for v in G.vertices],
        "edges": [
            {"source": s, "letter": a, "target": t, "transition": G.is_transition(Edge(s, a, t))}
            for s, a, t in G.edges()
        ],
    }


def cayley_dot(G: CayleyGraph) -> str:
    names = G.semigroup.names
    out = [f"digraph {_q(G.side + ' Cayley graph')} {{", "  node [shape=box];"]
    for v in G.vertices:
        out.append(f"  n{v} [label={_q(names[v])}];")
    for s, a, t in G.edges():
        if G.is_transition(Edge(s, a, t)):
            out.append(f'  n{s} -> n{t} [label={_q(a)}, transition="true", {TRANSITION_STYLE}];')
        else:
            out.append(f"  n{s} -> n{t} [label={_q(a)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def cayley_tsv(G: CayleyGraph) -> str:
    names = G.semigroup.names
    lines = ["source\tletter\ttarget\ttransition"]
    for s, a, t in G.edges():
        flag = "true" if G.is_transition(Edge(s, a, t)) else "false"
        lines.append(f"{names[s]}\t{a}\t{names[t]}\t{flag}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# expansions


def _source_semigroup(T: KRSemigroup) -> FiniteSemigroup:
    return opposite(T.base) if T.side == LEFT else T.base


def kr_dict(T: KRSemigroup) -> dict:
    return {
        "side": T.side,
        "alphabet": list(T.alphabet),
        "semigroup": semigroup_dict(_source_semigroup(T)),
        "elements": [
            {
                "rep": e.name,
                "image": e.image,
                "image_name": T.monoid.names[e.image],
                "transitions": [[s, a, t] for s, a, t in e.transitions],
            }
            for e in T.elements
        ],
        "step": [list(r) for r in T.step],
        "table": [list(r) for r in T.table],
    }


def kr_from_dict(doc: dict) -> KRSemigroup:
    """Rebuild an expansion from ``kr_dict`` output without recomputing the classes."""
    try:
        side = cayley.check_side(doc["side"])
        S = semigroup_from_dict(doc["semigroup"])
        base = opposite(S) if side == LEFT else S
        monoid = adjoin_identity(base)
        graph = cayley.build(monoid, RIGHT)
        elements = tuple(
            KRElement(
                int(e["image"]),
                tuple(Edge(int(s), a, int(t)) for s, a, t in e["transitions"]),
                parse_word(base.alphabet, e["rep"]),
            )
            for e in doc["elements"]
        )
        step = tuple(tuple(int(v) for v in r) for r in doc["step"])
        table = tuple(tuple(int(v) for v in r) for r in doc["table"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed expansion document: {e!r}") from None
    return KRSemigroup(side, base, monoid, graph, elements, step, table)


def kr_dot(T: KRSemigroup) -> str:
    """Right Cayley graph of ``T^1``; an edge is a transition when it adds a transition edge."""
    out = [f"digraph {_q('KR ' + T.side)} {{", "  node [shape=box];"]
    for x, e in enumerate(T.elements):
        out.append(f"  k{x} [label={_q(e.name)}];")
    for x, row in enumerate(T.step):
        grow = len(T.elements[x].transitions)
        for a, y in zip(T.alphabet, row):
            if len(T.elements[y].transitions) > grow:
                out.append(f'  k{x} -> k{y} [label={_q(a)}, transition="true", {TRANSITION_STYLE}];')
            else:
                out.append(f"  k{x} -> k{y} [label={_q(a)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def kr_tsv(T: KRSemigroup) -> str:
    lines = ["rep\timage\ttransitions"]
    names = T.monoid.names
    for e in T.elements:
        trans = " ".join(f"({names[s]},{a},{names[t]})" for s, a, t in e.transitions)
        lines.append(f"{e.name}\t{names[e.image]}\t{trans}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# trees


def tree_dict(tree: ChiswellTree) -> dict:
    T = tree.T
    return {
        "ell": tree.ell,
        "profile": list(tree.profile()),
        "heights": list(tree.ctx.heights),
        "vertices": [
            {
                "id": v,
                "depth": x.depth,
                "label": tree.label(v),
                "parent": tree.parent(v),
                "members": tree.member_names(v),
            }
            for v, x in enumerate(tree.vertices)
        ],
        "names": list(T.names),
        "D": tree.ctx.D.tolist(),
        "kr": kr_dict(T),
    }


def tree_from_dict(doc: dict) -> ChiswellTree:
    T = kr_from_dict(doc["kr"])
    ctx = make_context(T)
    if ctx.ell != doc["ell"] or ctx.D.tolist() != doc["D"]:
        raise InputError("stored length table does not match the expansion")
    index = {name: i for i, name in enumerate(T.names)}
    vertices, members = [], []
    class_of = np.full((ctx.ell + 1, T.size), -1, dtype=np.int64)
    for v, x in enumerate(doc["vertices"]):
        ids = tuple(index[m] for m in x["members"])
        vertices.append(ChiswellVertex(int(x["depth"]), min(ids)))
        members.append(ids)
        class_of[x["depth"], list(ids)] = v
    if (class_of < 0).any():
        raise InputError("stored tree does not partition every level")
    class_of.setflags(write=False)
    return ChiswellTree(ctx, ctx.ell, tuple(vertices), tuple(members), class_of)


def tree_dot(tree: ChiswellTree, *, hide_identity_chain: bool = False,
             overlay: EllipticMap | None = None) -> str:
    """Root on top, one ``rank=same`` group per level, undirected tree edges.

    ``overlay`` adds the arrows ``v -> f(v)`` as a second, red edge set.
    """
    hidden = set(tree.identity_chain()) if hide_identity_chain else set()
    out = [
        "digraph \"Chiswell tree\" {",
        f"  comment={_q(f'ell={tree.ell}')};",
        "  rankdir=TB;",
        "  node [shape=plaintext];",
    ]
    for k in range(tree.ell + 1):
        level = [v for v in tree.level(k) if v not in hidden]
        if level:
            out.append("  { rank=same; " + " ".join(f"v{v};" for v in level) + " }")
    for v in range(len(tree)):
        if v not in hidden:
            out.append(f"  v{v} [label={_q(tree.label(v))}];")
    for u, v in tree.edges():
        if u not in hidden and v not in hidden:
            out.append(f"  v{u} -> v{v} [dir=none];")
    if overlay is not None:
        if overlay.tree is not tree:
            raise InputError("overlay belongs to another tree")
        for v, w in enumerate(overlay.images):
            if v not in hidden and w not in hidden:
                out.append(f"  v{v} -> v{w} [label={_q(overlay.tag)}, {ACTION_STYLE}];")
    out.append("}")
    return "\n".join(out) + "\n"


def tree_tsv(tree: ChiswellTree) -> str:
    lines = ["vertex\tdepth\tparent\tmembers"]
    for v in range(len(tree)):
        p = tree.parent(v)
        lines.append(f"{tree.label(v)}\t{tree.depth(v)}\t{'' if p is None else tree.label(p)}\t"
                     + " ".join(tree.member_names(v)))
    return "\n".join(lines) + "\n"


def action_dict(f: EllipticMap, side: str) -> dict:
    return {
        "action": side,
        "element": f.tag.strip("."),
        "arrows": [{"from": a, "to": b} for a, b in f.arrows()],
    }


def action_tsv(f: EllipticMap) -> str:
    return "vertex\timage\n" + "".join(f"{a}\t{b}\n" for a, b in f.arrows())
