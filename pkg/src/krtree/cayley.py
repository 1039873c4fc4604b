"""Left and right Cayley graphs of ``(S, A)`` over ``S^1``.

An edge is a transition edge when there is no path back from its target to
its source, i.e. when it joins two different strongly connected components.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import NamedTuple

from . import _graph
from .errors import InputError
from .report import CheckResult, failed, passed
from .semigroup import (
    FiniteSemigroup,
    GreensStructure,
    Word,
    format_word,
    left_successors,
    opposite,
    parse_word,
    right_successors,
)

LEFT = "left"
RIGHT = "right"


class Edge(NamedTuple):
    source: int
    letter: str
    target: int


TransitionSequence = tuple[Edge, ...]


def check_side(side: str) -> str:
    if side not in (LEFT, RIGHT):
        raise InputError(f"side must be 'left' or 'right', not {side!r}")
    return side


@dataclass(frozen=True)
class CayleyGraph:
    """Complete deterministic ``A``-labelled graph on the elements of ``S^1``.

    ``succ[s][i]`` is the target of the edge leaving ``s`` with label
    ``alphabet[i]``; ``transition[s][i]`` flags it as a transition edge.
    """

    side: str
    semigroup: FiniteSemigroup
    succ: tuple[tuple[int, ...], ...]
    scc: tuple[int, ...]
    transition: tuple[tuple[bool, ...], ...]

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.semigroup.alphabet

    @property
    def root(self) -> int:
        return self.semigroup.identity

    @property
    def vertices(self) -> range:
        return range(len(self.succ))

    def step(self, s: int, letter: str) -> int:
        return self.succ[s][self.alphabet.index(letter)]

    def edges(self):
        """All edges, by source index then alphabet order."""
        for s, targets in enumerate(self.succ):
            for a, t in zip(self.alphabet, targets):
                yield Edge(s, a, t)

    def is_transition(self, edge: Edge) -> bool:
        s, a, t = edge
        i = self.alphabet.index(a)
        if self.succ[s][i] != t:
            raise InputError(f"{edge} is not an edge of this graph")
        return self.transition[s][i]

    def transition_edges(self) -> list[Edge]:
        return [e for e in self.edges() if self.is_transition(e)]

    def edge_triples(self) -> list[tuple[int, str, int]]:
        return [tuple(e) for e in self.edges()]


def build(S1: FiniteSemigroup, side: str) -> CayleyGraph:
    """Build ``LCay(S, A)`` (edges ``s -a-> as``) or ``RCay(S, A)`` (``s -a-> sa``)."""
    check_side(side)
    if S1.identity is None:
        raise InputError("Cayley graphs are built over S^1: adjoin an identity first")
    succ = right_successors(S1) if side == RIGHT else left_successors(S1)
    scc = _graph.scc_ids(succ)
    transition = tuple(
        tuple(scc[s] != scc[t] for t in targets) for s, targets in enumerate(succ)
    )
    return CayleyGraph(side, S1, tuple(succ), tuple(scc), transition)


def path_of_word(G: CayleyGraph, word) -> list[int]:
    """Vertices visited by the path labelled ``word`` starting at the identity."""
    w = parse_word(G.alphabet, word)
    rank = {a: i for i, a in enumerate(G.alphabet)}
    path = [G.root]
    for a in w:
        path.append(G.succ[path[-1]][rank[a]])
    return path


def transitions_of_word(G: CayleyGraph, word) -> TransitionSequence:
    w: Word = parse_word(G.alphabet, word)
    rank = {a: i for i, a in enumerate(G.alphabet)}
    s = G.root
    out = []
    for a in w:
        i = rank[a]
        t = G.succ[s][i]
        if G.transition[s][i]:
            out.append(Edge(s, a, t))
        s = t
    return tuple(out)


# --------------------------------------------------------------------------
# verification


def check_graph(G: CayleyGraph) -> CheckResult:
    """Transition flags agree with reachability; identity edges are transitions, loops are not."""
    name = f"{G.side} graph transition edges"
    below = _graph.reachability(G.succ)  # bit t of below[s]: t reachable from s
    for s, a, t in G.edges():
        back = bool(below[t] >> s & 1)
        flag = G.is_transition(Edge(s, a, t))
        if flag == back:
            return failed(name, [s, a, t], "flag disagrees with path-back test")
        if s == t and flag:
            return failed(name, [s, a, t], "loop flagged as transition")
        if s == G.root and not flag:
            return failed(name, [s, a, t], "edge from the identity is not a transition")
    return passed(name, f"{len(G.succ) * len(G.alphabet)} edges")


def check_right_criterion(G: CayleyGraph, g: GreensStructure) -> CheckResult:
    """On the right graph, ``(s, a, sa)`` is a transition edge iff ``sa <_R s``."""
    name = "right graph: transition iff R-descent"
    if G.side != RIGHT:
        return failed(name, G.side, "needs the right Cayley graph")
    for s, a, t in G.edges():
        if G.is_transition(Edge(s, a, t)) != g.less("R", t, s):
            return failed(name, [s, a, t])
    return passed(name)


def check_sequences(G: CayleyGraph, *, samples: int = 300, max_len: int = 8,
                    seed: int = 0) -> list[CheckResult]:
    """Endpoint descent, empty-iff-identity, and common edges keep their relative order."""
    rng = random.Random(seed)
    below = _graph.reachability(G.succ)
    limit = len(set(G.scc))

    def word():
        return tuple(rng.choice(G.alphabet) for _ in range(rng.randint(0, max_len)))

    descent = f"{G.side} graph: transition endpoints strictly descend"
    empty = f"{G.side} graph: no transitions iff the identity"
    order = f"{G.side} graph: shared transition edges keep their order"
    out = {}
    for _ in range(samples):
        u, v = word(), word()
        E = transitions_of_word(G, u)
        end = path_of_word(G, u)[-1]
        if descent not in out:
            if len(E) > limit:
                out[descent] = failed(descent, format_word(u), "longer than the SCC count")
            for e, f in zip(E, E[1:]):
                if not below[e.target] >> f.target & 1 or below[f.target] >> e.target & 1:
                    out[descent] = failed(descent, format_word(u))
                    break
        if empty not in out and (len(E) == 0) != (end == G.root):
            out[empty] = failed(empty, format_word(u))
        if order not in out:
            F = transitions_of_word(G, v)
            pos = {e: i for i, e in enumerate(F)}
            shared = [pos[e] for e in E if e in pos]
            if shared != sorted(shared):
                out[order] = failed(order, [format_word(u), format_word(v)])
    detail = f"{samples} random words"
    return [out.get(n, passed(n, detail)) for n in (descent, empty, order)]


def check_duality(S1: FiniteSemigroup) -> CheckResult:
    """``LCay(S)`` equals ``RCay(S^op)`` edge for edge."""
    name = "left graph of S equals right graph of S^op"
    left = build(S1, LEFT)
    right = build(opposite(S1), RIGHT)
    if left.edge_triples() != right.edge_triples() or left.transition != right.transition:
        return failed(name, None)
    return passed(name)
