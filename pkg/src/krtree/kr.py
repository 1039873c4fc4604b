"""Karnofsky-Rhodes expansions as explicit finite semigroups.

Two words are identified when they have the same value in ``S`` and their
paths from the identity in ``RCay(S, A)`` cross the same transition edges.
Each class is stored by that key ``(image, transitions)`` together with its
shortlex-least word. The left expansion is the right expansion of ``S^op``.

Element ``0`` of a :class:`KRSemigroup` is always the adjoined identity (the
class of the empty word), so the object represents ``T^1``.
"""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import cayley
from .cayley import LEFT, RIGHT, CayleyGraph, TransitionSequence
from .errors import InputError, ResourceError
from .report import CheckResult, failed, passed, skipped
from .semigroup import (
    DEFAULT_CAP,
    FiniteSemigroup,
    Word,
    adjoin_identity,
    evaluate_word,
    format_word,
    greens,
    is_regular,
    opposite,
    parse_word,
)


@dataclass(frozen=True)
class KRElement:
    image: int
    transitions: TransitionSequence
    rep: Word

    @property
    def key(self) -> tuple[int, TransitionSequence]:
        return (self.image, self.transitions)

    @property
    def name(self) -> str:
        return format_word(self.rep)


@dataclass(frozen=True)
class KRSemigroup:
    """``KR^1_right(base, A)``; ``side`` records whether ``base`` is ``S`` or ``S^op``.

    ``step[x][i]`` is ``x`` times the class of ``alphabet[i]``.
    """

    side: str
    base: FiniteSemigroup
    monoid: FiniteSemigroup
    graph: CayleyGraph
    elements: tuple[KRElement, ...]
    step: tuple[tuple[int, ...], ...]
    table: tuple[tuple[int, ...], ...]
    _index: dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self._index is None:
            object.__setattr__(self, "_index", {e.key: i for i, e in enumerate(self.elements)})

    @property
    def alphabet(self) -> tuple[str, ...]:
        return self.base.alphabet

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def phi(self) -> tuple[int, ...]:
        """Image of each class in ``base^1``."""
        return tuple(e.image for e in self.elements)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.elements)

    @property
    def non_identity(self) -> tuple[KRElement, ...]:
        return self.elements[1:]

    def index(self, element: KRElement | tuple) -> int:
        key = element.key if isinstance(element, KRElement) else element
        try:
            return self._index[key]
        except KeyError:
            raise InputError(f"{element!r} is not an element of this expansion") from None

    def class_of(self, word) -> int:
        x = 0
        rank = {a: i for i, a in enumerate(self.alphabet)}
        for a in parse_word(self.alphabet, word):
            x = self.step[x][rank[a]]
        return x

    def element(self, word) -> KRElement:
        return self.elements[self.class_of(word)]

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def as_semigroup(self) -> FiniteSemigroup:
        """``T^1`` as a plain finite semigroup (identity at index 0)."""
        gens = tuple(self.step[0])
        return FiniteSemigroup(self.alphabet, self.table, gens, self.names, 0)


def key_of_word(T: KRSemigroup, word) -> tuple[int, TransitionSequence]:
    """Class key straight from the definition: value plus transition edges."""
    w = parse_word(T.alphabet, word)
    return (evaluate_word(T.monoid, w), cayley.transitions_of_word(T.graph, w))


def build_kr_right(S: FiniteSemigroup, *, cap: int = DEFAULT_CAP, side: str = RIGHT) -> KRSemigroup:
    """Enumerate ``A^*`` modulo the transition-edge congruence by breadth-first search.

    Words are extended one letter at a time in shortlex order, so the first
    word reaching a class is its shortlex-least representative.
    """
    S1 = adjoin_identity(S)
    G = cayley.build(S1, RIGHT)
    letters = range(len(S.alphabet))
    elements = [KRElement(S1.identity, (), ())]
    index = {elements[0].key: 0}
    parent = [-1]
    last = [-1]
    step: list[list[int]] = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        e = elements[x]
        row = []
        for i in letters:
            target = G.succ[e.image][i]
            trans = e.transitions
            if G.transition[e.image][i]:
                trans = trans + (cayley.Edge(e.image, S.alphabet[i], target),)
            key = (target, trans)
            y = index.get(key)
            if y is None:
                if len(elements) >= cap:
                    raise ResourceError(f"expansion exceeds the cap of {cap} elements")
                y = index[key] = len(elements)
                elements.append(KRElement(target, trans, e.rep + (S.alphabet[i],)))
                parent.append(x)
                last.append(i)
                queue.append(y)
            row.append(y)
        step.append(row)
    # x * y extends x by the letters of rep(y); reuse x * parent(y).
    n = len(elements)
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        row = table[x]
        row[0] = x
        for y in range(1, n):
            row[y] = step[row[parent[y]]][last[y]]
    return KRSemigroup(
        side=side,
        base=S,
        monoid=S1,
        graph=G,
        elements=tuple(elements),
        step=tuple(tuple(r) for r in step),
        table=tuple(tuple(r) for r in table),
        _index=index,
    )


def build_kr_left(S: FiniteSemigroup, *, cap: int = DEFAULT_CAP) -> KRSemigroup:
    return build_kr_right(opposite(S), cap=cap, side=LEFT)


def build_kr(S: FiniteSemigroup, side: str, *, cap: int = DEFAULT_CAP) -> KRSemigroup:
    cayley.check_side(side)
    return build_kr_left(S, cap=cap) if side == LEFT else build_kr_right(S, cap=cap)


def multiply(T: KRSemigroup, x: KRElement, y: KRElement) -> KRElement:
    return T.elements[T.table[T.index(x)][T.index(y)]]


# --------------------------------------------------------------------------
# verification


def verify_pullreg(T: KRSemigroup) -> CheckResult:
    """``phi(t t' t) = phi(t)`` forces ``t t' t = t``."""
    name = "pullback of t t' t = t"
    P = np.asarray(T.table, dtype=np.int64)
    phi = np.asarray(T.phi, dtype=np.int64)
    n = len(P)
    t = np.arange(n)[:, None]
    tt_t = P[P, t]  # [t, t'] -> t t' t
    bad = np.argwhere((phi[tt_t] == phi[t]) & (tt_t != t))
    if bad.size:
        a, b = (int(v) for v in bad[0])
        return failed(name, [T.names[a], T.names[b]])
    return passed(name, f"{n * n} pairs")


def verify_height_transfer(T: KRSemigroup) -> list[CheckResult]:
    """Heights and strict J-order agree along ``phi`` (regular bases only)."""
    names = ("height transfer along phi", "strict J-order reflected by phi")
    if not is_regular(T.base).regular:
        note = "base semigroup is not regular; heights of T are not transferred"
        return [skipped(n, note) for n in names]
    gs = greens(T.monoid)
    gt = greens(T.as_semigroup())
    phi = T.phi
    out = []
    for t in range(T.size):
        if gt.heights[t] != gs.heights[phi[t]]:
            out.append(failed(names[0], {"element": T.names[t], "h_T": gt.heights[t],
                                         "h_S": gs.heights[phi[t]]}))
            break
    else:
        out.append(passed(names[0], f"{T.size} elements"))
    for t, u in itertools.product(range(T.size), repeat=2):
        if gs.less("J", phi[t], phi[u]) != gt.less("J", t, u):
            out.append(failed(names[1], [T.names[t], T.names[u]]))
            break
    else:
        out.append(passed(names[1], f"{T.size ** 2} pairs"))
    return out


def check_phi_homomorphism(T: KRSemigroup) -> CheckResult:
    name = "phi is a surjective homomorphism"
    phi = T.phi
    S1 = T.monoid
    for x in range(T.size):
        for y in range(T.size):
            if phi[T.table[x][y]] != S1.table[phi[x]][phi[y]]:
                return failed(name, [T.names[x], T.names[y]])
    if set(phi) != set(range(S1.size)):
        return failed(name, sorted(set(range(S1.size)) - set(phi)))
    return passed(name)


def check_elements(T: KRSemigroup) -> CheckResult:
    """Stored keys agree with their representatives; identity is only the empty class."""
    name = "class keys match representatives"
    one = T.monoid.identity
    r_classes = len(greens(T.monoid).classes("R"))
    for i, e in enumerate(T.elements):
        if key_of_word(T, e.rep) != e.key:
            return failed(name, e.name)
        if (e.image == one) != (e.rep == ()) or (e.rep == ()) != (e.transitions == ()):
            return failed(name, e.name, "identity characterisation")
        if len(e.transitions) > r_classes:
            return failed(name, e.name, "more transitions than R-classes")
        if T.class_of(e.rep) != i:
            return failed(name, e.name, "step table disagrees")
    return passed(name, f"{T.size} classes")


def check_congruence(T: KRSemigroup, *, samples: int = 200, max_len: int = 6,
                     seed: int = 0) -> CheckResult:
    """``u ~ u'`` implies ``uv ~ u'v`` and ``vu ~ vu'`` on random words."""
    name = "transition congruence"
    rng = random.Random(seed)
    A = T.alphabet

    def word():
        return tuple(rng.choice(A) for _ in range(rng.randint(0, max_len)))

    for _ in range(samples):
        u, v = word(), word()
        u2 = T.elements[T.class_of(u)].rep  # a word congruent to u
        if key_of_word(T, u) != key_of_word(T, u2):
            return failed(name, [format_word(u), format_word(u2)], "representative")
        if key_of_word(T, u + v) != key_of_word(T, u2 + v):
            return failed(name, [format_word(u), format_word(u2), format_word(v)], "right")
        if key_of_word(T, v + u) != key_of_word(T, v + u2):
            return failed(name, [format_word(u), format_word(u2), format_word(v)], "left")
        if T.index(key_of_word(T, u + v)) != T.mul(T.class_of(u), T.class_of(v)):
            return failed(name, [format_word(u), format_word(v)], "product table")
    return passed(name, f"{samples} samples")


def check_rep_minimality(T: KRSemigroup, *, word_budget: int = 200_000) -> CheckResult:
    """Enumerate words in shortlex order; the first word of each class is its rep."""
    name = "shortlex-minimal representatives"
    longest = max(len(e.rep) for e in T.elements)
    k = len(T.alphabet)
    total = sum(k ** n for n in range(longest + 1))
    if total > word_budget:
        return skipped(name, f"{total} words exceed the enumeration budget")
    first: dict = {}
    for n in range(longest + 1):
        for w in itertools.product(T.alphabet, repeat=n):
            first.setdefault(key_of_word(T, w), w)
    for e in T.elements:
        if first.get(e.key) != e.rep:
            return failed(name, {"class": e.name, "first word": format_word(first.get(e.key, ()))})
    return passed(name, f"{total} words")
