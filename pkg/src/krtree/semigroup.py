"""Finite semigroups given by generators, with Green's quasi-orders and heights.

Elements are dense indices ``0..n-1``. A semigroup records its alphabet and
the generator map ``theta`` (letter -> element) so that words over the
alphabet can be evaluated. ``adjoin_identity`` always adds a fresh identity,
even when the semigroup is already a monoid.
"""
from __future__ import annotations

import re
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _graph
from .errors import InputError, InvariantError, ResourceError
from .report import CheckResult, failed, passed

DEFAULT_CAP = 100_000
ASSOCIATIVITY_LIMIT = 512
IDENTITY_NAME = "1"

Word = tuple[str, ...]


# --------------------------------------------------------------------------
# alphabets and words


def check_alphabet(alphabet: Iterable[str]) -> tuple[str, ...]:
    letters = tuple(alphabet)
    if not letters:
        raise InputError("alphabet must be non-empty")
    if len(set(letters)) != len(letters):
        raise InputError(f"alphabet has duplicate letters: {letters}")
    for a in letters:
        if not isinstance(a, str) or not a or re.search(r"[\s.,]", a):
            raise InputError(f"invalid letter {a!r}")
    return letters


def parse_word(alphabet: Sequence[str], text: str | Sequence[str]) -> Word:
    """Turn ``text`` into a tuple of letters.

    Strings over single-character alphabets are split per character;
    otherwise letters are separated by dots or whitespace. ``""``, ``"1"``
    and ``"ε"`` all denote the empty word (unless ``"1"`` is a letter).
    """
    if isinstance(text, str):
        stripped = text.strip()
        if stripped in ("", "ε") or (stripped == IDENTITY_NAME and IDENTITY_NAME not in alphabet):
            return ()
        if all(len(a) == 1 for a in alphabet):
            word = tuple(c for c in stripped if c not in ". ")
        else:
            word = tuple(t for t in re.split(r"[.\s]+", stripped) if t)
    else:
        word = tuple(text)
    known = set(alphabet)
    for a in word:
        if a not in known:
            raise InputError(f"unknown letter {a!r} in word {text!r}")
    return word


def format_word(word: Sequence[str]) -> str:
    if not word:
        return IDENTITY_NAME
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return ".".join(word)


def shortlex_key(alphabet: Sequence[str]):
    rank = {a: i for i, a in enumerate(alphabet)}
    return lambda w: (len(w), tuple(rank[a] for a in w))


# --------------------------------------------------------------------------
# transformations


@dataclass(frozen=True, order=True)
class Transformation:
    """Total map on ``{1..n}``, written ``(1f 2f ... nf)``.

    In a product ``f.then(g)`` the map ``f`` acts first.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n == 0:
            raise InputError("transformation on an empty point set")
        for p in self.images:
            if not isinstance(p, (int, np.integer)) or not 1 <= p <= n:
                raise InputError(f"image {p!r} outside 1..{n} in {self.images}")
        object.__setattr__(self, "images", tuple(int(p) for p in self.images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def then(self, other: Transformation) -> Transformation:
        return Transformation(tuple(other.images[p - 1] for p in self.images))

    @classmethod
    def identity(cls, n: int) -> Transformation:
        return cls(tuple(range(1, n + 1)))

    def __str__(self) -> str:
        return "(" + " ".join(map(str, self.images)) + ")"


# --------------------------------------------------------------------------
# semigroups


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup ``S`` with generators ``A``.

    ``generators[i]`` is the element ``theta(alphabet[i])``. ``identity`` is
    the index of an adjoined identity, or ``None``.
    """

    alphabet: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    names: tuple[str, ...]
    identity: int | None = None
    elements: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    @property
    def has_adjoined_identity(self) -> bool:
        return self.identity is not None

    @property
    def theta(self) -> dict[str, int]:
        return dict(zip(self.alphabet, self.generators))

    def generator(self, letter: str) -> int:
        try:
            return self.generators[self.alphabet.index(letter)]
        except ValueError:
            raise InputError(f"unknown letter {letter!r}") from None

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"no element named {name!r}") from None

    def word(self, text) -> Word:
        return parse_word(self.alphabet, text)

    def to_dict(self) -> dict:
        d = {
            "kind": "table",
            "alphabet": list(self.alphabet),
            "names": list(self.names),
            "table": [list(row) for row in self.table],
            "theta": {a: g for a, g in zip(self.alphabet, self.generators)},
        }
        if self.identity is not None:
            d["identity"] = self.identity
        return d


def _check_associative(table: np.ndarray):
    """Return a violating triple ``(x, y, z)`` or ``None``."""
    n = table.shape[0]
    for x in range(n):
        lhs = table[table[x]]  # (xy)z, indexed [y, z]
        rhs = table[x][table]  # x(yz)
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            y, z = bad[0]
            return (x, int(y), int(z))
    return None


def _unreached(table, generators, identity) -> list[int]:
    n = len(table)
    seen = [False] * n
    queue = deque()
    starts = list(generators) + ([identity] if identity is not None else [])
    for g in starts:
        if not seen[g]:
            seen[g] = True
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in generators:
            y = table[x][g]
            if not seen[y]:
                seen[y] = True
                queue.append(y)
    return [i for i in range(n) if not seen[i]]


def from_table(
    names: Sequence[str] | None,
    table: Sequence[Sequence[int]],
    theta: Mapping[str, int],
    *,
    identity: int | None = None,
    check_associativity: bool | None = None,
) -> FiniteSemigroup:
    """Build and validate a semigroup from its Cayley table.

    Associativity is checked exhaustively for up to 512 elements, or always
    when ``check_associativity`` is true.
    """
    n = len(table)
    if n == 0:
        raise InputError("empty multiplication table")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise InputError(f"table row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise InputError(f"table[{i}][{j}] = {v!r} is not an element index")
        rows.append(tuple(int(v) for v in row))
    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(s) for s in names)
    if len(names) != n:
        raise InputError(f"{len(names)} names for {n} elements")
    if len(set(names)) != n:
        raise InputError("element names must be distinct")
    alphabet = check_alphabet(theta.keys())
    gens = []
    for a in alphabet:
        g = theta[a]
        if not isinstance(g, (int, np.integer)) or not 0 <= g < n:
            raise InputError(f"theta({a}) = {g!r} is not an element index")
        gens.append(int(g))
    if identity is not None:
        if not 0 <= identity < n:
            raise InputError(f"identity index {identity} out of range")
        if any(rows[identity][x] != x or rows[x][identity] != x for x in range(n)):
            raise InputError(f"element {names[identity]} is not a two-sided identity")
        if identity in gens:
            raise InputError("an adjoined identity cannot be a generator")
    if check_associativity is None:
        check_associativity = n <= ASSOCIATIVITY_LIMIT
    if check_associativity:
        bad = _check_associative(np.asarray(rows, dtype=np.int64))
        if bad is not None:
            x, y, z = bad
            raise InputError(
                f"table is not associative: ({names[x]}*{names[y]})*{names[z]} != "
                f"{names[x]}*({names[y]}*{names[z]})"
            )
    missing = _unreached(rows, gens, identity)
    if missing:
        raise InputError(f"generators do not generate element {names[missing[0]]!r}")
    if identity is not None and any(
        rows[identity] == rows[x] for x in range(n) if x != identity
    ):
        raise InputError("adjoined identity coincides with another element")
    return FiniteSemigroup(alphabet, tuple(rows), tuple(gens), names, identity)


def from_transformations(
    alphabet: Sequence[str],
    gens: Mapping[str, Transformation | Sequence[int]],
    *,
    cap: int = DEFAULT_CAP,
    point_names: Sequence[str] | None = None,
) -> FiniteSemigroup:
    """Close the generating transformations under composition.

    Elements are numbered in order of discovery by a breadth-first search
    over words in shortlex order, so element ``0`` is ``theta(alphabet[0])``.
    """
    alphabet = check_alphabet(alphabet)
    maps = []
    for a in alphabet:
        if a not in gens:
            raise InputError(f"no generator given for letter {a!r}")
        g = gens[a]
        maps.append(g if isinstance(g, Transformation) else Transformation(tuple(g)))
    extra = set(gens) - set(alphabet)
    if extra:
        raise InputError(f"generators for letters outside the alphabet: {sorted(extra)}")
    degree = maps[0].degree
    for a, m in zip(alphabet, maps):
        if m.degree != degree:
            raise InputError(
                f"generator {a!r} acts on {m.degree} points, expected {degree}"
            )
    if point_names is not None and len(point_names) != degree:
        raise InputError(f"{len(point_names)} point names for {degree} points")

    elements: list[Transformation] = []
    index: dict[Transformation, int] = {}

    def intern(t: Transformation) -> int:
        i = index.get(t)
        if i is None:
            if len(elements) >= cap:
                raise ResourceError(f"closure exceeds the cap of {cap} elements")
            i = index[t] = len(elements)
            elements.append(t)
        return i

    gen_idx = tuple(intern(m) for m in maps)
    i = 0
    while i < len(elements):
        x = elements[i]
        for m in maps:
            intern(x.then(m))
        i += 1
    table = tuple(
        tuple(index[x.then(y)] for y in elements) for x in elements
    )
    if point_names is None:
        names = tuple(str(t) for t in elements)
    else:
        names = tuple(
            "(" + " ".join(point_names[p - 1] for p in t.images) + ")" for t in elements
        )
    return FiniteSemigroup(alphabet, table, gen_idx, names, None, tuple(elements))


def adjoin_identity(S: FiniteSemigroup) -> FiniteSemigroup:
    n = S.size
    table = tuple(row + (x,) for x, row in enumerate(S.table)) + (tuple(range(n + 1)),)
    name = IDENTITY_NAME
    while name in S.names:
        name += "'"
    elements = None if S.elements is None else S.elements + (None,)
    return FiniteSemigroup(S.alphabet, table, S.generators, S.names + (name,), n, elements)


def opposite(S: FiniteSemigroup) -> FiniteSemigroup:
    """Same elements with the product ``x o y = y x``."""
    table = tuple(zip(*S.table))
    return FiniteSemigroup(S.alphabet, table, S.generators, S.names, S.identity, S.elements)


def evaluate_word(S: FiniteSemigroup, word) -> int:
    w = parse_word(S.alphabet, word)
    theta = S.theta
    if not w:
        if S.identity is None:
            raise InputError("the empty word needs an adjoined identity")
        return S.identity
    x = theta[w[0]]
    for a in w[1:]:
        x = S.table[x][theta[a]]
    return x


def shortest_words(S: FiniteSemigroup) -> list[Word | None]:
    """Shortlex-least word for every element (``()`` for the identity)."""
    words: list[Word | None] = [None] * S.size
    queue = deque()
    if S.identity is not None:
        words[S.identity] = ()
    for a, g in zip(S.alphabet, S.generators):
        if words[g] is None:
            words[g] = (a,)
            queue.append(g)
    while queue:
        x = queue.popleft()
        for a, g in zip(S.alphabet, S.generators):
            y = S.table[x][g]
            if words[y] is None:
                words[y] = words[x] + (a,)
                queue.append(y)
    return words


# --------------------------------------------------------------------------
# Green's structure


def _require_monoid(S: FiniteSemigroup) -> int:
    if S.identity is None:
        raise InputError("operation needs S^1: call adjoin_identity first")
    return S.identity


def right_successors(S: FiniteSemigroup) -> list[tuple[int, ...]]:
    return [tuple(S.table[s][g] for g in S.generators) for s in range(S.size)]


def left_successors(S: FiniteSemigroup) -> list[tuple[int, ...]]:
    return [tuple(S.table[g][s] for g in S.generators) for s in range(S.size)]


@dataclass(frozen=True)
class GreensStructure:
    """Green's quasi-orders on ``S^1`` as bitsets.

    ``below_R[b]`` has bit ``a`` set iff ``a <=_R b`` (likewise for L and J).
    """

    below_R: tuple[int, ...]
    below_L: tuple[int, ...]
    below_J: tuple[int, ...]
    j_class: tuple[int, ...]
    j_classes: tuple[tuple[int, ...], ...]
    j_dag: tuple[tuple[int, int], ...]
    heights: tuple[int, ...]

    def _below(self, kind: str) -> tuple[int, ...]:
        try:
            return {"R": self.below_R, "L": self.below_L, "J": self.below_J}[kind]
        except KeyError:
            raise InputError(f"unknown Green relation {kind!r}") from None

    def leq(self, kind: str, a: int, b: int) -> bool:
        return bool(self._below(kind)[b] >> a & 1)

    def equiv(self, kind: str, a: int, b: int) -> bool:
        below = self._below(kind)
        return bool(below[b] >> a & 1) and bool(below[a] >> b & 1)

    def less(self, kind: str, a: int, b: int) -> bool:
        below = self._below(kind)
        return bool(below[b] >> a & 1) and not below[a] >> b & 1

    def classes(self, kind: str) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for a in range(len(self.heights)):
            if a in seen:
                continue
            cls = tuple(b for b in range(len(self.heights)) if self.equiv(kind, a, b))
            seen.update(cls)
            out.append(cls)
        return out

    @property
    def max_height(self) -> int:
        return max(self.heights)


def greens(S1: FiniteSemigroup) -> GreensStructure:
    one = _require_monoid(S1)
    right = right_successors(S1)
    left = left_successors(S1)
    below_R = _graph.reachability(right)
    below_L = _graph.reachability(left)
    union = [r + l for r, l in zip(right, left)]
    below_J = _graph.reachability(union)
    ids = _graph.scc_ids(union)
    dag = _graph.condensation(union, ids)
    depth = _graph.longest_path_depths(dag, ids[one])
    if min(depth) < 0:
        raise InvariantError("some J-class lies outside S^1 1 S^1")
    classes: list[list[int]] = [[] for _ in dag]
    for v, c in enumerate(ids):
        classes[c].append(v)
    heights = tuple(depth[c] for c in ids)
    return GreensStructure(
        below_R=tuple(below_R),
        below_L=tuple(below_L),
        below_J=tuple(below_J),
        j_class=tuple(ids),
        j_classes=tuple(tuple(c) for c in classes),
        j_dag=tuple(sorted((c, d) for c in range(len(dag)) for d in dag[c])),
        heights=heights,
    )


class Regularity(NamedTuple):
    regular: bool
    witnesses: dict[int, int]
    counterexample: int | None


def is_regular(S: FiniteSemigroup) -> Regularity:
    """Search, for each ``s``, an ``s'`` with ``s s' s = s``."""
    t = np.asarray(S.table, dtype=np.int64)
    witnesses: dict[int, int] = {}
    for s in range(S.size):
        # t[s][t[:, s]] is s * (x * s) for every x
        hits = np.flatnonzero(t[s][t[:, s]] == s)
        if hits.size == 0:
            return Regularity(False, {}, s)
        witnesses[s] = int(hits[0])
    return Regularity(True, witnesses, None)


def check_stability(S1: FiniteSemigroup, g: GreensStructure) -> CheckResult:
    """Pointwise check that ``<=_R`` and ``<=_L`` restricted to J give R and L."""
    name = "stability"
    n = S1.size
    class_mask = [0] * len(g.j_classes)
    for v, c in enumerate(g.j_class):
        class_mask[c] |= 1 << v
    for kind, below in (("R", g.below_R), ("L", g.below_L)):
        for b in range(n):
            for a in _graph.bits(below[b] & class_mask[g.j_class[b]]):
                if not below[a] >> b & 1:
                    return failed(name, {"relation": kind, "pair": [a, b]})
    return passed(name)


def check_associativity(S: FiniteSemigroup) -> CheckResult:
    bad = _check_associative(np.asarray(S.table, dtype=np.int64))
    if bad is None:
        return passed("associativity", f"{S.size}^3 triples")
    return failed("associativity", list(bad))


def check_generation(S: FiniteSemigroup) -> CheckResult:
    words = shortest_words(S)
    for x, w in enumerate(words):
        if w is None or len(w) > S.size or evaluate_word(S, w) != x:
            return failed("theta generates S", x)
    return passed("theta generates S")


def check_height_drop(S1: FiniteSemigroup, g: GreensStructure) -> CheckResult:
    """Strict R-, L- or J-descent strictly raises the height."""
    h = g.heights
    for kind in ("R", "L", "J"):
        for s in range(S1.size):
            for t in range(S1.size):
                if g.less(kind, s, t) and not h[s] > h[t]:
                    return failed("strict order raises height", {"relation": kind, "pair": [s, t]})
    return passed("strict order raises height")


def check_height_contiguity(g: GreensStructure) -> CheckResult:
    attained = set(g.heights)
    if attained == set(range(max(attained) + 1)):
        return passed("height contiguity", f"max height {max(attained)}")
    return failed("height contiguity", sorted(attained))


def check_opposite_duality(S1: FiniteSemigroup) -> CheckResult:
    """``<=_R`` of ``S^op`` is ``<=_L`` of ``S`` and vice versa."""
    name = "opposite swaps R and L"
    g = greens(S1)
    h = greens(opposite(S1))
    if h.below_R != g.below_L or h.below_L != g.below_R or h.heights != g.heights:
        return failed(name, None)
    return passed(name)
