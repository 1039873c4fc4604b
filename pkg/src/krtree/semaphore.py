"""Suffix semaphore codes built from a finite ideal, and their right action.

Construction used here, for generators ``W`` and window ``k``: keep the
members of ``W`` with no proper suffix in ``W``, and add every word of
length ``k`` with no suffix in ``W``. The result is checked to be a suffix
code on which every ``u.a`` has exactly one suffix in the code; anything
else is rejected.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import chiswell
from .chiswell import ChiswellTree, EllipticMap, LengthContext, build_tree, make_context
from .errors import InputError
from .kr import KRSemigroup, build_kr_left
from .semigroup import DEFAULT_CAP, FiniteSemigroup, check_alphabet, from_transformations


def _shortlex(alphabet):
    rank = {a: i for i, a in enumerate(alphabet)}
    return lambda w: (len(w), [rank[c] for c in w])


@dataclass(frozen=True)
class IdealSpec:
    alphabet: str
    generators: tuple[str, ...]
    window: int

    def __post_init__(self):
        letters = check_alphabet(self.alphabet)
        if any(len(a) != 1 for a in letters):
            raise InputError("semaphore alphabets use single-character letters")
        if not self.generators:
            raise InputError("at least one ideal generator is required")
        for w in self.generators:
            if not w or any(c not in self.alphabet for c in w):
                raise InputError(f"generator {w!r} is not a non-empty word over {self.alphabet!r}")
        if self.window < max(len(w) for w in self.generators):
            raise InputError(f"window {self.window} is shorter than a generator")

    @classmethod
    def parse(cls, alphabet: str, window: int | str, generators: str) -> IdealSpec:
        """``("ab", 4, "aaa,aab,aba,baa,bab")`` style input."""
        try:
            k = int(window)
        except ValueError:
            raise InputError(f"window must be an integer, got {window!r}") from None
        gens = tuple(g.strip() for g in generators.split(",") if g.strip())
        return cls(alphabet, gens, k)


@dataclass(frozen=True)
class SemaphoreCode:
    alphabet: str
    window: int
    words: tuple[str, ...]
    action: dict

    def act(self, u: str, a: str) -> str:
        return right_action(self, u, a)

    def table(self) -> list[tuple[str, ...]]:
        """Rows ``(u, u.a, u.b, ...)`` in shortlex order of ``u``."""
        return [(u,) + tuple(self.action[u, a] for a in self.alphabet) for u in self.words]

    def to_tsv(self) -> str:
        lines = ["\t".join([""] + [f".{a}" for a in self.alphabet])]
        lines += ["\t".join(row) for row in self.table()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "alphabet": self.alphabet,
            "window": self.window,
            "words": list(self.words),
            "action": {u: {a: self.action[u, a] for a in self.alphabet} for u in self.words},
        }


def _suffixes_in(word: str, code: set[str]) -> list[str]:
    return [word[i:] for i in range(len(word)) if word[i:] in code]


def code_from_ideal(spec: IdealSpec) -> SemaphoreCode:
    W = set(spec.generators)
    minimal = {w for w in W if not any(w[i:] in W for i in range(1, len(w)))}
    filler = {
        "".join(w)
        for w in itertools.product(spec.alphabet, repeat=spec.window)
        if not _suffixes_in("".join(w), W)
    }
    code = minimal | filler
    for u, v in itertools.permutations(code, 2):
        if len(u) < len(v) and v.endswith(u):
            raise InputError(f"not a suffix code: {u!r} is a suffix of {v!r}")
    action = {}
    for u in code:
        for a in spec.alphabet:
            hits = _suffixes_in(u + a, code)
            if len(hits) != 1:
                raise InputError(f"{u}.{a} has {len(hits)} suffixes in the code: {hits}")
            action[u, a] = hits[0]
    for w in itertools.product(spec.alphabet, repeat=spec.window):
        hits = _suffixes_in("".join(w), code)
        if len(hits) != 1:
            raise InputError(f"window word {''.join(w)!r} has {len(hits)} code suffixes")
    words = tuple(sorted(code, key=_shortlex(spec.alphabet)))
    return SemaphoreCode(spec.alphabet, spec.window, words, action)


def right_action(code: SemaphoreCode, u: str, a: str) -> str:
    try:
        return code.action[u, a]
    except KeyError:
        raise InputError(f"{u!r} is not a code word or {a!r} is not a letter") from None


def acting_semigroup(code: SemaphoreCode, *, cap: int = DEFAULT_CAP) -> FiniteSemigroup:
    """Transformation semigroup on the code words generated by the letter actions."""
    pos = {u: i + 1 for i, u in enumerate(code.words)}
    gens = {a: tuple(pos[code.action[u, a]] for u in code.words) for a in code.alphabet}
    return from_transformations(tuple(code.alphabet), gens, cap=cap, point_names=code.words)


@dataclass
class Pipeline:
    code: SemaphoreCode
    semigroup: FiniteSemigroup
    kr: KRSemigroup
    ctx: LengthContext
    tree: ChiswellTree
    actions: dict[str, EllipticMap]


def example_pipeline(spec: IdealSpec, *, cap: int = DEFAULT_CAP) -> Pipeline:
    """Code, acting semigroup, left expansion, Chiswell tree and the letter actions on it."""
    code = code_from_ideal(spec)
    S = acting_semigroup(code, cap=cap)
    T = build_kr_left(S, cap=cap)
    ctx = make_context(T)
    tree = build_tree(ctx)
    actions = {a: chiswell.right_action(tree, a) for a in spec.alphabet}
    return Pipeline(code, S, T, ctx, tree, actions)

