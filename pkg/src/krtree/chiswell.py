"""Length function on ``KR^1``, the Chiswell tree and elliptic actions on it.

For classes ``alpha`` and ``beta`` with transition sequences ``E`` and ``E'``,
``xi`` is the length of their common prefix and

    D(alpha, beta) = ell                   if alpha == beta
                   = 0                     if xi == 0
                   = 2 h(end E_k)          if E_{k+1}, E'_{k+1} exist and end at the same vertex
                   = 2 h(end E_k) - 1      otherwise

where ``k = xi`` and ``ell`` is twice the largest height in ``S^1``. Tree
vertices ``[k, alpha]`` are the classes of ``D(alpha, beta) >= k``.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .cayley import LEFT, RIGHT, TransitionSequence, check_side
from .errors import InputError, InvariantError
from .kr import KRElement, KRSemigroup
from .report import CheckResult, failed, passed
from .semigroup import greens

EXHAUSTIVE_TRIPLES = 60
RANDOM_TRIPLES = 10_000
EXHAUSTIVE_PAIRS = 200


def _idx(T: KRSemigroup, x) -> int:
    if isinstance(x, KRElement):
        return T.index(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    return T.class_of(x)


def common_prefix(E: TransitionSequence, F: TransitionSequence) -> int:
    k = 0
    for e, f in zip(E, F):
        if e != f:
            break
        k += 1
    return k


def xi(T: KRSemigroup, alpha, beta) -> int:
    """Number of leading transition edges (full triples) shared by both classes."""
    E = T.elements[_idx(T, alpha)].transitions
    F = T.elements[_idx(T, beta)].transitions
    return common_prefix(E, F)


def _length(E, F, same: bool, heights, ell: int) -> int:
    if same:
        return ell
    k = common_prefix(E, F)
    if k == 0:
        return 0
    h = heights[E[k - 1].target]
    if k < len(E) and k < len(F) and E[k].target == F[k].target:
        return 2 * h
    return 2 * h - 1


@dataclass(frozen=True)
class LengthContext:
    T: KRSemigroup
    heights: tuple[int, ...]
    ell: int
    xi_table: np.ndarray = field(compare=False, repr=False)
    D: np.ndarray = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return self.T.size


def make_context(T: KRSemigroup) -> LengthContext:
    """Heights of ``S^1`` plus memoised ``xi`` and ``D`` tables over ``T^1``."""
    heights = greens(T.monoid).heights
    ell = 2 * max(heights)
    n = T.size
    seqs = [e.transitions for e in T.elements]
    X = np.zeros((n, n), dtype=np.int64)
    D = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        X[a, a] = len(seqs[a])
        D[a, a] = ell
        for b in range(a + 1, n):
            X[a, b] = X[b, a] = common_prefix(seqs[a], seqs[b])
            D[a, b] = D[b, a] = _length(seqs[a], seqs[b], False, heights, ell)
    X.setflags(write=False)
    D.setflags(write=False)
    return LengthContext(T, heights, ell, X, D)


def length_D(ctx: LengthContext, alpha, beta) -> int:
    a, b = _idx(ctx.T, alpha), _idx(ctx.T, beta)
    E = ctx.T.elements[a].transitions
    F = ctx.T.elements[b].transitions
    return _length(E, F, a == b, ctx.heights, ctx.ell)


# --------------------------------------------------------------------------
# the tree


class ChiswellVertex(NamedTuple):
    depth: int
    rep: int  # least element index in the class


@dataclass(frozen=True)
class ChiswellTree:
    """Rooted tree of classes ``[k, alpha]``, ``0 <= k <= ell``.

    Vertices are numbered level by level; within a level by representative.
    ``class_of[k, alpha]`` is the vertex number of ``[k, alpha]``.
    """

    ctx: LengthContext = field(compare=False, repr=False)
    ell: int
    vertices: tuple[ChiswellVertex, ...]
    members: tuple[tuple[int, ...], ...]
    class_of: np.ndarray = field(compare=False, repr=False)

    @property
    def T(self) -> KRSemigroup:
        return self.ctx.T

    @property
    def root(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.vertices)

    def level(self, k: int) -> list[int]:
        return [v for v, x in enumerate(self.vertices) if x.depth == k]

    def profile(self) -> tuple[int, ...]:
        counts = [0] * (self.ell + 1)
        for x in self.vertices:
            counts[x.depth] += 1
        return tuple(counts)

    def depth(self, v: int) -> int:
        return self.vertices[v].depth

    def vertex(self, k: int, alpha) -> int:
        return int(self.class_of[k, _idx(self.T, alpha)])

    def parent(self, v: int) -> int | None:
        k, rep = self.vertices[v]
        return None if k == 0 else int(self.class_of[k - 1, rep])

    def edges(self) -> list[tuple[int, int]]:
        return [(self.parent(v), v) for v in range(1, len(self.vertices))]

    def children(self, v: int) -> list[int]:
        return [w for w in range(1, len(self.vertices)) if self.parent(w) == v]

    def label(self, v: int) -> str:
        k, rep = self.vertices[v]
        return f"[{k},{self.T.names[rep]}]"

    def member_names(self, v: int) -> list[str]:
        return [self.T.names[i] for i in self.members[v]]

    def identity_chain(self) -> list[int]:
        """Vertices ``[k, 1]`` for ``k >= 1``."""
        return [int(self.class_of[k, 0]) for k in range(1, self.ell + 1)]


def build_tree(ctx: LengthContext) -> ChiswellTree:
    """Partition each level by ``D >= k``; raise if the result is not a rooted tree."""
    D = ctx.D
    n = ctx.size
    if not np.array_equal(D, D.T):
        raise InvariantError("length function is not symmetric")
    vertices: list[ChiswellVertex] = []
    members: list[tuple[int, ...]] = []
    class_of = np.full((ctx.ell + 1, n), -1, dtype=np.int64)
    for k in range(ctx.ell + 1):
        close = D >= k
        for a in range(n):
            if class_of[k, a] >= 0:
                continue
            cls = np.flatnonzero(close[a])
            if (class_of[k, cls] >= 0).any() or not close[np.ix_(cls, cls)].all():
                raise InvariantError(f"D >= {k} is not an equivalence relation (at {ctx.T.names[a]})")
            class_of[k, cls] = len(vertices)
            vertices.append(ChiswellVertex(k, a))
            members.append(tuple(int(c) for c in cls))
    class_of.setflags(write=False)
    tree = ChiswellTree(ctx, ctx.ell, tuple(vertices), tuple(members), class_of)
    result = check_tree(tree)
    if not result:
        raise InvariantError(f"Chiswell graph is not a rooted tree: {result.counterexample}")
    return tree


def check_tree(tree: ChiswellTree) -> CheckResult:
    """Connected, acyclic, one upward neighbour per vertex, depth = distance to root."""
    name = "Chiswell graph is a rooted tree"
    C = tree.class_of
    nv = len(tree.vertices)
    edges = set()
    for k in range(tree.ell):
        edges.update(zip(C[k].tolist(), C[k + 1].tolist()))
    adj: list[set[int]] = [set() for _ in range(nv)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    for v, (k, _) in enumerate(tree.vertices):
        up = [w for w in adj[v] if tree.vertices[w].depth < k]
        if len(up) != (0 if k == 0 else 1):
            return failed(name, tree.label(v), "vertex needs exactly one neighbour above it")
        if any(abs(tree.vertices[w].depth - k) != 1 for w in adj[v]):
            return failed(name, tree.label(v), "edge skips a level")
    if tree.level(0) != [0]:
        return failed(name, tree.profile(), "level 0 must be a single vertex")
    if len(edges) != nv - 1:
        return failed(name, len(edges), "edge count")
    dist = [-1] * nv
    dist[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    for v, x in enumerate(tree.vertices):
        if dist[v] != x.depth:
            return failed(name, tree.label(v), "depth differs from distance to root")
    return passed(name, f"{nv} vertices, profile {tree.profile()}")


# --------------------------------------------------------------------------
# elliptic maps


class EllipticMap:
    """A self-map of the vertex set of a Chiswell tree, by vertex number."""

    __slots__ = ("tree", "images", "tag")

    def __init__(self, tree: ChiswellTree, images, tag: str = ""):
        self.tree = tree
        self.images = tuple(int(v) for v in images)
        self.tag = tag
        if len(self.images) != len(tree.vertices):
            raise InputError("map must send every vertex somewhere")

    def __call__(self, v):
        if isinstance(v, ChiswellVertex):
            w = self.images[int(self.tree.class_of[v.depth, v.rep])]
            return self.tree.vertices[w]
        return self.images[v]

    def __eq__(self, other):
        if not isinstance(other, EllipticMap):
            return NotImplemented
        return self.tree is other.tree and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"EllipticMap({self.tag or '?'}, {len(self.images)} vertices)"

    def arrows(self) -> list[tuple[str, str]]:
        return [(self.tree.label(v), self.tree.label(w)) for v, w in enumerate(self.images)]


def identity_map(tree: ChiswellTree) -> EllipticMap:
    return EllipticMap(tree, range(len(tree.vertices)), "1")


def em_compose(f: EllipticMap, g: EllipticMap) -> EllipticMap:
    """``f o g``: apply ``g`` first."""
    if f.tree is not g.tree:
        raise InputError("cannot compose maps on different trees")
    return EllipticMap(f.tree, (f.images[v] for v in g.images), f"{f.tag}o{g.tag}")


def _action(tree: ChiswellTree, alpha: int, side: str) -> np.ndarray:
    P = np.asarray(tree.T.table, dtype=np.int64)
    prod = P[alpha, :] if side == LEFT else P[:, alpha]
    reps = np.array([x.rep for x in tree.vertices], dtype=np.int64)
    depths = np.array([x.depth for x in tree.vertices], dtype=np.int64)
    C = tree.class_of
    # class of alpha*beta (or beta*alpha) for every level and every beta
    moved = np.take_along_axis(C, np.broadcast_to(prod, C.shape), axis=1)
    rows = np.arange(C.shape[0])[:, None]
    if not (moved == moved[rows, reps[C]]).all():
        k, b = np.argwhere(moved != moved[rows, reps[C]])[0]
        raise InvariantError(
            f"{side} action of {tree.T.names[alpha]} is not well defined at "
            f"[{k},{tree.T.names[b]}]"
        )
    return moved[depths, reps]


def left_action(tree: ChiswellTree, alpha) -> EllipticMap:
    """``[k, beta] -> [k, alpha beta]``."""
    a = _idx(tree.T, alpha)
    return EllipticMap(tree, _action(tree, a, LEFT), f"{tree.T.names[a]}.")


def right_action(tree: ChiswellTree, alpha) -> EllipticMap:
    """``[k, beta] -> [k, beta alpha]``."""
    a = _idx(tree.T, alpha)
    return EllipticMap(tree, _action(tree, a, RIGHT), f".{tree.T.names[a]}")


def action(tree: ChiswellTree, alpha, side: str) -> EllipticMap:
    check_side(side)
    return left_action(tree, alpha) if side == LEFT else right_action(tree, alpha)


def is_elliptic(tree: ChiswellTree, f: EllipticMap) -> CheckResult:
    """Depth and edge preservation, checked on every vertex and edge."""
    name = "elliptic"
    if f.tree is not tree:
        return failed(name, None, "map belongs to another tree")
    img = f.images
    for v, x in enumerate(tree.vertices):
        if tree.vertices[img[v]].depth != x.depth:
            return failed(name, {"vertex": tree.label(v), "image": tree.label(img[v])},
                          "depth not preserved")
    edges = set(tree.edges())
    for u, v in edges:
        if (img[u], img[v]) not in edges:
            return failed(name, {"edge": [tree.label(u), tree.label(v)],
                                 "image": [tree.label(img[u]), tree.label(img[v])]},
                          "edge not preserved")
    return passed(name)


@dataclass
class Representation:
    side: str
    maps: tuple[EllipticMap, ...]
    checks: list[CheckResult]

    @property
    def faithful(self) -> bool:
        return all(self.checks)


def representation(tree: ChiswellTree, side: str) -> Representation:
    """All of ``T^1`` acting on the tree, with homomorphism and faithfulness checks.

    The left action is a homomorphism; the right action reverses products.
    Pairs are checked exhaustively up to ``EXHAUSTIVE_PAIRS`` elements, above
    that against every (element, letter) pair, which implies the full law.
    """
    check_side(side)
    T = tree.T
    n = T.size
    arrays = [_action(tree, a, side) for a in range(n)]
    maps = tuple(
        EllipticMap(tree, arr, f"{T.names[a]}." if side == LEFT else f".{T.names[a]}")
        for a, arr in enumerate(arrays)
    )
    prefix = f"{side} action"
    checks = []
    ident = np.arange(len(tree.vertices))
    checks.append(passed(f"{prefix}: 1 acts trivially") if np.array_equal(arrays[0], ident)
                  else failed(f"{prefix}: 1 acts trivially", T.names[0]))

    bad = next((T.names[a] for a, f in enumerate(maps) if not is_elliptic(tree, f)), None)
    checks.append(passed(f"{prefix}: every map elliptic", f"{n} maps") if bad is None
                  else failed(f"{prefix}: every map elliptic", bad))

    name = f"{prefix}: " + ("homomorphism" if side == LEFT else "anti-homomorphism")
    if n <= EXHAUSTIVE_PAIRS:
        pairs = ((a, b) for a in range(n) for b in range(n))
        scope = f"{n * n} pairs"
    else:
        gens = T.step[0]
        pairs = ((a, b) for a in range(n) for b in gens)
        scope = f"{n} x {len(gens)} element-letter pairs"
    for a, b in pairs:
        ab = T.table[a][b]
        # left: x -> (ab)x = a(bx); right: x -> x(ab) = (xa)b
        expect = arrays[a][arrays[b]] if side == LEFT else arrays[b][arrays[a]]
        if not np.array_equal(arrays[ab], expect):
            checks.append(failed(name, [T.names[a], T.names[b]]))
            break
    else:
        checks.append(passed(name, scope))

    seen: dict[tuple, int] = {}
    clash = None
    for a, f in enumerate(maps):
        if f.images in seen:
            clash = [T.names[seen[f.images]], T.names[a]]
            break
        seen[f.images] = a
    checks.append(passed(f"{prefix}: faithful", f"{n} distinct maps") if clash is None
                  else failed(f"{prefix}: faithful", clash))
    return Representation(side, maps, checks)


# --------------------------------------------------------------------------
# laws of xi and D


def _triples(n: int, rng: random.Random, samples: int):
    for _ in range(samples):
        yield rng.randrange(n), rng.randrange(n), rng.randrange(n)


def _laws(ctx: LengthContext, M: np.ndarray, label: str, *, left: bool,
          seed: int = 0) -> list[CheckResult]:
    """Symmetry, right (and optionally left) compatibility and the min-inequality."""
    T = ctx.T
    P = np.asarray(T.table, dtype=np.int64)
    n = ctx.size
    names = T.names
    out = []

    sym = np.argwhere(M != M.T)
    out.append(passed(f"{label} symmetric") if not sym.size
               else failed(f"{label} symmetric", [names[i] for i in sym[0]]))

    checks = {
        f"{label}(ag, bg) >= {label}(a, b)": lambda a, b, g: M[P[a, g], P[b, g]] >= M[a, b],
        f"{label}(ga, gb) >= {label}(a, b)": lambda a, b, g: M[P[g, a], P[g, b]] >= M[a, b],
        f"{label}(a, c) >= min({label}(a, b), {label}(b, c))":
            lambda a, b, c: M[a, c] >= min(M[a, b], M[b, c]),
    }
    if not left:
        del checks[f"{label}(ga, gb) >= {label}(a, b)"]
    if n <= EXHAUSTIVE_TRIPLES:
        scope = f"exhaustive, {n ** 3} triples"
        vec = [
            lambda g: M[np.ix_(P[:, g], P[:, g])] >= M,
            lambda g: M[np.ix_(P[g, :], P[g, :])] >= M,
            lambda b: M >= np.minimum.outer(M[:, b], M[b, :]),
        ]
        if not left:
            del vec[1]
        for (cname, scalar), v in zip(checks.items(), vec):
            for mid in range(n):
                ok = v(mid)
                if not ok.all():
                    a, c = (int(x) for x in np.argwhere(~ok)[0])
                    out.append(failed(cname, [names[a], names[mid], names[c]]))
                    break
            else:
                out.append(passed(cname, scope))
    else:
        scope = f"{RANDOM_TRIPLES} random triples"
        for cname, scalar in checks.items():
            rng = random.Random(seed)
            for a, b, c in _triples(n, rng, RANDOM_TRIPLES):
                if not scalar(a, b, c):
                    out.append(failed(cname, [names[a], names[b], names[c]]))
                    break
            else:
                out.append(passed(cname, scope))
    return out


def check_xi_laws(ctx: LengthContext, *, seed: int = 0) -> list[CheckResult]:
    return _laws(ctx, ctx.xi_table, "xi", left=False, seed=seed)


def check_length_laws(ctx: LengthContext, *, seed: int = 0) -> list[CheckResult]:
    return _laws(ctx, ctx.D, "D", left=True, seed=seed)


def check_oop(ctx: LengthContext, *, seed: int = 0) -> CheckResult:
    """``a != b`` and ``xi(a, b) < xi(a, c)`` imply ``D(a, b) < D(a, c)``."""
    name = "longer shared prefix gives larger D"
    X, D = ctx.xi_table, ctx.D
    n = ctx.size
    names = ctx.T.names
    if n <= EXHAUSTIVE_TRIPLES:
        for a in range(n):
            premise = (X[a][:, None] < X[a][None, :])
            premise[a, :] = False
            bad = premise & ~(D[a][:, None] < D[a][None, :])
            if bad.any():
                b, c = (int(x) for x in np.argwhere(bad)[0])
                return failed(name, [names[a], names[b], names[c]])
        return passed(name, f"exhaustive, {n ** 3} triples")
    rng = random.Random(seed)
    for a, b, c in _triples(n, rng, RANDOM_TRIPLES):
        if a != b and X[a, b] < X[a, c] and not D[a, b] < D[a, c]:
            return failed(name, [names[a], names[b], names[c]])
    return passed(name, f"{RANDOM_TRIPLES} random triples")


def check_range(ctx: LengthContext) -> CheckResult:
    """``0 <= D <= ell`` and ``D = ell`` only on the diagonal."""
    name = "D takes values in 0..ell, ell only on the diagonal"
    D = ctx.D
    if D.min() < 0 or D.max() > ctx.ell:
        return failed(name, [int(D.min()), int(D.max())])
    off = np.argwhere((D == ctx.ell) & ~np.eye(ctx.size, dtype=bool))
    if off.size:
        return failed(name, [ctx.T.names[i] for i in off[0]])
    return passed(name, f"ell = {ctx.ell}")


def check_definition(ctx: LengthContext) -> CheckResult:
    """Memoised table agrees with direct evaluation."""
    name = "D table matches the case definition"
    for a in range(ctx.size):
        for b in range(ctx.size):
            if ctx.D[a, b] != length_D(ctx, a, b):
                return failed(name, [ctx.T.names[a], ctx.T.names[b]])
    return passed(name)
