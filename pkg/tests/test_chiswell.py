import numpy as np
import pytest
from hypothesis import given

from krtree import chiswell, kr
from krtree.cayley import LEFT, RIGHT
from krtree.chiswell import (
    EllipticMap,
    build_tree,
    em_compose,
    identity_map,
    is_elliptic,
    left_action,
    length_D,
    make_context,
    representation,
    right_action,
    xi,
)
from krtree.errors import InputError
from krtree.semigroup import from_transformations
from oracle import Brute, Expansion
from strategies import transformation_specs

# Reference arrows for the LZ(2) actions, vertex label -> image label.
LZ2_LEFT_A = {
    "[0,1]": "[0,1]", "[1,1]": "[1,a]", "[1,a]": "[1,a]", "[1,b]": "[1,a]",
    "[2,1]": "[2,a]", "[2,a]": "[2,a]", "[2,ab]": "[2,ab]", "[2,b]": "[2,ab]", "[2,ba]": "[2,a]",
}
LZ2_LEFT_B = {
    "[0,1]": "[0,1]", "[1,1]": "[1,b]", "[1,a]": "[1,b]", "[1,b]": "[1,b]",
    "[2,1]": "[2,b]", "[2,a]": "[2,ba]", "[2,ab]": "[2,b]", "[2,b]": "[2,b]", "[2,ba]": "[2,ba]",
}
LZ2_RIGHT_A = {
    "[0,1]": "[0,1]", "[1,1]": "[1,a]", "[1,a]": "[1,a]", "[1,b]": "[1,b]",
    "[2,1]": "[2,a]", "[2,a]": "[2,a]", "[2,ab]": "[2,a]", "[2,b]": "[2,ba]", "[2,ba]": "[2,ba]",
}
LZ2_RIGHT_B = {
    "[0,1]": "[0,1]", "[1,1]": "[1,b]", "[1,a]": "[1,a]", "[1,b]": "[1,b]",
    "[2,1]": "[2,b]", "[2,a]": "[2,ab]", "[2,ab]": "[2,ab]", "[2,b]": "[2,b]", "[2,ba]": "[2,b]",
}
# Level 4 of the left action of a on the T2 tree.
T2_LEFT_A_LEVEL4 = {
    "[4,1]": "[4,a]", "[4,a]": "[4,aa]", "[4,aa]": "[4,a]",
    "[4,ab]": "[4,aab]", "[4,aab]": "[4,ab]", "[4,b]": "[4,ab]",
}


def tree_of(S, side=LEFT):
    return build_tree(make_context(kr.build_kr(S, side)))


@pytest.fixture(scope="module")
def lz2_tree(lz2):
    return tree_of(lz2)


@pytest.fixture(scope="module")
def t2_tree(t2):
    return tree_of(t2)


# ---- xi and D


def test_xi_examples(lz2, t2):
    L = kr.build_kr_left(lz2)
    T = kr.build_kr_left(t2)
    assert xi(L, "a", "b") == 0
    assert xi(T, "a", "ab") == 1
    for e in T.elements:
        assert xi(T, e, e) == len(e.transitions)


def test_length_examples(lz2_tree):
    ctx = lz2_tree.ctx
    assert ctx.ell == 2
    assert length_D(ctx, "a", "ab") == 1
    assert length_D(ctx, "ab", "ba") == 0
    assert all(length_D(ctx, x, x) == ctx.ell for x in range(ctx.size))
    assert lz2_tree.vertex(1, "a") == lz2_tree.vertex(1, "ab")
    assert lz2_tree.vertex(2, "a") != lz2_tree.vertex(2, "ab")


def test_t2_ell_and_split(t2_tree):
    assert t2_tree.ell == 4
    assert length_D(t2_tree.ctx, "a", "ab") == 1


def test_xi_has_no_left_law(t2):
    # left multiplication can drop transition edges: b.ab has fewer than ab
    T = kr.build_kr_left(t2)
    ab = T.class_of("ab")
    bab = T.mul(T.class_of("b"), ab)
    assert xi(T, bab, bab) < xi(T, ab, ab)


# ---- the tree


def test_lz2_tree(lz2_tree):
    assert len(lz2_tree) == 9
    assert lz2_tree.profile() == (1, 3, 5)
    levels = {k: {lz2_tree.label(v) for v in lz2_tree.level(k)} for k in range(3)}
    assert levels[1] == {"[1,1]", "[1,a]", "[1,b]"}
    assert levels[2] == {"[2,1]", "[2,a]", "[2,ab]", "[2,b]", "[2,ba]"}
    assert set(lz2_tree.member_names(lz2_tree.vertex(1, "a"))) == {"a", "ab"}


def test_tree_structure(lz2_tree, t2_tree):
    for tree in (lz2_tree, t2_tree):
        assert tree.level(0) == [tree.root]
        assert chiswell.check_tree(tree)
        for v in range(1, len(tree)):
            assert tree.depth(tree.parent(v)) == tree.depth(v) - 1
        assert len(tree.edges()) == len(tree) - 1


def test_identity_chain(t2_tree):
    chain = t2_tree.identity_chain()
    assert [t2_tree.label(v) for v in chain] == ["[1,1]", "[2,1]", "[3,1]", "[4,1]"]
    assert all(t2_tree.member_names(v) == ["1"] for v in chain)


# ---- actions


def test_lz2_actions_match_reference_arrows(lz2_tree):
    assert dict(left_action(lz2_tree, "a").arrows()) == LZ2_LEFT_A
    assert dict(left_action(lz2_tree, "b").arrows()) == LZ2_LEFT_B
    assert dict(right_action(lz2_tree, "a").arrows()) == LZ2_RIGHT_A
    assert dict(right_action(lz2_tree, "b").arrows()) == LZ2_RIGHT_B


def test_t2_left_action_level4(t2_tree):
    arrows = dict(left_action(t2_tree, "a").arrows())
    assert {v: w for v, w in arrows.items() if v.startswith("[4,")} == T2_LEFT_A_LEVEL4


def test_identity_acts_trivially(t2_tree):
    assert left_action(t2_tree, "") == identity_map(t2_tree)
    assert right_action(t2_tree, "") == identity_map(t2_tree)


def test_is_elliptic_negative_controls(lz2_tree):
    assert is_elliptic(lz2_tree, identity_map(lz2_tree))
    images = list(range(len(lz2_tree)))
    a1, a2 = lz2_tree.vertex(1, "a"), lz2_tree.vertex(2, "a")
    images[a1], images[a2] = a2, a1
    r = is_elliptic(lz2_tree, EllipticMap(lz2_tree, images))
    assert not r and "depth" in r.detail
    images = list(range(len(lz2_tree)))
    b2 = lz2_tree.vertex(2, "b")
    images[a2], images[b2] = b2, a2
    r = is_elliptic(lz2_tree, EllipticMap(lz2_tree, images))
    assert not r and "edge" in r.detail


def test_composition(t2_tree, lz2_tree):
    T = t2_tree.T
    f = left_action(t2_tree, "a")
    assert em_compose(f, identity_map(t2_tree)) == f
    for u in T.names:
        for v in T.names:
            uv = T.mul(T.class_of(u), T.class_of(v))
            assert em_compose(left_action(t2_tree, u), left_action(t2_tree, v)) == left_action(t2_tree, uv)
            # (x.u).v = x.(uv)
            assert em_compose(right_action(t2_tree, v), right_action(t2_tree, u)) == right_action(t2_tree, uv)
    with pytest.raises(InputError):
        em_compose(f, identity_map(lz2_tree))


def test_representations_are_faithful(lz2_tree, t2_tree, sem41):
    for tree, n in ((lz2_tree, 5), (t2_tree, 6)):
        for side in (LEFT, RIGHT):
            rep = representation(tree, side)
            assert rep.faithful
            assert len(set(f.images for f in rep.maps)) == n
    for side in (LEFT, RIGHT):
        tree = tree_of(sem41, side)
        for act in (LEFT, RIGHT):
            assert representation(tree, act).faithful


# ---- laws


def test_laws_on_fixtures(lz2, t2, sem41):
    for S in (lz2, t2, sem41):
        for side in (LEFT, RIGHT):
            ctx = make_context(kr.build_kr(S, side))
            assert all(chiswell.check_xi_laws(ctx))
            assert all(chiswell.check_length_laws(ctx))
            assert chiswell.check_oop(ctx)
            assert chiswell.check_range(ctx)
            assert chiswell.check_definition(ctx)


def test_random_law_sampling_path(sem41):
    ctx = make_context(kr.build_kr(sem41, RIGHT))
    assert ctx.size > chiswell.EXHAUSTIVE_TRIPLES
    results = chiswell.check_length_laws(ctx) + chiswell.check_xi_laws(ctx) + [chiswell.check_oop(ctx)]
    assert all(results)
    assert any("random" in r.detail for r in results)


# ---- against the oracle


def assert_matches_oracle(tree, X: Expansion):
    T = tree.T
    assert tree.ell == X.ell
    words = ["".join(e.rep) for e in T.elements]
    D = np.array([[X.D(u, v) for v in words] for u in words])
    assert np.array_equal(tree.ctx.D, D)
    levels = X.levels()
    for k in range(tree.ell + 1):
        got = {frozenset(tree.member_names(v)) for v in tree.level(k)}
        assert got == levels[k]
    for side, act in ((LEFT, left_action), (RIGHT, right_action)):
        for a in T.alphabet:
            f = act(tree, a)
            prod = X.product_map(a, side)
            for v in range(len(tree)):
                k = tree.depth(v)
                w = f(v)
                assert prod[T.names[tree.vertices[v].rep]] in tree.member_names(w)
                assert tree.depth(w) == k


def test_fixture_trees_match_oracle(brute, lz2, t2, sem41):
    for name, S in (("lz2", lz2), ("t2", t2), ("sem41", sem41)):
        for side in (LEFT, RIGHT):
            assert_matches_oracle(tree_of(S, side), Expansion(brute[name], side))


def test_golden_profiles(t2, sem41):
    assert tree_of(t2, LEFT).profile() == (1, 3, 6, 6, 6)
    assert tree_of(t2, RIGHT).profile() == (1, 3, 5, 6, 9)
    assert tree_of(sem41, LEFT).profile() == (1, 3, 7, 7, 15, 15, 21, 21, 21)


@given(transformation_specs(max_points=4, max_letters=2))
def test_random_trees(spec):
    alphabet, gens = spec
    S = from_transformations(alphabet, gens)
    B = Brute.from_transformations(alphabet, gens)
    for side in (LEFT, RIGHT):
        tree = tree_of(S, side)
        assert_matches_oracle(tree, Expansion(B, side))
        ctx = tree.ctx
        assert all(chiswell.check_xi_laws(ctx))
        assert all(chiswell.check_length_laws(ctx))
        assert chiswell.check_oop(ctx)
        assert chiswell.check_range(ctx)
        for act in (LEFT, RIGHT):
            assert representation(tree, act).faithful
