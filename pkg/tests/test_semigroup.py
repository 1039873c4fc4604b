import pytest
from hypothesis import given

from krtree.errors import InputError, ResourceError
from krtree.semigroup import (
    Transformation,
    adjoin_identity,
    check_associativity,
    check_generation,
    check_height_contiguity,
    check_height_drop,
    check_opposite_duality,
    check_stability,
    evaluate_word,
    format_word,
    from_table,
    from_transformations,
    greens,
    is_regular,
    opposite,
    parse_word,
    shortest_words,
)
from oracle import ONE, Brute
from strategies import transformation_specs


def oracle_key(S1, i):
    """Map a package element of ``S^1`` to the oracle's element."""
    if i == S1.identity:
        return ONE
    return S1.elements[i].images


# ---- words and transformations


def test_parse_and_format_words():
    assert parse_word("ab", "aab") == ("a", "a", "b")
    assert parse_word("ab", "") == () == parse_word("ab", "1") == parse_word("ab", "ε")
    assert parse_word(("x1", "x2"), "x1.x2 x1") == ("x1", "x2", "x1")
    assert format_word(()) == "1"
    assert format_word(("x1", "x2")) == "x1.x2"
    with pytest.raises(InputError):
        parse_word("ab", "abc")


def test_transformation_convention():
    f = Transformation((2, 1))
    g = Transformation((1, 1))
    # f acts first: 1 -> 2 -> 1, 2 -> 1 -> 1
    assert f.then(g) == Transformation((1, 1))
    assert g.then(f) == Transformation((2, 2))
    assert str(f) == "(2 1)"
    with pytest.raises(InputError):
        Transformation((0, 1))


# ---- from_transformations


def test_t2_closure(t2):
    assert t2.size == 4
    assert set(t2.names) == {"(1 2)", "(2 1)", "(1 1)", "(2 2)"}
    assert t2.names[t2.generator("a")] == "(2 1)"
    assert t2.names[t2.generator("b")] == "(1 1)"


def test_identity_on_one_point():
    S = from_transformations("a", {"a": (1,)})
    assert S.size == 1


def test_three_point_closure_matches_oracle():
    gens = {"a": (1, 3, 2), "b": (2, 1, 3)}
    S = from_transformations("ab", gens)
    assert S.size == Brute.from_transformations("ab", gens).size() == 6


def test_closure_errors():
    with pytest.raises(InputError):
        from_transformations("ab", {"a": (1, 2), "b": (1, 1, 1)})
    with pytest.raises(InputError):
        from_transformations("ab", {"a": (1, 2)})
    with pytest.raises(ResourceError):
        from_transformations("ab", {"a": (2, 3, 1), "b": (2, 1, 3)}, cap=5)


# ---- from_table


def test_left_zero_table(lz2):
    assert lz2.size == 2
    for x in range(2):
        for y in range(2):
            assert lz2.mul(x, y) == x


def test_trivial_table():
    S = from_table(["e"], [[0]], {"a": 0})
    assert S.size == 1


def test_non_associative_rejected_with_witness():
    with pytest.raises(InputError, match=r"not associative: \(.\*.\)\*. != .\*\(.\*.\)"):
        from_table(["x", "y"], [[1, 1], [0, 0]], {"a": 0})


def test_table_validation():
    with pytest.raises(InputError, match="does not generate|do not generate"):
        from_table(["x", "y"], [[0, 0], [1, 1]], {"a": 0})
    with pytest.raises(InputError, match="row 1"):
        from_table(None, [[0, 0], [0]], {"a": 0})
    with pytest.raises(InputError, match="distinct"):
        from_table(["x", "x"], [[0, 0], [1, 1]], {"a": 0, "b": 1})
    with pytest.raises(InputError, match="not an element index"):
        from_table(None, [[0, 2], [1, 1]], {"a": 0, "b": 1})


# ---- identity, opposite, words


def test_adjoin_identity_sizes(lz2, t2):
    assert adjoin_identity(lz2).size == 3
    T1 = adjoin_identity(t2)
    assert T1.size == 5
    assert T1.names[T1.identity] == "1"
    one = T1.identity
    assert all(T1.mul(one, x) == x == T1.mul(x, one) for x in range(5))
    trivial = from_table(None, [[0]], {"a": 0})
    assert adjoin_identity(trivial).size == 2


def test_adjoin_identity_to_a_monoid_adds_a_new_element():
    S = from_transformations("ab", {"a": (1, 2), "b": (1, 1)})  # a is already an identity
    S1 = adjoin_identity(S)
    assert S1.size == S.size + 1
    assert S1.identity not in S1.generators


def test_opposite(lz2, t2):
    op = opposite(lz2)
    assert all(op.mul(x, y) == y for x in range(2) for y in range(2))
    assert opposite(opposite(t2)) == t2


def test_r_of_opposite_is_l(t2):
    T1 = adjoin_identity(t2)
    g, h = greens(T1), greens(opposite(T1))
    assert h.classes("R") == g.classes("L")
    assert h.below_R == g.below_L
    assert check_opposite_duality(T1)


def test_evaluate_word(t2, lz2):
    assert t2.names[evaluate_word(t2, "aa")] == "(1 2)"
    assert lz2.names[evaluate_word(lz2, "ab")] == "a"
    assert evaluate_word(adjoin_identity(t2), "") == 4
    with pytest.raises(InputError):
        evaluate_word(t2, "")
    with pytest.raises(InputError):
        evaluate_word(t2, "ac")


# ---- Green's structure and heights


def test_t2_heights(t2):
    T1 = adjoin_identity(t2)
    h = dict(zip(T1.names, greens(T1).heights))
    assert h == {"1": 0, "(1 2)": 1, "(2 1)": 1, "(1 1)": 2, "(2 2)": 2}


def test_lz2_heights(lz2):
    L1 = adjoin_identity(lz2)
    h = dict(zip(L1.names, greens(L1).heights))
    assert h == {"1": 0, "a": 1, "b": 1}


def test_heights_match_chain_oracle(brute, lz2, t2, sem41):
    for name, S in (("lz2", lz2), ("t2", t2), ("sem41", sem41)):
        B = brute[name]
        S1 = adjoin_identity(S)
        g = greens(S1)
        by_name = {B.names[x]: h for x, h in B.heights().items()}
        assert dict(zip(S1.names, g.heights)) == by_name
        assert g.heights[S1.identity] == 0


def test_regularity(t2, lz2):
    assert is_regular(t2).regular
    r = is_regular(lz2)
    assert r.regular and all(lz2.mul(lz2.mul(s, t), s) == s for s, t in r.witnesses.items())
    null = from_table(["a", "0"], [[1, 1], [1, 1]], {"a": 0})
    r = is_regular(null)
    assert not r.regular and r.counterexample == 0


def test_fixture_checks_pass(lz2, t2, sem41):
    for S in (lz2, t2, sem41):
        S1 = adjoin_identity(S)
        g = greens(S1)
        assert check_stability(S1, g)
        assert check_height_drop(S1, g)
        assert check_height_contiguity(g)
        assert check_associativity(S)
        assert check_generation(S)


def test_generation_words(sem41):
    words = shortest_words(sem41)
    assert all(w is not None and evaluate_word(sem41, w) == x for x, w in enumerate(words))


@given(transformation_specs(max_points=4, max_letters=3))
def test_random_greens_against_oracle(spec):
    alphabet, gens = spec
    S = from_transformations(alphabet, gens)
    B = Brute.from_transformations(alphabet, gens)
    assert S.size == B.size()
    S1 = adjoin_identity(S)
    g = greens(S1)
    heights = B.heights()
    for x in range(S1.size):
        assert g.heights[x] == heights[oracle_key(S1, x)]
        for y in range(S1.size):
            for kind in "RLJ":
                assert g.leq(kind, x, y) == B.leq(kind, oracle_key(S1, x), oracle_key(S1, y))
    assert is_regular(S).regular == B.regular()
    assert check_stability(S1, g)
    assert check_height_drop(S1, g)
    assert check_height_contiguity(g)
    assert check_opposite_duality(S1)
    assert check_associativity(S)
