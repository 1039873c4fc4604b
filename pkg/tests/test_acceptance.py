"""Acceptance criteria, one test each, at their stated tolerances.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line (outside pytest's
capture) before asserting, so ``pytest tests/test_acceptance.py`` doubles as a
report.
"""
import time

import numpy as np
import pytest

from krtree import cayley, export, inputs, kr, verify
from krtree.cayley import LEFT, RIGHT
from krtree.chiswell import build_tree, left_action, make_context, right_action
from krtree.inputs import SEM41_IDEAL
from krtree.semaphore import acting_semigroup, code_from_ideal
from krtree.semigroup import adjoin_identity
from oracle import Brute, Expansion
from test_chiswell import LZ2_LEFT_A, LZ2_RIGHT_A, LZ2_RIGHT_B
from test_semaphore import TABLE_1


@pytest.fixture
def report(capsys):
    def emit(n: int, title: str, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'}: {title} ({detail})")
        assert ok, f"criterion {n} failed: {detail}"
    return emit


def tree_of(S, side):
    return build_tree(make_context(kr.build_kr(S, side)))


def test_1_table_reproduction(report):
    t0 = time.perf_counter()
    rows = code_from_ideal(SEM41_IDEAL).table()
    dt = time.perf_counter() - t0
    got = {(u, a): img for u, *imgs in rows for a, img in zip("ab", imgs)}
    want = {(u, a): img for u, *imgs in TABLE_1 for a, img in zip("ab", imgs)}
    matches = sum(got.get(k) == v for k, v in want.items())
    ok = len(want) == 22 and matches == 22 and len(got) == 22 and dt < 1.0
    report(1, "action table of the semaphore code", ok, f"{matches}/22 entries equal, {dt:.3f}s")


def test_2_acting_semigroup_size(report):
    S = acting_semigroup(code_from_ideal(SEM41_IDEAL))
    report(2, "acting semigroup has 11 elements", S.size == 11, f"|S| = {S.size}")


def test_3_lz2_pipeline(report):
    t0 = time.perf_counter()
    S = inputs.load_fixture("lz2")
    T = kr.build_kr(S, LEFT)
    tree = build_tree(make_context(T))
    la = dict(left_action(tree, "a").arrows())
    ra = dict(right_action(tree, "a").arrows())
    rb = dict(right_action(tree, "b").arrows())
    dt = time.perf_counter() - t0
    checks = {
        "4 non-identity elements": T.size - 1 == 4,
        "ell = 2": tree.ell == 2,
        "9 vertices": len(tree) == 9,
        "profile (1,3,5)": tree.profile() == (1, 3, 5),
        "a.[1,b] = [1,a]": la["[1,b]"] == "[1,a]",
        "a.[2,ba] = [2,a]": la["[2,ba]"] == "[2,a]",
        "left action of a": la == LZ2_LEFT_A,
        "right action of a": ra == LZ2_RIGHT_A,
        "right action of b": rb == LZ2_RIGHT_B,
        "under 1 s": dt < 1.0,
    }
    bad = [k for k, v in checks.items() if not v]
    report(3, "LZ(2) pipeline", not bad, f"failed: {bad}" if bad else f"{dt:.3f}s")


def test_4_t2_structure(report):
    t0 = time.perf_counter()
    S = inputs.load_fixture("t2")
    G = cayley.build(adjoin_identity(S), LEFT)
    names = G.semigroup.names
    edges = {(names[s], a, names[t]) for s, a, t in G.transition_edges()}
    T = kr.build_kr(S, LEFT)
    tree = build_tree(make_context(T))
    dt = time.perf_counter() - t0
    want_edges = {("1", "a", "(2 1)"), ("1", "b", "(1 1)"),
                  ("(2 1)", "b", "(2 2)"), ("(1 2)", "b", "(1 1)")}
    checks = {
        "4 transition edges": edges == want_edges,
        "KR elements": set(T.names) - {"1"} == {"a", "b", "ab", "aa", "aab"},
        "ell = 4": tree.ell == 4,
        "under 1 s": dt < 1.0,
    }
    bad = [k for k, v in checks.items() if not v]
    report(4, "T2 Cayley graph, expansion and depth", not bad,
           f"failed: {bad}, edges {sorted(edges)}" if bad else f"{dt:.3f}s")


def test_5_t2_tree_against_oracle(report):
    t0 = time.perf_counter()
    doc = inputs.fixture_doc("t2")
    S = inputs.load_fixture("t2")
    B = Brute.from_doc(doc)
    mismatches = []
    for side in (LEFT, RIGHT):
        tree = tree_of(S, side)
        X = Expansion(B, side)
        words = ["".join(e.rep) for e in tree.T.elements]
        if sorted(words, key=lambda w: (len(w), w)) != X.words:
            mismatches.append(f"{side}: representatives")
            continue
        D = np.array([[X.D(u, v) for v in words] for u in words])
        if tree.ell != X.ell or not np.array_equal(tree.ctx.D, D):
            mismatches.append(f"{side}: D-table")
        levels = X.levels()
        for k in range(tree.ell + 1):
            got = {frozenset(tree.member_names(v)) for v in tree.level(k)}
            if got != levels[k]:
                mismatches.append(f"{side}: level {k}")
    dt = time.perf_counter() - t0
    ok = not mismatches and dt < 5.0
    report(5, "T2 D-table and tree equal the brute-force oracle", ok,
           f"mismatches {mismatches}" if mismatches else f"{dt:.3f}s")


def test_6_invariant_suites(report):
    t0 = time.perf_counter()
    reports = [verify.run_suite(inputs.load_fixture(name), "all", subject=name)
               for name in inputs.FIXTURES]
    reports.append(verify.run_random(4, 20, seed=0))
    dt = time.perf_counter() - t0
    checks = sum(len(r.checks) for r in reports)
    bad = [f"{r.subject}: {c.name}" for r in reports for c in r.failures()]
    trials = len({c.name.split(":")[0] for c in reports[-1].checks})
    ok = not bad and trials >= 20 and dt < 60.0
    report(6, "invariant suites on fixtures and 20 random semigroups", ok,
           f"{checks} checks, violations {bad[:5]}, {dt:.1f}s")


def render_all(name):
    S = inputs.load_fixture(name)
    out = [export.dumps(export.semigroup_dict(S))]
    for side in (LEFT, RIGHT):
        G = cayley.build(adjoin_identity(S), side)
        T = kr.build_kr(S, side)
        tree = build_tree(make_context(T))
        out += [export.cayley_dot(G), export.dumps(export.cayley_dict(G)),
                export.kr_dot(T), export.dumps(export.kr_dict(T)),
                export.tree_dot(tree), export.dumps(export.tree_dict(tree))]
    return [s.encode() for s in out]


def test_7_determinism(report):
    differing = [name for name in inputs.FIXTURES if render_all(name) != render_all(name)]
    report(7, "byte-identical DOT and JSON across runs", not differing,
           f"differing: {differing}" if differing else "all fixtures identical")
