"""Invariant suites over a semigroup, its Cayley graphs, expansions and trees."""
from __future__ import annotations

import random
from dataclasses import replace

from . import cayley, chiswell, kr
from .cayley import LEFT, RIGHT
from .errors import InputError, KRError
from .report import CheckResult, RunReport, failed, passed, run_timed
from .semigroup import (
    FiniteSemigroup,
    adjoin_identity,
    check_associativity,
    check_generation,
    check_height_contiguity,
    check_height_drop,
    check_opposite_duality,
    check_stability,
    from_transformations,
    greens,
    is_regular,
)

SUITES = ("semigroup", "cayley", "kr", "chiswell", "all")
SIDES = (LEFT, RIGHT)


def _tag(prefix: str, results) -> list[CheckResult]:
    if isinstance(results, CheckResult):
        results = [results]
    return [replace(r, name=f"{prefix}: {r.name}") for r in results]


def semigroup_checks(S: FiniteSemigroup) -> list[CheckResult]:
    S1 = adjoin_identity(S)
    g = greens(S1)
    reg = is_regular(S)
    note = "regular" if reg.regular else f"not regular (witness {S.names[reg.counterexample]})"
    return [
        run_timed(check_associativity, S),
        run_timed(check_generation, S),
        run_timed(check_stability, S1, g),
        run_timed(check_height_drop, S1, g),
        run_timed(check_height_contiguity, g),
        run_timed(check_opposite_duality, S1),
        passed("regularity recorded", note),
    ]


def cayley_checks(S: FiniteSemigroup, *, seed: int = 0) -> list[CheckResult]:
    S1 = adjoin_identity(S)
    out = []
    for side in SIDES:
        G = cayley.build(S1, side)
        out.append(run_timed(cayley.check_graph, G))
        out.extend(cayley.check_sequences(G, seed=seed))
        if side == RIGHT:
            out.append(run_timed(cayley.check_right_criterion, G, greens(S1)))
    out.append(run_timed(cayley.check_duality, S1))
    return out


def kr_checks(T: kr.KRSemigroup, *, seed: int = 0) -> list[CheckResult]:
    out = [
        run_timed(kr.check_elements, T),
        run_timed(kr.check_phi_homomorphism, T),
        run_timed(kr.verify_pullreg, T),
        run_timed(kr.check_congruence, T, seed=seed),
        run_timed(kr.check_rep_minimality, T),
    ]
    out.extend(kr.verify_height_transfer(T))
    return _tag(f"KR {T.side}", out)


def chiswell_checks(T: kr.KRSemigroup, *, seed: int = 0) -> list[CheckResult]:
    ctx = chiswell.make_context(T)
    out = [
        run_timed(chiswell.check_definition, ctx),
        run_timed(chiswell.check_range, ctx),
        run_timed(chiswell.check_oop, ctx, seed=seed),
    ]
    out.extend(chiswell.check_xi_laws(ctx, seed=seed))
    out.extend(chiswell.check_length_laws(ctx, seed=seed))
    try:
        tree = chiswell.build_tree(ctx)
    except KRError as e:
        out.append(failed("Chiswell graph is a rooted tree", str(e)))
        return _tag(f"tree {T.side}", out)
    out.append(run_timed(chiswell.check_tree, tree))
    for side in SIDES:
        try:
            out.extend(chiswell.representation(tree, side).checks)
        except KRError as e:
            out.append(failed(f"{side} action", str(e)))
    return _tag(f"tree {T.side}", out)


def run_suite(S: FiniteSemigroup, suite: str = "all", *, subject: str = "semigroup",
              seed: int = 0, report: RunReport | None = None) -> RunReport:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = report if report is not None else RunReport(subject)

    def add(results):
        report.extend(_tag(subject, results) if report.subject != subject else results)

    if suite in ("semigroup", "all"):
        add(semigroup_checks(S))
    if suite in ("cayley", "all"):
        add(cayley_checks(S, seed=seed))
    if suite in ("kr", "chiswell", "all"):
        for side in SIDES:
            T = kr.build_kr(S, side)
            if suite in ("kr", "all"):
                add(kr_checks(T, seed=seed))
            if suite in ("chiswell", "all"):
                add(chiswell_checks(T, seed=seed))
    return report


def random_transformations(rng: random.Random, points: int, letters: int = 2) -> FiniteSemigroup:
    alphabet = "abcdefgh"[:letters]
    gens = {a: tuple(rng.randint(1, points) for _ in range(points)) for a in alphabet}
    return from_transformations(tuple(alphabet), gens)


def run_random(points: int, trials: int, *, seed: int = 0, suite: str = "all",
               letters: int = 2) -> RunReport:
    """``trials`` random transformation semigroups on 1..``points`` points."""
    rng = random.Random(seed)
    report = RunReport(f"random transformations (points <= {points}, seed {seed})")
    for i in range(trials):
        n = rng.randint(1, points)
        S = random_transformations(rng, n, letters)
        run_suite(S, suite, subject=f"trial {i} ({n} points, |S| = {S.size})", seed=seed + i,
                  report=report)
    return report
