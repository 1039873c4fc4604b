"""Command-line entry point.

Exit codes: 0 success, 1 bad input, 2 invariant or check failure, 3 size cap hit.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cayley, chiswell, export, inputs, kr, verify
from .errors import InputError, KRError
from .semaphore import IdealSpec, code_from_ideal, example_pipeline
from .semigroup import DEFAULT_CAP, adjoin_identity


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _source(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--fixture", choices=inputs.FIXTURES, help="built-in semigroup")
    g.add_argument("--spec", metavar="PATH", help="SemigroupSpec JSON file")


def _common(p: argparse.ArgumentParser, formats: tuple[str, ...], side: bool = True) -> None:
    if side:
        p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", metavar="PATH", help="write here instead of stdout")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element cap for closures")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="krtree", description=__doc__.splitlines()[0].rstrip("."))
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("semigroup", help="element table of a semigroup")
    _source(p)
    _common(p, ("json", "tsv"), side=False)

    p = sub.add_parser("cayley", help="left or right Cayley graph with transition edges")
    _source(p)
    _common(p, ("dot", "json", "tsv"))

    p = sub.add_parser("kr", help="Karnofsky-Rhodes expansion")
    _source(p)
    _common(p, ("dot", "json", "tsv"))

    p = sub.add_parser("chiswell", help="Chiswell tree of the expansion")
    _source(p)
    _common(p, ("dot", "json", "tsv"))
    p.add_argument("--hide-identity-chain", action="store_true")

    p = sub.add_parser("act", help="action of one element on the Chiswell tree")
    _source(p)
    _common(p, ("dot", "json", "tsv"))
    p.add_argument("--word", required=True, help="word naming the acting element")
    p.add_argument("--action", choices=("left", "right"), default="left")
    p.add_argument("--hide-identity-chain", action="store_true")

    p = sub.add_parser("semaphore", help="semaphore code from an ideal and its pipeline")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fixture", choices=("sem41",))
    g.add_argument("--alphabet", help="letters, e.g. ab")
    p.add_argument("--window", help="window length k")
    p.add_argument("--generators", help="comma-separated ideal generators")
    _common(p, ("tsv", "json", "dot"), side=False)
    p.add_argument("--overlay", metavar="LETTER", help="with --format dot: draw the right action of LETTER")
    p.add_argument("--hide-identity-chain", action="store_true")

    p = sub.add_parser("verify", help="run invariant suites and report")
    _source(p, required=False)
    p.add_argument("--random", choices=("transformations",))
    p.add_argument("--points", type=int, default=4)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="PATH")
    return parser


def _load(args):
    if args.fixture:
        return inputs.load_fixture(args.fixture, cap=args.cap)
    return inputs.load_spec(args.spec, cap=args.cap)


def _tree(args):
    T = kr.build_kr(_load(args), args.side, cap=args.cap)
    return chiswell.build_tree(chiswell.make_context(T))


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, newline="")
    else:
        sys.stdout.write(text)


def cmd_semigroup(args) -> int:
    S = _load(args)
    _emit(args, export.dumps(export.semigroup_dict(S)) if args.format == "json" else export.semigroup_tsv(S))
    return 0


def cmd_cayley(args) -> int:
    G = cayley.build(adjoin_identity(_load(args)), args.side)
    render = {"dot": export.cayley_dot, "tsv": export.cayley_tsv,
              "json": lambda g: export.dumps(export.cayley_dict(g))}
    _emit(args, render[args.format](G))
    return 0


def cmd_kr(args) -> int:
    T = kr.build_kr(_load(args), args.side, cap=args.cap)
    render = {"dot": export.kr_dot, "tsv": export.kr_tsv,
              "json": lambda t: export.dumps(export.kr_dict(t))}
    _emit(args, render[args.format](T))
    return 0


def cmd_chiswell(args) -> int:
    tree = _tree(args)
    if args.format == "dot":
        text = export.tree_dot(tree, hide_identity_chain=args.hide_identity_chain)
    elif args.format == "tsv":
        text = export.tree_tsv(tree)
    else:
        text = export.dumps(export.tree_dict(tree))
    _emit(args, text)
    return 0


def cmd_act(args) -> int:
    tree = _tree(args)
    f = chiswell.action(tree, tree.T.class_of(args.word), args.action)
    if args.format == "dot":
        text = export.tree_dot(tree, hide_identity_chain=args.hide_identity_chain, overlay=f)
    elif args.format == "tsv":
        text = export.action_tsv(f)
    else:
        text = export.dumps(export.action_dict(f, args.action))
    _emit(args, text)
    return 0


def cmd_semaphore(args) -> int:
    if args.fixture:
        spec = inputs.SEM41_IDEAL
    else:
        if args.window is None or args.generators is None:
            raise InputError("--alphabet needs --window and --generators")
        spec = IdealSpec.parse(args.alphabet, args.window, args.generators)
    if args.format == "tsv":
        _emit(args, code_from_ideal(spec).to_tsv())
        return 0
    run = example_pipeline(spec, cap=args.cap)
    if args.format == "dot":
        overlay = None
        if args.overlay is not None:
            if args.overlay not in run.actions:
                raise InputError(f"--overlay must be one of {', '.join(run.actions)}")
            overlay = run.actions[args.overlay]
        _emit(args, export.tree_dot(run.tree, hide_identity_chain=args.hide_identity_chain,
                                    overlay=overlay))
        return 0
    doc = {
        "code": run.code.to_dict(),
        "semigroup_size": run.semigroup.size,
        "kr_size": run.kr.size,
        "ell": run.tree.ell,
        "profile": list(run.tree.profile()),
        "actions": {a: export.action_dict(f, "right")["arrows"] for a, f in run.actions.items()},
    }
    _emit(args, export.dumps(doc))
    return 0


def cmd_verify(args) -> int:
    if args.random:
        if args.fixture or args.spec:
            raise InputError("--random cannot be combined with --fixture or --spec")
        if not 1 <= args.points <= 6 or args.trials < 1:
            raise InputError("--points must be in 1..6 and --trials positive")
        report = verify.run_random(args.points, args.trials, seed=args.seed, suite=args.suite)
    else:
        if not (args.fixture or args.spec):
            raise InputError("verify needs --fixture, --spec or --random")
        S = inputs.load_fixture(args.fixture) if args.fixture else inputs.load_spec(args.spec)
        report = verify.run_suite(S, args.suite, subject=args.fixture or args.spec, seed=args.seed)
    if args.format == "json":
        text = export.dumps(report.to_dict(timing=False))
    else:
        bad = len(report.failures())
        lines = report.lines() + [f"{len(report.checks)} checks, {bad} failed"]
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return report.exit_code


COMMANDS = {
    "semigroup": cmd_semigroup,
    "cayley": cmd_cayley,
    "kr": cmd_kr,
    "chiswell": cmd_chiswell,
    "act": cmd_act,
    "semaphore": cmd_semaphore,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except KRError as e:
        print(f"krtree: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"krtree: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
