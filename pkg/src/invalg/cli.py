"""Command-line front end: build algebras, check identities, analyze ideal
structure, and run the claim verification suite.

Exit codes for `check`: 0 when the identity holds (or holds on all samples),
1 when it fails, 2 when the substitution space exceeds the budget.
"""

import argparse
import os
import sys

from .checker import (BudgetExceeded, DEFAULT_BUDGET, DEFAULT_TRIALS,
                      check_identity, render_report)
from .claims import (BadSpec, build_algebra, render_results, run_claims,
                     select_claims, wrap_for_terms)
from .core_algebra import FiniteSemigroup, LimitExceeded, to_cayley_text
from .order_semiring import AiSemiring, to_semiring_text
from .structure import render_analysis
from .terms import parse_term


def _default_workers() -> int:
    cap = os.environ.get("WORKBENCH_THREADS")
    workers = min(os.cpu_count() or 1, 8)
    if cap is not None:
        workers = min(workers, max(1, int(cap)))
    return max(1, workers)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invalg",
        description="finite inverse-semigroup and semiring workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build an algebra and print its shape")
    p_build.add_argument("spec", help="builder spec, e.g. rook:2 or brandt:2:2")
    p_build.add_argument("-o", "--output", help="write the table text here")

    p_check = sub.add_parser("check", help="check an identity lhs ~ rhs")
    p_check.add_argument("spec", help="builder spec or file:<path>")
    p_check.add_argument("lhs")
    p_check.add_argument("rhs")
    p_check.add_argument("--mode", choices=("exhaustive", "sampled"),
                         default="exhaustive")
    p_check.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_check.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p_check.add_argument("--seed", type=int, default=None)
    p_check.add_argument("--format", choices=("text", "machine"), default="text")

    p_an = sub.add_parser("analyze", help="print the principal series report")
    p_an.add_argument("spec")

    p_vp = sub.add_parser("verify-paper", help="run the claim registry")
    p_vp.add_argument("pattern", nargs="?", default=None,
                      help="claim id glob, e.g. prop2.6*")
    p_vp.add_argument("--format", choices=("text", "machine"), default="text")
    return parser


def cmd_build(args) -> int:
    algebra = build_algebra(args.spec)
    if isinstance(algebra, AiSemiring):
        print(f"size={algebra.size} kind=ai-semiring")
        text = to_semiring_text(algebra)
    else:
        flags = [
            f"size={algebra.size}",
            f"inverse={'yes' if algebra.inv is not None else 'no'}",
            f"zero={'none' if algebra.zero is None else algebra.zero}",
            f"identity={'none' if algebra.identity is None else algebra.identity}",
        ]
        print(" ".join(flags))
        text = to_cayley_text(algebra)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
        print(f"wrote {args.output}")
    return 0


def cmd_check(args) -> int:
    algebra = build_algebra(args.spec)
    lhs = parse_term(args.lhs)
    rhs = parse_term(args.rhs)
    algebra = wrap_for_terms(algebra, lhs, rhs)
    try:
        report = check_identity(algebra, lhs, rhs, mode=args.mode,
                                budget=args.budget, trials=args.trials,
                                seed=args.seed, workers=_default_workers())
    except BudgetExceeded as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return 2
    if args.format == "machine":
        print(report.machine_line())
    else:
        print(render_report(report, algebra, lhs, rhs), end="")
    return 0 if report.verdict in ("holds", "holds-sampled") else 1


def cmd_analyze(args) -> int:
    algebra = build_algebra(args.spec)
    if not isinstance(algebra, FiniteSemigroup):
        print("analyze needs a semigroup; pass the multiplicative reduct",
              file=sys.stderr)
        return 2
    print(render_analysis(algebra), end="")
    return 0


def cmd_verify_paper(args) -> int:
    claims = select_claims(args.pattern)
    if not claims:
        print(f"no claims match {args.pattern!r}", file=sys.stderr)
        return 2
    results = run_claims(args.pattern, workers=_default_workers())
    if args.format == "machine":
        for r in results:
            status = "pass" if r.ok else "fail"
            print(f"CLAIM {r.claim_id} {status} CHECKED {r.checked}")
    else:
        print(render_results(results), end="")
    return 0 if all(r.ok for r in results) else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.mode == "sampled" and args.seed is None:
        parser.error("--mode sampled requires --seed")
    try:
        if args.command == "build":
            return cmd_build(args)
        if args.command == "check":
            return cmd_check(args)
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "verify-paper":
            return cmd_verify_paper(args)
    except (BadSpec, LimitExceeded) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
