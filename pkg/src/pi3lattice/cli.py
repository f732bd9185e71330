"""Command-line front end.

Exit status is 0 on success, 1 when a certificate fails (or the input is
rejected) and 2 when coset enumeration runs out of room.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .analysis import AnalysisReport, ComparisonReport, analyze, compare
from .certificates import FAIL
from .groups import DEFAULT_MAX_COSETS, EnumerationError, GroupMismatchError
from .presentation import PresentationError

EXIT_OK = 0
EXIT_CERTIFICATE = 1
EXIT_RESOURCES = 2


def _dump(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def format_report(r: AnalysisReport) -> str:
    G = r.group
    d = r.involutions
    lines = [
        f"input       {r.source}",
        f"group       order {G.order}, cells {r.presentation.cell_counts}",
        f"involutions p = {d.p}, T = {{{', '.join(G.name(t) for t in d.T)}}}",
        f"pi2         rank {r.pi2.rank}, character {list(r.pi2.character().values)}",
        f"pi3         rank {r.pi3.rank}, character {list(r.pi3.lattice.character().values)}",
        f"rational    {'free of rank ' + str(r.multiplicity) if r.rationally_free else 'not free'} over QG",
    ]
    for name, c in r.certificates.items():
        extra = f"  [{c.witness}]" if c.witness is not None else ""
        lines.append(f"  {c.status:<14} {name}: {c.claim}{extra}")
    return "\n".join(lines)


def format_comparison(c: ComparisonReport) -> str:
    s = c.comparison
    e = s.exponents
    lines = [
        f"left        {c.left.source}  (pi2 rank {e.k})",
        f"right       {c.right.source}  (pi2 rank {e.k_prime})",
        f"exponents   a = {e.a}, b = {e.b}, q = {e.exponent_q}, r = {e.exponent_r}",
        f"ranks       {s.rank_lhs} vs {s.rank_rhs}",
        f"characters  {list(s.character_lhs.values)} vs {list(s.character_rhs.values)}",
        f"  {s.certificate.status:<14} {s.certificate.claim}",
    ]
    return "\n".join(lines)


def _check_fixture(name: str, max_cosets: int) -> list[str]:
    """Differences between a shipped fixture's report and its expected values."""
    exp = fixtures.expected(name)
    r = analyze(fixtures.data_text(exp["presentation"]), exp["presentation"], max_cosets)
    got = {
        "order": r.group.order,
        "cell_counts": list(r.presentation.cell_counts),
        "rank_pi2": r.pi2.rank,
        "character_pi2": list(r.pi2.character().values),
        "rank_pi3": r.pi3.rank,
        "character_pi3": list(r.pi3.lattice.character().values),
        "p": r.involutions.p,
        "T": list(r.involutions.T),
        "rationally_free": r.rationally_free,
        "multiplicity": r.multiplicity,
        "ig_star_square": r.certificates["ig_star_square"].status,
    }
    bad = [f"{k}: expected {exp[k]!r}, got {got[k]!r}" for k in got if exp[k] != got[k]]
    bad += [f"certificate {k} failed" for k in r.failed]
    return bad


def cmd_fixtures(args) -> int:
    status = EXIT_OK
    for name in fixtures.shipped_fixtures():
        bad = _check_fixture(name, args.max_cosets)
        print(f"{'PASS' if not bad else 'FAIL'} fixture {name}")
        for line in bad:
            print(f"    {line}")
        if bad:
            status = EXIT_CERTIFICATE
    return status


def cmd_analyze(args) -> int:
    if args.fixtures:
        status = cmd_fixtures(args)
        if args.path is None:
            return status
    elif args.path is None:
        print("error: analyze needs a presentation file or --fixtures", file=sys.stderr)
        return EXIT_CERTIFICATE
    else:
        status = EXIT_OK
    r = analyze(_read(args.path), args.path, args.max_cosets, ig_square=not args.skip_prop53)
    print(_dump(r.to_dict()) if args.json else format_report(r))
    if r.failed:
        print(f"certificate failure: {', '.join(r.failed)}", file=sys.stderr)
        return EXIT_CERTIFICATE
    return status


def cmd_compare(args) -> int:
    c = compare(_read(args.path1), _read(args.path2), args.a, args.b,
                (args.path1, args.path2), args.max_cosets)
    print(_dump(c.to_dict()) if args.json else format_comparison(c))
    return EXIT_OK if c.passed else EXIT_CERTIFICATE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pi3lattice",
        description="Second and third homotopy modules of presentation 2-complexes of finite groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", help="run the pipeline on one presentation file")
    an.add_argument("path", nargs="?", help="presentation file")
    an.add_argument("--json", action="store_true", help="emit a JSON report")
    an.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    an.add_argument("--skip-prop53", action="store_true", help="skip the S^2(IG*) certificate")
    an.add_argument("--fixtures", action="store_true", help="run the built-in C3 and Q8 regressions")
    an.set_defaults(func=cmd_analyze)

    cp = sub.add_parser("compare", help="stable comparison of pi3 for two presentations")
    cp.add_argument("path1")
    cp.add_argument("path2")
    cp.add_argument("--a", type=int, default=None, help="free summands added on the left")
    cp.add_argument("--b", type=int, default=None, help="free summands added on the right")
    cp.add_argument("--json", action="store_true")
    cp.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    cp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationError as exc:
        print(f"resource exhausted: {exc}", file=sys.stderr)
        return EXIT_RESOURCES
    except (PresentationError, GroupMismatchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE


if __name__ == "__main__":
    sys.exit(main())
