"""Command-line front end.

Every command prints one JSON document on stdout::

    {"status": "ok" | "violation" | "error", "payload": {...}}

and writes diagnostics to stderr.  Exit codes: 0 ok, 2 violation (a
ProofViolation or a non-empty witness list), 1 usage or input errors.

Points are given with ``--point`` as a JSON file, an inline JSON object or a
G-presentation such as ``aab/0bg/ggg``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import checks
from .decompose import decompose
from .errors import BudgetExceeded, KimuraError, ProofViolation
from .group import parse_element
from .io import (
    canonical_to_json,
    decomposition_to_json,
    facet_to_json,
    parse_point,
    point_to_json,
    report_to_json,
)
from .oracle import (
    DEFAULT_BUDGET,
    enumerate_dilation_lattice_points,
    enumerate_vertex_sums,
    verify_normality,
)
from .polytope import OddSubset, enumerate_vertices, eval_S, facets, in_lattice, is_member
from .symmetry import canonicalize

EXIT = {"ok": 0, "error": 1, "violation": 2}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


class _Violation(Exception):
    def __init__(self, payload: Any, message: str):
        super().__init__(message)
        self.payload = payload


def _int_range(text: str) -> list[int]:
    """Parse ``3``, ``2-4`` or ``1,3,5``."""
    out: list[int] = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _k_for(x, k: int | None) -> int:
    ok, colsum = in_lattice(x)
    if colsum is None:
        sums = x.column_sums()
        if len(set(sums)) != 1:
            raise ValueError(f"column sums {sums} are not all equal")
        raise ValueError(f"{x} is not a lattice point: its elements sum to {x.group_sum().symbol}")
    return colsum if k is None else k


def cmd_gen_vertices(args) -> Any:
    if args.n < 1:
        raise ValueError("--n must be at least 1")
    return [str(f) for f in enumerate_vertices(args.n)]


def cmd_facets(args) -> Any:
    if args.n < 1:
        raise ValueError("--n must be at least 1")
    return [facet_to_json(f) for f in facets(args.n)]


def cmd_eval_s(args) -> Any:
    x = parse_point(args.point)
    A = OddSubset.of(x.n, *_int_range(args.A))
    g = parse_element(args.g)
    return {"point": point_to_json(x), "A": sorted(A.members), "g": g.symbol, "S": eval_S(x, A, g)}


def cmd_member(args) -> Any:
    x = parse_point(args.point)
    sums = x.column_sums()
    if len(set(sums)) != 1:
        raise ValueError(f"column sums {sums} are not all equal")
    k = sums[0] if args.k is None else args.k
    m = is_member(x, k)
    return {
        "point": point_to_json(x),
        "k": k,
        "member": m.member,
        "in_lattice": in_lattice(x)[0],
        "violated": facet_to_json(m.violated) if m.violated else None,
        "reason": m.reason,
    }


def cmd_canonicalize(args) -> Any:
    x = parse_point(args.point)
    k = _k_for(x, args.k)
    return canonical_to_json(canonicalize(x, k))


def cmd_decompose(args) -> Any:
    x = parse_point(args.point)
    k = _k_for(x, args.k)
    d = decompose(x, k)
    return {"point": point_to_json(x), **decomposition_to_json(d, trace=args.trace)}


def cmd_verify_normality(args) -> Any:
    reports = []
    bad = False
    for n in _int_range(args.n):
        for k in _int_range(args.k):
            rep = verify_normality(n, k, budget=args.budget, decompose_all=not args.no_decompose)
            print(f"n={n} k={k}: {rep.lattice_member_count} lattice points, "
                  f"{rep.sum_reachable_count} vertex sums", file=sys.stderr)
            reports.append(report_to_json(rep))
            bad |= bool(rep.witnesses)
    if bad:
        raise _Violation({"reports": reports}, "points of kP_n ∩ L_n that are not sums of k vertices")
    return {"reports": reports}


def cmd_enumerate(args) -> Any:
    if args.kind == "lattice":
        pts = enumerate_dilation_lattice_points(args.n, args.k, budget=args.budget)
    else:
        pts = sorted(enumerate_vertex_sums(args.n, args.k, budget=args.budget), key=lambda p: p.columns)
    return {"n": args.n, "k": args.k, "kind": args.kind, "count": len(pts),
            "points": [point_to_json(p) for p in pts]}


def cmd_selfcheck(args) -> Any:
    if args.full:
        runs = [
            checks.check_parity(seed=args.seed),
            checks.check_drop_rule(seed=args.seed),
            checks.check_column_bound(),
            checks.check_normal_form_off_facets(),
            checks.check_single_tight_column_facet(),
            checks.check_symmetry(seed=args.seed),
            checks.check_oracle_equivalence(),
            checks.check_negative_control(),
            checks.check_stress(seed=args.seed),
        ]
    else:
        runs = [
            checks.check_parity(samples=1_000, seed=args.seed),
            checks.check_drop_rule(samples=100, seed=args.seed),
            checks.check_column_bound(max_n=3, max_k=4),
            checks.check_normal_form_off_facets(ks=(3,)),
            checks.check_single_tight_column_facet(ks=(3,)),
            checks.check_symmetry(samples=200, seed=args.seed),
            checks.check_oracle_equivalence(),
            checks.check_negative_control(),
            checks.check_stress(samples=500, seed=args.seed),
        ]
    for r in runs:
        print(r.line(), file=sys.stderr)
    payload = [
        {"name": r.name, "passed": r.passed, "checked": r.checked,
         "failures": r.failures, "notes": r.notes, "seconds": round(r.seconds, 3)}
        for r in runs
    ]
    if not all(r.passed for r in runs):
        raise _Violation(payload, "some checks failed")
    return payload


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kimura3", description=__doc__.split("\n")[0])
    parser.add_argument("--json", action="store_true", help="compact single-line JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="compact single-line JSON output")
        p.set_defaults(func=fn)
        return p

    p = add("gen-vertices", cmd_gen_vertices, "list the flows of length n")
    p.add_argument("--n", type=int, required=True)

    p = add("facets", cmd_facets, "list the facet forms (g, A) for given n")
    p.add_argument("--n", type=int, required=True)

    p = add("eval-s", cmd_eval_s, "evaluate S_g(x, A)")
    p.add_argument("--point", required=True)
    p.add_argument("--A", required=True, help="odd subset of 1..n, e.g. 1,3,4")
    p.add_argument("--g", required=True, help="a, b or g")

    for name, fn, help in [
        ("member", cmd_member, "test membership in kP_n"),
        ("canonicalize", cmd_canonicalize, "normal form with the smallest multiset last"),
        ("decompose", cmd_decompose, "write x as a sum of k vertices"),
    ]:
        p = add(name, fn, help)
        p.add_argument("--point", required=True)
        p.add_argument("--k", type=int, default=None, help="defaults to the column sum")
        if name == "decompose":
            p.add_argument("--trace", action="store_true", help="include the per-step trace")

    p = add("verify-normality", cmd_verify_normality, "compare kP_n ∩ L_n with sums of k vertices")
    p.add_argument("--n", required=True, help="e.g. 4 or 1-4")
    p.add_argument("--k", required=True, help="e.g. 2-4")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--no-decompose", action="store_true",
                   help="skip running the main decomposition on every lattice point")

    p = add("enumerate", cmd_enumerate, "list lattice points of kP_n or sums of k vertices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kind", choices=("lattice", "sums"), default="lattice")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = add("selfcheck", cmd_selfcheck, "run the property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--full", action="store_true", help="use acceptance-size samples")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, dict[str, Any]]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT["error"], {"status": "error", "payload": {"message": str(exc)}, "_compact": False}
    try:
        result = {"status": "ok", "payload": args.func(args)}
    except _Violation as exc:
        print(f"violation: {exc}", file=sys.stderr)
        result = {"status": "violation", "payload": exc.payload}
    except ProofViolation as exc:
        print(f"proof violation: {exc}", file=sys.stderr)
        result = {"status": "violation", "payload": {"message": str(exc)}}
    except (KimuraError, BudgetExceeded, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        result = {"status": "error", "payload": {"message": str(exc)}}
    return EXIT[result["status"]], result | {"_compact": args.json}


def main(argv: list[str] | None = None) -> int:
    code, result = run(argv)
    compact = result.pop("_compact")
    print(json.dumps(result, indent=None if compact else 2, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
