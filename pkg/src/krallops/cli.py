"""Command-line verification harness.

Each subcommand builds the requested objects, runs the exact checks, and
prints either a human-readable summary or a JSON report.  Exit codes:
0 all checks pass, 1 a check failed, 2 usage or parameter error,
3 a construction hypothesis fails (with the offending index).

Reports are wrapped as {"schema": "krall-report/1", "report": {...},
"timing_ms": ...}; the report section is deterministic for identical
inputs, timing lives outside it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import moments
from .dops import catalog, verify_dop
from .errors import (
    ConstructionError,
    DegeneracyError,
    HypothesisError,
    KrallopsError,
    NoOrthogonalPolynomialsError,
    OperatorError,
)
from .families import FAMILY_PARAM_FIELDS, family_from_name, family_to_json
from .krall import (
    NAMED_KINDS,
    construction_to_json,
    named,
    verify_eigen,
)
from .polyops import as_fraction, fraction_to_str

SCHEMA = "krall-report/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3


def _worker_map(fn: Callable, items: Iterable) -> list:
    """Map with an optional thread pool; result order is input order either
    way, so reports do not depend on completion order."""
    items = list(items)
    workers = int(os.environ.get("KRALL_WORKERS", "1") or "1")
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


_PARAM_FLAGS = ("a", "c", "N", "alpha", "beta", "mass", "mass_raw")


def _add_param_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--a", type=_rational)
    parser.add_argument("--c", type=_rational)
    parser.add_argument("--N", type=_rational)
    parser.add_argument("--alpha", type=_rational)
    parser.add_argument("--beta", type=_rational)
    parser.add_argument("--mass", type=_rational)
    parser.add_argument("--mass-raw", dest="mass_raw", type=_rational)


def _collected_params(args: argparse.Namespace) -> dict:
    return {
        f: getattr(args, f) for f in _PARAM_FLAGS if getattr(args, f, None) is not None
    }


def _params_json(params: dict) -> dict:
    return {key: fraction_to_str(value) for key, value in sorted(params.items())}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="krallops",
        description="Exact verification of lowering-operator constructions"
        " of orthogonal polynomial sequences q_n = p_n + beta_n p_{n-1}.",
    )
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify-dops", help="check lowering-operator series == closed form")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_PARAM_FIELDS))
    p.add_argument("--nmax", type=int, default=10)
    _add_param_flags(p)

    p = sub.add_parser("krall", help="build a named construction and verify it")
    p.add_argument("--theorem", required=True, choices=NAMED_KINDS)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--nmax", type=int, default=10)
    p.add_argument("--ortho", action="store_true", help="also check orthogonality")
    p.add_argument("--band", action="store_true", help="also report recurrence bands")
    _add_param_flags(p)

    p = sub.add_parser("casorati", help="determinant identity for shifted Charlier rows")
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--nmax", type=int, default=10)

    p = sub.add_parser("ip-lemma", help="pairing ratio identities")
    p.add_argument("--kind", required=True, choices=moments.IP_LEMMA_KINDS)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--nmax", type=int, default=8)
    _add_param_flags(p)

    p = sub.add_parser("table", help="print gamma_n, beta_n, lambda_n, q_n")
    p.add_argument("--theorem", required=True, choices=NAMED_KINDS)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--nmax", type=int, default=10)
    _add_param_flags(p)

    p = sub.add_parser("dump-operator", help="serialize a construction to JSON")
    p.add_argument("--theorem", required=True, choices=NAMED_KINDS)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--nmax", type=int, default=10)
    _add_param_flags(p)

    # Accept --json after the subcommand too; SUPPRESS keeps a post-command
    # omission from clobbering a pre-command --json.
    for child in sub.choices.values():
        child.add_argument(
            "--json", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS
        )

    return parser


# -- subcommand bodies: each returns (report dict, human lines, ok flag) ---------


def _run_verify_dops(args) -> tuple[dict, list[str], bool]:
    fam = family_from_name(args.family, _collected_params(args))
    results = _worker_map(lambda d: verify_dop(d, args.nmax), catalog(fam))
    checks = []
    for ver in results:
        checks.append(
            {
                "dop": ver.dop_label,
                "ok": ver.ok,
                "failures": [c.n for c in ver.checks if not c.ok],
            }
        )
    ok = all(c["ok"] for c in checks)
    report = {
        "subcommand": "verify-dops",
        "family": family_to_json(fam),
        "nmax": args.nmax,
        "checks": checks,
        "ok": ok,
    }
    lines = [
        f"{c['dop']}: {'pass' if c['ok'] else 'FAIL at n=' + str(c['failures'])}"
        for c in checks
    ]
    lines.append(f"verify-dops {args.family}: {'pass' if ok else 'FAIL'} (n <= {args.nmax})")
    return report, lines, ok


def _gamma_hypothesis_json(kc, nmax: int) -> dict:
    """The enforced nonvanishing range, plus whether it extends one index
    lower (some parameter regimes guarantee the wider range)."""
    out: dict = {"gamma_nonzero_checked": [1, nmax + 1]}
    if kc.p2 is not None:
        out["gamma_nonzero_at_0"] = kc.p2(kc.family.eigenvalue(-1)) != 0
    else:
        out["gamma_nonzero_at_0"] = None
    return out


def _run_krall(args) -> tuple[dict, list[str], bool]:
    nc = named(args.theorem, _collected_params(args), k=args.k, nmax=args.nmax)
    kc = nc.construction
    nmax = args.nmax
    report: dict = {
        "subcommand": "krall",
        "theorem": args.theorem,
        "params": _params_json(_collected_params(args)),
        "k": args.k,
        "nmax": nmax,
        "label": kc.label,
        "kind": kc.kind,
        "gamma": [fraction_to_str(kc.gamma(n)) for n in range(1, nmax + 2)],
        "beta": [fraction_to_str(kc.beta(n)) for n in range(1, nmax + 1)],
        "measure": moments.measure_to_json(nc.functional),
        "notes": list(nc.notes),
        "hypothesis": _gamma_hypothesis_json(kc, nmax),
    }
    lines = [f"construction: {kc.label} ({kc.kind})"]
    ok = True

    if kc.operator is not None:
        flags = _worker_map(
            lambda n: kc.operator.apply(kc.q(n)) == kc.q(n) * kc.eigval(n),
            range(nmax + 1),
        )
        rep = verify_eigen(kc, 0)  # order and genre only; per-n done above
        eigen_ok = all(flags) and rep.order_ok and (rep.genre_ok is not False)
        report["eigen"] = {
            "ok": eigen_ok,
            "failures": [n for n, f in enumerate(flags) if not f],
            "order": rep.order,
            "genre": list(rep.genre) if rep.genre is not None else None,
            "eigenvalues": [fraction_to_str(kc.eigval(n)) for n in range(nmax + 1)],
        }
        ok = ok and eigen_ok
        shape = f"order {rep.order}"
        if rep.genre is not None:
            shape += f", genre {rep.genre}"
        lines.append(
            f"eigen-identity n <= {nmax}: {'pass' if eigen_ok else 'FAIL'} ({shape})"
        )
    else:
        report["eigen"] = None
        lines.append("no finite-order operator for these parameters (orthogonality only)")

    if args.ortho:
        upto = min(nmax, 8)
        gram = moments.gram_check(nc.functional, kc.q_sequence(upto))
        report["ortho"] = {
            "ok": gram.ok,
            "upto": upto,
            "diag_signs": gram.diagonal_signs,
        }
        ok = ok and gram.ok
        lines.append(f"orthogonality q_0..q_{upto}: {'pass' if gram.ok else 'FAIL'}")

    if args.band:
        from .krall import band_profile
        from .polyops import Polynomial

        fam_name = kc.family.name()
        k = kc.seed_degree if kc.seed_degree is not None else args.k
        if fam_name == "laguerre":
            mult = Polynomial.monomial(k + 1)
        elif fam_name == "jacobi":
            mult = Polynomial((1, 1)) ** (k + 1)
        elif fam_name == "charlier":
            mult = Polynomial.from_roots([-j for j in range(1, k + 2)])
        else:
            mult = None
        if mult is None:
            report["band"] = None
            lines.append("band profile: not defined for this family")
        else:
            prof = band_profile(kc, mult, nmax)
            lo = min(min(v) for v in prof.values())
            hi = max(max(v) for v in prof.values())
            report["band"] = {
                "multiplier": mult.to_json(),
                "band": [lo, hi],
                "within_pm_kplus1": lo >= -k - 1 and hi <= k + 1,
            }
            lines.append(f"recurrence band for deg-{k + 1} multiplier: [{lo}, {hi}]")

    report["ok"] = ok
    lines.append(f"krall {args.theorem}: {'pass' if ok else 'FAIL'}")
    return report, lines, ok


def _run_casorati(args) -> tuple[dict, list[str], bool]:
    def one(n: int) -> dict:
        det, closed = moments.casorati_check(args.a, args.k, n)
        return {
            "n": n,
            "det": fraction_to_str(det),
            "closed": fraction_to_str(closed),
            "ok": det == closed,
        }

    checks = _worker_map(one, range(1, args.nmax + 1))
    ok = all(c["ok"] for c in checks)
    report = {
        "subcommand": "casorati",
        "a": fraction_to_str(args.a),
        "k": args.k,
        "nmax": args.nmax,
        "checks": checks,
        "ok": ok,
    }
    lines = [
        f"n={c['n']}: det={c['det']} closed={c['closed']} {'ok' if c['ok'] else 'MISMATCH'}"
        for c in checks
    ]
    lines.append(f"casorati a={fraction_to_str(args.a)} k={args.k}: {'pass' if ok else 'FAIL'}")
    return report, lines, ok


def _run_ip_lemma(args) -> tuple[dict, list[str], bool]:
    params = _collected_params(args)
    rep = moments.ip_lemma_check(args.kind, params, args.k, args.nmax)
    checks = [
        {
            "n": c.n,
            "lhs": fraction_to_str(c.lhs),
            "rhs": fraction_to_str(c.rhs),
            "ok": c.ok,
        }
        for c in rep.checks
    ]
    report = {
        "subcommand": "ip-lemma",
        "kind": args.kind,
        "params": _params_json(params),
        "k": args.k,
        "nmax": args.nmax,
        "checks": checks,
        "ok": rep.ok,
    }
    lines = [
        f"n={c['n']}: {c['lhs']} vs {c['rhs']} {'ok' if c['ok'] else 'MISMATCH'}"
        for c in checks
    ]
    lines.append(f"ip-lemma {args.kind}: {'pass' if rep.ok else 'FAIL'}")
    return report, lines, rep.ok


def _run_table(args) -> tuple[dict, list[str], bool]:
    nc = named(args.theorem, _collected_params(args), k=args.k, nmax=args.nmax)
    kc = nc.construction
    rows = []
    for n in range(args.nmax + 1):
        rows.append(
            {
                "n": n,
                "gamma": fraction_to_str(kc.gamma(n)) if n >= 1 else None,
                "beta": fraction_to_str(kc.beta(n)) if n >= 1 else None,
                "lambda": fraction_to_str(kc.eigval(n)) if kc.operator else None,
                "q": str(kc.q(n)),
            }
        )
    report = {
        "subcommand": "table",
        "theorem": args.theorem,
        "params": _params_json(_collected_params(args)),
        "k": args.k,
        "nmax": args.nmax,
        "label": kc.label,
        "rows": rows,
        "ok": True,
    }
    lines = [f"{kc.label}", f"{'n':>3} {'gamma_n':>14} {'beta_n':>14} {'lambda_n':>14}  q_n"]
    for r in rows:
        lines.append(
            f"{r['n']:>3} {r['gamma'] or '-':>14} {r['beta'] or '-':>14}"
            f" {r['lambda'] or '-':>14}  {r['q']}"
        )
    return report, lines, True


def _run_dump_operator(args) -> tuple[dict, list[str], bool]:
    nc = named(args.theorem, _collected_params(args), k=args.k, nmax=args.nmax)
    doc = construction_to_json(nc.construction)
    doc["measure"] = moments.measure_to_json(nc.functional)
    report = {
        "subcommand": "dump-operator",
        "theorem": args.theorem,
        "params": _params_json(_collected_params(args)),
        "k": args.k,
        "nmax": args.nmax,
        "construction": doc,
        "ok": True,
    }
    return report, [json.dumps(doc, indent=2, sort_keys=True)], True


_RUNNERS = {
    "verify-dops": _run_verify_dops,
    "krall": _run_krall,
    "casorati": _run_casorati,
    "ip-lemma": _run_ip_lemma,
    "table": _run_table,
    "dump-operator": _run_dump_operator,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0

    start = time.monotonic()
    try:
        report, lines, ok = _RUNNERS[args.subcommand](args)
    except (HypothesisError, DegeneracyError, NoOrthogonalPolynomialsError) as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ConstructionError, OperatorError, KrallopsError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_ms = int((time.monotonic() - start) * 1000)

    if args.json:
        print(
            json.dumps(
                {"schema": SCHEMA, "report": report, "timing_ms": elapsed_ms},
                sort_keys=True,
            )
        )
    else:
        for line in lines:
            print(line)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
