"""Command-line interface.

Subcommands::

    tau               invariants of given manifolds at given levels
    tref-table        closed-form table for the zero-framed trefoil surgery
    integrality-scan  algebraic-integrality check over a level range
    selftest          randomized formula-vs-oracle consistency drill

Output formats: human ``text`` (default), ``json`` (one object per line),
``csv``.  Exit codes: 0 all requested checks passed, 1 some check failed,
2 usage or domain error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import gcd

from .numtheory import mod_inverse
from .seifert import (
    SeifertData,
    b_counts_closed_form,
    linking_matrix,
    parse_manifold,
    parse_normalize,
    plumbing,
    signature_counts,
    top_invariants,
)
from .statesum import BudgetExceeded, xi_statesum, xi_statesum_brute
from .wrt import (
    TREFOIL_ZERO,
    HypothesisViolated,
    tau_prime,
    tau_rozansky_numeric,
    tref_closed_form,
    xi_closed_form,
)

ROZANSKY_DPS = 30
ROZANSKY_TOL_EXP = -20  # pass iff |difference| < 10**EXP at ROZANSKY_DPS digits
FAULT_NAMES = ("flip-oracle-sign",)


@dataclass
class OutputRecord:
    """One line of CLI output, format-independent."""

    manifold: str
    r: int
    t: int
    nu: int
    b_plus: int
    b_minus: int
    xi: list[list[int]]  # basis coefficients as [numerator, denominator] pairs
    xi_str: str
    tau_re: float
    tau_im: float
    xi_integral: bool
    theta_integral: bool
    checks: dict[str, bool | None] = field(default_factory=dict)

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "OutputRecord":
        return cls(**data)

    def failed(self) -> bool:
        return any(v is False for v in self.checks.values())


def _coeff_pairs(xi) -> list[list[int]]:
    return [[c.numerator, c.denominator] for c in xi.coefficients()]


def _tau_record(
    spec: str,
    r: int,
    t: int | None,
    want_oracle: bool,
    want_rozansky: bool,
    precision: int | None,
) -> OutputRecord:
    M = parse_manifold(spec)
    checks: dict[str, bool | None] = {}
    if t is None:
        result = tau_prime(M, r, precision=precision)
        xi = result.xi
        used_t = result.t
        tau = result.tau
        record_nu = result.nu
        bp, bm = result.b_plus, result.b_minus
        xi_int, theta_int = result.xi_is_integral, result.theta_is_integral
    else:
        xi = xi_closed_form(M, r, t)
        used_t = t % r
        tops = top_invariants(M)
        record_nu = tops.nu
        bp, bm, _ = b_counts_closed_form(M)
        if precision is None:
            import math

            tau = xi.to_complex()
            if record_nu:
                tau *= math.sin(math.pi / r) / math.sqrt(r)
        else:
            import mpmath

            with mpmath.workdps(precision):
                tau = xi.to_complex(precision=precision)
                if record_nu:
                    tau *= mpmath.sinpi(mpmath.mpf(1) / r) / mpmath.sqrt(r)
        xi_int = xi.is_algebraic_integer()
        theta_int = (xi / 2**record_nu).is_algebraic_integer()
    if want_oracle:
        checks["oracle"] = xi_statesum(M, r, used_t) == xi
    if want_rozansky:
        try:
            import mpmath

            with mpmath.workdps(ROZANSKY_DPS):
                a = tau_prime(M, r, precision=ROZANSKY_DPS).tau
                b = tau_rozansky_numeric(M, r, precision=ROZANSKY_DPS)
                checks["rozansky"] = bool(
                    abs(a - b) < mpmath.mpf(10) ** ROZANSKY_TOL_EXP
                )
        except HypothesisViolated:
            checks["rozansky"] = None
    return OutputRecord(
        manifold=str(M),
        r=r,
        t=used_t,
        nu=record_nu,
        b_plus=bp,
        b_minus=bm,
        xi=_coeff_pairs(xi),
        xi_str=str(xi),
        tau_re=float(tau.real),
        tau_im=float(tau.imag),
        xi_integral=xi_int,
        theta_integral=theta_int,
        checks=checks,
    )


def _tau_worker(task: tuple) -> dict:
    record = _tau_record(*task)
    return asdict(record)


def _parse_levels(args) -> list[int]:
    levels: set[int] = set()
    if args.r:
        for chunk in args.r.split(","):
            levels.add(int(chunk))
    if args.r_range:
        try:
            lo, hi = (int(x) for x in args.r_range.split(":"))
        except ValueError as exc:
            raise ValueError(f"bad --r-range {args.r_range!r}, expected A:B") from exc
        for r in range(lo, hi + 1):
            if r % 2 == 1:
                levels.add(r)
    if not levels:
        raise ValueError("no levels given: use --r and/or --r-range")
    for r in levels:
        if r < 3 or r % 2 == 0:
            raise ValueError(f"levels must be odd and >= 3, got {r}")
    return sorted(levels)


def _emit(records: list[OutputRecord], fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(rec.to_json_line() + "\n")
        return
    if fmt == "csv":
        check_names = sorted({name for rec in records for name in rec.checks})
        writer = csv.writer(out)
        writer.writerow(
            [
                "manifold",
                "r",
                "t",
                "nu",
                "b_plus",
                "b_minus",
                "tau_re",
                "tau_im",
                "xi_integral",
                "theta_integral",
                "xi",
            ]
            + [f"check_{name}" for name in check_names]
        )
        for rec in records:
            xi_field = ";".join(f"{n}/{d}" for n, d in rec.xi)
            row = [
                rec.manifold,
                rec.r,
                rec.t,
                rec.nu,
                rec.b_plus,
                rec.b_minus,
                repr(rec.tau_re),
                repr(rec.tau_im),
                rec.xi_integral,
                rec.theta_integral,
                xi_field,
            ]
            for name in check_names:
                value = rec.checks.get(name)
                row.append("skip" if value is None else ("pass" if value else "FAIL"))
            writer.writerow(row)
        return
    # text
    for rec in records:
        bits = [
            f"{rec.manifold} r={rec.r} t={rec.t}:",
            f"tau'={rec.tau_re:+.9f}{rec.tau_im:+.9f}i",
            f"nu={rec.nu}",
            f"b+={rec.b_plus}",
            f"b-={rec.b_minus}",
            f"xi[{rec.xi_str}]",
            f"integral(xi)={rec.xi_integral}",
            f"integral(theta)={rec.theta_integral}",
        ]
        for name, value in sorted(rec.checks.items()):
            state = "skip" if value is None else ("pass" if value else "FAIL")
            bits.append(f"{name}={state}")
        out.write(" ".join(bits) + "\n")


def _cmd_tau(args, out) -> int:
    levels = _parse_levels(args)
    tasks = [
        (spec, r, args.t, args.oracle, args.rozansky, args.precision)
        for spec in args.manifolds
        for r in levels
    ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = [
                OutputRecord.from_json_dict(d) for d in pool.map(_tau_worker, tasks)
            ]
    else:
        records = [_tau_record(*task) for task in tasks]
    _emit(records, args.format, out)
    return 1 if any(rec.failed() for rec in records) else 0


def _cmd_tref_table(args, out) -> int:
    levels = _parse_levels(args)
    records = []
    for r in levels:
        if r % 3 == 0:
            continue  # the closed form needs gcd(r, 3) = 1
        res = tref_closed_form(r, precision=args.precision)
        general = xi_closed_form(TREFOIL_ZERO, r, res.t)
        records.append(
            OutputRecord(
                manifold=str(TREFOIL_ZERO),
                r=r,
                t=res.t,
                nu=res.nu,
                b_plus=res.b_plus,
                b_minus=res.b_minus,
                xi=_coeff_pairs(res.xi),
                xi_str=str(res.xi),
                tau_re=float(res.tau.real),
                tau_im=float(res.tau.imag),
                xi_integral=res.xi_is_integral,
                theta_integral=res.theta_is_integral,
                checks={"closed_matches_general": res.xi == general},
            )
        )
    _emit(records, args.format, out)
    return 1 if any(rec.failed() for rec in records) else 0


def _cmd_integrality_scan(args, out) -> int:
    levels = _parse_levels(args)
    records = []
    for spec in args.manifolds:
        M = parse_manifold(spec)
        for r in levels:
            coprime_legs = sum(1 for p, _ in M.legs if gcd(p, r) == 1)
            hypothesis = coprime_legs >= M.n - 2
            res = tau_prime(M, r)
            required = res.theta_is_integral if res.nu else res.xi_is_integral
            records.append(
                OutputRecord(
                    manifold=str(M),
                    r=r,
                    t=res.t,
                    nu=res.nu,
                    b_plus=res.b_plus,
                    b_minus=res.b_minus,
                    xi=_coeff_pairs(res.xi),
                    xi_str=str(res.xi),
                    tau_re=float(res.tau.real),
                    tau_im=float(res.tau.imag),
                    xi_integral=res.xi_is_integral,
                    theta_integral=res.theta_is_integral,
                    checks={"integrality": required if hypothesis else None},
                )
            )
    _emit(records, args.format, out)
    return 1 if any(rec.failed() for rec in records) else 0


def _random_manifold(rng: random.Random) -> SeifertData:
    n = rng.randint(1, 3)
    legs = []
    for _ in range(n):
        while True:
            p = rng.randint(-7, 7)
            q = rng.randint(1, 6)
            if p != 0 and gcd(abs(p), q) == 1:
                break
        legs.append((p, q))
    return parse_normalize(legs)


def _cmd_selftest(args, out) -> int:
    rng = random.Random(args.seed)
    failures = 0
    ran = 0
    for trial in range(args.trials):
        M = _random_manifold(rng)
        r = rng.choice((3, 5, 7, 9))
        t = rng.choice([u for u in range(1, r) if gcd(u, r) == 1])
        xi = xi_closed_form(M, r, t)
        oracle = xi_statesum(M, r, t)
        if args.inject_fault == "flip-oracle-sign":
            oracle = -oracle
        ok = xi == oracle
        ran += 1
        if not ok:
            failures += 1
        out.write(f"selftest trial {trial}: {M} r={r} t={t} formula-vs-oracle "
                  f"{'ok' if ok else 'FAIL'}\n")
        u = rng.choice([u for u in range(1, r) if gcd(u, r) == 1])
        galois_ok = xi_closed_form(M, r, (t * u) % r) == xi.galois(u)
        ran += 1
        if not galois_ok:
            failures += 1
            out.write(f"selftest trial {trial}: galois twist by {u} FAIL\n")
        counts_ok = (
            signature_counts(linking_matrix(plumbing(M))) == b_counts_closed_form(M)
        )
        ran += 1
        if not counts_ok:
            failures += 1
            out.write(f"selftest trial {trial}: inertia closed form FAIL\n")
        total_l = sum(len(c) for c in plumbing(M).chains)
        if r ** (1 + total_l) <= args.budget:
            try:
                brute_ok = xi_statesum_brute(M, r, t, budget=args.budget) == xi
            except BudgetExceeded:
                brute_ok = True
            ran += 1
            if not brute_ok:
                failures += 1
                out.write(f"selftest trial {trial}: joint brute force FAIL\n")
    out.write(f"selftest: {ran} checks, {failures} failures\n")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seifertwrt",
        description="Exact SO(3) quantum invariants of Seifert fibered spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, manifolds: bool):
        if manifolds:
            p.add_argument("manifolds", nargs="+", metavar="MANIFOLD",
                           help='e.g. "X(2/1,3/1,5/1)"')
        p.add_argument("--r", help="comma-separated odd levels, e.g. 5,7,9")
        p.add_argument("--r-range", dest="r_range",
                       help="inclusive range A:B of odd levels")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--precision", type=int, default=None,
                       help="mpmath decimal digits for numerics (default float)")

    p_tau = sub.add_parser("tau", help="invariants of given manifolds")
    add_common(p_tau, manifolds=True)
    p_tau.add_argument("--t", type=int, default=None,
                       help="evaluation exponent (default: the inverse of 4 mod r)")
    p_tau.add_argument("--oracle", action="store_true",
                       help="cross-check against the plumbing state sum")
    p_tau.add_argument("--rozansky", action="store_true",
                       help="cross-check tau' against the numerical residue form")
    p_tau.add_argument("--jobs", type=int, default=1, help="worker processes")

    p_tref = sub.add_parser("tref-table",
                            help="closed-form trefoil-surgery table")
    add_common(p_tref, manifolds=False)

    p_scan = sub.add_parser("integrality-scan",
                            help="algebraic-integrality check over levels")
    add_common(p_scan, manifolds=True)

    p_self = sub.add_parser("selftest", help="randomized consistency drill")
    p_self.add_argument("--seed", type=int, default=0)
    p_self.add_argument("--trials", type=int, default=8)
    p_self.add_argument("--budget", type=int, default=20000,
                        help="joint brute-force term budget")
    p_self.add_argument("--inject-fault", choices=FAULT_NAMES, default=None,
                        help="deliberately break a route to prove detection")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "tau":
            return _cmd_tau(args, out)
        if args.command == "tref-table":
            return _cmd_tref_table(args, out)
        if args.command == "integrality-scan":
            return _cmd_integrality_scan(args, out)
        if args.command == "selftest":
            return _cmd_selftest(args, out)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
