"""Command-line entry point: ``normlift <subcommand> ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
3 a local integral failed to converge, 4 bad or missing input data.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .archimedean import ArchimedeanParams, admissible_grid, check_archimedean_chain
from .assembly import AssemblySpec, ingest_hecke_tsv, parse_places, rhs_conjecture, s_independence_check
from .bookkeeping import CaseTag, check_division_identity, derive_conversion_constant, exponent_a, exponent_b, r_zero_norm_exponent
from .cyclotomic import CyclotomicNumber, is_prime
from .errors import ConvergenceError, DataError, DomainError
from .local_factors import SatakeGL2, SatakeSp, script_l_p
from .report import Case, Report
from .scalars import to_mpc
from .spherical import truncated_local_integral

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_DATA = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _chain_case(params: tuple[int, int, int]) -> Case:
    t0 = time.perf_counter()
    rep = check_archimedean_chain(ArchimedeanParams(*params))
    return Case(f"k={params[0]},n={params[1]},r={params[2]}", "pass" if rep.holds else "fail",
                {"lhs": str(rep.lhs), "rhs": str(rep.rhs)}, time.perf_counter() - t0)


def cmd_verify_archimedean(args) -> Report:
    if args.grid:
        kmax, nmax, rmax = args.grid
        grid = [(p.k, p.n, p.r) for p in admissible_grid(rmax, nmax, kmax)]
        params = {"grid": {"k_max": kmax, "n_max": nmax, "r_max": rmax}}
    else:
        if None in (args.k, args.n, args.r):
            raise UsageError("give --k, --n and --r, or --grid KMAX NMAX RMAX")
        try:
            ArchimedeanParams(args.k, args.n, args.r).require_chain()
        except DomainError as exc:
            raise UsageError(str(exc)) from None
        grid = [(args.k, args.n, args.r)]
        params = {"k": args.k, "n": args.n, "r": args.r}
    report = Report("verify-archimedean", params, precision={"mode": "exact"})
    if args.jobs > 1 and len(grid) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            cases = list(pool.map(_chain_case, grid))
    else:
        cases = [_chain_case(g) for g in grid]
    for c in cases:
        report.add(c)
    return report


def _angle(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"angle must be a rational a/N, got {text!r}") from None


def cmd_verify_padic(args) -> Report:
    if args.r != 1:
        raise UsageError(f"r = {args.r}: the local integral is not implemented in v1 for r != 1")
    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    a_angle = _angle(args.alpha_angle)
    b_angles = [_angle(b) for b in args.beta_angle]
    if len(b_angles) != args.r:
        raise UsageError(f"need {args.r} beta angle(s)")
    M = args.truncation if args.truncation is not None else (60 if args.n == 0 else 40)
    exact = args.beta_modulus == 1
    params = {"p": args.p, "n": args.n, "r": args.r, "alpha_angle": str(a_angle),
              "beta_angle": [str(b) for b in b_angles], "truncation": M, "tol": args.tol}
    report = Report("verify-padic", params,
                    precision={"mode": "exact-cyclotomic" if exact else "float", "dps": args.dps})
    t0 = time.perf_counter()
    with mpmath.workdps(args.dps):
        alpha = SatakeGL2.from_angle(a_angle)
        if exact:
            beta = SatakeSp.from_angles(*b_angles)
        else:
            params["beta_modulus"] = args.beta_modulus
            beta = SatakeSp(tuple(mpmath.mpf(args.beta_modulus) * to_mpc(CyclotomicNumber.root_of_unity(b))
                                  for b in b_angles), tempered=False)
        integral = truncated_local_integral(args.n, args.r, alpha.alpha, beta, args.p, M)
        target = to_mpc(script_l_p(args.n, args.r, alpha.alpha, beta, args.p))
        rel = float(abs(integral.value - target) / abs(target))
    ok = rel <= args.tol and integral.tail < args.tol / 10
    report.add(Case(f"p={args.p},n={args.n},r={args.r}", "pass" if ok else "fail", {
        "integral": mpmath.nstr(integral.value, 20),
        "script_L_p": mpmath.nstr(target, 20),
        "relative_deviation": rel,
        "tail_estimate": integral.tail,
        "decay_ratio": integral.ratio,
    }, time.perf_counter() - t0))
    return report


def cmd_check_exponents(args) -> Report:
    report = Report("check-exponents", {"grid": {"k_max": 12, "n_max": 3, "r_max": 4}},
                    precision={"mode": "exact"})
    for case in CaseTag:
        chk = check_division_identity(case)
        status = "pass" if chk.holds else "fail"
        report.add(Case(f"a-kappa=b[{case.value}]", status, {
            "a_minus_kappa": repr(chk.difference), "b": repr(chk.expected),
            "informational": chk.informational}))
    mismatches = 0
    for k in range(1, 13):
        for n in range(0, 4):
            for r in range(0, 5):
                if n + r == 0:
                    continue
                case = CaseTag.of(n, r)
                a = exponent_a(case)(k, n, r)
                kappa = r_zero_norm_exponent()(k, n, r)
                if case is CaseTag.R_ZERO:
                    mismatches += a - kappa != 0
                else:
                    mismatches += a - kappa != exponent_b(n > 0)(k, n, r)
    report.add(Case("grid-substitution", "pass" if mismatches == 0 else "fail", {"mismatches": mismatches}))
    derivations = [derive_conversion_constant(True), derive_conversion_constant(False)]
    same = derivations[0].discrepancy == derivations[1].discrepancy
    report.add(Case("conversion-constant", "finding" if same else "fail", {
        "n>0": derivations[0].summary(),
        "n=0": derivations[1].summary(),
        "case_independent": same,
        "discrepancy_exponent": derivations[0].discrepancy,
    }))
    return report


def cmd_assemble(args) -> Report:
    f = ingest_hecke_tsv(args.hecke_f)
    g = ingest_hecke_tsv(args.hecke_g)
    sets = [parse_places(s) for s in (args.set or ["inf"])]
    sets.sort(key=len)
    try:
        spec = AssemblySpec(args.k, args.n, args.r, sets[-1], f, g,
                            truncation=args.truncation, precision=args.dps)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    params = {"k": args.k, "n": args.n, "r": args.r, "hecke_f": f.label, "hecke_g": g.label,
              "sets": [sorted(map(str, s)) for s in sets]}
    report = Report("assemble", params, precision={"mode": "float", "dps": args.dps})
    for s in sets:
        t0 = time.perf_counter()
        res = rhs_conjecture(spec.with_places(s), numeric_global=args.euler_bound is not None,
                             euler_bound=args.euler_bound)
        report.add(Case("rhs[" + ",".join(map(str, res.places)) + "]", "pass", res.as_dict(),
                        time.perf_counter() - t0))
    for small, large in zip(sets, sets[1:]):
        t0 = time.perf_counter()
        chk = s_independence_check(spec, small, large, tol=args.tol)
        report.add(Case(f"S-independence[{len(small)}->{len(large)}]", "pass" if chk.holds else "fail",
                        {"deviation": chk.deviation, "tol": args.tol}, time.perf_counter() - t0))
    d1, d0 = derive_conversion_constant(True), derive_conversion_constant(False)
    report.add(Case("conversion-constant", "finding", {"n>0": d1.summary(), "n=0": d0.summary()}))
    return report


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normlift", description="Verify local identities behind the norm formula for Miyawaki lifts.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def output_opts(p):
        p.add_argument("--format", choices=("json", "tsv", "text"), default="text")
        p.add_argument("--out", type=Path, help="write the report here instead of stdout")

    p = sub.add_parser("verify-archimedean", help="exact check of the real-place identity")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--grid", type=int, nargs=3, metavar=("KMAX", "NMAX", "RMAX"))
    p.add_argument("--jobs", type=int, default=1)
    output_opts(p)
    p.set_defaults(func=cmd_verify_archimedean)

    p = sub.add_parser("verify-padic", help="truncated local integral against the local L-value")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--alpha-angle", required=True, help="alpha = exp(2 pi i a/N)")
    p.add_argument("--beta-angle", required=True, action="append", help="repeat once per beta")
    p.add_argument("--beta-modulus", type=float, default=1.0,
                   help="scale beta off the unit circle (floating mode); only for exercising the convergence guard")
    p.add_argument("--truncation", type=int)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--dps", type=int, default=30)
    output_opts(p)
    p.set_defaults(func=cmd_verify_padic)

    p = sub.add_parser("check-exponents", help="power-of-two identities and the constant derivation")
    output_opts(p)
    p.set_defaults(func=cmd_check_exponents)

    p = sub.add_parser("assemble", help="assemble the S-truncated right-hand side from Hecke data")
    p.add_argument("--hecke-f", required=True, type=Path)
    p.add_argument("--hecke-g", required=True, type=Path)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--set", action="append", help="comma-separated places, e.g. inf,2,3; repeatable")
    p.add_argument("--truncation", type=int)
    p.add_argument("--euler-bound", type=int, help="also evaluate the global L by a partial Euler product (n >= 1)")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--dps", type=int, default=30)
    output_opts(p)
    p.set_defaults(func=cmd_assemble)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (UsageError, NotImplementedError) as exc:
        print(f"normlift: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"normlift: convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except DataError as exc:
        print(f"normlift: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DomainError as exc:
        print(f"normlift: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.render(args.format)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_PASS if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
