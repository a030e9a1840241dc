"""Command-line front end.

Subcommands
-----------
compute     solve the Z_3 system for (p, q) and print r, (x, y), rho0
sigma       solve the lambda-biased system and print sigma
verify      solver vs brute-force oracle, side by side, with pass/fail
certify     exact resultant certification for rational exponents (JSON artifact)
sweep       emit figure-style CSV/JSON data files
identities  batch identity suite (duality, cross-ratio symmetry, ...)

Exit codes (stable contract): 0 success, 2 input error, 3 solver failure,
4 verification failure, 5 capacity exceeded, 6 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__, core, exact, oracle, sweeps
from .core import ExponentPair
from .errors import (BracketError, CapacityError, CertificationError,
                     HypercError, InputDomainError, SolverError,
                     VerificationError)
from .solver import solve_biased, solve_z3, solve_z3_direct

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_VERIFY = 4
EXIT_CAPACITY = 5
EXIT_IO = 6


@dataclass
class RunReport:
    """Echo of one command: inputs, outputs, residuals, method, timing."""

    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    method: str = ""
    wall_time_s: Optional[float] = None
    version: str = __version__

    def render(self) -> str:
        lines = [f"hyperc {self.command}  v{self.version}"]
        lines.append("  inputs:    " + "  ".join(f"{k}={v}" for k, v in self.inputs.items()))
        if self.method:
            lines.append(f"  method:    {self.method}")
        for k, v in self.outputs.items():
            lines.append(f"  {k:<10} {v!r}" if not isinstance(v, str) else f"  {k:<10} {v}")
        if self.residuals:
            lines.append("  residuals: " + "  ".join(f"{k}={v:.3e}" for k, v in self.residuals.items()))
        if self.wall_time_s is not None:
            lines.append(f"  wall time: {self.wall_time_s:.3f} s")
        return "\n".join(lines)


def _parse_exponent(text: str) -> float:
    """Accept decimals and rationals 'm/n'."""
    text = text.strip()
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputDomainError(f"cannot parse exponent {text!r}: {e}") from None


def _parse_rational(text: str) -> Fraction:
    """Rationals only ('m/n' or an integer literal); decimals are rejected
    because certification needs the exact rational form."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise InputDomainError(
            f"certification needs a rational exponent like 5/2, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InputDomainError(f"cannot parse rational {text!r}: {e}") from None


def _write_text_atomic(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hyperc-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _format_rows(header, rows, fmt: str) -> str:
    if fmt == "csv":
        out = [",".join(header)]
        for row in rows:
            out.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
        return "\n".join(out) + "\n"
    objs = [dict(zip(header, row)) for row in rows]
    return json.dumps(objs, indent=None, separators=(",", ":")) + "\n"


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_compute(args) -> int:
    t0 = time.perf_counter()
    pair = ExponentPair(_parse_exponent(args.p), _parse_exponent(args.q))
    sol = solve_z3(pair, tol=args.tol)
    cross = solve_z3_direct(pair, sol, tol=args.tol)
    e1, e2 = core.residual_z3(pair, (sol.x, sol.y))
    rep = RunReport(
        command="compute",
        inputs={"p": args.p, "q": args.q, "tol": args.tol},
        method=sol.method,
        outputs={
            "r": sol.r, "x": sol.x, "y": sol.y, "rho0": sol.rho0,
            "newton_crosscheck_gap": abs(cross.r - sol.r),
        },
        residuals={"eq1": abs(e1), "eq2": abs(e2)},
        wall_time_s=time.perf_counter() - t0,
    )
    if sol.method == "closed_form_pp_star":
        rep.outputs["note"] = "exact: x = 2^(-2/p), y = 2^(-2/p*)"
    print(rep.render())
    return EXIT_OK


def cmd_sigma(args) -> int:
    t0 = time.perf_counter()
    lam = _parse_exponent(getattr(args, "lam"))
    pair = ExponentPair(_parse_exponent(args.p), _parse_exponent(args.q))
    if not 0.0 < lam <= 0.5:
        raise InputDomainError(f"need 0 < lambda <= 1/2, got {lam}")
    if lam == 0.5:
        rep = RunReport(
            command="sigma",
            inputs={"lambda": getattr(args, "lam"), "p": args.p, "q": args.q},
            method="closed_form_z2",
            outputs={"sigma": core.z2_constant(pair),
                     "note": "lambda = 1/2 is the symmetric two-point constant"},
            wall_time_s=time.perf_counter() - t0,
        )
        print(rep.render())
        return EXIT_OK
    sol = solve_biased(lam, pair, tol=args.tol)
    e1, e2 = core.residual_biased(lam, pair, (sol.x, sol.y))
    rep = RunReport(
        command="sigma",
        inputs={"lambda": getattr(args, "lam"), "p": args.p, "q": args.q, "tol": args.tol},
        method=sol.method,
        outputs={"sigma": sol.sigma, "x": sol.x, "y": sol.y},
        residuals={"eq1": abs(e1), "eq2": abs(e2)},
        wall_time_s=time.perf_counter() - t0,
    )
    if abs(pair.q - pair.p_star) <= 1e-12 * max(1.0, pair.q):
        rep.outputs["sinh_formula_gap"] = abs(sol.sigma - core.sigma_pp_star(lam, pair.p))
    print(rep.render())
    return EXIT_OK


_BUDGETS = {
    "fast": (oracle.GridSpec(1024, 128, 2), 1e-5),
    "default": (oracle.GridSpec(4096, 256, 3), 1e-6),
    "thorough": (oracle.GridSpec(16384, 512, 3), 1e-7),
}


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    grid, tol = _BUDGETS[args.budget]
    pair = ExponentPair(_parse_exponent(args.p), _parse_exponent(args.q))
    sol = solve_z3(pair)
    est = oracle.estimate_r(pair, tol=tol, grid=grid)
    gap = abs(est - sol.r)
    rep = RunReport(
        command="verify",
        inputs={"p": args.p, "q": args.q, "budget": args.budget},
        outputs={"solver_r": sol.r, "oracle_r": est, "gap": gap},
        wall_time_s=None,
    )
    ok = gap < 1e-4
    oracle.check_extremizer(pair, sol, tol=1e-8)
    rep.outputs["extremizer"] = "pass"
    tri_min, tri_arg = oracle.check_triangle(pair, sol.r, grid=oracle.GridSpec(
        max(64, grid.n_rho // 8), max(64, grid.n_theta), 2))
    rep.outputs["triangle_min"] = tri_min
    if oracle.triangle_reduction_applies(pair):
        ok = ok and tri_min >= -1e-9
        rep.outputs["triangle"] = "pass" if tri_min >= -1e-9 else "FAIL"
    else:
        rep.outputs["triangle"] = f"report-only (min at {tri_arg})"
    if getattr(args, "lam", None) is not None:
        lam = _parse_exponent(args.lam)
        bsol = solve_biased(lam, pair)
        best = oracle.estimate_sigma(lam, pair, tol=tol, grid=grid)
        bgap = abs(best - bsol.sigma)
        rep.outputs.update({"solver_sigma": bsol.sigma, "oracle_sigma": best,
                            "sigma_gap": bgap})
        ok = ok and bgap < 2e-4
    rep.outputs["verdict"] = "pass" if ok else "FAIL"
    rep.wall_time_s = time.perf_counter() - t0
    print(rep.render())
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_certify(args) -> int:
    t0 = time.perf_counter()
    p = _parse_rational(args.p)
    q = _parse_rational(args.q)
    re = exact.RationalExponents.from_exponents(p, q)
    pair = ExponentPair(float(p), float(q))
    sol = solve_z3(pair, tol=1e-12)
    cert = exact.certify(re, sol.r)
    out_path = args.out or f"certificate_{re.m}_{re.n}_{re.j}_{re.k}.json"
    _write_text_atomic(out_path, cert.to_json() + "\n")
    rep = RunReport(
        command="certify",
        inputs={"p": args.p, "q": args.q},
        outputs={
            "r": sol.r,
            "certificate_degree": cert.poly.degree,
            "abs_value": cert.abs_value,
            "bound": cert.bound,
            "written": out_path,
        },
        wall_time_s=None,
    )
    if (p, q) == (Fraction(3), Fraction(6)):
        ok20 = exact.verify_root(exact.paper_p20(), sol.r, 1e-6)
        rep.outputs["degree20_reference_root_test"] = "pass" if ok20 else "FAIL"
        if not ok20:
            rep.wall_time_s = time.perf_counter() - t0
            print(rep.render())
            return EXIT_VERIFY
    rep.wall_time_s = time.perf_counter() - t0
    print(rep.render())
    return EXIT_OK


def cmd_sweep(args) -> int:
    kwargs = {"kind": args.kind, "seed": args.seed}
    if args.p is not None:
        kwargs["p"] = _parse_exponent(args.p)
    if args.q is not None:
        kwargs["q"] = _parse_exponent(args.q)
    if getattr(args, "lam", None) is not None:
        kwargs["lam"] = _parse_exponent(args.lam)
    if args.p_list:
        kwargs["p_list"] = tuple(_parse_exponent(s) for s in args.p_list.split(","))
    if args.r_values:
        kwargs["r_values"] = tuple(float(s) for s in args.r_values.split(","))
    for name in ("alphas", "t_grid", "x_grid", "rho_grid", "s_grid",
                 "lambda_grid", "pairs"):
        val = getattr(args, name)
        if val is not None:
            kwargs[name] = val
    if args.alpha_max is not None:
        kwargs["alpha_max"] = args.alpha_max
    cfg = sweeps.SweepConfig(**kwargs)
    header, rows = sweeps.generate(cfg)
    out_path = args.out or f"{args.kind}.{args.format}"
    _write_text_atomic(out_path, _format_rows(header, rows, args.format))
    if out_path != "-":
        print(f"wrote {len(rows)} rows to {out_path}")
    return EXIT_OK


def cmd_identities(args) -> int:
    n = args.sample_size
    lines = [f"hyperc identities  v{__version__}",
             f"  inputs:    sample_size={n}  seed={args.seed}  tol=1e-09"]
    failures = 0
    checks = []
    pairs = sweeps.random_pairs(n, args.seed)
    for pair in pairs:
        sol = solve_z3(pair)
        dual = solve_z3(pair.dual)
        checks.append((f"duality r({pair.p:.4f},{pair.q:.4f})",
                       abs(sol.r - dual.r)))
        mapped = core.cross_ratio((sol.y ** (pair.q - 1.0), sol.x ** (pair.p - 1.0)))
        checks.append((f"cross-ratio symmetry ({pair.p:.4f},{pair.q:.4f})",
                       abs(sol.r - mapped)))
        sd1, sd2 = core.residual_selfdual(pair, (sol.x, sol.y))
        checks.append((f"self-dual residual ({pair.p:.4f},{pair.q:.4f})",
                       max(abs(sd1), abs(sd2))))
    for p in (1.2, 4 / 3, 1.5, 1.8):
        pair = ExponentPair(p, p / (p - 1.0))
        r_pq = solve_z3(pair).r
        r_p2 = solve_z3(ExponentPair(p, 2.0)).r
        r_2q = solve_z3(ExponentPair(2.0, pair.q)).r
        checks.append((f"multiplicative pivot p={p:.4f}", abs(r_pq - r_p2 * r_2q)))
    for name, gap in checks:
        ok = gap < 1e-9
        if not ok:
            failures += 1
        lines.append(f"  {'pass' if ok else 'FAIL'}  {gap:.3e}  {name}")
    lines.append(f"  {len(checks) - failures}/{len(checks)} identities passed")
    print("\n".join(lines))
    return EXIT_OK if failures == 0 else EXIT_VERIFY


# --------------------------------------------------------------------------
# argument parsing and dispatch
# --------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hyperc",
        description="Optimal hypercontractive constants for Z_3 and biased "
                    "Bernoulli random variables.")
    ap.add_argument("--version", action="version", version=f"hyperc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_pq(p, tol_default=1e-12):
        p.add_argument("--p", required=True, help="exponent p (decimal or m/n)")
        p.add_argument("--q", required=True, help="exponent q (decimal or m/n)")
        p.add_argument("--tol", type=float, default=tol_default)

    sp = sub.add_parser("compute", help="solve for r_{p,q}(Z_3)")
    add_pq(sp)
    sp.set_defaults(fn=cmd_compute)

    sp = sub.add_parser("sigma", help="solve for sigma_{p,q}(lambda)")
    sp.add_argument("--lambda", dest="lam", required=True,
                    help="bias in (0, 1/2] (decimal or m/n)")
    add_pq(sp)
    sp.set_defaults(fn=cmd_sigma)

    sp = sub.add_parser("verify", help="solver vs brute-force oracle")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--budget", choices=sorted(_BUDGETS), default="default")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("certify", help="exact algebraic certification (rational p, q)")
    sp.add_argument("--p", required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--out", default=None, help="certificate JSON path")
    sp.set_defaults(fn=cmd_certify)

    sp = sub.add_parser("sweep", help="emit figure-style data files")
    sp.add_argument("kind", choices=sweeps.SWEEP_KINDS)
    sp.add_argument("--p", default=None)
    sp.add_argument("--q", default=None)
    sp.add_argument("--lambda", dest="lam", default=None)
    sp.add_argument("--p-list", default=None, help="comma-separated p values (curves-h)")
    sp.add_argument("--r-values", default=None, help="comma-separated r values (defect)")
    sp.add_argument("--alphas", type=int, default=None)
    sp.add_argument("--alpha-max", type=float, default=None)
    sp.add_argument("--t-grid", type=int, default=None, dest="t_grid")
    sp.add_argument("--x-grid", type=int, default=None, dest="x_grid")
    sp.add_argument("--rho-grid", type=int, default=None, dest="rho_grid")
    sp.add_argument("--s-grid", type=int, default=None, dest="s_grid")
    sp.add_argument("--lambda-grid", type=int, default=None, dest="lambda_grid")
    sp.add_argument("--pairs", type=int, default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None, help="output path, '-' for stdout")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(fn=cmd_sweep)

    sp = sub.add_parser("identities", help="batch identity suite")
    sp.add_argument("--sample-size", type=int, default=6, dest="sample_size")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=cmd_identities)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputDomainError,) as e:
        print(f"hyperc: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as e:
        print(f"hyperc: capacity exceeded: {e}", file=sys.stderr)
        return EXIT_CAPACITY
    except (VerificationError, CertificationError) as e:
        print(f"hyperc: verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (SolverError, BracketError) as e:
        print(f"hyperc: solver failure: {e}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as e:
        print(f"hyperc: I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except HypercError as e:  # any stragglers
        print(f"hyperc: error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
