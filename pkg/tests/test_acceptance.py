"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a single ``[acceptance] criterion N ... PASS`` line (visible
with ``pytest -s`` or on failure) and enforces the stated runtime budget.
Run just this gate with:

    pytest tests/test_acceptance.py -s
"""

import math
import time

import numpy as np
import pytest

from hyperc import core, exact, oracle
from hyperc.core import ExponentPair, wolff_2q, z2_constant
from hyperc.solver import intersect_H_curves, solve_biased, solve_z3
from hyperc.sweeps import SweepConfig, generate, random_pairs


def _report(n: int, label: str, t0: float, budget: float) -> None:
    dt = time.perf_counter() - t0
    print(f"[acceptance] criterion {n:2d} ({label}): PASS in {dt:.2f}s (budget {budget:.0f}s)")
    assert dt < budget, f"criterion {n} exceeded its {budget}s runtime budget ({dt:.2f}s)"


def test_criterion_01_wolff_closed_form():
    t0 = time.perf_counter()
    for q in (3.0, 4.0, 6.0, 10.0):
        sol = solve_z3(ExponentPair(2.0, q))
        expected = math.sqrt(2 * (4 ** (1 / q) - 1) / (4 - 4 ** (1 / q)))
        assert abs(sol.r - expected) < 1e-10
    _report(1, "closed-form agreement, (2, q)", t0, 1.0)


def test_criterion_02_dual_pair_closed_form():
    t0 = time.perf_counter()
    for p in (1.2, 4 / 3, 1.5, 1.8):
        q = p / (p - 1)
        sol = solve_z3(ExponentPair(p, q))
        expected = 2 * (4 ** (1 / q) - 1) / (4 - 4 ** (1 / q))
        assert abs(sol.r - expected) < 1e-10
        assert abs(sol.x - 2 ** (-2 / p)) < 1e-10
        assert abs(sol.y - 2 ** (-2 / q)) < 1e-10
    _report(2, "closed-form agreement, (p, p*)", t0, 1.0)


def test_criterion_03_multiplicative_pivot():
    t0 = time.perf_counter()
    for p in (1.2, 4 / 3, 1.5, 1.8):
        q = p / (p - 1)
        r_pq = solve_z3(ExponentPair(p, q)).r
        r_p2 = solve_z3(ExponentPair(p, 2.0)).r
        r_2q = solve_z3(ExponentPair(2.0, q)).r
        assert abs(r_pq - r_p2 * r_2q) < 1e-9
    _report(3, "multiplicative pivot at 2", t0, 1.0)


def test_criterion_04_duality_and_cross_ratio():
    t0 = time.perf_counter()
    for pair in random_pairs(20, seed=20260810):
        sol = solve_z3(pair)
        assert abs(sol.r - solve_z3(pair.dual).r) < 1e-9
        mapped = core.cross_ratio((sol.y ** (pair.q - 1), sol.x ** (pair.p - 1)))
        assert abs(sol.r - mapped) < 1e-9
    _report(4, "duality + cross-ratio symmetry, 20 pairs", t0, 10.0)


def test_criterion_05_oracle_agreement():
    t0 = time.perf_counter()
    for (p, q) in ((2.0, 4.0), (4 / 3, 4.0), (1.5, 1.8), (3.0, 6.0)):
        pair = ExponentPair(p, q)
        assert abs(oracle.estimate_r(pair) - solve_z3(pair).r) < 1e-4
    pair = ExponentPair(2.0, 4.0)
    assert abs(oracle.estimate_sigma(1 / 3, pair) - solve_z3(pair).r) < 2e-4
    _report(5, "brute-force oracle agreement", t0, 30.0)


def test_criterion_06_extremizer_certificate():
    t0 = time.perf_counter()
    for pair in random_pairs(10, seed=616):
        sol = solve_z3(pair)
        rep = oracle.check_extremizer(pair, sol, tol=1e-8)
        assert abs(rep.defect_at_rho0) < 1e-8
        assert abs(rep.stationarity) < 1e-4  # sqrt(tol)
        assert rep.defect_at_one > 0.0
    _report(6, "extremizer certificate, 10 pairs", t0, 5.0)


def test_criterion_07_algebraic_certification():
    t0 = time.perf_counter()
    r36 = solve_z3(ExponentPair(3.0, 6.0), tol=1e-12).r
    t_root = time.perf_counter()
    assert exact.verify_root(exact.paper_p20(), r36, 1e-6)
    assert time.perf_counter() - t_root < 1.0  # the root test alone
    cert24 = exact.certify(exact.RationalExponents.from_exponents(2, 4),
                           solve_z3(ExponentPair(2.0, 4.0), tol=1e-12).r)
    quotient = exact.exact_divide(cert24.poly, exact.radical_quartic_24())
    assert quotient.degree == cert24.poly.degree - 4
    cert36 = exact.certify(exact.RationalExponents.from_exponents(3, 6), r36)
    assert not cert36.poly.is_zero
    assert cert36.abs_value < cert36.bound
    # the built-in reference polynomial is an exact factor of the certificate
    exact.exact_divide(cert36.poly, exact.paper_p20())
    _report(7, "algebraic certification incl. full (3,6) elimination", t0, 300.0)


def test_criterion_08_inequality_grids_and_strict_bound():
    t0 = time.perf_counter()
    # psi < 0 on a 64 x 64 x 16 interior grid of the Cartesian triangle
    s3 = math.sqrt(3.0)
    qs = 1.0 + (np.arange(16) + 0.5) / 16
    ys = (np.arange(64) + 0.5) / 64 * (s3 / 4)
    fr = (np.arange(64) + 0.5) / 64
    for q in qs:
        lo, hi = s3 * ys / 3, 1.0 - s3 * ys
        X = lo[None, :] + fr[:, None] * (hi - lo)[None, :]
        Y = np.broadcast_to(ys[None, :], X.shape)
        assert float(np.max(oracle.psi_value(q, X, Y))) < 0.0
    # det J_H < 0 on a 32 x 32 grid
    a = np.broadcast_to(np.linspace(-0.99, 0.99, 32)[:, None], (32, 32))
    t = np.broadcast_to(np.linspace(0.01, 0.49, 32)[None, :], (32, 32))
    assert float(np.max(oracle.jacobian_sign_check(a, t))) < 0.0
    # strict bound r < sqrt((p-1)/(q-1)) - 1e-6 everywhere tested
    for pair in random_pairs(15, seed=88):
        assert solve_z3(pair).r < z2_constant(pair) - 1e-6
    _report(8, "inequality spot-check grids + strict bound", t0, 30.0)


def test_criterion_09_uniqueness_witness():
    t0 = time.perf_counter()
    rng = np.random.default_rng(909)
    found = 0
    while found < 50:
        a1 = float(rng.uniform(-0.9, 0.9))
        a2 = float(rng.uniform(-0.9, 0.9))
        if abs(a1 - a2) < 0.05:
            continue
        res = intersect_H_curves(a1, a2)
        assert res.unique, f"multiple crossings reported for ({a1}, {a2}): {res.roots}"
        found += 1
    _report(9, "uniqueness witness, 50 index pairs", t0, 30.0)


def test_criterion_10_extreme_bias_stability():
    t0 = time.perf_counter()
    lam = 1e-100
    header, rows = generate(SweepConfig(kind="curves-Hlambda", lam=lam,
                                        alphas=9, t_grid=257))
    arr = np.array([row[2:] for row in rows], dtype=float)  # t, U, V columns
    assert np.all(np.isfinite(arr))
    u, v = core.H_lambda_curve(lam, 0.0, lam / (1 - lam))
    assert u == 0.0
    assert abs(v - math.log(4 * lam * (1 - lam)) / math.log(lam)) < 1e-10
    _report(10, "extreme-bias sweep + Whitney pleat identity", t0, 5.0)
