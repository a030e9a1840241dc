"""Brute-force oracle layer: norms, the dilation operator, defect scans,
inequality spot checks, and the randomized contraction properties."""

import math

import numpy as np
import pytest

from hyperc import core, oracle
from hyperc.core import ExponentPair, wolff_2q, z2_constant
from hyperc.errors import InputDomainError, VerificationError
from hyperc.oracle import (GridSpec, Z3Function, apply_Tr, check_extremizer,
                           check_triangle, estimate_r, estimate_sigma,
                           jacobian_sign_check, lp_norm, min_defect_segment,
                           psi_value, random_functions)
from hyperc.solver import Z3Solution, solve_z3
from hyperc.sweeps import random_pairs

P24 = ExponentPair(2.0, 4.0)
FAST = GridSpec(n_rho=2048, n_theta=128, refine_depth=3)


# --------------------------------------------------------------------------
# norms and the dilation operator
# --------------------------------------------------------------------------

def test_lp_norm_basics():
    assert lp_norm((1.0, 1.0, 1.0), 3.7) == pytest.approx(1.0, abs=1e-15)
    assert lp_norm((3.0, 0.0, 0.0), 2.0) == pytest.approx(math.sqrt(3.0), abs=1e-15)
    with pytest.raises(InputDomainError):
        lp_norm((1.0, 1.0, 1.0), 0.5)


def test_lp_norm_matches_F_polar_on_segment_family():
    for rho in (0.0, 0.3, 0.9):
        f = (1 + 2 * rho, 1 - rho, 1 - rho)
        for p in (1.5, 2.0, 4.0):
            assert lp_norm(f, p) == pytest.approx(
                (core.F_polar(p, rho, 0.0) / 3) ** (1 / p), abs=1e-14)


def test_apply_Tr():
    assert apply_Tr((2.0, 2.0, 2.0), 0.3) == pytest.approx((2.0, 2.0, 2.0))
    f = (0.3, 1.4, 0.8)
    m = sum(f) / 3
    assert apply_Tr(f, 0.0) == pytest.approx((m, m, m))
    rho, r = 0.4, 0.65
    out = apply_Tr((1 + 2 * rho, 1 - rho, 1 - rho), r)
    assert out == pytest.approx((1 + 2 * r * rho, 1 - r * rho, 1 - r * rho), abs=1e-15)


def test_z3_function_validation():
    with pytest.raises(InputDomainError):
        Z3Function((1.0, -0.1, 0.5))
    g = apply_Tr(Z3Function((1.0, 0.0, 2.0)), 0.5)
    assert isinstance(g, Z3Function)


def test_grid_spec_validation():
    with pytest.raises(InputDomainError):
        GridSpec(n_rho=32)
    with pytest.raises(InputDomainError):
        GridSpec(refine_depth=-1)


# --------------------------------------------------------------------------
# defect scans and constant estimation
# --------------------------------------------------------------------------

def test_min_defect_segment_at_zero_dilation():
    val, arg = min_defect_segment(P24, 0.0, FAST)
    assert val == pytest.approx(0.0, abs=1e-15)
    assert arg == pytest.approx(0.0, abs=1e-3)


def test_min_defect_segment_at_critical_r():
    # at the critical r the defect touches zero both at rho = 0 (exactly) and
    # at the extremizer rho0; rounding decides which basin wins the argmin
    val, arg = min_defect_segment(P24, wolff_2q(4.0), FAST)
    assert abs(val) < 1e-12
    rho0 = solve_z3(P24).rho0
    assert min(abs(arg), abs(arg - rho0)) < 1e-4
    # a hair above critical the extremizer basin is strictly negative and wins
    val, arg = min_defect_segment(P24, wolff_2q(4.0) + 1e-4, FAST)
    assert val < 0
    assert arg == pytest.approx(rho0, abs=1e-2)


def test_min_defect_segment_supercritical():
    val, _ = min_defect_segment(P24, wolff_2q(4.0) + 0.01, FAST)
    assert val < -1e-6


def test_estimate_r_against_closed_forms():
    assert abs(estimate_r(P24, grid=FAST) - wolff_2q(4.0)) < 1e-4
    assert abs(estimate_r(ExponentPair(4 / 3, 4.0), grid=FAST) - 0.3203772410170408) < 1e-4


def test_estimate_r_general_pair():
    pair = ExponentPair(1.5, 1.8)
    assert abs(estimate_r(pair, grid=FAST) - solve_z3(pair).r) < 1e-4


def test_estimate_sigma():
    assert abs(estimate_sigma(1 / 3, P24, grid=FAST) - estimate_r(P24, grid=FAST)) < 2e-4
    val = estimate_sigma(0.25, ExponentPair(1.5, 3.0), grid=FAST)
    assert abs(val - core.sigma_pp_star(0.25, 1.5)) < 1e-4
    val = estimate_sigma(0.49, P24, grid=FAST)
    assert abs(val - 1 / math.sqrt(3)) < 2e-3


def test_check_triangle():
    val, arg = check_triangle(P24, 0.0, GridSpec(512, 64, 1))
    assert val == pytest.approx(0.0, abs=1e-15)
    val, arg = check_triangle(P24, wolff_2q(4.0), GridSpec(1024, 128, 2))
    assert val > -1e-9
    assert arg[1] == pytest.approx(0.0, abs=2e-2)  # attained on the theta = 0 edge
    pair = ExponentPair(1.5, 1.8)
    val, _ = check_triangle(pair, solve_z3(pair).r, GridSpec(1024, 128, 2))
    assert val > -1e-9


def test_triangle_reduction_regimes():
    assert oracle.triangle_reduction_applies(ExponentPair(1.5, 1.9))
    assert oracle.triangle_reduction_applies(ExponentPair(1.5, 3.0))
    assert oracle.triangle_reduction_applies(ExponentPair(2.0, 5.0))
    assert not oracle.triangle_reduction_applies(ExponentPair(2.5, 5.0))


# --------------------------------------------------------------------------
# inequality spot checks
# --------------------------------------------------------------------------

def test_psi_boundary_ray_is_zero():
    for q in (1.2, 1.5, 1.9):
        for y in (0.05, 0.2, 0.4):
            assert abs(psi_value(q, math.sqrt(3) * y / 3, y)) < 1e-14


@pytest.mark.parametrize("q,x,y", [(1.5, 0.4, 0.1), (1.9, 0.3, 0.2), (1.1, 0.5, 0.05)])
def test_psi_negative_inside(q, x, y):
    assert psi_value(q, x, y) < 0


def test_psi_negative_on_grid():
    # 64 x 64 x 16 interior grid of the Cartesian triangle
    s3 = math.sqrt(3.0)
    nq, nx, ny = 16, 64, 64
    qs = 1.0 + (np.arange(nq) + 0.5) / nq
    ys = (np.arange(ny) + 0.5) / ny * (s3 / 4)
    fr = (np.arange(nx) + 0.5) / nx
    worst = -np.inf
    for q in qs:
        lo = s3 * ys / 3
        hi = 1.0 - s3 * ys
        X = lo[None, :] + fr[:, None] * (hi - lo)[None, :]
        Y = np.broadcast_to(ys[None, :], X.shape)
        vals = psi_value(q, X, Y)
        worst = max(worst, float(np.max(vals)))
    assert worst < 0.0


def test_psi_domain_validation():
    with pytest.raises(InputDomainError):
        psi_value(2.5, 0.3, 0.1)
    with pytest.raises(InputDomainError):
        psi_value(1.5, 0.95, 0.4)


def test_jacobian_negative():
    assert jacobian_sign_check(0.5, 0.25) < 0
    assert jacobian_sign_check(0.1, 0.45) < 0
    # H symmetry makes the determinant even in alpha
    assert jacobian_sign_check(-0.5, 0.25) == pytest.approx(
        jacobian_sign_check(0.5, 0.25), abs=1e-6)


def test_jacobian_negative_on_grid():
    a = np.linspace(-0.99, 0.99, 32)[:, None]
    t = np.linspace(0.01, 0.49, 32)[None, :]
    det = jacobian_sign_check(np.broadcast_to(a, (32, 32)),
                              np.broadcast_to(t, (32, 32)))
    assert np.max(det) < 0


# --------------------------------------------------------------------------
# extremizer certificate
# --------------------------------------------------------------------------

def test_check_extremizer_passes():
    rep = check_extremizer(P24, solve_z3(P24), tol=1e-8)
    assert rep.defect_at_one > 0
    pair = ExponentPair(4 / 3, 4.0)
    rep = check_extremizer(pair, solve_z3(pair), tol=1e-8)
    assert rep.rho0 == pytest.approx((1 - 2 ** -1.5) / (1 + 2 ** -0.5), abs=1e-12)


def test_check_extremizer_detects_tampering():
    sol = solve_z3(P24)
    bad = Z3Solution(x=min(sol.x + 0.1, 0.99), y=sol.y,
                     residual_max=sol.residual_max, method=sol.method)
    with pytest.raises(VerificationError, match="stationarity"):
        check_extremizer(P24, bad, tol=1e-8)


# --------------------------------------------------------------------------
# randomized contraction properties (seeded)
# --------------------------------------------------------------------------

def test_contraction_below_critical():
    r = 0.99 * solve_z3(P24).r
    fs = random_functions(200, seed=11)
    lhs = lp_norm(apply_Tr(fs, r), 4.0)
    rhs = lp_norm(fs, 2.0)
    assert np.all(lhs <= rhs + 1e-12)


def test_violation_above_critical():
    r = solve_z3(P24).r + 0.01
    rho = np.linspace(0.0, 1.0, 10_000)
    g = core.defect_segment(P24, r, rho)
    assert np.min(g) < -1e-9


def test_reverse_estimate():
    # ||T_r f||_q >= r^(1/(q-1)) ||f||_q for nonnegative f, valid for q <= 2
    # (the underlying r-monotonicity argument needs 1 < q <= 2; it genuinely
    # fails for larger q)
    rng = np.random.default_rng(99)
    fs = random_functions(200, seed=rng)
    rs = rng.uniform(0.01, 0.99, size=200)
    for q in (1.3, 1.7, 2.0):
        lhs = np.array([lp_norm(apply_Tr(f, r), q) for f, r in zip(fs, rs)])
        rhs = rs ** (1 / (q - 1)) * lp_norm(fs, q)
        assert np.all(lhs >= rhs - 1e-12)


def test_norm_monotonicity_in_p():
    fs = random_functions(100, seed=3)
    assert np.all(lp_norm(fs, 4.0) >= lp_norm(fs, 2.0) - 1e-14)
    assert np.all(lp_norm(fs, 2.0) >= lp_norm(fs, 1.5) - 1e-14)


def test_sigma_monotone_in_lambda_reported():
    # conjecture evidence only: report, never a hard assertion
    from hyperc.solver import solve_biased
    lams = np.linspace(0.05, 0.45, 9)
    for pair in random_pairs(2, seed=8):
        sig = [solve_biased(float(l), pair).sigma for l in lams]
        diffs = np.diff(sig)
        frac_monotone = np.mean(diffs >= -1e-10)
        print(f"sigma(lambda) monotone fraction for {pair}: {frac_monotone:.2f}")
