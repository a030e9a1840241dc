"""Solvers for the optimal constants r_{p,q}(Z_3) and sigma_{p,q}(lambda).

Strategy
--------
Closed forms are dispatched first (they are exact and seed the Newton
cross-check):

1. q = p*          -> (x, y) = (2^(-2/p), 2^(-2/p*))
2. p = 2 or q = 2  -> the nonzero-index curve is met at t = 1/2; the other
                      parameter comes from inverting the index-0 ordinate
3. 2 < p           -> solve the reflected pair (q*, p*), map back through the
                      solution symmetry (p,q,x,y) -> (q*,p*, y^(q-1), x^(p-1))
4. otherwise       -> intersect the symmetrized curves H(alpha_p,.) and
                      H(alpha_q,.) by nested bisection on the common ordinate

Direct Newton on the raw (x, y) system is numerically fragile; the
symmetrized coordinates plus a final secant polish in the 3/2-blowup chart
(where the curves cross transversally, like straight lines) are stable even
for nearly tangent curve pairs.

The biased solver works on the h_lam curve family directly: the ordinate of
h_lam(p, .) is strictly decreasing in x, so each probed ordinate is inverted
on both curves and the abscissa gap is bracketed and bisected.  No uniqueness
is assumed there; if several crossings survive, the minimum-sigma root is
returned (matching the min-form characterization of the constant).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import core
from .core import (BiasParam, ExponentPair, _H1_k, _H2_k, _bias_ell_k, _bias_h2_k,
                   _H1_f, _H2_f, _bias_ell_f, _bias_h2_f)
from .errors import BracketError, InputDomainError, SolverError

__all__ = [
    "Z3Solution", "BiasedSolution", "IntersectionResult",
    "invert_H2", "intersect_H_curves", "solve_z3", "solve_z3_direct", "solve_biased",
]

# scan/bisection budget (the curves are near-tangent at their endpoints, so
# the ordinate grid is geometric rather than uniform)
N_SCAN = 2048
BISECT_CAP = 4096
V_FLOOR = 1e-12

# log-parameter window for inverting monotone ordinates: t in [1e-300, 1-1e-16]
_S_LO = math.log(1e-300)
_S_HI = math.log1p(-1e-16)

_CLOSED_FORM_WOLFF = "closed_form_wolff"
_CLOSED_FORM_DUAL = "closed_form_dual"
_CLOSED_FORM_PP_STAR = "closed_form_pp_star"
_CURVE_INTERSECTION = "curve_intersection"


# --------------------------------------------------------------------------
# solution records
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Z3Solution:
    """Solved (x, y) for a Z_3 pair; the constant and extremizer are derived."""

    x: float
    y: float
    residual_max: float
    method: str
    newton_converged: Optional[bool] = None  # set only by solve_z3_direct

    def __post_init__(self):
        if not (0.0 < self.x < 1.0 and 0.0 < self.y < 1.0):
            raise SolverError(f"solution left the open unit square: ({self.x}, {self.y})")

    @property
    def r(self) -> float:
        """r = (1+2x)(1-y)/((1+2y)(1-x)), recomputed from (x, y)."""
        return core.cross_ratio((self.x, self.y))

    @property
    def rho0(self) -> float:
        """Critical extremizer parameter rho0 = (1-x)/(1+2x)."""
        return (1.0 - self.x) / (1.0 + 2.0 * self.x)


@dataclass(frozen=True)
class BiasedSolution:
    """Solved (x, y) of the lambda-biased system; sigma is derived."""

    lam: float
    x: float
    y: float
    residual_max: float
    method: str

    def __post_init__(self):
        if not (0.0 < self.x < 1.0 and 0.0 < self.y < 1.0):
            raise SolverError(f"solution left the open unit square: ({self.x}, {self.y})")
        if not self.x < self.y:
            raise SolverError(f"biased solution must satisfy x < y, got ({self.x}, {self.y})")

    @property
    def sigma(self) -> float:
        """sigma = (1-y)(x + lam/(1-lam)) / ((1-x)(y + lam/(1-lam)))."""
        c = self.lam / (1.0 - self.lam)
        return (1.0 - self.y) * (self.x + c) / ((1.0 - self.x) * (self.y + c))


class IntersectionResult(NamedTuple):
    """Crossing parameters of two symmetrized curves (t1 on curve alpha1, ...)."""

    t1: float
    t2: float
    v: float            # common ordinate H2 at the crossing
    roots: tuple        # every crossing found, as (t1, t2, v); length 1 in theory

    @property
    def unique(self) -> bool:
        return len(self.roots) == 1


# --------------------------------------------------------------------------
# monotone inversions
# --------------------------------------------------------------------------

def _golden_max(f, a: float, b: float, iters: int = 80) -> float:
    """Return max of a unimodal f on [a, b] by golden-section search."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
    return max(f(a), f1, f2, f(b))


def _invert_H2_arr(alpha: float, v):
    """Vectorized bisection (in log t) for H2(alpha, t) = v, H2 decreasing in t."""
    v = np.asarray(v, dtype=float)
    lo = np.full(v.shape, _S_LO)
    hi = np.full(v.shape, _S_HI)
    for _ in range(90):
        mid = 0.5 * (lo + hi)
        big = _H2_k(alpha, np.exp(mid)) > v  # ordinate still above target: move right
        lo = np.where(big, mid, lo)
        hi = np.where(big, hi, mid)
    return np.exp(0.5 * (lo + hi))


def invert_H2(alpha: float, v: float, tol: float = 1e-14) -> float:
    """Solve H2(alpha, t) = v for t in (0, 1) by bisection.

    H2(alpha, .) decreases strictly from 1 (t -> 0) to 0 (t -> 1), so the
    solution is unique.  Raises BracketError when v is outside the attainable
    range of the search window.
    """
    if not abs(alpha) < 1.0:
        raise InputDomainError("symmetrized index alpha must lie in (-1, 1)")
    if not (math.isfinite(v) and tol > 0.0):
        raise InputDomainError("need finite v and tol > 0")
    lo, hi = _S_LO, _S_HI
    f_lo = _H2_f(alpha, math.exp(lo))
    f_hi = _H2_f(alpha, math.exp(hi))
    if not f_hi <= v <= f_lo:
        raise BracketError(
            f"ordinate v={v} outside attainable range [{f_hi}, {f_lo}] of H2({alpha}, .)")
    t = math.exp(0.5 * (lo + hi))
    for _ in range(BISECT_CAP):
        mid = 0.5 * (lo + hi)
        t = math.exp(mid)
        fm = _H2_f(alpha, t)
        if abs(fm - v) < tol:
            return t
        if fm > v:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(1.0, abs(lo), abs(hi)):
            break
    if abs(_H2_f(alpha, t) - v) >= tol:
        raise SolverError(f"invert_H2 stalled at residual {_H2_f(alpha, t) - v:.3e} > tol={tol}")
    return t


# --------------------------------------------------------------------------
# curve intersection (the general-case engine behind solve_z3)
# --------------------------------------------------------------------------

def _phi_gap(alpha1: float, alpha2: float, v: float) -> float:
    t1 = invert_H2(alpha1, v, tol=1e-15)
    t2 = invert_H2(alpha2, v, tol=1e-15)
    return _H1_f(alpha1, t1) - _H1_f(alpha2, t2)


def intersect_H_curves(alpha1: float, alpha2: float, tol: float = 1e-12) -> IntersectionResult:
    """Find the crossing(s) of H(alpha1, .) and H(alpha2, .).

    Both curves are parametrized by their common ordinate v; the abscissa gap
    phi(v) = H1(alpha1, t1(v)) - H1(alpha2, t2(v)) is scanned on a geometric
    grid of N_SCAN ordinates (the curves are near-tangent at their endpoints,
    so a uniform grid misses the crossing), every sign change is bisected,
    and each root receives one secant polish in the 3/2-blowup chart where
    the curves are transversal.

    The theory predicts exactly one crossing; if several survive the
    tolerance, all are reported in .roots and the leading (t1, t2) is the one
    with the smallest associated cross ratio.
    """
    for a in (alpha1, alpha2):
        if not abs(a) < 1.0:
            raise InputDomainError("symmetrized index alpha must lie in (-1, 1)")
    if alpha1 == alpha2:
        raise InputDomainError("curve indices must be distinct")

    sup1 = _golden_max(lambda t: float(_H2_k(alpha1, t)), 1e-12, 1.0 - 1e-12)
    sup2 = _golden_max(lambda t: float(_H2_k(alpha2, t)), 1e-12, 1.0 - 1e-12)
    v_max = min(sup1, sup2) * (1.0 - 1e-9)
    grid = np.geomspace(V_FLOOR, v_max, N_SCAN)

    t1g = _invert_H2_arr(alpha1, grid)
    t2g = _invert_H2_arr(alpha2, grid)
    phi = _H1_k(alpha1, t1g) - _H1_k(alpha2, t2g)

    # near v -> 0 the gap vanishes linearly; ignore brackets that sit entirely
    # inside rounding noise instead of treating them as crossings
    noise = 64.0 * np.finfo(float).eps
    roots_v = []
    for i in range(N_SCAN - 1):
        a, b = float(phi[i]), float(phi[i + 1])
        if a * b < 0.0 and max(abs(a), abs(b)) > noise:
            va, vb = float(grid[i]), float(grid[i + 1])
            fa = a
            for _ in range(BISECT_CAP):
                vm = 0.5 * (va + vb)
                fm = _phi_gap(alpha1, alpha2, vm)
                if fm == 0.0 or (vb - va) < 1e-14 * max(1.0, vm):
                    va = vb = vm
                    break
                if fa * fm < 0.0:
                    vb = vm
                else:
                    va, fa = vm, fm
            v_root = 0.5 * (va + vb)
            # one secant step on the blown-up gap phi(v)/v^(3/2), which is
            # transversal (straight-line-like) through the root
            h = max(1e-9 * v_root, 1e-13)
            g0 = _phi_gap(alpha1, alpha2, v_root) / v_root ** 1.5
            g1 = _phi_gap(alpha1, alpha2, v_root + h) / (v_root + h) ** 1.5
            if g1 != g0 and math.isfinite(g0) and math.isfinite(g1):
                v_sec = v_root - g0 * h / (g1 - g0)
                if 0.0 < v_sec < v_max and abs(v_sec - v_root) < 64.0 * (vb - va + h):
                    v_root = v_sec
            roots_v.append(v_root)
        elif a == 0.0:
            roots_v.append(float(grid[i]))

    # deduplicate near-identical roots from adjacent brackets
    roots_v.sort()
    dedup = []
    for v in roots_v:
        if not dedup or abs(v - dedup[-1]) > 1e-9 * max(v, dedup[-1]):
            dedup.append(v)

    if not dedup:
        raise BracketError(
            f"no crossing of H({alpha1},.) and H({alpha2},.) bracketed on "
            f"({V_FLOOR}, {v_max}) with {N_SCAN} ordinates",
            sweep=list(zip(grid.tolist(), phi.tolist())))

    roots = []
    for v in dedup:
        t1 = invert_H2(alpha1, v, tol=1e-15)
        t2 = invert_H2(alpha2, v, tol=1e-15)
        roots.append((t1, t2, v))

    def _r_of(root):
        t1, t2, _ = root
        x = float(core._pow(t1, 1.0 - alpha1))
        y = float(core._pow(t2, 1.0 - alpha2))
        return (1.0 + 2.0 * x) * (1.0 - y) / ((1.0 + 2.0 * y) * (1.0 - x))

    best = min(roots, key=_r_of)
    return IntersectionResult(t1=best[0], t2=best[1], v=best[2], roots=tuple(roots))


# --------------------------------------------------------------------------
# Z_3 solver
# --------------------------------------------------------------------------

def _residual_max(pair: ExponentPair, x: float, y: float) -> float:
    e1, e2 = core.residual_z3(pair, (x, y))
    return max(abs(e1), abs(e2))


def _newton_polish_xy(pair: ExponentPair, x: float, y: float, tol: float):
    """A few damped Newton steps on the raw residual, from an accurate seed."""
    for _ in range(12):
        e1, e2 = core.residual_z3(pair, (x, y))
        err = max(abs(e1), abs(e2))
        if err < 0.01 * tol:
            break
        h = 1e-7
        j11 = (core.residual_z3(pair, (min(x + h, 1.0), y))[0]
               - core.residual_z3(pair, (max(x - h, 0.0), y))[0]) / (2 * h)
        j12 = (core.residual_z3(pair, (x, min(y + h, 1.0)))[0]
               - core.residual_z3(pair, (x, max(y - h, 0.0)))[0]) / (2 * h)
        j21 = (core.residual_z3(pair, (min(x + h, 1.0), y))[1]
               - core.residual_z3(pair, (max(x - h, 0.0), y))[1]) / (2 * h)
        j22 = (core.residual_z3(pair, (x, min(y + h, 1.0)))[1]
               - core.residual_z3(pair, (x, max(y - h, 0.0)))[1]) / (2 * h)
        det = j11 * j22 - j12 * j21
        if not math.isfinite(det) or abs(det) < 1e-300:
            break
        dx = (e1 * j22 - e2 * j12) / det
        dy = (j11 * e2 - j21 * e1) / det
        step = 1.0
        while step > 1e-6:
            xn, yn = x - step * dx, y - step * dy
            if 0.0 < xn < 1.0 and 0.0 < yn < 1.0 and _residual_max(pair, xn, yn) < err:
                x, y = xn, yn
                break
            step *= 0.5
        else:
            break
    return x, y


def solve_z3(pair: ExponentPair, tol: float = 1e-12) -> Z3Solution:
    """Solve the Z_3 system for (x, y) and return the full solution record.

    The residual of both equations is below tol componentwise; the constant
    r and extremizer parameter rho0 are recomputed properties of the result.
    """
    if not 1e-14 <= tol <= 1e-6:
        raise InputDomainError("tol must lie in [1e-14, 1e-6]")
    p, q = pair.p, pair.q
    eps = 1e-12

    if abs(q - pair.p_star) <= eps * max(1.0, q):
        x = 2.0 ** (-2.0 / p)
        y = 2.0 ** (-2.0 / pair.p_star)
        method = _CLOSED_FORM_PP_STAR
    elif abs(p - 2.0) <= eps or abs(q - 2.0) <= eps:
        # the nonzero-index curve passes the axis at t = 1/2; the index-0
        # curve meets that ordinate at t0
        alpha = pair.alpha_q if abs(p - 2.0) <= eps else pair.alpha_p
        v_star = (2.0 - 2.0 ** alpha) * (2.0 - 2.0 ** -alpha) / 6.0
        t0 = invert_H2(0.0, v_star, tol=1e-15)
        if abs(p - 2.0) <= eps:
            x, y = t0, 2.0 ** (-2.0 / q)
        else:
            x, y = 2.0 ** (-2.0 / p), t0
        method = _CLOSED_FORM_WOLFF
    elif p > 2.0:
        dual = solve_z3(pair.dual, tol)
        x = dual.y ** (pair.p_star - 1.0)
        y = dual.x ** (pair.q_star - 1.0)
        method = _CLOSED_FORM_DUAL
    else:
        res = intersect_H_curves(pair.alpha_p, pair.alpha_q, tol=tol)
        if not res.unique:
            warnings.warn(
                f"{len(res.roots)} crossings survived tolerance for {pair}; "
                "returning the minimum cross ratio", RuntimeWarning, stacklevel=2)
        x = float(core._pow(res.t1, 1.0 - pair.alpha_p))
        y = float(core._pow(res.t2, 1.0 - pair.alpha_q))
        method = _CURVE_INTERSECTION

    if _residual_max(pair, x, y) >= tol:
        x, y = _newton_polish_xy(pair, x, y, tol)
    resid = _residual_max(pair, x, y)
    if resid >= tol:
        raise SolverError(f"residual {resid:.3e} above tol={tol} for {pair}")

    sol = Z3Solution(x=x, y=y, residual_max=resid, method=method)
    if not 0.0 < sol.r < core.z2_constant(pair):
        raise SolverError(
            f"solved constant {sol.r} violates 0 < r < sqrt((p-1)/(q-1)) for {pair}")
    return sol


def solve_z3_direct(pair: ExponentPair, seed: Z3Solution, tol: float = 1e-12) -> Z3Solution:
    """Independent cross-check: damped Newton on the raw (r, rho) system.

    The two equations are the norm equality G(r, rho) = 0 and the stationarity
    of G in rho, both written in the (r, rho) variables.  Falls back to the
    seed (with newton_converged=False and a warning) if the iteration leaves
    its basin.
    """
    p, q = pair.p, pair.q

    def S(kappa, s):
        return (1.0 + 2.0 * s) ** kappa + 2.0 * abs(1.0 - s) ** kappa

    def D(kappa, s):
        return (1.0 + 2.0 * s) ** (kappa - 1.0) - abs(1.0 - s) ** (kappa - 1.0)

    def F(r, rho):
        f1 = (S(p, rho) / 3.0) ** (1.0 / p) - (S(q, r * rho) / 3.0) ** (1.0 / q)
        f2 = rho * D(p, rho) / S(p, rho) - r * rho * D(q, r * rho) / S(q, r * rho)
        return np.array([f1, f2])

    r, rho = seed.r, seed.rho0
    converged = False
    for _ in range(60):
        f = F(r, rho)
        err = float(np.max(np.abs(f)))
        if err < tol:
            converged = True
            break
        h = 1e-7
        jr = (F(r + h, rho) - F(r - h, rho)) / (2 * h)
        jrho = (F(r, rho + h) - F(r, rho - h)) / (2 * h)
        jac = np.column_stack([jr, jrho])
        try:
            delta = np.linalg.solve(jac, f)
        except np.linalg.LinAlgError:
            break
        step = 1.0
        improved = False
        while step > 1e-8:
            rn, rhon = r - step * delta[0], rho - step * delta[1]
            if 0.0 < rn < 1.0 and 0.0 < rhon < 1.0 \
                    and float(np.max(np.abs(F(rn, rhon)))) < err:
                r, rho, improved = rn, rhon, True
                break
            step *= 0.5
        if not improved:
            break

    if not converged and float(np.max(np.abs(F(r, rho)))) >= tol:
        warnings.warn("direct (r, rho) Newton did not converge; returning the seed",
                      RuntimeWarning, stacklevel=2)
        return Z3Solution(x=seed.x, y=seed.y, residual_max=seed.residual_max,
                          method=seed.method, newton_converged=False)

    x = (1.0 - rho) / (1.0 + 2.0 * rho)
    y = (1.0 - r * rho) / (1.0 + 2.0 * r * rho)
    return Z3Solution(x=x, y=y, residual_max=_residual_max(pair, x, y),
                      method=seed.method, newton_converged=True)


# --------------------------------------------------------------------------
# biased solver
# --------------------------------------------------------------------------

def _invert_bias_h2_arr(lam: float, p: float, w):
    """Vectorized bisection for the decreasing biased ordinate = w, x in [0, 1]."""
    w = np.asarray(w, dtype=float)
    lo = np.zeros(w.shape)
    hi = np.ones(w.shape)
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        big = _bias_h2_k(lam, p, mid) > w
        lo = np.where(big, mid, lo)
        hi = np.where(big, hi, mid)
    return 0.5 * (lo + hi)


def _invert_bias_h2(lam: float, p: float, w: float) -> float:
    lo, hi = 0.0, 1.0
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _bias_h2_f(lam, p, mid) > w:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _bias_gap(lam: float, pair: ExponentPair, w: float) -> float:
    xp = _invert_bias_h2(lam, pair.p, w)
    xq = _invert_bias_h2(lam, pair.q, w)
    return _bias_ell_f(lam, pair.p, xp) - _bias_ell_f(lam, pair.q, xq)


def solve_biased(lam, pair: ExponentPair, tol: float = 1e-12) -> BiasedSolution:
    """Solve the lambda-biased system for (x, y) with x < y and derive sigma.

    For q = p* the closed form (x, y) = (L^(2/p), L^(2/p*)) with
    L = lam/(1-lam) is used (it reproduces the sinh expression for sigma).
    Otherwise the h_lam curves are intersected by monotone ordinate
    inversion; if several crossings survive, the minimum-sigma one is kept.
    """
    lam = core._lam_value(lam)
    if lam >= 0.5:
        raise InputDomainError("solve_biased requires lambda in (0, 1/2); "
                               "lambda = 1/2 is the symmetric two-point constant")
    if not 1e-14 <= tol <= 1e-6:
        raise InputDomainError("tol must lie in [1e-14, 1e-6]")

    ratio = lam / (1.0 - lam)
    if abs(pair.q - pair.p_star) <= 1e-12 * max(1.0, pair.q):
        x = ratio ** (2.0 / pair.p)
        y = ratio ** (2.0 / pair.p_star)
        method = _CLOSED_FORM_PP_STAR
    else:
        w_max = (1.0 / lam) * (1.0 - 1e-9)
        grid = np.geomspace(V_FLOOR, w_max, N_SCAN)
        xpg = _invert_bias_h2_arr(lam, pair.p, grid)
        xqg = _invert_bias_h2_arr(lam, pair.q, grid)
        gap = _bias_ell_k(lam, pair.p, xpg) - _bias_ell_k(lam, pair.q, xqg)

        noise = 64.0 * np.finfo(float).eps
        roots_w = []
        for i in range(N_SCAN - 1):
            a, b = float(gap[i]), float(gap[i + 1])
            if a == 0.0:
                roots_w.append(float(grid[i]))
            elif a * b < 0.0 and max(abs(a), abs(b)) > noise:
                wa, wb = float(grid[i]), float(grid[i + 1])
                fa = a
                for _ in range(BISECT_CAP):
                    wm = 0.5 * (wa + wb)
                    fm = _bias_gap(lam, pair, wm)
                    if fm == 0.0 or (wb - wa) < 1e-14 * max(1.0, wm):
                        wa = wb = wm
                        break
                    if fa * fm < 0.0:
                        wb = wm
                    else:
                        wa, fa = wm, fm
                roots_w.append(0.5 * (wa + wb))
        roots_w.sort()
        dedup = []
        for w in roots_w:
            if not dedup or abs(w - dedup[-1]) > 1e-9 * max(w, dedup[-1]):
                dedup.append(w)
        if not dedup:
            raise BracketError(
                f"no crossing of h_lam({pair.p},.) and h_lam({pair.q},.) bracketed "
                f"for lambda={lam}",
                sweep=list(zip(grid.tolist(), gap.tolist())))

        def _sigma_of(w):
            xp = _invert_bias_h2(lam, pair.p, w)
            xq = _invert_bias_h2(lam, pair.q, w)
            return (1.0 - xq) * (xp + ratio) / ((1.0 - xp) * (xq + ratio))

        w_best = min(dedup, key=_sigma_of)
        x = _invert_bias_h2(lam, pair.p, w_best)
        y = _invert_bias_h2(lam, pair.q, w_best)
        method = _CURVE_INTERSECTION

    x, y = _newton_polish_biased(lam, pair, x, y, tol)
    e1, e2 = core.residual_biased(lam, pair, (x, y))
    resid = max(abs(e1), abs(e2))
    if resid >= tol:
        raise SolverError(f"biased residual {resid:.3e} above tol={tol} "
                          f"for lambda={lam}, {pair}")
    sol = BiasedSolution(lam=lam, x=x, y=y, residual_max=resid, method=method)
    if not 0.0 < sol.sigma < core.z2_constant(pair):
        raise SolverError(f"sigma={sol.sigma} violates 0 < sigma < sqrt((p-1)/(q-1))")
    return sol


def _newton_polish_biased(lam: float, pair: ExponentPair, x: float, y: float, tol: float):
    def err_at(x_, y_):
        e1, e2 = core.residual_biased(lam, pair, (x_, y_))
        return max(abs(e1), abs(e2))

    for _ in range(12):
        e1, e2 = core.residual_biased(lam, pair, (x, y))
        err = max(abs(e1), abs(e2))
        if err < 0.01 * tol:
            break
        h = 1e-7
        ex1 = core.residual_biased(lam, pair, (min(x + h, 1.0), y))
        ex0 = core.residual_biased(lam, pair, (max(x - h, 0.0), y))
        ey1 = core.residual_biased(lam, pair, (x, min(y + h, 1.0)))
        ey0 = core.residual_biased(lam, pair, (x, max(y - h, 0.0)))
        j11, j21 = (ex1[0] - ex0[0]) / (2 * h), (ex1[1] - ex0[1]) / (2 * h)
        j12, j22 = (ey1[0] - ey0[0]) / (2 * h), (ey1[1] - ey0[1]) / (2 * h)
        det = j11 * j22 - j12 * j21
        if not math.isfinite(det) or abs(det) < 1e-300:
            break
        dx = (e1 * j22 - e2 * j12) / det
        dy = (j11 * e2 - j21 * e1) / det
        step = 1.0
        while step > 1e-6:
            xn, yn = x - step * dx, y - step * dy
            if 0.0 < xn < 1.0 and 0.0 < yn < 1.0 and err_at(xn, yn) < err:
                x, y = xn, yn
                break
            step *= 0.5
        else:
            break
    return x, y
