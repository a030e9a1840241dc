"""Independent brute-force verification layer.

Nothing here reuses the solver's curve machinery: norms and the dilation
operator are evaluated directly on value triples, optimal constants are
re-estimated by bisection over the raw defect landscape, and the paper-level
inequality lemmas are spot-checked on grids.  Agreement between this module
and hyperc.solver is the main correctness evidence for both.

All randomized helpers take an explicit 64-bit seed (or numpy Generator), so
every property suite is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import core
from .core import ExponentPair, _pow
from .errors import InputDomainError, VerificationError
from .solver import Z3Solution

__all__ = [
    "Z3Function", "GridSpec", "ExtremizerReport",
    "lp_norm", "apply_Tr", "random_functions",
    "min_defect_segment", "estimate_r", "estimate_sigma", "check_triangle",
    "psi_value", "jacobian_sign_check", "check_extremizer",
    "triangle_reduction_applies",
]

# feasibility slack in the bisection predicates: the defect touches zero
# quadratically at the extremizer, so exact nonnegativity cannot be asked of
# binary64 grid minima
EPS_NUM = 1e-12


@dataclass(frozen=True)
class Z3Function:
    """A nonnegative function on Z_3 as its value triple under Haar measure."""

    values: Tuple[float, float, float]

    def __post_init__(self):
        if len(self.values) != 3 or any(v < 0.0 for v in self.values):
            raise InputDomainError(f"need three nonnegative values, got {self.values}")


@dataclass(frozen=True)
class GridSpec:
    """Grid sizes for the brute-force scans."""

    n_rho: int = 4096
    n_theta: int = 256
    refine_depth: int = 3

    def __post_init__(self):
        if self.n_rho < 64:
            raise InputDomainError("n_rho must be at least 64")
        if self.refine_depth < 0:
            raise InputDomainError("refine_depth must be nonnegative")


def _values(f):
    if isinstance(f, Z3Function):
        return np.asarray(f.values, dtype=float)
    return np.asarray(f, dtype=float)


def lp_norm(f, p) -> float:
    """L^p norm under the Haar probability measure on Z_3.

    Accepts a Z3Function, a 3-sequence, or an array whose last axis has
    length 3 (batched evaluation).
    """
    if not np.all(np.asarray(p, dtype=float) >= 1.0):
        raise InputDomainError("lp_norm requires p >= 1")
    v = _values(f)
    out = _pow(np.mean(_pow(np.abs(v), p), axis=-1), 1.0 / np.asarray(p, dtype=float))
    return float(out) if out.ndim == 0 else out


def apply_Tr(f, r):
    """The dilation operator T_r f = mean(f) + r (f - mean(f)) on Z_3.

    Multiplies the two nonzero Fourier modes by r (both are at graph
    distance 1 on Z_3); preserves nonnegativity for r in [0, 1].
    """
    if not 0.0 <= r <= 1.0:
        raise InputDomainError("apply_Tr requires r in [0, 1]")
    v = _values(f)
    m = np.mean(v, axis=-1, keepdims=True)
    out = m + r * (v - m)
    if isinstance(f, Z3Function):
        return Z3Function(tuple(float(t) for t in out))
    return out


def random_functions(n: int, seed) -> np.ndarray:
    """n random nonnegative value triples, uniform on [0,1]^3.

    One coordinate is zeroed with probability 0.1 to exercise boundary cases.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    vals = rng.uniform(size=(n, 3))
    zero = rng.uniform(size=n) < 0.1
    idx = rng.integers(0, 3, size=n)
    vals[zero, idx[zero]] = 0.0
    return vals


# --------------------------------------------------------------------------
# defect minimization on the segment and the triangle
# --------------------------------------------------------------------------

def _golden_min(f, a: float, b: float, iters: int = 60):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if f1 > f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
    if f1 <= f2:
        return x1, f1
    return x2, f2


def min_defect_segment(pair: ExponentPair, r: float, grid: Optional[GridSpec] = None):
    """Global minimum of the segment defect G(r, .) over rho in [0, 1].

    Coarse vectorized scan followed by refine_depth golden-section stages
    around the best cell.  Returns (min_value, argmin_rho).
    """
    grid = grid or GridSpec()
    rho = np.linspace(0.0, 1.0, grid.n_rho)
    g = core.defect_segment(pair, r, rho)
    i = int(np.argmin(g))
    best_rho, best_g = float(rho[i]), float(g[i])
    lo = float(rho[max(i - 1, 0)])
    hi = float(rho[min(i + 1, grid.n_rho - 1)])
    f = lambda t: core.defect_segment(pair, r, t)
    for _ in range(grid.refine_depth):
        x, fx = _golden_min(f, lo, hi, iters=40)
        if fx < best_g:
            best_rho, best_g = x, fx
        w = (hi - lo) * 0.25
        lo, hi = max(0.0, x - w), min(1.0, x + w)
    return best_g, best_rho


def estimate_r(pair: ExponentPair, tol: float = 1e-6, grid: Optional[GridSpec] = None) -> float:
    """Brute-force estimate of the optimal Z_3 constant.

    Bisection on r of the predicate min_{rho} G(r, rho) >= -EPS_NUM, bracketed
    by [0, sqrt((p-1)/(q-1))].  The segment reduction is valid for every pair
    (the segment-restricted optimum always equals the full one).
    """
    if tol < 1e-8:
        raise InputDomainError("estimate_r tolerance below 1e-8 is not meaningful here")
    grid = grid or GridSpec()
    lo, hi = 0.0, core.z2_constant(pair)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if min_defect_segment(pair, mid, grid)[0] >= -EPS_NUM:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _biased_norm(lam: float, p: float, rho):
    """||1 + rho X_lam||_p = (lam |1+(1-lam) rho|^p + (1-lam) |1-lam rho|^p)^(1/p)."""
    rho = np.asarray(rho, dtype=float)
    inner = (lam * _pow(np.abs(1.0 + (1.0 - lam) * rho), p)
             + (1.0 - lam) * _pow(np.abs(1.0 - lam * rho), p))
    return _pow(inner, 1.0 / p)


def _biased_defect(lam: float, pair: ExponentPair, r: float, rho):
    return _biased_norm(lam, pair.p, rho) - _biased_norm(lam, pair.q, r * np.asarray(rho))


def estimate_sigma(lam, pair: ExponentPair, tol: float = 1e-6,
                   grid: Optional[GridSpec] = None) -> float:
    """Brute-force estimate of the biased constant sigma_{p,q}(lambda).

    Same bisection scheme as estimate_r, with the two-point norms
    ||1 + rho X|| and the grid covering the full signed interval
    rho in [-1/(1-lambda), 1/lambda] on which 1 + rho X >= 0.
    """
    lam = core._lam_value(lam)
    if lam >= 0.5:
        raise InputDomainError("estimate_sigma requires lambda in (0, 1/2)")
    if tol < 1e-8:
        raise InputDomainError("estimate_sigma tolerance below 1e-8 is not meaningful here")
    grid = grid or GridSpec()
    rho = np.linspace(-1.0 / (1.0 - lam), 1.0 / lam, grid.n_rho)

    def feasible(r):
        g = _biased_defect(lam, pair, r, rho)
        i = int(np.argmin(g))
        best = float(g[i])
        lo_, hi_ = float(rho[max(i - 1, 0)]), float(rho[min(i + 1, grid.n_rho - 1)])
        f = lambda t: float(_biased_defect(lam, pair, r, t))
        for _ in range(grid.refine_depth):
            x, fx = _golden_min(f, lo_, hi_, iters=40)
            best = min(best, fx)
            w = (hi_ - lo_) * 0.25
            lo_, hi_ = x - w, x + w
        return best >= -EPS_NUM

    lo, hi = 0.0, core.z2_constant(pair)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def check_triangle(pair: ExponentPair, r: float, grid: Optional[GridSpec] = None):
    """Scan the polar defect over the whole triangle Delta.

    Returns (min_value, (argmin_rho, argmin_theta)).  For r up to the optimal
    constant the minimum is attained on the theta = 0 edge (this is the
    content of the triangle-to-segment reduction; see
    triangle_reduction_applies for the regimes where it is proved).
    """
    grid = grid or GridSpec()
    theta = np.linspace(0.0, math.pi / 3.0, grid.n_theta)
    frac = np.linspace(0.0, 1.0, grid.n_rho)[:, None]
    rho_max = 1.0 / (2.0 * np.sin(theta + math.pi / 6.0))[None, :]
    rho = frac * rho_max
    th = np.broadcast_to(theta[None, :], rho.shape)
    g = core.defect_polar(pair, r, (rho, th))
    i, j = np.unravel_index(int(np.argmin(g)), g.shape)
    best = float(g[i, j])
    best_pt = (float(rho[i, j]), float(theta[j]))

    # local 2-D refinement around the best cell
    for _ in range(grid.refine_depth):
        drho = float(rho_max[0, min(j, grid.n_theta - 1)]) / grid.n_rho
        dth = (math.pi / 3.0) / grid.n_theta
        r0, t0 = best_pt
        rr = np.linspace(max(0.0, r0 - drho), r0 + drho, 33)[:, None]
        tt = np.linspace(max(0.0, t0 - dth), min(math.pi / 3.0, t0 + dth), 33)[None, :]
        cap = 1.0 / (2.0 * np.sin(tt + math.pi / 6.0))
        rr = np.minimum(rr, cap)
        gg = core.defect_polar(pair, r, (rr, np.broadcast_to(tt, rr.shape)))
        ii, jj = np.unravel_index(int(np.argmin(gg)), gg.shape)
        if float(gg[ii, jj]) < best:
            best = float(gg[ii, jj])
            best_pt = (float(rr[ii, jj]), float(tt[0, jj]))
    return best, best_pt


def triangle_reduction_applies(pair: ExponentPair) -> bool:
    """True in the regimes where the triangle-to-segment reduction is proved
    (1 < p < q < 2, or 1 < p <= 2 < q); elsewhere check_triangle is
    report-only."""
    p, q = pair.p, pair.q
    return (p < q < 2.0) or (p <= 2.0 < q)


# --------------------------------------------------------------------------
# inequality spot checks
# --------------------------------------------------------------------------

def _A_fn(q, t):
    """A(q, t) = (1+t)^(q-1) (log(1+t) - t/(2(1+t))), t > -1."""
    t = np.asarray(t, dtype=float)
    return _pow(1.0 + t, np.asarray(q, dtype=float) - 1.0) \
        * (np.log1p(t) - t / (2.0 * (1.0 + t)))


def psi_value(q, x, y):
    """The three-variable combination whose negativity drives the
    theta-monotonicity of the defect for 1 < p < q < 2:

    psi = A(q,2x)(-2y) + A(q,-x-sqrt3 y)(-sqrt3 x+y) + A(q,-x+sqrt3 y)(sqrt3 x+y),

    on the Cartesian triangle y in (0, sqrt3/4), sqrt3 y/3 <= x < 1 - sqrt3 y.
    Vanishes identically on the ray x = sqrt3 y / 3 and is negative inside.
    """
    q_ = np.asarray(q, dtype=float)
    x_ = np.asarray(x, dtype=float)
    y_ = np.asarray(y, dtype=float)
    if not np.all((q_ > 1.0) & (q_ < 2.0)):
        raise InputDomainError("psi_value requires 1 < q < 2")
    s3 = math.sqrt(3.0)
    ok = (y_ > 0.0) & (y_ < s3 / 4.0) & (x_ >= s3 * y_ / 3.0 - 1e-15) & (x_ < 1.0 - s3 * y_)
    if not np.all(ok):
        raise InputDomainError("(x, y) outside the open Cartesian triangle")
    val = (_A_fn(q_, 2.0 * x_) * (-2.0 * y_)
           + _A_fn(q_, -x_ - s3 * y_) * (-s3 * x_ + y_)
           + _A_fn(q_, -x_ + s3 * y_) * (s3 * x_ + y_))
    return float(val) if val.ndim == 0 else val


def jacobian_sign_check(alpha, t, step: float = 1e-6):
    """Central finite-difference determinant of the Jacobian of H(alpha, t).

    Negative throughout (-1, 1) x (0, 1/2): H is orientation-reversing there,
    which underpins the injectivity of the symmetrized family.
    """
    a = np.asarray(alpha, dtype=float)
    t_ = np.asarray(t, dtype=float)
    if not np.all((np.abs(a) < 1.0) & (t_ > 0.0) & (t_ < 0.5)):
        raise InputDomainError("jacobian_sign_check requires (alpha, t) in (-1,1) x (0, 1/2)")
    h = step
    d1a = (core._H1_k(a + h, t_) - core._H1_k(a - h, t_)) / (2 * h)
    d1t = (core._H1_k(a, t_ + h) - core._H1_k(a, t_ - h)) / (2 * h)
    d2a = (core._H2_k(a + h, t_) - core._H2_k(a - h, t_)) / (2 * h)
    d2t = (core._H2_k(a, t_ + h) - core._H2_k(a, t_ - h)) / (2 * h)
    det = d1a * d2t - d1t * d2a
    return float(det) if det.ndim == 0 else det


# --------------------------------------------------------------------------
# extremizer certificate
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtremizerReport:
    """Values behind the three extremizer clauses (all satisfied)."""

    r: float
    rho0: float
    defect_at_rho0: float
    stationarity: float   # central finite difference of G in rho at rho0
    defect_at_one: float
    tol: float


def check_extremizer(pair: ExponentPair, sol: Z3Solution, tol: float = 1e-8) -> ExtremizerReport:
    """Certify that sol carries a nontrivial critical extremizer.

    Clauses, at r = sol.r and rho0 = sol.rho0:
      (i)   |G(r, rho0)| < tol          (the defect vanishes)
      (ii)  |dG/drho (r, rho0)| < sqrt(tol), central difference, step 1e-6
      (iii) G(r, 1) > 0                 (the minimum is interior)

    Raises VerificationError listing every violated clause.
    """
    r, rho0 = sol.r, sol.rho0
    g0 = core.defect_segment(pair, r, rho0)
    h = 1e-6
    dg = (core.defect_segment(pair, r, min(rho0 + h, 1.0))
          - core.defect_segment(pair, r, max(rho0 - h, 0.0))) / (2 * h)
    g1 = core.defect_segment(pair, r, 1.0)
    violated = []
    if not abs(g0) < tol:
        violated.append(f"defect-zero: |G(r, rho0)| = {abs(g0):.3e} >= {tol}")
    if not abs(dg) < math.sqrt(tol):
        violated.append(f"stationarity: |dG/drho| = {abs(dg):.3e} >= {math.sqrt(tol):.3e}")
    if not g1 > 0.0:
        violated.append(f"boundary: G(r, 1) = {g1:.3e} <= 0")
    if violated:
        raise VerificationError("extremizer certificate failed: " + "; ".join(violated))
    return ExtremizerReport(r=r, rho0=rho0, defect_at_rho0=g0, stationarity=dg,
                            defect_at_one=g1, tol=tol)
