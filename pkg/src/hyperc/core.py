"""Closed-form building blocks for the Z_3 / biased-Bernoulli hypercontractivity problem.

Everything in this module is a pure function of its arguments: norm-type
quantities, the two characterizing equation systems and their residuals, the
curve families h, H, h_lam, H_lam, the symmetrizing coordinate changes
Phi/Psi and the blowups b/B, plus the handful of known closed-form constants.

Conventions
-----------
* All real arithmetic is binary64.  Powers z**s for z in [0,1] are evaluated
  as exp(s*log z) with the z=0 and z=1 branches taken explicitly, so log(0)
  never occurs (see ``_pow``).
* Scalar inputs give scalar (float) outputs; numpy arrays broadcast
  elementwise, which is what the oracle grids and the CLI sweeps rely on.
* Closed-interval endpoints are accepted wherever the limit value exists
  (e.g. the curve endpoints h(p,0) and h(p,1)).

Key quantities
--------------
ell(p, x)            = (1/(1+2x)) * ((1+2x^p)/3)^(1/p)
segment ordinate     = (1-x)(1-x^(p-1)) / (1+2x^p)
defect_segment       = ||f_rho||_p - ||T_r f_rho||_q on the test family
                       f_rho = 1 + rho*chi + rho*conj(chi)
z3 system            ell(p,x) = ell(q,y)  and equal segment ordinates
cross_ratio          r = (1+2x)(1-y) / ((1+2y)(1-x))
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InputDomainError, SingularityError, SingularLimitWarning

LOG3 = math.log(3.0)

__all__ = [
    "ExponentPair", "BiasParam", "UnitSquarePoint", "PlanePoint", "PolarPoint",
    "ell", "defect_segment", "F_polar", "defect_polar",
    "residual_z3", "residual_selfdual", "residual_biased", "cross_ratio",
    "h_curve", "Phi", "Phi_inv", "Psi", "Psi_inv", "H_curve",
    "blowup_b", "blowup_B", "h_lambda", "H_lambda_curve",
    "z2_constant", "wolff_2q", "sigma_pp_star",
]


# --------------------------------------------------------------------------
# small numeric helpers
# --------------------------------------------------------------------------

def _is_scalar(*vals) -> bool:
    return all(np.ndim(v) == 0 for v in vals)


def _out(a, scalar: bool):
    return float(a) if scalar else a


def _require(cond, msg: str) -> None:
    if not np.all(cond):
        raise InputDomainError(msg)


def _pow(z, s):
    """z**s for z >= 0 via exp(s*log z), with z==0 and z==1 branched explicitly.

    Only used with s > 0, so 0**s == 0 is the correct branch.
    """
    z = np.asarray(z, dtype=float)
    safe = np.where((z > 0.0) & (z != 1.0), z, 0.5)
    out = np.exp(np.asarray(s, dtype=float) * np.log(safe))
    out = np.where(z == 0.0, 0.0, out)
    out = np.where(z == 1.0, 1.0, out)
    return out


def _xy(pt, lo=0.0, hi=1.0, what="point"):
    """Unpack a UnitSquarePoint / 2-sequence, checking both coords in [lo, hi]."""
    if isinstance(pt, UnitSquarePoint):
        return pt.x, pt.y
    x, y = pt
    _require((np.asarray(x) >= lo) & (np.asarray(x) <= hi)
             & (np.asarray(y) >= lo) & (np.asarray(y) <= hi),
             f"{what} must have both coordinates in [{lo}, {hi}]")
    return x, y


def _uv(pt):
    if isinstance(pt, PlanePoint):
        return pt.u, pt.v
    u, v = pt
    return u, v


def _lam_value(lam) -> float:
    lam = lam.lam if isinstance(lam, BiasParam) else float(lam)
    _require((lam > 0.0) & (lam <= 0.5), "bias parameter must satisfy 0 < lambda <= 1/2")
    return lam


# --------------------------------------------------------------------------
# domain types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentPair:
    """A pair of Lebesgue exponents 1 < p < q < oo with derived conjugates."""

    p: float
    q: float

    def __post_init__(self):
        p, q = self.p, self.q
        if not (math.isfinite(p) and math.isfinite(q) and 1.0 < p < q):
            raise InputDomainError(f"need 1 < p < q < oo, got p={p}, q={q}")

    @property
    def p_star(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def q_star(self) -> float:
        return self.q / (self.q - 1.0)

    @property
    def alpha_p(self) -> float:
        return 1.0 - 2.0 / self.p

    @property
    def alpha_q(self) -> float:
        return 1.0 - 2.0 / self.q

    @property
    def dual(self) -> "ExponentPair":
        """The reflected pair (q*, p*); the constant is invariant under it."""
        return ExponentPair(self.q_star, self.p_star)


@dataclass(frozen=True)
class BiasParam:
    """Mass of the smaller atom of a biased Bernoulli variable, 0 < lambda <= 1/2."""

    lam: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and 0.0 < self.lam <= 0.5):
            raise InputDomainError(f"need 0 < lambda <= 1/2, got {self.lam}")


@dataclass(frozen=True)
class UnitSquarePoint:
    """A point strictly inside the open unit square."""

    x: float
    y: float

    def __post_init__(self):
        if not (0.0 < self.x < 1.0 and 0.0 < self.y < 1.0):
            raise InputDomainError(f"point must lie in (0,1)^2, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class PlanePoint:
    """A finite point of the plane (curve-family range coordinates)."""

    u: float
    v: float

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise InputDomainError(f"plane point must be finite, got ({self.u}, {self.v})")


# membership tolerance on the radial bound of the triangle Delta
_DELTA_TOL = 1e-12


def _delta_rho_max(theta):
    return 1.0 / (2.0 * np.sin(np.asarray(theta, dtype=float) + math.pi / 6.0))


def _check_delta(rho, theta):
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    _require((theta >= 0.0) & (theta <= math.pi / 3.0 + _DELTA_TOL),
             "polar angle must lie in [0, pi/3]")
    _require((rho >= 0.0) & (rho <= _delta_rho_max(theta) + _DELTA_TOL),
             "polar radius exceeds the triangle bound 1/(2 sin(theta + pi/6))")


@dataclass(frozen=True)
class PolarPoint:
    """Polar coordinates (rho, theta) of a point of the closed triangle Delta."""

    rho: float
    theta: float

    def __post_init__(self):
        _check_delta(self.rho, self.theta)


def _polar(point):
    if isinstance(point, PolarPoint):
        return point.rho, point.theta
    rho, theta = point
    _check_delta(rho, theta)
    return rho, theta


# --------------------------------------------------------------------------
# scalar kernels (array-safe)
# --------------------------------------------------------------------------

def _ell_k(p, x):
    return _pow((1.0 + 2.0 * _pow(x, p)) / 3.0, 1.0 / np.asarray(p, dtype=float)) \
        / (1.0 + 2.0 * np.asarray(x, dtype=float))


def _h2_k(p, x):
    x = np.asarray(x, dtype=float)
    return (1.0 - x) * (1.0 - _pow(x, np.asarray(p, dtype=float) - 1.0)) \
        / (1.0 + 2.0 * _pow(x, p))


def _bias_ell_k(lam, p, x):
    x = np.asarray(x, dtype=float)
    return _pow(lam + (1.0 - lam) * _pow(x, p), 1.0 / np.asarray(p, dtype=float)) \
        / (lam + (1.0 - lam) * x)


def _bias_h2_k(lam, p, x):
    x = np.asarray(x, dtype=float)
    return (1.0 - x) * (1.0 - _pow(x, np.asarray(p, dtype=float) - 1.0)) \
        / (lam + (1.0 - lam) * _pow(x, p))


def _H1_k(alpha, t):
    alpha = np.asarray(alpha, dtype=float)
    t = np.asarray(t, dtype=float)
    return (-0.5 * alpha * np.log((1.0 + 2.0 * t * t) / 3.0)
            + 0.5 * np.log((1.0 + 2.0 * _pow(t, 1.0 + alpha))
                           / (1.0 + 2.0 * _pow(t, 1.0 - alpha))))


def _H2_k(alpha, t):
    alpha = np.asarray(alpha, dtype=float)
    t = np.asarray(t, dtype=float)
    return (1.0 - _pow(t, 1.0 - alpha)) * (1.0 - _pow(t, 1.0 + alpha)) \
        / (1.0 + 2.0 * t * t)


def _F_k(p, rho, theta):
    rho = np.asarray(rho, dtype=float)
    theta = np.asarray(theta, dtype=float)
    total = 0.0
    for shift in (0.0, 2.0 * math.pi / 3.0, -2.0 * math.pi / 3.0):
        base = 1.0 + 2.0 * rho * np.cos(theta + shift)
        # rounding can push a vertex value a hair below zero
        total = total + _pow(np.maximum(base, 0.0), p)
    return total


def _seg_norm_k(p, rho):
    """((1+2 rho)^p + 2 (1-rho)^p) / 3)^(1/p) = ||f_rho||_p for rho in [0,1]."""
    rho = np.asarray(rho, dtype=float)
    inner = (_pow(1.0 + 2.0 * rho, p) + 2.0 * _pow(1.0 - rho, p)) / 3.0
    return _pow(inner, 1.0 / np.asarray(p, dtype=float))


def _logmix_k(lam, s, t):
    """log(lam + (1-lam) * t^s) as a stabilized log-sum-exp; safe down to lam ~ 1e-300."""
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    loglam = math.log(lam)
    log1m = math.log1p(-lam)
    with np.errstate(divide="ignore"):
        tail = np.where(t > 0.0, log1m + s * np.log(np.where(t > 0.0, t, 1.0)), -np.inf)
    return np.logaddexp(loglam, tail)


# scalar (pure-float) twins of the hot kernels, for the solvers' inner
# bisection loops where numpy call overhead dominates

def _powf(z: float, s: float) -> float:
    if z == 0.0:
        return 0.0
    if z == 1.0:
        return 1.0
    return math.exp(s * math.log(z))


def _H1_f(alpha: float, t: float) -> float:
    return (-0.5 * alpha * math.log((1.0 + 2.0 * t * t) / 3.0)
            + 0.5 * math.log((1.0 + 2.0 * _powf(t, 1.0 + alpha))
                             / (1.0 + 2.0 * _powf(t, 1.0 - alpha))))


def _H2_f(alpha: float, t: float) -> float:
    return (1.0 - _powf(t, 1.0 - alpha)) * (1.0 - _powf(t, 1.0 + alpha)) \
        / (1.0 + 2.0 * t * t)


def _bias_ell_f(lam: float, p: float, x: float) -> float:
    return _powf(lam + (1.0 - lam) * _powf(x, p), 1.0 / p) / (lam + (1.0 - lam) * x)


def _bias_h2_f(lam: float, p: float, x: float) -> float:
    return (1.0 - x) * (1.0 - _powf(x, p - 1.0)) / (lam + (1.0 - lam) * _powf(x, p))


# --------------------------------------------------------------------------
# norms and defect functions
# --------------------------------------------------------------------------

def ell(p, x):
    """ell(p, x) = (1/(1+2x)) * ((1+2x^p)/3)^(1/p), for p > 1 and x in [0,1]."""
    _require(np.asarray(p, dtype=float) > 1.0, "exponent p must exceed 1")
    _require((np.asarray(x, dtype=float) >= 0.0) & (np.asarray(x, dtype=float) <= 1.0),
             "ell requires x in [0, 1]")
    return _out(_ell_k(p, x), _is_scalar(p, x))


def defect_segment(pair: ExponentPair, r, rho):
    """Defect G(r, rho) = ||f_rho||_p - ||T_r f_rho||_q along the segment family.

    G(r, 0) == 0 exactly; r is feasible for the segment-reduced problem iff
    G(r, .) >= 0 on [0, 1].
    """
    r_ = np.asarray(r, dtype=float)
    rho_ = np.asarray(rho, dtype=float)
    _require((r_ >= 0.0) & (r_ <= 1.0), "dilation parameter r must lie in [0, 1]")
    _require((rho_ >= 0.0) & (rho_ <= 1.0), "segment parameter rho must lie in [0, 1]")
    val = _seg_norm_k(pair.p, rho_) - _seg_norm_k(pair.q, r_ * rho_)
    return _out(val, _is_scalar(r, rho))


def F_polar(p, rho, theta):
    """F(p, rho, theta) = 3 ||f_{rho e^{i theta}}||_p^p over the triangle Delta."""
    _require(np.asarray(p, dtype=float) > 1.0, "exponent p must exceed 1")
    _check_delta(rho, theta)
    return _out(_F_k(p, rho, theta), _is_scalar(p, rho, theta))


def defect_polar(pair: ExponentPair, r, point):
    """Polar defect (F(p,rho,theta)/3)^(1/p) - (F(q,r rho,theta)/3)^(1/q).

    Agrees with defect_segment(pair, r, rho) at theta = 0.
    """
    rho, theta = _polar(point)
    r_ = np.asarray(r, dtype=float)
    _require((r_ >= 0.0) & (r_ <= 1.0), "dilation parameter r must lie in [0, 1]")
    val = (_pow(_F_k(pair.p, rho, theta) / 3.0, 1.0 / pair.p)
           - _pow(_F_k(pair.q, r_ * np.asarray(rho, dtype=float), theta) / 3.0, 1.0 / pair.q))
    return _out(val, _is_scalar(r, rho, theta))


# --------------------------------------------------------------------------
# equation-system residuals
# --------------------------------------------------------------------------

def residual_z3(pair: ExponentPair, pt):
    """Componentwise residual (LHS - RHS) of the two-equation Z_3 system.

    First equation:  ell(p, x) = ell(q, y).
    Second equation: (1-x)(1-x^(p-1))/(1+2x^p) = (1-y)(1-y^(q-1))/(1+2y^q).
    """
    x, y = _xy(pt)
    e1 = _ell_k(pair.p, x) - _ell_k(pair.q, y)
    e2 = _h2_k(pair.p, x) - _h2_k(pair.q, y)
    scalar = _is_scalar(x, y)
    return _out(e1, scalar), _out(e2, scalar)


def residual_selfdual(pair: ExponentPair, pt):
    """Residual of the self-dual form: ell(p,x)=ell(q,y), ell(p*,x^(p-1))=ell(q*,y^(q-1)).

    Vanishes exactly where residual_z3 vanishes (the two systems are equivalent).
    """
    x, y = _xy(pt)
    e1 = _ell_k(pair.p, x) - _ell_k(pair.q, y)
    e2 = _ell_k(pair.p_star, _pow(x, pair.p - 1.0)) \
        - _ell_k(pair.q_star, _pow(y, pair.q - 1.0))
    scalar = _is_scalar(x, y)
    return _out(e1, scalar), _out(e2, scalar)


def residual_biased(lam, pair: ExponentPair, pt):
    """Componentwise residual of the lambda-biased two-point system.

    First equation:  (lam+(1-lam)x^p)^(1/p)/(lam+(1-lam)x) = same with (q, y).
    Second equation: (1-x)(1-x^(p-1))/(lam+(1-lam)x^p) = same with (q, y).
    """
    lam = _lam_value(lam)
    x, y = _xy(pt)
    e1 = _bias_ell_k(lam, pair.p, x) - _bias_ell_k(lam, pair.q, y)
    e2 = _bias_h2_k(lam, pair.p, x) - _bias_h2_k(lam, pair.q, y)
    scalar = _is_scalar(x, y)
    return _out(e1, scalar), _out(e2, scalar)


def cross_ratio(pt):
    """The cross ratio (x, y; -1/2, 1) = (1+2x)(1-y) / ((1+2y)(1-x)).

    Expresses the optimal constant in terms of the system solution.
    """
    x, y = _xy(pt)
    x_ = np.asarray(x, dtype=float)
    y_ = np.asarray(y, dtype=float)
    if np.any(x_ == 1.0):
        raise SingularityError("cross ratio has a pole at x = 1")
    val = (1.0 + 2.0 * x_) * (1.0 - y_) / ((1.0 + 2.0 * y_) * (1.0 - x_))
    return _out(val, _is_scalar(x, y))


# --------------------------------------------------------------------------
# curve families and coordinate changes
# --------------------------------------------------------------------------

def h_curve(p, x):
    """The curve h(p, x) = (ell(p,x), (1-x)(1-x^(p-1))/(1+2x^p)).

    Both components strictly decrease in x; endpoints h(p,0) = (3^(-1/p), 1)
    and h(p,1) = (1/3, 0).
    """
    _require(np.asarray(p, dtype=float) > 1.0, "exponent p must exceed 1")
    x_ = np.asarray(x, dtype=float)
    _require((x_ >= 0.0) & (x_ <= 1.0), "curve parameter x must lie in [0, 1]")
    scalar = _is_scalar(p, x)
    return _out(_ell_k(p, x), scalar), _out(_h2_k(p, x), scalar)


def Phi(alpha, t):
    """Index/parameter exchange Phi(alpha, t) = (2/(1-alpha), t^(1-alpha))."""
    a = np.asarray(alpha, dtype=float)
    t_ = np.asarray(t, dtype=float)
    _require(np.abs(a) < 1.0, "symmetrized index alpha must lie in (-1, 1)")
    _require((t_ >= 0.0) & (t_ <= 1.0), "parameter t must lie in [0, 1]")
    scalar = _is_scalar(alpha, t)
    return _out(2.0 / (1.0 - a), scalar), _out(_pow(t_, 1.0 - a), scalar)


def Phi_inv(p, x):
    """Inverse of Phi: (p, x) -> (1 - 2/p, x^(p/2))."""
    p_ = np.asarray(p, dtype=float)
    x_ = np.asarray(x, dtype=float)
    _require(p_ > 1.0, "exponent p must exceed 1")
    _require((x_ >= 0.0) & (x_ <= 1.0), "curve parameter x must lie in [0, 1]")
    scalar = _is_scalar(p, x)
    return _out(1.0 - 2.0 / p_, scalar), _out(_pow(x_, p_ / 2.0), scalar)


def Psi(pt):
    """Range normalization Psi(u, v) = (log u + (1/2) log(9 - 6v), v).

    Sends the geometric-mean centerline u = 1/sqrt(9-6v) to the vertical axis.
    """
    u, v = _uv(pt)
    u_ = np.asarray(u, dtype=float)
    v_ = np.asarray(v, dtype=float)
    _require(u_ > 0.0, "Psi requires u > 0")
    _require((v_ > 0.0) & (v_ < 1.0), "Psi requires v in (0, 1)")
    scalar = _is_scalar(u, v)
    return _out(np.log(u_) + 0.5 * np.log(9.0 - 6.0 * v_), scalar), _out(v_, scalar)


def Psi_inv(pt):
    """Inverse of Psi: (w, v) -> (e^w / sqrt(9 - 6v), v)."""
    w, v = _uv(pt)
    w_ = np.asarray(w, dtype=float)
    v_ = np.asarray(v, dtype=float)
    _require((v_ > 0.0) & (v_ < 1.0), "Psi_inv requires v in (0, 1)")
    scalar = _is_scalar(w, v)
    return _out(np.exp(w_) / np.sqrt(9.0 - 6.0 * v_), scalar), _out(v_, scalar)


def H_curve(alpha, t):
    """The symmetrized curve family H = Psi o h o Phi, written out explicitly:

    H1 = -(alpha/2) log((1+2t^2)/3) + (1/2) log((1+2t^(1+alpha))/(1+2t^(1-alpha)))
    H2 = (1-t^(1-alpha)) (1-t^(1+alpha)) / (1+2t^2)

    Symmetries: H1(-alpha,t) = -H1(alpha,t) and H2(-alpha,t) = H2(alpha,t).
    """
    a = np.asarray(alpha, dtype=float)
    t_ = np.asarray(t, dtype=float)
    _require(np.abs(a) < 1.0, "symmetrized index alpha must lie in (-1, 1)")
    _require((t_ >= 0.0) & (t_ <= 1.0), "parameter t must lie in [0, 1]")
    scalar = _is_scalar(alpha, t)
    return _out(_H1_k(a, t_), scalar), _out(_H2_k(a, t_), scalar)


def blowup_b(pt):
    """First-order blowup b(u, v) = (u/v, v); requires v > 0."""
    u, v = _uv(pt)
    u_ = np.asarray(u, dtype=float)
    v_ = np.asarray(v, dtype=float)
    if np.any(v_ <= 0.0):
        raise SingularityError("blowup b is singular at v <= 0")
    scalar = _is_scalar(u, v)
    return _out(u_ / v_, scalar), _out(v_, scalar)


def blowup_B(pt):
    """3/2-order blowup B(u, v) = (u / v^(3/2), v^(1/2)); requires v > 0."""
    u, v = _uv(pt)
    u_ = np.asarray(u, dtype=float)
    v_ = np.asarray(v, dtype=float)
    if np.any(v_ <= 0.0):
        raise SingularityError("blowup B is singular at v <= 0")
    scalar = _is_scalar(u, v)
    return _out(u_ / v_ ** 1.5, scalar), _out(np.sqrt(v_), scalar)


def h_lambda(lam, p, x):
    """Biased analogue of h_curve:

    h_lam(p, x) = ( (lam+(1-lam)x^p)^(1/p) / (lam+(1-lam)x),
                    (1-x)(1-x^(p-1)) / (lam+(1-lam)x^p) ).

    The ordinate strictly decreases in x, from 1/lam at x=0 to 0 at x=1.
    """
    lam = _lam_value(lam)
    _require(np.asarray(p, dtype=float) > 1.0, "exponent p must exceed 1")
    x_ = np.asarray(x, dtype=float)
    _require((x_ >= 0.0) & (x_ <= 1.0), "curve parameter x must lie in [0, 1]")
    scalar = _is_scalar(p, x)
    return _out(_bias_ell_k(lam, p, x_), scalar), _out(_bias_h2_k(lam, p, x_), scalar)


def H_lambda_curve(lam, alpha, t):
    """Symmetrized biased curve family, both components normalized by log(lam):

    H_lam,1 = (alpha L(2) - L(1+alpha) + L(1-alpha)) / log(lam)
    H_lam,2 = (-L(2) + L(1+alpha) + L(1-alpha)) / log(lam)

    with L(s) = log(lam + (1-lam) t^s), evaluated as a stabilized log-sum-exp
    of log(lam) and log(1-lam) + s log(t) so that biases as extreme as
    lam = 1e-100 stay finite.  Endpoints: H_lam(alpha,0) = (alpha,1) and
    H_lam(alpha,1) = (0,0).
    """
    lam = _lam_value(lam)
    if lam >= 0.5:
        raise InputDomainError("H_lambda_curve requires lambda < 1/2 (log-normalization)")
    a = np.asarray(alpha, dtype=float)
    t_ = np.asarray(t, dtype=float)
    _require(np.abs(a) < 1.0, "symmetrized index alpha must lie in (-1, 1)")
    _require((t_ >= 0.0) & (t_ <= 1.0), "parameter t must lie in [0, 1]")
    loglam = math.log(lam)
    L2 = _logmix_k(lam, 2.0, t_)
    Lp = _logmix_k(lam, 1.0 + a, t_)
    Lm = _logmix_k(lam, 1.0 - a, t_)
    scalar = _is_scalar(alpha, t)
    return (_out((a * L2 - Lp + Lm) / loglam, scalar),
            _out((-L2 + Lp + Lm) / loglam, scalar))


# --------------------------------------------------------------------------
# closed-form constants
# --------------------------------------------------------------------------

def z2_constant(pair: ExponentPair) -> float:
    """The two-point (symmetric Bernoulli) constant sqrt((p-1)/(q-1))."""
    return math.sqrt((pair.p - 1.0) / (pair.q - 1.0))


def wolff_2q(q) -> float:
    """Closed form for the (2, q) constant: sqrt(2 (4^(1/q) - 1) / (4 - 4^(1/q)))."""
    q = float(q)
    _require(q > 1.0, "exponent q must exceed 1")
    c = 4.0 ** (1.0 / q)
    return math.sqrt(2.0 * (c - 1.0) / (4.0 - c))


def sigma_pp_star(lam, p) -> float:
    """Biased constant for the conjugate pair (p, p*), 1 < p < 2:

    sigma_{p,p*}(lam) = sinh((1/p*) log((1-lam)/lam)) / sinh((1/p) log((1-lam)/lam)).

    At lam = 1/2 the quotient is 0/0; the limit p - 1 is returned and a
    SingularLimitWarning is issued.
    """
    lam = _lam_value(lam)
    p = float(p)
    _require((p > 1.0) & (p < 2.0), "sigma_pp_star requires 1 < p < 2")
    if lam == 0.5:
        warnings.warn("sigma_pp_star at lambda = 1/2 is 0/0; returning the limit p - 1",
                      SingularLimitWarning, stacklevel=2)
        return p - 1.0
    big_l = math.log((1.0 - lam) / lam)
    p_star = p / (p - 1.0)
    return math.sinh(big_l / p_star) / math.sinh(big_l / p)
