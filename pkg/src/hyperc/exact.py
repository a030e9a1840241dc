"""Exact algebraic certification for rational exponents.

For p = m/n and q = j/k in lowest terms, the substitution (x, y) =
(u^n, v^k) turns the characterizing system into two integer polynomials

  P1 = 3^(mk) (1+2u^m)^(nj) (1+2v^k)^(mj) - 3^(nj) (1+2v^j)^(mk) (1+2u^n)^(mj)
  P2 = (1-u^n)(1-u^(m-n))(1+2v^j) - (1-v^k)(1-v^(j-k))(1+2u^m)

that vanish at the solution image, and the constant r is tied to (u, v) by

  P3 = r (1+2v^k)(1-u^n) - (1+2u^n)(1-v^k).

Eliminating u from (P1, P3) and (P2, P3) by resultants and then v from the
two eliminants yields a nonzero integer polynomial with the optimal constant
among its roots: an algebraicity certificate.  No minimality (irreducibility)
is claimed; content and repeated factors are stripped, nothing more.

Machinery
---------
Polynomials live in a dense recursive representation: a level-0 element is a
Python int, a level-k element is a list of level-(k-1) coefficients indexed
by degree (zero polynomial = empty list).  On top of that sit

* subresultant polynomial remainder sequences (the primary resultant path,
  after Cohen, "A Course in Computational Algebraic Number Theory",
  Alg. 3.3.7) with exact divisions only,
* a fraction-free Bareiss determinant of the Sylvester matrix as an
  independent cross-check path for small dimensions,
* primitive-PRS gcd (used for content, squarefree reduction, and for
  resolving degenerate eliminations).

Root verification uses a compensated Horner evaluation (error-free
transformations, no fma required) with a running error bound; if the bound
cannot decide, the evaluation is redone exactly over the rationals, which is
conclusive for any binary64 evaluation point.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import (CapacityError, CertificationError, DivisibilityError,
                     InputDomainError)

__all__ = [
    "IntPoly", "BiPoly", "RationalExponents", "CertifiedPoly",
    "add", "mul", "scalar_mul", "derivative", "content", "primitive_part",
    "exact_divide", "poly_gcd", "squarefree_part",
    "resultant", "build_system", "build_cross_ratio_poly", "certify",
    "paper_p20", "verify_root", "compensated_horner",
]

# capacity budget (spec'd defaults): Sylvester dimension and coefficient bits
MAX_SYLVESTER_DIM = 64
MAX_COEFF_BITS = 1 << 20
BAREISS_DIM_CAP = 24


# ===========================================================================
# recursive dense polynomial engine
# level 0: int.  level k: list of level-(k-1) coefficients, degree order.
# ===========================================================================

def _zero(lvl):
    return 0 if lvl == 0 else []


def _one(lvl):
    if lvl == 0:
        return 1
    return [_one(lvl - 1)]


def _is_zero(e, lvl) -> bool:
    if lvl == 0:
        return e == 0
    return all(_is_zero(c, lvl - 1) for c in e)


def _trim(f, lvl):
    if lvl == 0:
        return f
    out = [_trim(c, lvl - 1) for c in f]
    while out and _is_zero(out[-1], lvl - 1):
        out.pop()
    return out


def _deg(f) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def _lc(f, lvl):
    return f[-1] if f else _zero(lvl - 1)


def _add(a, b, lvl):
    if lvl == 0:
        return a + b
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        ca = a[i] if i < len(a) else _zero(lvl - 1)
        cb = b[i] if i < len(b) else _zero(lvl - 1)
        out.append(_add(ca, cb, lvl - 1))
    while out and _is_zero(out[-1], lvl - 1):
        out.pop()
    return out


def _neg(a, lvl):
    if lvl == 0:
        return -a
    return [_neg(c, lvl - 1) for c in a]


def _sub(a, b, lvl):
    return _add(a, _neg(b, lvl), lvl)


def _mul(a, b, lvl):
    if lvl == 0:
        return a * b
    if not a or not b:
        return []
    out = [_zero(lvl - 1) for _ in range(len(a) + len(b) - 1)]
    for i, ca in enumerate(a):
        if _is_zero(ca, lvl - 1):
            continue
        for j, cb in enumerate(b):
            if _is_zero(cb, lvl - 1):
                continue
            out[i + j] = _add(out[i + j], _mul(ca, cb, lvl - 1), lvl - 1)
    while out and _is_zero(out[-1], lvl - 1):
        out.pop()
    return out


def _cmul(f, c, lvl):
    """Multiply a level-lvl polynomial by a level-(lvl-1) ring element."""
    if _is_zero(c, lvl - 1):
        return []
    return _trim([_mul(coef, c, lvl - 1) for coef in f], lvl)


def _shift(f, k, lvl):
    if not f:
        return []
    return [_zero(lvl - 1) for _ in range(k)] + f


def _elem_pow(c, k: int, lvl):
    out = _one(lvl)
    for _ in range(k):
        out = _mul(out, c, lvl)
    return out


def _elem_div(a, b, lvl):
    """Exact division of ring elements; raises DivisibilityError otherwise."""
    if lvl == 0:
        if b == 0:
            raise DivisibilityError("division by zero")
        q, r = divmod(a, b)
        if r != 0:
            raise DivisibilityError(f"{a} not divisible by {b}")
        return q
    return _exact_div(a, b, lvl)


def _cdiv(f, c, lvl):
    """Divide every coefficient of f exactly by the ring element c."""
    return _trim([_elem_div(coef, c, lvl - 1) for coef in f], lvl)


def _exact_div(a, b, lvl):
    """Exact division of level-lvl polynomials in their main variable."""
    a, b = _trim(a, lvl), _trim(b, lvl)   # leading-coefficient logic needs canonical form
    if _is_zero(b, lvl):
        raise DivisibilityError("division by the zero polynomial")
    if _is_zero(a, lvl):
        return []
    if _deg(a) < _deg(b):
        raise DivisibilityError("divisor degree exceeds dividend degree")
    rem = [c for c in a]
    out = [_zero(lvl - 1) for _ in range(_deg(a) - _deg(b) + 1)]
    lb = _lc(b, lvl)
    while rem and _deg(rem) >= _deg(b):
        c = _elem_div(_lc(rem, lvl), lb, lvl - 1)
        k = _deg(rem) - _deg(b)
        out[k] = c
        rem = _sub(rem, _shift(_cmul(b, c, lvl), k, lvl), lvl)
    if rem:
        raise DivisibilityError("nonzero remainder in exact division")
    return _trim(out, lvl)


def _prem(a, b, lvl):
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, fraction-free."""
    a, b = _trim(a, lvl), _trim(b, lvl)
    da, db = _deg(a), _deg(b)
    lb = _lc(b, lvl)
    rem = [c for c in a]
    e = da - db + 1
    while rem and _deg(rem) >= db:
        lr = _lc(rem, lvl)
        k = _deg(rem) - db
        rem = _sub(_cmul(rem, lb, lvl), _shift(_cmul(b, lr, lvl), k, lvl), lvl)
        e -= 1
    for _ in range(e):
        rem = _cmul(rem, lb, lvl)
    return rem


def _sign_of(e, lvl) -> int:
    if lvl == 0:
        return (e > 0) - (e < 0)
    if not e:
        return 0
    return _sign_of(e[-1], lvl - 1)


def _content(f, lvl):
    """gcd of the coefficients of f (a level-(lvl-1) element, sign-positive)."""
    c = _zero(lvl - 1)
    for coef in f:
        c = _ggcd(c, coef, lvl - 1)
    return c


def _primitive(f, lvl):
    if _is_zero(f, lvl):
        return []
    return _cdiv(f, _content(f, lvl), lvl)


def _ggcd(a, b, lvl):
    """gcd of two level-lvl elements via primitive PRS; result sign-positive."""
    if lvl == 0:
        return math.gcd(abs(a), abs(b))
    if _is_zero(a, lvl):
        g = _trim([c for c in b], lvl)
        return _neg(g, lvl) if _sign_of(g, lvl) < 0 else g
    if _is_zero(b, lvl):
        g = _trim([c for c in a], lvl)
        return _neg(g, lvl) if _sign_of(g, lvl) < 0 else g
    ca, cb = _content(a, lvl), _content(b, lvl)
    big_a, big_b = _cdiv(a, ca, lvl), _cdiv(b, cb, lvl)
    c = _ggcd(ca, cb, lvl - 1)
    if _deg(big_a) < _deg(big_b):
        big_a, big_b = big_b, big_a
    while True:
        if _is_zero(big_b, lvl):
            g = big_a
            break
        if _deg(big_b) == 0:
            g = [_one(lvl - 1)]
            break
        rem = _prem(big_a, big_b, lvl)
        big_a, big_b = big_b, (_primitive(rem, lvl) if not _is_zero(rem, lvl) else [])
    g = _cmul(_primitive(g, lvl), c, lvl)
    return _neg(g, lvl) if _sign_of(g, lvl) < 0 else g


def _bits(e, lvl) -> int:
    if lvl == 0:
        return abs(e).bit_length()
    return max((_bits(c, lvl - 1) for c in e), default=0)


def _check_capacity(elems, lvl) -> None:
    for e in elems:
        if _bits(e, lvl) > MAX_COEFF_BITS:
            raise CapacityError(
                f"coefficient bit length exceeds the budget of {MAX_COEFF_BITS}")


def _subres_resultant(a, b, lvl):
    """Resultant in the main variable via the subresultant PRS.

    Follows Cohen, Alg. 3.3.7; every division is exact in the coefficient
    ring.  Returns a level-(lvl-1) element.
    """
    a, b = _trim(a, lvl), _trim(b, lvl)
    if _is_zero(a, lvl) or _is_zero(b, lvl):
        raise InputDomainError("resultant of a zero polynomial")
    sign = 1
    if _deg(a) < _deg(b):
        if (_deg(a) * _deg(b)) % 2 == 1:
            sign = -sign
        a, b = b, a
    if _deg(a) + _deg(b) > MAX_SYLVESTER_DIM:
        raise CapacityError(
            f"Sylvester dimension {_deg(a) + _deg(b)} exceeds cap {MAX_SYLVESTER_DIM}")
    if _deg(a) == 0:  # both constants
        return _one(lvl - 1) if sign > 0 else _neg(_one(lvl - 1), lvl - 1)

    ca, cb = _content(a, lvl), _content(b, lvl)
    a, b = _cdiv(a, ca, lvl), _cdiv(b, cb, lvl)
    scale = _mul(_elem_pow(ca, _deg(b), lvl - 1), _elem_pow(cb, _deg(a), lvl - 1), lvl - 1)

    g = _one(lvl - 1)
    h = _one(lvl - 1)
    while _deg(b) > 0:
        delta = _deg(a) - _deg(b)
        if (_deg(a) % 2 == 1) and (_deg(b) % 2 == 1):
            sign = -sign
        rem = _prem(a, b, lvl)
        a, b = b, (_cdiv(rem, _mul(g, _elem_pow(h, delta, lvl - 1), lvl - 1), lvl)
                   if rem else [])
        if _is_zero(b, lvl):
            return _zero(lvl - 1)
        _check_capacity([b], lvl)
        g = _lc(a, lvl)
        if delta == 1:
            h = g
        elif delta > 1:
            h = _elem_div(_elem_pow(g, delta, lvl - 1),
                          _elem_pow(h, delta - 1, lvl - 1), lvl - 1)
    # b is now a nonzero constant polynomial
    da = _deg(a)
    res = _elem_div(_elem_pow(_lc(b, lvl), da, lvl - 1),
                    _elem_pow(h, da - 1, lvl - 1) if da >= 1 else _one(lvl - 1),
                    lvl - 1)
    res = _mul(res, scale, lvl - 1)
    return _neg(res, lvl - 1) if sign < 0 else res


def _eval_int(f, x: int):
    """Evaluate a level-1 polynomial (int coefficients) at an integer, exactly."""
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _resultant_v_interp(a, b):
    """Res in the outer variable of two level-2 polynomials with Z[r] coefficients,
    by exact integer evaluation and Newton interpolation.

    Equivalent to the direct subresultant PRS over Z[r] but far cheaper when the
    inner degrees are large: every slice r = r_i is a plain integer resultant
    (still computed by the subresultant PRS).  Slices where either leading
    v-coefficient vanishes are skipped (the specialization would drop degree),
    and the interpolant is verified exactly at two held-out points.
    """
    da, db = _deg(a), _deg(b)
    if da + db > MAX_SYLVESTER_DIM:
        raise CapacityError(
            f"Sylvester dimension {da + db} exceeds cap {MAX_SYLVESTER_DIM}")
    deg_r_a = max((_deg(c) for c in a), default=-1)
    deg_r_b = max((_deg(c) for c in b), default=-1)
    bound = db * max(deg_r_a, 0) + da * max(deg_r_b, 0)
    lca, lcb = a[-1], b[-1]

    pts, vals = [], []
    candidate = 0
    while len(pts) < bound + 3:
        r_i = candidate
        candidate = -candidate + (1 if candidate <= 0 else 0)  # 0, 1, -1, 2, -2, ...
        if _eval_int(lca, r_i) == 0 or _eval_int(lcb, r_i) == 0:
            continue
        a_i = [_eval_int(c, r_i) for c in a]
        b_i = [_eval_int(c, r_i) for c in b]
        vals.append(_subres_resultant(a_i, b_i, 1))
        pts.append(r_i)

    n = bound + 1
    fit_x, fit_y = pts[:n], [Fraction(v) for v in vals[:n]]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            fit_y[i] = (fit_y[i] - fit_y[i - 1]) / (fit_x[i] - fit_x[i - j])
    poly = []  # Fraction coefficients, lowest first
    for i in range(n - 1, -1, -1):
        shifted = [Fraction(0)] + poly
        xi = Fraction(fit_x[i])
        poly = [shifted[t] - (xi * poly[t] if t < len(poly) else 0)
                for t in range(len(shifted))]
        poly[0] += fit_y[i]
    if any(c.denominator != 1 for c in poly):
        raise CertificationError("interpolated resultant is not integral")
    out = [int(c) for c in poly]
    while out and out[-1] == 0:
        out.pop()
    for r_i, v in zip(pts[n:], vals[n:]):
        if _eval_int(out, r_i) != v:
            raise CertificationError("resultant interpolation failed verification")
    _check_capacity([out], 1)
    return out


def _sylvester(a, b, lvl):
    m, n = _deg(a), _deg(b)
    size = m + n
    rows = []
    a_desc = list(reversed(a))
    b_desc = list(reversed(b))
    for i in range(n):
        rows.append([_zero(lvl - 1)] * i + a_desc + [_zero(lvl - 1)] * (n - 1 - i))
    for i in range(m):
        rows.append([_zero(lvl - 1)] * i + b_desc + [_zero(lvl - 1)] * (m - 1 - i))
    return rows


def _bareiss_det(mat, lvl):
    """Fraction-free determinant of a matrix of level-lvl ring elements."""
    n = len(mat)
    if n == 0:
        return _one(lvl)
    m = [row[:] for row in mat]
    sign = 1
    prev = _one(lvl)
    for k in range(n - 1):
        if _is_zero(m[k][k], lvl):
            for i in range(k + 1, n):
                if not _is_zero(m[i][k], lvl):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return _zero(lvl)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _sub(_mul(m[k][k], m[i][j], lvl), _mul(m[i][k], m[k][j], lvl), lvl)
                m[i][j] = _elem_div(num, prev, lvl)
            m[i][k] = _zero(lvl)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return _neg(det, lvl) if sign < 0 else det


def _bareiss_resultant(a, b, lvl):
    a, b = _trim(a, lvl), _trim(b, lvl)
    if _is_zero(a, lvl) or _is_zero(b, lvl):
        raise InputDomainError("resultant of a zero polynomial")
    if _deg(a) + _deg(b) > BAREISS_DIM_CAP:
        raise CapacityError(
            f"Bareiss cross-check capped at Sylvester dimension {BAREISS_DIM_CAP}")
    if _deg(a) == 0 and _deg(b) == 0:
        return _one(lvl - 1)
    return _bareiss_det(_sylvester(a, b, lvl), lvl - 1)


# ===========================================================================
# public univariate / bivariate wrappers
# ===========================================================================

def _trim_ints(coeffs):
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPoly:
    """Dense univariate polynomial over Z, lowest degree first."""

    coeffs: Tuple[int, ...]
    var: str = "x"

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim_ints(self.coeffs))
        if any(not isinstance(c, int) for c in self.coeffs):
            raise InputDomainError("IntPoly coefficients must be Python ints")

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring operations ----------------------------------------------------

    def _like(self, coeffs) -> "IntPoly":
        return IntPoly(tuple(coeffs), self.var)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        self._check_var(other)
        return self._like(_add(list(self.coeffs), list(other.coeffs), 1))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        self._check_var(other)
        return self._like(_sub(list(self.coeffs), list(other.coeffs), 1))

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return self._like(c * other for c in self.coeffs)
        self._check_var(other)
        return self._like(_mul(list(self.coeffs), list(other.coeffs), 1))

    __rmul__ = __mul__

    def __neg__(self) -> "IntPoly":
        return self._like(-c for c in self.coeffs)

    def _check_var(self, other) -> None:
        if self.var != other.var:
            raise InputDomainError(f"variable mismatch: {self.var} vs {other.var}")

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            term = f"{abs(c)}" if i == 0 else \
                (f"{abs(c)}*{self.var}" if i == 1 else f"{abs(c)}*{self.var}^{i}")
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def add(f: IntPoly, g: IntPoly) -> IntPoly:
    return f + g


def mul(f: IntPoly, g: IntPoly) -> IntPoly:
    return f * g


def scalar_mul(f: IntPoly, c: int) -> IntPoly:
    return f * c


def derivative(f: IntPoly) -> IntPoly:
    return IntPoly(tuple(i * f.coeffs[i] for i in range(1, len(f.coeffs))), f.var)


def content(f: IntPoly) -> int:
    return _content(list(f.coeffs), 1)


def primitive_part(f: IntPoly) -> IntPoly:
    if f.is_zero:
        return f
    c = content(f)
    return IntPoly(tuple(x // c for x in f.coeffs), f.var)


def exact_divide(f: IntPoly, g: IntPoly) -> IntPoly:
    """f / g when the division is exact over Z; DivisibilityError otherwise."""
    f._check_var(g)
    return IntPoly(tuple(_exact_div(list(f.coeffs), list(g.coeffs), 1)), f.var)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    f._check_var(g)
    return IntPoly(tuple(_ggcd(list(f.coeffs), list(g.coeffs), 1)), f.var)


def squarefree_part(f: IntPoly) -> IntPoly:
    """Primitive squarefree part: f / gcd(f, f'), content and sign stripped."""
    if f.is_zero:
        return f
    g = poly_gcd(f, derivative(f))
    out = primitive_part(exact_divide(f, g))
    return -out if out.leading < 0 else out


@dataclass(frozen=True)
class BiPoly:
    """Dense bivariate polynomial over Z; coeffs[i][j] multiplies u^i v^j."""

    coeffs: Tuple[Tuple[int, ...], ...]
    vars: Tuple[str, str] = ("u", "v")

    def __post_init__(self):
        rows = [list(r) for r in self.coeffs]
        width = max((len(r) for r in rows), default=0)
        rows = [r + [0] * (width - len(r)) for r in rows]
        while rows and all(c == 0 for c in rows[-1]):
            rows.pop()
        while rows and all(r[-1] == 0 for r in rows):
            rows = [r[:-1] for r in rows]
        object.__setattr__(self, "coeffs", tuple(tuple(r) for r in rows))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def deg_u(self) -> int:
        return len(self.coeffs) - 1

    @property
    def deg_v(self) -> int:
        return max((len(r) for r in self.coeffs), default=0) - 1

    def _like(self, nested) -> "BiPoly":
        return BiPoly(tuple(tuple(r) for r in nested), self.vars)

    def _nested(self):
        return [list(r) for r in self.coeffs]

    def __add__(self, other: "BiPoly") -> "BiPoly":
        return self._like(_add(self._nested(), other._nested(), 2))

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self._like(_sub(self._nested(), other._nested(), 2))

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, int):
            return self._like([[c * other for c in r] for r in self.coeffs])
        return self._like(_mul(self._nested(), other._nested(), 2))

    __rmul__ = __mul__

    def __neg__(self) -> "BiPoly":
        return self._like([[-c for c in r] for r in self.coeffs])

    def __pow__(self, k: int) -> "BiPoly":
        out = BiPoly(((1,),), self.vars)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, u: float, v: float) -> float:
        acc = 0.0
        for row in reversed(self.coeffs):
            racc = 0.0
            for c in reversed(row):
                racc = racc * v + c
            acc = acc * u + racc
        return acc

    def eval_fraction(self, u, v) -> Fraction:
        u, v = Fraction(u), Fraction(v)
        acc = Fraction(0)
        for row in reversed(self.coeffs):
            racc = Fraction(0)
            for c in reversed(row):
                racc = racc * v + c
            acc = acc * u + racc
        return acc

    @classmethod
    def mono(cls, c: int, i: int, j: int, vars=("u", "v")) -> "BiPoly":
        rows = [[0] * (j + 1) for _ in range(i + 1)]
        rows[i][j] = c
        return cls(tuple(tuple(r) for r in rows), vars)


def resultant(P: BiPoly, Q: BiPoly, eliminate: str, method: str = "subresultant") -> IntPoly:
    """Resultant of two bivariate polynomials, eliminating one variable.

    method="subresultant" is the primary path (subresultant PRS); "bareiss"
    evaluates the Sylvester determinant fraction-free and is retained as an
    independent cross-check for small dimensions.
    """
    if P.is_zero or Q.is_zero:
        raise InputDomainError("resultant of a zero polynomial")
    if eliminate not in P.vars:
        raise InputDomainError(f"unknown variable {eliminate!r}; have {P.vars}")
    keep = P.vars[1] if eliminate == P.vars[0] else P.vars[0]

    def main_major(poly):
        nested = poly._nested()
        if eliminate == poly.vars[0]:
            return nested
        width = max((len(r) for r in nested), default=0)
        return _trim([[row[j] if j < len(row) else 0 for row in nested]
                      for j in range(width)], 2)

    a, b = _trim(main_major(P), 2), _trim(main_major(Q), 2)
    if method == "subresultant":
        res = _subres_resultant(a, b, 2)
    elif method == "bareiss":
        res = _bareiss_resultant(a, b, 2)
    else:
        raise InputDomainError(f"unknown resultant method {method!r}")
    return IntPoly(tuple(res), keep)


# ===========================================================================
# the certification pipeline
# ===========================================================================

@dataclass(frozen=True)
class RationalExponents:
    """Exponents p = m/n and q = j/k in lowest terms, 1 < p < q."""

    m: int
    n: int
    j: int
    k: int

    def __post_init__(self):
        for name, val in (("m", self.m), ("n", self.n), ("j", self.j), ("k", self.k)):
            if not isinstance(val, int) or val <= 0:
                raise InputDomainError(f"{name} must be a positive integer")
        if math.gcd(self.m, self.n) != 1 or math.gcd(self.j, self.k) != 1:
            raise InputDomainError("exponents must be in lowest terms")
        if not self.m > self.n:
            raise InputDomainError("need p = m/n > 1")
        if not self.j * self.n > self.m * self.k:
            raise InputDomainError("need q = j/k > p = m/n")

    @classmethod
    def from_exponents(cls, p, q) -> "RationalExponents":
        p, q = Fraction(p), Fraction(q)
        return cls(p.numerator, p.denominator, q.numerator, q.denominator)

    @property
    def p(self) -> Fraction:
        return Fraction(self.m, self.n)

    @property
    def q(self) -> Fraction:
        return Fraction(self.j, self.k)


def build_system(re: RationalExponents, max_degree: int = 256) -> Tuple[BiPoly, BiPoly]:
    """The integer polynomial pair (P1, P2) vanishing at (u, v) = (x^(1/n), y^(1/k)).

    P1 clears the 1/p and 1/q radicals of the norm equation (raised to the
    power m*j); P2 is the second equation, polynomial after substitution.
    """
    m, n, j, k = re.m, re.n, re.j, re.k
    if max(m * n * j, m * j * k, m + n, j + k) > max_degree:
        raise CapacityError(f"system degree exceeds the cap {max_degree}")
    one = BiPoly.mono(1, 0, 0)
    u_m = BiPoly.mono(2, m, 0)
    u_n = BiPoly.mono(2, n, 0)
    v_k = BiPoly.mono(2, 0, k)
    v_j = BiPoly.mono(2, 0, j)
    P1 = (3 ** (m * k)) * ((one + u_m) ** (n * j)) * ((one + v_k) ** (m * j)) \
        - (3 ** (n * j)) * ((one + v_j) ** (m * k)) * ((one + u_n) ** (m * j))
    P2 = (one - BiPoly.mono(1, n, 0)) * (one - BiPoly.mono(1, m - n, 0)) * (one + v_j) \
        - (one - BiPoly.mono(1, 0, k)) * (one - BiPoly.mono(1, 0, j - k)) * (one + u_m)
    return P1, P2


def build_cross_ratio_poly(re: RationalExponents) -> dict:
    """P3 = r (1+2v^k)(1-u^n) - (1+2u^n)(1-v^k) as monomial dict {(i,j,l): c}
    over (u, v, r); encodes the cross-ratio relation between r and (u, v)."""
    n, k = re.n, re.k
    return {
        (0, 0, 1): 1, (0, k, 1): 2, (n, 0, 1): -1, (n, k, 1): -2,
        (0, 0, 0): -1, (0, k, 0): 1, (n, 0, 0): -2, (n, k, 0): 2,
    }


def _monos_to_level3(monos: dict):
    du = max(i for i, _, _ in monos)
    dv = max(j for _, j, _ in monos)
    dr = max(l for _, _, l in monos)
    out = [[[0] * (dr + 1) for _ in range(dv + 1)] for _ in range(du + 1)]
    for (i, j, l), c in monos.items():
        out[i][j][l] = c
    return _trim(out, 3)


def _bipoly_to_level3(P: BiPoly):
    return _trim([[[c] for c in row] for row in P.coeffs], 3)


def _strip_factor(f, factor, lvl):
    """Divide out every power of `factor` (same level) that divides f exactly."""
    count = 0
    while not _is_zero(f, lvl):
        try:
            f = _exact_div(f, factor, lvl)
            count += 1
        except DivisibilityError:
            break
    return f, count


def _strip_common_factor(a, b, factor, lvl):
    """Divide out powers of `factor` dividing BOTH a and b exactly."""
    count = 0
    while True:
        try:
            a2 = _exact_div(a, factor, lvl)
            b2 = _exact_div(b, factor, lvl)
        except DivisibilityError:
            break
        a, b, count = a2, b2, count + 1
    return a, b, count


@dataclass(frozen=True)
class CertifiedPoly:
    """A nonzero integer polynomial certified to (numerically) vanish at a root."""

    variable: str
    coefficients: Tuple[int, ...]   # lowest degree first
    evaluated_at: float
    abs_value: float
    bound: float

    def to_json(self) -> str:
        return json.dumps({
            "variable": self.variable,
            "coefficients": [str(c) for c in self.coefficients],
            "evaluated_at": self.evaluated_at,
            "abs_value": self.abs_value,
            "bound": self.bound,
        })

    @property
    def poly(self) -> IntPoly:
        return IntPoly(self.coefficients, self.variable)


def certify(re: RationalExponents, r_numeric: float, rel_tol: float = 1e-6) -> CertifiedPoly:
    """Eliminate (u, v) by resultants and certify r_numeric as an algebraic number.

    Chain: R1 = Res_u(P1, P3), R2 = Res_u(P2, P3), R = Res_v(R1, R2); the
    output is the primitive squarefree part of R.  Both eliminants carry
    spurious common factors along which P3 degenerates for every r: powers of
    (v - 1), from the boundary solution (u, v) = (1, 1), and powers of
    (1 + 2 v^k), from the locus u^n = v^k = -1/2 where all three input
    polynomials vanish identically in r.  These (and polynomial content) are
    divided out first, otherwise the final resultant would vanish
    identically; any residual common factor is caught by a gcd fallback.
    The certificate requires

        |R(r_numeric)| < rel_tol * max|coeff| * max(1, |r|)^deg.
    """
    P1, P2 = build_system(re)
    p3 = _monos_to_level3(build_cross_ratio_poly(re))
    r1 = _subres_resultant(_bipoly_to_level3(P1), p3, 3)   # in Z[v, r]
    r2 = _subres_resultant(_bipoly_to_level3(P2), p3, 3)
    if _is_zero(r1, 2) or _is_zero(r2, 2):
        raise CertificationError("elimination degenerated: a u-resultant vanished")

    v_minus_1 = [[-1], [1]]  # v - 1 over Z[r]
    r1, _ = _strip_factor(r1, v_minus_1, 2)
    r2, _ = _strip_factor(r2, v_minus_1, 2)
    r1 = _primitive(r1, 2)
    r2 = _primitive(r2, 2)
    one_plus_2vk = [[1]] + [[0]] * (re.k - 1) + [[2]]  # 1 + 2 v^k over Z[r]
    r1, r2, _ = _strip_common_factor(r1, r2, one_plus_2vk, 2)

    res = _resultant_v_interp(r1, r2)  # in Z[r]
    if _is_zero(res, 1):
        # the eliminants still share a factor; remove their gcd and retry
        g = _ggcd(r1, r2, 2)
        if _deg(g) > 0 or not _is_zero(_sub(g, [_one(1)], 2), 2):
            r1 = _exact_div(r1, g, 2)
            r2 = _exact_div(r2, g, 2)
            res = _resultant_v_interp(r1, r2)
    if _is_zero(res, 1):
        raise CertificationError(
            "elimination degenerated: Res_v is identically zero "
            f"(deg_v R1 = {_deg(r1)}, deg_v R2 = {_deg(r2)})")

    out = squarefree_part(IntPoly(tuple(res), "r"))
    value, err, scale = compensated_horner(out.coeffs, r_numeric)
    bound = rel_tol * scale
    abs_value = abs(value)
    if abs_value + err >= bound and abs_value - err <= bound:
        # the float evaluation cannot decide; settle it exactly
        abs_value = abs(float(out.eval_fraction(r_numeric)))
    if not abs_value < bound:
        raise CertificationError(
            f"certificate rejected: |R(r)| = {abs_value:.6e} >= bound {bound:.6e}")
    return CertifiedPoly(variable="r", coefficients=out.coeffs,
                         evaluated_at=r_numeric, abs_value=abs_value, bound=bound)


# ===========================================================================
# compensated evaluation and the built-in degree-20 certificate
# ===========================================================================

def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


_SPLITTER = 134217729.0  # 2^27 + 1


def _two_prod(a: float, b: float):
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def compensated_horner(coeffs, x: float):
    """Evaluate sum(coeffs[i] x^i) as if in twice the working precision.

    Returns (value, error_bound, scale) where |value - exact| <= error_bound
    (a running bound in the style of the compensated Horner literature, with
    a safety factor) and scale = max|coeff| * max(1, |x|)^deg is the natural
    magnitude yardstick for root tests.  Raises OverflowError if the
    coefficients do not fit in binary64; callers fall back to exact
    evaluation.
    """
    cs = [float(c) for c in coeffs]
    if any(math.isinf(c) for c in cs):
        raise OverflowError("coefficients exceed binary64 range")
    if not cs:
        return 0.0, 0.0, 0.0
    n = len(cs) - 1
    s = cs[-1]
    comp = 0.0
    abs_acc = abs(cs[-1])
    ax = abs(x)
    for i in range(n - 1, -1, -1):
        p, pi = _two_prod(s, x)
        s, sg = _two_sum(p, cs[i])
        comp = comp * x + (pi + sg)
        abs_acc = abs_acc * ax + abs(cs[i])
    value = s + comp
    u = 2.0 ** -53
    gam = (4 * n + 2) * u / (1.0 - (4 * n + 2) * u)
    err = u * abs(value) + 2.0 * (gam * gam * abs_acc + u * u * abs_acc)
    # conversion of big-int coefficients to float adds <= u relative each
    err += 2.0 * u * abs_acc
    scale = max(abs(c) for c in cs) * max(1.0, ax) ** n
    return value, err, scale


def verify_root(P: IntPoly, r: float, rel_tol: float) -> bool:
    """True iff |P(r)| <= rel_tol * max|coeff| * max(1,|r|)^deg.

    Uses compensated Horner with a running error bound; if the bound straddles
    the threshold (or the coefficients overflow binary64), the value is
    recomputed exactly over Q, which is conclusive.
    """
    if rel_tol < 1e-10:
        raise InputDomainError("rel_tol below 1e-10 is tighter than the evaluation model")
    if P.is_zero:
        return True
    try:
        value, err, scale = compensated_horner(P.coeffs, r)
        thresh = rel_tol * scale
        if abs(value) + err <= thresh:
            return True
        if abs(value) - err > thresh:
            return False
    except OverflowError:
        pass
    exact = P.eval_fraction(r)
    scale = Fraction(max(abs(c) for c in P.coeffs)) * Fraction(max(1.0, abs(r))) ** P.degree
    return abs(exact) <= Fraction(rel_tol) * scale


_P20_COEFFS_DESC = (
    2600125, 2600125, -54275, 3456600, -1846590, -5287590, 901467, -3882063,
    1557057, 4269364, -3942536, 1575484, 1067232, -1287048, 407592, 97920,
    -118680, 17160, -5540, -20, -20,
)


def paper_p20() -> IntPoly:
    """The degree-20 minimal polynomial of the optimal (3, 6) constant.

    2600125 r^20 + 2600125 r^19 - 54275 r^18 + 3456600 r^17 - 1846590 r^16
    - 5287590 r^15 + 901467 r^14 - 3882063 r^13 + 1557057 r^12
    + 4269364 r^11 - 3942536 r^10 + 1575484 r^9 + 1067232 r^8
    - 1287048 r^7 + 407592 r^6 + 97920 r^5 - 118680 r^4 + 17160 r^3
    - 5540 r^2 - 20 r - 20.
    """
    return IntPoly(tuple(reversed(_P20_COEFFS_DESC)), "r")


def radical_quartic_24() -> IntPoly:
    """7 r^4 + 4 r^2 - 2: eliminates the radical from the (2, 4) closed form,
    so the optimal (2, 4) constant is one of its roots."""
    return IntPoly((-2, 0, 4, 0, 7), "r")
