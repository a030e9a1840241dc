"""Exact layer: integer polynomial arithmetic, resultants (both paths),
the Appendix-style system builder, and certification on the light cases.
The heavy (3, 6) elimination runs in the acceptance module."""

import json
import random
from fractions import Fraction

import pytest

from hyperc import exact
from hyperc.core import ExponentPair
from hyperc.errors import CapacityError, DivisibilityError, InputDomainError
from hyperc.exact import (BiPoly, IntPoly, RationalExponents, build_system,
                          certify, compensated_horner, content, derivative,
                          exact_divide, paper_p20, poly_gcd, primitive_part,
                          radical_quartic_24, resultant, scalar_mul,
                          squarefree_part, verify_root)
from hyperc.solver import solve_z3

X2M1 = IntPoly((-1, 0, 1))   # x^2 - 1
XP1 = IntPoly((1, 1))        # x + 1
XM1 = IntPoly((-1, 1))       # x - 1


def _rand_intpoly(rng, max_deg=4, max_coeff=9):
    deg = rng.randint(0, max_deg)
    c = [rng.randint(-max_coeff, max_coeff) for _ in range(deg)]
    c.append(rng.randint(1, max_coeff))
    return IntPoly(tuple(c))


def _as_bipoly(f: IntPoly) -> BiPoly:
    return BiPoly(tuple((c,) for c in f.coeffs))


# --------------------------------------------------------------------------
# polynomial ring operations
# --------------------------------------------------------------------------

def test_poly_arith_examples():
    assert (XM1 * XP1).coeffs == X2M1.coeffs
    f = IntPoly((0, 9, 6))           # 6x^2 + 9x
    assert content(f) == 3
    assert primitive_part(f).coeffs == (0, 3, 2)
    assert exact_divide(X2M1, XP1).coeffs == XM1.coeffs
    assert derivative(IntPoly((5, -1, 0, 2))).coeffs == (-1, 0, 6)
    assert scalar_mul(XP1, -3).coeffs == (-3, -3)
    assert (XP1 + XM1).coeffs == (0, 2)


def test_exact_divide_rejects_remainder():
    with pytest.raises(DivisibilityError):
        exact_divide(IntPoly((1, 0, 1)), XP1)   # x^2 + 1 by x + 1


def test_poly_gcd_and_squarefree():
    f = XM1 * XM1 * XP1 * 6
    # gcd over Z includes the integer content: gcd(f, f') = 6 (x - 1)
    assert poly_gcd(f, derivative(f)).coeffs == (6 * XM1).coeffs
    assert squarefree_part(f).coeffs == (XM1 * XP1).coeffs


def test_zero_trimming_invariant():
    f = IntPoly((1, 2, 0, 0))
    assert f.coeffs == (1, 2) and f.degree == 1
    assert IntPoly(()).is_zero


# --------------------------------------------------------------------------
# resultants
# --------------------------------------------------------------------------

def test_resultant_example_values():
    # Res(x^2-1, x-2) = lc(f)^deg(g) * g(1) * g(-1) = (1-2)(-1-2) = 3
    assert resultant(_as_bipoly(X2M1), _as_bipoly(IntPoly((-2, 1))), "u").coeffs == (3,)
    assert resultant(_as_bipoly(X2M1), _as_bipoly(X2M1), "u").is_zero


def test_resultant_linear_symbolic():
    # Res_x(x - a, x - b) = a - b; here a is the second variable, b an integer
    P = BiPoly(((0, -1), (1, 0)))    # x - a, vars (x, a)
    for b in (-3, 0, 2, 7):
        Q = BiPoly(((-b,), (1,)))
        res = resultant(P, Q, "u")
        assert res.coeffs == IntPoly((-b, 1)).coeffs  # a - b


def test_resultant_eliminating_second_variable():
    # P = u - v (lc_v = -1), Q = v - 5: Res_v(P, Q) = lc_v(P)^1 * Q(v=u) * (-1)^0
    # evaluated through the product formula = -(u - 5) = 5 - u
    P = BiPoly(((0, -1), (1,)))
    Q = BiPoly(((-5, 1),))
    assert resultant(P, Q, "v").coeffs == (5, -1)
    assert resultant(Q, P, "v").coeffs == (-5, 1)


def test_resultant_rejects_zero_and_bad_variable():
    with pytest.raises(InputDomainError):
        resultant(_as_bipoly(IntPoly(())), _as_bipoly(XP1), "u")
    with pytest.raises(InputDomainError):
        resultant(_as_bipoly(XP1), _as_bipoly(XM1), "w")


def test_resultant_swap_sign_law():
    rng = random.Random(0)
    for _ in range(60):
        f, g = _rand_intpoly(rng), _rand_intpoly(rng)
        if f.degree < 1 or g.degree < 1:
            continue
        r1 = resultant(_as_bipoly(f), _as_bipoly(g), "u")
        r2 = resultant(_as_bipoly(g), _as_bipoly(f), "u")
        sign = (-1) ** (f.degree * g.degree)
        assert r1.coeffs == (sign * r2).coeffs


def test_resultant_multiplicativity():
    rng = random.Random(1)
    for _ in range(40):
        f, g, h = (_rand_intpoly(rng) for _ in range(3))
        if h.degree < 1:
            continue
        lhs = resultant(_as_bipoly(f * g), _as_bipoly(h), "u")
        rhs = resultant(_as_bipoly(f), _as_bipoly(h), "u") \
            * resultant(_as_bipoly(g), _as_bipoly(h), "u")
        assert lhs.coeffs == rhs.coeffs


def test_subresultant_equals_bareiss():
    rng = random.Random(2)
    checked = 0
    while checked < 60:
        f, g = _rand_intpoly(rng, max_deg=6), _rand_intpoly(rng, max_deg=6)
        if f.degree + g.degree > 24 or (f.degree == 0 and g.degree == 0):
            continue
        a, b = _as_bipoly(f), _as_bipoly(g)
        assert resultant(a, b, "u").coeffs == resultant(a, b, "u", method="bareiss").coeffs
        checked += 1


def test_subresultant_equals_bareiss_bivariate():
    rng = random.Random(3)
    checked = 0
    while checked < 25:
        rows = tuple(tuple(rng.randint(-4, 4) for _ in range(rng.randint(1, 3)))
                     for _ in range(rng.randint(2, 5)))
        P = BiPoly(rows)
        rows2 = tuple(tuple(rng.randint(-4, 4) for _ in range(rng.randint(1, 3)))
                      for _ in range(rng.randint(2, 5)))
        Q = BiPoly(rows2)
        if P.is_zero or Q.is_zero or P.deg_u + Q.deg_u > 24:
            continue
        assert resultant(P, Q, "u").coeffs == resultant(P, Q, "u", method="bareiss").coeffs
        checked += 1


def test_bareiss_dimension_cap():
    big = BiPoly(tuple((1,) for _ in range(20)))
    with pytest.raises(CapacityError):
        resultant(big, big * big, "u", method="bareiss")


# --------------------------------------------------------------------------
# rational exponents and the system builder
# --------------------------------------------------------------------------

def test_rational_exponents_validation():
    re = RationalExponents.from_exponents("3/2", 3)
    assert (re.m, re.n, re.j, re.k) == (3, 2, 3, 1)
    assert re.p == Fraction(3, 2) and re.q == 3
    with pytest.raises(InputDomainError):
        RationalExponents(4, 2, 6, 1)        # not in lowest terms
    with pytest.raises(InputDomainError):
        RationalExponents.from_exponents(2, 2)
    with pytest.raises(InputDomainError):
        RationalExponents.from_exponents("1/2", 2)


def test_build_system_24_matches_expansion():
    P1, P2 = build_system(RationalExponents.from_exponents(2, 4))
    one = BiPoly.mono(1, 0, 0)
    P1_ref = 9 * ((one + BiPoly.mono(2, 2, 0)) ** 4) * ((one + BiPoly.mono(2, 0, 1)) ** 8) \
        - 81 * ((one + BiPoly.mono(2, 0, 4)) ** 2) * ((one + BiPoly.mono(2, 1, 0)) ** 8)
    P2_ref = (one - BiPoly.mono(1, 1, 0)) ** 2 * (one + BiPoly.mono(2, 0, 4)) \
        - (one - BiPoly.mono(1, 0, 1)) * (one - BiPoly.mono(1, 0, 3)) \
        * (one + BiPoly.mono(2, 2, 0))
    assert P1.coeffs == P1_ref.coeffs
    assert P2.coeffs == P2_ref.coeffs


def test_build_system_vanishes_at_boundary_and_solution():
    for (p, q) in ((2, 4), (3, 6), ("3/2", 3)):
        re = RationalExponents.from_exponents(p, q)
        P1, P2 = build_system(re)
        assert P1.eval_fraction(1, 1) == 0
        assert P2.eval_fraction(1, 1) == 0
        sol = solve_z3(ExponentPair(float(re.p), float(re.q)))
        u = sol.x ** (1.0 / re.n)
        v = sol.y ** (1.0 / re.k)
        scale1 = max(abs(c) for row in P1.coeffs for c in row)
        scale2 = max(abs(c) for row in P2.coeffs for c in row)
        assert abs(P1(u, v)) < 1e-8 * scale1
        assert abs(P2(u, v)) < 1e-8 * scale2


def test_build_system_36_degrees():
    P1, P2 = build_system(RationalExponents.from_exponents(3, 6))
    assert (P1.deg_u, P1.deg_v) == (18, 18)
    assert (P2.deg_u, P2.deg_v) == (3, 6)


def test_build_system_degree_cap():
    with pytest.raises(CapacityError):
        build_system(RationalExponents.from_exponents(Fraction(7, 5), Fraction(47, 9)),
                     max_degree=64)


# --------------------------------------------------------------------------
# certification (light cases) and root verification
# --------------------------------------------------------------------------

def test_certify_24_contains_radical_quartic():
    r24 = solve_z3(ExponentPair(2.0, 4.0), tol=1e-12).r
    cert = certify(RationalExponents.from_exponents(2, 4), r24)
    quotient = exact_divide(cert.poly, radical_quartic_24())
    assert quotient.degree == cert.poly.degree - 4
    assert cert.abs_value < cert.bound


def test_certify_32_3_full_pipeline():
    pair = ExponentPair(1.5, 3.0)
    cert = certify(RationalExponents.from_exponents("3/2", 3), solve_z3(pair).r)
    assert not cert.poly.is_zero
    assert cert.abs_value < cert.bound


def test_certified_poly_json_schema():
    r24 = solve_z3(ExponentPair(2.0, 4.0), tol=1e-12).r
    cert = certify(RationalExponents.from_exponents(2, 4), r24)
    doc = json.loads(cert.to_json())
    assert set(doc) == {"variable", "coefficients", "evaluated_at", "abs_value", "bound"}
    assert doc["variable"] == "r"
    assert all(isinstance(c, str) for c in doc["coefficients"])
    assert int(doc["coefficients"][-1]) == cert.poly.leading


def test_paper_p20_transcription():
    p20 = paper_p20()
    assert p20.degree == 20
    assert p20.leading == 2600125
    assert p20.coeffs[0] == -20 and p20.coeffs[1] == -20
    assert content(p20) == 1


def test_verify_root_cases():
    r24 = solve_z3(ExponentPair(2.0, 4.0)).r
    assert verify_root(radical_quartic_24(), r24, 1e-6)
    assert verify_root(radical_quartic_24(), 0.5660188, 1e-6)  # rounded decimal
    assert not verify_root(paper_p20(), 0.5, 1e-6)
    with pytest.raises(InputDomainError):
        verify_root(paper_p20(), 0.5, 1e-12)


def test_verify_root_huge_coefficients_exact_path():
    # coefficients far beyond binary64: the exact fallback must decide
    big = 10 ** 400
    f = IntPoly((-big, 0, big))   # big (x^2 - 1)
    assert verify_root(f, 1.0, 1e-6)
    assert not verify_root(f, 1.25, 1e-6)


def test_compensated_horner_bound():
    coeffs = paper_p20().coeffs
    val, err, scale = compensated_horner(coeffs, 0.62365304376670)
    exact_val = float(paper_p20().eval_fraction(0.62365304376670))
    assert abs(val - exact_val) <= err
    assert scale == pytest.approx(5287590.0)  # max |coeff|, and max(1,|r|)^20 = 1
