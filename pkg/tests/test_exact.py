from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from pentacycle.exact import (UniPoly, discriminant, factor_degree_pattern, poly_gcd, poly_xgcd, rational_roots,
                              rational_roots_by_divisors, resultant, sturm_real_root_count, sylvester_resultant)

small = st.integers(-9, 9)
polys = st.lists(small, min_size=2, max_size=6).filter(lambda c: c[-1] != 0)
X = sympy.symbols("x")


def to_sympy(p):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i for i, c in enumerate(p.coeffs))


def test_arithmetic_roundtrip():
    a = UniPoly([1, 2, 3])
    b = UniPoly([-1, 1])
    q, r = a.divmod(b)
    assert q * b + r == a
    assert (a * b).exact_div(b) == a


def test_degree_is_property():
    assert UniPoly([0, 0, 1]).degree == 2


@given(polys, polys)
def test_resultant_two_routes(a, b):
    A, B = UniPoly(a), UniPoly(b)
    assert resultant(A, B) == sylvester_resultant(A, B)


@given(polys, polys, polys)
def test_resultant_multiplicative(a, b, c):
    A, B, C = UniPoly(a), UniPoly(b), UniPoly(c)
    assert resultant(A * B, C) == resultant(A, C) * resultant(B, C)


@given(polys)
def test_discriminant_against_sympy(a):
    A = UniPoly(a)
    if A.degree < 1:
        return
    want = sympy.discriminant(to_sympy(A), X) if A.degree > 1 else 1
    assert discriminant(A) == Fraction(int(sympy.numer(want)), int(sympy.denom(want)))


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=1, max_size=4), polys)
def test_rational_roots_finds_planted_roots(roots, other):
    A = UniPoly.from_roots(roots) * UniPoly(other)
    got = rational_roots(A)
    for r in roots:
        assert r in got
    assert sorted(got) == sorted(rational_roots_by_divisors(A))


@given(polys, polys)
def test_xgcd_bezout(a, b):
    A, B = UniPoly(a), UniPoly(b)
    g, s, t = poly_xgcd(A, B)
    assert s * A + t * B == g
    assert g.monic() == poly_gcd(A, B).monic()


def test_sextic_disc_and_patterns():
    f = UniPoly([1, 6, 5, 22, 22, 8, 1])
    assert discriminant(f) == 2**12 * 3701
    assert factor_degree_pattern([1, 6, 5, 22, 22, 8, 1], 17) == [6]
    assert sturm_real_root_count(f) == 2


def test_rational_roots_rejects_zero():
    with pytest.raises(ValueError):
        rational_roots(UniPoly([]))
