import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from pentacycle.exact import UniPoly, discriminant
from pentacycle.localnum import (IndeterminateError, NonSquareError, PadicNum, PadicSeriesTrunc, hensel_sqrt,
                                 legendre, legendre_euler, real_factor_pattern, strassman_bound, vp,
                                 zp_integer_root_count, zp_root_count_bruteforce)

F = UniPoly([1, 6, 5, 22, 22, 8, 1])
H = UniPoly([477968, 565728, 244664, 89560, 38705, 8976, 2186, 654, 53, 22, 1])


def test_padic_basics():
    a = PadicNum(Fraction(-9, 14), 3, 4)
    assert a.valuation == 2 and a.residue() == 63
    assert (a + PadicNum(9, 3, 4)).residue() == 72 % 81
    assert (a * PadicNum(3, 3, 4)).valuation == 3
    z = PadicNum(81, 3, 4)
    assert z.is_zero() and z.valuation == 4
    assert (z * PadicNum(3, 3, 4)).precision == 5
    with pytest.raises(ZeroDivisionError):
        z.inverse()
    with pytest.raises(TypeError):
        hash(a)


def test_legendre_values():
    assert legendre(185, 3701) == 1
    assert legendre(-1375, 3701) == 1
    assert legendre(-1731, 3701) == -1
    assert legendre(2, 3701) == -1


@given(st.integers(-10**6, 10**6), st.sampled_from([3, 5, 7, 3701, 10007]))
def test_legendre_two_routes(a, p):
    assert legendre(a, p) == legendre_euler(a, p)


@pytest.mark.parametrize("p", [2, 3, 3701])
def test_hensel_sqrt_on_random_units(p):
    rng = random.Random(p)
    k = 12 if p != 3701 else 4
    done = 0
    while done < 100:
        b = rng.randrange(1, p**k)
        if b % p == 0:
            continue
        a = PadicNum(b * b, p, k)
        r = hensel_sqrt(a)
        assert (r * r) == PadicNum(b * b, p, r.precision)
        done += 1


def test_hensel_sqrt_examples():
    r = hensel_sqrt(PadicNum(881, 2, 10))
    assert (r.residue() ** 2 - 881) % 2**9 == 0
    with pytest.raises(NonSquareError):
        hensel_sqrt(PadicNum(2, 3701, 4))
    with pytest.raises(NonSquareError):
        hensel_sqrt(PadicNum(3, 2, 10))


def test_root_counts():
    assert zp_integer_root_count(F, 2) == 0
    assert zp_integer_root_count(H, 2) == 0
    assert zp_integer_root_count(F, 3701) == 1
    assert real_factor_pattern(F) == [(1, 1), (1, 1), (2, 1), (2, 1)]


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3), st.lists(st.integers(-20, 20), min_size=2, max_size=4),
       st.sampled_from([3, 5, 7]))
def test_root_count_vs_bruteforce(roots, other, p):
    other = UniPoly(other)
    assume(other.degree >= 1)
    g = UniPoly.from_roots(roots) * other
    assume(g.is_squarefree())
    d = int(abs(discriminant(g)))
    assume(d != 0)
    k = 2 * vp(d, p) + 3
    assume(p**k <= 10**5)
    assert zp_integer_root_count(g, p) == zp_root_count_bruteforce(g, p, k)


def test_strassman_examples():
    assert strassman_bound(PadicSeriesTrunc(3, (0, 27, 0, 0, 0), 4, (5, 4))) == 1
    assert strassman_bound(PadicSeriesTrunc(3, (9, 0, 18, 0, 0), 3, (5, 3))) == 2
    assert strassman_bound(PadicSeriesTrunc(3, (3, 1), 4, (2, math.inf))) == 1
    with pytest.raises(IndeterminateError):
        strassman_bound(PadicSeriesTrunc(3, (0, 0, 0), 2, (3, 2)))
    with pytest.raises(IndeterminateError):
        strassman_bound(PadicSeriesTrunc(3, (9, 0), 4, (2, 2)))


@given(st.lists(st.integers(0, 80), min_size=2, max_size=6), st.integers(0, 80))
def test_strassman_monotone_when_appending_a_higher_valuation_term(coeffs, extra):
    base = PadicSeriesTrunc(3, tuple(coeffs), 4, (len(coeffs), 4))
    try:
        r = strassman_bound(base)
    except IndeterminateError:
        return
    m = min(v for i, v in enumerate(base.valuations()) if not base.is_tracked_zero(i))
    c = extra * 3 ** (m + 1)
    longer = PadicSeriesTrunc(3, tuple(coeffs) + (c,), 4, (len(coeffs) + 1, 4))
    assert strassman_bound(longer) == r
    # raising the valuation of every coefficient by one never changes the bound
    scaled = PadicSeriesTrunc(3, tuple(3 * x for x in coeffs), 5, (len(coeffs), 5))
    assert strassman_bound(scaled) == r
