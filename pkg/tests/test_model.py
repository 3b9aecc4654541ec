from fractions import Fraction

import pytest

from pentacycle.dynatomic import tau_fixture
from pentacycle.exact import BiPoly, UniPoly, discriminant
from pentacycle.model import (INF_MINUS, INF_PLUS, c_map, cmap_identity_factor, curve_C, hyperelliptic_chain,
                              node_check, singular_points)


def test_trace_curve_has_one_node():
    pts, nonrational, cert = singular_points(tau_fixture(5))
    assert pts == [(Fraction(-1), Fraction(-4, 3))]
    assert nonrational == []
    assert node_check(tau_fixture(5), pts[0]) == "node"


def test_cusp_and_conic():
    cusp = BiPoly({(0, 2): 1, (3, 0): -1})
    pts, _, _ = singular_points(cusp)
    assert pts == [(0, 0)]
    assert node_check(cusp, (0, 0)) == "not-node"
    conic = BiPoly({(2, 0): 1, (0, 2): 1, (0, 0): -1})
    assert singular_points(conic)[0] == []
    with pytest.raises(ValueError):
        node_check(conic, (1, 0))


def test_chain_reproduces_every_step():
    curve, steps = hyperelliptic_chain()
    assert all(s.matches() for s in steps)
    assert curve.f == UniPoly([1, 6, 5, 22, 22, 8, 1])
    assert discriminant(curve.f) == 2**12 * 3701


def test_c_formulas_agree_with_factor_four():
    x = UniPoly.x()
    assert cmap_identity_factor() == UniPoly([4]) * x * x * (x + 3) * (x + 3)


def test_c_at_affine_points():
    assert c_map((Fraction(0), Fraction(-1))) == Fraction(-16, 9)
    assert c_map((Fraction(-3), Fraction(1))) == Fraction(-64, 9)
    assert c_map((Fraction(0), Fraction(1))) == "inf"
    assert c_map((Fraction(-3), Fraction(-1))) == "inf"


def test_c_at_infinity_by_our_labels():
    # our inf+ is the branch y ~ +x^3; the printed table has the two labels the other way round
    assert c_map(INF_PLUS) == -2
    assert c_map(INF_MINUS) == "inf"


def test_small_points():
    pts = curve_C().small_points(10)
    assert len(pts) == 6
