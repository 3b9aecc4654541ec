from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pentacycle.exact import UniPoly
from pentacycle.lfield import (LElem, check_completion, claimed_norms, completion_3701, l_norm, l_norm_matrix,
                               local_square_class_test, named_elements, reduction_mod_2, two_maximal_order,
                               verify_element_factorizations, verify_norms)

small = st.lists(st.integers(-9, 9), min_size=1, max_size=6).map(lambda c: LElem(c)).filter(lambda x: not x.is_zero())


def test_named_norms_both_routes():
    els = named_elements()
    for row in verify_norms():
        assert row["ok"], row
        assert l_norm_matrix(els[row["name"]]) == row["claimed"]
    assert claimed_norms()["beta3"] == 3701**3


@given(small, small)
@settings(max_examples=50)
def test_norm_multiplicative(a, b):
    assert l_norm(a * b) == l_norm(a) * l_norm(b)


@given(small)
@settings(max_examples=50)
def test_norm_routes_agree(a):
    assert l_norm(a) == l_norm_matrix(a)


def test_inverse_and_power():
    t = LElem.T()
    assert (t * t.inverse()) == LElem(1)
    assert t**7 == t * t**6
    assert (LElem(Fraction(1, 2)) + 1) * 2 == LElem(3)


def test_prime_factorizations():
    out = {row["prime"]: row for row in verify_element_factorizations()}
    assert out[2]["exact"] and out[2]["product"] == {"alpha": 2, "u2": 1}
    assert out[3701]["exact"] and out[3701]["product"] == {"beta1": 1, "beta2": 2, "beta3": 1}


def test_two_maximal_order():
    r = two_maximal_order()
    assert r.index == 8
    assert r.v2_disc_equation_order == 12 and r.v2_disc_order == 6
    assert all(r.contains_printed.values())


def test_completion_at_3701():
    assert all(check_completion(completion_3701()).values())


def test_reduction_mod_2():
    assert reduction_mod_2()


@pytest.mark.parametrize("name,p,nontrivial", [
    ("u1", 2, True), ("u3", 2, True), ("alpha", 2, True), ("-1", 2, False), ("u2", 2, False),
    ("alpha", 3701, True), ("beta1", 3701, True), ("u1", 3701, False), ("-1", 3701, False),
])
def test_local_square_classes(name, p, nontrivial):
    assert local_square_class_test(named_elements()[name], p).nontrivial is nontrivial


def test_square_times_rational_is_trivial():
    x = named_elements()["beta1"]
    assert not local_square_class_test(x * x * 3, 3701).nontrivial
    assert not local_square_class_test(x * x * 3, 2).nontrivial
