import itertools

import pytest
from hypothesis import given, strategies as st

from pentacycle import endo as E
from pentacycle.exact import UniPoly


@pytest.mark.parametrize("coeffs,group,subs", [
    ([-2, 0, 0, 0, 1], "D4", [2]),
    ([1, 1, 1, 1, 1], "C4", [5]),
    ([1, 0, 0, 0, 1], "V4", [-2, -1, 2]),
    ([12, 8, 0, 0, 1], "A4", []),
    ([1, 1, 0, 0, 1], "S4", []),
    ([25, 5, 9, 1, 1], "D4", [5]),
    ([49, 14, 4, 2, 1], "D4", [11]),
])
def test_quartic_galois(coeffs, group, subs):
    a = E.quartic_galois(UniPoly(coeffs))
    assert a.galois_group == group
    assert a.subfields == subs


@pytest.mark.parametrize("coeffs", [[1, 0, -3, 0, 1], [-1, 0, 0, 0, 1], [0, 1, 0, 0, 1]])
def test_reducible_quartics_rejected(coeffs):
    with pytest.raises(E.ReducibleError):
        E.quartic_galois(UniPoly(coeffs))


@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4, unique=True))
def test_pair_sum_resolvent_on_split_quartics(roots):
    q = UniPoly.from_roots(roots)
    expect = UniPoly.from_roots([a + b for a, b in itertools.combinations(roots, 2)])
    assert E.pair_sum_resolvent(q) == expect


@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4, unique=True))
def test_charpoly_of_square_on_split_quartics(roots):
    q = UniPoly.from_roots(roots)
    assert E.charpoly_of_square(q) == UniPoly.from_roots([r * r for r in roots])


def test_resolvent_examples():
    assert E.pair_sum_resolvent(UniPoly([-1, 0, 0, 0, 1])) == UniPoly([0, 0, 4, 0, 0, 0, 1])
    assert E.charpoly_of_square(UniPoly([9, 0, -1, 0, 1])).to_text() == "81,-18,19,-2,1"


def test_end_is_z():
    c = E.end_is_z_certificate()
    assert not c["p3"]["usable"]
    assert c["p5"]["galois_group"] == "D4" and c["p5"]["golden_divides"]
    assert c["p5"]["obstruction"]["holds"]
    assert c["p7"]["quadratic_subfield_disc"] == 11 and not c["p7"]["golden_divides"]
    assert c["absolutely_simple"] and c["end_is_z"]
    assert c["genus_x0_3701_identity"] == 308
    assert c["infinity_difference_nontorsion"]["non_torsion"]
