import math
import random
from fractions import Fraction

import pytest

from pentacycle import descent as D
from pentacycle.jacobian import D_class, jacobian_C
from pentacycle.lfield import l_norm


def test_partition_resolvent_matches_printed():
    assert D.partition_resolvent() == D.printed_resolvent()


@pytest.mark.parametrize("place,orbits,quot", [
    (2, ((2, 3),), (4, 2)),
    (3701, ((1, 1), (2, 1), (1, 3)), (2, 2)),
    ("inf", ((1, 1), (1, 1), (2, 1), (2, 1)), (1, 1)),
])
def test_local_patterns(place, orbits, quot):
    assert D.local_pattern(place).orbits == orbits
    assert D.local_quotient_sizes(place) == quot


@pytest.mark.parametrize("sizes", list(D.partitions_of(6)))
def test_two_torsion_formula_vs_bruteforce(sizes):
    assert D.two_torsion_count(sizes) == D.two_torsion_bruteforce(sizes)


def test_partition_count():
    assert len(list(D.partitions_of(6))) == 11


@pytest.mark.parametrize("place", [2, 3701, "inf"])
def test_halves_models(place):
    halves, roots, parts = D.halves_orbit_check(D.GROUP_MODELS[place])
    assert halves == roots + parts
    assert D.halves_index(place) in (1, 2)


def test_h_basis():
    hb = D.h_group_basis()
    assert hb.names() == ["u1", "u3*beta1*beta2"]


def _span(vectors):
    out = {tuple([0] * 8)}
    for v in vectors:
        out |= {tuple(a ^ b for a, b in zip(w, v)) for w in out}
    return out


def test_h_basis_invariant_under_generator_order():
    base = D.h_group_basis()
    W = [D._vec(p) for p in base.rational_images.values()]
    ref = _span(base.h_basis + W)
    rng = random.Random(7)
    for _ in range(6):
        order = list(D.GENERATORS)
        rng.shuffle(order)
        hb = D.h_group_basis(tuple(order))
        assert len(hb.h_basis) == 2
        back = []
        for v in hb.h_basis:
            named = dict(zip(order, v))
            back.append([named[g] for g in D.GENERATORS])
        assert _span(back + W) == ref


def test_h_prime_trivial_and_rank():
    assert D.h_prime_is_trivial()["trivial"]
    rank, detail = D.rank_certificate()
    assert rank == 1
    assert detail["J_mod_2J"] == 2 and detail["torsion_bound"] == 1


def test_generator_checks():
    g = D.generator_checks()
    assert g["f(2)"] == 881 and g["f(2)_is_2adic_square"]
    assert g["f(-4)"] == 185 and g["f(-4)_legendre"] == 1
    assert g["legendre(2,3701)"] == -1


def test_good_reduction_identity():
    assert D.good_reduction_identity()


def _is_rational_square(q):
    q = Fraction(q)
    return q >= 0 and all(math.isqrt(v) ** 2 == v for v in (q.numerator, q.denominator))


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_x_minus_T_image_has_square_norm(k):
    # the norm of the image of [P1 + P2 - inf+ - inf-] is f(x1) f(x2) = (y1 y2)^2
    J = jacobian_C()
    img = D.x_minus_T_image(J.scalar_mul(k, D_class(J)), J)
    assert _is_rational_square(l_norm(img))


def test_point_image_norm_is_f():
    x = Fraction(3, 5)
    assert l_norm(D.point_image(x)) == D._F()(x)
