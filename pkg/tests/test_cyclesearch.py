import json
from fractions import Fraction

import pytest

from pentacycle import cyclesearch as S
from pentacycle.dynatomic import tau_fixture
from pentacycle.exact import UniPoly

KNOWN = [(Fraction(-7, 2), Fraction(-71, 48)), (Fraction(-3), Fraction(-4)), (Fraction(-1), Fraction(-2)),
         (Fraction(0), Fraction(0)), (Fraction(1), Fraction(-2))]


def test_known_points_lie_on_tau6():
    tau = tau_fixture(6)
    assert S.known_tau6_points() == KNOWN
    assert all(tau(x, c) == 0 for x, c in KNOWN)


def test_reduced_fractions():
    assert S.reduced_fractions(6, 4) == [Fraction(4), Fraction(4, 3), Fraction(4, 5)]
    assert S.height(Fraction(-71, 48)) == 71


def test_scan_bound_7():
    r = S.tau6_scan(7)
    assert r.points == KNOWN
    assert r.directions_agree


def test_scan_parallel_matches_serial():
    assert S.tau6_scan(5, jobs=2).points == S.tau6_scan(5).points


def test_scan_checkpoint_resume(tmp_path):
    path = str(tmp_path / "ck.json")
    full = S.tau6_scan(6, checkpoint=path)
    data = json.loads(open(path).read())
    assert data["bound"] == 6 and data["last_numerator"] == 6
    # pretend the run stopped after numerator 0; resuming must give the same answer
    partial = S.tau6_scan(6)
    keep = lambda pts: [[str(a), str(b)] for a, b in pts if a.numerator <= 0]
    data["last_numerator"] = 0
    data["x_first"] = keep(partial.x_first)
    data["c_first"] = [[str(a), str(b)] for a, b in partial.c_first if b.numerator <= 0]
    open(path, "w").write(json.dumps(data))
    assert S.tau6_scan(6, checkpoint=path).points == full.points


def test_scan_rejects_bad_bound():
    with pytest.raises(ValueError):
        S.tau6_scan(0)


@pytest.mark.parametrize("c", ["-2", "-16/9", "-64/9"])
def test_stable_cycle_fields(c):
    r = S.stable_cycle_field_report(c)
    assert r["cyclic_signature"]
    assert r["splitting_matches_subgroup"]
    assert r["subgroup_index"] == 5
    assert r["roots_in_Z3"] == (0 if c == "-2" else 5)


def test_minus_2_quintic_is_real_cyclotomic():
    assert S.cycle_quintic(-2) == UniPoly([1, 3, -3, -4, 1, 1])
    assert S.cyclotomic_check_minus_2()


def test_no_cycle_for_generic_c():
    with pytest.raises(S.CycleFieldError):
        S.cycle_quintic(5)


def test_integral_model():
    q = UniPoly([Fraction(1, 9), Fraction(1, 3), 0, 0, 0, 1])
    k, ints = S.integral_model(q)
    assert k == 3 and ints == [27, 27, 0, 0, 0, 1]


def test_prime_support():
    assert S.prime_support(-2**3 * 5 * 3701) == [2, 5, 3701]
