import pytest

from pentacycle.dynatomic import (cycle_of_power_map, divisors, dynatomic_rows, genus_c0, genus_c1, genus_table,
                                  nu2, periodic_rows, power_map_stable_cycles, rows_mul, tau_fixture)
from pentacycle import fixtures


def test_genus_table_matches_fixture():
    fx = fixtures.load("genus.json")
    rows = genus_table(10)
    assert [r["genus_c0"] for r in rows] == fx["genus_c0"]
    assert [r["genus_c1"] for r in rows] == fx["genus_c1"]
    assert genus_c0(10) == 162 and genus_c1(10) == 1690


@pytest.mark.parametrize("N", range(1, 9))
def test_product_of_dynatomic_is_periodic(N):
    acc = [[1]]
    for d in divisors(N):
        acc = rows_mul(acc, dynatomic_rows(d))
    assert acc == periodic_rows(N)


def test_z_degree_is_nu2():
    for N in range(1, 8):
        assert len(dynatomic_rows(N)) - 1 == nu2(N)


def test_power_map_cycles():
    assert (9, 6) in power_map_stable_cycles("z^2", 9)
    assert (11, 5) in power_map_stable_cycles("z^2-2", 11)
    for n, N in power_map_stable_cycles("z^2", 81):
        p = min(q for q in range(2, n + 1) if n % q == 0)
        while n % p == 0:
            n //= p
        assert n == 1 and p % 2 == 1
    assert len(cycle_of_power_map("z^2-2", 11)) == 5


def test_tau_fixtures():
    t5 = tau_fixture(5)
    assert t5.coeff(6, 0) == 1 and t5.coeff(0, 3) == 9
    with pytest.raises(ValueError):
        tau_fixture(7)
