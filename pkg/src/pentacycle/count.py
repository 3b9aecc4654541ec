"""Point counts over F_p and F_{p^2}, Jacobian orders and Frobenius polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from functools import reduce

from .exact import UniPoly, discriminant
from .fields import FiniteField, is_prime, least_nonresidue
from . import _kernels


class BadReductionError(ValueError):
    pass


def _int_coeffs(f: UniPoly):
    d, ints = f.clear_denominators()
    if d != 1:
        raise ValueError("integral model required")
    return ints


def check_good_reduction(f: UniPoly, p: int):
    if p == 2 or not is_prime(p):
        raise BadReductionError(f"{p} is not an odd prime")
    if discriminant(f).numerator % p == 0:
        raise BadReductionError(f"{p} divides the discriminant")
    if f.lc().numerator % p == 0:
        raise BadReductionError(f"{p} divides the leading coefficient")


def point_count(f: UniPoly, q: int, backend=None) -> int:
    """#C(F_q) for y^2 = f(x), deg f = 6, q = p or p^2 (smooth projective model)."""
    p = q
    degree = 1
    if not is_prime(q):
        p = isqrt(q)
        degree = 2
        if p * p != q or not is_prime(p):
            raise ValueError("q must be p or p^2")
    check_good_reduction(f, p)
    ints = _int_coeffs(f)
    lead = ints[-1] % p
    if degree == 1:
        affine = _kernels.char_sum(ints, p, backend)
        at_inf = 2 if pow(lead, (p - 1) // 2, p) == 1 else 0
    else:
        n = least_nonresidue(p)
        affine = _kernels.char_sum_quadratic(ints, p, n, backend)
        at_inf = 2  # every element of F_p is a square in F_{p^2}
    return affine + at_inf


def point_count_bruteforce(f: UniPoly, q: int) -> int:
    """Independent route: enumerate field elements with the generic field class."""
    p = q if is_prime(q) else isqrt(q)
    F = FiniteField(p, 1 if p == q else 2)
    g = f.change_domain(F)
    total = 0
    for x in F.elements():
        v = g(x)
        total += 1 if v == 0 else (2 if F.is_square(v) else 0)
    total += 2 if F.is_square(g.lc()) else 0
    return total


@dataclass(frozen=True)
class FrobData:
    p: int
    count_p: int
    count_p2: int
    t: int
    s: int
    charpoly: tuple  # ascending integer coefficients

    def charpoly_poly(self) -> UniPoly:
        return UniPoly(list(self.charpoly))

    def jacobian_order(self) -> int:
        return sum(self.charpoly)

    def as_dict(self):
        return {"p": self.p, "count_p": self.count_p, "count_p2": self.count_p2, "t": self.t, "s": self.s,
                "charpoly": list(self.charpoly), "jacobian_order": self.jacobian_order()}


def frobenius_charpoly(f: UniPoly, p: int, backend=None) -> FrobData:
    n1 = point_count(f, p, backend)
    n2 = point_count(f, p * p, backend)
    t = p + 1 - n1
    # N2 = p^2 + 1 - (t^2 - 2 s)
    two_s = n2 - p * p - 1 + t * t
    if two_s % 2:
        raise ArithmeticError("inconsistent point counts")
    s = two_s // 2
    cp = (p * p, -p * t, s, -t, 1)
    data = FrobData(p, n1, n2, t, s, cp)
    if t * t > 16 * p:
        raise ArithmeticError("trace violates the Weil bound")
    for q, n in ((p, n1), (p * p, n2)):
        if (n - q - 1) ** 2 > 16 * q:
            raise ArithmeticError("point count violates the Weil bound")
    return data


def jacobian_order(f: UniPoly, p: int, backend=None) -> int:
    n1 = point_count(f, p, backend)
    n2 = point_count(f, p * p, backend)
    val = (n2 + n1 * n1) // 2 - p
    if (n2 + n1 * n1) % 2:
        raise ArithmeticError("inconsistent point counts")
    return val


def torsion_bound(f: UniPoly, primes) -> int:
    primes = list(primes)
    if not primes:
        raise ValueError("need at least one prime")
    return reduce(gcd, (jacobian_order(f, p) for p in primes))


def hasse_interval(p):
    """Integers n with (n - p - 1)^2 <= 4p."""
    return [n for n in range(0, p + 2 * isqrt(p) + 3) if (n - p - 1) ** 2 <= 4 * p]


def elliptic_split_screen(f: UniPoly, p: int) -> bool:
    """True iff #J(F_p) = n1 * n2 with both factors possible orders of elliptic curves over F_p."""
    order = jacobian_order(f, p)
    allowed = set(hasse_interval(p))
    return any(order % n1 == 0 and order // n1 in allowed for n1 in allowed if n1 > 0)
