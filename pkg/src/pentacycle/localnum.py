"""p-adic scalars with explicit precision, Hensel lifting, root counts in Z_p
and Strassman's bound for truncated power series.

A PadicNum is p^valuation * unit known modulo p^precision (absolute
precision).  A value divisible by p^precision is the tracked zero: it keeps
valuation = precision and never becomes an exact zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import UniPoly, discriminant, sturm_real_root_count, squarefree_part
from .fields import is_prime, sqrt_mod_p


def vp(n, p):
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return vp(n.numerator, p) - vp(n.denominator, p)
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicNum:
    __slots__ = ("p", "unit", "valuation", "precision")

    def __init__(self, value, p, precision):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        value = Fraction(value)
        self.p = p
        self.precision = precision
        if value == 0:
            self.unit, self.valuation = 0, precision
            return
        v = vp(value, p)
        if v >= precision:
            self.unit, self.valuation = 0, precision
            return
        u = value / Fraction(p) ** v
        mod = p ** (precision - v)
        self.unit = u.numerator * pow(u.denominator, -1, mod) % mod
        self.valuation = v

    @classmethod
    def _make(cls, p, unit, valuation, precision):
        obj = cls.__new__(cls)
        obj.p, obj.precision = p, precision
        if valuation >= precision:
            obj.unit, obj.valuation = 0, precision
            return obj
        mod = p ** (precision - valuation)
        unit %= mod
        if unit == 0:
            obj.unit, obj.valuation = 0, precision
            return obj
        while unit % p == 0:
            unit //= p
            valuation += 1
        if valuation >= precision:
            obj.unit, obj.valuation = 0, precision
        else:
            obj.unit, obj.valuation = unit % p ** (precision - valuation), valuation
        return obj

    def is_zero(self):
        """True for the tracked zero (value divisible by p^precision)."""
        return self.unit == 0

    @property
    def relative_precision(self):
        return self.precision - self.valuation

    def residue(self):
        """The value as an integer mod p^precision (requires valuation >= 0)."""
        if self.valuation < 0:
            raise ValueError("negative valuation has no integral residue")
        return self.unit * self.p ** self.valuation % self.p ** self.precision

    def to_fraction(self):
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def _co(self, other):
        if isinstance(other, PadicNum):
            if other.p != self.p:
                raise ValueError("different primes")
            return other
        return PadicNum(other, self.p, self.precision)

    def __add__(self, other):
        other = self._co(other)
        k = min(self.precision, other.precision)
        v = min(self.valuation, other.valuation)
        u = self.unit * self.p ** (self.valuation - v) + other.unit * self.p ** (other.valuation - v)
        return PadicNum._make(self.p, u, v, k)

    __radd__ = __add__

    def __neg__(self):
        return PadicNum._make(self.p, -self.unit, self.valuation, self.precision)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        other = self._co(other)
        if self.is_zero() or other.is_zero():
            # a tracked zero times x is known to precision zero.precision + v(x)
            k = min(self.precision + max(other.valuation, 0) if self.is_zero() else math.inf,
                    other.precision + max(self.valuation, 0) if other.is_zero() else math.inf)
            return PadicNum._make(self.p, 0, k, k)
        v = self.valuation + other.valuation
        rel = min(self.relative_precision, other.relative_precision)
        return PadicNum._make(self.p, self.unit * other.unit, v, v + rel)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of a tracked zero")
        rel = self.relative_precision
        return PadicNum._make(self.p, pow(self.unit, -1, self.p ** rel), -self.valuation, rel - self.valuation)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = PadicNum(1, self.p, self.precision)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        """Equality modulo the smaller of the two precisions."""
        if not isinstance(other, PadicNum):
            other = self._co(other)
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("PadicNum equality is precision dependent and not hashable")

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.precision})"
        return f"{self.unit}*{self.p}^{self.valuation} + O({self.p}^{self.precision})"


# --- squares -------------------------------------------------------------------


def legendre(a: int, p: int) -> int:
    """Jacobi/Legendre symbol (a/p) for odd p, by quadratic reciprocity."""
    if p <= 0 or p % 2 == 0:
        raise ValueError("p must be an odd positive integer")
    a %= p
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if p % 8 in (3, 5):
                result = -result
        a, p = p, a
        if a % 4 == 3 and p % 4 == 3:
            result = -result
        a %= p
    return result if p == 1 else 0


def legendre_euler(a: int, p: int) -> int:
    """Independent route via Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


class NonSquareError(ValueError):
    pass


def is_square_unit(u: int, p: int) -> bool:
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


def hensel_sqrt(a: PadicNum) -> PadicNum:
    """b with b^2 = a modulo p^precision(a)."""
    p = a.p
    if a.is_zero():
        raise ValueError("square root of a tracked zero is not determined")
    if a.valuation % 2:
        raise NonSquareError("odd valuation")
    rel = a.relative_precision
    u = a.unit
    if p == 2:
        if rel < 3:
            raise ValueError("need relative precision at least 3 at p=2")
        if u % 8 != 1:
            raise NonSquareError(f"{u} is not 1 mod 8")
        # lift b with b^2 = u mod 2^j, one bit at a time
        b = 1
        for j in range(3, rel):
            if (b * b - u) % 2 ** (j + 1):
                b += 2 ** (j - 1)
        mod = 2 ** rel
        assert (b * b - u) % mod == 0
        return PadicNum._make(2, b, a.valuation // 2, a.valuation // 2 + rel - 1)
    r = sqrt_mod_p(u, p)
    if r is None:
        raise NonSquareError(f"{u} is not a square mod {p}")
    mod = p
    while mod < p ** rel:
        mod = min(mod * mod, p ** rel)
        r = (r - (r * r - u) * pow(2 * r, -1, mod)) % mod
    assert (r * r - u) % p ** rel == 0
    return PadicNum._make(p, r, a.valuation // 2, a.valuation // 2 + rel)


# --- root counting in Z_p ------------------------------------------------------------


def _ints(a: UniPoly):
    _, ints = a.clear_denominators()
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return [c // g for c in ints]


def _eval(c, x):
    acc = 0
    for t in reversed(c):
        acc = acc * x + t
    return acc


def _taylor_shift_scale(c, r, p):
    """Coefficients of g(r + p x)."""
    # shift by r via repeated synthetic division, then scale x -> p x
    c = list(c)
    n = len(c)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            c[j] += r * c[j + 1]
    return [t * p**i for i, t in enumerate(c)]


def _strip_p(c, p):
    v = min(vp(t, p) for t in c if t)
    return [t // p**v for t in c]


def zp_integer_root_count(a: UniPoly, p: int) -> int:
    """Number of roots of a (squarefree over Q) lying in Z_p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if a.degree < 1:
        return 0
    if not a.is_squarefree():
        raise ValueError("polynomial must be squarefree")
    coeffs = _ints(a)
    disc = discriminant(UniPoly(coeffs))
    bound = vp(disc.numerator, p) + vp(coeffs[-1], p) + 2

    def count(c, depth):
        assert depth <= bound, "lifting depth exceeded the discriminant bound"
        total = 0
        for r in range(p):
            if _eval(c, r) % p:
                continue
            dc = [i * t for i, t in enumerate(c)][1:]
            if _eval(dc, r) % p:
                total += 1
                continue
            total += count(_strip_p(_taylor_shift_scale(c, r, p), p), depth + 1)
        return total

    return count(coeffs, 0)


def zp_root_count_bruteforce(a: UniPoly, p: int, k: int) -> int:
    """Count Z_p roots by enumerating residues mod p^k, for a whose roots all
    have v(a'(root)) < k/2; used as an independent check for small p.

    A root with e = v(a'(root)) shows up as p^e residues mod p^k, so each
    residue is weighted by p^-e.
    """
    c = _ints(a)
    dc = [i * t for i, t in enumerate(c)][1:]
    mod = p**k
    n = Fraction(0)
    for x in range(mod):
        if _eval(c, x) % mod:
            continue
        d = _eval(dc, x)
        e = vp(d, p) if d else k
        if 2 * e >= k:
            raise ValueError(f"precision {k} too low to separate roots")
        n += Fraction(1, p**e)
    if n.denominator != 1:
        raise ValueError(f"precision {k} too low to separate roots")
    return int(n)


# --- the real place -------------------------------------------------------------------


def real_factor_pattern(a: UniPoly):
    """Local pattern at infinity: [(1, 1)] per real root, [(2, 1)] per complex pair."""
    a = squarefree_part(a)
    r = sturm_real_root_count(a)
    return [(1, 1)] * r + [(2, 1)] * ((a.degree - r) // 2)


# --- Strassman ---------------------------------------------------------------------


class IndeterminateError(ArithmeticError):
    pass


@dataclass(frozen=True)
class PadicSeriesTrunc:
    """sum c_n X^n with c_n known mod p^k for n <= len(coeffs)-1, and
    v(c_n) >= tail_bound[1] for every n >= tail_bound[0]."""

    p: int
    coeffs: tuple
    k: int
    tail_bound: tuple
    integral: bool = True

    def __post_init__(self):
        d0, B = self.tail_bound
        if d0 > len(self.coeffs):
            raise ValueError("tail must start at or before the first unlisted degree")
        if B != math.inf and B > self.k:
            raise ValueError("tail bound cannot exceed the coefficient precision")

    def valuations(self):
        out = []
        for c in self.coeffs:
            c %= self.p**self.k
            out.append(self.k if c == 0 else vp(c, self.p))
        return out

    def is_tracked_zero(self, i):
        return self.coeffs[i] % self.p**self.k == 0


def strassman_bound(s: PadicSeriesTrunc) -> int:
    """At most this many roots in Z_p; raises IndeterminateError if the
    precision is not enough to certify the dominant coefficient."""
    vals = s.valuations()
    known = [v for i, v in enumerate(vals) if not s.is_tracked_zero(i)]
    if not known:
        raise IndeterminateError("indeterminate at this precision: every listed coefficient vanishes")
    m = min(known)
    d0, B = s.tail_bound
    if not B > m:
        raise IndeterminateError("indeterminate at this precision: tail bound does not exceed the minimum")
    r = max(i for i, v in enumerate(vals) if v == m and not s.is_tracked_zero(i))
    # tracked zeros have valuation >= k, and k >= B > m
    for i in range(r + 1, len(vals)):
        assert vals[i] > m
    return r
