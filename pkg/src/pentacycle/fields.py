"""Coefficient domains: the rationals, prime fields and their quadratic extensions.

Every polynomial in the package carries one of these domain objects.  The
rationals use :class:`fractions.Fraction` directly; finite field elements are
small immutable wrappers so the same polynomial code runs over all of them.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class RationalField:
    characteristic = 0
    name = "QQ"

    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def is_square(self, x):
        return self.sqrt(x) is not None

    def sqrt(self, x):
        """Exact rational square root, or None."""
        x = Fraction(x)
        if x < 0:
            return None
        n, d = isqrt(x.numerator), isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            return Fraction(n, d)
        return None


QQ = RationalField()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def least_nonresidue(p: int) -> int:
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise ValueError(f"no quadratic nonresidue mod {p}")


def sqrt_mod_p(a: int, p: int):
    """Square root of ``a`` modulo an odd prime (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = least_nonresidue(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


class FiniteField:
    """GF(p) (degree 1) or GF(p^2) = GF(p)[w]/(w^2 - n) with n the least nonresidue."""

    def __init__(self, p: int, degree: int = 1):
        if not is_prime(p) or p == 2:
            raise ValueError(f"odd prime required, got {p}")
        if degree not in (1, 2):
            raise ValueError("only degrees 1 and 2 are supported")
        self.p = p
        self.degree = degree
        self.characteristic = p
        self.order = p**degree
        self.nonresidue = least_nonresidue(p) if degree == 2 else None
        self.zero = FFElem(0, 0, self)
        self.one = FFElem(1, 0, self)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})" if self.degree == 2 else f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.degree) == (other.p, other.degree)

    def __hash__(self):
        return hash((self.p, self.degree))

    @property
    def name(self):
        return repr(self)

    def __call__(self, x, b=0):
        if isinstance(x, FFElem):
            if x.F == self:
                return x
            if x.F.p == self.p and x.b == 0:
                return FFElem(x.a, 0, self)
            raise ValueError(f"cannot coerce {x!r} into {self!r}")
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} is not {self.p}-integral")
            return FFElem(x.numerator * pow(x.denominator, -1, self.p) % self.p, b % self.p, self)
        if isinstance(x, str):
            return self(Fraction(x))
        return FFElem(int(x) % self.p, b % self.p, self)

    def elements(self):
        p = self.p
        if self.degree == 1:
            for a in range(p):
                yield FFElem(a, 0, self)
        else:
            for b in range(p):
                for a in range(p):
                    yield FFElem(a, b, self)

    def gen(self):
        """The adjoined square root w (degree 2 only)."""
        if self.degree != 2:
            raise ValueError("GF(p) has no adjoined root")
        return FFElem(0, 1, self)

    def is_square(self, x):
        x = self(x)
        if x.is_zero():
            return True
        p = self.p
        return pow(x.norm(), (p - 1) // 2, p) == 1

    def sqrt(self, x):
        x = self(x)
        if x.is_zero():
            return x
        p = self.p
        if self.degree == 1:
            r = sqrt_mod_p(x.a, p)
            return None if r is None else FFElem(r, 0, self)
        if not self.is_square(x):
            return None
        # brute force is fine for the field sizes used here
        for y in self.elements():
            if y * y == x:
                return y
        return None


class FFElem:
    __slots__ = ("a", "b", "F")

    def __init__(self, a, b, F):
        self.a = a
        self.b = b
        self.F = F

    def _co(self, other):
        if isinstance(other, FFElem):
            return other
        return self.F(other)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def norm(self):
        p = self.F.p
        if self.F.degree == 1:
            return self.a
        return (self.a * self.a - self.F.nonresidue * self.b * self.b) % p

    def __add__(self, other):
        o = self._co(other)
        p = self.F.p
        return FFElem((self.a + o.a) % p, (self.b + o.b) % p, self.F)

    __radd__ = __add__

    def __neg__(self):
        p = self.F.p
        return FFElem(-self.a % p, -self.b % p, self.F)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) + (-self)

    def __mul__(self, other):
        o = self._co(other)
        p = self.F.p
        if self.F.degree == 1:
            return FFElem(self.a * o.a % p, 0, self.F)
        n = self.F.nonresidue
        return FFElem((self.a * o.a + n * self.b * o.b) % p, (self.a * o.b + self.b * o.a) % p, self.F)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        p = self.F.p
        if self.F.degree == 1:
            return FFElem(pow(self.a, -1, p), 0, self.F)
        ninv = pow(self.norm(), -1, p)
        return FFElem(self.a * ninv % p, -self.b * ninv % p, self.F)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.F.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.a == other.a and self.b == other.b and self.F.p == other.F.p
        if isinstance(other, (int, Fraction)):
            try:
                o = self.F(other)
            except ZeroDivisionError:
                return False
            return self.a == o.a and self.b == o.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.F.p))

    def __repr__(self):
        if self.F.degree == 1 or self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}w"

    def __int__(self):
        if self.b:
            raise ValueError("element is not in the prime field")
        return self.a


class QuadNumber:
    """Element a + b*sqrt(d) of Q(sqrt(d)) (or of K(sqrt(d)) for a domain K).

    Used to carry conjugate pairs of points over a quadratic extension.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = a
        self.b = b
        self.d = d

    def _co(self, other):
        if isinstance(other, QuadNumber):
            if other.d != self.d:
                raise ValueError("mismatched quadratic fields")
            return other
        return QuadNumber(other, 0 * other, self.d)

    def __add__(self, other):
        o = self._co(other)
        return QuadNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        return QuadNumber(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadNumber(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        o = self._co(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self * o.conjugate()
        return QuadNumber(c.a / n, c.b / n, self.d)

    def __pow__(self, e):
        result = QuadNumber(self.a * 0 + 1, self.b * 0, self.d)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            return self.a == other.a and self.b == other.b and self.d == other.d
        return self.b == 0 and self.a == other

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.d}))"
