"""Exact polynomial arithmetic.

``UniPoly`` is a dense immutable univariate polynomial over one of the
domains in :mod:`pentacycle.fields`; ``BiPoly`` is a sparse bivariate
polynomial over the rationals.  Also here: resultants (subresultant PRS over
the integers, Euclid over fields, Sylvester determinant as an independent
route), discriminants, rational roots, Sturm sequences, and the small
integer-list helpers for polynomials modulo a prime.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .fields import QQ, FFElem, FiniteField, is_prime

NEG_INF = float("-inf")


def _lcm_den(values):
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


class UniPoly:
    """Dense polynomial, coefficients stored in ascending degree order."""

    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs=(), domain=QQ):
        cs = [domain(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.domain = domain

    @classmethod
    def _raw(cls, coeffs, domain):
        # trusted constructor: coefficients already in the domain
        p = cls.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        p.coeffs = tuple(cs)
        p.domain = domain
        return p

    @classmethod
    def x(cls, domain=QQ):
        return cls([0, 1], domain)

    @classmethod
    def constant(cls, c, domain=QQ):
        return cls([c], domain)

    @classmethod
    def from_roots(cls, roots, domain=QQ):
        p = cls([1], domain)
        for r in roots:
            p = p * cls([-domain(r), 1], domain)
        return p

    # --- basic properties -------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.domain.zero

    def is_zero(self):
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, FFElem)):
            return self.coeffs == UniPoly([other], self.domain).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms).replace("+ -", "- ")

    # --- ring operations --------------------------------------------------

    def _co(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other], self.domain)

    def __add__(self, other):
        o = self._co(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly._raw(out, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs], self.domain)

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = self.domain(other)
            return UniPoly._raw([a * c for a in self.coeffs], self.domain)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw([], self.domain)
        zero = self.domain.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly._raw(out, self.domain)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly([1], self.domain), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other):
        """Quotient and remainder; ``other`` must have an invertible leading coefficient."""
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return UniPoly._raw([], self.domain), self
        inv = self.domain.one / other.lc()
        q = [self.domain.zero] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            q[k] = c
            if c == 0:
                continue
            for j in range(db + 1):
                rem[k + j] = rem[k + j] - c * bc[j]
        return UniPoly._raw(q, self.domain), UniPoly._raw(rem[:db], self.domain)

    def __floordiv__(self, other):
        return self.divmod(self._co(other))[0]

    def __mod__(self, other):
        return self.divmod(self._co(other))[1]

    def exact_div(self, other):
        q, r = self.divmod(self._co(other))
        if r:
            raise ArithmeticError(f"division not exact: remainder {r}")
        return q

    def __truediv__(self, other):
        if isinstance(other, UniPoly):
            return self.exact_div(other)
        c = self.domain.one / self.domain(other)
        return self * c

    # --- evaluation and calculus ------------------------------------------

    def __call__(self, x):
        if isinstance(x, int) and self.domain == QQ:
            x = Fraction(x)
        acc = self.domain.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        acc = UniPoly._raw([], self.domain)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly._raw([c], self.domain)
        return acc

    def derivative(self):
        return UniPoly._raw([i * c for i, c in enumerate(self.coeffs)][1:], self.domain)

    def monic(self):
        if not self.coeffs:
            return self
        return self * (self.domain.one / self.lc())

    def shift(self, k):
        """Multiply by x^k."""
        return UniPoly._raw([self.domain.zero] * k + list(self.coeffs), self.domain)

    def reverse(self, n=None):
        """x^n p(1/x) with n defaulting to the degree."""
        n = len(self.coeffs) - 1 if n is None else n
        cs = list(self.coeffs) + [self.domain.zero] * (n + 1 - len(self.coeffs))
        return UniPoly._raw(cs[::-1], self.domain)

    def truncate(self, n):
        return UniPoly._raw(self.coeffs[:n], self.domain)

    def change_domain(self, domain):
        return UniPoly([domain(c) for c in self.coeffs], domain)

    def reduce_mod(self, p, degree=1):
        return self.change_domain(FiniteField(p, degree))

    # --- content over the rationals -----------------------------------------

    def clear_denominators(self):
        """Return (d, P) with P = d * self having integer coefficients and d > 0."""
        d = _lcm_den(self.coeffs)
        return d, [int(c * d) for c in self.coeffs]

    def primitive_int(self):
        """Primitive integer coefficient list with positive leading coefficient."""
        if not self.coeffs:
            return []
        _, ints = self.clear_denominators()
        g = reduce(gcd, ints, 0)
        ints = [c // g for c in ints]
        if ints[-1] < 0:
            ints = [-c for c in ints]
        return ints

    def is_squarefree(self):
        return poly_gcd(self, self.derivative()).degree == 0

    # --- text format --------------------------------------------------------

    def to_text(self):
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @classmethod
    def from_text(cls, text, domain=QQ):
        parts = [s.strip() for s in text.split(",") if s.strip()]
        return cls([Fraction(s) for s in parts], domain)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over a field."""
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly):
    """(g, s, t) with s*a + t*b = g monic."""
    dom = a.domain
    r0, r1 = a, b
    s0, s1 = UniPoly([1], dom), UniPoly([], dom)
    t0, t1 = UniPoly([], dom), UniPoly([1], dom)
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    inv = dom.one / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def poly_inverse_mod(a: UniPoly, m: UniPoly) -> UniPoly:
    g, s, _ = poly_xgcd(a % m, m)
    if g.degree != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return s % m


def squarefree_part(a: UniPoly) -> UniPoly:
    """Product of the distinct irreducible factors (characteristic zero or large)."""
    g = poly_gcd(a, a.derivative())
    return a.exact_div(g).monic()


# --- resultants -------------------------------------------------------------


def _int_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _int_content(a):
    return reduce(gcd, a, 0)


def _int_prem(a, b):
    """Pseudo-remainder of integer lists: lc(b)^(da-db+1) a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - 1 - db + 1
    while len(a) - 1 >= db and a:
        la = a[-1]
        k = len(a) - 1 - db
        a = [lb * c for c in a]
        for j in range(db + 1):
            a[k + j] -= la * b[j]
        a = _int_trim(a)
        e -= 1
    if e > 0:
        f = lb**e
        a = [f * c for c in a]
    return a


def int_resultant(a, b):
    """Resultant of integer coefficient lists via the subresultant PRS."""
    A, B = _int_trim(a), _int_trim(b)
    if not A or not B:
        return 0
    ca, cb = _int_content(A), _int_content(B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    dA, dB = len(A) - 1, len(B) - 1
    t = ca**dB * cb**dA
    s = 1
    if dA < dB:
        A, B = B, A
        dA, dB = dB, dA
        if dA % 2 and dB % 2:
            s = -1
    if dB == 0:
        return s * t * B[0] ** dA
    g = h = 1
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 and dB % 2:
            s = -s
        R = _int_prem(A, B)
        if not R:
            return 0
        A = B
        div = g * h**delta
        B = [c // div for c in R]
        g = A[-1]
        h = g**delta // h ** (delta - 1) if delta >= 1 else h
        if len(B) - 1 == 0:
            dA = len(A) - 1
            h = B[0] ** dA // h ** (dA - 1) if dA >= 1 else h
            return s * t * h


def _field_resultant(a: UniPoly, b: UniPoly):
    dom = a.domain
    res = dom.one
    while True:
        m, n = len(a.coeffs) - 1, len(b.coeffs) - 1
        if n == 0:
            return res * b.coeffs[0] ** m
        r = a % b
        if not r:
            return dom.zero
        k = len(r.coeffs) - 1
        if m % 2 and n % 2:
            res = -res
        res = res * b.lc() ** (m - k)
        a, b = b, r


def resultant(a: UniPoly, b: UniPoly):
    """Res(a, b), normalized as the Sylvester determinant."""
    if not a or not b:
        raise ValueError("resultant of the zero polynomial")
    if a.domain == QQ:
        da, A = a.clear_denominators()
        db, B = b.clear_denominators()
        r = int_resultant(A, B)
        return Fraction(r, da ** b.degree * db ** a.degree)
    return _field_resultant(a, b)


def sylvester_matrix(a: UniPoly, b: UniPoly):
    m, n = a.degree, b.degree
    size = m + n
    zero = a.domain.zero
    rows = []
    ad, bd = list(a.coeffs)[::-1], list(b.coeffs)[::-1]
    for i in range(n):
        rows.append([zero] * i + ad + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + bd + [zero] * (size - n - 1 - i))
    return rows


def sylvester_resultant(a: UniPoly, b: UniPoly):
    """Res(a, b) as the determinant of the Sylvester matrix (independent route)."""
    from .linalg import determinant

    if a.degree == 0:
        return a.coeffs[0] ** b.degree
    if b.degree == 0:
        return b.coeffs[0] ** a.degree
    return determinant(sylvester_matrix(a, b))


def discriminant(a: UniPoly):
    n = a.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(a, a.derivative()) / a.lc()


# --- real roots -----------------------------------------------------------------


def sturm_sequence(a: UniPoly):
    seq = [a, a.derivative()]
    while seq[-1]:
        r = seq[-2] % seq[-1]
        if not r:
            break
        seq.append(-r)
    return seq


def _sign(x):
    return (x > 0) - (x < 0)


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_real_root_count(a: UniPoly, lo=None, hi=None) -> int:
    """Number of distinct real roots, in (lo, hi] when bounds are given."""
    if not a:
        raise ValueError("zero polynomial")
    if a.domain != QQ:
        raise ValueError("real root counting needs rational coefficients")
    if not a.is_squarefree():
        raise ValueError("Sturm count requires a squarefree polynomial")
    seq = sturm_sequence(a)

    def at(x):
        if x == "+inf":
            return [_sign(p.lc()) for p in seq]
        if x == "-inf":
            return [_sign(p.lc()) * (-1) ** p.degree for p in seq]
        return [_sign(p(Fraction(x))) for p in seq]

    left = at("-inf" if lo is None else lo)
    right = at("+inf" if hi is None else hi)
    return _sign_changes(left) - _sign_changes(right)


# --- polynomials modulo a prime as plain integer lists ----------------------


def modp_trim(a, p):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def modp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return modp_trim(out, p)


def modp_divmod(a, b, p):
    a = modp_trim(a, p)
    b = modp_trim(b, p)
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return modp_trim(q, p), modp_trim(a[:db], p)


def modp_gcd(a, b, p):
    a, b = modp_trim(a, p), modp_trim(b, p)
    while b:
        a, b = b, modp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def modp_powmod(base, e, mod, p):
    result = [1]
    base = modp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = modp_divmod(modp_mul(result, base, p), mod, p)[1]
        base = modp_divmod(modp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def modp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return modp_trim([x - y for x, y in zip(a, b)], p)


def modp_derivative(a, p):
    return modp_trim([i * c for i, c in enumerate(a)][1:], p)


def modp_roots(a, p):
    """Sorted distinct roots in [0, p) of an integer polynomial modulo p."""
    from ._kernels import roots_mod_p

    a = modp_trim(a, p)
    if not a:
        raise ValueError("zero polynomial modulo p has every residue as a root")
    return roots_mod_p(a, p)


def modp_distinct_degree(a, p):
    """Distinct-degree factorization of a squarefree monic polynomial mod p.

    Returns a list of (d, g_d) where g_d is the product of the irreducible
    factors of degree d; the factor count of degree d is deg(g_d)/d.
    """
    f = modp_trim(a, p)
    inv = pow(f[-1], -1, p)
    f = [c * inv % p for c in f]
    out = []
    xp = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        xp = modp_powmod(xp, p, f, p)
        g = modp_gcd(f, modp_sub(xp, [0, 1], p), p)
        if len(g) > 1:
            out.append((d, g))
            f = modp_divmod(f, g, p)[0]
            xp = modp_divmod(xp, f, p)[1] if len(f) > 1 else [0]
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def factor_degree_pattern(a, p):
    """Sorted degrees of the irreducible factors mod p (squarefree input)."""
    degs = []
    for d, g in modp_distinct_degree(a, p):
        degs.extend([d] * ((len(g) - 1) // d))
    return sorted(degs)


# --- rational roots --------------------------------------------------------------


def _int_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _int_poly_divexact_linear(a, s, r):
    """Divide integer list a by (s*x - r), asserting exactness."""
    # synthetic division over the rationals, then back to integers
    q = UniPoly(a).exact_div(UniPoly([-r, s]))
    d, ints = q.clear_denominators()
    if d != 1:
        raise ArithmeticError("non-integral quotient")
    return ints


def _root_bound(a):
    """All complex roots satisfy |x| < bound (Cauchy)."""
    lead = abs(a[-1])
    return 1 + Fraction(max(abs(c) for c in a[:-1]), lead) if len(a) > 1 else Fraction(1)


def _choose_prime(a):
    lead = a[-1]
    p = 3
    while True:
        if lead % p and is_prime(p):
            red = modp_trim(a, p)
            if len(red) == len(a):
                g = modp_gcd(red, modp_derivative(red, p), p)
                if len(g) == 1:
                    return p
        p += 2


def _rational_roots_squarefree(a):
    """Distinct rational roots of a squarefree primitive integer polynomial."""
    n = len(a) - 1
    if n <= 0:
        return []
    if n == 1:
        return [Fraction(-a[0], a[1])]
    lead = a[-1]
    p = _choose_prime(a)
    residues = modp_roots(a, p)
    if not residues:
        return []
    # candidate z = lead * root is an integer bounded in absolute value
    bound = abs(lead) * _root_bound(a)
    modulus = p
    lifted = list(residues)
    da = [i * c for i, c in enumerate(a)][1:]
    while modulus <= 2 * bound:
        new_mod = modulus * modulus
        nxt = []
        for x in lifted:
            fx = _int_eval(a, x) % new_mod
            dfx = _int_eval(da, x) % new_mod
            x = (x - fx * pow(dfx, -1, new_mod)) % new_mod
            nxt.append(x)
        lifted = nxt
        modulus = new_mod
    roots = []
    for x in lifted:
        z = lead * x % modulus
        if z > modulus // 2:
            z -= modulus
        cand = Fraction(z, lead)
        if _int_eval_frac(a, cand) == 0:
            roots.append(cand)
    return sorted(set(roots))


def _int_eval_frac(a, x: Fraction):
    # homogeneous evaluation: sum a_i r^i s^(n-i)
    r, s = x.numerator, x.denominator
    n = len(a) - 1
    return sum(c * r**i * s ** (n - i) for i, c in enumerate(a))


def rational_roots(a: UniPoly):
    """All rational roots with multiplicity, sorted ascending.

    Roots of the squarefree part are found modulo a prime of good reduction,
    Hensel-lifted past twice the size bound and checked exactly.
    """
    if not a:
        raise ValueError("zero polynomial")
    if a.domain != QQ:
        raise ValueError("rational roots need rational coefficients")
    ints = a.primitive_int()
    out = []
    k = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        k += 1
    out.extend([Fraction(0)] * k)
    if len(ints) <= 1:
        return sorted(out)
    P = UniPoly(ints)
    sqf = squarefree_part(P).primitive_int()
    for r in _rational_roots_squarefree(sqf):
        rem = ints
        mult = 0
        while _int_eval_frac(rem, r) == 0:
            rem = _int_poly_divexact_linear(rem, r.denominator, r.numerator)
            mult += 1
        out.extend([r] * mult)
    return sorted(out)


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots_by_divisors(a: UniPoly):
    """Rational roots by enumerating p/q with p | a_0 and q | a_n (small inputs only)."""
    ints = a.primitive_int()
    out = []
    while ints and ints[0] == 0:
        ints = ints[1:]
        out.append(Fraction(0))
    if len(ints) <= 1:
        return sorted(out)
    cands = set()
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    for r in cands:
        rem = ints
        while len(rem) > 1 and _int_eval_frac(rem, r) == 0:
            rem = _int_poly_divexact_linear(rem, r.denominator, r.numerator)
            out.append(r)
    return sorted(out)


# --- bivariate polynomials -------------------------------------------------------


class BiPoly:
    """Sparse polynomial in two variables: {(i, j): coefficient of x^i y^j}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v != 0:
                t[(int(k[0]), int(k[1]))] = v
        self.terms = t

    @classmethod
    def _raw(cls, terms):
        p = cls.__new__(cls)
        p.terms = {k: v for k, v in terms.items() if v != 0}
        return p

    @classmethod
    def var(cls, which):
        return cls({(1, 0): 1} if which == 0 else {(0, 1): 1})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def from_rows(cls, rows):
        """rows[i] is the coefficient of x^i, a UniPoly (or text) in y."""
        t = {}
        for i, row in enumerate(rows):
            if isinstance(row, str):
                row = UniPoly.from_text(row)
            for j, c in enumerate(row.coeffs):
                t[(i, j)] = c
        return cls._raw(t)

    def rows(self):
        """Coefficients of x^i as UniPolys in y, i = 0..deg_x."""
        dx = self.degree(0)
        if dx < 0:
            return []
        rows = [dict() for _ in range(dx + 1)]
        for (i, j), v in self.terms.items():
            rows[i][j] = v
        out = []
        for r in rows:
            dy = max(r) if r else -1
            out.append(UniPoly([r.get(j, 0) for j in range(dy + 1)]))
        return out

    def to_text_rows(self):
        return [r.to_text() for r in self.rows()]

    def degree(self, which=None):
        if not self.terms:
            return -1
        if which is None:
            return max(i + j for i, j in self.terms)
        return max(k[which] for k in self.terms)

    def coeff(self, i, j):
        return self.terms.get((i, j), Fraction(0))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            parts.append(f"{self.terms[(i, j)]}*x^{i}*y^{j}")
        return " + ".join(parts) if parts else "0"

    def _co(self, other):
        return other if isinstance(other, BiPoly) else BiPoly.constant(other)

    def __add__(self, other):
        o = self._co(other)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return BiPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        o = self._co(other)
        t = {}
        for (i1, j1), v1 in self.terms.items():
            for (i2, j2), v2 in o.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, 0) + v1 * v2
        return BiPoly._raw(t)

    __rmul__ = __mul__

    def __pow__(self, e):
        result, base = BiPoly.constant(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x, y):
        return sum((v * x**i * y**j for (i, j), v in self.terms.items()), Fraction(0) * x)

    def eval_y(self, y) -> UniPoly:
        """Specialize the second variable, giving a UniPoly in the first."""
        dx = self.degree(0)
        cs = [Fraction(0)] * (dx + 1)
        for (i, j), v in self.terms.items():
            cs[i] += v * Fraction(y) ** j
        return UniPoly(cs)

    def eval_x(self, x) -> UniPoly:
        """Specialize the first variable, giving a UniPoly in the second."""
        return self.swap().eval_y(x)

    def swap(self):
        return BiPoly._raw({(j, i): v for (i, j), v in self.terms.items()})

    def substitute(self, x_expr: "BiPoly", y_expr: "BiPoly"):
        """Compose: p(x_expr(x, y), y_expr(x, y))."""
        dx, dy = max(self.degree(0), 0), max(self.degree(1), 0)
        xp = [BiPoly.constant(1)]
        for _ in range(dx):
            xp.append(xp[-1] * x_expr)
        yp = [BiPoly.constant(1)]
        for _ in range(dy):
            yp.append(yp[-1] * y_expr)
        acc = BiPoly()
        for (i, j), v in self.terms.items():
            acc = acc + (xp[i] * yp[j]) * v
        return acc

    def derivative(self, which):
        t = {}
        for (i, j), v in self.terms.items():
            e = i if which == 0 else j
            if e:
                t[(i - 1, j) if which == 0 else (i, j - 1)] = v * e
        return BiPoly._raw(t)

    def divide_monomial(self, i0, j0):
        t = {}
        for (i, j), v in self.terms.items():
            if i < i0 or j < j0:
                raise ArithmeticError(f"x^{i0} y^{j0} does not divide the polynomial")
            t[(i - i0, j - j0)] = v
        return BiPoly._raw(t)

    def scale(self, c):
        c = Fraction(c)
        return BiPoly._raw({k: v * c for k, v in self.terms.items()})

    def content(self):
        """Positive rational c such that self / c has coprime integer coefficients."""
        vals = list(self.terms.values())
        if not vals:
            return Fraction(0)
        den = _lcm_den(vals)
        g = reduce(gcd, (int(v * den) for v in vals), 0)
        return Fraction(g, den)

    def primitive(self):
        """Divide out the content and make the leading term (lexicographic) positive."""
        c = self.content()
        p = self.scale(1 / c)
        lead = max(p.terms)
        if p.terms[lead] < 0:
            p = -p
        return p

    def integer_rows(self):
        """Rows (in x) of integer coefficient lists in y; requires integral coefficients."""
        out = []
        for r in self.rows():
            if any(c.denominator != 1 for c in r.coeffs):
                raise ValueError("non-integral coefficients")
            out.append([int(c) for c in r.coeffs])
        return out


def bi_resultant(a: BiPoly, b: BiPoly, var=0) -> UniPoly:
    """Resultant eliminating variable ``var`` (0: x, 1: y), by interpolation.

    The result is a polynomial in the other variable.  Degree bound:
    deg_other(Res) <= deg_var(a) * deg_other(b) + deg_var(b) * deg_other(a).
    """
    if var == 1:
        a, b = a.swap(), b.swap()
    m, n = a.degree(0), b.degree(0)
    bound = m * max(b.degree(1), 0) + n * max(a.degree(1), 0)
    xs, ys = [], []
    t = 0
    while len(xs) < bound + 1:
        pa, pb = a.eval_y(t), b.eval_y(t)
        if pa.degree == m and pb.degree == n:
            xs.append(Fraction(t))
            ys.append(resultant(pa, pb))
        t = -t if t > 0 else -t + 1
    return interpolate(xs, ys)


def interpolate(xs, ys) -> UniPoly:
    """Newton interpolation through the points (xs[i], ys[i])."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * UniPoly([-xs[i], 1]) + coef[i]
    return p


# --- Kronecker packing for large integer bivariate products ------------------------


def kron_pack(rows, width):
    """Pack each integer list (coefficients in y) into one integer at 2^width."""
    out = []
    for r in rows:
        acc = 0
        for c in reversed(r):
            acc = (acc << width) + c
        out.append(acc)
    return out


def kron_unpack(values, width):
    """Inverse of kron_pack with balanced digits."""
    base = 1 << width
    half = base >> 1
    rows = []
    for v in values:
        r = []
        while v:
            d = v & (base - 1)
            if d >= half:
                d -= base
            r.append(d)
            v = (v - d) >> width
        rows.append(r)
    return rows


def int_poly_mul(a, b):
    """Product of integer lists via a single big-integer multiplication."""
    if not a or not b:
        return []
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    width = bound.bit_length() + 2
    (pa,) = kron_pack([a], width)
    (pb,) = kron_pack([b], width)
    (r,) = kron_unpack([pa * pb], width)
    r = r + [0] * (len(a) + len(b) - 1 - len(r))
    return r
