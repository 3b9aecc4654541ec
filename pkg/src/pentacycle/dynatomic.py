"""Dynatomic polynomials of g(z) = z^2 + c and the genus formulas for C0(N), C1(N).

Bivariate integer polynomials are handled here as "rows": rows[i] is the
integer coefficient list (ascending in c) of z^i.  Large products go
through Kronecker substitution into a single big integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exact import BiPoly, UniPoly
from . import fixtures

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    _mpz = int


# --- small number theory -------------------------------------------------------


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def mobius(n):
    if n == 1:
        return 1
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def euler_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def multiplicative_order(a, n):
    if gcd(a, n) != 1:
        return None
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


# --- degree and genus --------------------------------------------------------------


def nu2(N: int) -> int:
    """z-degree of the N-th dynatomic polynomial."""
    return sum(2**d * mobius(N // d) for d in divisors(N))


def _nu(N):
    return Fraction(nu2(N), 2)


def _as_int(value, what):
    if value.denominator != 1:
        raise ArithmeticError(f"{what} evaluated to non-integer {value}")
    return int(value)


def genus_c1(N: int) -> int:
    if N < 1:
        raise ValueError("N must be positive")
    g = 1 + Fraction(N - 3, 2) * _nu(N)
    g -= Fraction(1, 2) * sum(d * _nu(d) * euler_phi(N // d) for d in divisors(N) if d != N)
    return _as_int(g, f"genus of C1({N})")


def genus_c0(N: int) -> int:
    if N < 1:
        raise ValueError("N must be positive")
    g = 1 + (Fraction(1, 2) - Fraction(3, 2 * N)) * _nu(N)
    g -= Fraction(1, 2) * sum(_nu(d) * euler_phi(N // d) for d in divisors(N) if d != N)
    if N % 2 == 0:
        corr = sum(mobius(N // r) * 2 ** (r // 2) for r in divisors(N) if r % 2 == 0 and (N // r) % 2 == 1)
        g -= Fraction(corr, 4 * N)
    return _as_int(g, f"genus of C0({N})")


# --- integer bivariate rows ------------------------------------------------------


def _trim(lst):
    while lst and lst[-1] == 0:
        lst.pop()
    return lst


def _rows_trim(rows):
    rows = [_trim(list(r)) for r in rows]
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _pack_digits(digits, width):
    """Integer sum(d_k 2^(width k)) for signed digits |d_k| < 2^(width-1)."""
    if not digits:
        return _mpz(0)
    half = 1 << (width - 1)
    nbytes = width // 8
    buf = b"".join(int(d + half).to_bytes(nbytes, "little") for d in digits)
    val = _mpz(int.from_bytes(buf, "little"))
    offset = _mpz(int.from_bytes(half.to_bytes(nbytes, "little") * len(digits), "little"))
    return val - offset


def _unpack_digits(value, width, count):
    half = 1 << (width - 1)
    nbytes = width // 8
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    v = int(value) + offset
    if v < 0 or v.bit_length() > width * count:
        raise OverflowError("Kronecker width too small")
    buf = v.to_bytes(nbytes * count, "little")
    return [int.from_bytes(buf[k * nbytes:(k + 1) * nbytes], "little") - half for k in range(count)]


def _maxbits(rows):
    m = 0
    for r in rows:
        for c in r:
            m = max(m, abs(c).bit_length())
    return m


def _width(bits):
    return ((bits + 2 + 7) // 8) * 8


def rows_mul(a, b):
    """Product of two integer bivariate polynomials given as rows."""
    if not a or not b:
        return []
    ca = max(len(r) for r in a)
    cb = max(len(r) for r in b)
    stride = ca + cb - 1
    terms = min(len(a), len(b)) * min(ca, cb)
    width = _width(_maxbits(a) + _maxbits(b) + terms.bit_length())

    def flat(rows):
        out = []
        for r in rows:
            out.extend(r)
            out.extend([0] * (stride - len(r)))
        return out

    fa, fb = flat(a), flat(b)
    prod = _pack_digits(fa, width) * _pack_digits(fb, width)
    nrows = len(a) + len(b) - 1
    digits = _unpack_digits(prod, width, nrows * stride)
    return _rows_trim([digits[i * stride:(i + 1) * stride] for i in range(nrows)])


def rows_add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        ra = a[i] if i < len(a) else []
        rb = b[i] if i < len(b) else []
        m = max(len(ra), len(rb))
        out.append([(ra[j] if j < len(ra) else 0) + (rb[j] if j < len(rb) else 0) for j in range(m)])
    return _rows_trim(out)


def rows_neg(a):
    return [[-c for c in r] for r in a]


def rows_divexact_monic(num, den):
    """Exact quotient num/den where den is monic in z; remainder must vanish."""
    if not den or den[-1] != [1]:
        raise ValueError("divisor must be monic in z")
    ncols = max(max((len(r) for r in num), default=0), max(len(r) for r in den))
    width = _width(_maxbits(num) + 2 * len(num) + 64)
    pn = [_pack_digits(r + [0] * (ncols - len(r)), width) for r in num]
    pd = [_pack_digits(r + [0] * (ncols - len(r)), width) for r in den]
    dn, dd = len(pn) - 1, len(pd) - 1
    q = [_mpz(0)] * (dn - dd + 1)
    rem = list(pn)
    for k in range(dn - dd, -1, -1):
        c = rem[k + dd]
        q[k] = c
        if c:
            for j in range(dd + 1):
                if pd[j]:
                    rem[k + j] -= c * pd[j]
    if any(rem[:dd]):
        raise ArithmeticError("Mobius quotient is not exact")
    qrows = _rows_trim([_unpack_digits(v, width, ncols) for v in q])
    # certificate: multiply back
    if rows_mul(qrows, den) != _rows_trim([list(r) for r in num]):
        raise ArithmeticError("Mobius quotient failed the multiply-back check")
    return qrows


def iterate_rows(m):
    """g^m(z) as rows."""
    cur = [[0], [1]]  # z
    for _ in range(m):
        cur = rows_add(rows_mul(cur, cur), [[0, 1]])  # square, then add c
    return cur


def periodic_rows(m):
    """g^m(z) - z as rows."""
    return rows_add(iterate_rows(m), [[], [-1]])


def dynatomic_rows(N: int):
    if N < 1:
        raise ValueError("N must be positive")
    num, den = [[1]], [[1]]
    for m in divisors(N):
        e = mobius(N // m)
        if e == 1:
            num = rows_mul(num, periodic_rows(m))
        elif e == -1:
            den = rows_mul(den, periodic_rows(m))
    phi = rows_divexact_monic(num, den)
    if len(phi) - 1 != nu2(N):
        raise ArithmeticError(f"z-degree {len(phi) - 1} differs from nu2({N}) = {nu2(N)}")
    return phi


def rows_to_bipoly(rows) -> BiPoly:
    return BiPoly._raw({(i, j): Fraction(c) for i, r in enumerate(rows) for j, c in enumerate(r) if c})


def bipoly_to_rows(p: BiPoly):
    return p.integer_rows()


def dynatomic_poly(N: int) -> BiPoly:
    """Phi_N(z, c) as a BiPoly in (z, c)."""
    return rows_to_bipoly(dynatomic_rows(N))


@dataclass(frozen=True)
class DynatomicTable:
    N: int
    phi: BiPoly
    nu2: int
    genus_c0: int
    genus_c1: int


def dynatomic_table(N: int) -> DynatomicTable:
    phi = dynatomic_poly(N)
    if phi.degree(0) != nu2(N):
        raise ArithmeticError("z-degree mismatch")
    return DynatomicTable(N, phi, nu2(N), genus_c0(N), genus_c1(N))


def genus_table(max_n: int = 10):
    return [{"N": n, "nu2": nu2(n), "genus_c0": genus_c0(n), "genus_c1": genus_c1(n)} for n in range(1, max_n + 1)]


# --- stable cycles of the power maps -------------------------------------------------


def _generates_units(n, gens):
    units = {k for k in range(1, n) if gcd(k, n) == 1}
    seen = {1 % n}
    frontier = [1 % n]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen == units


def power_map_stable_cycles(kind: str, n_max: int):
    """(n, N) such that z^2 (kind "z^2") or z^2 - 2 (kind "z^2-2") has a
    Galois-stable N-cycle made of primitive n-th roots of unity, resp. of
    zeta + 1/zeta for primitive n-th roots zeta."""
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    out = []
    for n in range(3, n_max + 1, 2):
        if kind == "z^2":
            if _generates_units(n, [2]):
                out.append((n, euler_phi(n)))
        elif kind == "z^2-2":
            if _generates_units(n, [2, n - 1]):
                out.append((n, euler_phi(n) // 2))
        else:
            raise ValueError(f"unknown power map {kind!r}")
    return out


def cycle_of_power_map(kind: str, n: int):
    """Exponents of the cycle through zeta_n under squaring (both kinds square the angle)."""
    k, orbit = 1, []
    while True:
        orbit.append(k)
        k = 2 * k % n
        if kind == "z^2-2":
            k = min(k, n - k)
        if k == 1:
            return orbit


# --- fixtures ---------------------------------------------------------------------


def tau_fixture(N: int) -> BiPoly:
    if N not in (5, 6):
        raise ValueError(f"no trace polynomial fixture for N={N}")
    data = fixtures.load("tau.json")[f"tau{N}"]
    return fixtures.bipoly(data["rows"])


def g_poly(c) -> UniPoly:
    return UniPoly([c, 0, 1])
