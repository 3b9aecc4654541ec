"""The sextic algebra L = Q[T]/(f(T)) for the curve's sextic, its 2-maximal
order and its completions at 2 and 3701.

L_2 is a field (e=2, f=3).  L_3701 splits as Q_3701 x E x F with E ramified
quadratic and F unramified cubic; E and F are only ever handled through the
Hensel-lifted factors of f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from .exact import (UniPoly, resultant, poly_inverse_mod, poly_xgcd, modp_roots, modp_mul, modp_trim,
                    discriminant, interpolate)
from .fields import FiniteField
from .linalg import determinant, hnf_rows, inverse, kernel_mod_p
from .localnum import legendre, vp
from . import fixtures


def base_sextic() -> UniPoly:
    return fixtures.poly(fixtures.load("elements_of_L.json")["modulus"])


class LElem:
    """Element of Q[T]/(modulus); the modulus defaults to the curve's sextic."""

    __slots__ = ("rep", "mod")

    def __init__(self, rep, mod: UniPoly = None):
        mod = mod if mod is not None else _F()
        if not isinstance(rep, UniPoly):
            rep = UniPoly([rep]) if not isinstance(rep, (list, tuple)) else UniPoly(rep)
        self.rep = rep % mod
        self.mod = mod

    @classmethod
    def T(cls, mod=None):
        return cls(UniPoly([0, 1]), mod)

    def _co(self, other):
        if isinstance(other, LElem):
            return other
        return LElem(UniPoly([other]), self.mod)

    def __add__(self, other):
        return LElem(self.rep + self._co(other).rep, self.mod)

    __radd__ = __add__

    def __neg__(self):
        return LElem(-self.rep, self.mod)

    def __sub__(self, other):
        return LElem(self.rep - self._co(other).rep, self.mod)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        return LElem(self.rep * self._co(other).rep, self.mod)

    __rmul__ = __mul__

    def inverse(self):
        if not self.rep:
            raise ZeroDivisionError("zero in L")
        return LElem(poly_inverse_mod(self.rep, self.mod), self.mod)

    def __truediv__(self, other):
        return self * self._co(other).inverse()

    def __rtruediv__(self, other):
        return self._co(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = LElem(1, self.mod), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, LElem):
            other = self._co(other)
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.rep.coeffs)

    def __repr__(self):
        return f"LElem({self.rep!r})"

    def is_zero(self):
        return not self.rep

    def coords(self):
        n = self.mod.degree
        return [self.rep[i] for i in range(n)]

    def mult_matrix(self):
        """Rows are the coordinates of self * T^i."""
        t = LElem.T(self.mod)
        rows, cur = [], self
        for _ in range(self.mod.degree):
            rows.append(cur.coords())
            cur = cur * t
        return rows

    def charpoly(self) -> UniPoly:
        """det(X - M) by interpolation at degree+1 points."""
        m = self.mult_matrix()
        n = len(m)
        xs = list(range(n + 1))
        ys = []
        for x in xs:
            rows = [[(Fraction(x) if i == j else Fraction(0)) - m[i][j] for j in range(n)] for i in range(n)]
            ys.append(determinant(rows))
        return interpolate([Fraction(x) for x in xs], ys)


@lru_cache(maxsize=None)
def _F():
    f = base_sextic()
    if f.lc() != 1:
        raise ValueError("modulus must be monic")
    # irreducible over Q: it stays irreducible modulo 17
    from .exact import factor_degree_pattern

    _, ints = f.clear_denominators()
    if factor_degree_pattern(ints, 17) != [6]:
        raise ArithmeticError("modulus is not certified irreducible")
    return f


def l_norm(x: LElem) -> Fraction:
    if x.is_zero():
        raise ValueError("norm of zero")
    return resultant(x.mod, x.rep) / x.mod.lc() ** x.rep.degree


def l_norm_matrix(x: LElem) -> Fraction:
    """Independent route: determinant of the multiplication matrix."""
    return determinant(x.mult_matrix())


# --- the printed elements -------------------------------------------------------------


@lru_cache(maxsize=None)
def named_elements():
    data = fixtures.load("elements_of_L.json")
    out = {}
    for e in data["elements"]:
        out[e["name"]] = LElem(fixtures.poly(e["numerator"]) * Fraction(1, e["denominator"]))
    return out


def claimed_norms():
    return {e["name"]: Fraction(e["norm"]) for e in fixtures.load("elements_of_L.json")["elements"]}


def verify_norms():
    """Computed versus claimed norm for every printed element."""
    els = named_elements()
    rows = []
    for name, claimed in claimed_norms().items():
        got = l_norm(els[name])
        rows.append({"name": name, "claimed": claimed, "computed": got, "ok": got == claimed})
    bad = [r["name"] for r in rows if not r["ok"]]
    if bad:
        raise ArithmeticError(f"norm mismatch for {bad}")
    return rows


def _unit_search(q: LElem):
    """Express q as +-u1^a u2^b u3^c with |a|,|b|,|c| <= 2, or None."""
    els = named_elements()
    for a, b, c in product(range(-2, 3), repeat=3):
        w = els["u1"] ** a * els["u2"] ** b * els["u3"] ** c
        for s in (1, -1):
            if w * s == q:
                return {"sign": s, "u1": a, "u2": b, "u3": c}
    return None


def verify_element_factorizations():
    els = named_elements()
    out = []
    for item in fixtures.load("elements_of_L.json")["factorizations"]:
        prod_ = LElem(1)
        for name, e in item["product"].items():
            prod_ = prod_ * els[name] ** e
        quotient = LElem(item["prime"]) / prod_
        unit = _unit_search(quotient)
        if unit is None:
            raise ArithmeticError(f"factorization of {item['prime']} fails")
        out.append({"prime": item["prime"], "product": item["product"], "unit": unit,
                    "exact": unit == {"sign": 1, "u1": 0, "u2": 0, "u3": 0}})
    return out


# --- the 2-maximal order ----------------------------------------------------------------


@dataclass
class Order:
    """Z-lattice in L: basis elements are rows/denominator in power-basis coordinates."""

    rows: list
    denominator: int

    def elements(self):
        return [LElem(UniPoly([Fraction(c, self.denominator) for c in r])) for r in self.rows]

    def coords_of(self, x: LElem):
        """Coordinates of x in this basis (rational)."""
        inv = _basis_inverse(tuple(tuple(r) for r in self.rows))
        v = [c * self.denominator for c in x.coords()]
        return [sum(v[i] * inv[i][j] for i in range(len(v))) for j in range(len(v))]

    def contains(self, x: LElem):
        return all(c.denominator == 1 for c in self.coords_of(x))

    def index_over_equation_order(self):
        n = len(self.rows)
        det = abs(determinant([[Fraction(c) for c in r] for r in self.rows]))
        return Fraction(self.denominator**n) / det


@lru_cache(maxsize=None)
def _basis_inverse(rows):
    return inverse([[Fraction(c) for c in r] for r in rows])


def _order_from_generators(vectors, n):
    """HNF of rational row vectors, returned as an Order."""
    den = 1
    for v in vectors:
        for c in v:
            den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    ints = [[int(Fraction(c) * den) for c in v] for v in vectors]
    h = hnf_rows(ints)
    if len(h) != n:
        raise ArithmeticError("generators do not span a full lattice")
    g = 0
    for r in h:
        for c in r:
            g = gcd(g, c)
    g = gcd(g, den)
    return Order([[c // g for c in r] for r in h], den // g)


def _radical_basis(order: Order, p: int):
    n = len(order.rows)
    w = order.elements()
    q = p
    while q < n:
        q *= p
    frob = []
    for x in w:
        c = order.coords_of(x**q)
        frob.append([int(t) % p for t in c])
    # kernel of the Frobenius (row action) over F_p
    cols = [[frob[i][j] for i in range(n)] for j in range(n)]
    ker = kernel_mod_p(cols, n, p)
    gens = []
    for v in ker:
        gens.append(sum((wi * int(c) for wi, c in zip(w, v)), LElem(0)).coords())
    gens += [(x * p).coords() for x in w]
    return _order_from_generators(gens, n)


def _multiplier_step(order: Order, p: int):
    n = len(order.rows)
    w = order.elements()
    rad = _radical_basis(order, p)
    rb = rad.elements()
    # columns indexed by (k, l): coordinate l of w_i * rb_k in the radical basis
    big = []
    for x in w:
        row = []
        for b in rb:
            row.extend(int(c) % p for c in rad.coords_of(x * b))
        big.append(row)
    cols = [[big[i][j] for i in range(n)] for j in range(len(big[0]))]
    ker = kernel_mod_p(cols, n, p)
    gens = []
    for v in ker:
        gens.append([c / p for c in sum((wi * int(c) for wi, c in zip(w, v)), LElem(0)).coords()])
    gens += [x.coords() for x in w]
    return _order_from_generators(gens, n)


@dataclass
class MaximalOrderResult:
    order: Order
    iterations: int
    index: Fraction
    v2_disc_equation_order: int
    v2_disc_order: int
    contains_printed: dict = field(default_factory=dict)


@lru_cache(maxsize=None)
def two_maximal_order() -> MaximalOrderResult:
    """Round-2 saturation of Z[T] at 2."""
    f = _F()
    n = f.degree
    order = Order([[1 if i == j else 0 for j in range(n)] for i in range(n)], 1)
    for it in range(1, 7):
        new = _multiplier_step(order, 2)
        if new.index_over_equation_order() == order.index_over_equation_order():
            break
        order = new
    else:
        raise AssertionError("2-saturation did not terminate within 6 iterations")
    idx = order.index_over_equation_order()
    assert idx.denominator == 1 and idx.numerator & (idx.numerator - 1) == 0
    d = discriminant(f)
    v_eq = vp(d.numerator, 2)
    v_o = v_eq - 2 * vp(idx.numerator, 2)
    contains = {name: order.contains(x) for name, x in named_elements().items()}
    return MaximalOrderResult(order, it, idx, v_eq, v_o, contains)


# --- completion at 3701 -----------------------------------------------------------------


def _lift_pair(f_int, g, h, p, k):
    """Lift f = g*h mod p to mod p^k (g monic, g and h coprime mod p)."""
    Fp = FiniteField(p)
    gp = UniPoly([c % p for c in g], Fp)
    hp = UniPoly([c % p for c in h], Fp)
    one, s, t = poly_xgcd(gp, hp)
    assert one.degree == 0
    g, h = list(g), list(h)
    mod = p
    for _ in range(1, k):
        prod = UniPoly(g) * UniPoly(h)
        e = [(Fraction(a) - b) for a, b in zip(_pad(f_int, len(f_int)), _pad(prod.coeffs, len(f_int)))]
        assert all(c.denominator == 1 and c.numerator % mod == 0 for c in e)
        ep = UniPoly([int(c) // mod % p for c in e], Fp)
        dg = (t * ep) % gp
        dh = (s * ep) % hp
        # f - (g + mod dg)(h + mod dh) = mod (e' - dg h - dh g) + O(mod^2), with s g + t h = 1
        g = [int(a) + mod * int(b) for a, b in zip(_pad(g, len(g)), _pad([int(c) for c in dg.coeffs], len(g)))]
        h = [int(a) + mod * int(b) for a, b in zip(_pad(h, len(h)), _pad([int(c) for c in dh.coeffs], len(h)))]
        mod *= p
    m = p**k
    return [c % m for c in g], [c % m for c in h]


def _pad(c, n):
    c = list(c)
    return c + [0] * (n - len(c))


@dataclass(frozen=True)
class Completion3701:
    p: int
    k: int
    linear: tuple
    quadratic: tuple
    cubic: tuple
    root: int
    ramified_residue: int

    def factors(self):
        return UniPoly(self.linear), UniPoly(self.quadratic), UniPoly(self.cubic)


@lru_cache(maxsize=None)
def completion_3701(k: int = 8) -> Completion3701:
    p = 3701
    f = _F()
    _, fi = f.clear_denominators()
    Fp = FiniteField(p)
    fp = UniPoly([c % p for c in fi], Fp)
    roots = modp_roots(fi, p)
    fprime = fp.derivative()
    simple = [r for r in roots if fprime(Fp(r)) != 0]
    double = [r for r in roots if fprime(Fp(r)) == 0]
    assert len(simple) == 1 and len(double) == 1
    r1, r2 = simple[0], double[0]
    lin = [(-r1) % p, 1]
    quad = [r2 * r2 % p, (-2 * r2) % p, 1]
    rest = fp.exact_div(UniPoly(lin, Fp) * UniPoly(quad, Fp))
    cubic = [int(c) for c in rest.coeffs]
    # lift linear against the rest, then quadratic against cubic
    qc = [int(c) for c in (UniPoly(quad, Fp) * rest).coeffs]
    lin_l, qc_l = _lift_pair(fi, lin, qc, p, k)
    m = p**k
    quad_l, cub_l = _lift_pair_mod(qc_l, quad, cubic, p, k)
    return Completion3701(p, k, tuple(lin_l), tuple(quad_l), tuple(cub_l), (-lin_l[0]) % m, r2)


def _lift_pair_mod(target, g, h, p, k):
    """As _lift_pair, for a target only known modulo p^k."""
    return _lift_pair(list(target), g, h, p, k)


def check_completion(c: Completion3701):
    """Product of lifted factors is f mod p^k, with the stated residues mod p."""
    f = _F()
    _, fi = f.clear_denominators()
    m = c.p**c.k
    lin, quad, cub = c.factors()
    prod = lin * quad * cub
    ok = all((Fraction(a) - b) % m == 0 for a, b in zip(_pad(fi, 7), _pad(prod.coeffs, 7)))
    ok_lin = [int(x) % c.p for x in c.linear] == [(-1371) % c.p, 1]
    q = [int(x) % c.p for x in c.quadratic]
    ok_quad = q == [1727 * 1727 % c.p, (-2 * 1727) % c.p, 1]
    # Eisenstein at the double residue: T - 1727 is a uniformizer of E
    eis = vp(int(UniPoly(c.quadratic)(1727)), c.p) == 1
    return {"product": ok, "linear": ok_lin, "quadratic": ok_quad, "uniformizer": eis}


PLACES = ("L2", "Q3701", "E", "F")


def _frac_mod(x: Fraction, p):
    return x.numerator * pow(x.denominator, -1, p) % p


def local_valuation(x: LElem, place: str, k: int = 8):
    """(valuation, residue datum) of x at one component of L_2 or L_3701.

    Residues: an integer mod 3701 for Q3701 and E; the coefficient list of a
    polynomial mod (cubic, 3701) for F; None for L2.
    """
    if x.is_zero():
        raise ValueError("valuation of zero")
    if place == "L2":
        return Fraction(vp(l_norm(x), 2), 3), None
    if place not in PLACES:
        raise ValueError(f"unknown place {place!r}")
    for attempt in (k, 2 * k):
        try:
            return _local_3701(x, place, completion_3701(attempt))
        except _PrecisionError:
            continue
    raise ArithmeticError("precision of lifted factors insufficient")


class _PrecisionError(Exception):
    pass


def _checked_v(value: Fraction, p, k):
    if value == 0:
        raise _PrecisionError
    v = vp(value, p)
    if v >= k - 1:
        raise _PrecisionError
    return v


def _local_3701(x: LElem, place, c: Completion3701):
    p, k = c.p, c.k
    if place == "Q3701":
        val = x.rep(Fraction(c.root))
        v = _checked_v(val, p, k)
        return v, _frac_mod(val / Fraction(p) ** v, p)
    if place == "F":
        cub = UniPoly(c.cubic)
        n = resultant(cub, x.rep)
        v = _checked_v(n, p, k)
        assert v % 3 == 0
        v //= 3
        u = (x.rep * Fraction(1, p**v)) % cub
        return v, [_frac_mod(a, p) for a in _pad(u.coeffs, 3)]
    quad = UniPoly(c.quadratic)
    n = resultant(quad, x.rep)
    v = _checked_v(n, p, k)
    # unit part: x * conj(pi)^v / N(pi)^v with pi = T - r
    r = c.ramified_residue
    pi_conj = UniPoly([-quad[1] - r, -1])
    npi = quad(r)
    u = (x.rep * pi_conj**v) % quad
    u = u * (Fraction(1) / Fraction(npi) ** v)
    a0 = u(Fraction(r))  # reduce modulo the maximal ideal (pi, p)
    return v, _frac_mod(a0, p)


# --- local square classes -----------------------------------------------------------------


SCALARS = {2: (1, -1, 2, -2, 3, -3, 6, -6), 3701: (1, 2, 3701, 2 * 3701)}


def _is_square_3701(x: LElem):
    for place in ("Q3701", "E"):
        v, res = local_valuation(x, place)
        if v % 2 or legendre(res, 3701) != 1:
            return False, place
    v, res = local_valuation(x, "F")
    if v % 2:
        return False, "F"
    c = completion_3701()
    Fq = FiniteField(3701)
    cub = UniPoly([int(a) % 3701 for a in c.cubic], Fq)
    # a unit of F is a square iff its residue norm to F_p is a square
    nrm = resultant(cub, UniPoly(res, Fq))
    if legendre(int(nrm), 3701) != 1:
        return False, "F"
    return True, None


def _residue_reps():
    t = LElem.T()
    return [LElem(c0) + t * c1 + t * t * c2 for c0, c1, c2 in product((0, 1), repeat=3)]


def _v2(x: LElem):
    if x.is_zero():
        return float("inf")
    return Fraction(vp(l_norm(x), 2), 3)


def _is_square_2(x: LElem, record):
    if two_maximal_order().v2_disc_order == two_maximal_order().v2_disc_equation_order:
        raise AssertionError("order is not 2-maximal")
    alpha = named_elements()["alpha"]
    v = _v2(x)
    if v.denominator != 1 or v % 2:
        record.append({"odd_valuation": True})
        return False
    u = x / alpha ** int(v)
    reps = _residue_reps()
    # z^2 mod alpha^(2j-1) only depends on z mod alpha^j, so the search over
    # z mod alpha^3 can be pruned level by level without losing candidates
    level = [LElem(0)]
    visited = 0
    for j, need in ((0, 1), (1, 3), (2, 5)):
        step = alpha**j
        nxt = []
        for z0 in level:
            for r in reps:
                z = z0 + r * step
                visited += 1
                if _v2(z * z - u) >= need:
                    nxt.append(z)
        level = nxt
    if level:
        z = level[0]
        record.append({"witness": z.rep.to_text(), "valuation": str(_v2(z * z - u))})
        return True
    record.append({"exhausted": 512, "visited": visited})
    return False


def is_local_square(x: LElem, p: int):
    if p == 2:
        return _is_square_2(x, [])
    if p == 3701:
        return _is_square_3701(x)[0]
    raise ValueError("only p = 2 and p = 3701 are supported")


@dataclass
class SquareClassResult:
    p: int
    nontrivial: bool
    square_scalar: object
    log: list


def local_square_class_test(x: LElem, p: int) -> SquareClassResult:
    """Is x trivial in L_p^*/L_p^*2 Q_p^* ?"""
    if x.is_zero():
        raise ValueError("zero has no square class")
    if p not in SCALARS:
        raise ValueError("only p = 2 and p = 3701 are supported")
    log = []
    for r in SCALARS[p]:
        y = x * r
        if p == 2:
            rec = []
            sq = _is_square_2(y, rec)
            log.append({"scalar": r, "detail": rec})
        else:
            sq, where = _is_square_3701(y)
            log.append({"scalar": r, "fails_at": where})
        if sq:
            return SquareClassResult(p, False, r, log)
    return SquareClassResult(p, True, None, log)


def reduction_mod_2():
    """Whether f mod 2 equals (x^3+x+1)^2."""
    _, fi = _F().clear_denominators()
    square = modp_mul([1, 1, 0, 1], [1, 1, 0, 1], 2)
    return modp_trim(fi, 2) == square
