"""From the trace curve tau5(z, c) = 0 to the sextic model y^2 = f(x), and back to c.

The birational chain is stored as data (a list of substitution steps) and
executed by one generic engine; every intermediate curve is compared with
the tabulated polynomial in ``tables/chain.json``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import fixtures
from .exact import BiPoly, UniPoly, poly_gcd, rational_roots, resultant, bi_resultant, squarefree_part
from .dynatomic import tau_fixture

INF_PLUS = "inf+"
INF_MINUS = "inf-"
INFINITY = "inf"


# --- the curve ---------------------------------------------------------------------


class SexticCurve:
    """y^2 = f(x) with deg f = 6 and f squarefree."""

    def __init__(self, coeffs):
        f = coeffs if isinstance(coeffs, UniPoly) else UniPoly(coeffs)
        if f.degree != 6:
            raise ValueError("f must have degree 6")
        if not f.is_squarefree():
            raise ValueError("f must be squarefree")
        self.f = f

    @property
    def coeffs(self):
        return tuple(self.f[i] for i in range(7))

    def fi(self, i):
        return self.f[i]

    def __repr__(self):
        return f"SexticCurve(y^2 = {self.f})"

    def __eq__(self, other):
        return isinstance(other, SexticCurve) and self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def leading_is_square(self):
        return self.f.domain.sqrt(self.f.lc()) is not None

    def contains(self, point, f=None):
        f = f or self.f
        if point in (INF_PLUS, INF_MINUS):
            return self.leading_is_square()
        x, y = point
        return y * y == f(x)

    def small_points(self, bound):
        """Rational points with x = a/b, |a|, |b| <= bound, plus the two points at infinity."""
        from math import gcd

        pts = set()
        for b in range(1, bound + 1):
            for a in range(-bound, bound + 1):
                if gcd(a, b) != 1:
                    continue
                x = Fraction(a, b)
                r = self.f.domain.sqrt(self.f(x))
                if r is not None:
                    pts.add((x, r))
                    pts.add((x, -r))
        out = sorted(pts)
        if self.leading_is_square():
            out += [INF_PLUS, INF_MINUS]
        return out


def curve_C() -> SexticCurve:
    data = fixtures.load("chain.json")
    return SexticCurve(fixtures.poly(data["final_sextic"]["coeffs"]))


def six_points():
    return [(Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1)),
            (Fraction(-3), Fraction(1)), (Fraction(-3), Fraction(-1)), INF_PLUS, INF_MINUS]


# --- singular points ----------------------------------------------------------------


class _Split(Exception):
    def __init__(self, factor):
        self.factor = factor


def _reduce(p: UniPoly, m: UniPoly):
    return p % m


def _inv_mod(a: UniPoly, m: UniPoly):
    g = poly_gcd(a, m)
    if g.degree > 0:
        raise _Split(g)
    from .exact import poly_inverse_mod

    return poly_inverse_mod(a, m)


def _trim_k(p, m):
    p = [_reduce(c, m) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def _kpoly_rem(a, b, m):
    a = list(a)
    inv = _inv_mod(b[-1], m)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = _reduce(a[-1] * inv, m)
        for j in range(len(b)):
            a[k + j] = _reduce(a[k + j] - c * b[j], m)
        a = _trim_k(a, m)
    return a


def _kpoly_gcd_degree(polys, m):
    g = _trim_k(polys[0], m)
    for p in polys[1:]:
        b = _trim_k(p, m)
        a = g
        while b:
            a, b = b, _kpoly_rem(a, b, m)
        g = a
    return len(g) - 1


def gcd_degree_over_quotient(polys, m: UniPoly):
    """Degree of gcd of polynomials in z over Q[c]/(m), splitting m as needed.

    ``polys`` are lists (ascending in z) of UniPoly coefficients in c; m must
    be squarefree.  Returns [(m_i, degree)] with prod m_i = m.
    """
    todo, done = [m.monic()], []
    while todo:
        cur = todo.pop()
        try:
            done.append((cur, _kpoly_gcd_degree(polys, cur)))
        except _Split as s:
            g = s.factor.monic()
            todo.append(g)
            todo.append(cur.exact_div(g).monic())
    return done


@dataclass
class SingularityCertificate:
    eliminant: UniPoly
    components: list = field(default_factory=list)  # (modulus text, gcd degree)

    def as_dict(self):
        return {"eliminant": self.eliminant.to_text(),
                "components": [{"modulus": m, "gcd_degree": d} for m, d in self.components]}


def _z_coeff_polys(F: BiPoly):
    """F as a list over z of UniPolys in c."""
    swapped = F.swap().rows()  # rows indexed by c-power, polys in z
    dz = F.degree(0)
    out = [[Fraction(0)] * (len(swapped)) for _ in range(dz + 1)]
    for j, row in enumerate(swapped):
        for i, c in enumerate(row.coeffs):
            out[i][j] = c
    return [UniPoly(r) for r in out]


def singular_points(F: BiPoly):
    """Affine singular points of F = 0 with rational coordinates, and a certificate.

    Returns (points, nonrational, certificate): ``nonrational`` lists
    components (modulus in c, gcd degree) carrying singular points that are
    not both rational.
    """
    Fz, Fc = F.derivative(0), F.derivative(1)
    if F.degree(0) < 1:
        raise ValueError("F must involve the first variable")
    r1 = bi_resultant(F, Fz, var=0)
    r2 = bi_resultant(F, Fc, var=0) if Fc.degree(0) >= 0 and not Fc.is_zero() else UniPoly([])
    if not r1:
        raise ArithmeticError("Res(F, F_z) vanishes identically: F has a repeated component")
    G = poly_gcd(r1, r2) if r2 else r1.monic()
    cert = SingularityCertificate(G)
    points, nonrational = [], []
    if G.degree <= 0:
        return points, nonrational, cert
    G = squarefree_part(G)
    rest = G
    for c0 in sorted(set(rational_roots(G))):
        rest = rest.exact_div(UniPoly([-c0, 1]))
        fz = [F.eval_y(c0), Fz.eval_y(c0), Fc.eval_y(c0)]
        g = fz[0]
        for p in fz[1:]:
            if p:
                g = poly_gcd(g, p)
        g = g.monic()
        cert.components.append((UniPoly([-c0, 1]).to_text(), max(g.degree, 0)))
        zs = sorted(set(rational_roots(g))) if g.degree > 0 else []
        points.extend((z0, c0) for z0 in zs)
        if g.degree > len(zs):
            nonrational.append((UniPoly([-c0, 1]).to_text(), g.degree - len(zs)))
    if rest.degree > 0:
        polys = [_z_coeff_polys(P) for P in (F, Fz, Fc)]
        polys = [[c for c in p] for p in polys]
        for m, d in gcd_degree_over_quotient(polys, rest):
            cert.components.append((m.to_text(), d))
            if d > 0:
                nonrational.append((m.to_text(), d))
    return sorted(points), nonrational, cert


def node_check(F: BiPoly, point) -> str:
    z0, c0 = (Fraction(v) for v in point)
    if F(z0, c0) != 0 or F.derivative(0)(z0, c0) != 0 or F.derivative(1)(z0, c0) != 0:
        raise ValueError(f"{point} is not a singular point")
    T = translate(F, z0, c0)
    a, b, d = T.coeff(2, 0), T.coeff(1, 1), T.coeff(0, 2)
    if a == 0 and b == 0 and d == 0:
        return "not-node"
    return "node" if b * b - 4 * a * d != 0 else "not-node"


def translate(F: BiPoly, z0, c0) -> BiPoly:
    return F.substitute(BiPoly({(1, 0): 1, (0, 0): z0}), BiPoly({(0, 1): 1, (0, 0): c0}))


# --- the birational chain ------------------------------------------------------------


@dataclass
class BirationalStep:
    kind: str  # translate, blowup, axis-shift, quadratic-discriminant, rescale
    description: str
    old_vars: tuple
    new_vars: tuple
    substitution: dict  # old variable -> expression text in the new variables
    divisor: Fraction  # the result is (substituted polynomial) / divisor
    result: BiPoly
    expected: BiPoly
    monomial_divided: tuple = (0, 0)

    def matches(self):
        return self.result == self.expected

    def as_dict(self):
        return {
            "kind": self.kind,
            "description": self.description,
            "old_vars": list(self.old_vars),
            "new_vars": list(self.new_vars),
            "substitution": self.substitution,
            "divisor": str(self.divisor),
            "monomial_divided": list(self.monomial_divided),
            "result_rows": self.result.to_text_rows(),
            "matches_table": self.matches(),
        }


def _bp(terms):
    return BiPoly(terms)


def _normalize_to(poly: BiPoly, expected: BiPoly):
    """Scalar d with poly / d == expected, or the primitive normalisation if no match."""
    k = max(expected.terms)
    d = poly.coeff(*k) / expected.terms[k] if poly.coeff(*k) else Fraction(1)
    if d != 0 and poly.scale(1 / d) == expected:
        return d
    return poly.content() * (1 if poly.terms[max(poly.terms)] > 0 else -1)


def _rows(data, key):
    return fixtures.bipoly(data[key]["rows"])


class ChainError(ArithmeticError):
    pass


def hyperelliptic_chain(strict: bool = True):
    """Run the substitution chain on tau5; returns (SexticCurve, steps)."""
    data = fixtures.load("chain.json")
    tau = tau_fixture(5)
    z0, c0 = (Fraction(v) for v in data["node"])
    steps = []

    # 1. move the node to the origin: z = r + z0, c = s + c0
    F = tau.substitute(_bp({(1, 0): 1, (0, 0): z0}), _bp({(0, 1): 1, (0, 0): c0}))
    exp1 = _rows(data, "translated")
    d = _normalize_to(F, exp1)
    F = F.scale(1 / d)
    steps.append(BirationalStep("translate", "move the node to the origin", ("z", "c"), ("r", "s"),
                                {"z": f"r + {z0}", "c": f"s + {c0}"}, d, F, exp1))

    # 2. blow up: s = r t, divide by r^2
    G = F.substitute(_bp({(1, 0): 1}), _bp({(1, 1): 1}))
    low = min(i for i, _ in G.terms)
    G = G.divide_monomial(low, 0)
    exp2 = _rows(data, "blown_up")
    steps.append(BirationalStep("blowup", "blow up the node", ("r", "s"), ("r", "t"),
                                {"r": "r", "s": "r*t"}, Fraction(1), G, exp2, (low, 0)))

    # 3. r = q - t moves the singular point at infinity onto an axis
    H = G.substitute(_bp({(1, 0): 1, (0, 1): -1}), _bp({(0, 1): 1}))
    exp3 = _rows(data, "axis_shifted")
    steps.append(BirationalStep("axis-shift", "move the singularity at infinity to an axis", ("r", "t"), ("q", "t"),
                                {"r": "q - t", "t": "t"}, Fraction(1), H, exp3))

    # 4. quadratic in t: p = 2 A t + B, p^2 = B^2 - 4 A C
    if H.degree(1) != 2:
        raise ChainError("axis-shifted curve is not quadratic in t")
    A, B, C = (_coeff_in_second(H, k) for k in (2, 1, 0))
    disc = B * B - A * C * 4
    D = BiPoly({(i, 0): c for i, c in enumerate(disc.coeffs)}) - BiPoly({(0, 2): 1})
    exp4 = BiPoly({(i, 0): c for i, c in enumerate(fixtures.poly(data["discriminant_sextic"]["coeffs"]).coeffs)}) \
        - BiPoly({(0, 2): 1})
    steps.append(BirationalStep("quadratic-discriminant", "complete the square in t", ("q", "t"), ("q", "p"),
                                {"p": f"2*({A.to_text()})*t + ({B.to_text()})"}, Fraction(1), D, exp4))
    A_q, B_q = A, B

    # 5. rescale: p = 192 y, q = -1 - 4x/3, divide by 192^2
    resc = data["rescale"]
    k = Fraction(resc["p_over_y"])
    qx = fixtures.poly(resc["q_of_x"])
    E = D.substitute(_bp({(1, 0): qx[1], (0, 0): qx[0]}), _bp({(0, 1): k}))
    div = Fraction(resc["divisor"])
    E = E.scale(-1 / div)  # now y^2 - f(x)
    f = UniPoly([-c for c in E.eval_y(0).coeffs])
    final = fixtures.poly(data["final_sextic"]["coeffs"])
    exp5 = BiPoly({(i, 0): -c for i, c in enumerate(final.coeffs)}) + BiPoly({(0, 2): 1})
    steps.append(BirationalStep("rescale", "rescale to y^2 = f(x)", ("q", "p"), ("x", "y"),
                                {"p": f"{k}*y", "q": f"{qx[0]} + {qx[1]}*x"}, div, E, exp5))
    if k * k != div:
        raise ChainError("rescaling divisor is not the square of the p scale")

    bad = [s.kind for s in steps if not s.matches()]
    if strict and bad:
        raise ChainError(f"intermediate polynomial mismatch at {bad}")
    curve = SexticCurve(f)
    curve.chain_data = {"A": A_q, "B": B_q, "z0": z0, "c0": c0, "p_scale": k, "q_of_x": qx}
    return curve, steps


def _coeff_in_second(H: BiPoly, k):
    """Coefficient of t^k as a UniPoly in the first variable."""
    dx = H.degree(0)
    return UniPoly([H.coeff(i, k) for i in range(dx + 1)])


# --- function field of y^2 = f(x) ------------------------------------------------------


class FuncElem:
    """(a(x) + b(x) y) / d(x) in Q(x)[y]/(y^2 - f)."""

    __slots__ = ("a", "b", "d", "f")

    def __init__(self, a, b, d, f):
        self.a, self.b, self.d, self.f = a, b, d, f

    @classmethod
    def const(cls, c, f):
        return cls(UniPoly([c]), UniPoly([]), UniPoly([1]), f)

    def __add__(self, o):
        if not isinstance(o, FuncElem):
            o = FuncElem.const(o, self.f)
        return FuncElem(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d, self.d * o.d, self.f)._norm()

    __radd__ = __add__

    def __neg__(self):
        return FuncElem(-self.a, -self.b, self.d, self.f)

    def __sub__(self, o):
        return self + (-o if isinstance(o, FuncElem) else -Fraction(o))

    def __mul__(self, o):
        if not isinstance(o, FuncElem):
            o = FuncElem.const(o, self.f)
        a = self.a * o.a + self.b * o.b * self.f
        b = self.a * o.b + self.b * o.a
        return FuncElem(a, b, self.d * o.d, self.f)._norm()

    __rmul__ = __mul__

    def __pow__(self, e):
        r = FuncElem.const(1, self.f)
        for _ in range(e):
            r = r * self
        return r

    def inverse(self):
        # 1/(a + b y) = (a - b y) / (a^2 - b^2 f)
        n = self.a * self.a - self.b * self.b * self.f
        return FuncElem(self.a * self.d, -self.b * self.d, n, self.f)._norm()

    def __truediv__(self, o):
        if not isinstance(o, FuncElem):
            o = FuncElem.const(o, self.f)
        return self * o.inverse()

    def _norm(self):
        g = poly_gcd(poly_gcd(self.a, self.b) if self.b else self.a, self.d) if (self.a or self.b) else self.d
        if g.degree > 0:
            return FuncElem(self.a.exact_div(g), self.b.exact_div(g), self.d.exact_div(g), self.f)
        return self

    def is_zero(self):
        return not self.a and not self.b

    def evaluate(self, x, y):
        den = self.d(x)
        num = self.a(x) + self.b(x) * y
        return num, den


def composite_map(curve=None, steps=None):
    """(z, c) as FuncElems in x, y on the sextic model."""
    if curve is None:
        curve, steps = hyperelliptic_chain()
    cd = curve.chain_data
    f = curve.f
    X = FuncElem(UniPoly([0, 1]), UniPoly([]), UniPoly([1]), f)
    Y = FuncElem(UniPoly([]), UniPoly([1]), UniPoly([1]), f)
    q = X * cd["q_of_x"][1] + cd["q_of_x"][0]
    p = Y * cd["p_scale"]

    def ev(poly):
        acc = FuncElem.const(0, f)
        for c in reversed(poly.coeffs):
            acc = acc * q + c
        return acc

    t = (p - ev(cd["B"])) / (ev(cd["A"]) * 2)
    r = q - t
    s = r * t
    z = r + cd["z0"]
    c = s + cd["c0"]
    return z, c


def pullback_vanishes(F: BiPoly, z: FuncElem, c: FuncElem) -> bool:
    acc = FuncElem.const(0, z.f)
    zp = [FuncElem.const(1, z.f)]
    cp = [FuncElem.const(1, z.f)]
    for _ in range(F.degree(0)):
        zp.append(zp[-1] * z)
    for _ in range(F.degree(1)):
        cp.append(cp[-1] * c)
    for (i, j), v in F.terms.items():
        acc = acc + zp[i] * cp[j] * v
    return acc.is_zero()


# --- the c-map --------------------------------------------------------------------------


def cmap_polys():
    data = fixtures.load("cmap.json")
    return (fixtures.poly(data["P0"]), fixtures.poly(data["P1"]), fixtures.poly(data["S"]),
            fixtures.poly(data["first_denominator"]))


def cmap_identity_factor():
    """The polynomial (P0^2 - P1^2 f) / S, which makes the two c-formulas agree."""
    P0, P1, S, den = cmap_polys()
    f = curve_C().f
    return (P0 * P0 - P1 * P1 * f).exact_div(S)


@dataclass
class Laurent:
    """Truncated Laurent series in x at infinity: sum coeffs[i] x^(top - i)."""

    top: int
    coeffs: list

    def terms(self):
        return [(self.top - i, c) for i, c in enumerate(self.coeffs)]

    def __mul__(self, o):
        n = min(len(self.coeffs), len(o.coeffs))
        out = [Fraction(0)] * n
        for i in range(n):
            for j in range(n - i):
                out[i + j] += self.coeffs[i] * o.coeffs[j]
        return Laurent(self.top + o.top, out)

    def __add__(self, o):
        top = max(self.top, o.top)
        bottom = max(self.top - len(self.coeffs), o.top - len(o.coeffs))
        out = []
        for e in range(top, bottom, -1):
            v = Fraction(0)
            if 0 <= self.top - e < len(self.coeffs):
                v += self.coeffs[self.top - e]
            if 0 <= o.top - e < len(o.coeffs):
                v += o.coeffs[o.top - e]
            out.append(v)
        return Laurent(top, out)._strip()

    def __neg__(self):
        return Laurent(self.top, [-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-o)

    def _strip(self):
        cs = list(self.coeffs)
        top = self.top
        while cs and cs[0] == 0:
            cs.pop(0)
            top -= 1
        return Laurent(top, cs)

    def inverse(self):
        s = self._strip()
        if not s.coeffs:
            raise ZeroDivisionError("series has no nonzero terms within precision")
        a0 = s.coeffs[0]
        n = len(s.coeffs)
        inv = [Fraction(0)] * n
        inv[0] = 1 / a0
        for k in range(1, n):
            inv[k] = -sum(s.coeffs[j] * inv[k - j] for j in range(1, k + 1)) / a0
        return Laurent(-s.top, inv)

    def __truediv__(self, o):
        return self * o.inverse()

    @classmethod
    def from_poly(cls, p: UniPoly, n):
        d = p.degree
        cs = [p[d - i] if d - i >= 0 else Fraction(0) for i in range(n)]
        return cls(d, cs)


def infinity_expansion(branch: str, k: int, f: UniPoly | None = None) -> Laurent:
    """First k terms of y = +-sqrt(f(x)) at infinity (y / x^3 -> +-1)."""
    if k < 1:
        raise ValueError("need at least one term")
    f = f or curve_C().f
    lead = f.domain.sqrt(f.lc())
    if lead is None:
        raise ValueError("leading coefficient is not a square")
    # y = x^3 * lead * sqrt(1 + w) with f/(lead^2 x^6) = 1 + a1/x + ...
    a = [f[6 - i] / f.lc() for i in range(k)]
    s = [Fraction(0)] * k
    s[0] = Fraction(1)
    for n in range(1, k):
        s[n] = (a[n] - sum(s[i] * s[n - i] for i in range(1, n))) / 2
    sign = 1 if branch in ("+", INF_PLUS) else -1
    return Laurent(3, [sign * lead * c for c in s])


def c_at_infinity(branch: str, terms: int = 8):
    """(value, pole_order, leading coefficient) of c at the given point at infinity."""
    P0, P1, S, den = cmap_polys()
    y = infinity_expansion(branch, terms + 8)
    n = terms + 8
    if branch in ("+", INF_PLUS):
        num = Laurent.from_poly(P0, n) + Laurent.from_poly(P1, n) * y
        c = num / Laurent.from_poly(den, n)
    else:
        dd = (Laurent.from_poly(P0, n) - Laurent.from_poly(P1, n) * y) * Laurent(0, [Fraction(2)] + [Fraction(0)] * (n - 1))
        c = Laurent.from_poly(S, n) / dd
    c = c._strip()
    order = c.top
    if order > 0:
        return INFINITY, order, c.coeffs[0]
    if order == 0:
        return c.coeffs[0], 0, c.coeffs[0]
    return Fraction(0), order, c.coeffs[0]


def c_map(point):
    """c-value at a rational point of the sextic model (INFINITY for a pole)."""
    if point in (INF_PLUS, INF_MINUS):
        return c_at_infinity(point)[0]
    x, y = (Fraction(v) for v in point)
    P0, P1, S, den = cmap_polys()
    f = curve_C().f
    if y * y != f(x):
        raise ValueError(f"{point} is not on the curve")
    num2, den2 = S(x), 2 * (P0(x) - P1(x) * y)
    if not (num2 == 0 and den2 == 0):
        return INFINITY if den2 == 0 else num2 / den2
    num1, den1 = P0(x) + P1(x) * y, den(x)
    if num1 == 0 and den1 == 0:
        raise ArithmeticError(f"both c-formulas are indeterminate at {point}")
    return INFINITY if den1 == 0 else num1 / den1


def c_map_table():
    return [{"point": p, "c": c_map(p)} for p in six_points()]


def has_rational_root(f: UniPoly) -> bool:
    return bool(rational_roots(f))
