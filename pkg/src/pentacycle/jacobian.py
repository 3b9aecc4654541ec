"""Jacobian arithmetic for y^2 = f(x), deg f = 6 with square leading coefficient.

A class is stored as an effective degree-2 divisor E = (affine part) +
m_plus*inf+ + m_minus*inf-, standing for [E - inf+ - inf-].  The affine part
is in Mumford form (u, v): u monic, deg v < deg u, v^2 = f mod u.  The zero
class is normalized to E = inf+ + inf-.

Addition composes the affine parts (removing pairs P + iota(P), each of which
is equivalent to inf+ + inf-), and when four points remain fits the function
b*y - a(x), deg a <= 3, through them; the residual intersection R gives the
sum as the class of iota(R).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import UniPoly, poly_gcd, poly_xgcd
from .fields import QQ, FiniteField, FFElem, QuadNumber
from .linalg import kernel
from .model import INF_MINUS, INF_PLUS


@dataclass(frozen=True)
class DivClass:
    u: UniPoly
    v: UniPoly
    m_plus: int
    m_minus: int

    def __post_init__(self):
        if max(self.u.degree, 0) + self.m_plus + self.m_minus != 2:
            raise ValueError("degree of the effective divisor must be 2")

    def key(self):
        return (self.u.coeffs, self.v.coeffs, self.m_plus, self.m_minus)

    def __eq__(self, other):
        return isinstance(other, DivClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_zero(self):
        return self.u.degree == 0 and self.m_plus == 1 and self.m_minus == 1

    def describe(self):
        if self.is_zero():
            return "O"
        return f"u={self.u}, v={self.v}, m+={self.m_plus}, m-={self.m_minus}"

    def __repr__(self):
        return f"DivClass({self.describe()})"


class Jacobian:
    """The group J(K) for y^2 = f(x) over K = QQ, GF(p) or GF(p^2)."""

    def __init__(self, f: UniPoly):
        if f.degree != 6:
            raise ValueError("sextic required")
        self.f = f
        self.domain = f.domain
        if getattr(self.domain, "characteristic", 0) == 2:
            raise ValueError("characteristic 2 not supported")
        s0 = self.domain.sqrt(f.lc())
        if s0 is None:
            raise ValueError("leading coefficient must be a square (rational points at infinity)")
        # y = +-(s0 x^3 + s1 x^2 + ...) at infinity
        s = [s0]
        for n in range(1, 10):
            fn = f[6 - n] if 6 - n >= 0 else self.domain.zero
            acc = fn
            for i in range(1, n):
                acc = acc - s[i] * s[n - i]
            s.append(acc / (2 * s0))
        self._s = s
        one = self.domain.one
        self.one_poly = UniPoly([one], self.domain)
        self.zero = DivClass(self.one_poly, UniPoly([], self.domain), 1, 1)

    @classmethod
    def over(cls, f: UniPoly, p=None, degree=1):
        if p is None:
            return cls(f)
        return cls(f.change_domain(FiniteField(p, degree)))

    def _poly(self, cs):
        return UniPoly(cs, self.domain)

    def on_curve(self, P):
        if P in (INF_PLUS, INF_MINUS):
            return True
        x, y = P
        return y * y == self.f(x)

    # --- construction -------------------------------------------------------

    def from_points(self, P1, P2) -> DivClass:
        mp = [P1, P2].count(INF_PLUS)
        mm = [P1, P2].count(INF_MINUS)
        aff = [P for P in (P1, P2) if P not in (INF_PLUS, INF_MINUS)]
        dom = self.domain
        for P in aff:
            if not isinstance(P[0], QuadNumber) and not self.on_curve(P):
                raise ValueError(f"{P} is not on the curve")
        if len(aff) == 0:
            return self._normalize(self.one_poly, self._poly([]), mp, mm)
        if len(aff) == 1:
            x, y = (dom(c) for c in aff[0])
            return self._normalize(self._poly([-x, 1]), self._poly([y]), mp, mm)
        (x1, y1), (x2, y2) = aff
        if isinstance(x1, QuadNumber) or isinstance(y1, QuadNumber):
            return self._from_conjugates(aff[0], aff[1])
        x1, y1, x2, y2 = dom(x1), dom(y1), dom(x2), dom(y2)
        if x1 != x2:
            slope = (y1 - y2) / (x1 - x2)
            u = self._poly([x1 * x2, -(x1 + x2), 1])
            v = self._poly([y1 - slope * x1, slope])
            return self._normalize(u, v, 0, 0)
        if y1 == -y2:
            return self.zero
        # doubled point with nonzero y: tangent line
        slope = self.f.derivative()(x1) / (2 * y1)
        u = self._poly([x1 * x1, -2 * x1, 1])
        v = self._poly([y1 - slope * x1, slope])
        return self._normalize(u, v, 0, 0)

    def _from_conjugates(self, P, Q):
        x1, y1 = (c if isinstance(c, QuadNumber) else QuadNumber(c, 0 * c, _disc_of(P)) for c in P)
        x2, y2 = (c if isinstance(c, QuadNumber) else QuadNumber(c, 0 * c, x1.d) for c in Q)
        if x1.conjugate() != x2 or y1.conjugate() != y2:
            raise ValueError("points are not conjugate over a quadratic extension")
        for x, y in ((x1, y1), (x2, y2)):
            fx = QuadNumber(self.domain.zero, self.domain.zero, x.d)
            for c in reversed(self.f.coeffs):
                fx = fx * x + c
            if y * y != fx:
                raise ValueError("point is not on the curve")
        if x1 == x2:
            if y1 == -y2:
                return self.zero
            raise ValueError("conjugate points with rational x must be opposite")
        slope = (y1 - y2) / (x1 - x2)
        c0 = y1 - slope * x1
        s = x1 + x2
        p = x1 * x2
        for val in (slope, c0, s, p):
            if val.b != 0:
                raise ArithmeticError("symmetric functions not rational")
        u = self._poly([p.a, -s.a, 1])
        v = self._poly([c0.a, slope.a])
        return self._normalize(u, v, 0, 0)

    def _normalize(self, u, v, mp, mm):
        u = u.monic()
        v = v % u if u.degree > 0 else self._poly([])
        if u.degree > 0:
            if ((v * v - self.f) % u):
                raise ArithmeticError("v^2 != f mod u")
        if mp >= 1 and mm >= 1:
            # an infinite pair is equivalent to inf+ + inf-; what remains has degree 0 modulo it
            mp, mm = mp - 1, mm - 1
            if max(u.degree, 0) + mp + mm == 0:
                return self.zero
            raise ArithmeticError("unreduced divisor")
        return DivClass(u, v, mp, mm)

    # --- group law -----------------------------------------------------------

    def neg(self, a: DivClass) -> DivClass:
        if a.is_zero():
            return a
        return DivClass(a.u, -a.v, a.m_minus, a.m_plus)

    def _compose(self, a: DivClass, b: DivClass):
        """Cantor composition of affine parts; returns (u, v, pairs removed)."""
        u1, v1, u2, v2 = a.u, a.v, b.u, b.v
        d1, e1, e2 = poly_xgcd(u1, u2)
        d, c1, c2 = poly_xgcd(d1, v1 + v2)
        s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (u1 * u2).exact_div(d * d)
        v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + self.f)).exact_div(d)
        v = v % u if u.degree > 0 else self._poly([])
        return u, v, max(d.degree, 0)

    def add(self, a: DivClass, b: DivClass) -> DivClass:
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        u, v, k = self._compose(a, b)
        mp, mm = a.m_plus + b.m_plus, a.m_minus + b.m_minus
        t = min(mp, mm)
        mp, mm, k = mp - t, mm - t, k + t
        if k >= 2:
            return self.zero
        if k == 1:
            return self._normalize(u, v, mp, mm)
        return self._reduce_four(u, v, mp, mm)

    def _series_coeff(self, i):
        return self._s[i] if i < len(self._s) else self.domain.zero

    def _reduce_four(self, u, v, mp, mm):
        dom = self.domain
        zero, one = dom.zero, dom.one
        rows = []
        # unknowns (a0, a1, a2, a3, b) with h = b*y - a(x)
        if u.degree > 0:
            basis = [self._poly([zero] * i + [one]) for i in range(4)]
            red_a = [(-bi) % u for bi in basis]
            red_b = v % u
            for j in range(u.degree):
                rows.append([red_a[i][j] for i in range(4)] + [red_b[j]])
        for sign, mult in ((1, mp), (-1, mm)):
            for i in range(mult):
                row = [zero] * 5
                if 3 - i >= 0:
                    row[3 - i] = -one
                row[4] = self._series_coeff(i) * sign
                rows.append(row)
        ker = kernel(rows, 5, one)
        if len(ker) != 1:
            raise ArithmeticError(f"interpolation space has dimension {len(ker)}")
        a0, a1, a2, a3, b = ker[0]
        if b == 0:
            raise ArithmeticError("degenerate interpolation (b = 0)")
        a = self._poly([a0 / b, a1 / b, a2 / b, a3 / b])
        # h = y - a(x); zeros at infinity relative to 3 (inf+ + inf-)
        zp = self._zero_order_at_infinity(a, 1)
        zm = self._zero_order_at_infinity(a, -1)
        N = a * a - self.f
        if N.degree != 6 - zp - zm:
            raise ArithmeticError("inconsistent intersection at infinity")
        uR = N.monic().exact_div(u) if u.degree > 0 else N.monic()
        rp, rm = zp - mp, zm - mm
        if rp < 0 or rm < 0:
            raise ArithmeticError("interpolating function misses an infinite point")
        vR = a % uR if uR.degree > 0 else self._poly([])
        # result is iota(R)
        return self._normalize(uR, -vR, rm, rp)

    def _zero_order_at_infinity(self, a, sign):
        """Vanishing order of y - a(x) at inf(sign) relative to a pole of order 3."""
        for i in range(7):
            c = self._series_coeff(i) * sign - (a[3 - i] if 3 - i >= 0 else self.domain.zero)
            if c != 0:
                return i
        raise ArithmeticError("function vanishes identically at infinity")

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scalar_mul(self, n: int, a: DivClass) -> DivClass:
        if n < 0:
            return self.scalar_mul(-n, self.neg(a))
        result, base = self.zero, a
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result

    def multiples(self, a: DivClass, limit: int):
        out = [self.zero]
        for _ in range(limit):
            out.append(self.add(out[-1], a))
        return out

    def order(self, a: DivClass, bound: int = 10**6):
        cur, n = a, 1
        while not cur.is_zero():
            cur = self.add(cur, a)
            n += 1
            if n > bound:
                raise ArithmeticError("order exceeds bound")
        return n

    # --- finite field helpers --------------------------------------------------------

    def rational_points(self):
        """All points over a finite base field (affine points then infinities)."""
        if not isinstance(self.domain, FiniteField):
            raise ValueError("only over finite fields")
        pts = []
        for x in self.domain.elements():
            fx = self.f(x)
            r = self.domain.sqrt(fx)
            if r is None:
                continue
            pts.append((x, r))
            if r != -r:
                pts.append((x, -r))
        return pts + [INF_PLUS, INF_MINUS]

    def all_classes(self):
        """Enumerate J(F_q) as reduced divisors (small q only)."""
        if not isinstance(self.domain, FiniteField) or self.domain.degree != 1:
            raise ValueError("only over prime fields")
        seen = {self.zero}
        pts = self.rational_points()
        for i, P in enumerate(pts):
            for Q in pts[i:]:
                seen.add(self.from_points(P, Q))
        # classes whose affine part is an irreducible quadratic
        dom = self.domain
        for c1 in dom.elements():
            for c0 in dom.elements():
                u = self._poly([c0, c1, dom.one])
                if any(u(x) == 0 for x in dom.elements()):
                    continue
                for v1 in dom.elements():
                    for v0 in dom.elements():
                        v = self._poly([v0, v1])
                        if not ((v * v - self.f) % u):
                            seen.add(DivClass(u, v, 0, 0))
        return seen

    def is_diagonal_form(self, a: DivClass) -> bool:
        """True when the class is [P + P - inf+ - inf-] for a point P over the base field."""
        if a.m_plus == 2 or a.m_minus == 2:
            return True
        if a.u.degree != 2:
            return False
        # u = (x - x0)^2 with x0 in the base field
        x0 = -a.u[1] / 2
        return a.u == self._poly([x0 * x0, -2 * x0, 1]) and a.v(x0) != 0


def _disc_of(P):
    for c in P:
        if isinstance(c, QuadNumber):
            return c.d
    raise ValueError("no quadratic coordinate")


# --- named classes on C -----------------------------------------------------------------------


def jacobian_C(p=None, degree=1):
    from .model import curve_C

    return Jacobian.over(curve_C().f, p, degree)


def D_class(J: Jacobian) -> DivClass:
    """D = [inf+ + inf+ - inf+ - inf-] = [inf+ - inf-]."""
    return J.from_points(INF_PLUS, INF_PLUS)


def D_prime(J: Jacobian) -> DivClass:
    return J.scalar_mul(9, D_class(J))


def _sq(n, d):
    return QuadNumber(Fraction(0), Fraction(n), d)


def golden_multiples(J: Jacobian, field: str = "QQ"):
    """The tabulated representatives n*D for n = 0..11, built from their points."""
    from .fixtures import load

    data = load("multiples.json")[field]
    dom = J.domain
    out = []
    for entry in data:
        if entry == "O":
            out.append(J.zero)
            continue
        pts = []
        for P in entry:
            if P in (INF_PLUS, INF_MINUS):
                pts.append(P)
            elif isinstance(P, dict):
                d = int(P["d"])
                x = QuadNumber(Fraction(P["x"][0]), Fraction(P["x"][1]), d)
                y = QuadNumber(Fraction(P["y"][0]), Fraction(P["y"][1]), d)
                pts.append((x, y))
                pts.append((x.conjugate(), y.conjugate()))
            else:
                pts.append((dom(Fraction(P[0])), dom(Fraction(P[1]))))
        out.append(J.from_points(pts[0], pts[1]))
    return out


def multiples_table(limit: int = 11, field: str = "QQ"):
    """n*D for n = 0..limit computed with the group law over QQ or GF(3)."""
    J = jacobian_C(3) if field == "F3" else jacobian_C()
    return J, J.multiples(D_class(J), limit)


def class_to_json(a: DivClass):
    return {"u": a.u.to_text(), "v": a.v.to_text(), "m_plus": a.m_plus, "m_minus": a.m_minus,
            "zero": a.is_zero()}
