"""2-descent on J(Q) for the curve y^2 = f(x): images under x - T, local
2-torsion, the partition resolvent and the F_2 bookkeeping G -> G' -> H -> H'
that ends in the rank-one certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath

from .exact import BiPoly, UniPoly, poly_gcd, rational_roots, sturm_real_root_count
from .jacobian import DivClass, D_class, jacobian_C
from .lfield import (LElem, completion_3701, l_norm, local_square_class_test, local_valuation,
                     named_elements, reduction_mod_2, verify_element_factorizations, verify_norms, _F)
from .localnum import real_factor_pattern, vp, zp_integer_root_count
from .count import torsion_bound
from . import fixtures


GENERATORS = ("u1", "u2", "u3", "-1", "alpha", "beta1", "beta2", "beta3")


# --- x - T --------------------------------------------------------------------------


class NotGoodError(ValueError):
    pass


def point_image(x) -> LElem:
    """(x - T) for a point with x-coordinate x (the class [P - inf-])."""
    return LElem(Fraction(x)) - LElem.T()


def _direct_image(d: DivClass, f: UniPoly):
    if d.is_zero():
        return LElem(1)
    if d.u.degree <= 0:
        return None
    if poly_gcd(d.u, f).degree > 0:
        raise NotGoodError("support contains a point with y = 0")
    # u is monic, so u(T) = prod (T - x_P) = prod (x_P - T) up to sign
    return LElem(d.u)


def x_minus_T_image(d: DivClass, J=None) -> LElem:
    """Representative in L^* of the image of d in L^*/L^*2 Q^*."""
    J = J or jacobian_C()
    f = _F()
    img = _direct_image(d, f)
    if img is not None:
        return img
    # supported at infinity only: use image(d) = image((k+1)d) * image(kd)
    for k in range(1, 20):
        a = _direct_image(J.scalar_mul(k + 1, d), f)
        b = _direct_image(J.scalar_mul(k, d), f)
        if a is not None and b is not None:
            return a * b
    raise NotGoodError("no affine multiples found")


# --- local 2-torsion ---------------------------------------------------------------------


@dataclass(frozen=True)
class LocalPattern:
    place: object
    orbits: tuple  # (e, f) per irreducible local factor

    def sizes(self):
        return [e * f for e, f in self.orbits]

    def __post_init__(self):
        if sum(e * f for e, f in self.orbits) != 6:
            raise ValueError("orbit sizes must sum to 6")

    def text(self):
        return ";".join(f"({e},{f})" for e, f in self.orbits)


def two_torsion_count(pattern) -> int:
    """#J(K)[2]: even-cardinality unions of root orbits, modulo complement."""
    sizes = pattern.sizes() if isinstance(pattern, LocalPattern) else list(pattern)
    even = 0
    for mask in range(1 << len(sizes)):
        if sum(s for i, s in enumerate(sizes) if mask >> i & 1) % 2 == 0:
            even += 1
    return even // 2


def _perm_of_cycle_type(sizes):
    perm, start = [], 0
    for s in sizes:
        perm.extend(start + (i + 1) % s for i in range(s))
        start += s
    return tuple(perm)


def _closure(gens, n=6):
    ident = tuple(range(n))
    seen, frontier = {ident}, [ident]
    while frontier:
        g = frontier.pop()
        for h in gens:
            k = tuple(h[g[i]] for i in range(n))
            if k not in seen:
                seen.add(k)
                frontier.append(k)
    return seen


def two_torsion_bruteforce(sizes) -> int:
    """Invariant classes of even subsets modulo complement under a
    permutation of the given cycle type (independent route)."""
    g = _perm_of_cycle_type(sizes)
    full = frozenset(range(6))
    classes = set()
    for k in (0, 2, 4, 6):
        for s in combinations(range(6), k):
            s = frozenset(s)
            classes.add(frozenset((s, full - s)))
    fixed = 0
    for c in classes:
        img = frozenset(frozenset(g[i] for i in s) for s in c)
        if img == c:
            fixed += 1
    return fixed


def partitions_of(n, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - k, k):
            yield (k,) + rest


def halves_orbit_check(gens):
    """Galois action on the 16 halves of [2P - inf+ - inf-], modelled as odd
    subsets of roots modulo complement: 6 behave like roots, 10 like the 3|3
    partitions.  Returns (fixed halves, fixed roots, fixed partitions)."""
    group = _closure([tuple(g) for g in gens])
    full = frozenset(range(6))
    halves = set()
    for k in (1, 3, 5):
        for s in combinations(range(6), k):
            s = frozenset(s)
            halves.add(frozenset((s, full - s)))
    assert len(halves) == 16

    def fixed(objs, act):
        return sum(1 for o in objs if all(act(g, o) == o for g in group))

    def act_half(g, c):
        return frozenset(frozenset(g[i] for i in s) for s in c)

    fixed_halves = fixed(halves, act_half)
    fixed_roots = sum(1 for i in range(6) if all(g[i] == i for g in group))
    parts = {c for c in halves if all(len(s) == 3 for s in c)}
    fixed_parts = fixed(parts, act_half)
    assert len(parts) == 10
    return fixed_halves, fixed_roots, fixed_parts


# Model decomposition groups on the six roots, consistent with each local
# pattern: at 2 the roots pair up over the three residue roots (e=2, f=3);
# at 3701 a fixed root, a ramified pair and an unramified triple; at infinity
# complex conjugation.
GROUP_MODELS = {
    2: [(2, 3, 4, 5, 0, 1), (1, 0, 2, 3, 4, 5)],
    3701: [(0, 2, 1, 3, 4, 5), (0, 1, 2, 4, 5, 3)],
    "inf": [(0, 1, 3, 2, 5, 4)],
}


# --- the partition resolvent ------------------------------------------------------------


class _Ball:
    """Complex disc (center, radius) with radii rounded up."""

    __slots__ = ("c", "r")

    def __init__(self, c, r=0):
        self.c = mpmath.mpc(c)
        self.r = mpmath.mpf(r)

    @staticmethod
    def _slack(c):
        return abs(c) * mpmath.ldexp(1, 2 - mpmath.mp.prec)

    def __add__(self, o):
        o = o if isinstance(o, _Ball) else _Ball(o)
        c = self.c + o.c
        return _Ball(c, (self.r + o.r) * (1 + mpmath.ldexp(1, 2 - mpmath.mp.prec)) + self._slack(c))

    def __neg__(self):
        return _Ball(-self.c, self.r)

    def __sub__(self, o):
        o = o if isinstance(o, _Ball) else _Ball(o)
        return self + (-o)

    def __mul__(self, o):
        o = o if isinstance(o, _Ball) else _Ball(o)
        c = self.c * o.c
        r = abs(self.c) * o.r + abs(o.c) * self.r + self.r * o.r
        return _Ball(c, r * (1 + mpmath.ldexp(1, 3 - mpmath.mp.prec)) + self._slack(c))

    def upper(self):
        return abs(self.c) + self.r

    def lower(self):
        return abs(self.c) - self.r


class RefinementError(ArithmeticError):
    pass


def _ball_eval(coeffs, z):
    acc = _Ball(0)
    for c in reversed(coeffs):
        acc = acc * z + _Ball(c)
    return acc


def _certified_roots(f_int):
    n = len(f_int) - 1
    approx = mpmath.polyroots(list(reversed(f_int)), maxsteps=200, extraprec=2 * mpmath.mp.prec)
    df = [i * c for i, c in enumerate(f_int)][1:]
    balls = []
    for z in approx:
        zb = _Ball(z)
        fv, dv = _ball_eval(f_int, zb), _ball_eval(df, zb)
        if dv.lower() <= 0:
            raise RefinementError("derivative not bounded away from zero")
        # some root lies within n |f(z)| / |f'(z)|
        r = n * fv.upper() / dv.lower() * (1 + mpmath.ldexp(1, 4 - mpmath.mp.prec))
        balls.append(_Ball(z, r))
    for a, b in combinations(balls, 2):
        if abs(a.c - b.c) <= a.r + b.r:
            raise RefinementError("root discs overlap")
    return balls


def _three_three_partitions():
    out = []
    for a in combinations(range(1, 6), 2):
        A = (0,) + a
        B = tuple(i for i in range(6) if i not in A)
        out.append((A, B))
    return out


def partition_resolvent(f: UniPoly | None = None, start_prec: int = 64) -> UniPoly:
    """Monic integer polynomial whose roots are a1 a2 a3 + a4 a5 a6 over the
    ten partitions of the roots of f into two triples."""
    f = f or _F()
    d, f_int = f.clear_denominators()
    if f.degree != 6 or f_int[-1] != 1 or d != 1:
        raise ValueError("monic integral sextic required")
    prec = start_prec
    for _ in range(5):
        with mpmath.workprec(prec):
            try:
                roots = _certified_roots(f_int)
                sums = []
                for A, B in _three_three_partitions():
                    pa, pb = _Ball(1), _Ball(1)
                    for i in A:
                        pa = pa * roots[i]
                    for i in B:
                        pb = pb * roots[i]
                    sums.append(pa + pb)
                poly = [_Ball(1)]
                for s in sums:
                    # multiply by (x - s)
                    new = [_Ball(0) for _ in range(len(poly) + 1)]
                    for i, c in enumerate(poly):
                        new[i + 1] = new[i + 1] + c
                        new[i] = new[i] - c * s
                    poly = new
                coeffs = []
                for b in poly:
                    if b.r >= mpmath.mpf("0.25"):
                        raise RefinementError("coefficient radius too large")
                    k = int(mpmath.nint(b.c.real))
                    if abs(b.c - k) > b.r:
                        raise RefinementError("no integer inside a coefficient disc")
                    coeffs.append(k)
                return UniPoly(coeffs)
            except RefinementError:
                prec *= 2
    raise RefinementError("interval refinement stalled after 4 doublings")


def printed_resolvent() -> UniPoly:
    return fixtures.poly(fixtures.load("descent.json")["h"])


# --- local quotients ------------------------------------------------------------------------


def local_pattern(place) -> LocalPattern:
    f = _F()
    if place == 2:
        # one prime above 2 with e=2, f=3: f = (x^3+x+1)^2 mod 2 and (2) = (alpha)^2
        assert reduction_mod_2()
        assert vp(l_norm(named_elements()["alpha"]), 2) == 3
        return LocalPattern(2, ((2, 3),))
    if place == 3701:
        c = completion_3701()
        chk = c and _completion_ok(c)
        assert chk
        return LocalPattern(3701, ((1, 1), (2, 1), (1, 3)))
    if place in ("inf", float("inf")):
        pat = real_factor_pattern(f)
        return LocalPattern("inf", tuple(pat))
    raise ValueError(f"place {place!r} not in S")


def _completion_ok(c):
    from .lfield import check_completion

    return all(check_completion(c).values())


def has_local_root(poly: UniPoly, place) -> bool:
    if place == "inf":
        return sturm_real_root_count(poly) > 0
    # both polynomials are monic, so Z_p roots are the Q_p roots
    return zp_integer_root_count(poly, place) > 0


def halves_index(place) -> int:
    """Index of 2J(K) in ker(x - T) for the local field K."""
    if has_local_root(_F(), place) or has_local_root(printed_resolvent(), place):
        return 1
    return 2


def local_quotient_sizes(place):
    pat = local_pattern(place)
    n2 = two_torsion_count(pat)
    if place == 2:
        norm_factor = Fraction(4)
    elif place == "inf":
        norm_factor = Fraction(1, 4)
    else:
        norm_factor = Fraction(1)
    mod2 = norm_factor * n2
    assert mod2.denominator == 1
    mod2 = int(mod2)
    return mod2, mod2 // halves_index(place)


# --- F_2 linear algebra on G -------------------------------------------------------------


def _norm_class(q: Fraction):
    """Class of q in Q^*/Q^*2 on the basis (-1, 2, 3701); rest must be a square."""
    sign = 1 if q < 0 else 0
    q = abs(q)
    e2 = vp(q, 2)
    e3 = vp(q, 3701)
    rest = q / Fraction(2) ** e2 / Fraction(3701) ** e3
    from .fields import QQ

    if not QQ.is_square(rest):
        raise ArithmeticError("norm has odd support outside {2, 3701}")
    return (sign, e2 % 2, e3 % 2)


def _rref2(vectors, order=None):
    """Row-reduced basis over F_2 with pivots taken in the given column order."""
    n = len(vectors[0]) if vectors else 0
    order = order or list(range(n))
    rows = [list(v) for v in vectors]
    out = []
    for col in order:
        piv = next((r for r in rows if r[col]), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [[a ^ b for a, b in zip(r, piv)] if r[col] else r for r in rows]
        out = [[a ^ b for a, b in zip(r, piv)] if r[col] else r for r in out]
        out.append(piv)
    return out


def _kernel2(matrix_cols, n):
    """Kernel of v -> sum v_i * col_i over F_2 (cols are image vectors)."""
    m = len(matrix_cols[0])
    out = []
    for mask in range(1 << n):
        img = [0] * m
        for i in range(n):
            if mask >> i & 1:
                img = [a ^ b for a, b in zip(img, matrix_cols[i])]
        if not any(img):
            out.append([mask >> i & 1 for i in range(n)])
    return out


def _vec(product):
    return [product.get(g, 0) % 2 for g in GENERATORS]


@dataclass
class HBasis:
    generators: tuple
    rational_images: dict
    norm_classes: dict
    gprime_basis: list
    h_basis: list

    def names(self):
        return [_name(v, self.generators) for v in self.h_basis]


def _name(v, gens):
    return "*".join(g for g, e in zip(gens, v) if e) or "1"


def h_group_basis(generators=GENERATORS) -> HBasis:
    """Basis of H = ker(norm: G' -> Q^*/Q^*2) in the given generator order."""
    els = named_elements()
    facts = {item["prime"]: item for item in verify_element_factorizations()}
    rational = {
        -1: {"-1": 1},
        2: dict(facts[2]["product"]),
        3701: dict(facts[3701]["product"]),
    }
    for q, prod in rational.items():
        u = facts.get(q, {}).get("unit") if q != -1 else None
        if u and (u["sign"] != 1 or u["u1"] or u["u2"] or u["u3"]):
            # fold the unit into the product
            if u["sign"] == -1:
                prod["-1"] = prod.get("-1", 0) + 1
            for k in ("u1", "u2", "u3"):
                prod[k] = prod.get(k, 0) + u[k]
    W = [[prod.get(g, 0) % 2 for g in generators] for prod in rational.values()]
    norms = {g: _norm_class(l_norm(els[g])) for g in generators}
    cols = [list(norms[g]) for g in generators]
    ker = _kernel2(cols, len(generators))
    # reduce modulo W, pivoting W on its last generators so the earlier
    # generators survive into the basis of G'
    Wr = _rref2(W, order=list(reversed(range(len(generators)))))
    w_pivots = [max(i for i, a in enumerate(r) if a) for r in Wr]
    reduced = []
    for v in ker:
        v = list(v)
        for r, pc in zip(Wr, w_pivots):
            if v[pc]:
                v = [a ^ b for a, b in zip(v, r)]
        reduced.append(v)
    basis = _rref2([v for v in reduced if any(v)])
    basis.sort(key=lambda r: next(i for i, a in enumerate(r) if a))
    gprime = [g for i, g in enumerate(generators) if i not in w_pivots]
    return HBasis(tuple(generators), {str(k): v for k, v in rational.items()}, norms, gprime, basis)


def element_of(v, generators=GENERATORS) -> LElem:
    els = named_elements()
    out = LElem(1)
    for g, e in zip(generators, v):
        if e:
            out = out * els[g]
    return out


# --- H' and the rank -----------------------------------------------------------------------


def h_prime_is_trivial():
    """Eliminate every nonzero element of H using the local images at 3701 and 2."""
    hb = h_group_basis()
    T = LElem.T()
    image_3701 = -4 - T
    image_2 = 2 - T
    v_img = local_valuation(image_3701, "E")[0]
    transcript = []
    b1, b2 = hb.h_basis
    for combo in ([1, 0], [0, 1], [1, 1]):
        v = [(combo[0] * a) ^ (combo[1] * b) for a, b in zip(b1, b2)]
        x = element_of(v)
        name = _name(v, hb.generators)
        vE = local_valuation(x, "E")[0]
        entry = {"element": name, "E_valuation": vE, "image_E_valuation": v_img}
        if (vE - v_img) % 2:
            entry["eliminated_at"] = 3701
            transcript.append(entry)
            continue
        t1 = local_square_class_test(x, 2)
        t2 = local_square_class_test(x * image_2, 2)
        entry["class_nontrivial_at_2"] = t1.nontrivial
        entry["times_image_nontrivial_at_2"] = t2.nontrivial
        if t1.nontrivial and t2.nontrivial:
            entry["eliminated_at"] = 2
            transcript.append(entry)
            continue
        entry["eliminated_at"] = None
        transcript.append(entry)
        raise ArithmeticError(f"descent inconclusive at {name}")
    return {"trivial": True, "transcript": transcript}


def generator_checks():
    """The local generators [(2, sqrt 881) - inf-] and [(-4, sqrt 185) - inf-]."""
    from .localnum import PadicNum, hensel_sqrt, legendre

    f = _F()
    out = {}
    y2 = f(Fraction(2))
    out["f(2)"] = int(y2)
    out["f(2)_is_2adic_square"] = int(y2) % 8 == 1 and hensel_sqrt(PadicNum(y2, 2, 12)) is not None
    y4 = f(Fraction(-4))
    out["f(-4)"] = int(y4)
    out["f(-4)_legendre"] = legendre(int(y4), 3701)
    out["2-T_nontrivial_at_2"] = local_square_class_test(point_image(2), 2).nontrivial
    out["-4-T_nontrivial_at_3701"] = local_square_class_test(point_image(-4), 3701).nontrivial
    out["legendre(2,3701)"] = legendre(2, 3701)
    return out


def good_reduction_identity() -> bool:
    """y = 2z + x^3 + x + 1 turns y^2 - f(x) into 4 times the z-model."""
    f = _F()
    x = BiPoly.var(0)
    z = BiPoly.var(1)
    y = z * 2 + x**3 + x + BiPoly.constant(1)
    fx = BiPoly.constant(0)
    for i, c in enumerate(f.coeffs):
        fx = fx + x**i * BiPoly.constant(c)
    lhs = y * y - fx
    rhs_poly = fixtures.poly(fixtures.load("descent.json")["good_reduction_rhs"])
    rhs = BiPoly.constant(0)
    for i, c in enumerate(rhs_poly.coeffs):
        rhs = rhs + x**i * BiPoly.constant(c)
    model = z * z + x**3 * z + x * z + z - rhs
    return lhs == model * 4


def rational_index() -> int:
    """Index of 2J(Q) in ker(x - T) over Q."""
    if rational_roots(_F()) or rational_roots(printed_resolvent()):
        return 1
    return 2


def rank_certificate():
    f = _F()
    tors = torsion_bound(f, [3, 5])
    if tors != 1:
        raise ArithmeticError("torsion bound is not 1")
    norms_ok = all(r["ok"] for r in verify_norms())
    hp = h_prime_is_trivial()
    idx = rational_index()
    size_J_mod_2J = 1 * idx
    rank = size_J_mod_2J.bit_length() - 1  # J(Q) = Z^r with trivial torsion
    J = jacobian_C()
    D = D_class(J)
    cert = {
        "torsion_bound": tors,
        "norms_verified": norms_ok,
        "h_basis": h_group_basis().names(),
        "h_prime": hp,
        "index_ker_over_2J": idx,
        "J_mod_2J": size_J_mod_2J,
        "rank": rank,
        "D_nonzero": not D.is_zero(),
        "local": {str(p): local_quotient_sizes(p) for p in (2, 3701, "inf")},
    }
    return rank, cert
