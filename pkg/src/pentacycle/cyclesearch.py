"""Bounded-height search on tau6(x, c) = 0 and checks on the stable 5-cycle fields.

The scan runs in both directions: for each small x the cubic tau6(x, .) is
solved over Q, and for each small c the degree-9 polynomial tau6(., c).
Hits from the two passes are merged.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import fixtures
from .dynatomic import dynatomic_poly, g_poly, tau_fixture, multiplicative_order
from .exact import UniPoly, discriminant, factor_degree_pattern, poly_gcd, rational_roots
from .localnum import zp_integer_root_count


@dataclass
class ScanResult:
    points: list
    bound: int
    x_first: list = field(default_factory=list)
    c_first: list = field(default_factory=list)

    @property
    def directions_agree(self):
        """Both passes see the same points once both coordinates are within the bound."""
        inside = lambda pts: {pt for pt in pts if max(height(pt[0]), height(pt[1])) <= self.bound}
        return inside(self.x_first) == inside(self.c_first)

    def as_dict(self):
        return {"bound": self.bound, "points": [[str(x), str(c)] for x, c in self.points],
                "directions_agree": self.directions_agree}


def height(v: Fraction) -> int:
    return max(abs(v.numerator), v.denominator)


def reduced_fractions(bound: int, numerator: int):
    """numerator/s in lowest terms with 1 <= s <= bound."""
    return [Fraction(numerator, s) for s in range(1, bound + 1) if gcd(numerator, s) == 1]


def _scan_numerator(args):
    numerator, bound = args
    tau = tau_fixture(6)
    xs, cs = [], []
    for v in reduced_fractions(bound, numerator):
        for c in set(rational_roots_or_empty(tau.eval_x(v))):
            xs.append((v, c))
        for x in set(rational_roots_or_empty(tau.eval_y(v))):
            cs.append((x, v))
    return numerator, xs, cs


def rational_roots_or_empty(p: UniPoly):
    if p.is_zero():
        raise ArithmeticError("tau6 vanishes identically on a line")
    if p.degree < 1:
        return []
    return rational_roots(p)


def _load_checkpoint(path, bound):
    if not path or not os.path.exists(path):
        return None, [], []
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("bound") != bound:
        return None, [], []
    conv = lambda pts: [(Fraction(a), Fraction(b)) for a, b in pts]
    return data["last_numerator"], conv(data["x_first"]), conv(data["c_first"])


def _save_checkpoint(path, bound, last, xs, cs):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump({"bound": bound, "last_numerator": last,
                   "x_first": [[str(a), str(b)] for a, b in xs],
                   "c_first": [[str(a), str(b)] for a, b in cs]}, fh)
    os.replace(tmp, path)


def tau6_scan(bound: int, jobs: int = 1, checkpoint: str | None = None) -> ScanResult:
    """All rational points of tau6 = 0 with x or c of height <= bound."""
    if bound < 1:
        raise ValueError("bound must be positive")
    numerators = list(range(-bound, bound + 1))
    last, xs, cs = _load_checkpoint(checkpoint, bound)
    if last is not None:
        numerators = [n for n in numerators if n > last]
    tasks = [(n, bound) for n in numerators]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_scan_numerator, tasks, chunksize=4)
            for n, a, b in results:
                xs.extend(a)
                cs.extend(b)
                if checkpoint:
                    _save_checkpoint(checkpoint, bound, n, xs, cs)
    else:
        for t in tasks:
            n, a, b = _scan_numerator(t)
            xs.extend(a)
            cs.extend(b)
            if checkpoint:
                _save_checkpoint(checkpoint, bound, n, xs, cs)
    xs, cs = sorted(set(xs)), sorted(set(cs))
    tau = tau_fixture(6)
    points = sorted(set(xs) | set(cs))
    for x, c in points:
        assert tau(x, c) == 0
    return ScanResult(points, bound, xs, cs)


def known_tau6_points():
    data = fixtures.load("cycle_fields.json")
    return sorted((fixtures.frac(x), fixtures.frac(c)) for x, c in data["tau6_points"])


# --- stable 5-cycles --------------------------------------------------------------


class CycleFieldError(ArithmeticError):
    pass


def _iterate_sum(c, n):
    g = g_poly(c)
    it = UniPoly.x()
    total = UniPoly.x()
    for _ in range(n - 1):
        it = g.compose(it)
        total = total + it
    return total


def cycle_quintic(c) -> UniPoly:
    """The quintic factor of Phi5(z, c) whose roots form a rational-trace 5-cycle."""
    c = Fraction(c)
    traces = sorted(set(rational_roots(tau_fixture(5).eval_y(c))))
    if not traces:
        raise CycleFieldError(f"tau5(., {c}) has no rational root")
    phi = dynatomic_poly(5).eval_y(c)
    s = _iterate_sum(c, 5)
    found = []
    for x0 in traces:
        q = poly_gcd(phi, s - x0)
        if q.degree == 5:
            found.append(q.monic())
    if len(found) != 1:
        raise CycleFieldError(f"expected one quintic factor, found degrees {[q.degree for q in found]}")
    q = found[0]
    if not (phi % q).is_zero():
        raise CycleFieldError("quintic does not divide Phi5")
    if irreducibility_witness(q) is None:
        raise CycleFieldError("no prime <= 50 certifies irreducibility")
    return q


def integral_model(q: UniPoly):
    """(k, w) with k^5 q(w/k) monic integral; k is the smallest such integer."""
    cs = [Fraction(v) for v in q.monic().coeffs]
    n = len(cs) - 1
    k = 1
    while not all((cs[i] * Fraction(k) ** (n - i)).denominator == 1 for i in range(n + 1)):
        k += 1
    return k, [int(cs[i] * Fraction(k) ** (n - i)) for i in range(n + 1)]


def _primes(limit):
    return [p for p in range(2, limit + 1) if all(p % d for d in range(2, int(p**0.5) + 1))]


def _good_primes(q, limit=50):
    _, ints = integral_model(q)
    d = discriminant(UniPoly(ints))
    return [p for p in _primes(limit) if d.numerator % p]


def irreducibility_witness(q: UniPoly):
    _, ints = integral_model(q)
    for p in _good_primes(q):
        if factor_degree_pattern(ints, p) == [5]:
            return p
    return None


def prime_support(n: int):
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _subgroup(gens, n):
    """Subgroup of (Z/n)^* generated by gens."""
    H = {1}
    frontier = [1]
    while frontier:
        h = frontier.pop()
        for g in gens:
            y = h * g % n
            if y not in H:
                H.add(y)
                frontier.append(y)
    return H


def _units(n):
    return [a for a in range(1, n) if gcd(a, n) == 1]


def stable_cycle_field_report(c) -> dict:
    c = Fraction(c)
    q = cycle_quintic(c)
    disc = discriminant(q)
    k, ints = integral_model(q)
    patterns = {p: factor_degree_pattern(ints, p) for p in _good_primes(q)}
    cyclic_signature = all(pt in ([5], [1, 1, 1, 1, 1]) for pt in patterns.values())
    fx = fixtures.load("cycle_fields.json")["quintic_fields"][str(c)]
    n = fx["conductor"]
    H = _subgroup([g % n for g in fx["subgroup_generators"]], n)
    index = len(_units(n)) // len(H)
    # a prime p not dividing n splits completely in the fixed field of H iff p mod n lies in H
    split_law = {p: (pt == [1] * 5) == (p % n in H) for p, pt in patterns.items() if n % p}
    report = {
        "c": str(c),
        "quintic": q.to_text(),
        "poly_discriminant": str(disc),
        "disc_support": sorted(set(prime_support(disc.numerator)) | set(prime_support(disc.denominator))),
        "integral_model": {"scale": k, "coefficients": ints},
        "patterns": {str(p): pt for p, pt in patterns.items()},
        "cyclic_signature": cyclic_signature,
        "roots_in_Z3": zp_integer_root_count(UniPoly(ints), 3),
        "conductor_fixture": n,
        "field_discriminant_fixture": fx["field_discriminant"],
        "subgroup_index": index,
        "splitting_matches_subgroup": all(split_law.values()),
    }
    return report


def cyclotomic_check_minus_2(q: UniPoly | None = None) -> bool:
    """c = -2: the quintic is the minimal polynomial of zeta11 + 1/zeta11.

    Independent route: the real cyclotomic polynomial of level 11 via the
    recursion T_k(x) = x T_{k-1} - T_{k-2} for 2 cos(k t) in terms of 2 cos t.
    """
    q = q or cycle_quintic(-2)
    # zeta^11 = 1 means sum_{k=-5..5} zeta^k = 0, i.e. 1 + sum_{k=1..5} T_k(x) = 0
    T = [UniPoly([2]), UniPoly([0, 1])]
    for _ in range(4):
        T.append(UniPoly([0, 1]) * T[-1] - T[-2])
    minpoly = UniPoly([1]) + sum(T[1:6], UniPoly([]))
    return minpoly.monic() == q and multiplicative_order(2, 11) == 10
