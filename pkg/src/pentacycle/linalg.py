"""Exact linear algebra over fields (Fraction or finite field entries) and the integers."""

from __future__ import annotations

from fractions import Fraction


def _zero_like(x):
    return x - x


def determinant(rows):
    """Determinant by fraction-free elimination when entries are ints, Gaussian otherwise."""
    n = len(rows)
    if n == 0:
        return 1
    entries = [c for r in rows for c in r]
    if all(isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1) for c in entries):
        return _bareiss([[int(c) for c in r] for r in rows])
    m = [list(r) for r in rows]
    det = m[0][0] - m[0][0] + 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return _zero_like(m[0][0])
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f != 0:
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
    return det


def _bareiss(m):
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def row_reduce(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows):
    return len(row_reduce(rows)[1])


def kernel(rows, ncols=None, one=Fraction(1)):
    """Basis of the right nullspace {v : rows * v = 0}."""
    if not rows:
        n = ncols
        zero = one - one
        return [[one if i == j else zero for i in range(n)] for j in range(n)]
    m, pivots = row_reduce(rows)
    n = len(m[0])
    zero = one - one
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution x of rows * x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = row_reduce(aug)
    n = len(rows[0])
    if n in pivots:
        return None
    zero = rhs[0] - rhs[0]
    x = [zero] * n
    for i, p in enumerate(pivots):
        x[p] = m[i][n]
    return x


def inverse(rows):
    n = len(rows)
    one = rows[0][0] - rows[0][0] + 1
    zero = one - one
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in m]


def mat_mul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), row[0] - row[0]) for col in zip(*b)] for row in a]


def hnf_rows(rows):
    """Row-style Hermite normal form of an integer matrix (nonzero rows only).

    The rows of the result span the same lattice; the result is upper
    triangular with positive pivots and reduced entries above each pivot.
    """
    m = [[int(c) for c in r] for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    out = []
    for c in range(ncols):
        # gather rows with nonzero entry in column c among remaining
        while True:
            nz = [r for r in m if r[c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda r: abs(r[c]))
            piv = nz[0]
            rest = []
            for r in m:
                if r is piv or r[c] == 0:
                    rest.append(r)
                    continue
                q = r[c] // piv[c]
                rest.append([a - q * b for a, b in zip(r, piv)])
            m = [r for r in rest if any(r)]
        nz = [r for r in m if r[c] != 0]
        if nz:
            piv = nz[0]
            if piv[c] < 0:
                piv = [-a for a in piv]
            m = [r for r in m if r[c] == 0]
            out.append(piv)
    # reduce above pivots
    for i, row in enumerate(out):
        c = next(k for k, v in enumerate(row) if v != 0)
        for j in range(i):
            q = out[j][c] // row[c]
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], row)]
    return out


def kernel_mod_p(rows, ncols, p):
    """Right nullspace basis of an integer matrix modulo a prime p (p = 2 allowed)."""
    m = [[c % p for c in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fcol in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fcol] % p
        basis.append(v)
    return basis
