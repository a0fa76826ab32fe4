"""Exact linear algebra over the integers and rationals.

Everything below runs on Python ints and fractions.Fraction; no floating
point. A matrix is a sequence of equal-length rows. Maps act on row
vectors: the image of v under M is v*M, so compositions read left to
right.

Empty matrices are legitimate inputs for the kernel/saturation helpers;
the ambient dimension is passed explicitly where it cannot be inferred.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def matmul(a, b):
    if not a:
        return []
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_times_mat(v, m):
    return [sum(x * m[i][j] for i, x in enumerate(v)) for j in range(len(m[0]))]


def dot(v, w):
    return sum(x * y for x, y in zip(v, w))


def pair_with(gram, v, w):
    """v * gram * w^T for row vectors v, w."""
    return sum(v[i] * gram[i][j] * w[j] for i in range(len(v)) for j in range(len(w)))


def is_zero_row(row):
    return all(x == 0 for x in row)


def mat_eq(a, b):
    return [list(r) for r in a] == [list(r) for r in b]


def det(rows):
    """Exact determinant via fraction-free-ish Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in r] for r in rows]
    sign = 1
    prod = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        prod *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / inv
                for j in range(c, n):
                    m[i][j] -= f * m[c][j]
    val = sign * prod
    return int(val) if val.denominator == 1 else val


def rank(rows):
    """Rank over Q."""
    if not rows:
        return 0
    m = [[Fraction(x) for x in r] for r in rows]
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            if m[i][c]:
                f = m[i][c] / m[r][c]
                for j in range(c, ncols):
                    m[i][j] -= f * m[r][j]
        r += 1
        if r == nrows:
            break
    return r


def hnf_with_transform(rows):
    """Row-style Hermite normal form with unimodular transform.

    Returns (H, U) with U * rows = H, U unimodular. H is in row-echelon
    form with positive pivots and entries above each pivot reduced into
    [0, pivot); zero rows sit at the bottom.
    """
    m = len(rows)
    a = [list(r) for r in rows]
    u = identity(m)
    ncols = len(a[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            p, q = a[r][c], a[i][c]
            g, x, y = xgcd(p, q)
            pp, qq = p // g, q // g
            a[r], a[i] = (
                [x * s + y * t for s, t in zip(a[r], a[i])],
                [-qq * s + pp * t for s, t in zip(a[r], a[i])],
            )
            u[r], u[i] = (
                [x * s + y * t for s, t in zip(u[r], u[i])],
                [-qq * s + pp * t for s, t in zip(u[r], u[i])],
            )
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [s - q * t for s, t in zip(a[i], a[r])]
                u[i] = [s - q * t for s, t in zip(u[i], u[r])]
        r += 1
    return a, u


def hnf(rows):
    """Hermite normal form rows with zero rows dropped."""
    h, _ = hnf_with_transform(rows)
    return [r for r in h if not is_zero_row(r)]


def right_kernel(rows, ncols):
    """HNF basis of {x in Z^ncols : r . x = 0 for every row r}.

    The result spans the full integer kernel (it is saturated).
    """
    rows = [r for r in rows if not is_zero_row(r)]
    if not rows:
        return identity(ncols)
    h, u = hnf_with_transform(transpose(rows))
    ker = [u[i] for i in range(len(h)) if is_zero_row(h[i])]
    return hnf(ker)


def saturation(rows, ncols):
    """HNF basis of (Q-span of rows) intersected with Z^ncols."""
    rows = [r for r in rows if not is_zero_row(r)]
    if not rows:
        return []
    return right_kernel(right_kernel(rows, ncols), ncols)


def snf_with_transforms(rows):
    """Smith normal form D = S * A * T with S, T unimodular.

    D is diagonal with nonnegative entries d_1 | d_2 | ... .
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    s = identity(m)
    t = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in t:
            row[dst] += f * row[src]

    k = 0
    while k < min(m, n):
        # move a minimal nonzero entry of the trailing block to (k, k)
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(k, best[0])
        swap_cols(k, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, m):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    add_row(k, i, -q)
                    if a[i][k]:
                        swap_rows(k, i)
                        dirty = True
            for j in range(k + 1, n):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    add_col(k, j, -q)
                    if a[k][j]:
                        swap_cols(k, j)
                        dirty = True
        # enforce divisibility of the remaining block by the pivot
        piv = a[k][k]
        offender = None
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if a[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, k, 1)
            continue
        k += 1
    for i in range(min(m, n)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            s[i] = [-x for x in s[i]]
    return a, s, t


def snf_diagonal(rows):
    """Nonzero Smith normal form diagonal entries d_1 | d_2 | ... ."""
    d, _, _ = snf_with_transforms(rows)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i]:
            out.append(d[i][i])
    return out


def solve(a_rows, b):
    """One exact solution x of A x = b, or None if inconsistent.

    Free variables are set to zero, which makes the result deterministic.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return x


def invert(rows):
    """Exact inverse of a nonsingular square matrix, as Fractions."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c]
        aug[c] = [x / inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def invert_unimodular(rows):
    """Integer inverse of a matrix with determinant +-1."""
    inv = invert(rows)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def lcm_all(values):
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


def frac_mod(x, modulus):
    """Reduce a rational into [0, modulus)."""
    x = Fraction(x)
    return x - (x / modulus).__floor__() * modulus
