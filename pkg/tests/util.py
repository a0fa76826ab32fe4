"""Shared test helpers: independent oracles and random fixture generators.

Oracles here deliberately avoid the library's own code paths: brute
determinants by permutation expansion, signatures via the characteristic
polynomial and Descartes' rule (exact for symmetric matrices), and
membership checks by direct enumeration.
"""

from fractions import Fraction
from itertools import permutations, product

from kummerlat import (
    AbelianSurfaceModel,
    BField,
    hodge_lattice,
    period_from_columns,
    omega_symbols,
)
from kummerlat.construction import base_abelian_model, u_cubed


def brute_det(rows):
    """Determinant by permutation expansion; independent of linalg."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def char_poly(gram):
    """Coefficients [1, c1, ..., cn] of det(xI - G), exact Fractions."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    coeffs = [Fraction(1)]
    m = [row[:] for row in a]
    for k in range(1, n + 1):
        trace = sum(m[i][i] for i in range(n))
        c = -trace / k
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            m[i][i] += c
        m = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    return coeffs


def signature_oracle(gram):
    """Signature via Descartes' rule on the characteristic polynomial.

    Exact for symmetric matrices (all eigenvalues real); requires a
    nondegenerate form.
    """
    coeffs = char_poly(gram)

    def variations(cs):
        signs = [1 if c > 0 else -1 for c in cs if c != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    pos = variations(coeffs)
    neg = variations([c * (-1) ** i for i, c in enumerate(coeffs)])
    return pos, neg


def random_symmetric_lattice_gram(rng, n, bound=5):
    """A random nondegenerate symmetric integer matrix, by rejection."""
    while True:
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                m[i][j] = m[j][i] = rng.randint(-bound, bound)
        if brute_det(m) != 0:
            return [row[:] for row in m]


def random_unimodular(rng, n, shears=6, cap=60):
    """A random unimodular matrix built from elementary row operations."""
    if n == 1:
        return [[rng.choice((-1, 1))]]
    while True:
        m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(shears):
            i, j = rng.sample(range(n), 2)
            f = rng.choice((-2, -1, 1, 2))
            m[i] = [a + f * b for a, b in zip(m[i], m[j])]
            if rng.random() < 0.3:
                i, j = rng.sample(range(n), 2)
                m[i], m[j] = m[j], m[i]
            if rng.random() < 0.3:
                i = rng.randrange(n)
                m[i] = [-a for a in m[i]]
        if max(abs(x) for row in m for x in row) <= cap:
            return m


def random_rational_vector(rng, n, max_den=6, max_num=6):
    return tuple(
        Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den)) for _ in range(n)
    )


def _u3_block_isometries():
    """Generators of O(U^3) used by the random fixture builder."""
    gens = []
    # permute the three hyperbolic blocks
    for perm in ((1, 0, 2), (0, 2, 1)):
        m = [[0] * 6 for _ in range(6)]
        for b, target in enumerate(perm):
            m[2 * b][2 * target] = 1
            m[2 * b + 1][2 * target + 1] = 1
        gens.append(m)
    # swap e and f inside the first block
    m = [[0] * 6 for _ in range(6)]
    m[0][1] = m[1][0] = 1
    for i in range(2, 6):
        m[i][i] = 1
    gens.append(m)
    # flip the sign of the first block
    m = [[0] * 6 for _ in range(6)]
    m[0][0] = m[1][1] = -1
    for i in range(2, 6):
        m[i][i] = 1
    gens.append(m)
    return gens


def _eichler(gram, e_idx, x):
    """Transvection v -> v + (v.e) x - (v.x) e - (x.x/2)(v.e) e as rows."""
    n = len(gram)

    def pair(a, b):
        return sum(a[i] * gram[i][j] * b[j] for i in range(n) for j in range(n))

    e = [0] * n
    e[e_idx] = 1
    half = pair(x, x) // 2
    rows = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        ve, vx = pair(v, e), pair(v, x)
        img = [
            v[t] + ve * x[t] - vx * e[t] - half * ve * e[t]
            for t in range(n)
        ]
        rows.append(img)
    return rows


def random_u3_isometry(rng, steps=3):
    """A random element of O(U^3) as a row-vector matrix."""
    from kummerlat import linalg

    gram = [list(r) for r in u_cubed().gram]
    gens = _u3_block_isometries()
    m = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    for _ in range(steps):
        if rng.random() < 0.5:
            g = rng.choice(gens)
        else:
            # Eichler transvection along an isotropic basis vector
            e_idx = rng.choice((0, 1))
            x = [0] * 6
            for idx in range(2, 6):
                x[idx] = rng.randint(-1, 1)
            g = _eichler(gram, e_idx, x)
        m = linalg.matmul(m, g)
    return m


def random_surface_fixture(rng, max_n=4):
    """A random genuine abelian-surface model plus the map that made it.

    Starts from the order-n base model and conjugates by a random
    isometry of U^3; periods transform alongside, so the result is a
    valid Hodge structure with the same invariants.
    """
    n = rng.randint(1, max_n)
    p = random_u3_isometry(rng)
    base = base_abelian_model(n)
    lat = base.h2.lattice
    period = base.h2.period.map_by(p, lat)
    model = AbelianSurfaceModel.from_h2(hodge_lattice(lat, period))
    return model, n, p


def simple_full_rank_period(lattice):
    """A period with one fresh symbol per basis vector (T = everything).

    No products are declared beyond the identity, so isotropy is not
    checkable and the fixture is usable for arbitrary Gram matrices.
    """
    n = lattice.rank
    names = ("1",) + tuple("s%d" % (i + 1) for i in range(n))
    from kummerlat import SymbolBasis

    symbols = SymbolBasis(names)
    columns = {}
    for i in range(n):
        vec = [0] * n
        vec[i] = 1
        columns["s%d" % (i + 1)] = vec
    return period_from_columns(lattice, symbols, columns)
