"""Certified isometry testing.

Two complementary routes, both exact:

  * refutation by cheap invariants (rank, inertia, parity, discriminant
    data) -- sound, never claims isometry;
  * bounded backtracking search for an explicit witness matrix -- sound,
    never claims non-isometry.

Every witness is revalidated from scratch by verify_isometry before it
leaves this module; searches are deterministic and return the row-major
lexicographically least witness within the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt

from . import linalg
from .lattice import Lattice, Sublattice, genus_of, disc_equivalent

DIFFER = "differ"
MATCH_OR_UNKNOWN = "match_or_unknown"


class CertificationError(Exception):
    pass


def gram_of(obj):
    if isinstance(obj, Lattice):
        return [list(r) for r in obj.gram]
    if isinstance(obj, Sublattice):
        return [list(r) for r in obj.gram()]
    raise TypeError("expected a Lattice or Sublattice")


def rank_of(obj):
    return obj.rank


@dataclass(frozen=True)
class IsometryMap:
    """An integer matrix certified to carry one form onto another.

    Rows are images of source basis vectors in target coordinates, so
    matrix * gram(target) * matrix^T == scale * gram(source). For plain
    isometries scale is 1; scale 2 records maps onto a doubled form. For
    Hodge-compatible maps, lam is the rational scalar with
    (transported source period) == lam * (target period).
    """

    source: object
    target: object
    matrix: tuple
    scale: Fraction = Fraction(1)
    lam: Fraction = None
    source_period: object = None
    target_period: object = None

    def __post_init__(self):
        matrix = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.lam is not None:
            object.__setattr__(self, "lam", Fraction(self.lam))

    def apply(self, v):
        return tuple(linalg.vec_times_mat(list(v), [list(r) for r in self.matrix]))

    def inverse(self):
        inv = linalg.invert_unimodular([list(r) for r in self.matrix])
        return IsometryMap(
            source=self.target,
            target=self.source,
            matrix=tuple(tuple(r) for r in inv),
            scale=1 / self.scale,
            lam=None if self.lam is None else 1 / self.lam,
            source_period=self.target_period,
            target_period=self.source_period,
        )

    def then(self, other):
        """Composition: first self, then other."""
        m = linalg.matmul([list(r) for r in self.matrix], [list(r) for r in other.matrix])
        lam = None
        if self.lam is not None and other.lam is not None:
            lam = self.lam * other.lam
        return IsometryMap(
            source=self.source,
            target=other.target,
            matrix=tuple(tuple(r) for r in m),
            scale=self.scale * other.scale,
            lam=lam,
            source_period=self.source_period,
            target_period=other.target_period,
        )


def verify_isometry(iso):
    """Revalidate an IsometryMap from scratch; raises CertificationError.

    Checks: integral square matrix of the right size, unimodularity,
    exact Gram transport at the declared scale, and period transport at
    the declared scalar when periods are attached.
    """
    g_s = gram_of(iso.source)
    g_t = gram_of(iso.target)
    n_s, n_t = len(g_s), len(g_t)
    m = [list(r) for r in iso.matrix]
    if len(m) != n_s or any(len(r) != n_t for r in m):
        raise CertificationError("matrix shape does not match source/target ranks")
    if n_s != n_t:
        raise CertificationError("only equal-rank isometries are certified")
    if abs(linalg.det(m)) != 1:
        raise CertificationError("matrix is not unimodular")
    transported = linalg.matmul(linalg.matmul(m, g_t), linalg.transpose(m))
    expected = [[iso.scale * x for x in row] for row in g_s]
    if not linalg.mat_eq(transported, expected):
        raise CertificationError("Gram matrix is not preserved at scale %s" % iso.scale)
    if iso.source_period is not None and iso.target_period is not None:
        if iso.lam is None:
            raise CertificationError("periods attached but no scalar recorded")
        src_cols = iso.source_period.columns()
        tgt_cols = iso.target_period.columns()
        for cs, ct in zip(src_cols, tgt_cols):
            image = linalg.vec_times_mat(list(cs), m)
            if [Fraction(x) for x in image] != [iso.lam * Fraction(x) for x in ct]:
                raise CertificationError("period is not transported at scalar %s" % iso.lam)
        if iso.lam == 0:
            raise CertificationError("period scalar must be nonzero")
    return True


def genus_equal(l1, l2):
    """DIFFER when a computable invariant separates the two lattices.

    MATCH_OR_UNKNOWN otherwise; this routine never asserts isometry.
    """
    g1, g2 = genus_of(l1), genus_of(l2)
    if g1.rank != g2.rank or g1.signature != g2.signature or g1.even != g2.even:
        return DIFFER
    if abs(l1.det) != abs(l2.det):
        return DIFFER
    if not disc_equivalent(g1.disc, g2.disc):
        return DIFFER
    return MATCH_OR_UNKNOWN


def _definite_sign(gram):
    """+1 / -1 for positive/negative definite, 0 for indefinite."""
    lat = Lattice(tuple(tuple(r) for r in gram))
    pos, neg = lat.signature()
    if neg == 0:
        return 1
    if pos == 0:
        return -1
    return 0


def short_vectors(gram, norm):
    """All integer vectors of exact given norm for a definite Gram matrix.

    Exact Fincke-Pohst enumeration: no entry bound, no floats. Returns a
    lexicographically sorted list; only vectors whose first nonzero entry
    is positive are listed (the rest are the negatives of these).
    """
    n = len(gram)
    sign = _definite_sign(gram)
    if sign == 0:
        raise ValueError("short_vectors needs a definite Gram matrix")
    g = [[Fraction(sign * x) for x in row] for row in gram]
    target = sign * norm
    if target < 0:
        return []
    if target == 0:
        return []
    # Cholesky-style decomposition: q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
    q = [row[:] for row in g]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    out = []
    x = [0] * n

    def bound_sqrt(val):
        # floor of sqrt of a nonnegative Fraction
        return Fraction(isqrt(val.numerator * val.denominator), val.denominator)

    def rec(i, remaining):
        if i < 0:
            if remaining == 0 and any(x):
                out.append(tuple(x))
            return
        center = sum(q[i][j] * x[j] for j in range(i + 1, n))
        limit = remaining / q[i][i]
        s = bound_sqrt(limit)
        lo = -s - center
        hi = s - center
        lo_i = -int((-lo).__floor__())  # ceil
        hi_i = int(hi.__floor__())
        for xi in range(lo_i, hi_i + 1):
            x[i] = xi
            used = q[i][i] * (xi + center) ** 2
            if used <= remaining:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, Fraction(target))
    canonical = []
    for v in out:
        first = next(c for c in v if c)
        if first > 0:
            canonical.append(v)
    return sorted(canonical)


def _box_vectors(n, bound):
    """All vectors in [-bound, bound]^n in lexicographic order."""
    return product(range(-bound, bound + 1), repeat=n)


def _candidate_pool(gram, norm, bound, definite_sign):
    """Candidate image vectors of a given norm, in lexicographic order."""
    if definite_sign != 0:
        halved = short_vectors(gram, norm) if norm != 0 else []
        full = [tuple(-c for c in v) for v in halved] + list(halved)
        if norm == 0:
            full = []
        return sorted(full)
    pool = []
    for v in _box_vectors(len(gram), bound):
        if linalg.pair_with(gram, v, v) == norm:
            pool.append(v)
    return pool


def _search(g1, g2, bound, period_data):
    """Backtracking core; returns the first (= lex-least) witness matrix.

    Rows are assigned in natural order and candidates per row are tried
    in lexicographic order, so the first complete solution is the
    row-major lexicographically least one. Pruning: exact norm pools per
    row (Fincke-Pohst pools for definite targets), partial inner-product
    constraints, and period-proportionality checks on every symbol
    column whose support is already fully assigned.
    """
    n = len(g1)
    if len(g2) != n:
        return None
    if linalg.det(g1) != linalg.det(g2):
        return None
    sign = _definite_sign(g2)
    pools = {}
    for i in range(n):
        norm = g1[i][i]
        if norm not in pools:
            pools[norm] = _candidate_pool(g2, norm, bound, sign)
    if period_data is not None:
        src_cols, tgt_cols = period_data
        last_support = []
        for col in src_cols:
            last = -1
            for idx, val in enumerate(col):
                if val != 0:
                    last = idx
            last_support.append(last)
    rows = []

    def period_ok():
        # check all source columns fully supported on assigned rows
        depth = len(rows)
        lam = None
        complete = 0
        for col, tgt, last in zip(src_cols, tgt_cols, last_support):
            if last >= depth:
                continue
            complete += 1
            image = [sum(col[i] * rows[i][j] for i in range(depth)) for j in range(n)]
            if all(v == 0 for v in image):
                if any(tgt):
                    return False  # forces lam = 0
                continue
            if not any(tgt):
                return False
            ratio = None
            for a, b in zip(image, tgt):
                if b == 0:
                    if a != 0:
                        return False
                    continue
                r = Fraction(a, b)
                if ratio is None:
                    ratio = r
                elif ratio != r:
                    return False
            if lam is None:
                lam = ratio
            elif lam != ratio:
                return False
        if complete == len(src_cols) and lam is None:
            return False  # nothing pins a nonzero scalar
        return True

    def extend(i):
        for v in pools[g1[i][i]]:
            ok = True
            for j in range(i):
                if linalg.pair_with(g2, v, rows[j]) != g1[i][j]:
                    ok = False
                    break
            if not ok:
                continue
            rows.append(v)
            if period_data is None or period_ok():
                if i == n - 1:
                    return [list(r) for r in rows]
                found = extend(i + 1)
                if found is not None:
                    return found
            rows.pop()
        return None

    return extend(0) if n else None


def find_isometry(l1, l2, bound):
    """Lex-least integer isometry l1 -> l2 with entries in [-bound, bound].

    None means no witness within the bound, not non-isometry (except for
    definite inputs, where the norm pools are complete).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if rank_of(l1) != rank_of(l2):
        return None
    g1, g2 = gram_of(l1), gram_of(l2)
    m = _search(g1, g2, bound, None)
    if m is None:
        return None
    iso = IsometryMap(source=l1, target=l2, matrix=tuple(tuple(r) for r in m))
    verify_isometry(iso)
    return iso


def find_hodge_isometry(h1, h2, bound):
    """Like find_isometry, with period transport pinned to a rational scalar.

    h1 and h2 are HodgeLattice values over a shared symbol basis. The
    certificate records the scalar lam.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if h1.symbols != h2.symbols:
        return None
    l1, l2 = h1.lattice, h2.lattice
    if l1.rank != l2.rank:
        return None
    src_cols = [list(c) for c in h1.period.columns()]
    tgt_cols = [list(c) for c in h2.period.columns()]
    m = _search(gram_of(l1), gram_of(l2), bound, (src_cols, tgt_cols))
    if m is None:
        return None
    lam = None
    for col, tgt in zip(src_cols, tgt_cols):
        image = linalg.vec_times_mat(col, m)
        for a, b in zip(image, tgt):
            if b != 0:
                lam = Fraction(a, b)
                break
        if lam is not None:
            break
    iso = IsometryMap(
        source=l1,
        target=l2,
        matrix=tuple(tuple(r) for r in m),
        lam=lam,
        source_period=h1.period,
        target_period=h2.period,
    )
    verify_isometry(iso)
    return iso
