"""Formal weight-two Hodge structures over a symbol algebra.

Transcendental periods are written exactly as rational coefficient
matrices over a finite list of formal symbols (``1``, ``w1``, ``w2``,
``w1w2`` in the worked fixtures). The symbols are assumed Q-linearly
independent; multiplication is a partial table and anything the table
does not declare raises UndeclaredProduct instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .lattice import Lattice, LatticeError, Sublattice, orthogonal_complement


class UndeclaredProduct(Exception):
    """A needed symbol product is missing from the multiplication table."""

    def __init__(self, left, right):
        super().__init__("product %s * %s is not declared" % (left, right))
        self.left = left
        self.right = right


@dataclass(frozen=True)
class SymbolBasis:
    """Ordered formal symbols including "1", with a partial product table.

    products maps an unordered symbol pair to a Q-linear combination of
    symbols, stored as a tuple of (symbol, coefficient) pairs. Products
    with "1" are implied and need not be declared.
    """

    symbols: tuple
    products: tuple = ()

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if "1" not in symbols:
            raise LatticeError('symbol basis must contain "1"')
        if len(set(symbols)) != len(symbols):
            raise LatticeError("symbols must be distinct")
        table = {}
        for left, right, combo in self.products:
            if left not in symbols or right not in symbols:
                raise LatticeError("product declares unknown symbol")
            combo = tuple((str(s), Fraction(c)) for s, c in combo)
            for s, _ in combo:
                if s not in symbols:
                    raise LatticeError("product value uses unknown symbol %r" % s)
            if "1" in (left, right):
                other = right if left == "1" else left
                if dict(combo) != {other: Fraction(1)}:
                    raise LatticeError('"1" must act as the identity on %s' % other)
                continue  # identity products are implicit
            key = frozenset((left, right)) if left != right else frozenset((left,))
            if key in table and table[key] != combo:
                raise LatticeError("conflicting product declarations for %s*%s" % (left, right))
            table[key] = combo
        object.__setattr__(
            self,
            "products",
            tuple(sorted((min(k), max(k), v) for k, v in
                         ((tuple(sorted(key)) if len(key) == 2 else (next(iter(key)), next(iter(key))), val)
                          for key, val in table.items()))),
        )

    def product(self, left, right):
        """The declared product as a {symbol: Fraction} dict."""
        if left == "1":
            return {right: Fraction(1)}
        if right == "1":
            return {left: Fraction(1)}
        a, b = sorted((left, right))
        for x, y, combo in self.products:
            if (x, y) == (a, b):
                return {s: c for s, c in combo}
        raise UndeclaredProduct(left, right)

    def index_of(self, symbol):
        return self.symbols.index(symbol)


def omega_symbols():
    """The symbol basis {1, w1, w2, w1w2} with w1*w2 = w1w2 declared."""
    return SymbolBasis(
        symbols=("1", "w1", "w2", "w1w2"),
        products=(("w1", "w2", (("w1w2", 1),)),),
    )


@dataclass(frozen=True)
class PeriodVector:
    """A formal period: one rational coefficient column per symbol.

    coeffs[i][s] is the coefficient of lattice basis vector i in the
    column of symbol number s.
    """

    lattice: Lattice
    symbols: SymbolBasis
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(tuple(Fraction(x) for x in row) for row in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.lattice.rank:
            raise LatticeError("period needs one coefficient row per basis vector")
        width = len(self.symbols.symbols)
        if any(len(row) != width for row in coeffs):
            raise LatticeError("period needs one coefficient column per symbol")
        if not any(any(row) for row in coeffs):
            raise LatticeError("period must have a nonzero column")

    def column(self, s):
        """Coefficient vector of symbol number s."""
        return tuple(row[s] for row in self.coeffs)

    def columns(self):
        return [self.column(s) for s in range(len(self.symbols.symbols))]

    def map_by(self, matrix, target_lattice):
        """Push the period through a row-vector map into target_lattice."""
        cols = [linalg.vec_times_mat(list(c), matrix) for c in self.columns()]
        coeffs = tuple(tuple(col[i] for col in cols) for i in range(target_lattice.rank))
        return PeriodVector(target_lattice, self.symbols, coeffs)

    def scaled(self, factor):
        factor = Fraction(factor)
        if factor == 0:
            raise LatticeError("period scale factor must be nonzero")
        return PeriodVector(
            self.lattice,
            self.symbols,
            tuple(tuple(factor * x for x in row) for row in self.coeffs),
        )


def period_from_columns(lattice, symbols, columns):
    """Build a PeriodVector from {symbol: coefficient vector}."""
    width = len(symbols.symbols)
    cols = []
    for s in symbols.symbols:
        vec = columns.get(s)
        cols.append(tuple(Fraction(x) for x in vec) if vec is not None
                    else tuple(Fraction(0) for _ in range(lattice.rank)))
    coeffs = tuple(tuple(cols[j][i] for j in range(width)) for i in range(lattice.rank))
    return PeriodVector(lattice, symbols, coeffs)


def period_pairing(sigma, tau):
    """Expand pair(sigma, tau) in the symbol algebra.

    Returns {symbol: Fraction} with zero entries dropped, so an empty
    dict means the pairing vanishes. Raises UndeclaredProduct when a
    product with a nonzero lattice pairing is missing from the table.
    """
    if sigma.lattice != tau.lattice:
        raise LatticeError("periods live on different lattices")
    if sigma.symbols != tau.symbols:
        raise LatticeError("periods use different symbol bases")
    out = {}
    names = sigma.symbols.symbols
    for i, si in enumerate(names):
        vi = sigma.column(i)
        for j, sj in enumerate(names):
            c = sigma.lattice.pair(vi, tau.column(j))
            if c == 0:
                continue
            for sym, coeff in sigma.symbols.product(si, sj).items():
                out[sym] = out.get(sym, Fraction(0)) + c * coeff
    return {k: v for k, v in out.items() if v != 0}


@dataclass(frozen=True)
class HodgeLattice:
    """A lattice together with the period line spanning its (2,0)-part."""

    lattice: Lattice
    period: PeriodVector
    symbols: SymbolBasis

    def __post_init__(self):
        if self.period.lattice != self.lattice:
            raise LatticeError("period is not defined over the given lattice")
        if self.period.symbols != self.symbols:
            raise LatticeError("period uses a different symbol basis")
        try:
            square = period_pairing(self.period, self.period)
        except UndeclaredProduct:
            return  # isotropy not checkable with a partial table
        if square:
            raise LatticeError("period must be isotropic, got %r" % (square,))


def hodge_lattice(lattice, period):
    return HodgeLattice(lattice, period, period.symbols)


@dataclass(frozen=True)
class H1Frame:
    """Four H^1 basis labels of an abelian surface, plus an orientation.

    The orientation is the ordered 4-tuple of labels whose wedge
    integrates to +1; it defaults to the label order.
    """

    labels: tuple
    orientation: tuple = None

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) != 4 or len(set(labels)) != 4:
            raise LatticeError("an H1 frame needs four distinct labels")
        orientation = self.orientation
        if orientation is None:
            orientation = labels
        orientation = tuple(str(x) for x in orientation)
        if sorted(orientation) != sorted(labels):
            raise LatticeError("orientation must reorder the frame labels")
        object.__setattr__(self, "orientation", orientation)

    def wedge_labels(self):
        return tuple("%s^%s" % (a, b) for a, b in combinations(self.labels, 2))


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def wedge_square_lattice(frame):
    """Rank-6 exterior square of an H^1 frame, paired by orientation sign.

    The pairing of two wedge basis vectors is the sign of the permutation
    carrying their four labels to the frame orientation, or 0 when a
    label repeats. The result is abstractly isometric to U + U + U.
    """
    pos = {lab: k for k, lab in enumerate(frame.orientation)}
    pairs = list(combinations(range(4), 2))
    labels = frame.labels
    gram = []
    for (i, j) in pairs:
        row = []
        for (k, l) in pairs:
            if len({i, j, k, l}) != 4:
                row.append(0)
            else:
                row.append(_perm_sign([pos[labels[i]], pos[labels[j]],
                                       pos[labels[k]], pos[labels[l]]]))
        gram.append(tuple(row))
    return Lattice(tuple(gram), frame.wedge_labels())


def wedge_square_map(theta):
    """The induced 6x6 map of exterior squares of a 4x4 row-vector map.

    theta rows are images of the source H^1 basis in target coordinates;
    the output rows are images of the source wedge basis (pairs in
    lexicographic order) in the target wedge basis.
    """
    theta = [list(r) for r in theta]
    if len(theta) != 4 or any(len(r) != 4 for r in theta):
        raise LatticeError("theta must be 4x4")
    if linalg.det(theta) == 0:
        raise LatticeError("theta must be invertible over Q")
    pairs = list(combinations(range(4), 2))
    out = []
    for (a, b) in pairs:
        row = []
        for (i, j) in pairs:
            row.append(theta[a][i] * theta[b][j] - theta[a][j] * theta[b][i])
        out.append(row)
    return out


def transcendental_lattice(h):
    """Smallest primitive sublattice whose complexification holds the period.

    Saturation of the integer row space spanned by the denominator-cleared
    coefficient columns. Correct under the fixture assumption that the
    symbols are Q-linearly independent.
    """
    rows = []
    for col in h.period.columns():
        if all(x == 0 for x in col):
            continue
        den = linalg.lcm_all([x.denominator for x in col])
        rows.append([int(x * den) for x in col])
    span = linalg.saturation(rows, h.lattice.rank)
    return Sublattice(h.lattice, tuple(tuple(r) for r in span))


def ns_and_picard(h):
    """(Neron-Severi sublattice, Picard number) of a Hodge lattice."""
    ns = orthogonal_complement(transcendental_lattice(h))
    return ns, ns.rank


def proportionality(sigma, tau):
    """The nonzero rational lam with sigma = lam * tau, or None."""
    if sigma.lattice != tau.lattice or sigma.symbols != tau.symbols:
        return None
    lam = None
    for rs, rt in zip(sigma.coeffs, tau.coeffs):
        for a, b in zip(rs, rt):
            if b == 0:
                if a != 0:
                    return None
                continue
            ratio = Fraction(a, b)
            if lam is None:
                lam = ratio
            elif lam != ratio:
                return None
    if lam == 0:
        return None
    return lam


def restrict_period(sub, period, labels=None):
    """Rewrite an ambient period in the coordinates of a sublattice.

    The period must lie in the rational span of the sublattice. Returns a
    PeriodVector over sub.as_lattice().
    """
    if period.lattice != sub.ambient:
        raise LatticeError("period is not defined over the sublattice ambient")
    abstract = sub.as_lattice(labels)
    cols = [sub.coordinates_of(c) for c in period.columns()]
    coeffs = tuple(tuple(col[i] for col in cols) for i in range(abstract.rank))
    return PeriodVector(abstract, period.symbols, coeffs)
