"""Brauer classes as B-fields and the exp(B) lattice machinery.

A Brauer class of a surface with transcendental lattice T is stored by
its value vector in Q/Z on a fixed basis of T (the representing B-field
is not unique). The Mukai extension glues an H0/H4 hyperbolic block onto
the H2 lattice; generalized transcendental lattices live inside it on
the h0 = 0 plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .hodge import PeriodVector, transcendental_lattice, hodge_lattice
from .isometry import CertificationError, IsometryMap, verify_isometry
from .lattice import Lattice, LatticeError, Sublattice, saturate


class NonIntegralTwist(Exception):
    """exp(B) was applied to a vector pairing non-integrally with B."""


@dataclass(frozen=True)
class BField:
    """A rational class in (H2 of the surface) tensor Q."""

    lattice: Lattice
    coords: tuple

    def __post_init__(self):
        coords = tuple(Fraction(x) for x in self.coords)
        if len(coords) != self.lattice.rank:
            raise LatticeError("B-field needs %d coordinates" % self.lattice.rank)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, lattice):
        return cls(lattice, (0,) * lattice.rank)


@dataclass(frozen=True)
class BrauerClass:
    """Hom(T, Q/Z) element: reduced values on the stored basis of T."""

    T: Sublattice
    values: tuple

    def __post_init__(self):
        values = tuple(linalg.frac_mod(Fraction(x), 1) for x in self.values)
        if len(values) != self.T.rank:
            raise LatticeError("need one value per basis vector of T")
        object.__setattr__(self, "values", values)

    def is_trivial(self):
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class MukaiVector:
    """An integral class (h0, h2, h4) in the extended cohomology."""

    h0: int
    h2: tuple
    h4: int

    def coords(self):
        return (self.h0,) + tuple(self.h2) + (self.h4,)


def mukai_lattice(h2):
    """H0 + H2 + H4 with pairing <a, b> = a2.b2 - a0 b4 - a4 b0.

    Coordinates are ordered (h0, h2 ..., h4); the h0/h4 block is
    [[0, -1], [-1, 0]] placed at the outer corners.
    """
    n = h2.rank
    gram = [[0] * (n + 2) for _ in range(n + 2)]
    for i in range(n):
        for j in range(n):
            gram[1 + i][1 + j] = h2.gram[i][j]
    gram[0][n + 1] = -1
    gram[n + 1][0] = -1
    labels = None
    if h2.labels is not None:
        labels = ("h0",) + h2.labels + ("h4",)
    return Lattice(tuple(tuple(r) for r in gram), labels)


def mukai_pair(h2, a, b):
    """Mukai pairing of two MukaiVector values over the H2 lattice h2."""
    return mukai_lattice(h2).pair(a.coords(), b.coords())


def brauer_class_of(bfield, T):
    """The class t -> pair(t, B) mod Z on the basis of T."""
    if T.ambient != bfield.lattice:
        raise LatticeError("B-field and sublattice have different ambients")
    values = tuple(
        linalg.frac_mod(T.ambient.pair(row, bfield.coords), 1) for row in T.basis
    )
    return BrauerClass(T, values)


def order_of(alpha):
    """Order in Hom(T, Q/Z): lcm of value denominators; 1 iff trivial."""
    return linalg.lcm_all([v.denominator for v in alpha.values] or [1])


def kernel_with_coords(alpha):
    """(kernel sublattice, its basis in T-coordinates).

    Hermite reduction of the congruence system n*values . x = 0 (mod n)
    in the coordinates of T's basis; the index in T equals order_of.
    """
    n = order_of(alpha)
    k = alpha.T.rank
    if n == 1 or k == 0:
        coords = linalg.identity(k)
    else:
        c = [int(v * n) for v in alpha.values]
        aug = linalg.right_kernel([c + [n]], k + 1)
        coords = linalg.hnf([row[:k] for row in aug])
    basis = linalg.matmul(coords, [list(r) for r in alpha.T.basis]) if coords else []
    sub = Sublattice(alpha.T.ambient, tuple(tuple(r) for r in basis))
    return sub, tuple(tuple(r) for r in coords)


def kernel_lattice(alpha):
    """The finite-index sublattice of T where the class vanishes."""
    return kernel_with_coords(alpha)[0]


def brauer_equal(b1, b2, T):
    """Whether two B-fields induce the same class on T."""
    if b1.lattice != b2.lattice or T.ambient != b1.lattice:
        raise LatticeError("B-fields must share the sublattice ambient")
    diff = [x - y for x, y in zip(b1.coords, b2.coords)]
    return all(T.ambient.pair(row, diff).denominator == 1 for row in T.basis)


def twisted_period(sigma, bfield):
    """The generalized Calabi-Yau period exp(B) sigma = (0, sigma, B.sigma).

    Per symbol column v the Mukai coefficients are (0, v, pair(B, v)).
    """
    if sigma.lattice != bfield.lattice:
        raise LatticeError("period and B-field live on different lattices")
    mukai = mukai_lattice(sigma.lattice)
    cols = []
    for v in sigma.columns():
        h4 = sigma.lattice.pair(bfield.coords, v)
        cols.append((Fraction(0),) + tuple(Fraction(x) for x in v) + (Fraction(h4),))
    coeffs = tuple(tuple(col[i] for col in cols) for i in range(mukai.rank))
    return PeriodVector(mukai, sigma.symbols, coeffs)


def generalized_transcendental(sigma, bfield):
    """Minimal primitive Mukai-extension sublattice holding exp(B) sigma.

    Lives on the h0 = 0 plane and carries the restricted Mukai form.
    """
    phi = twisted_period(sigma, bfield)
    return transcendental_lattice(hodge_lattice(phi.lattice, phi))


def exp_b_embedding(kernel, bfield, k=1, target=None):
    """The Hodge isometry gamma -> (0, gamma, pair(B, gamma)).

    kernel must consist of vectors pairing integrally with B (otherwise
    NonIntegralTwist). The embedding preserves the form exactly, hence
    also at the twist k in {1, 2}, which is recorded for certification.
    When target (the generalized transcendental sublattice) is given,
    the image is certified to land onto it after saturation.
    """
    if k not in (1, 2):
        raise LatticeError("k must be 1 or 2")
    ambient = kernel.ambient
    if ambient != bfield.lattice:
        raise LatticeError("kernel and B-field have different ambients")
    mukai = mukai_lattice(ambient)
    image_rows = []
    for row in kernel.basis:
        h4 = ambient.pair(row, bfield.coords)
        if Fraction(h4).denominator != 1:
            raise NonIntegralTwist(
                "vector %r pairs with B to %s, not an integer" % (list(row), h4)
            )
        image_rows.append([0] + list(row) + [int(h4)])
    image = Sublattice(mukai, tuple(tuple(r) for r in image_rows))
    if target is None:
        target = saturate(image)
    if not saturate(image).same_span(saturate(target)):
        raise CertificationError("exp(B) image does not saturate onto the target")
    matrix = []
    for row in image_rows:
        coords = target.coordinates_of(row)
        if any(c.denominator != 1 for c in coords):
            raise CertificationError("exp(B) image is not integral over the target basis")
        matrix.append([int(c) for c in coords])
    iso = IsometryMap(source=kernel, target=target,
                      matrix=tuple(tuple(r) for r in matrix), scale=Fraction(1))
    verify_isometry(iso)
    return iso


def pushforward_brauer(g, alpha):
    """Transport a class through a certified isometry g: T1 -> T2.

    The value on the j-th target basis vector is the source value of its
    g-preimage; order is preserved.
    """
    verify_isometry(g)
    if not (isinstance(g.source, Sublattice) or isinstance(g.source, Lattice)):
        raise LatticeError("isometry endpoints must be lattices or sublattices")
    inv = linalg.invert_unimodular([list(r) for r in g.matrix])
    values = []
    for j in range(len(inv)):
        pre = inv[j]
        val = sum(Fraction(c) * v for c, v in zip(pre, alpha.values))
        values.append(linalg.frac_mod(val, 1))
    target = g.target
    if isinstance(target, Lattice):
        target = target.full_sublattice()
    return BrauerClass(target, tuple(values))


def lift_to_bfield(alpha):
    """A deterministic B-field representing the class (non-canonical).

    Solves pair(t_i, B) = values[i] exactly via Smith normal form; free
    coordinates are zero, which makes the lift reproducible.
    """
    T = alpha.T
    amb = T.ambient
    m = linalg.matmul([list(r) for r in T.basis], [list(r) for r in amb.gram])
    x = linalg.solve(m, [Fraction(v) for v in alpha.values])
    if x is None:
        raise LatticeError("class admits no B-field lift on this ambient")
    return BField(amb, tuple(x))
