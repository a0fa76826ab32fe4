"""Integral lattices: construction, pairing, sublattices, invariants.

A lattice is a free Z-module of finite rank carrying a nondegenerate
symmetric integer Gram matrix. All arithmetic is exact; verdicts derived
here are proofs, not approximations.

Conventions fixed once and used everywhere:
  * lattice elements are integer (or rational) row vectors of basis
    coordinates; pair(v, w) = v * gram * w^T;
  * a sublattice is stored as a basis matrix whose rows are ambient
    coordinates; the Hermite normal form is the canonical basis;
  * quotients are described by Smith normal form divisors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg

# Discriminant groups larger than this are not enumerated for the
# canonical value profile; comparisons then fall back to divisor data.
_PROFILE_CAP = 20000


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Free Z-module with a nondegenerate symmetric integer Gram matrix."""

    gram: tuple
    labels: tuple = None

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n == 0:
            raise LatticeError("empty lattices are not constructible")
        if any(len(row) != n for row in gram):
            raise LatticeError("gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError("gram matrix must be symmetric")
        if linalg.det(gram) == 0:
            raise LatticeError("gram matrix must be nondegenerate")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n:
                raise LatticeError("expected %d labels, got %d" % (n, len(labels)))
            if len(set(labels)) != n:
                raise LatticeError("labels must be distinct")
            object.__setattr__(self, "labels", labels)

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def det(self):
        return linalg.det(self.gram)

    def pair(self, v, w):
        """v * gram * w^T; integer for integer vectors, Fraction otherwise."""
        if len(v) != self.rank or len(w) != self.rank:
            raise LatticeError("vector length does not match rank %d" % self.rank)
        return linalg.pair_with(self.gram, v, w)

    def twist(self, m):
        """Same underlying group, form scaled entrywise by m != 0."""
        m = int(m)
        if m == 0:
            raise LatticeError("twist by zero is degenerate")
        return Lattice(tuple(tuple(m * x for x in row) for row in self.gram), self.labels)

    def signature(self):
        """Exact inertia (positives, negatives) via symmetric reduction."""
        m = [[Fraction(x) for x in row] for row in self.gram]
        alive = list(range(self.rank))
        pos = neg = 0
        while alive:
            i = next((a for a in alive if m[a][a] != 0), None)
            if i is None:
                # every diagonal entry vanishes; a row+column add creates one
                a = next(x for x in alive for y in alive if x != y and m[x][y] != 0)
                b = next(y for y in alive if y != a and m[a][y] != 0)
                for j in alive:
                    m[a][j] += m[b][j]
                for j in alive:
                    m[j][a] += m[j][b]
                continue
            if m[i][i] > 0:
                pos += 1
            else:
                neg += 1
            alive.remove(i)
            piv = m[i][i]
            factors = [(a, m[a][i] / piv) for a in alive]
            for a, f in factors:
                if f:
                    for j in alive:
                        m[a][j] -= f * m[i][j]
        return (pos, neg)

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def full_sublattice(self):
        return Sublattice(self, tuple(tuple(row) for row in linalg.identity(self.rank)))


def make_standard(kind, param=None):
    """Standard small lattices: "U", "U_n" (scaled hyperbolic), "rank1"."""
    if kind == "U":
        return Lattice(((0, 1), (1, 0)), ("e", "f"))
    if kind == "U_n":
        n = int(param)
        if n == 0:
            raise LatticeError("U_n(0) is degenerate")
        return Lattice(((0, n), (n, 0)), ("e", "f"))
    if kind == "rank1":
        d = int(param)
        if d == 0:
            raise LatticeError("rank1(0) is degenerate")
        return Lattice(((d,),), ("e",))
    raise LatticeError("unknown standard lattice kind %r" % (kind,))


def hyperbolic_u(n=1):
    """U for n = 1, the scaled hyperbolic plane U(n) otherwise."""
    return make_standard("U") if n == 1 else make_standard("U_n", n)


def direct_sum(l1, l2):
    """Orthogonal direct sum with block-diagonal Gram."""
    n1, n2 = l1.rank, l2.rank
    gram = [[0] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = l1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = l2.gram[i][j]
    labels = None
    if l1.labels is not None and l2.labels is not None:
        labels = list(l1.labels)
        for name in l2.labels:
            new = name
            k = 2
            while new in labels:
                new = "%s.%d" % (name, k)
                k += 1
            labels.append(new)
        labels = tuple(labels)
    return Lattice(tuple(tuple(row) for row in gram), labels)


@dataclass(frozen=True)
class Sublattice:
    """Embedding of a free submodule via ambient basis coordinates."""

    ambient: Lattice
    basis: tuple

    def __post_init__(self):
        basis = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        n = self.ambient.rank
        if any(len(row) != n for row in basis):
            raise LatticeError("basis rows must have length %d" % n)
        if linalg.rank(list(basis)) != len(basis):
            raise LatticeError("basis rows must be linearly independent over Q")

    @property
    def rank(self):
        return len(self.basis)

    def gram(self):
        """Induced Gram matrix basis * ambient.gram * basis^T."""
        b = [list(r) for r in self.basis]
        if not b:
            return ()
        g = linalg.matmul(linalg.matmul(b, [list(r) for r in self.ambient.gram]),
                          linalg.transpose(b))
        return tuple(tuple(row) for row in g)

    def as_lattice(self, labels=None):
        """The abstract lattice carried by this sublattice (nondegenerate only)."""
        return Lattice(self.gram(), labels)

    def contains(self, v):
        """Whether the ambient vector v lies in the sublattice."""
        if not self.basis:
            return all(x == 0 for x in v)
        x = linalg.solve(linalg.transpose([list(r) for r in self.basis]), list(v))
        return x is not None and all(c.denominator == 1 for c in x)

    def coordinates_of(self, v):
        """Coordinates of ambient vector v in this basis (exact, rational)."""
        if not self.basis:
            raise LatticeError("rank-0 sublattice has no coordinates")
        x = linalg.solve(linalg.transpose([list(r) for r in self.basis]), list(v))
        if x is None:
            raise LatticeError("vector does not lie in the rational span")
        return tuple(x)

    def same_span(self, other):
        """Set equality of sublattices of one ambient (via canonical HNF)."""
        return (self.ambient == other.ambient
                and linalg.hnf([list(r) for r in self.basis])
                == linalg.hnf([list(r) for r in other.basis]))


def orthogonal_complement(s):
    """Saturated sublattice of everything pairing to zero with s."""
    if not s.basis:
        return s.ambient.full_sublattice()
    m = linalg.matmul([list(r) for r in s.basis], [list(r) for r in s.ambient.gram])
    ker = linalg.right_kernel(m, s.ambient.rank)
    return Sublattice(s.ambient, tuple(tuple(r) for r in ker))


def saturate(s):
    """Smallest primitive sublattice containing s: (s tensor Q) meet ambient."""
    sat = linalg.saturation([list(r) for r in s.basis], s.ambient.rank)
    return Sublattice(s.ambient, tuple(tuple(r) for r in sat))


def sublattice_quotient(s):
    """(index, elementary divisors) of ambient/s via Smith normal form.

    index is None when the quotient is infinite (rank drop); the divisor
    list keeps only entries > 1.
    """
    if not s.basis:
        if s.ambient.rank == 0:
            return 1, []
        return None, []
    diag = linalg.snf_diagonal([list(r) for r in s.basis])
    divisors = [d for d in diag if d > 1]
    if s.rank == s.ambient.rank:
        index = 1
        for d in diag:
            index *= d
        return index, divisors
    return None, divisors


@dataclass(frozen=True)
class DiscriminantForm:
    """The finite quadratic form on dual/lattice, with canonical profile.

    q values live in Q/2Z for even lattices and Q/Z for odd ones (the
    finer value is not well defined in the odd case); pairings live in
    Q/Z. `profile` is the sorted multiset of (element order, q(element))
    over the whole group, a presentation-independent invariant used for
    comparisons; it is None when the group is too large to enumerate.
    """

    elementary_divisors: tuple
    q_values: tuple
    pairings: tuple
    generators: tuple = field(repr=False, default=())
    modulus: int = 2
    profile: tuple = field(repr=False, default=None)

    @property
    def order(self):
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    def is_trivial(self):
        return not self.elementary_divisors


def disc_equivalent(d1, d2):
    """Equality of discriminant data up to generator reordering.

    Sound for refutation: False means provably different; True means the
    canonical invariants agree (not a full isomorphism test).
    """
    if d1.elementary_divisors != d2.elementary_divisors:
        return False
    if d1.modulus != d2.modulus:
        return False
    if d1.profile is not None and d2.profile is not None:
        return d1.profile == d2.profile
    return True


def discriminant_form(lattice):
    """Compute dual/lattice with q values and pairings of SNF generators."""
    n = lattice.rank
    d, s, _ = linalg.snf_with_transforms([list(r) for r in lattice.gram])
    s_inv = linalg.invert_unimodular(s)
    g_inv = linalg.invert([list(r) for r in lattice.gram])
    modulus = 2 if lattice.is_even() else 1
    divisors = []
    gens = []
    for i in range(n):
        if d[i][i] > 1:
            divisors.append(d[i][i])
            v = [s_inv[j][i] for j in range(n)]  # column i of s^-1
            dual = linalg.vec_times_mat(v, [[Fraction(x) for x in row] for row in g_inv])
            gens.append(tuple(Fraction(x) for x in dual))
    q_values = tuple(
        linalg.frac_mod(linalg.pair_with(lattice.gram, g, g), modulus) for g in gens
    )
    pairings = tuple(
        tuple(linalg.frac_mod(linalg.pair_with(lattice.gram, gi, gj), 1) for gj in gens)
        for gi in gens
    )
    order = 1
    for dv in divisors:
        order *= dv
    profile = None
    if order <= _PROFILE_CAP:
        profile = _value_profile(lattice, divisors, gens, modulus)
    return DiscriminantForm(
        elementary_divisors=tuple(divisors),
        q_values=q_values,
        pairings=pairings,
        generators=tuple(gens),
        modulus=modulus,
        profile=profile,
    )


def _value_profile(lattice, divisors, gens, modulus):
    """Sorted multiset of (order, q) over every element of the group."""
    from itertools import product
    from math import gcd

    gram = lattice.gram
    entries = []
    for coeffs in product(*(range(d) for d in divisors)):
        vec = [Fraction(0)] * lattice.rank
        for a, g in zip(coeffs, gens):
            for j in range(lattice.rank):
                vec[j] += a * g[j]
        order = 1
        for a, d in zip(coeffs, divisors):
            order = linalg.lcm_all([order, d // gcd(a, d)])
        q = linalg.frac_mod(linalg.pair_with(gram, vec, vec), modulus)
        entries.append((order, q))
    return tuple(sorted(entries))


@dataclass(frozen=True)
class GenusInvariants:
    """Cheap isometry invariants: rank, inertia, parity, discriminant data."""

    rank: int
    signature: tuple
    even: bool
    disc: DiscriminantForm

    def describe(self):
        return (
            "rank %d, signature (%d,%d), %s, disc divisors %s"
            % (
                self.rank,
                self.signature[0],
                self.signature[1],
                "even" if self.even else "odd",
                list(self.disc.elementary_divisors),
            )
        )


def genus_of(lattice):
    return GenusInvariants(
        rank=lattice.rank,
        signature=lattice.signature(),
        even=lattice.is_even(),
        disc=discriminant_form(lattice),
    )


def render_lattice(name, lattice):
    """Canonical text rendering; stable across releases for golden files."""
    lines = ["lattice %s" % name, "rank %d" % lattice.rank]
    for row in lattice.gram:
        lines.append("gram " + " ".join(str(x) for x in row))
    lines.append("det %d" % lattice.det)
    pos, neg = lattice.signature()
    lines.append("signature %d %d" % (pos, neg))
    return "\n".join(lines) + "\n"
