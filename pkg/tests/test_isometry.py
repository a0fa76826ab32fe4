import random
from fractions import Fraction
from itertools import product

import pytest

from kummerlat import (
    DIFFER,
    MATCH_OR_UNKNOWN,
    CertificationError,
    IsometryMap,
    Lattice,
    direct_sum,
    find_hodge_isometry,
    find_isometry,
    genus_equal,
    hodge_lattice,
    hyperbolic_u,
    make_standard,
    period_from_columns,
    restrict_period,
    short_vectors,
    SymbolBasis,
    transcendental_lattice,
    verify_isometry,
)
from kummerlat import linalg
from kummerlat.construction import base_abelian_model, quotient_surface_hodge
from util import random_symmetric_lattice_gram, random_unimodular

U = make_standard("U")


class TestGenusEqual:
    def test_u_vs_scaled(self):
        assert genus_equal(U, hyperbolic_u(2)) == DIFFER

    def test_congruent_lattices_match(self):
        rng = random.Random(31)
        for _ in range(20):
            n = rng.randint(1, 4)
            gram = random_symmetric_lattice_gram(rng, n)
            p = random_unimodular(rng, n)
            conj = linalg.matmul(linalg.matmul(p, gram), linalg.transpose(p))
            l1 = Lattice(tuple(tuple(r) for r in gram))
            l2 = Lattice(tuple(tuple(r) for r in conj))
            assert genus_equal(l1, l2) == MATCH_OR_UNKNOWN

    def test_twisted_sum_refutations(self):
        uu = direct_sum(U, U)
        for n in (2, 3, 4):
            twisted = direct_sum(U, hyperbolic_u(n))
            assert genus_equal(twisted, uu) == DIFFER


class TestShortVectors:
    def brute(self, gram, norm):
        n = len(gram)
        box = abs(norm) + 1
        out = []
        for v in product(range(-box, box + 1), repeat=n):
            if not any(v):
                continue
            if linalg.pair_with(gram, v, v) == norm:
                first = next(c for c in v if c)
                if first > 0:
                    out.append(v)
        return sorted(out)

    def test_against_brute_force(self):
        cases = [
            ([[2]], 2),
            ([[2]], 8),
            ([[2]], 3),
            ([[1, 0], [0, 1]], 1),
            ([[1, 0], [0, 1]], 2),
            ([[2, 1], [1, 2]], 2),
            ([[2, 1], [1, 2]], 6),
            ([[-2, -1], [-1, -2]], -2),
            ([[2, 0, 0], [0, 4, 1], [0, 1, 4]], 4),
        ]
        for gram, norm in cases:
            assert short_vectors(gram, norm) == self.brute(gram, norm)

    def test_indefinite_rejected(self):
        with pytest.raises(ValueError):
            short_vectors([[0, 1], [1, 0]], 2)


class TestFindIsometry:
    def test_self_witness_exists_and_revalidates(self):
        for lat in (U, hyperbolic_u(3), direct_sum(U, hyperbolic_u(2))):
            iso = find_isometry(lat, lat, 1)
            assert iso is not None
            assert verify_isometry(iso)

    def test_returns_lex_least_witness(self):
        # brute force: first matrix in row-major lexicographic order
        bound = 2
        best = None
        g = [list(r) for r in U.gram]
        for entries in product(range(-bound, bound + 1), repeat=4):
            m = [list(entries[:2]), list(entries[2:])]
            if linalg.mat_eq(linalg.matmul(linalg.matmul(m, g), linalg.transpose(m)), g):
                best = m
                break
        iso = find_isometry(U, U, bound)
        assert [list(r) for r in iso.matrix] == best

    def test_determinism(self):
        lat = direct_sum(U, hyperbolic_u(2))
        a = find_isometry(lat, lat, 2)
        b = find_isometry(lat, lat, 2)
        assert a.matrix == b.matrix

    def test_u_vs_scaled_absent_and_refuted(self):
        for bound in (1, 2, 3):
            assert find_isometry(U, hyperbolic_u(2), bound) is None
        assert genus_equal(U, hyperbolic_u(2)) == DIFFER

    def test_found_witness_implies_genus_match(self):
        rng = random.Random(53)
        for _ in range(15):
            n = rng.randint(1, 3)
            gram = random_symmetric_lattice_gram(rng, n, bound=3)
            p = random_unimodular(rng, n)
            conj = linalg.matmul(linalg.matmul(p, gram), linalg.transpose(p))
            l1 = Lattice(tuple(tuple(r) for r in gram))
            l2 = Lattice(tuple(tuple(r) for r in conj))
            iso = find_isometry(l1, l2, 3)
            if iso is not None:
                assert genus_equal(l1, l2) == MATCH_OR_UNKNOWN
                assert verify_isometry(iso)

    def test_definite_search_uses_complete_pools(self):
        # [[2]] vs [[8]] have equal rank and different determinants
        assert find_isometry(make_standard("rank1", 2), make_standard("rank1", 8), 50) is None
        # definite isometric pair found without large entries
        d1 = Lattice(((2, 1), (1, 2)))
        p = [[1, 1], [0, 1]]
        conj = linalg.matmul(linalg.matmul(p, [list(r) for r in d1.gram]), linalg.transpose(p))
        d2 = Lattice(tuple(tuple(r) for r in conj))
        iso = find_isometry(d1, d2, 3)
        assert iso is not None and verify_isometry(iso)

    def test_bound_validation(self):
        with pytest.raises(ValueError):
            find_isometry(U, U, 0)

    def test_self_search_succeeds_at_bound_one(self):
        rng = random.Random(59)
        for _ in range(15):
            n = rng.randint(1, 3)
            lat = Lattice(tuple(tuple(r) for r in random_symmetric_lattice_gram(rng, n)))
            iso = find_isometry(lat, lat, 1)
            assert iso is not None and verify_isometry(iso)


class TestFindHodgeIsometry:
    def test_self_gives_unit_scalar(self):
        h = base_abelian_model(2).transcendental_hodge()
        iso = find_hodge_isometry(h, h, 1)
        assert iso is not None
        assert abs(iso.lam) == 1
        assert verify_isometry(iso)

    def test_quotient_vs_base_transcendental(self):
        # rank-4 lattices with periods; a rational-scalar witness exists
        for n in (2, 3):
            s = quotient_surface_hodge(n)
            t_s = transcendental_lattice(s)
            h1 = hodge_lattice(
                t_s.as_lattice(), restrict_period(t_s, s.period)
            )
            h2 = base_abelian_model(n).transcendental_hodge()
            iso = find_hodge_isometry(h1, h2, 3)
            assert iso is not None
            assert iso.lam != 0
            assert verify_isometry(iso)

    def test_disjoint_symbol_supports_absent(self):
        sb = SymbolBasis(("1", "w1", "w2"))
        s1 = period_from_columns(U, sb, {"w1": (1, 0)})
        s2 = period_from_columns(U, sb, {"w2": (1, 0)})
        h1 = hodge_lattice(U, s1)
        h2 = hodge_lattice(U, s2)
        assert find_hodge_isometry(h1, h2, 2) is None

    def test_plain_isometry_can_exist_where_hodge_does_not(self):
        sb = SymbolBasis(("1", "w1", "w2"))
        s1 = period_from_columns(U, sb, {"w1": (1, 0)})
        s2 = period_from_columns(U, sb, {"w2": (1, 0)})
        assert find_isometry(U, U, 2) is not None
        assert find_hodge_isometry(hodge_lattice(U, s1), hodge_lattice(U, s2), 2) is None


class TestVerifier:
    def test_tampered_matrix_rejected(self):
        iso = find_isometry(U, U, 1)
        bad = IsometryMap(source=U, target=U, matrix=((1, 0), (1, 1)))
        with pytest.raises(CertificationError):
            verify_isometry(bad)
        assert verify_isometry(iso)

    def test_non_unimodular_rejected(self):
        bad = IsometryMap(
            source=hyperbolic_u(4), target=U, matrix=((2, 0), (0, 2))
        )
        with pytest.raises(CertificationError):
            verify_isometry(bad)

    def test_wrong_scale_rejected(self):
        bad = IsometryMap(source=U, target=U, matrix=((1, 0), (0, 1)), scale=2)
        with pytest.raises(CertificationError):
            verify_isometry(bad)

    def test_tampered_period_scalar_rejected(self):
        h = base_abelian_model(2).transcendental_hodge()
        iso = find_hodge_isometry(h, h, 1)
        bad = IsometryMap(
            source=iso.source,
            target=iso.target,
            matrix=iso.matrix,
            lam=iso.lam * 7,
            source_period=iso.source_period,
            target_period=iso.target_period,
        )
        with pytest.raises(CertificationError):
            verify_isometry(bad)

    def test_shape_mismatch_rejected(self):
        bad = IsometryMap(source=U, target=U, matrix=((1, 0),))
        with pytest.raises(CertificationError):
            verify_isometry(bad)
