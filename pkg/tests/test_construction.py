import pytest

from kummerlat import LatticeError, genus_equal, MATCH_OR_UNKNOWN, orthogonal_complement
from kummerlat.construction import (
    base_abelian_model,
    embedding_preserves_form,
    inclusion_into_u_plus_u,
    product_abelian_model,
    quotient_surface_hodge,
    run_example43,
    u_cubed,
    u_plus_u,
)
from kummerlat.report import INCONCLUSIVE, REFUTED, VERIFIED

CHECK_NAMES = [
    "period-isotropy",
    "wedge-pullback-scaling",
    "ns-class",
    "transcendental-class",
    "untwisted-comparison",
    "inclusion-cokernel",
    "brauer-kernel",
    "exp-b-image",
    "twisted-equivalence",
    "kummer-brauer-order",
]


class TestFixtures:
    def test_base_model_invariants(self):
        for n in (1, 2, 5):
            model = base_abelian_model(n)
            assert model.T.rank == 4
            assert model.NS.rank == 2
            gram = model.T.gram()
            assert gram == ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, n), (0, 0, n, 0))

    def test_product_model_matches_base_for_n1(self):
        ef = product_abelian_model(1)
        base = base_abelian_model(1)
        assert genus_equal(ef.T.as_lattice(), base.T.as_lattice()) == MATCH_OR_UNKNOWN

    def test_quotient_ns_is_complement_of_t(self):
        n = 3
        h = quotient_surface_hodge(n)
        from kummerlat import transcendental_lattice

        t = transcendental_lattice(h)
        ns = orthogonal_complement(t)
        assert ns.basis == ((1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, n))

    def test_inclusion_preserves_form_only_with_corrected_image(self):
        n = 3
        model = base_abelian_model(n)
        good = inclusion_into_u_plus_u(n)
        assert embedding_preserves_form(good, model.T.gram(), u_plus_u().gram)
        # the uncorrected variant sends f2 to n k2 and fails
        bad = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, n, 0), (0, 0, 0, n))
        assert not embedding_preserves_form(bad, model.T.gram(), u_plus_u().gram)


class TestRunExample:
    def test_check_names_and_order(self):
        rep = run_example43(2)
        assert [c.name for c in rep.checks] == CHECK_NAMES

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_verdicts(self, n):
        rep = run_example43(n)
        verdicts = {c.name: c.verdict for c in rep.checks}
        for name in CHECK_NAMES:
            if name == "untwisted-comparison":
                assert verdicts[name] == (VERIFIED if n == 1 else REFUTED)
            else:
                assert verdicts[name] == VERIFIED
        assert rep.overall == (VERIFIED if n == 1 else REFUTED)

    def test_invalid_n_rejected(self):
        with pytest.raises(ValueError):
            run_example43(0)

    def test_report_is_deterministic(self):
        assert run_example43(2).render_text() == run_example43(2).render_text()

    def test_certificates_present(self):
        rep = run_example43(3)
        by_name = {c.name: c for c in rep.checks}
        assert "witness" in by_name["ns-class"].certificate
        assert "witness" in by_name["transcendental-class"].certificate
        assert "witness" in by_name["twisted-equivalence"].certificate
        assert "invariants" in by_name["untwisted-comparison"].certificate
        assert "km_witness" in by_name["kummer-brauer-order"].certificate
        assert by_name["kummer-brauer-order"].certificate["paths_agree"] == "true"
