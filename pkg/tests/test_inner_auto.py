"""Unit tests for exp(ad x) automorphisms and the orbit oracles."""

import logging

import pytest

from core.errors import CapExceeded, NotEligible, UnsupportedField
from core.exact_linear import FieldDescriptor, Matrix
from core.inner_auto import (
    InnerAutomorphism,
    ad_matrix,
    are_conjugate_bruteforce,
    conjugacy_classes,
    conjugate_subalgebra,
    exp_ad,
    exp_eligible,
    inner_generators,
    inner_group,
    orbit_search,
)
from utils.catalog import FixtureId, fixture

GF2 = FieldDescriptor.gf(2)
GF3 = FieldDescriptor.gf(3)
Q = FieldDescriptor.rationals()


def dim2(field):
    return fixture(FixtureId("dim2_nonabelian", field))


class TestExp:
    """Eligibility and the truncated exponential."""

    def test_ad_matrix_columns(self):
        L = dim2(GF3)
        _, y = L.basis_vectors()
        assert ad_matrix(L, y) == Matrix.from_rows(GF3, [[1, 0], [0, 0]])

    def test_eligibility_char_p(self):
        L = dim2(GF3)
        x, y = L.basis_vectors()
        eligible, witness = exp_eligible(L, x)
        assert eligible
        assert witness.nilpotency_class == 1
        eligible, witness = exp_eligible(L, y)
        assert not eligible
        assert witness.nilpotency_class is None

    def test_ineligible_is_logged_at_debug(self, caplog):
        L = dim2(GF3)
        _, y = L.basis_vectors()
        with caplog.at_level(logging.DEBUG, logger="core.inner_auto"):
            assert not exp_eligible(L, y)[0]
        assert [r.levelno for r in caplog.records if r.name == "core.inner_auto"] == [logging.DEBUG]

    def test_eligibility_char_zero(self):
        L = dim2(Q)
        x, y = L.basis_vectors()
        assert exp_eligible(L, x)[0]
        assert not exp_eligible(L, y)[0]

    def test_exp_is_one_plus_ad(self):
        L = dim2(GF3)
        x, y = L.basis_vectors()
        phi = exp_ad(L, x)
        assert phi.matrix == Matrix.from_rows(GF3, [[1, 2], [0, 1]])
        assert phi.apply(y) == (2, 1)
        assert phi.word == (x,)

    def test_ineligible_raises(self):
        L = dim2(GF3)
        _, y = L.basis_vectors()
        with pytest.raises(NotEligible):
            exp_ad(L, y)

    def test_automorphism_and_inverse(self):
        h = fixture(FixtureId("heisenberg3", Q))
        v = h.vector([1, 2, 0])
        phi = exp_ad(h, v)
        assert phi.is_automorphism(h)
        assert phi.compose(exp_ad(h, h.field.vec_neg(v))).is_identity()
        assert phi.inverse().matrix == exp_ad(h, h.field.vec_neg(v)).matrix

    def test_upper_triangular_exp(self):
        t = fixture(FixtureId("upper_triangular", GF3, 3))
        e01 = t.basis_vector(1)
        phi = exp_ad(t, e01)
        assert phi.is_automorphism(t)

    def test_conjugate_subalgebra(self):
        L = dim2(GF3)
        x, y = L.basis_vectors()
        image = conjugate_subalgebra(exp_ad(L, x), L.subalgebra(L.span([y])))
        assert image.space == L.span([L.vector([2, 1])])

    @pytest.mark.parametrize("fid,ideal", [
        (FixtureId("dim3_almost_abelian", GF3), [[1, 0, 0], [0, 1, 0]]),
        (FixtureId("example4", GF2), [[1, 0, 0, 0], [0, 1, 0, 0]]),
    ])
    def test_exp_is_additive_on_abelian_ideal(self, fid, ideal):
        L = fixture(fid)
        a_ideal = L.span([L.vector(v) for v in ideal])
        assert L.is_ideal(a_ideal)
        assert L.product_space(a_ideal, a_ideal).is_zero()
        for a in a_ideal.elements():
            for b in a_ideal.elements():
                composed = exp_ad(L, a).compose(exp_ad(L, b))
                assert composed.matrix == exp_ad(L, L.field.vec_add(a, b)).matrix


class TestGroups:
    """Generators and group closure."""

    def test_generator_counts(self):
        gens = inner_generators(dim2(GF3), dim2(GF3).full_space())
        assert gens.eligible_count == 3
        assert gens.ineligible_count == 6
        assert len(gens.generators) == 2
        assert gens.from_derived == 2

    @pytest.mark.parametrize("field,order", [(GF2, 2), (GF3, 3)])
    def test_group_order(self, field, order):
        L = dim2(field)
        x, _ = L.basis_vectors()
        group = inner_group(L, L.span([x]))
        assert group.complete
        assert group.order == order
        assert InnerAutomorphism.identity(L) in group

    def test_group_cap(self):
        L = dim2(GF3)
        with pytest.raises(CapExceeded):
            inner_group(L, L.full_space(), cap=2)
        partial = inner_group(L, L.full_space(), cap=2, strict=False)
        assert not partial.complete

    def test_rationals_rejected(self):
        L = dim2(Q)
        with pytest.raises(UnsupportedField):
            inner_generators(L, L.full_space())


class TestOrbits:
    """Brute-force conjugacy."""

    def test_conjugate_lines(self):
        L = dim2(GF3)
        x, y = L.basis_vectors()
        m, k = L.span([y]), L.span([L.field.vec_add(x, y)])
        result = are_conjugate_bruteforce(L, m, k)
        assert result.conjugate
        assert result.witness.image(m) == k

    def test_ideal_not_conjugate(self):
        L = dim2(GF3)
        x, y = L.basis_vectors()
        result = are_conjugate_bruteforce(L, L.span([y]), L.span([x]))
        assert not result.conjugate
        assert result.complete
        assert len(result.orbit) == 3

    def test_orbit_of_fixed_point(self):
        L = dim2(GF3)
        x, _ = L.basis_vectors()
        gens = inner_generators(L, L.full_space()).generators
        result = orbit_search(gens, L.span([x]))
        assert result.orbit == [L.span([x])]

    def test_conjugacy_classes(self):
        L = dim2(GF3)
        x, y = L.basis_vectors()
        maximals = [m.space for m in L.maximal_subalgebras()]
        classes = conjugacy_classes(L, maximals)
        assert len(classes) == 2
        assert sorted(len(c) for c in classes) == [1, 3]
        assert [L.span([x])] in classes


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
