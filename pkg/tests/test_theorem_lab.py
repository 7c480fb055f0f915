"""Tests for the conjugacy theorems and their oracles."""

import pytest

from core.errors import (
    HypothesisNotMet,
    NotAComplement,
    NotCoreFree,
    NotMaximal,
    NotSolvable,
)
from core.exact_linear import FieldDescriptor, is_zero_vector
from core.lie_core import LieAlgebra
from core.theorem_lab import (
    CONJUGATE,
    HYPOTHESIS_NOT_MET,
    NOT_CONJUGATE,
    complement_classes_bijection,
    complement_conjugacy_criterion,
    complements_of,
    conjugate_by_core_test,
    corefree_conjugator,
    decide_conjugacy,
    example4_base_algebra,
    example4_monolith_report,
    find_conjugator_in_chief_factor,
    hypothesis_report,
    intersection_maximality_check,
)
from utils.catalog import FixtureId, fixture

GF2 = FieldDescriptor.gf(2)
GF3 = FieldDescriptor.gf(3)
Q = FieldDescriptor.rationals()


@pytest.fixture
def dim2():
    """[x, y] = x over GF(3)."""
    return fixture(FixtureId("dim2_nonabelian", GF3))


@pytest.fixture
def almost_abelian():
    """[x, z] = x, [y, z] = y over GF(3)."""
    return fixture(FixtureId("dim3_almost_abelian", GF3))


@pytest.fixture
def example4():
    return example4_base_algebra(2)


class TestHypothesis:
    """Solvable with L^2 of class below p."""

    def test_abelian_derived_algebra(self, almost_abelian):
        hyp = hypothesis_report(almost_abelian)
        assert hyp.hypothesis_met
        assert hyp.class_of_derived == 1
        assert hyp.char_p == 3

    def test_rationals(self):
        hyp = hypothesis_report(fixture(FixtureId("dim2_nonabelian", Q)))
        assert hyp.char_p is None
        assert hyp.hypothesis_met

    def test_example_fails(self, example4):
        hyp = hypothesis_report(example4)
        assert hyp.solvable
        assert hyp.class_of_derived is None
        assert not hyp.hypothesis_met
        assert hyp.to_dict()["class_of_derived"] == "not nilpotent"


class TestCoreEquality:
    """Conjugacy decided by comparing cores."""

    def test_conjugate_lines(self, dim2):
        x, y = dim2.basis_vectors()
        verdict = conjugate_by_core_test(dim2, dim2.span([y]), dim2.span([dim2.vector([1, 1])]))
        assert verdict.verdict == CONJUGATE
        assert verdict.cores[0].is_zero()

    def test_ideal_versus_complement(self, dim2):
        x, y = dim2.basis_vectors()
        verdict = conjugate_by_core_test(dim2, dim2.span([y]), dim2.span([x]))
        assert verdict.verdict == NOT_CONJUGATE

    def test_both_methods_agree(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        m, k = L.span([x, z]), L.span([x, L.field.vec_add(y, z)])
        verdict = decide_conjugacy(L, m, k, method="both")
        assert verdict.verdict == CONJUGATE
        assert verdict.core_verdict == verdict.brute_verdict == CONJUGATE
        assert verdict.witness.image(m) == k

    def test_brute_when_hypothesis_fails(self, example4):
        L = example4
        e0, e1, x, y = L.basis_vectors()
        derived, other = L.span([e0, e1, x]), L.span([x, y])
        assert decide_conjugacy(L, derived, other).verdict == HYPOTHESIS_NOT_MET
        verdict = decide_conjugacy(L, derived, other, method="both")
        assert verdict.core_verdict == HYPOTHESIS_NOT_MET
        assert verdict.verdict == NOT_CONJUGATE
        assert verdict.brute_complete

    def test_not_maximal(self, almost_abelian):
        L = almost_abelian
        _, _, z = L.basis_vectors()
        with pytest.raises(NotMaximal):
            conjugate_by_core_test(L, L.span([z]), L.span([z]))

    def test_not_solvable(self):
        so3 = LieAlgebra(Q, 3, {(0, 1): (0, 0, 1), (0, 2): (0, -1, 0), (1, 2): (1, 0, 0)})
        with pytest.raises(NotSolvable):
            conjugate_by_core_test(so3, so3.zero_space(), so3.zero_space())

    def test_unknown_method(self, dim2):
        x, _ = dim2.basis_vectors()
        with pytest.raises(ValueError):
            decide_conjugacy(dim2, dim2.span([x]), dim2.span([x]), method="guess")


class TestCoreFree:
    """1 + ad a conjugates core-free maximal subalgebras."""

    @pytest.mark.parametrize("field,expected", [(GF2, (1, 0)), (GF3, (2, 0))])
    def test_conjugator(self, field, expected):
        L = fixture(FixtureId("dim2_nonabelian", field))
        x, y = L.basis_vectors()
        k = L.span([L.field.vec_add(x, y)])
        found = corefree_conjugator(L, L.span([y]), k)
        assert found.a == expected
        assert found.minimal_ideal == L.span([x])
        assert found.ad_squared_zero
        assert found.automorphism.image(L.span([y])) == k

    def test_core_not_zero(self, dim2):
        x, y = dim2.basis_vectors()
        with pytest.raises(NotCoreFree):
            corefree_conjugator(dim2, dim2.span([x]), dim2.span([y]))


class TestChiefFactorConjugator:
    """a in the complemented chief factor with exp(ad a)(M) = K."""

    def test_finds_conjugator(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        m, k = L.span([x, z]), L.span([x, L.field.vec_add(y, z)])
        found = find_conjugator_in_chief_factor(L, m, k)
        assert found.a == (0, 2, 0)
        assert found.intersection == L.span([x])
        assert found.chief_factor == (L.zero_space(), L.span([y]))
        assert found.automorphism.image(m) == k

    def test_same_subalgebra_on_ideal(self):
        L = fixture(FixtureId("dim2_nonabelian", GF2))
        x, _ = L.basis_vectors()
        m = L.span([x])
        found = find_conjugator_in_chief_factor(L, m, m)
        assert found.trivial
        assert found.a == (0, 0)
        assert found.intersection == m
        assert found.automorphism.is_identity()
        assert found.chief_factor == (m, L.full_space())

    @pytest.mark.parametrize("fid", [
        FixtureId("dim2_nonabelian", GF2),
        FixtureId("dim2_nonabelian", GF3),
        FixtureId("heisenberg3", GF2),
        FixtureId("dim3_almost_abelian", GF3),
        FixtureId("dim3_scaled", GF2, 0),
    ], ids=str)
    def test_same_subalgebra_for_every_maximal(self, fid):
        L = fixture(fid)
        for m in L.maximal_subalgebras():
            found = find_conjugator_in_chief_factor(L, m, m)
            assert found.trivial
            assert found.intersection == m.space
            assert is_zero_vector(found.a)

    def test_factor_outside_derived_algebra_is_recorded(self):
        L = fixture(FixtureId("dim3_scaled", GF2, 0))
        x, y, z = L.basis_vectors()
        m, k = L.span([y, z]), L.span([L.field.vec_add(x, z), y])
        found = find_conjugator_in_chief_factor(L, m, k)
        assert found.chief_factor == (L.span([y]), L.span([x, y]))
        assert not found.factor_in_derived
        assert found.ineligible_skipped == 0
        assert found.a == x
        assert found.intersection == L.span([y])
        record = found.to_dict()
        assert record["A_in_derived_algebra"] is False
        assert record["ineligible_skipped"] == 0
        assert record["trivial"] is False

    def test_hypothesis_not_met(self, example4):
        L = example4
        e0, e1, x, y = L.basis_vectors()
        with pytest.raises(HypothesisNotMet):
            find_conjugator_in_chief_factor(L, L.span([x, y]), L.span([x, y]))


class TestComplements:
    """Complements to an abelian minimal ideal."""

    def test_criterion(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        a_ideal = L.span([x])
        m = L.span([y, z])
        assert complement_conjugacy_criterion(L, a_ideal, m, L.span([y, L.field.vec_add(z, x)]))
        assert not complement_conjugacy_criterion(L, a_ideal, m, L.span([L.field.vec_add(y, x), z]))

    def test_criterion_needs_complements(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        with pytest.raises(NotAComplement):
            complement_conjugacy_criterion(L, L.span([x]), L.span([x, z]), L.span([y, z]))

    def test_complements_of(self, dim2):
        x, _ = dim2.basis_vectors()
        assert len(complements_of(dim2, dim2.span([x]))) == 3

    def test_bijection(self, almost_abelian):
        L = almost_abelian
        _, y, _ = L.basis_vectors()
        report = complement_classes_bijection(L, L.span([y]))
        assert report.holds
        assert len(report.classes) == 3
        assert len(report.ideal_complements) == 3
        assert not report.self_centralizing

    def test_self_centralizing(self):
        L = fixture(FixtureId("dim2_nonabelian", GF2))
        x, _ = L.basis_vectors()
        report = complement_classes_bijection(L, L.span([x]))
        assert report.self_centralizing
        assert report.self_centralizing_holds
        assert len(report.classes) == 1
        assert report.ideal_complements == [L.zero_space()]


class TestIntersection:
    """M meet K for non-conjugate maximal subalgebras."""

    def test_different_cores(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        report = intersection_maximality_check(L, L.span([x, z]), L.span([y, z]))
        assert report.intersection == L.span([z])
        assert report.failures == []
        statuses = {o.name: o.status for o in report.outcomes}
        assert statuses["maximal_in_M"] == "pass"
        assert statuses["maximal_in_K"] == "pass"
        assert statuses["maximal_in_at_least_one"] == "pass"

    def test_conjugate_pair_skips(self, dim2):
        x, y = dim2.basis_vectors()
        report = intersection_maximality_check(dim2, dim2.span([y]), dim2.span([dim2.vector([1, 1])]))
        statuses = {o.name: o.status for o in report.outcomes}
        assert statuses["maximal_in_M"] == "skipped"
        assert statuses["maximal_in_at_least_one"] == "skipped"


class TestExampleAlgebra:
    """The cyclic example where L^2 is not nilpotent."""

    def test_shape(self, example4):
        assert example4.dim == 4
        assert example4.basis_names == ("e0", "e1", "x", "y")

    def test_monolith(self, example4):
        report = example4_monolith_report(example4)
        assert report.holds
        assert report.unique_minimal_ideal
        assert str(report.derived) == "1,0,0,0;0,1,0,0;0,0,1,0"

    @pytest.mark.parametrize("p", [2, 3])
    def test_verified_construction(self, p):
        L = example4_base_algebra(p, verify=True)
        assert L.dim == p + 2
        assert example4_monolith_report(L).monolith.dim == p

    def test_core_test_refuses(self, example4):
        e0, e1, x, y = example4.basis_vectors()
        verdict = conjugate_by_core_test(example4, example4.span([e0, e1, x]), example4.span([x, y]))
        assert verdict.verdict == HYPOTHESIS_NOT_MET

    def test_maximal_subalgebras(self, example4):
        found = sorted(str(m) for m in example4.maximal_subalgebras())
        assert "1,0,0,0;0,1,0,0;0,0,1,0" in found
        assert "0,0,1,0;0,0,0,1" in found


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
