"""Unit tests for Lie algebras built from structure constants."""

import numpy as np
import pytest

from core.errors import (
    BadDimensions,
    CapExceeded,
    JacobiViolation,
    NotAnIdeal,
    NotASubalgebra,
    NotSolvable,
    UnsupportedField,
)
from core.exact_linear import FieldDescriptor, subspaces_within
from core.lie_core import LieAlgebra
from utils.catalog import FixtureId, fixture

GF2 = FieldDescriptor.gf(2)
GF3 = FieldDescriptor.gf(3)
Q = FieldDescriptor.rationals()


def build(name, field):
    return fixture(FixtureId(name, field))


@pytest.fixture
def dim2():
    """[x, y] = x over GF(3)."""
    return build("dim2_nonabelian", GF3)


@pytest.fixture
def almost_abelian():
    """[x, z] = x, [y, z] = y over GF(3)."""
    return build("dim3_almost_abelian", GF3)


class TestConstruction:
    """Validation of structure constants."""

    def test_antisymmetry(self, dim2):
        x, y = dim2.basis_vectors()
        assert dim2.bracket(x, y) == (1, 0)
        assert dim2.bracket(y, x) == (2, 0)
        assert dim2.bracket(x, x) == (0, 0)

    def test_jacobi_violation_reports_triple(self):
        brackets = {(0, 1): (0, 0, 1), (0, 2): (1, 0, 0)}
        with pytest.raises(JacobiViolation) as excinfo:
            LieAlgebra(Q, 3, brackets)
        assert excinfo.value.triple == (0, 1, 2)

    def test_i_must_be_less_than_j(self):
        with pytest.raises(BadDimensions):
            LieAlgebra(GF2, 2, {(1, 0): (1, 0)})

    def test_wrong_vector_length(self):
        with pytest.raises(BadDimensions):
            LieAlgebra(GF2, 2, {(0, 1): (1, 0, 0)})

    def test_equality_and_hash(self):
        assert build("heisenberg3", GF2) == build("heisenberg3", GF2)
        assert hash(build("heisenberg3", GF2)) == hash(build("heisenberg3", GF2))
        assert build("heisenberg3", GF2) != build("heisenberg3", GF3)


class TestSeries:
    """Derived and lower central series."""

    def test_derived_series(self, dim2):
        x, _ = dim2.basis_vectors()
        series = dim2.derived_series()
        assert series == [dim2.full_space(), dim2.span([x]), dim2.zero_space()]
        assert dim2.is_solvable()
        assert dim2.derived_length() == 2

    def test_nilpotency_class(self, dim2):
        x, _ = dim2.basis_vectors()
        assert dim2.nilpotency_class(dim2.full_space()) is None
        assert dim2.nilpotency_class(dim2.span([x])) == 1

    def test_product_space_and_ideal_closure(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        assert L.product_space(L.full_space(), L.full_space()) == L.span([x, y])
        assert L.ideal_closure(x) == L.span([x])
        assert L.ideal_closure(z).is_full()

    def test_heisenberg_class_two(self):
        h = build("heisenberg3", GF2)
        assert h.nilpotency_class(h.full_space()) == 2

    def test_lower_central_needs_ideal(self, dim2):
        _, y = dim2.basis_vectors()
        with pytest.raises(NotAnIdeal):
            dim2.lower_central_series(dim2.span([y]))

    def test_rotation_algebra_not_solvable(self):
        so3 = LieAlgebra(Q, 3, {(0, 1): (0, 0, 1), (0, 2): (0, -1, 0), (1, 2): (1, 0, 0)})
        assert not so3.is_solvable()
        assert so3.derived_length() is None
        with pytest.raises(NotSolvable):
            LieAlgebra(GF3, 3, {(0, 1): (0, 0, 1), (0, 2): (0, 2, 0), (1, 2): (1, 0, 0)}).chief_series()


class TestSubalgebras:
    """Centralizers, cores, quotients."""

    def test_centralizer(self, dim2):
        x, _ = dim2.basis_vectors()
        assert dim2.centralizer(dim2.span([x])) == dim2.span([x])

    def test_core(self, dim2):
        x, y = dim2.basis_vectors()
        assert dim2.core(dim2.span([y])).is_zero()
        assert dim2.core(dim2.span([x])) == dim2.span([x])

    def test_core_fixpoint(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        assert L.core(L.span([x, z])) == L.span([x])
        assert L.core(L.span([y, z])) == L.span([y])

    def test_core_needs_subalgebra(self):
        h = build("heisenberg3", Q)
        x, y, _ = h.basis_vectors()
        with pytest.raises(NotASubalgebra):
            h.core(h.span([x, y]))

    def test_multiplier_preimage(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        m = L.span([x, z])
        assert L.multiplier_preimage(m, L.field.vec_neg(y), m) == L.span([x])

    def test_quotient(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        q = L.quotient(L.span([y]))
        assert q.algebra.dim == 2
        assert q.algebra.basis_names == ("x", "z")
        assert q.project(y) == (0, 0)
        assert q.project_subspace(L.span([x, y])) == q.algebra.span([(1, 0)])
        assert q.lift_subspace(q.algebra.span([(1, 0)])) == L.span([x, y])

    def test_quotient_needs_ideal(self, dim2):
        _, y = dim2.basis_vectors()
        with pytest.raises(NotAnIdeal):
            dim2.quotient(dim2.span([y]))


class TestEnumeration:
    """Minimal ideals, chief series, maximal subalgebras over GF(p)."""

    def test_minimal_ideals(self, dim2):
        x, _ = dim2.basis_vectors()
        assert dim2.minimal_ideals() == [dim2.span([x])]

    def test_minimal_ideals_cap(self, almost_abelian):
        with pytest.raises(CapExceeded):
            almost_abelian.minimal_ideals(cap=5)

    def test_chief_series(self, dim2):
        x, _ = dim2.basis_vectors()
        series = dim2.chief_series()
        assert series.terms == (dim2.zero_space(), dim2.span([x]), dim2.full_space())
        assert series.factor_dims() == [1, 1]

    def test_chief_series_picks_least_ideal(self, almost_abelian):
        L = almost_abelian
        x, y, _ = L.basis_vectors()
        assert L.chief_series().terms == (L.zero_space(), L.span([y]), L.span([x, y]), L.full_space())

    def test_maximals_of_dim2(self, dim2):
        maximals = dim2.maximal_subalgebras()
        assert len(maximals) == 4
        assert all(m.dim == 1 for m in maximals)

    def test_maximals_of_heisenberg(self):
        h = build("heisenberg3", GF2)
        _, _, z = h.basis_vectors()
        maximals = h.maximal_subalgebras()
        assert len(maximals) == 3
        assert all(m.dim == 2 and m.space.contains(z) for m in maximals)

    def test_is_maximal(self, almost_abelian):
        L = almost_abelian
        x, y, z = L.basis_vectors()
        assert L.is_maximal_subalgebra(L.span([x, z]))
        assert not L.is_maximal_subalgebra(L.span([z]))
        assert L.is_maximal_in(L.span([z]), L.span([x, z]))

    def test_complemented_chief_factor(self, almost_abelian):
        L = almost_abelian
        x, _, z = L.basis_vectors()
        assert L.complemented_chief_factor(L.span([x, z]), L.chief_series()) == 0

    def test_enumeration_needs_finite_field(self):
        with pytest.raises(UnsupportedField):
            build("dim2_nonabelian", Q).minimal_ideals()


SMALL_FIXTURES = [
    FixtureId("dim2_nonabelian", GF3),
    FixtureId("heisenberg3", GF2),
    FixtureId("dim3_almost_abelian", GF3),
    FixtureId("upper_triangular", GF2, 2),
    FixtureId("example4", GF2),
]


@pytest.fixture(params=SMALL_FIXTURES, ids=str)
def small(request):
    return fixture(request.param)


class TestInvariants:
    """Structural facts checked exhaustively on small solvable algebras."""

    def test_core_is_largest_ideal_inside(self, small):
        for m in small.maximal_subalgebras():
            core = small.core(m.space)
            assert small.is_ideal(core)
            assert m.space.contains(core)
            for s in subspaces_within(m.space):
                if small.is_ideal(s):
                    assert core.contains(s)

    def test_quotient_is_a_homomorphism(self, small):
        rng = np.random.default_rng(1)
        p = small.field.p
        for ideal in small.chief_series().terms[1:-1]:
            q = small.quotient(ideal)
            assert all(q.project(v) == q.algebra.field.zero_vector(q.algebra.dim) for v in ideal.vectors)
            for _ in range(20):
                u, v = (small.vector(rng.integers(0, p, size=small.dim).tolist()) for _ in range(2))
                assert q.project(small.bracket(u, v)) == q.algebra.bracket(q.project(u), q.project(v))

    def test_minimal_ideals_are_abelian(self, small):
        for a in small.minimal_ideals():
            assert small.product_space(a, a).is_zero()

    def test_chief_factors_are_abelian(self, small):
        series = small.chief_series()
        for k in range(series.length):
            lower, upper = series.factor(k)
            assert small.is_ideal(upper)
            assert lower.contains(small.product_space(upper, upper))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
