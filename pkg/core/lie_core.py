"""Lie algebras from structure constants: brackets, series, cores, quotients, chief series."""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import config
from core.errors import (
    BadDimensions,
    CapExceeded,
    JacobiViolation,
    NotAnIdeal,
    NotASubalgebra,
    NotSolvable,
    UnsupportedField,
    VerificationFailed,
)
from core.exact_linear import (
    FieldDescriptor,
    Subspace,
    Vector,
    enumerate_subspaces,
    intermediate_subspaces,
    is_zero_vector,
    left_kernel,
)

logger = logging.getLogger(__name__)

BracketTable = Mapping[Tuple[int, int], Sequence]


class LieAlgebra:
    """
    A finite-dimensional Lie algebra given by structure constants on a basis.

    Only products [b_i, b_j] with i < j are stored; antisymmetry supplies the
    rest. The Jacobi identity is checked on construction.
    """

    def __init__(self, field: FieldDescriptor, dim: int, brackets: BracketTable,
                 basis_names: Optional[Sequence[str]] = None):
        """
        Args:
            field: Coefficient field
            dim: Dimension n
            brackets: Map (i, j) with i < j to the coordinate vector of [b_i, b_j]
            basis_names: n labels (defaults to b0, b1, ...)

        Raises:
            BadDimensions: index out of range, i >= j, wrong vector length or name count
            JacobiViolation: Jacobi identity fails, with the witness triple
        """
        if dim < 0:
            raise BadDimensions(f"negative dimension {dim}")
        self.field = field
        self.dim = dim
        names = list(basis_names) if basis_names is not None else [f"b{i}" for i in range(dim)]
        if len(names) != dim:
            raise BadDimensions(f"{len(names)} basis names for dimension {dim}")
        self.basis_names = tuple(names)

        stored: Dict[Tuple[int, int], Vector] = {}
        for (i, j), value in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise BadDimensions(f"bracket index ({i}, {j}) out of range for dimension {dim}")
            if i >= j:
                raise BadDimensions(f"bracket ({i}, {j}) must have i < j")
            vec = field.vector(value)
            if len(vec) != dim:
                raise BadDimensions(f"bracket ({i}, {j}) has {len(vec)} coordinates, expected {dim}")
            if not is_zero_vector(vec):
                stored[(i, j)] = vec
        self.brackets: Tuple[Tuple[Tuple[int, int], Vector], ...] = tuple(sorted(stored.items()))

        # sparse table: _table[i][j] = [(k, c), ...]
        self._table: List[List[List[Tuple[int, object]]]] = [[[] for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in self.brackets:
            self._table[i][j] = [(k, c) for k, c in enumerate(vec) if c != 0]
            self._table[j][i] = [(k, field.neg(c)) for k, c in enumerate(vec) if c != 0]

        self._check_jacobi()

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.field, self.dim, self.basis_names, self.brackets) == (
            other.field, other.dim, other.basis_names, other.brackets)

    def __hash__(self) -> int:
        return hash((self.field, self.dim, self.basis_names, self.brackets))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, field={self.field}, names={list(self.basis_names)})"

    # Basic vectors and spaces

    def basis_vector(self, i: int) -> Vector:
        return self.field.unit_vector(self.dim, i)

    def basis_vectors(self) -> List[Vector]:
        return [self.basis_vector(i) for i in range(self.dim)]

    def vector(self, values: Sequence) -> Vector:
        vec = self.field.vector(values)
        if len(vec) != self.dim:
            raise BadDimensions(f"expected {self.dim} coordinates, got {len(vec)}")
        return vec

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def structure_constants(self) -> Dict[Tuple[int, int], Vector]:
        return dict(self.brackets)

    # Bracket

    def bracket(self, u: Vector, v: Vector) -> Vector:
        """[u, v] expanded bilinearly through the structure constants."""
        acc = [0] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            row = self._table[i]
            for j, b in enumerate(v):
                if b == 0 or i == j:
                    continue
                entries = row[j]
                if not entries:
                    continue
                c = a * b
                for k, t in entries:
                    acc[k] += c * t
        return tuple(self.field.reduce(a) for a in acc)

    def _check_jacobi(self) -> None:
        basis = self.basis_vectors()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.bracket(basis[i], basis[j])
                for k in range(j + 1, self.dim):
                    total = self.field.vec_add(
                        self.bracket(bij, basis[k]),
                        self.field.vec_add(
                            self.bracket(self.bracket(basis[j], basis[k]), basis[i]),
                            self.bracket(self.bracket(basis[k], basis[i]), basis[j]),
                        ),
                    )
                    if not is_zero_vector(total):
                        raise JacobiViolation((i, j, k))

    def product_space(self, u: Subspace, v: Subspace) -> Subspace:
        """Span of [u_i, v_j] over basis pairs."""
        return self.span(self.bracket(a, b) for a in u.vectors for b in v.vectors)

    # Series

    def derived_series(self) -> List[Subspace]:
        """L, L^2, (L^2)^2, ... up to and including the first repeated term."""
        series = [self.full_space()]
        while True:
            nxt = self.product_space(series[-1], series[-1])
            if nxt == series[-1]:
                return series
            series.append(nxt)
            if nxt.is_zero():
                return series

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].is_zero()

    def derived_length(self) -> Optional[int]:
        """Number of steps to reach 0, or None when the series stalls."""
        series = self.derived_series()
        return len(series) - 1 if series[-1].is_zero() else None

    def lower_central_series(self, ideal: Subspace) -> List[Subspace]:
        """I^1 = I, I^(k+1) = [I^k, I], stopping at 0 or at the first repeat."""
        if not self.is_ideal(ideal):
            raise NotAnIdeal("lower central series needs an ideal")
        series = [ideal]
        while not series[-1].is_zero():
            nxt = self.product_space(series[-1], ideal)
            if nxt == series[-1]:
                break
            series.append(nxt)
        return series

    def nilpotency_class(self, ideal: Subspace) -> Optional[int]:
        """Smallest c with I^(c+1) = 0; None if the ideal is not nilpotent."""
        series = self.lower_central_series(ideal)
        if not series[-1].is_zero():
            return None
        return len(series) - 1

    # Subalgebras and ideals

    def is_subalgebra(self, u: Subspace) -> bool:
        return u.contains(self.product_space(u, u))

    def is_ideal(self, u: Subspace) -> bool:
        return u.contains(self.product_space(self.full_space(), u))

    def subalgebra(self, u: Subspace) -> "Subalgebra":
        if not self.is_subalgebra(u):
            raise NotASubalgebra(f"span({u}) is not closed under the bracket")
        return Subalgebra(self, u)

    def _solve_membership(self, space: Subspace, maps: Sequence[Callable[[Vector], Vector]],
                          target: Subspace) -> Subspace:
        """{u in space : f(u) in target for every f in maps}, by one linear solve."""
        if space.is_zero() or not maps:
            return space
        rows = []
        for w in space.vectors:
            row: Tuple = ()
            for f in maps:
                row += target.residue(f(w))
            rows.append(row)
        coeffs = left_kernel(self.field, rows, len(maps) * self.dim)
        return self.span(space.from_coordinates(c) for c in coeffs)

    def centralizer(self, u: Subspace) -> Subspace:
        """C_L(U) = {x : [x, u] = 0 for all u in U}."""
        maps = [lambda x, w=w: self.bracket(x, w) for w in u.vectors]
        return self._solve_membership(self.full_space(), maps, self.zero_space())

    def core(self, u: Subspace) -> Subspace:
        """
        Largest ideal of L contained in the subalgebra U.

        Descending fixpoint U_(i+1) = {x in U_i : [b_j, x] in U_i for all j};
        at most dim U steps.
        """
        if not self.is_subalgebra(u):
            raise NotASubalgebra(f"core needs a subalgebra, span({u}) is not closed")
        maps = [lambda x, b=b: self.bracket(b, x) for b in self.basis_vectors()]
        current = u
        while True:
            nxt = self._solve_membership(current, maps, current)
            if nxt == current:
                return current
            current = nxt

    def multiplier_preimage(self, space: Subspace, a: Vector, target: Subspace) -> Subspace:
        """{m in space : [m, a] in target}."""
        return self._solve_membership(space, [lambda m: self.bracket(m, a)], target)

    def ideal_closure(self, v: Vector) -> Subspace:
        """Smallest ideal of L containing v."""
        current = self.span([v])
        full = self.full_space()
        while True:
            nxt = current.sum(self.product_space(full, current))
            if nxt == current:
                return current
            current = nxt

    def quotient(self, ideal: Subspace) -> "QuotientMap":
        """
        L/I on the coordinate complement of I's echelon pivots.

        Returns:
            QuotientMap carrying the quotient algebra with project/lift maps
        """
        if not self.is_ideal(ideal):
            raise NotAnIdeal(f"span({ideal}) is not an ideal")
        pivots = set(ideal.pivots)
        columns = tuple(c for c in range(self.dim) if c not in pivots)

        brackets = {}
        for a in range(len(columns)):
            for b in range(a + 1, len(columns)):
                product = self.bracket(self.basis_vector(columns[a]), self.basis_vector(columns[b]))
                value = _coset_coordinates(ideal, columns, product)
                if not is_zero_vector(value):
                    brackets[(a, b)] = value
        algebra = LieAlgebra(self.field, len(columns), brackets, [self.basis_names[c] for c in columns])
        return QuotientMap(self, ideal, algebra, columns)

    # Enumeration (finite fields)

    def _require_prime_field(self, what: str) -> None:
        if not self.field.is_prime_field:
            raise UnsupportedField(f"{what} is only available over GF(p)")

    def minimal_ideals(self, cap: Optional[int] = None) -> List[Subspace]:
        """
        All minimal ideals, each the closure of any of its nonzero vectors.

        One representative per line (leading coordinate 1) is closed; the
        minimal closures are those containing no smaller closure.
        """
        self._require_prime_field("minimal ideal enumeration")
        cap = config.MAX_SUBSPACES if cap is None else cap
        p = self.field.p
        lines = (p ** self.dim - 1) // (p - 1)
        if lines > cap:
            raise CapExceeded(f"{lines} lines exceed the cap of {cap}")

        closures: Dict[Subspace, None] = {}
        for v in self.full_space().elements(cap=p ** self.dim):
            lead = next((a for a in v if a != 0), None)
            if lead != 1:
                continue
            closures.setdefault(self.ideal_closure(v), None)

        by_dim = sorted(closures, key=lambda s: s.sort_key())
        minimal = [
            c for c in by_dim
            if not any(d.dim < c.dim and c.contains(d) for d in by_dim)
        ]
        return minimal

    def chief_series(self, cap: Optional[int] = None) -> "ChiefSeries":
        """
        0 = L_0 < L_1 < ... < L_n = L, lifting the least minimal ideal of each
        successive quotient.
        """
        self._require_prime_field("chief series")
        if not self.is_solvable():
            raise NotSolvable("chief series are only built for solvable algebras")
        current = self.zero_space()
        terms = [current]
        while not current.is_full():
            q = self.quotient(current)
            chosen = min(q.algebra.minimal_ideals(cap), key=lambda s: s.sort_key())
            current = q.lift_subspace(chosen)
            terms.append(current)
        logger.debug(f"Chief series dims: {[t.dim for t in terms]}")
        return ChiefSeries(tuple(terms))

    def maximal_subalgebras(self, cap: Optional[int] = None) -> List["Subalgebra"]:
        """
        All proper subalgebras maximal under inclusion.

        Candidates are visited by decreasing dimension; a proper subalgebra is
        maximal iff no maximal subalgebra found so far contains it.
        """
        self._require_prime_field("maximal subalgebra enumeration")
        spaces = enumerate_subspaces(self.dim, self.field, cap=cap, dims=range(self.dim))
        maximal: List[Subspace] = []
        for s in sorted(spaces, key=lambda s: -s.dim):
            if not self.is_subalgebra(s):
                continue
            if any(m.contains(s) for m in maximal):
                continue
            maximal.append(s)
        return [Subalgebra(self, s) for s in sorted(maximal, key=lambda s: s.sort_key())]

    def is_maximal_subalgebra(self, m: Union[Subspace, "Subalgebra"]) -> bool:
        """M proper subalgebra with no subalgebra strictly between M and L."""
        return self.is_maximal_in(as_space(m), self.full_space())

    def is_maximal_in(self, s: Union[Subspace, "Subalgebra"], m: Union[Subspace, "Subalgebra"]) -> bool:
        """S is a maximal subalgebra of the subalgebra M."""
        s, m = as_space(s), as_space(m)
        if not (self.is_subalgebra(s) and self.is_subalgebra(m)):
            return False
        if s == m or not m.contains(s):
            return False
        if m.dim - s.dim == 1:
            return True
        if not self.field.is_prime_field:
            raise UnsupportedField("maximality above codimension 1 is only decided over GF(p)")
        return not any(self.is_subalgebra(t) for t in intermediate_subspaces(s, m))

    def complemented_chief_factor(self, m: Union[Subspace, "Subalgebra"], series: "ChiefSeries") -> int:
        """
        The k with L_k in M but L_(k+1) not in M.

        Raises:
            VerificationFailed: L != M + L_(k+1) or M meet L_(k+1) != L_k
        """
        m = as_space(m)
        terms = series.terms
        for k in range(len(terms) - 1):
            if not m.contains(terms[k + 1]):
                if not m.contains(terms[k]):
                    break
                if not m.sum(terms[k + 1]).is_full():
                    raise VerificationFailed(f"L != M + L_{k + 1}", witness={"k": k})
                if m.intersect(terms[k + 1]) != terms[k]:
                    raise VerificationFailed(f"M meet L_{k + 1} != L_{k}", witness={"k": k})
                return k
        raise VerificationFailed(f"no chief factor is complemented by span({m})")


@dataclass(frozen=True)
class Subalgebra:
    """A bracket-closed subspace of ``parent``."""

    parent: LieAlgebra
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def __str__(self) -> str:
        return str(self.space)


def as_space(u: Union[Subspace, Subalgebra]) -> Subspace:
    return u.space if isinstance(u, Subalgebra) else u


@dataclass(frozen=True)
class ChiefSeries:
    """Ascending chain of ideals, each factor a chief factor."""

    terms: Tuple[Subspace, ...]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def factor(self, k: int) -> Tuple[Subspace, Subspace]:
        """(L_k, L_(k+1))."""
        return self.terms[k], self.terms[k + 1]

    def factor_dims(self) -> List[int]:
        return [b.dim - a.dim for a, b in zip(self.terms, self.terms[1:])]


def _coset_coordinates(ideal: Subspace, columns: Sequence[int], v: Vector) -> Vector:
    """Coordinates of v + I on the non-pivot columns of I."""
    r = ideal.residue(v)
    return tuple(r[c] for c in columns)


@dataclass(frozen=True)
class QuotientMap:
    """L -> L/I with a coordinate section."""

    parent: LieAlgebra
    ideal: Subspace
    algebra: LieAlgebra
    columns: Tuple[int, ...]

    def project(self, v: Vector) -> Vector:
        return _coset_coordinates(self.ideal, self.columns, v)

    def lift(self, w: Vector) -> Vector:
        out = list(self.parent.field.zero_vector(self.parent.dim))
        for c, a in zip(self.columns, w):
            out[c] = a
        return tuple(out)

    def project_subspace(self, u: Subspace) -> Subspace:
        return self.algebra.span(self.project(v) for v in u.vectors)

    def lift_subspace(self, w: Subspace) -> Subspace:
        """Full preimage: lifted basis plus the ideal."""
        return self.parent.span([self.lift(v) for v in w.vectors] + list(self.ideal.vectors))


def build_algebra(field: FieldDescriptor, dim: int, sc_table: BracketTable,
                  names: Optional[Sequence[str]] = None) -> LieAlgebra:
    """Validate and build a Lie algebra from its structure constants."""
    algebra = LieAlgebra(field, dim, sc_table, names)
    logger.debug(f"Built {algebra!r}")
    return algebra
