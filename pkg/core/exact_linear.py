"""Exact linear algebra over GF(p) and Q: scalars, dense matrices and canonical subspaces.

GF(p) entries are held in int64 numpy arrays reduced mod p; rational entries in
object arrays of ``Fraction``. Matrices and subspaces keep their rows as tuples
of plain scalars, so they stay hashable and compare by value.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

import config
from core.errors import AmbientMismatch, BadDimensions, CapExceeded, SingularMatrix, UnsupportedField

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Vector = Tuple[Scalar, ...]

PRIME_FIELD = "prime_field"
RATIONALS = "rationals"


def is_prime(n: int) -> bool:
    """Trial-division primality test (field sizes here are tiny)."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """A prime field GF(p) or the rationals, together with its arithmetic."""

    kind: str
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == PRIME_FIELD:
            if self.p is None or not is_prime(self.p):
                raise UnsupportedField(f"GF(p) needs a prime p, got {self.p}")
        elif self.kind == RATIONALS:
            if self.p is not None:
                raise UnsupportedField("the rationals take no p")
        else:
            raise UnsupportedField(f"Unknown field kind: {self.kind}")

    @classmethod
    def gf(cls, p: int) -> "FieldDescriptor":
        return cls(PRIME_FIELD, p)

    @classmethod
    def rationals(cls) -> "FieldDescriptor":
        return cls(RATIONALS)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == PRIME_FIELD

    @property
    def characteristic(self) -> int:
        return self.p if self.is_prime_field else 0

    def __str__(self) -> str:
        return f"GF({self.p})" if self.is_prime_field else "Q"

    # Scalars

    def element(self, value: Union[int, Fraction, str]) -> Scalar:
        """
        Coerce an int, Fraction or decimal/fraction string into a canonical scalar.

        Raises:
            ZeroDivisionError: denominator is zero (or divisible by p)
            ValueError: unparseable string
        """
        q = Fraction(value) if not isinstance(value, int) else value
        if not self.is_prime_field:
            return Fraction(q)
        if isinstance(q, int):
            return q % self.p
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
        return (q.numerator * pow(q.denominator, -1, self.p)) % self.p

    def reduce(self, x: Scalar) -> Scalar:
        return int(x) % self.p if self.is_prime_field else Fraction(x)

    @property
    def zero(self) -> Scalar:
        return self.reduce(0)

    @property
    def one(self) -> Scalar:
        return self.reduce(1)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.reduce(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.is_prime_field:
            return pow(int(a), self.p - 2, self.p)
        return 1 / Fraction(a)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def elements(self) -> List[Scalar]:
        """All field elements in increasing residue order (finite fields only)."""
        if not self.is_prime_field:
            raise UnsupportedField("cannot enumerate the elements of Q")
        return list(range(self.p))

    def sort_value(self, a: Scalar):
        if self.is_prime_field:
            return a
        return (a.numerator, a.denominator)

    def format(self, a: Scalar) -> str:
        return str(a)

    # Arrays

    @property
    def dtype(self):
        return np.int64 if self.is_prime_field else object

    def array(self, rows: Sequence[Sequence[Scalar]], ncols: int) -> np.ndarray:
        """2-d array of the given rows, reduced into the field."""
        if not rows:
            return self.zeros((0, ncols))
        if self.is_prime_field:
            return np.mod(np.array(rows, dtype=np.int64).reshape(len(rows), ncols), self.p)
        out = np.empty((len(rows), ncols), dtype=object)
        for i, row in enumerate(rows):
            out[i, :] = [Fraction(a) for a in row]
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.is_prime_field:
            return np.zeros(shape, dtype=np.int64)
        return np.full(shape, Fraction(0), dtype=object)

    def reduce_array(self, a: np.ndarray) -> np.ndarray:
        return np.mod(a, self.p) if self.is_prime_field else a

    # Vectors

    def zero_vector(self, n: int) -> Vector:
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> Vector:
        return tuple(self.one if k == i else self.zero for k in range(n))

    def vector(self, values: Iterable) -> Vector:
        return tuple(self.element(v) for v in values)

    def vec_add(self, u: Vector, v: Vector) -> Vector:
        return tuple(self.reduce(a + b) for a, b in zip(u, v))

    def vec_sub(self, u: Vector, v: Vector) -> Vector:
        return tuple(self.reduce(a - b) for a, b in zip(u, v))

    def vec_scale(self, c: Scalar, u: Vector) -> Vector:
        return tuple(self.reduce(c * a) for a in u)

    def vec_neg(self, u: Vector) -> Vector:
        return tuple(self.reduce(-a) for a in u)

    def combination(self, coeffs: Sequence[Scalar], vectors: Sequence[Vector], n: int) -> Vector:
        """Sum of coeffs[i] * vectors[i], a vector of length n."""
        if not vectors:
            return self.zero_vector(n)
        coeff_row = self.array([tuple(coeffs)], len(vectors))
        return _as_vector(self.reduce_array(coeff_row @ self.array(vectors, n))[0])


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


def _as_rows(a: np.ndarray) -> Tuple[Vector, ...]:
    return tuple(tuple(row) for row in a.tolist())


def _as_vector(a: np.ndarray) -> Vector:
    return tuple(a.tolist())


def _nonzero(a: np.ndarray) -> np.ndarray:
    return a != 0


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix; acts on column vectors via ``apply``."""

    field: FieldDescriptor
    rows: Tuple[Vector, ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise BadDimensions(f"row of length {len(row)} in a matrix with {self.ncols} columns")

    @classmethod
    def from_rows(cls, field: FieldDescriptor, rows: Iterable[Iterable], ncols: Optional[int] = None) -> "Matrix":
        converted = tuple(field.vector(r) for r in rows)
        if ncols is None:
            if not converted:
                raise BadDimensions("ncols is required for a matrix with no rows")
            ncols = len(converted[0])
        return cls(field, converted, ncols)

    @classmethod
    def from_array(cls, field: FieldDescriptor, a: np.ndarray) -> "Matrix":
        return cls(field, _as_rows(a), a.shape[1])

    @classmethod
    def identity(cls, field: FieldDescriptor, n: int) -> "Matrix":
        return cls(field, tuple(field.unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field: FieldDescriptor, columns: Sequence[Vector], nrows: int) -> "Matrix":
        return cls.from_array(field, field.array(columns, nrows).T)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def to_array(self) -> np.ndarray:
        return self.field.array(self.rows, self.ncols)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix.from_array(self.field, self.to_array().T)

    def is_zero(self) -> bool:
        return not _nonzero(self.to_array()).any()

    def apply(self, v: Vector) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise BadDimensions(f"vector of length {len(v)} against {self.ncols} columns")
        column = self.field.array([tuple(v)], self.ncols)[0]
        return _as_vector(self.field.reduce_array(self.to_array() @ column))

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise BadDimensions(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        product = self.field.reduce_array(self.to_array() @ other.to_array())
        return Matrix(self.field, _as_rows(product), other.ncols)

    def add(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix.from_array(self.field, self.field.reduce_array(self.to_array() + other.to_array()))

    def sub(self, other: "Matrix") -> "Matrix":
        self._check_shape(other)
        return Matrix.from_array(self.field, self.field.reduce_array(self.to_array() - other.to_array()))

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix.from_array(self.field, self.field.reduce_array(self.to_array() * c))

    def is_nilpotent(self) -> bool:
        if not self.is_square:
            raise BadDimensions("nilpotency needs a square matrix")
        power = self
        for _ in range(self.nrows):
            if power.is_zero():
                return True
            power = power.matmul(self)
        return power.is_zero()

    def inverse(self) -> "Matrix":
        """Inverse via row reduction of [M | I]."""
        if not self.is_square:
            raise BadDimensions("only square matrices have inverses")
        n = self.nrows
        augmented = np.hstack([self.to_array(), Matrix.identity(self.field, n).to_array()])
        reduced, pivots = _rref_array(self.field, augmented)
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise SingularMatrix("matrix is not invertible")
        return Matrix.from_array(self.field, reduced[:, n:])

    def _check_shape(self, other: "Matrix") -> None:
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise BadDimensions("matrix shapes differ")


def _rref_array(field: FieldDescriptor, a: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Gauss-Jordan elimination. Returns the nonzero reduced rows and their pivot columns."""
    work = field.reduce_array(a.copy())
    nrows, ncols = work.shape
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        candidates = np.flatnonzero(_nonzero(work[r:, c]))
        if candidates.size == 0:
            continue
        pivot = r + int(candidates[0])
        if pivot != r:
            work[[r, pivot]] = work[[pivot, r]]
        work[r] = field.reduce_array(work[r] * field.inv(work[r, c]))
        factors = work[:, c].copy()
        factors[r] = field.zero
        work = field.reduce_array(work - np.outer(factors, work[r]))
        pivots.append(c)
        r += 1
    return work[:r], pivots


def rref(m: Matrix) -> Tuple[Matrix, int]:
    """
    Reduced row echelon form with zero rows removed.

    Args:
        m: Matrix to reduce

    Returns:
        (canonical matrix, rank)
    """
    reduced, pivots = _rref_array(m.field, m.to_array())
    return Matrix(m.field, _as_rows(reduced), m.ncols), len(pivots)


def kernel(m: Matrix) -> List[Vector]:
    """Basis of {x : m x = 0}, one vector per free column."""
    field = m.field
    reduced, pivots = _rref_array(field, m.to_array())
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    basis = field.zeros((len(free), m.ncols))
    for k, j in enumerate(free):
        basis[k, j] = field.one
        if pivots:
            basis[k, pivots] = field.reduce_array(-reduced[:, j])
    return list(_as_rows(basis))


def left_kernel(field: FieldDescriptor, rows: Sequence[Vector], ncols: int) -> List[Vector]:
    """Basis of coefficient vectors c with sum c_i * rows[i] = 0."""
    if not rows:
        return []
    return kernel(Matrix(field, tuple(rows), ncols).transpose())


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@dataclass(frozen=True)
class Subspace:
    """
    A subspace of F^n held by its reduced row echelon basis.

    The basis is canonical, so two Subspaces are equal exactly when their
    dataclass fields are equal.
    """

    field: FieldDescriptor
    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, field: FieldDescriptor, ambient_dim: int, vectors: Iterable[Vector]) -> "Subspace":
        rows = [tuple(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in F^{ambient_dim}")
        reduced, _ = _rref_array(field, field.array(rows, ambient_dim))
        return cls(field, ambient_dim, Matrix(field, _as_rows(reduced), ambient_dim))

    @classmethod
    def zero(cls, field: FieldDescriptor, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix(field, (), ambient_dim))

    @classmethod
    def full(cls, field: FieldDescriptor, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def vectors(self) -> Tuple[Vector, ...]:
        return self.basis.rows

    @property
    def pivots(self) -> List[int]:
        return [next(j for j, a in enumerate(row) if a != 0) for row in self.basis.rows]

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise AmbientMismatch(
                f"subspaces of {self.field}^{self.ambient_dim} and {other.field}^{other.ambient_dim}"
            )

    def residue(self, v: Vector) -> Vector:
        """Reduce v modulo the echelon basis; zero iff v lies in the subspace."""
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in F^{self.ambient_dim}")
        out = self.field.array([tuple(v)], self.ambient_dim)[0]
        if self.is_zero():
            return _as_vector(out)
        basis = self.basis.to_array()
        coeffs = out[self.pivots].copy()
        return _as_vector(self.field.reduce_array(out - coeffs @ basis))

    def contains(self, item: Union[Vector, "Subspace"]) -> bool:
        if isinstance(item, Subspace):
            self._check_ambient(item)
            return all(is_zero_vector(self.residue(v)) for v in item.vectors)
        return is_zero_vector(self.residue(tuple(item)))

    def coordinates(self, v: Vector) -> Vector:
        """Coefficients of v in the echelon basis."""
        if not self.contains(v):
            raise AmbientMismatch("vector does not lie in the subspace")
        return tuple(self.field.reduce(v[pc]) for pc in self.pivots)

    def from_coordinates(self, coeffs: Sequence[Scalar]) -> Vector:
        return self.field.combination(coeffs, self.vectors, self.ambient_dim)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(self.field, self.ambient_dim, self.vectors + other.vectors)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [u | u] and [v | 0]; rows of shape [0 | w] span the meet."""
        self._check_ambient(other)
        n = self.ambient_dim
        u = self.basis.to_array()
        v = other.basis.to_array()
        stacked = np.vstack([np.hstack([u, u]), np.hstack([v, self.field.zeros(v.shape)])])
        reduced, _ = _rref_array(self.field, stacked)
        meet = reduced[~_nonzero(reduced[:, :n]).any(axis=1), n:]
        return Subspace.span(self.field, n, _as_rows(meet))

    def elements(self, cap: Optional[int] = None) -> Iterator[Vector]:
        """All vectors of the subspace, coefficient tuples in lexicographic order."""
        if not self.field.is_prime_field:
            raise UnsupportedField("cannot enumerate the vectors of a subspace over Q")
        cap = config.MAX_SUBSPACES if cap is None else cap
        count = self.field.p ** self.dim
        if count > cap:
            raise CapExceeded(f"{count} vectors exceed the cap of {cap}")
        if self.is_zero():
            yield self.field.zero_vector(self.ambient_dim)
            return
        coeffs = np.array(list(itertools.product(self.field.elements(), repeat=self.dim)), dtype=np.int64)
        for row in self.field.reduce_array(coeffs @ self.basis.to_array()).tolist():
            yield tuple(row)

    def sort_key(self):
        return (self.dim, tuple(self.field.sort_value(a) for row in self.vectors for a in row))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return ";".join(",".join(self.field.format(a) for a in row) for row in self.vectors)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u.sum(v)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def contains(u: Subspace, item: Union[Vector, Subspace]) -> bool:
    return u.contains(item)


def count_subspaces(n: int, q: int, dims: Optional[Iterable[int]] = None) -> int:
    dims = range(n + 1) if dims is None else dims
    return sum(gaussian_binomial(n, k, q) for k in dims)


def _echelon_bases(n: int, k: int, p: int) -> Iterator[np.ndarray]:
    """Stacks of k x n echelon bases, one stack per pivot pattern."""
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        slots = [(r, j) for r, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivot_set]
        values = np.array(list(itertools.product(range(p), repeat=len(slots))), dtype=np.int64)
        bases = np.zeros((len(values), k, n), dtype=np.int64)
        bases[:, np.arange(k), np.array(pivots, dtype=np.intp)] = 1
        if slots:
            slot_rows, slot_cols = zip(*slots)
            bases[:, np.array(slot_rows, dtype=np.intp), np.array(slot_cols, dtype=np.intp)] = values
        yield bases


def enumerate_subspaces(n: int, field: FieldDescriptor, cap: Optional[int] = None,
                        dims: Optional[Iterable[int]] = None) -> List[Subspace]:
    """
    Every subspace of F^n exactly once, built directly in echelon form.

    Order: by dimension, then pivot columns lexicographically, then free
    entries lexicographically.

    Args:
        n: Ambient dimension
        field: A prime field
        cap: Largest allowed total count (defaults to config.MAX_SUBSPACES)
        dims: Restrict to these dimensions

    Returns:
        List of canonical Subspaces
    """
    if not field.is_prime_field:
        raise UnsupportedField("subspace enumeration needs a finite field")
    cap = config.MAX_SUBSPACES if cap is None else cap
    dims = sorted(set(range(n + 1) if dims is None else (d for d in dims if 0 <= d <= n)))
    total = count_subspaces(n, field.p, dims)
    if total > cap:
        raise CapExceeded(f"{total} subspaces of GF({field.p})^{n} exceed the cap of {cap}")

    spaces: List[Subspace] = []
    for k in dims:
        for bases in _echelon_bases(n, k, field.p):
            spaces.extend(Subspace(field, n, Matrix(field, _as_rows(basis), n)) for basis in bases)
    logger.debug(f"Enumerated {len(spaces)} subspaces of GF({field.p})^{n}")
    return spaces


def subspaces_within(u: Subspace, dims: Optional[Iterable[int]] = None, cap: Optional[int] = None) -> List[Subspace]:
    """Every subspace of u (optionally of the given dimensions)."""
    local = enumerate_subspaces(u.dim, u.field, cap=cap, dims=dims)
    return [
        Subspace.span(u.field, u.ambient_dim, (u.from_coordinates(w) for w in s.vectors))
        for s in local
    ]


def intermediate_subspaces(lower: Subspace, upper: Subspace, cap: Optional[int] = None) -> List[Subspace]:
    """Every subspace S with lower < S < upper (both inclusions strict)."""
    if not upper.contains(lower):
        raise AmbientMismatch("lower subspace is not contained in upper")
    complement: List[Vector] = []
    current = lower
    for v in upper.vectors:
        if not current.contains(v):
            complement.append(v)
            current = current.sum(Subspace.span(lower.field, lower.ambient_dim, [v]))
    k = len(complement)
    local = enumerate_subspaces(k, lower.field, cap=cap, dims=range(1, k))
    out = []
    for s in local:
        extra = [lower.field.combination(w, complement, lower.ambient_dim) for w in s.vectors]
        out.append(Subspace.span(lower.field, lower.ambient_dim, lower.vectors + tuple(extra)))
    return out
