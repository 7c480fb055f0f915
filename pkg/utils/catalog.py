"""Fixture algebras and the seeded random solvable-algebra generator."""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

import config
from core.errors import BadDimensions, GenerationFailed, InvalidFixture, ParseError
from core.exact_linear import FieldDescriptor, Subspace, Vector
from core.lie_core import LieAlgebra, build_algebra
from core.theorem_lab import example4_base_algebra

logger = logging.getLogger(__name__)

FIXTURE_NAMES = [
    "dim2_nonabelian",
    "heisenberg3",
    "dim3_almost_abelian",
    "dim3_scaled",
    "upper_triangular",
    "example4",
]

_FIXTURE_RE = re.compile(r"^([a-z0-9_]+)(?:\((-?[0-9/]+)\))?$")


@dataclass(frozen=True)
class FixtureId:
    """A named fixture over a field. ``param`` is lambda for dim3_scaled and n for upper_triangular."""

    name: str
    field: FieldDescriptor
    param: Optional[Union[int, Fraction]] = None

    def __str__(self) -> str:
        label = self.name if self.param is None else f"{self.name}({self.param})"
        return f"{label}/{self.field}"

    @classmethod
    def parse(cls, text: str, field: FieldDescriptor) -> "FixtureId":
        """'dim3_scaled(2)', 'upper_triangular(3)', 'heisenberg3', ..."""
        match = _FIXTURE_RE.match(text.strip())
        if not match or match.group(1) not in FIXTURE_NAMES:
            raise InvalidFixture(f"Unknown fixture: {text!r}")
        name, raw = match.groups()
        param = None
        if raw is not None:
            param = Fraction(raw) if name == "dim3_scaled" else int(raw)
        return cls(name, field, param)


def _table(field: FieldDescriptor, n: int, entries: Sequence[Tuple[int, int, int, int]]) -> dict:
    """(i, j, k, c) means [b_i, b_j] has coefficient c on b_k."""
    brackets = {}
    for i, j, k, c in entries:
        current = list(brackets.get((i, j), field.zero_vector(n)))
        current[k] = field.add(current[k], field.element(c))
        brackets[(i, j)] = tuple(current)
    return brackets


def upper_triangular(n: int, field: FieldDescriptor) -> LieAlgebra:
    """
    t(n, F) under the commutator, basis E_ij (i <= j) in lexicographic order.

    [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
    """
    if n < 1:
        raise BadDimensions("upper_triangular needs n >= 1")
    basis = [(i, j) for i in range(n) for j in range(i, n)]
    index = {pair: t for t, pair in enumerate(basis)}
    dim = len(basis)
    entries = []
    for s, (i, j) in enumerate(basis):
        for t in range(s + 1, dim):
            k, l = basis[t]
            if j == k:
                entries.append((s, t, index[(i, l)], 1))
            if l == i:
                entries.append((s, t, index[(k, j)], -1))
    names = [f"E{i}{j}" for i, j in basis]
    return build_algebra(field, dim, _table(field, dim, entries), names)


def fixture(fid: FixtureId) -> LieAlgebra:
    """Build a catalog fixture."""
    f = fid.field
    if fid.name == "dim2_nonabelian":
        return build_algebra(f, 2, _table(f, 2, [(0, 1, 0, 1)]), ["x", "y"])
    if fid.name == "heisenberg3":
        return build_algebra(f, 3, _table(f, 3, [(0, 1, 2, 1)]), ["x", "y", "z"])
    if fid.name == "dim3_almost_abelian":
        return build_algebra(f, 3, _table(f, 3, [(0, 2, 0, 1), (1, 2, 1, 1)]), ["x", "y", "z"])
    if fid.name == "dim3_scaled":
        lam = f.element(0 if fid.param is None else fid.param)
        brackets = {(0, 2): f.unit_vector(3, 0), (1, 2): f.vec_scale(lam, f.unit_vector(3, 1))}
        return build_algebra(f, 3, brackets, ["x", "y", "z"])
    if fid.name == "upper_triangular":
        return upper_triangular(2 if fid.param is None else int(fid.param), f)
    if fid.name == "example4":
        if not f.is_prime_field:
            raise InvalidFixture("example4 is defined over GF(p) only")
        return example4_base_algebra(f.p, verify=False)
    raise InvalidFixture(f"Unknown fixture: {fid.name!r}")


def _closure(ambient: LieAlgebra, vectors: Sequence[Vector]) -> Subspace:
    """Smallest subalgebra of ``ambient`` containing ``vectors``."""
    current = ambient.span(vectors)
    while True:
        grown = current.sum(ambient.product_space(current, current))
        if grown == current:
            return current
        current = grown


def _random_element(rng: np.random.Generator, field: FieldDescriptor, dim: int) -> Vector:
    if field.is_prime_field:
        draws = rng.integers(0, field.p, size=dim)
    else:
        r = config.RATIONAL_ENTRY_RANGE
        draws = rng.integers(-r, r + 1, size=dim)
    return tuple(field.element(int(a)) for a in draws)


def abstract_subalgebra(ambient: LieAlgebra, space: Subspace, prefix: str = "b") -> LieAlgebra:
    """Structure constants of a subalgebra on its echelon basis."""
    basis = space.vectors
    n = len(basis)
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            product = ambient.bracket(basis[i], basis[j])
            coords = space.coordinates(product)
            if any(c != 0 for c in coords):
                brackets[(i, j)] = tuple(coords)
    return build_algebra(ambient.field, n, brackets, [f"{prefix}{i}" for i in range(n)])


def random_solvable(seed: int, target_dim: int, field: FieldDescriptor,
                    ambient_n: Optional[int] = None, max_attempts: Optional[int] = None) -> LieAlgebra:
    """
    A random subalgebra of t(ambient_n, F) of dimension exactly ``target_dim``.

    Random upper-triangular elements are added one at a time and the
    commutator closure recomputed; a draw that overshoots the target restarts
    from scratch. The stream is numpy's PCG64 seeded with ``seed``, so the
    output is a pure function of the arguments.

    Raises:
        BadDimensions: target_dim outside 1..dim t(ambient_n)
        GenerationFailed: no closure of the target dimension within the attempt budget
    """
    ambient_n = config.RANDOM_AMBIENT_N if ambient_n is None else ambient_n
    max_attempts = config.RANDOM_MAX_ATTEMPTS if max_attempts is None else max_attempts
    ambient = upper_triangular(ambient_n, field)
    if not 1 <= target_dim <= ambient.dim:
        raise BadDimensions(f"target_dim must lie in 1..{ambient.dim}")

    rng = np.random.default_rng(seed)
    drawn: List[Vector] = []
    for _ in range(max_attempts):
        candidate = _closure(ambient, drawn + [_random_element(rng, field, ambient.dim)])
        if candidate.dim > target_dim:
            drawn = []
            continue
        drawn = list(candidate.vectors)
        if candidate.dim == target_dim:
            algebra = abstract_subalgebra(ambient, candidate)
            logger.info(f"Random solvable algebra: seed={seed} dim={target_dim} over {field}")
            return algebra
    raise GenerationFailed(f"no {target_dim}-dimensional closure after {max_attempts} draws (seed {seed})")


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    algebra: LieAlgebra


def parse_field(text: str) -> FieldDescriptor:
    """'gf3' / 'GF(3)' / 'q'."""
    token = text.strip().lower().replace("(", "").replace(")", "")
    if token == "q":
        return FieldDescriptor.rationals()
    if token.startswith("gf") and token[2:].isdigit():
        return FieldDescriptor.gf(int(token[2:]))
    raise ParseError(f"Unknown field {text!r}")


def parse_catalog_spec(spec: str) -> Tuple[List[FieldDescriptor], Optional[int]]:
    """Comma-separated tokens: gf<p>, q, dim<=N."""
    fields: List[FieldDescriptor] = []
    max_dim = None
    for token in (t.strip() for t in spec.split(",")):
        if not token:
            continue
        if token.startswith("dim<="):
            try:
                max_dim = int(token[5:])
            except ValueError:
                raise ParseError(f"Bad dimension bound {token!r}")
            continue
        field = parse_field(token)
        if field not in fields:
            fields.append(field)
    if not fields:
        raise ParseError(f"Catalog spec {spec!r} names no field")
    return fields, max_dim


def _fixture_ids(field: FieldDescriptor) -> List[FixtureId]:
    ids = [
        FixtureId("dim2_nonabelian", field),
        FixtureId("heisenberg3", field),
        FixtureId("dim3_almost_abelian", field),
    ]
    if field.is_prime_field:
        lambdas = [v for v in range(field.p) if v != 1]
    else:
        lambdas = [0, 2, -1]
    ids += [FixtureId("dim3_scaled", field, lam) for lam in lambdas]
    ids += [FixtureId("upper_triangular", field, 2), FixtureId("upper_triangular", field, 3)]
    if field.is_prime_field:
        ids.append(FixtureId("example4", field))
    return ids


def catalog(spec: str = None, seed: Optional[int] = None, count: int = 0) -> List[CatalogEntry]:
    """
    Fixtures (and ``count`` random algebras per finite field) selected by a catalog spec.

    Random algebras use seeds seed, seed+1, ... with target dimensions cycling
    through config.RANDOM_TARGET_DIMS.
    """
    spec = config.DEFAULT_CATALOG if spec is None else spec
    seed = config.DEFAULT_SEED if seed is None else seed
    fields, max_dim = parse_catalog_spec(spec)
    entries: List[CatalogEntry] = []
    for field in fields:
        for fid in _fixture_ids(field):
            size = _fixture_dim(fid)
            if max_dim is not None and size > max_dim:
                continue
            entries.append(CatalogEntry(str(fid), fixture(fid)))
        if not field.is_prime_field:
            continue
        dims = [d for d in config.RANDOM_TARGET_DIMS if max_dim is None or d <= max_dim]
        for i in range(count if dims else 0):
            target = dims[i % len(dims)]
            s = seed + i
            try:
                algebra = random_solvable(s, target, field)
            except GenerationFailed as e:
                logger.warning(f"Skipping random algebra: {e}")
                continue
            entries.append(CatalogEntry(f"random(seed={s},dim={target})/{field}", algebra))
    logger.info(f"Catalog {spec!r}: {len(entries)} algebras")
    return entries


def _fixture_dim(fid: FixtureId) -> int:
    if fid.name == "dim2_nonabelian":
        return 2
    if fid.name == "upper_triangular":
        n = int(fid.param)
        return n * (n + 1) // 2
    if fid.name == "example4":
        return fid.field.p + 2
    return 3
