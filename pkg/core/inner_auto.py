"""exp(ad x) inner automorphisms, the groups I(L:B) and brute-force orbit oracles."""

import logging
from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

import config
from core.errors import CapExceeded, NotEligible, UnsupportedField, VerificationFailed
from core.exact_linear import Matrix, Subspace, Vector
from core.lie_core import LieAlgebra, Subalgebra, as_space

logger = logging.getLogger(__name__)


def ad_matrix(algebra: LieAlgebra, x: Vector) -> Matrix:
    """Matrix of ad x : b -> [b, x]; column j is [b_j, x]."""
    columns = [algebra.bracket(b, x) for b in algebra.basis_vectors()]
    return Matrix.from_columns(algebra.field, columns, algebra.dim)


@dataclass(frozen=True)
class EligibilityWitness:
    """Why exp(ad x) is (or is not) defined."""

    eligible: bool
    closure: Optional[Subspace] = None
    nilpotency_class: Optional[int] = None
    nilpotent_ad: Optional[bool] = None

    def to_dict(self) -> Dict:
        return {
            "eligible": self.eligible,
            "closure": None if self.closure is None else str(self.closure),
            "nilpotency_class": self.nilpotency_class,
            "nilpotent_ad": self.nilpotent_ad,
        }


def exp_eligible(algebra: LieAlgebra, x: Vector) -> Tuple[bool, EligibilityWitness]:
    """
    Decide whether exp(ad x) is an admissible inner automorphism.

    In characteristic 0, ad x must be nilpotent. In characteristic p, x must
    lie in a nilpotent ideal of class < p; the smallest ideal containing x is
    inside every such ideal, so testing it alone is exact.

    Args:
        algebra: The Lie algebra
        x: Element of L

    Returns:
        (eligible, witness)
    """
    p = algebra.field.characteristic
    if p == 0:
        nilpotent = ad_matrix(algebra, x).is_nilpotent()
        if not nilpotent:
            logger.debug(f"exp(ad x) not defined for x={x}: ad x is not nilpotent")
        return nilpotent, EligibilityWitness(eligible=nilpotent, nilpotent_ad=nilpotent)
    closure = algebra.ideal_closure(x)
    cls = algebra.nilpotency_class(closure)
    eligible = cls is not None and cls < p
    if not eligible:
        logger.debug(f"exp(ad x) not defined for x={x}: ideal closure has class {cls} over GF({p})")
    return eligible, EligibilityWitness(eligible=eligible, closure=closure, nilpotency_class=cls)


@dataclass(frozen=True)
class InnerAutomorphism:
    """
    An element of I(L) with the word that produced it.

    ``word`` lists generator elements left to right: the automorphism is
    exp(ad word[0]) o exp(ad word[1]) o ...
    """

    matrix: Matrix
    word: Tuple[Vector, ...] = ()

    @classmethod
    def identity(cls, algebra: LieAlgebra) -> "InnerAutomorphism":
        return cls(Matrix.identity(algebra.field, algebra.dim), ())

    def apply(self, v: Vector) -> Vector:
        return self.matrix.apply(v)

    def compose(self, other: "InnerAutomorphism") -> "InnerAutomorphism":
        """self o other."""
        return InnerAutomorphism(self.matrix.matmul(other.matrix), self.word + other.word)

    def inverse(self) -> "InnerAutomorphism":
        field = self.matrix.field
        return InnerAutomorphism(self.matrix.inverse(), tuple(field.vec_neg(x) for x in reversed(self.word)))

    def is_identity(self) -> bool:
        return self.matrix == Matrix.identity(self.matrix.field, self.matrix.nrows)

    def image(self, u: Subspace) -> Subspace:
        return Subspace.span(u.field, u.ambient_dim, (self.apply(v) for v in u.vectors))

    def preserves_bracket(self, algebra: LieAlgebra) -> bool:
        """phi([b_i, b_j]) == [phi(b_i), phi(b_j)] for all basis pairs."""
        images = [self.matrix.column(j) for j in range(algebra.dim)]
        for i in range(algebra.dim):
            for j in range(i + 1, algebra.dim):
                lhs = self.apply(algebra.bracket(algebra.basis_vector(i), algebra.basis_vector(j)))
                if lhs != algebra.bracket(images[i], images[j]):
                    return False
        return True

    def is_automorphism(self, algebra: LieAlgebra) -> bool:
        try:
            self.matrix.inverse()
        except ValueError:
            return False
        return self.preserves_bracket(algebra)


def exp_ad(algebra: LieAlgebra, x: Vector) -> InnerAutomorphism:
    """
    exp(ad x) = sum (ad x)^r / r!, truncated where (ad x)^r vanishes.

    Raises:
        NotEligible: x fails the characteristic-dependent condition
    """
    eligible, witness = exp_eligible(algebra, x)
    if not eligible:
        raise NotEligible(f"exp(ad x) is not defined for x = {list(x)}", witness=witness.to_dict())
    return _exp_series(algebra, x)


def _exp_series(algebra: LieAlgebra, x: Vector) -> InnerAutomorphism:
    field = algebra.field
    ad = ad_matrix(algebra, x)
    total = Matrix.identity(field, algebra.dim)
    power = ad
    r = 1
    while not power.is_zero():
        if field.characteristic and r >= field.characteristic:
            raise VerificationFailed(f"(ad x)^{r} is nonzero in characteristic {field.characteristic}")
        total = total.add(power.scale(field.inv(field.element(factorial(r)))))
        power = power.matmul(ad)
        r += 1
    return InnerAutomorphism(total, (x,))


def conjugate_subalgebra(phi: InnerAutomorphism, m: Union[Subalgebra, Subspace]) -> Union[Subalgebra, Subspace]:
    """phi(M) in canonical form; a Subalgebra in, a Subalgebra out."""
    image = phi.image(as_space(m))
    if isinstance(m, Subalgebra):
        return Subalgebra(m.parent, image)
    return image


@dataclass
class GeneratorSet:
    """Distinct exp(ad x) for the eligible x of a subspace."""

    generators: List[InnerAutomorphism]
    eligible_count: int
    ineligible_count: int
    from_derived: int = 0

    def to_dict(self) -> Dict:
        return {
            "generators": len(self.generators),
            "eligible_elements": self.eligible_count,
            "ineligible_elements": self.ineligible_count,
            "generators_from_derived_algebra": self.from_derived,
        }


@lru_cache(maxsize=256)
def inner_generators(algebra: LieAlgebra, b: Subspace, cap: Optional[int] = None) -> GeneratorSet:
    """
    exp(ad x) for every eligible x in B, deduplicated by matrix, identity dropped.

    Cached per (algebra, B, cap); callers must not mutate the result.
    """
    if not algebra.field.is_prime_field:
        raise UnsupportedField("generator enumeration needs a finite field")
    cap = config.MAX_SUBSPACES if cap is None else cap
    derived = algebra.product_space(algebra.full_space(), algebra.full_space())
    identity = Matrix.identity(algebra.field, algebra.dim)
    seen: Dict[Matrix, InnerAutomorphism] = {}
    eligible_count = ineligible_count = from_derived = 0
    for x in b.elements(cap=cap):
        eligible, _ = exp_eligible(algebra, x)
        if not eligible:
            ineligible_count += 1
            continue
        eligible_count += 1
        phi = _exp_series(algebra, x)
        if phi.matrix == identity or phi.matrix in seen:
            continue
        seen[phi.matrix] = phi
        if derived.contains(x):
            from_derived += 1
    return GeneratorSet(list(seen.values()), eligible_count, ineligible_count, from_derived)


@dataclass
class InnerGroup:
    """I(L:B) as an explicit element set."""

    generators: List[InnerAutomorphism]
    elements: Dict[Matrix, InnerAutomorphism] = dc_field(default_factory=dict)
    cap: int = 0
    complete: bool = False

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, phi: InnerAutomorphism) -> bool:
        return phi.matrix in self.elements


def inner_group(algebra: LieAlgebra, b: Subspace, cap: Optional[int] = None, strict: bool = True) -> InnerGroup:
    """
    Close the generators of I(L:B) under composition by breadth-first search.

    Args:
        algebra: The Lie algebra (over GF(p))
        b: Subspace supplying generators
        cap: Largest group order explored (defaults to config.MAX_GROUP_ELEMENTS)
        strict: Raise CapExceeded instead of returning an incomplete group

    Returns:
        InnerGroup; ``complete`` is False only when strict is off and the cap hit
    """
    cap = config.MAX_GROUP_ELEMENTS if cap is None else cap
    gens = inner_generators(algebra, b).generators
    start = InnerAutomorphism.identity(algebra)
    group = InnerGroup(generators=gens, elements={start.matrix: start}, cap=cap)
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in gens:
            nxt = current.compose(g)
            if nxt.matrix in group.elements:
                continue
            if len(group.elements) >= cap:
                message = f"inner group closure exceeded {cap} elements"
                if strict:
                    raise CapExceeded(message)
                logger.warning(message)
                return group
            group.elements[nxt.matrix] = nxt
            queue.append(nxt)
    group.complete = True
    logger.debug(f"Closed inner group of order {group.order} from {len(gens)} generators")
    return group


@dataclass
class OrbitResult:
    """Outcome of a brute-force conjugacy search."""

    conjugate: bool
    witness: Optional[InnerAutomorphism]
    orbit: List[Subspace]
    complete: bool

    def to_dict(self) -> Dict:
        return {
            "conjugate": self.conjugate,
            "witness_word": None if self.witness is None else [
                ",".join(str(a) for a in x) for x in self.witness.word
            ],
            "orbit_size": len(self.orbit),
            "orbit_complete": self.complete,
        }


def orbit_search(generators: Sequence[InnerAutomorphism], start: Subspace, target: Optional[Subspace] = None,
                 cap: Optional[int] = None) -> OrbitResult:
    """
    Breadth-first orbit of ``start`` under the generated group.

    Stops early when ``target`` is reached. A full orbit is a certificate of
    non-conjugacy.
    """
    cap = config.MAX_GROUP_ELEMENTS if cap is None else cap
    n = start.ambient_dim
    identity = InnerAutomorphism(Matrix.identity(start.field, n), ())
    reached: Dict[Subspace, InnerAutomorphism] = {start: identity}
    if target is not None and start == target:
        return OrbitResult(True, identity, [start], False)
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for g in generators:
            image = g.image(current)
            if image in reached:
                continue
            if len(reached) >= cap:
                raise CapExceeded(f"orbit exceeded {cap} subspaces")
            reached[image] = g.compose(reached[current])
            if target is not None and image == target:
                return OrbitResult(True, reached[image], list(reached), False)
            queue.append(image)
    return OrbitResult(False, None, list(reached), True)


def are_conjugate_bruteforce(algebra: LieAlgebra, m: Union[Subspace, Subalgebra], k: Union[Subspace, Subalgebra],
                             b: Optional[Subspace] = None, cap: Optional[int] = None) -> OrbitResult:
    """
    Search the I(L:B)-orbit of M for K (B defaults to L).

    Returns:
        OrbitResult with a witness automorphism when conjugate, or the
        exhausted orbit when not
    """
    if not algebra.field.is_prime_field:
        raise UnsupportedField("brute-force conjugacy needs a finite field")
    b = algebra.full_space() if b is None else b
    gens = inner_generators(algebra, b).generators
    result = orbit_search(gens, as_space(m), as_space(k), cap=cap)
    if result.conjugate and result.witness.image(as_space(m)) != as_space(k):
        raise VerificationFailed("orbit witness does not map M onto K")
    return result


def conjugacy_classes(algebra: LieAlgebra, spaces: Sequence[Subspace], b: Optional[Subspace] = None,
                      cap: Optional[int] = None) -> List[List[Subspace]]:
    """
    Partition ``spaces`` into I(L:B)-orbits.

    Each class lists its members in the order they appear in ``spaces``;
    classes are ordered by their first member.
    """
    if not algebra.field.is_prime_field:
        raise UnsupportedField("orbit partitions need a finite field")
    b = algebra.full_space() if b is None else b
    gens = inner_generators(algebra, b).generators
    label: Dict[Subspace, int] = {}
    classes: List[List[Subspace]] = []
    for s in spaces:
        if s in label:
            continue
        orbit = orbit_search(gens, s, cap=cap).orbit
        index = len(classes)
        for member in orbit:
            label[member] = index
        classes.append([])
    for s in spaces:
        classes[label[s]].append(s)
    return classes
