"""Conjugacy and intersection theorems for maximal subalgebras as executable procedures."""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Tuple, Union

import config
from core.errors import (
    HypothesisNotMet,
    NoConjugatorFound,
    NotAComplement,
    NotAnIdeal,
    NotConjugate,
    NotCoreFree,
    NotMaximal,
    NotSolvable,
    SearchExhausted,
    UnsupportedField,
    VerificationFailed,
)
from core.exact_linear import FieldDescriptor, Matrix, Subspace, Vector, enumerate_subspaces, subspaces_within
from core.inner_auto import (
    InnerAutomorphism,
    ad_matrix,
    are_conjugate_bruteforce,
    conjugacy_classes,
    exp_ad,
    exp_eligible,
    inner_generators,
)
from core.lie_core import ChiefSeries, LieAlgebra, Subalgebra, as_space

logger = logging.getLogger(__name__)

CONJUGATE = "conjugate"
NOT_CONJUGATE = "not_conjugate"
HYPOTHESIS_NOT_MET = "hypothesis_not_met"

SpaceLike = Union[Subspace, Subalgebra]


def _fmt_vector(v: Vector) -> str:
    return ",".join(str(a) for a in v)


@dataclass(frozen=True)
class HypothesisReport:
    """Whether the core-equality and conjugator theorems apply to L."""

    solvable: bool
    char_p: Optional[int]
    class_of_derived: Optional[int]
    hypothesis_met: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "solvable": self.solvable,
            "char_p": self.char_p,
            "class_of_derived": "not nilpotent" if self.class_of_derived is None else self.class_of_derived,
            "hypothesis_met": self.hypothesis_met,
        }


def hypothesis_report(algebra: LieAlgebra) -> HypothesisReport:
    """Solvable, and in characteristic p the class of L^2 is below p."""
    solvable = algebra.is_solvable()
    p = algebra.field.characteristic or None
    full = algebra.full_space()
    cls = algebra.nilpotency_class(algebra.product_space(full, full))
    met = solvable and (p is None or (cls is not None and cls < p))
    return HypothesisReport(solvable=solvable, char_p=p, class_of_derived=cls, hypothesis_met=met)


def _require_solvable(algebra: LieAlgebra) -> None:
    if not algebra.is_solvable():
        raise NotSolvable("the algebra is not solvable")


def _require_maximal(algebra: LieAlgebra, *spaces: Subspace) -> None:
    for s in spaces:
        if not algebra.is_maximal_subalgebra(s):
            raise NotMaximal(f"span({s}) is not a maximal subalgebra")


def _require_prime_field(algebra: LieAlgebra, what: str) -> None:
    if not algebra.field.is_prime_field:
        raise UnsupportedField(f"{what} enumerates elements and needs GF(p)")


@dataclass
class ConjugacyVerdict:
    """Answer to "is M conjugate to K in L?" with its evidence."""

    verdict: str
    method: str
    cores: Tuple[Subspace, Subspace]
    hypothesis: HypothesisReport
    witness: Optional[InnerAutomorphism] = None
    core_verdict: Optional[str] = None
    brute_verdict: Optional[str] = None
    brute_complete: Optional[bool] = None
    generators: Optional[Dict[str, int]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "core_verdict": self.core_verdict,
            "brute_verdict": self.brute_verdict,
            "brute_complete": self.brute_complete,
            "cores": [str(self.cores[0]), str(self.cores[1])],
            "hypothesis": self.hypothesis.to_dict(),
            "witness_word": None if self.witness is None else [_fmt_vector(x) for x in self.witness.word],
            "generators": self.generators,
        }


def conjugate_by_core_test(algebra: LieAlgebra, m: SpaceLike, k: SpaceLike) -> ConjugacyVerdict:
    """
    M conjugate to K iff M_L = K_L, when the hypothesis holds.

    Returns hypothesis_not_met rather than guessing when L^2 has class >= p.
    """
    m, k = as_space(m), as_space(k)
    _require_solvable(algebra)
    _require_maximal(algebra, m, k)
    hyp = hypothesis_report(algebra)
    cores = (algebra.core(m), algebra.core(k))
    if not hyp.hypothesis_met:
        verdict = HYPOTHESIS_NOT_MET
    else:
        verdict = CONJUGATE if cores[0] == cores[1] else NOT_CONJUGATE
    return ConjugacyVerdict(verdict=verdict, method="core_test", cores=cores, hypothesis=hyp, core_verdict=verdict)


def decide_conjugacy(algebra: LieAlgebra, m: SpaceLike, k: SpaceLike, method: str = "core",
                     cap: Optional[int] = None) -> ConjugacyVerdict:
    """
    Conjugacy by core test, brute-force orbit search, or both.

    Args:
        method: "core", "brute" or "both"
        cap: Orbit cap for the brute-force side

    Raises:
        VerificationFailed: both methods answered and disagree, or a conjugate
            pair has different cores
    """
    m, k = as_space(m), as_space(k)
    if method not in ("core", "brute", "both"):
        raise ValueError(f"Unknown method: {method}")

    if method in ("core", "both"):
        result = conjugate_by_core_test(algebra, m, k)
    else:
        _require_maximal(algebra, m, k)
        result = ConjugacyVerdict(verdict="", method="brute_force", cores=(algebra.core(m), algebra.core(k)),
                                  hypothesis=hypothesis_report(algebra))
    if method == "core":
        return result

    orbit = are_conjugate_bruteforce(algebra, m, k, cap=cap)
    result.brute_verdict = CONJUGATE if orbit.conjugate else NOT_CONJUGATE
    result.brute_complete = orbit.complete or orbit.conjugate
    result.witness = orbit.witness
    result.generators = inner_generators(algebra, algebra.full_space()).to_dict()

    if orbit.conjugate and result.cores[0] != result.cores[1]:
        raise VerificationFailed("conjugate maximal subalgebras with different cores",
                                 witness=[str(c) for c in result.cores])
    if method == "both":
        result.method = "both"
        if result.core_verdict != HYPOTHESIS_NOT_MET and result.core_verdict != result.brute_verdict:
            raise VerificationFailed(
                f"core test says {result.core_verdict}, orbit search says {result.brute_verdict}",
                witness=result.to_dict(),
            )
        if result.core_verdict == HYPOTHESIS_NOT_MET:
            result.verdict = result.brute_verdict
    else:
        result.verdict = result.brute_verdict
    return result


@dataclass
class CoreFreeConjugator:
    """a in the unique minimal ideal A with (1 + ad a)(M) = K."""

    a: Vector
    minimal_ideal: Subspace
    automorphism: InnerAutomorphism
    ad_squared_zero: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": _fmt_vector(self.a),
            "minimal_ideal": str(self.minimal_ideal),
            "ad_squared_zero": self.ad_squared_zero,
        }


def corefree_conjugator(algebra: LieAlgebra, m: SpaceLike, k: SpaceLike,
                        cap: Optional[int] = None) -> CoreFreeConjugator:
    """
    Conjugate two core-free maximal subalgebras by 1 + ad a, a in A.

    Also verifies the surrounding facts: A is the unique minimal ideal,
    L = A + M = A + K with trivial meets, and C_L(A) = A.

    Raises:
        NotCoreFree: a core is nonzero
        VerificationFailed: a surrounding fact fails
        NoConjugatorFound: no a in A works
    """
    m, k = as_space(m), as_space(k)
    _require_prime_field(algebra, "the core-free conjugator search")
    _require_solvable(algebra)
    _require_maximal(algebra, m, k)
    if not algebra.core(m).is_zero() or not algebra.core(k).is_zero():
        raise NotCoreFree("both maximal subalgebras must have zero core")

    minimal = algebra.minimal_ideals()
    if len(minimal) != 1:
        raise VerificationFailed(f"{len(minimal)} minimal ideals; a core-free maximal forces exactly one",
                                 witness=[str(a) for a in minimal])
    a_ideal = minimal[0]
    if not algebra.product_space(a_ideal, a_ideal).is_zero():
        raise VerificationFailed("the minimal ideal is not abelian")
    for s in (m, k):
        if not (a_ideal.intersect(s).is_zero() and a_ideal.sum(s).is_full()):
            raise VerificationFailed(f"span({s}) is not a complement to the minimal ideal")
    if algebra.centralizer(a_ideal) != a_ideal:
        raise VerificationFailed("C_L(A) != A")

    identity = Matrix.identity(algebra.field, algebra.dim)
    search_cap = config.MAX_CONJUGATOR_SEARCH if cap is None else cap
    for a in a_ideal.elements(cap=search_cap):
        ad = ad_matrix(algebra, a)
        one_plus_ad = InnerAutomorphism(identity.add(ad), (a,))
        if one_plus_ad.image(m) != k:
            continue
        squared_zero = ad.matmul(ad).is_zero()
        if not squared_zero:
            raise VerificationFailed("(ad a)^2 != 0 for a in an abelian minimal ideal")
        if exp_ad(algebra, a).matrix != one_plus_ad.matrix:
            raise VerificationFailed("exp(ad a) differs from 1 + ad a")
        return CoreFreeConjugator(a=a, minimal_ideal=a_ideal, automorphism=one_plus_ad, ad_squared_zero=True)
    raise NoConjugatorFound(f"no a in span({a_ideal}) maps span({m}) onto span({k})")


@dataclass
class ChiefFactorConjugator:
    """a in A with exp(ad a)(M) = K, and the intersection it describes."""

    a: Vector
    intersection: Subspace
    factor_index: int
    chief_factor: Tuple[Subspace, Subspace]
    automorphism: InnerAutomorphism
    trivial: bool = False
    factor_in_derived: bool = True
    ineligible_skipped: int = 0

    def to_dict(self) -> Dict[str, Any]:
        lower, upper = self.chief_factor
        return {
            "a": _fmt_vector(self.a),
            "intersection": str(self.intersection),
            "factor_index": self.factor_index,
            "A": str(upper),
            "B": str(lower),
            "trivial": self.trivial,
            "A_in_derived_algebra": self.factor_in_derived,
            "ineligible_skipped": self.ineligible_skipped,
        }


def find_conjugator_in_chief_factor(algebra: LieAlgebra, m: SpaceLike, k: SpaceLike,
                                    series: Optional[ChiefSeries] = None,
                                    cap: Optional[int] = None) -> ChiefFactorConjugator:
    """
    For conjugate M, K with M complementing the chief factor A/B, find a in A
    with K = exp(ad a)(M) and check M meet K = {m in M : [m, a] in M}.

    Also checks B = A meet M_L and, when K != M, [L, A] + B = A. K = M gives
    a = 0 without a search; this is the only case when M is an ideal, where
    A/B is central.

    The search skips elements of A without an admissible exp(ad a). That only
    happens when A is not inside L^2; the result records both facts.

    Raises:
        HypothesisNotMet: L^2 has class >= p (or L is not solvable)
        NotConjugate: the cores differ
        VerificationFailed / SearchExhausted: a stated fact fails
    """
    m, k = as_space(m), as_space(k)
    _require_prime_field(algebra, "the chief-factor conjugator search")
    hyp = hypothesis_report(algebra)
    if not hyp.hypothesis_met:
        raise HypothesisNotMet("the conjugator theorem needs L^2 of class < p", witness=hyp.to_dict())
    _require_maximal(algebra, m, k)
    core_m = algebra.core(m)
    if core_m != algebra.core(k):
        raise NotConjugate("maximal subalgebras with different cores are not conjugate")

    series = algebra.chief_series() if series is None else series
    index = algebra.complemented_chief_factor(m, series)
    lower, upper = series.factor(index)
    full = algebra.full_space()
    in_derived = algebra.product_space(full, full).contains(upper)

    if upper.intersect(core_m) != lower:
        raise VerificationFailed("B != A meet M_L", witness={"A": str(upper), "B": str(lower), "core": str(core_m)})
    if m == k:
        return ChiefFactorConjugator(a=algebra.field.zero_vector(algebra.dim), intersection=m, factor_index=index,
                                     chief_factor=(lower, upper), automorphism=InnerAutomorphism.identity(algebra),
                                     trivial=True, factor_in_derived=in_derived)
    if algebra.product_space(full, upper).sum(lower) != upper:
        raise VerificationFailed("[L, A] + B != A", witness={"A": str(upper), "B": str(lower)})

    search_cap = config.MAX_CONJUGATOR_SEARCH if cap is None else cap
    skipped = 0
    for a in upper.elements(cap=search_cap):
        eligible, _ = exp_eligible(algebra, a)
        if not eligible:
            skipped += 1
            continue
        phi = exp_ad(algebra, a)
        if phi.image(m) != k:
            continue
        formula = algebra.multiplier_preimage(m, a, m)
        meet = m.intersect(k)
        if formula != meet:
            raise VerificationFailed(
                "{m in M : [m, a] in M} != M meet K",
                witness={"a": _fmt_vector(a), "formula": str(formula), "meet": str(meet)},
            )
        if skipped:
            logger.warning(f"Skipped {skipped} elements of span({upper}) without exp(ad a); "
                           f"A in L^2: {in_derived}")
        return ChiefFactorConjugator(a=a, intersection=meet, factor_index=index, chief_factor=(lower, upper),
                                     automorphism=phi, factor_in_derived=in_derived, ineligible_skipped=skipped)
    raise SearchExhausted(f"no a in span({upper}) maps span({m}) onto span({k})",
                          witness={"A_in_derived_algebra": in_derived, "ineligible_skipped": skipped})


def _require_complement(algebra: LieAlgebra, a_ideal: Subspace, s: Subspace) -> None:
    if not algebra.is_subalgebra(s):
        raise NotAComplement(f"span({s}) is not a subalgebra")
    if not (a_ideal.intersect(s).is_zero() and a_ideal.sum(s).is_full()):
        raise NotAComplement(f"span({s}) is not a vector-space complement to span({a_ideal})")


def complement_conjugacy_criterion(algebra: LieAlgebra, a_ideal: Subspace, m: SpaceLike, k: SpaceLike) -> bool:
    """Complements M, K to A are I(L:A)-conjugate iff M meet C_L(A) = K meet C_L(A)."""
    m, k = as_space(m), as_space(k)
    if not algebra.is_ideal(a_ideal):
        raise NotAnIdeal(f"span({a_ideal}) is not an ideal")
    _require_complement(algebra, a_ideal, m)
    _require_complement(algebra, a_ideal, k)
    centralizer = algebra.centralizer(a_ideal)
    return m.intersect(centralizer) == k.intersect(centralizer)


def complements_of(algebra: LieAlgebra, a_ideal: Subspace, cap: Optional[int] = None) -> List[Subspace]:
    """All subalgebra complements to A."""
    candidates = enumerate_subspaces(algebra.dim, algebra.field, cap=cap, dims=[algebra.dim - a_ideal.dim])
    return [s for s in candidates if a_ideal.intersect(s).is_zero() and algebra.is_subalgebra(s)]


@dataclass
class BijectionReport:
    """Classes of complements to A versus ideal complements to A in C_L(A)."""

    minimal_ideal: Subspace
    centralizer: Subspace
    complements: List[Subspace] = dc_field(default_factory=list)
    classes: List[List[Subspace]] = dc_field(default_factory=list)
    ideal_complements: List[Subspace] = dc_field(default_factory=list)
    class_images: List[Optional[Subspace]] = dc_field(default_factory=list)
    well_defined: bool = True
    injective: bool = True
    surjective: bool = True
    self_centralizing: bool = False

    @property
    def has_complements(self) -> bool:
        return bool(self.complements)

    @property
    def holds(self) -> bool:
        if not self.has_complements:
            return True
        return (self.well_defined and self.injective and self.surjective
                and len(self.classes) == len(self.ideal_complements))

    @property
    def self_centralizing_holds(self) -> bool:
        """C_L(A) = A forces complements to exist and form a single class."""
        if not self.self_centralizing:
            return True
        return self.has_complements and len(self.classes) == 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "minimal_ideal": str(self.minimal_ideal),
            "centralizer": str(self.centralizer),
            "complements": len(self.complements),
            "classes": len(self.classes),
            "ideal_complements": len(self.ideal_complements),
            "class_images": [None if s is None else str(s) for s in self.class_images],
            "well_defined": self.well_defined,
            "injective": self.injective,
            "surjective": self.surjective,
            "self_centralizing": self.self_centralizing,
        }


def complement_classes_bijection(algebra: LieAlgebra, a_ideal: Subspace, cap: Optional[int] = None) -> BijectionReport:
    """
    Check the bijection class-of-M -> M meet C_L(A) between I(L:A)-classes of
    complements to A and ideals of L complementing A inside C_L(A).
    """
    _require_prime_field(algebra, "the complement bijection")
    if not algebra.is_ideal(a_ideal):
        raise NotAnIdeal(f"span({a_ideal}) is not an ideal")
    centralizer = algebra.centralizer(a_ideal)
    report = BijectionReport(minimal_ideal=a_ideal, centralizer=centralizer,
                             self_centralizing=(centralizer == a_ideal))
    report.complements = complements_of(algebra, a_ideal, cap=cap)

    if centralizer.contains(a_ideal):
        within = subspaces_within(centralizer, dims=[centralizer.dim - a_ideal.dim], cap=cap)
        report.ideal_complements = [
            n for n in within if a_ideal.intersect(n).is_zero() and algebra.is_ideal(n)
        ]
    if not report.has_complements:
        logger.info(f"span({a_ideal}) has no complements")
        return report

    report.classes = conjugacy_classes(algebra, report.complements, a_ideal)
    for cls in report.classes:
        images = {s.intersect(centralizer) for s in cls}
        if len(images) != 1:
            report.well_defined = False
            report.class_images.append(None)
            continue
        image = images.pop()
        report.class_images.append(image)
        if not (algebra.is_ideal(image) and image in report.ideal_complements):
            report.well_defined = False
    known = [s for s in report.class_images if s is not None]
    report.injective = len(set(known)) == len(known)
    report.surjective = set(report.ideal_complements) <= set(known)
    return report


@dataclass
class CheckOutcome:
    """One statement applied to one instance."""

    name: str
    applicable: bool
    holds: Optional[bool] = None
    detail: Dict[str, Any] = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.applicable:
            return "skipped"
        return "pass" if self.holds else "fail"


@dataclass
class IntersectionReport:
    """Maximality of M meet K inside M and K, per the non-conjugate theorems."""

    cores: Tuple[Subspace, Subspace]
    intersection: Subspace
    outcomes: List[CheckOutcome] = dc_field(default_factory=list)

    @property
    def failures(self) -> List[CheckOutcome]:
        return [o for o in self.outcomes if o.status == "fail"]


def intersection_maximality_check(algebra: LieAlgebra, m: SpaceLike, k: SpaceLike) -> IntersectionReport:
    """
    Evaluate the intersection statements on a pair of maximal subalgebras.

    - K_L not in M_L: M meet K is maximal in M, L = M + K and
      dim M/(M meet K) = dim L/K (and symmetrically for K)
    - hypothesis met and cores differ: maximal in at least one of M, K
    - non-conjugate complements of a common minimal ideal: maximal in both
    """
    m, k = as_space(m), as_space(k)
    _require_maximal(algebra, m, k)
    core_m, core_k = algebra.core(m), algebra.core(k)
    meet = m.intersect(k)
    report = IntersectionReport(cores=(core_m, core_k), intersection=meet)
    maximal_in_m = algebra.is_maximal_in(meet, m)
    maximal_in_k = algebra.is_maximal_in(meet, k)

    for name, big_core, small_core, host, other, maximal in (
        ("maximal_in_M", core_k, core_m, m, k, maximal_in_m),
        ("maximal_in_K", core_m, core_k, k, m, maximal_in_k),
    ):
        applicable = not small_core.contains(big_core)
        outcome = CheckOutcome(name=name, applicable=applicable)
        if applicable:
            sums_to_l = host.sum(other).is_full()
            dims_match = host.dim - meet.dim == algebra.dim - other.dim
            outcome.holds = maximal and sums_to_l and dims_match
            outcome.detail = {"maximal": maximal, "sum_is_L": sums_to_l, "dimensions_match": dims_match}
        report.outcomes.append(outcome)

    hyp = hypothesis_report(algebra)
    at_least_one = CheckOutcome(name="maximal_in_at_least_one",
                                applicable=hyp.hypothesis_met and core_m != core_k)
    if at_least_one.applicable:
        at_least_one.holds = maximal_in_m or maximal_in_k
    report.outcomes.append(at_least_one)

    if algebra.field.is_prime_field:
        for a_ideal in algebra.minimal_ideals():
            try:
                same_class = complement_conjugacy_criterion(algebra, a_ideal, m, k)
            except NotAComplement:
                continue
            outcome = CheckOutcome(name="complements_maximal_in_both", applicable=not same_class,
                                   detail={"minimal_ideal": str(a_ideal)})
            if outcome.applicable:
                outcome.holds = maximal_in_m and maximal_in_k
            report.outcomes.append(outcome)
    return report


def example4_base_algebra(p: int, verify: bool = True) -> LieAlgebra:
    """
    The (p+2)-dimensional algebra on e_0..e_(p-1), x, y over GF(p):
    [e_i, x] = e_(i+1) cyclically, [e_i, y] = i e_i, [x, y] = x.

    Args:
        p: A prime
        verify: Also confirm the monolith and the non-nilpotent L^2

    Raises:
        UnsupportedField: p is not prime
        VerificationFailed: the monolith checks fail
    """
    field = FieldDescriptor.gf(p)
    n = p + 2
    x_idx, y_idx = p, p + 1
    brackets = {}
    for i in range(p):
        brackets[(i, x_idx)] = field.unit_vector(n, (i + 1) % p)
        if i % p:
            brackets[(i, y_idx)] = field.vec_scale(field.element(i), field.unit_vector(n, i))
    brackets[(x_idx, y_idx)] = field.unit_vector(n, x_idx)
    names = [f"e{i}" for i in range(p)] + ["x", "y"]
    algebra = LieAlgebra(field, n, brackets, names)
    if verify:
        report = example4_monolith_report(algebra)
        if not report.holds:
            raise VerificationFailed("example algebra failed its monolith checks", witness=report.to_dict())
    return algebra


@dataclass
class MonolithReport:
    """Structure facts for the cyclic example algebra."""

    p: int
    monolith: Subspace
    minimal_ideals: List[Subspace]
    derived: Subspace
    derived_expected: Subspace
    derived_class: Optional[int]
    hypothesis: HypothesisReport

    @property
    def unique_minimal_ideal(self) -> bool:
        return self.minimal_ideals == [self.monolith]

    @property
    def holds(self) -> bool:
        return (self.unique_minimal_ideal and self.derived == self.derived_expected
                and self.derived_class is None and not self.hypothesis.hypothesis_met)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "monolith": str(self.monolith),
            "minimal_ideals": [str(a) for a in self.minimal_ideals],
            "derived": str(self.derived),
            "derived_nilpotent": self.derived_class is not None,
            "hypothesis": self.hypothesis.to_dict(),
        }


def example4_monolith_report(algebra: LieAlgebra) -> MonolithReport:
    """Minimal ideals, L^2 and the hypothesis for an example4_base_algebra(p)."""
    p = algebra.field.p
    monolith = algebra.span(algebra.basis_vector(i) for i in range(p))
    full = algebra.full_space()
    derived = algebra.product_space(full, full)
    return MonolithReport(
        p=p,
        monolith=monolith,
        minimal_ideals=algebra.minimal_ideals(),
        derived=derived,
        derived_expected=monolith.sum(algebra.span([algebra.basis_vector(p)])),
        derived_class=algebra.nilpotency_class(derived),
        hypothesis=hypothesis_report(algebra),
    )
