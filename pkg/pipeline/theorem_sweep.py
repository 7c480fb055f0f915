"""Run theorem_lab procedures over catalog algebras and collect check records."""

import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from core.errors import (
    CapExceeded,
    HypothesisNotMet,
    NotSolvable,
    SolvLieError,
    UnsupportedField,
    VerificationFailed,
)
from core.exact_linear import Subspace, Vector
from core.inner_auto import conjugacy_classes, exp_ad, exp_eligible, inner_generators
from core.lie_core import LieAlgebra
from core.theorem_lab import (
    HYPOTHESIS_NOT_MET,
    complement_classes_bijection,
    complement_conjugacy_criterion,
    conjugate_by_core_test,
    corefree_conjugator,
    example4_base_algebra,
    example4_monolith_report,
    find_conjugator_in_chief_factor,
    hypothesis_report,
    intersection_maximality_check,
)
from evaluation.report import FAIL, PASS, SKIPPED, CheckRecord, algebra_digest
from utils.catalog import CatalogEntry

logger = logging.getLogger(__name__)

SKIP_ERRORS = (CapExceeded, UnsupportedField, HypothesisNotMet, NotSolvable)


def _vec(v: Vector) -> str:
    return ",".join(str(a) for a in v)


def _pair(m: Subspace, k: Subspace) -> str:
    return f"{m} | {k}"


def is_example4(algebra: LieAlgebra) -> bool:
    field = algebra.field
    if not field.is_prime_field or algebra.dim != field.p + 2:
        return False
    return algebra == example4_base_algebra(field.p, verify=False)


class TheoremSweepPipeline:
    """
    Evaluate one or all theorem suites on a list of algebras.

    Every statement instance becomes a CheckRecord. Capped or inapplicable
    work is ``skipped`` with its reason; a VerificationFailed is a ``fail``.
    """

    def __init__(self, suite: str = "all", seed: Optional[int] = None, samples: Optional[int] = None,
                 subspace_cap: Optional[int] = None, group_cap: Optional[int] = None,
                 search_cap: Optional[int] = None):
        if suite not in config.SUITES:
            raise ValueError(f"Unknown suite: {suite}")
        self.suite = suite
        self.seed = config.DEFAULT_SEED if seed is None else seed
        self.samples = config.AUTOMORPHISM_SAMPLES if samples is None else samples
        self.subspace_cap = subspace_cap
        self.group_cap = group_cap
        self.search_cap = search_cap
        logger.info(f"Initialized theorem sweep (suite={suite}, seed={self.seed})")

    def _wants(self, name: str) -> bool:
        return self.suite == "all" or self.suite == name

    def _guard(self, records: List[CheckRecord], check: str, label: str, instance: str,
               body: Callable[[], Tuple[bool, Dict[str, Any]]]) -> None:
        """Run one check body, translating its outcome or error into a record."""
        try:
            holds, witness = body()
        except SKIP_ERRORS as e:
            records.append(CheckRecord(check, label, SKIPPED, instance, {"reason": e.kind, "message": str(e)}))
        except VerificationFailed as e:
            logger.error(f"{check} failed on {label} [{instance}]: {e}")
            records.append(CheckRecord(check, label, FAIL, instance, e.to_dict()))
        except SolvLieError as e:
            logger.error(f"{check} raised {e.kind} on {label} [{instance}]: {e}")
            records.append(CheckRecord(check, label, FAIL, instance, e.to_dict()))
        else:
            records.append(CheckRecord(check, label, PASS if holds else FAIL, instance, witness))

    def run(self, entries: Sequence[CatalogEntry]) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        for n, entry in enumerate(entries, start=1):
            logger.info(f"[{n}/{len(entries)}] {entry.label}")
            records.extend(self.run_algebra(entry.label, entry.algebra))
        return records

    def run_algebra(self, label: str, algebra: LieAlgebra) -> List[CheckRecord]:
        records: List[CheckRecord] = []
        if self._wants("automorphism"):
            self._automorphism_samples(records, label, algebra)

        if not algebra.is_solvable():
            records.append(CheckRecord("solvable", label, SKIPPED, "", {"reason": "not_solvable"}))
            return records
        if not algebra.field.is_prime_field:
            records.append(CheckRecord("enumeration", label, SKIPPED, "", {"reason": "unsupported_field"}))
            return records

        try:
            maximals = [m.space for m in algebra.maximal_subalgebras(cap=self.subspace_cap)]
            classes = conjugacy_classes(algebra, maximals, cap=self.group_cap)
        except CapExceeded as e:
            logger.warning(f"Skipping {label}: {e}")
            records.append(CheckRecord("enumeration", label, SKIPPED, "", {"reason": e.kind, "message": str(e)}))
            return records
        class_of = {s: i for i, cls in enumerate(classes) for s in cls}
        pairs = [(m, k) for i, m in enumerate(maximals) for k in maximals[i + 1:]]

        if self._wants("core"):
            self._core_suite(records, label, algebra, pairs, class_of)
        if self._wants("conjugator"):
            self._conjugator_suite(records, label, algebra, maximals, pairs, class_of)
        if self._wants("lemma"):
            self._lemma_suite(records, label, algebra, pairs)
        if self._wants("bijection"):
            self._bijection_suite(records, label, algebra)
        if self._wants("intersection"):
            self._intersection_suite(records, label, algebra, pairs)
        if self._wants("automorphism"):
            self._core_invariance(records, label, algebra, maximals)
        return records

    # Suites

    def _core_suite(self, records, label, algebra, pairs, class_of) -> None:
        """Core test against the orbit oracle, plus the unconditional forward direction."""
        hyp = hypothesis_report(algebra)
        for m, k in pairs:
            conjugate = class_of[m] == class_of[k]
            core_m, core_k = algebra.core(m), algebra.core(k)
            witness = {"brute_conjugate": conjugate, "cores": [str(core_m), str(core_k)]}
            if hyp.hypothesis_met:
                records.append(CheckRecord("core_equality", label, PASS if conjugate == (core_m == core_k) else FAIL,
                                           _pair(m, k), witness))
            else:
                records.append(CheckRecord("core_equality", label, SKIPPED, _pair(m, k),
                                           {"reason": HYPOTHESIS_NOT_MET, **hyp.to_dict()}))
            if conjugate:
                records.append(CheckRecord("forward_direction", label, PASS if core_m == core_k else FAIL,
                                           _pair(m, k), witness))

        if is_example4(algebra):
            def body():
                report = example4_monolith_report(algebra)
                witness = report.to_dict()
                holds = report.holds
                if pairs:
                    verdict = conjugate_by_core_test(algebra, *pairs[0]).verdict
                    witness["core_test_verdict"] = verdict
                    holds = holds and verdict == HYPOTHESIS_NOT_MET
                return holds, witness
            self._guard(records, "example4_monolith", label, f"p={algebra.field.p}", body)

    def _conjugator_suite(self, records, label, algebra, maximals, pairs, class_of) -> None:
        """Conjugator search on every conjugate pair, K = M included."""
        conjugate_pairs = [(m, m) for m in maximals] + [(m, k) for m, k in pairs if class_of[m] == class_of[k]]
        if not conjugate_pairs:
            return
        if not hypothesis_report(algebra).hypothesis_met:
            records.append(CheckRecord("chief_factor_conjugator", label, SKIPPED, "",
                                       {"reason": HYPOTHESIS_NOT_MET}))
            return
        try:
            series = algebra.chief_series(cap=self.subspace_cap)
        except CapExceeded as e:
            records.append(CheckRecord("chief_factor_conjugator", label, SKIPPED, "", {"reason": e.kind}))
            return
        for m, k in conjugate_pairs:
            def body(m=m, k=k):
                found = find_conjugator_in_chief_factor(algebra, m, k, series=series, cap=self.search_cap)
                return True, found.to_dict()
            self._guard(records, "chief_factor_conjugator", label, _pair(m, k), body)

    def _lemma_suite(self, records, label, algebra, pairs) -> None:
        for m, k in pairs:
            if not (algebra.core(m).is_zero() and algebra.core(k).is_zero()):
                continue

            def body(m=m, k=k):
                found = corefree_conjugator(algebra, m, k, cap=self.search_cap)
                return found.ad_squared_zero, found.to_dict()
            self._guard(records, "corefree_lemma", label, _pair(m, k), body)

    def _bijection_suite(self, records, label, algebra) -> None:
        """Complement classes against ideal complements, the pairwise criterion, and C_L(A) = A."""
        try:
            ideals = algebra.minimal_ideals(cap=self.subspace_cap)
        except CapExceeded as e:
            records.append(CheckRecord("complement_bijection", label, SKIPPED, "", {"reason": e.kind}))
            return
        for a_ideal in ideals:
            instance = f"A={a_ideal}"
            try:
                report = complement_classes_bijection(algebra, a_ideal, cap=self.subspace_cap)
            except SKIP_ERRORS as e:
                records.append(CheckRecord("complement_bijection", label, SKIPPED, instance, {"reason": e.kind}))
                continue
            if report.self_centralizing:
                records.append(CheckRecord("self_centralizing", label,
                                           PASS if report.self_centralizing_holds else FAIL, instance,
                                           {"complements": len(report.complements), "classes": len(report.classes)}))
            if not report.has_complements:
                records.append(CheckRecord("complement_bijection", label, SKIPPED, instance,
                                           {"reason": "no_complements", **report.to_dict()}))
                continue
            records.append(CheckRecord("complement_bijection", label, PASS if report.holds else FAIL,
                                       instance, report.to_dict()))

            class_of = {s: i for i, cls in enumerate(report.classes) for s in cls}
            comps = report.complements
            for i, m in enumerate(comps):
                for k in comps[i + 1:]:
                    def body(m=m, k=k, a=a_ideal):
                        criterion = complement_conjugacy_criterion(algebra, a, m, k)
                        conjugate = class_of[m] == class_of[k]
                        return criterion == conjugate, {"criterion": criterion, "brute_conjugate": conjugate}
                    self._guard(records, "complement_criterion", label, f"{instance} {_pair(m, k)}", body)

    def _intersection_suite(self, records, label, algebra, pairs) -> None:
        for m, k in pairs:
            try:
                report = intersection_maximality_check(algebra, m, k)
            except SKIP_ERRORS as e:
                records.append(CheckRecord("intersection_maximality", label, SKIPPED, _pair(m, k),
                                           {"reason": e.kind}))
                continue
            for outcome in report.outcomes:
                if not outcome.applicable:
                    continue
                witness = {"intersection": str(report.intersection), **outcome.detail}
                records.append(CheckRecord(f"intersection_{outcome.name}", label, outcome.status,
                                           _pair(m, k), witness))

    def sample_rng(self, algebra: LieAlgebra) -> np.random.Generator:
        """Generator seeded from the sweep seed and the algebra's structure hash."""
        structure_hash = int(algebra_digest(algebra)["structure_hash"], 16)
        return np.random.default_rng([self.seed, algebra.field.characteristic, algebra.dim, structure_hash])

    def _automorphism_samples(self, records, label, algebra) -> None:
        """exp(ad x) for seeded random eligible x: an automorphism with inverse exp(ad -x)."""
        rng = self.sample_rng(algebra)
        field = algebra.field
        for _ in range(self.samples):
            if field.is_prime_field:
                draws = rng.integers(0, field.p, size=algebra.dim)
            else:
                r = config.RATIONAL_ENTRY_RANGE
                draws = rng.integers(-r, r + 1, size=algebra.dim)
            x = tuple(field.element(int(a)) for a in draws)
            eligible, _ = exp_eligible(algebra, x)
            if not eligible:
                continue

            def body(x=x):
                phi = exp_ad(algebra, x)
                inverse = exp_ad(algebra, field.vec_neg(x))
                automorphism = phi.is_automorphism(algebra)
                inverts = phi.compose(inverse).is_identity()
                return automorphism and inverts, {"automorphism": automorphism, "inverse_is_exp_neg": inverts}
            self._guard(records, "exp_automorphism", label, f"x={_vec(x)}", body)

    def _core_invariance(self, records, label, algebra, maximals) -> None:
        """Every generator of I(L) fixes M_L and sends M to a maximal with the same core."""
        try:
            gens = inner_generators(algebra, algebra.full_space()).generators
        except SKIP_ERRORS as e:
            records.append(CheckRecord("core_invariance", label, SKIPPED, "", {"reason": e.kind}))
            return
        for m in maximals:
            core = algebra.core(m)
            bad = [g for g in gens if algebra.core(g.image(m)) != core or g.image(core) != core]
            witness = {"generators": len(gens), "core": str(core)}
            if bad:
                witness["counterexample"] = [_vec(x) for x in bad[0].word]
            records.append(CheckRecord("core_invariance", label, FAIL if bad else PASS, f"M={m}", witness))
