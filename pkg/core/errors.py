"""Exception hierarchy shared by every solvlie module."""

from typing import Any, Optional, Tuple


class SolvLieError(ValueError):
    """Base error. ``kind`` is the machine-readable name used in reports."""

    kind = "error"

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": str(self), "witness": self.witness}


class ParseError(SolvLieError):
    """Malformed algebra document or command-line subspace."""

    kind = "parse_error"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 path: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if column is not None:
            location.append(f"column {column}")
        if path:
            location.append(f"at {path}")
        full = f"{message} ({', '.join(location)})" if location else message
        super().__init__(full, witness={"line": line, "column": column, "path": path})
        self.line = line
        self.column = column
        self.path = path


class AmbientMismatch(SolvLieError):
    kind = "ambient_mismatch"


class BadDimensions(SolvLieError):
    kind = "bad_dimensions"


class JacobiViolation(SolvLieError):
    """Jacobi identity fails on the basis triple ``witness``."""

    kind = "jacobi_violation"

    def __init__(self, triple: Tuple[int, int, int], message: str = ""):
        i, j, k = triple
        super().__init__(message or f"Jacobi identity fails for basis triple ({i}, {j}, {k})",
                         witness=list(triple))
        self.triple = triple


class NotAnIdeal(SolvLieError):
    kind = "not_an_ideal"


class NotASubalgebra(SolvLieError):
    kind = "not_a_subalgebra"


class UnsupportedField(SolvLieError):
    kind = "unsupported_field"


class CapExceeded(SolvLieError):
    kind = "cap_exceeded"


class NotSolvable(SolvLieError):
    kind = "not_solvable"


class NotMaximal(SolvLieError):
    kind = "not_maximal"


class NotEligible(SolvLieError):
    kind = "not_eligible"


class NotCoreFree(SolvLieError):
    kind = "not_core_free"


class NotAComplement(SolvLieError):
    kind = "not_a_complement"


class HypothesisNotMet(SolvLieError):
    kind = "hypothesis_not_met"


class NotConjugate(SolvLieError):
    kind = "not_conjugate"


class VerificationFailed(SolvLieError):
    """A computed fact contradicts a proven statement; always a bug or a counterexample."""

    kind = "verification_failed"


class NoConjugatorFound(VerificationFailed):
    kind = "no_conjugator_found"


class SearchExhausted(VerificationFailed):
    kind = "search_exhausted"


class GenerationFailed(SolvLieError):
    kind = "generation_failed"


class InvalidFixture(SolvLieError):
    kind = "invalid_fixture"


class SingularMatrix(SolvLieError):
    kind = "singular_matrix"
