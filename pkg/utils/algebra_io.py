"""JSON algebra documents and command-line subspace arguments."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from core.errors import ParseError, UnsupportedField
from core.exact_linear import FieldDescriptor, Scalar, Subspace
from core.lie_core import LieAlgebra, build_algebra

logger = logging.getLogger(__name__)


def parse_scalar(field: FieldDescriptor, raw: Any, path: str) -> Scalar:
    """Decimal or fraction string ("2", "-1/3"); bare integers are accepted too."""
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError(f"Scalar must be a string, got {type(raw).__name__}", path=path)
    try:
        return field.element(raw)
    except ZeroDivisionError:
        raise ParseError(f"Zero denominator in scalar {raw!r}", path=path)
    except ValueError:
        raise ParseError(f"Malformed scalar {raw!r}", path=path)


def _parse_field(raw: Any) -> FieldDescriptor:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ParseError("field must be an object with a 'kind'", path="field")
    if raw["kind"] == "Q":
        return FieldDescriptor.rationals()
    if raw["kind"] == "Fp":
        p = raw.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError("Fp field needs an integer 'p'", path="field.p")
        try:
            return FieldDescriptor.gf(p)
        except UnsupportedField as e:
            raise ParseError(str(e), path="field.p")
    raise ParseError(f"Unknown field kind {raw['kind']!r}", path="field.kind")


def document_to_algebra(doc: Any) -> LieAlgebra:
    """Validate a decoded document and build the algebra (Jacobi checked)."""
    if not isinstance(doc, dict):
        raise ParseError("Document must be a JSON object", path="$")
    for key in ("field", "dim", "brackets"):
        if key not in doc:
            raise ParseError(f"Missing key {key!r}", path=key)
    field = _parse_field(doc["field"])
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError("dim must be a non-negative integer", path="dim")

    names = doc.get("basis_names")
    if names is not None:
        if not isinstance(names, list) or len(names) != dim or not all(isinstance(s, str) for s in names):
            raise ParseError(f"basis_names must list {dim} strings", path="basis_names")

    if not isinstance(doc["brackets"], list):
        raise ParseError("brackets must be a list", path="brackets")
    brackets = {}
    for t, entry in enumerate(doc["brackets"]):
        where = f"brackets[{t}]"
        if not isinstance(entry, dict) or not {"i", "j", "value"} <= set(entry):
            raise ParseError("bracket entries need 'i', 'j' and 'value'", path=where)
        i, j, value = entry["i"], entry["j"], entry["value"]
        if not all(isinstance(a, int) and not isinstance(a, bool) for a in (i, j)):
            raise ParseError("i and j must be integers", path=where)
        if not 0 <= i < j < dim:
            raise ParseError(f"need 0 <= i < j < {dim}, got i={i}, j={j}", path=where)
        if (i, j) in brackets:
            raise ParseError(f"pair ({i}, {j}) appears twice", path=where)
        if not isinstance(value, list) or len(value) != dim:
            raise ParseError(f"value must list {dim} scalars", path=f"{where}.value")
        brackets[(i, j)] = tuple(parse_scalar(field, a, f"{where}.value[{c}]") for c, a in enumerate(value))
    return build_algebra(field, dim, brackets, names)


def parse_document(text: str, source: Optional[str] = None) -> LieAlgebra:
    """
    Parse a JSON algebra document.

    Raises:
        ParseError: malformed JSON (with line and column) or schema violation (with JSON path)
        JacobiViolation: structure constants fail Jacobi
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON: {e.msg}", line=e.lineno, column=e.colno, path=source)
    return document_to_algebra(doc)


def load_algebra(path: Union[str, Path]) -> LieAlgebra:
    path = Path(path)
    logger.info(f"Loading algebra from {path}")
    return parse_document(path.read_text(encoding="utf-8"), source=str(path))


def to_document(algebra: LieAlgebra) -> Dict[str, Any]:
    """Inverse of document_to_algebra; only nonzero brackets are written."""
    field = algebra.field
    field_doc = {"kind": "Fp", "p": field.p} if field.is_prime_field else {"kind": "Q"}
    brackets = [
        {"i": i, "j": j, "value": [field.format(a) for a in value]}
        for (i, j), value in sorted(algebra.structure_constants().items())
    ]
    return {
        "field": field_doc,
        "dim": algebra.dim,
        "basis_names": list(algebra.basis_names),
        "brackets": brackets,
    }


def dump_document(algebra: LieAlgebra) -> str:
    return json.dumps(to_document(algebra), indent=2) + "\n"


def parse_subspace(text: str, algebra: LieAlgebra) -> Subspace:
    """
    Rows separated by ';', coordinates by ','. "0" is the zero subspace.

    Raises:
        ParseError: wrong row length or malformed scalar (column = row index)
    """
    text = text.strip()
    if text in ("", "0"):
        return algebra.zero_space()
    rows: List[tuple] = []
    for r, chunk in enumerate(text.split(";")):
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != algebra.dim:
            raise ParseError(f"row {r} has {len(parts)} coordinates, expected {algebra.dim}",
                             column=r, path="subspace")
        rows.append(tuple(parse_scalar(algebra.field, p, f"subspace[{r}]") for p in parts))
    return algebra.span(rows)