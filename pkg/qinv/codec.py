"""
JSON wire formats.

Vectors are '0'/'1' strings whose i-th character is the i-th coordinate,
matrices are lists of row strings and subspaces are spanning lists that are
canonicalized on load. Emitted documents always carry canonical bases, so
re-parsing an emitted document gives an equal value.
"""
import json
import sys
from typing import Any, Dict, List, Optional

from qinv import exceptions
from qinv.gf2 import BitMatrix, BitVector, Subspace
from qinv.invariant import DiffeoData, EmbeddingData, SystemEmbeddingData
from qinv.quadform import QuadraticForm
from qinv.tsd import Tsd

ORIENTATIONS = {"+": 1, "-": -1, "−": -1}


def load_json(path: str) -> Any:
    """Read a JSON document from ``path``, or from standard input for '-'."""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fd:
            return json.load(fd)
    except OSError as ex:
        raise exceptions.ParseError(f"Cannot read {path}: {ex.strerror}")
    except json.JSONDecodeError as ex:
        raise exceptions.ParseError(f"Invalid JSON in {path}: {ex.msg}")


def dumps(document: Any) -> str:
    return json.dumps(document, indent=2)


def _field(document: Dict[str, Any], key: str) -> Any:
    if not isinstance(document, dict):
        raise exceptions.ParseError(
            f"Expected a JSON object, got {type(document).__name__}"
        )
    try:
        return document[key]
    except KeyError:
        raise exceptions.ParseError(f"Missing field {key!r}")


def _int_field(document: Dict[str, Any], key: str) -> int:
    value = _field(document, key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise exceptions.ParseError(f"Field {key!r} must be an integer")
    return value


def _string_list(value: Any, key: str) -> List[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise exceptions.ParseError(f"Field {key!r} must be a list of bit strings")
    return value


def subspace_from_json(value: Any, ambient_dim: int, key: str = "subspace") -> Subspace:
    rows = _string_list(value, key)
    if any(len(row) != ambient_dim for row in rows):
        raise exceptions.ParseError(
            f"Vectors in {key!r} must have length {ambient_dim}"
        )
    return Subspace.from_strings(ambient_dim, rows)


def matrix_from_json(value: Any, size: Optional[int] = None) -> BitMatrix:
    """A bare list of rows, or an object holding one under 'matrix' or 'h_star'."""
    if isinstance(value, dict):
        value = value["matrix"] if "matrix" in value else _field(value, "h_star")
    rows = _string_list(value, "matrix")
    return BitMatrix.from_strings(rows, size if rows else None)


def form_to_json(form: QuadraticForm) -> Dict[str, Any]:
    return {
        "dim": form.dim,
        "gram": form.gram.to_strings(),
        "diag": form.diag.to_string(),
    }


def form_from_json(document: Dict[str, Any]) -> QuadraticForm:
    dim = _int_field(document, "dim")
    gram = matrix_from_json(_field(document, "gram"), dim)
    if gram.rows != dim:
        raise exceptions.ParseError(f"Gram matrix must be {dim}x{dim}")
    diag = _field(document, "diag")
    if not isinstance(diag, str):
        raise exceptions.ParseError("Field 'diag' must be a bit string")
    diag = BitVector.from_string(diag)
    if diag.dim != dim:
        raise exceptions.ParseError(f"Diagonal must have length {dim}")
    return QuadraticForm(gram, diag)


def tsd_to_json(t: Tsd) -> Dict[str, Any]:
    return {
        "form": form_to_json(t.form),
        "A": t.a.to_strings(),
        "B": t.b.to_strings(),
    }


def tsd_from_json(document: Dict[str, Any]) -> Tsd:
    form = form_from_json(_field(document, "form"))
    return Tsd(
        form,
        subspace_from_json(_field(document, "A"), form.dim, "A"),
        subspace_from_json(_field(document, "B"), form.dim, "B"),
    )


def embedding_to_json(e: EmbeddingData) -> Dict[str, Any]:
    return {
        "genus": e.genus,
        "A0": e.a0.to_strings(),
        "A1": e.a1.to_strings(),
        "orientation": "+" if e.orientation == 1 else "-",
    }


def embedding_from_json(document: Dict[str, Any]) -> EmbeddingData:
    genus = _int_field(document, "genus")
    if genus < 0:
        raise exceptions.ParseError(f"Negative genus {genus}")
    orientation = _field(document, "orientation")
    if not isinstance(orientation, str) or orientation not in ORIENTATIONS:
        raise exceptions.ParseError(
            f"Orientation must be '+' or '-', got {orientation!r}"
        )
    return EmbeddingData(
        genus,
        subspace_from_json(_field(document, "A0"), 2 * genus, "A0"),
        subspace_from_json(_field(document, "A1"), 2 * genus, "A1"),
        ORIENTATIONS[orientation],
    )


def diffeo_from_json(document: Dict[str, Any]) -> DiffeoData:
    genus = _int_field(document, "genus")
    h_star = matrix_from_json(_field(document, "h_star"), 2 * genus)
    return DiffeoData(genus, h_star, _int_field(document, "eps_h"))


def system_from_json(document: Dict[str, Any]) -> SystemEmbeddingData:
    components = _field(document, "components")
    if not isinstance(components, list):
        raise exceptions.ParseError("Field 'components' must be a list")
    return SystemEmbeddingData([embedding_from_json(c) for c in components])
