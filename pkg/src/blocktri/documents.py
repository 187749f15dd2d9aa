"""JSON document schemas used by the command-line front end.

Complex numbers travel as two-element [re, im] arrays. A MatrixDocument is
{"n": n, "entries": n x n of [re, im]}; a MapDocument is {"algebra": "k1,k2",
"coefficients": (n^2) x d of [re, im]} with columns ordered by the algebra's
row-major cell enumeration. Serialization is canonical (sorted keys, fixed
separators) so outputs are byte-stable.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import block_algebra, parse_composition
from .errors import InvalidDocument
from .maps import AlgebraMap


def _pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _from_pair(obj) -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj)
    ):
        raise InvalidDocument(f"expected an [re, im] pair, got {obj!r}")
    z = complex(float(obj[0]), float(obj[1]))
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise InvalidDocument("entries must be finite")
    return z


def matrix_to_document(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    n = m.shape[0]
    return {"n": n, "entries": [[_pair(m[i, j]) for j in range(n)] for i in range(n)]}


def matrix_from_document(doc) -> np.ndarray:
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise InvalidDocument("matrix document needs 'n' and 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise InvalidDocument(f"bad matrix size {n!r}")
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != n:
        raise InvalidDocument("entries do not form an n x n grid")
    out = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise InvalidDocument("entries do not form an n x n grid")
        for j, pair in enumerate(row):
            out[i, j] = _from_pair(pair)
    return out


def map_to_document(m: AlgebraMap) -> dict:
    rows, cols = m.coefficients.shape
    return {
        "algebra": ",".join(str(k) for k in m.domain.parts),
        "coefficients": [
            [_pair(m.coefficients[r, c]) for c in range(cols)] for r in range(rows)
        ],
    }


def map_from_document(doc) -> AlgebraMap:
    if not isinstance(doc, dict) or "algebra" not in doc or "coefficients" not in doc:
        raise InvalidDocument("map document needs 'algebra' and 'coefficients'")
    try:
        parts = parse_composition(str(doc["algebra"]))
    except ValueError as exc:
        raise InvalidDocument(str(exc)) from exc
    algebra = block_algebra(parts)
    rows = doc["coefficients"]
    n2, d = algebra.n**2, algebra.dim
    if not isinstance(rows, list) or len(rows) != n2:
        raise InvalidDocument(f"coefficients must have {n2} rows")
    coeffs = np.zeros((n2, d), dtype=np.complex128)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise InvalidDocument(f"coefficient rows must have {d} columns")
        for c, pair in enumerate(row):
            coeffs[r, c] = _from_pair(pair)
    return AlgebraMap(domain=algebra, coefficients=coeffs)


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def _plain(obj):
    """Coerce numpy scalars/arrays and complex values into JSON-safe types."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2 and np.iscomplexobj(obj):
            return matrix_to_document(obj)["entries"]
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return _pair(complex(obj))
    return obj


def load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidDocument(f"cannot read {path}: {exc}") from exc
