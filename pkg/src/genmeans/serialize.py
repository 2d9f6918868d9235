"""JSON schema for every domain type, plus CSV emission for flat tables.

All numbers are serialized as strings so exactness survives any platform:
rationals as {"num": "...", "den": "..."}, floats as their shortest
round-tripping decimal form.  JSON is the canonical format; CSV exists only
for flat tables (sequences and traces) and carries the same canonical number
strings.
"""

from __future__ import annotations

import hashlib
import io
import json
from dataclasses import is_dataclass
from fractions import Fraction

from .errors import SchemaError
from .limits import LimitEstimate, Verdict
from .operators import NormResult, ParameterTriple
from .scalars import Backend, FLOAT_MODE, RATIONAL_MODE
from .triangle import (
    MATRIX_TAILS,
    SEQUENCE_TAILS,
    MatrixWindow,
    SequenceWindow,
    TriangleMatrix,
)

SCHEMA_VERSION = 1


def scalar_to_json(value):
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, int):
        return {"num": str(value), "den": "1"}
    if isinstance(value, float):
        return repr(value)
    raise SchemaError("scalar", f"cannot serialize {type(value).__name__}")


def scalar_from_json(doc, path="scalar"):
    if isinstance(doc, dict):
        if "num" not in doc or "den" not in doc:
            raise SchemaError(path, "rational object needs 'num' and 'den'")
        try:
            return Fraction(int(doc["num"]), int(doc["den"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(path, f"bad rational: {exc}") from None
    if isinstance(doc, str):
        try:
            return float(doc)
        except ValueError:
            raise SchemaError(path, f"bad float string {doc!r}") from None
    raise SchemaError(path, f"expected rational object or decimal string, got {type(doc).__name__}")


def canonical_number(value):
    """The single canonical string form shared by CSV and comparisons."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    if isinstance(value, float):
        return repr(value)
    raise SchemaError("scalar", f"cannot canonicalize {type(value).__name__}")


def canonical_number_from_json(doc, path="scalar"):
    if isinstance(doc, dict):
        return canonical_number(scalar_from_json(doc, path))
    return doc


def sequence_to_json(seq):
    doc = {"values": [scalar_to_json(v) for v in seq.values], "tail": seq.tail}
    if seq.space_label is not None:
        doc["space"] = seq.space_label
    return doc


def sequence_from_json(doc, path="sequence", backend=None):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if "values" not in doc:
        raise SchemaError(f"{path}.values", "missing field 'values'")
    if "tail" not in doc:
        raise SchemaError(f"{path}.tail", "missing field 'tail'")
    if doc["tail"] not in SEQUENCE_TAILS:
        raise SchemaError(f"{path}.tail", f"tail must be one of {SEQUENCE_TAILS}")
    values = [scalar_from_json(v, f"{path}.values[{i}]") for i, v in enumerate(doc["values"])]
    if backend is not None:
        values = [backend.convert(v) for v in values]
    return SequenceWindow(values, doc["tail"], doc.get("space"))


def triangle_to_json(matrix):
    return {
        "kind": "triangle",
        "order": matrix.order,
        "rows": [[scalar_to_json(v) for v in row] for row in matrix.rows],
        "tail": matrix.tail,
    }


def window_to_json(window):
    return {
        "kind": "window",
        "rows": [[scalar_to_json(v) for v in row] for row in window.rows],
        "tail": window.row_tail,
    }


def matrix_to_json(matrix):
    if isinstance(matrix, TriangleMatrix):
        return triangle_to_json(matrix)
    return window_to_json(matrix)


def matrix_from_json(doc, path="matrix", backend=None):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if "rows" not in doc:
        raise SchemaError(f"{path}.rows", "missing field 'rows'")
    if "tail" not in doc:
        raise SchemaError(f"{path}.tail", "missing field 'tail'")
    if doc["tail"] not in MATRIX_TAILS:
        raise SchemaError(f"{path}.tail", f"tail must be one of {MATRIX_TAILS}")
    rows = []
    for i, row in enumerate(doc["rows"]):
        vals = [scalar_from_json(v, f"{path}.rows[{i}][{j}]") for j, v in enumerate(row)]
        if backend is not None:
            vals = [backend.convert(v) for v in vals]
        rows.append(tuple(vals))
    kind = doc.get("kind")
    if kind is None:
        kind = "triangle" if all(len(row) == i + 1 for i, row in enumerate(rows)) else "window"
    if kind == "triangle":
        return TriangleMatrix(len(rows), tuple(rows), doc["tail"])
    if kind == "window":
        return MatrixWindow(tuple(rows), doc["tail"])
    raise SchemaError(f"{path}.kind", f"kind must be 'triangle' or 'window', got {kind!r}")


def params_to_json(p):
    return {
        "r": [scalar_to_json(v) for v in p.r],
        "s": [scalar_to_json(v) for v in p.s],
        "t": [scalar_to_json(v) for v in p.t],
        "m": p.m,
        "order": p.order,
        "scalar": p.backend.mode,
        "tolerance": repr(p.backend.tolerance),
    }


def params_from_json(doc, path="params"):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    for field in ("r", "s", "t", "m", "order"):
        if field not in doc:
            raise SchemaError(f"{path}.{field}", f"missing field {field!r}")
    mode = doc.get("scalar", RATIONAL_MODE)
    if mode not in (RATIONAL_MODE, FLOAT_MODE):
        raise SchemaError(f"{path}.scalar", f"scalar must be 'rational' or 'float', got {mode!r}")
    backend = Backend(mode, float(doc.get("tolerance", "1e-10")))
    windows = {}
    for field in ("r", "s", "t"):
        windows[field] = tuple(
            backend.convert(scalar_from_json(v, f"{path}.{field}[{i}]"))
            for i, v in enumerate(doc[field]))
    return ParameterTriple(windows["r"], windows["s"], windows["t"],
                           int(doc["m"]), int(doc["order"]), backend)


def _plain(value):
    """Recursively turn package values into JSON-ready structures."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (Fraction, float, int)):
        return scalar_to_json(value)
    if isinstance(value, SequenceWindow):
        return sequence_to_json(value)
    if isinstance(value, (TriangleMatrix, MatrixWindow)):
        return matrix_to_json(value)
    if isinstance(value, LimitEstimate):
        return {
            "kind": value.kind,
            "value": _plain(value.value),
            "status": value.status,
            "trend": value.trend,
            "window": [int(n) for n in value.window],
            "trace": [_plain(v) for v in value.trace],
            "note": value.note,
        }
    if isinstance(value, Verdict):
        return {"status": value.status, "detail": value.detail,
                "evidence": _plain(value.evidence)}
    if isinstance(value, NormResult):
        return {"value": _plain(value.value), "arg_index": value.arg_index,
                "exact": value.exact}
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if is_dataclass(value):
        return {k: _plain(v) for k, v in vars(value).items() if not callable(v)}
    raise SchemaError("report", f"cannot serialize {type(value).__name__}")


def to_jsonable(value):
    return _plain(value)


def canonical_dumps(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def job_hash(job_doc):
    return hashlib.sha256(canonical_dumps(job_doc).encode("utf-8")).hexdigest()


def make_report(job_doc, backend, result):
    """Wrap a result payload with its reproducibility header."""
    return {
        "schema": SCHEMA_VERSION,
        "job": job_doc,
        "job_hash": job_hash(job_doc),
        "backend": backend.mode,
        "result": _plain(result),
    }


def sequence_to_csv(report, seq):
    """Flat CSV for a sequence result; header comments carry the report identity."""
    out = io.StringIO()
    out.write(f"# job_hash={report['job_hash']}\n")
    out.write(f"# backend={report['backend']}\n")
    out.write("index,value\n")
    for i, v in enumerate(seq.values):
        out.write(f"{i},{canonical_number(v)}\n")
    return out.getvalue()


def trace_to_csv(report, indices, values):
    out = io.StringIO()
    out.write(f"# job_hash={report['job_hash']}\n")
    out.write(f"# backend={report['backend']}\n")
    out.write("index,value\n")
    for i, v in zip(indices, values):
        out.write(f"{i},{canonical_number(v)}\n")
    return out.getvalue()
