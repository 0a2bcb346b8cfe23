"""Problem-input JSON schema and 17-significant-digit serialization.

Input schema (one JSON object)::

    {
      "rho":   [[[re, im], ...], ...],   # row-major complex matrix
      "A":     ...,  "B": ...,           # same encoding
      "alpha": 0.5,                      # optional
      "gamma": 0.5,                      # optional
      "f":     {"kind": "WYD", "alpha": 0.3}   # optional
    }

Complex entries are two-element [re, im] arrays; bare numbers are accepted
as reals. Outputs are emitted with every float printed to 17 significant
digits, which round-trips IEEE doubles bit-exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import DensityMatrix, Observable, ValidationError
from .monotone import MonotoneFunction


@dataclass(frozen=True)
class ProblemInput:
    rho: DensityMatrix
    a: Observable
    b: Observable
    alpha: Optional[float] = None
    gamma: Optional[float] = None
    f: Optional[MonotoneFunction] = None


def _entry_to_complex(entry, where: str) -> complex:
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2 and all(
        isinstance(v, (int, float)) for v in entry
    ):
        return complex(entry[0], entry[1])
    raise ValidationError("complex_entry", f"{where}: expected number or [re, im], got {entry!r}")


def parse_matrix(data, where: str) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ValidationError("matrix_shape", f"{where}: expected a non-empty nested array")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != len(data):
            raise ValidationError("matrix_shape", f"{where}: row {i} does not make the matrix square")
        rows.append([_entry_to_complex(v, f"{where}[{i}]") for v in row])
    return np.array(rows, dtype=complex)


def parse_problem(data: dict) -> ProblemInput:
    """Build a validated ProblemInput from a decoded JSON object."""
    if not isinstance(data, dict):
        raise ValidationError("input_object", "top level must be a JSON object")
    for key in ("rho", "A", "B"):
        if key not in data:
            raise ValidationError("missing_field", f"required field {key!r} is absent")
    try:
        rho = DensityMatrix(parse_matrix(data["rho"], "rho"))
    except ValidationError as exc:
        raise ValidationError(exc.invariant, f"rho: {exc}") from exc
    try:
        a = Observable(parse_matrix(data["A"], "A"))
    except ValidationError as exc:
        raise ValidationError(exc.invariant, f"A: {exc}") from exc
    try:
        b = Observable(parse_matrix(data["B"], "B"))
    except ValidationError as exc:
        raise ValidationError(exc.invariant, f"B: {exc}") from exc
    if rho.dim != a.dim or rho.dim != b.dim:
        raise ValidationError("dimension_match", "rho, A and B must share one dimension")

    alpha = data.get("alpha")
    gamma = data.get("gamma")
    if alpha is not None and not isinstance(alpha, (int, float)):
        raise ValidationError("parameter", "alpha must be a number")
    if gamma is not None and not isinstance(gamma, (int, float)):
        raise ValidationError("parameter", "gamma must be a number")
    f = None
    if data.get("f") is not None:
        spec = data["f"]
        if not isinstance(spec, dict) or "kind" not in spec:
            raise ValidationError("parameter", 'f must be {"kind": ..., "alpha": ...}')
        try:
            f = MonotoneFunction(str(spec["kind"]).upper(), spec.get("alpha"))
        except ValueError as exc:
            raise ValidationError("parameter", f"f: {exc}") from exc
    return ProblemInput(rho=rho, a=a, b=b, alpha=alpha, gamma=gamma, f=f)


def load_problem(path) -> ProblemInput:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError("json_syntax", f"{path}: {exc}") from exc
    return parse_problem(data)


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite floats are not serializable here")
    text = format(float(x), ".17g")
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def matrix_to_json(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def complex_to_json(z: complex) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def dumps(obj, indent: int = 2) -> str:
    """Serialize dicts/lists/scalars with 17-significant-digit floats."""
    pieces: list[str] = []
    _encode(obj, pieces, indent, 0)
    return "".join(pieces)


def _encode(obj, out: list, indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    close_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode(complex_to_json(complex(obj)), out, indent, level)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(k)) + ": ")
            _encode(v, out, indent, level + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(close_pad + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            out.append("[]")
            return
        out.append("[\n")
        for i, v in enumerate(seq):
            out.append(pad)
            _encode(v, out, indent, level + 1)
            out.append(",\n" if i + 1 < len(seq) else "\n")
        out.append(close_pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def scan_rows_to_csv(rows) -> str:
    """CSV table with the fixed header alpha,gamma,margin,in_region."""
    lines = ["alpha,gamma,margin,in_region"]
    for r in rows:
        lines.append(
            f"{format_float(r.alpha)},{format_float(r.gamma)},"
            f"{format_float(r.margin)},{'true' if r.in_region else 'false'}"
        )
    return "\n".join(lines) + "\n"
