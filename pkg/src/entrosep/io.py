"""JSON/CSV formats for states, measurements and reports.

Complex numbers are ``[re, im]`` pairs; matrices are row-major lists of rows.

* state: ``{"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}``
* rank-one POVM: ``{"dim": d, "vectors": [[[re, im], ...], ...]}``
* general POVM: ``{"dim": d, "elements": [matrix, ...]}``
* measurement set: ``{"pairs": [{"a": povm, "b": povm, "pairing": [...]}, ...]}``
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .exceptions import SchemaError
from .linalg import DensityMatrix, validate_density
from .measurements import GeneralPOVM, RankOnePOVM

REPORT_COLUMNS = ("criterion_id", "alpha", "beta", "K", "kappa", "a", "theta", "entropy",
                  "side", "observed", "bound", "margin", "violated")


def _reject_constant(name):
    raise ValueError(f"non-finite token {name} is not allowed")


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, source, exc.lineno) from exc
    except ValueError as exc:
        raise SchemaError(str(exc), source) from exc


def load(path) -> object:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read file: {exc.strerror}", str(path)) from exc
    return loads(text, str(path))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)


# --------------------------------------------------------------------------
# complex arrays
# --------------------------------------------------------------------------

def encode_array(a) -> list:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 0:
        return [float(a.real), float(a.imag)]
    return [encode_array(x) for x in a]


def decode_array(obj, ndim: int, source: str, path: str) -> np.ndarray:
    """Parse nested lists ending in ``[re, im]`` pairs into a complex array."""

    def walk(o, depth, p):
        if depth == 0:
            if (not isinstance(o, list) or len(o) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in o)):
                raise SchemaError("expected a complex number [re, im]", source, path=p)
            return complex(o[0], o[1])
        if not isinstance(o, list) or not o:
            raise SchemaError("expected a non-empty list", source, path=p)
        return [walk(x, depth - 1, f"{p}[{i}]") for i, x in enumerate(o)]

    nested = walk(obj, ndim, path)
    try:
        arr = np.array(nested, dtype=np.complex128)
    except ValueError as exc:
        raise SchemaError("ragged array", source, path=path) from exc
    if arr.ndim != ndim:
        raise SchemaError(f"expected a {ndim}-dimensional array", source, path=path)
    if not np.all(np.isfinite(arr)):
        raise SchemaError("non-finite entry", source, path=path)
    return arr


def _field(obj, key, source, path):
    if not isinstance(obj, dict):
        raise SchemaError("expected a JSON object", source, path=path)
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", source, path=path)
    return obj[key]


# --------------------------------------------------------------------------
# states
# --------------------------------------------------------------------------

def state_to_json(rho: DensityMatrix) -> dict:
    out = {"matrix": encode_array(rho.matrix)}
    if rho.dims is not None:
        out["dims"] = list(rho.dims)
    return out


def state_from_json(obj, source: str = "<input>") -> DensityMatrix:
    """Decode and validate; density violations propagate as :class:`DensityError`."""
    m = decode_array(_field(obj, "matrix", source, "$"), 2, source, "$.matrix")
    dims = obj.get("dims")
    if dims is not None:
        if (not isinstance(dims, list) or len(dims) != 2
                or not all(isinstance(x, int) and x > 0 for x in dims)):
            raise SchemaError("dims must be two positive integers", source, path="$.dims")
        if dims[0] * dims[1] != m.shape[0]:
            raise SchemaError(f"dims {dims} do not match matrix size {m.shape[0]}", source,
                              path="$.dims")
    return validate_density(m, tuple(dims) if dims else None)


def load_state(path) -> DensityMatrix:
    return state_from_json(load(path), str(path))


# --------------------------------------------------------------------------
# measurements
# --------------------------------------------------------------------------

def povm_to_json(m) -> dict:
    if isinstance(m, RankOnePOVM):
        return {"dim": m.dim, "label": m.label, "vectors": encode_array(m.vectors)}
    return {"dim": m.dim, "label": m.label, "elements": encode_array(m.elements)}


def povm_from_json(obj, source: str = "<input>", path: str = "$"):
    dim = _field(obj, "dim", source, path)
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError("dim must be a positive integer", source, path=f"{path}.dim")
    label = obj.get("label", "")
    try:
        if "vectors" in obj:
            v = decode_array(obj["vectors"], 2, source, f"{path}.vectors")
            if v.shape[1] != dim:
                raise SchemaError(f"vectors have length {v.shape[1]}, expected {dim}", source,
                                  path=f"{path}.vectors")
            return RankOnePOVM(v, label)
        if "elements" in obj:
            e = decode_array(obj["elements"], 3, source, f"{path}.elements")
            if e.shape[1:] != (dim, dim):
                raise SchemaError(f"elements must be {dim}x{dim}", source, path=f"{path}.elements")
            return GeneralPOVM(e, label)
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc), source, path=path) from exc
    raise SchemaError("POVM needs 'vectors' or 'elements'", source, path=path)


def measurement_set_to_json(pairs, pairings=None) -> dict:
    out = []
    for t, (a, b) in enumerate(pairs):
        item = {"a": povm_to_json(a), "b": povm_to_json(b)}
        if pairings is not None:
            item["pairing"] = list(pairings[t])
        out.append(item)
    return {"pairs": out}


def measurement_set_from_json(obj, source: str = "<input>"):
    """Return ``(pairs, pairings)``; ``pairings`` is ``None`` unless every pair gives one."""
    raw = _field(obj, "pairs", source, "$")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("'pairs' must be a non-empty list", source, path="$.pairs")
    pairs, pairings = [], []
    for t, item in enumerate(raw):
        p = f"$.pairs[{t}]"
        a = povm_from_json(_field(item, "a", source, p), source, f"{p}.a")
        b = povm_from_json(_field(item, "b", source, p), source, f"{p}.b")
        pairs.append((a, b))
        if "pairing" in item:
            perm = item["pairing"]
            if not isinstance(perm, list) or sorted(perm) != list(range(a.n_outcomes)):
                raise SchemaError("pairing must be a permutation of outcome indices", source,
                                  path=f"{p}.pairing")
            pairings.append(perm)
    return pairs, (pairings if len(pairings) == len(pairs) else None)


def load_measurement_set(path):
    return measurement_set_from_json(load(path), str(path))


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "inf" if math.isinf(v) else repr(float(v))
    return str(v)


def report_row(report) -> dict:
    row = {c: None for c in REPORT_COLUMNS}
    for k in ("alpha", "beta", "K", "kappa", "a", "theta", "entropy"):
        row[k] = report.params.get(k)
    row.update(criterion_id=report.criterion_id, side=report.side, observed=report.observed,
               bound=report.bound, margin=report.margin, violated=report.violated)
    return row


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    for r in reports:
        row = report_row(r)
        w.writerow([_cell(row[c]) for c in REPORT_COLUMNS])
    return buf.getvalue()


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(x) for x in r])
    return buf.getvalue()
