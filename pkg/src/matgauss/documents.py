"""Self-describing JSON documents read and written by the command line.

Every document is a JSON object with a ``kind`` plus shape integers and
row-major nested-array payloads:

=======================  ==========================================  ==========================
kind                     shape fields                                payloads
=======================  ==========================================  ==========================
matrix                   rows, cols                                  data
matrix_gaussian          rows, cols                                  mean, sigma
joint_matrix_gaussian    rows, n_a, n_b (cols = n_a + n_b optional)  mean, sigma
matrix_normal            rows, cols                                  mean, u, v
kron_covariance          rows, cols                                  data, optional mean
samples                  rows, cols, count                           data (count matrices)
=======================  ==========================================  ==========================

Floats are written with 17 significant digits so every float64 survives a
round trip exactly.
"""

import json

import numpy as np

from .covrepr import KroneckerCovariance, s_to_sigma, sigma_to_s
from .errors import AsymmetryError, MatGaussError, NotPositiveDefiniteError
from .matnorm import MatrixNormal, mn_to_full
from .mgauss import JointMatrixGaussian, MatrixGaussian

__all__ = [
    "DocumentError",
    "KINDS",
    "parse_document",
    "load_document",
    "dump_document",
    "dump_fields",
    "load_distribution",
    "format_float",
]

KINDS = (
    "matrix",
    "matrix_gaussian",
    "joint_matrix_gaussian",
    "matrix_normal",
    "kron_covariance",
    "samples",
)


class DocumentError(MatGaussError):
    """A document is unreadable, malformed, or has inconsistent shapes."""


def format_float(x):
    return format(float(x), ".17g")


def _shape_int(doc, key):
    value = doc.get(key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise DocumentError(f"field {key!r} must be a positive integer, got {value!r}")
    return value


def _payload(doc, key, shape):
    if key not in doc:
        raise DocumentError(f"missing payload {key!r}")
    try:
        arr = np.array(doc[key], dtype=np.float64)
    except (TypeError, ValueError):
        raise DocumentError(f"payload {key!r} is not a rectangular numeric array") from None
    if arr.shape != shape:
        raise DocumentError(f"payload {key!r} has shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise DocumentError(f"payload {key!r} contains non-finite numbers")
    return arr


def parse_document(doc):
    """Turn a decoded JSON object into a library value.

    Returns an ndarray (``matrix``, ``samples``), a
    :class:`~matgauss.mgauss.MatrixGaussian`, a
    :class:`~matgauss.mgauss.JointMatrixGaussian`, a
    :class:`~matgauss.matnorm.MatrixNormal`, or a
    ``(KroneckerCovariance, mean)`` pair.

    Raises
    ------
    DocumentError
        For any structural problem.
    NotPositiveDefiniteError
        If a covariance payload is well-formed but not SPD.
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        return _PARSERS[kind](doc)
    except (DocumentError, NotPositiveDefiniteError):
        raise
    except MatGaussError as exc:
        raise DocumentError(str(exc)) from None


def _parse_matrix(doc):
    rows, cols = _shape_int(doc, "rows"), _shape_int(doc, "cols")
    return _payload(doc, "data", (rows, cols))


def _parse_gaussian(doc):
    rows, cols = _shape_int(doc, "rows"), _shape_int(doc, "cols")
    k = rows * cols
    mean = _payload(doc, "mean", (rows, cols))
    return MatrixGaussian(mean, _payload(doc, "sigma", (k, k)))


def _parse_joint(doc):
    rows = _shape_int(doc, "rows")
    n_a, n_b = _shape_int(doc, "n_a"), _shape_int(doc, "n_b")
    if "cols" in doc and _shape_int(doc, "cols") != n_a + n_b:
        raise DocumentError(f"cols must equal n_a + n_b = {n_a + n_b}")
    cols = n_a + n_b
    k = rows * cols
    mean = _payload(doc, "mean", (rows, cols))
    full = MatrixGaussian(mean, _payload(doc, "sigma", (k, k)))
    return JointMatrixGaussian(full, n_a)


def _parse_normal(doc):
    rows, cols = _shape_int(doc, "rows"), _shape_int(doc, "cols")
    return MatrixNormal(
        _payload(doc, "mean", (rows, cols)),
        _payload(doc, "u", (rows, rows)),
        _payload(doc, "v", (cols, cols)),
    )


def _parse_kron(doc):
    rows, cols = _shape_int(doc, "rows"), _shape_int(doc, "cols")
    s = KroneckerCovariance(rows, cols, _payload(doc, "data", (rows * rows, cols * cols)))
    mean = _payload(doc, "mean", (rows, cols)) if "mean" in doc else None
    return s, mean


def _parse_samples(doc):
    rows, cols = _shape_int(doc, "rows"), _shape_int(doc, "cols")
    count = _shape_int(doc, "count")
    return _payload(doc, "data", (count, rows, cols))


_PARSERS = {
    "matrix": _parse_matrix,
    "matrix_gaussian": _parse_gaussian,
    "joint_matrix_gaussian": _parse_joint,
    "matrix_normal": _parse_normal,
    "kron_covariance": _parse_kron,
    "samples": _parse_samples,
}


def load_document(path, expect=None):
    """Read and parse the document at ``path``; optionally require given kinds."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from None
    if expect is not None:
        kind = raw.get("kind") if isinstance(raw, dict) else None
        if kind not in expect:
            raise DocumentError(f"{path}: expected kind {' or '.join(expect)}, got {kind!r}")
    return parse_document(raw)


def load_distribution(path):
    """Load any document describing a single matrix Gaussian.

    ``matrix_normal`` is embedded via ``V ⊗ U``; ``kron_covariance`` is
    converted back to the vec covariance (zero mean if none is stored).
    """
    value = load_document(path, expect=("matrix_gaussian", "matrix_normal", "kron_covariance"))
    if isinstance(value, MatrixNormal):
        return mn_to_full(value)
    if isinstance(value, tuple):
        s, mean = value
        if mean is None:
            mean = np.zeros((s.m, s.n))
        try:
            sigma = s_to_sigma(s)
        except AsymmetryError as exc:
            raise DocumentError(f"{path}: {exc}") from None
        return MatrixGaussian(mean, sigma)
    return value


def _rows(arr, indent):
    arr = np.atleast_2d(arr)
    pad = " " * indent
    lines = ["[" + ", ".join(format_float(x) for x in row) + "]" for row in arr]
    return "[\n" + ",\n".join(pad + "  " + line for line in lines) + "\n" + pad + "]"


def dump_document(value, extra=None):
    """Serialize a library value to document text (ends with a newline).

    ``extra`` adds scalar fields after the payloads.
    """
    fields = _fields(value)
    if extra:
        fields.extend(extra.items())
    return dump_fields(fields)


def dump_fields(fields):
    """Serialize ``(key, value)`` pairs in order as a JSON object."""
    parts = []
    for key, item in fields:
        if isinstance(item, np.ndarray):
            if item.ndim == 3:
                body = "[\n" + ",\n".join("    " + _rows(mat, 4) for mat in item) + "\n  ]"
            else:
                body = _rows(item, 2)
        elif isinstance(item, float):
            body = format_float(item)
        else:
            body = json.dumps(item)
        parts.append(f"  {json.dumps(key)}: {body}")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def _fields(value):
    if isinstance(value, JointMatrixGaussian):
        return [
            ("kind", "joint_matrix_gaussian"),
            ("rows", value.m),
            ("n_a", value.n_a),
            ("n_b", value.n_b),
            ("mean", value.full.mean),
            ("sigma", value.full.sigma.entries),
        ]
    if isinstance(value, MatrixGaussian):
        return [
            ("kind", "matrix_gaussian"),
            ("rows", value.m),
            ("cols", value.n),
            ("mean", value.mean),
            ("sigma", value.sigma.entries),
        ]
    if isinstance(value, MatrixNormal):
        return [
            ("kind", "matrix_normal"),
            ("rows", value.mean.shape[0]),
            ("cols", value.mean.shape[1]),
            ("mean", value.mean),
            ("u", value.u.entries),
            ("v", value.v.entries),
        ]
    if isinstance(value, tuple) and isinstance(value[0], KroneckerCovariance):
        s, mean = value
        fields = [("kind", "kron_covariance"), ("rows", s.m), ("cols", s.n)]
        if mean is not None:
            fields.append(("mean", np.asarray(mean)))
        fields.append(("data", s.s))
        return fields
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim == 3:
        return [
            ("kind", "samples"),
            ("rows", arr.shape[1]),
            ("cols", arr.shape[2]),
            ("count", arr.shape[0]),
            ("data", arr),
        ]
    if arr.ndim == 2:
        return [("kind", "matrix"), ("rows", arr.shape[0]), ("cols", arr.shape[1]), ("data", arr)]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def to_kron_document(d):
    """``(KroneckerCovariance, mean)`` pair for a matrix Gaussian, ready to dump."""
    return sigma_to_s(d.sigma, d.m, d.n), d.mean
