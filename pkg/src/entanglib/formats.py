"""JSON reading and writing for the command line.  Schemas: docs/formats.md."""

import json
import sys

import numpy as np

from .antisym_tensors import WedgeTensor
from .errors import ValidationError
from .hermitian_tensors import DensityTensor, HermitianTensor, classify_structure
from .sym_poly import SymTensor
from .tensor_core import DenseTensor


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, complex):
        return [o.real, o.imag]
    if hasattr(o, "to_json"):
        return o.to_json()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj, indent=None):
    return json.dumps(obj, default=_default, indent=indent, allow_nan=True)


def read_json(path=None):
    """Parse JSON from a file path, or standard input for None / '-'."""
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc


def write_json(obj, path=None, indent=None):
    text = dumps(obj, indent=indent)
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def tensor_from_json(obj):
    """Symmetric, Hermitian, antisymmetric or dense tensor from its JSON form.

    A named-state record (as emitted by ``states emit``) is unwrapped.
    Hermitian inputs get their strongest structure tag.
    """
    if not isinstance(obj, dict):
        raise ValidationError("expected a JSON object")
    if "tensor" in obj and isinstance(obj["tensor"], dict):
        return tensor_from_json(obj["tensor"])
    if "coeffs" in obj:
        return SymTensor.from_json(obj)
    if "matrix" in obj:
        B = HermitianTensor.from_json(obj)
        if B.structure == "general":
            B = B.with_structure(classify_structure(B))
        return B
    if "entries" in obj:
        if obj.get("kind") == "antisymmetric":
            return WedgeTensor.from_json(obj)
        return DenseTensor.from_json(obj)
    raise ValidationError("unrecognized tensor JSON (need 'coeffs', 'matrix' or 'entries')")


def density_from_json(obj):
    T = tensor_from_json(obj)
    if isinstance(T, DensityTensor):
        return T.base
    if not isinstance(T, HermitianTensor):
        raise ValidationError("expected a Hermitian density ('shape' and 'matrix')")
    return T


def graph_from_json(obj):
    """Adjacency matrix from {"adjacency": [[...]]}, {"n": .., "edges": [[i, j], ..]} or a bare matrix."""
    if isinstance(obj, dict) and "adjacency" in obj:
        obj = obj["adjacency"]
    elif isinstance(obj, dict) and "edges" in obj:
        n = int(obj["n"])
        A = np.zeros((n, n), dtype=int)
        for i, j in obj["edges"]:
            A[i, j] = A[j, i] = 1
        return A
    try:
        return np.asarray(obj, dtype=int)
    except (TypeError, ValueError) as exc:
        raise ValidationError("graph JSON must be an adjacency matrix or an edge list") from exc
