"""JSON state files.

Schema::

    {"dims": [2, 2], "matrix": [[re, im], ...], "label": "optional"}

with the matrix flattened row-major, one [re, im] pair per entry.  Floats
are emitted with full round-trip precision so that save followed by load
is bit-exact.  The path '-' means stdin/stdout.
"""

import json
import sys
from dataclasses import dataclass

import numpy as np

from . import states
from .errors import StateFileError


@dataclass(frozen=True)
class StateFile:
    mat: np.ndarray
    dims: tuple[int, ...]
    label: str | None


def _read_text(source) -> str:
    if source == "-":
        return sys.stdin.read()
    if hasattr(source, "read"):
        return source.read()
    with open(source, "r", encoding="utf-8") as fh:
        return fh.read()


def load_raw(source) -> StateFile:
    """Parse a state file without density validation (operator mode)."""
    text = _read_text(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise StateFileError("top-level JSON value must be an object")
    for field in ("dims", "matrix"):
        if field not in doc:
            raise StateFileError(f"missing field '{field}'")
    dims_raw = doc["dims"]
    if (
        not isinstance(dims_raw, list)
        or not dims_raw
        or not all(
            isinstance(k, int) and not isinstance(k, bool) and k >= 1
            for k in dims_raw
        )
    ):
        raise StateFileError("field 'dims' must be a nonempty list of positive integers")
    dims = tuple(dims_raw)
    d = 1
    for k in dims:
        d *= k
    entries = doc["matrix"]
    if not isinstance(entries, list) or len(entries) != d * d:
        raise StateFileError(
            f"field 'matrix' must hold {d * d} [re, im] pairs for dims {list(dims)}, "
            f"got {len(entries) if isinstance(entries, list) else type(entries).__name__}"
        )
    flat = np.empty(d * d, dtype=complex)
    for idx, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(
                isinstance(c, (int, float)) and not isinstance(c, bool) for c in pair
            )
        ):
            raise StateFileError(f"field 'matrix'[{idx}] is not an [re, im] pair")
        flat[idx] = complex(pair[0], pair[1])
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise StateFileError("field 'label' must be a string")
    return StateFile(mat=flat.reshape(d, d), dims=dims, label=label)


def load_density(source, tol: float = states.VALIDATION_TOL) -> StateFile:
    """Parse and validate as a density matrix."""
    raw = load_raw(source)
    validated = states.validate_density(raw.mat, dims=raw.dims, tol=tol)
    return StateFile(mat=validated.mat, dims=validated.dims, label=raw.label)


def save_state(target, mat: np.ndarray, dims, label: str | None = None) -> None:
    """Write a state file; floats keep round-trip precision."""
    mat = np.asarray(mat, dtype=complex)
    doc = {
        "dims": [int(k) for k in dims],
        "matrix": [[float(z.real), float(z.imag)] for z in mat.reshape(-1)],
    }
    if label is not None:
        doc["label"] = label
    text = json.dumps(doc)
    if target == "-":
        sys.stdout.write(text + "\n")
    elif hasattr(target, "write"):
        target.write(text + "\n")
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
