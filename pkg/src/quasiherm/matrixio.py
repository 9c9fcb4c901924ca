"""Flat-file matrix exchange format.

A matrix is a JSON document with a ``dim`` field and ``entries`` as an
array of [re, im] pairs in row-major order. Trivially producible from any
environment and diffable. All structural problems raise ParseError.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError


def matrix_to_payload(M) -> dict:
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ParseError(f"expected a square matrix, got shape {A.shape}")
    entries = [[float(z.real), float(z.imag)] for z in A.ravel()]
    return {"dim": int(A.shape[0]), "entries": entries}


def matrix_from_payload(payload) -> np.ndarray:
    if not isinstance(payload, dict):
        raise ParseError(f"expected a JSON object, got {type(payload).__name__}")
    missing = {"dim", "entries"} - set(payload)
    if missing:
        raise ParseError(f"missing required field(s): {sorted(missing)}")

    dim = payload["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"'dim' must be a positive integer, got {dim!r}")

    entries = payload["entries"]
    if not isinstance(entries, list) or len(entries) != dim * dim:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise ParseError(f"'entries' must hold dim^2 = {dim * dim} pairs, got {got}")

    flat = np.empty(dim * dim, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError(f"entry {i} must be a [re, im] pair of numbers, got {pair!r}")
        if not (math.isfinite(pair[0]) and math.isfinite(pair[1])):
            raise ParseError(f"entry {i} is not finite: {pair!r}")
        flat[i] = complex(pair[0], pair[1])
    return flat.reshape(dim, dim)


def load_matrix(path) -> np.ndarray:
    """Read a matrix document from ``path``."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    try:
        return matrix_from_payload(payload)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_matrix(path, M) -> None:
    """Write a matrix document to ``path``."""
    payload = matrix_to_payload(M)
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
