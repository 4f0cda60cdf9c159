"""Plain-text tensor files.

Format: line 1 holds the order N, line 2 the N extents, and the rest the
P = prod(extents) values in the canonical C linearization, separated by
arbitrary whitespace. Lines starting with ``#`` are comments and are
skipped wherever they appear. Values are written with shortest round-trip
precision, so write followed by read is bit-exact.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["TensorFormatError", "read_tensor", "write_tensor"]


class TensorFormatError(ValueError):
    """Malformed tensor text; carries the offending 1-based line number."""

    def __init__(self, message: str, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _tokens(lines):
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for tok in stripped.split():
            yield lineno, tok


def read_tensor(path) -> np.ndarray:
    """Read one tensor from ``path``; raises :class:`TensorFormatError` on bad input."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    toks = _tokens(lines)

    def next_token(what):
        try:
            return next(toks)
        except StopIteration:
            raise TensorFormatError(f"unexpected end of file, expected {what}",
                                    line=len(lines)) from None

    lineno, tok = next_token("the tensor order N")
    try:
        ndim = int(tok)
    except ValueError:
        raise TensorFormatError(f"tensor order must be an integer, got {tok!r}",
                                line=lineno) from None
    if ndim < 1:
        raise TensorFormatError(f"tensor order must be >= 1, got {ndim}", line=lineno)

    shape = []
    for _ in range(ndim):
        lineno, tok = next_token(f"{ndim} extents")
        try:
            extent = int(tok)
        except ValueError:
            raise TensorFormatError(f"extent must be an integer, got {tok!r}",
                                    line=lineno) from None
        if extent < 1:
            raise TensorFormatError(f"extent must be >= 1, got {extent}", line=lineno)
        shape.append(extent)

    count = math.prod(shape)
    values = np.empty(count, dtype=np.float64)
    for i in range(count):
        lineno, tok = next_token(f"{count} values (got {i})")
        try:
            v = float(tok)
        except ValueError:
            raise TensorFormatError(f"bad value {tok!r}", line=lineno) from None
        if not math.isfinite(v):
            raise TensorFormatError(f"non-finite value {tok!r}", line=lineno)
        values[i] = v

    for lineno, tok in toks:
        raise TensorFormatError(
            f"trailing data {tok!r}: expected exactly {count} values", line=lineno)

    return values.reshape(shape)


def write_tensor(t, path) -> None:
    """Write ``t`` to ``path`` in the text format (C-order values)."""
    a = np.asarray(t, dtype=np.float64)
    if a.ndim < 1:
        raise ValueError("tensor must have at least one mode")
    if not np.all(np.isfinite(a)):
        raise ValueError("tensor has non-finite entries")
    flat = a.ravel()
    # one row of the trailing axis per line keeps files greppable
    per_line = a.shape[-1]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{a.ndim}\n")
        fh.write(" ".join(str(s) for s in a.shape) + "\n")
        for start in range(0, flat.size, per_line):
            fh.write(" ".join(repr(float(v)) for v in flat[start:start + per_line]))
            fh.write("\n")
