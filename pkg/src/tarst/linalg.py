"""Thin-SVD contract shared by the thresholding and decomposition code.

Wraps numpy's LAPACK driver behind one function so the rest of the package
never touches the backend directly, and counts factorizations so the
benchmark can assert the denoiser really is non-iterative (N SVDs for an
N-way tensor, no more).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SvdFactor", "svd", "svd_call_count", "median_singular_value"]

_svd_calls = 0


@dataclass(frozen=True)
class SvdFactor:
    """Thin SVD of an m x n matrix: u (m x q), s (length q, nonincreasing),
    vt (q x n), with q = min(m, n)."""

    u: np.ndarray
    s: np.ndarray
    vt: np.ndarray


def svd(m) -> SvdFactor:
    """Thin SVD. Non-convergence propagates as numpy.linalg.LinAlgError.

    Deterministic for a fixed input within one build, up to the usual sign
    freedom of singular-vector pairs; downstream code only forms projectors
    U U^T, which are sign-invariant.
    """
    global _svd_calls
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError(f"svd expects a matrix, got {a.ndim} dimensions")
    if not np.all(np.isfinite(a)):
        raise ValueError("svd input has non-finite entries")
    _svd_calls += 1
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return SvdFactor(u=u, s=s, vt=vt)


def svd_call_count() -> int:
    """Total factorizations performed by :func:`svd` in this process."""
    return _svd_calls


def median_singular_value(f) -> float:
    """Statistical median of the spectrum (midpoint of the two central values
    when the count is even). Accepts an SvdFactor or a plain value array."""
    s = f.s if isinstance(f, SvdFactor) else np.asarray(f, dtype=np.float64)
    if s.size == 0:
        raise ValueError("empty spectrum has no median")
    return float(np.median(s))
