"""Stieltjes transforms of atomic counting functions, summed in closed form."""
from __future__ import annotations

import warnings

import numpy as np

from .measure import StepMeasure

__all__ = ["PoleError", "stieltjes", "stieltjes_q"]

NEAR_POLE = 1e-9
_CHUNK = 2_000_000


class PoleError(ZeroDivisionError):
    """Transform evaluated exactly at an atom."""


def stieltjes_q(measure: StepMeasure, q: int, zeta):
    """Generalized Stieltjes transform sum_j w_j / (lambda_j - zeta)**q.

    ``zeta`` may be a scalar or an array; arrays are evaluated elementwise.
    """
    if int(q) != q or q < 1:
        raise ValueError(f"q must be a positive integer, got {q!r}")
    scalar = np.ndim(zeta) == 0
    z = np.asarray(zeta, dtype=complex).ravel()
    out = np.empty(z.shape, dtype=complex)
    # bound the atoms x points temporary to ~2e6 entries
    step = max(1, _CHUNK // len(measure))
    for lo in range(0, len(z), step):
        diff = measure.positions[:, None] - z[None, lo:lo + step]
        dist = np.abs(diff)
        if np.any(dist == 0):
            raise PoleError("Stieltjes transform evaluated at an atom")
        if np.any(dist < NEAR_POLE):
            warnings.warn("evaluation point within 1e-9 of an atom", RuntimeWarning,
                          stacklevel=2)
        out[lo:lo + step] = measure.weights @ diff ** (-int(q))
    out = out.reshape(np.shape(zeta))
    return complex(out) if scalar else out


def stieltjes(measure: StepMeasure, zeta):
    """Stieltjes transform sum_j w_j / (lambda_j - zeta)."""
    return stieltjes_q(measure, 1, zeta)
