"""Finite atomic counting functions N(lambda) and their Riesz means."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "Atom",
    "StepMeasure",
    "counting_value",
    "left_limit",
    "make_step_measure",
    "measure_from_json",
    "measure_to_json",
    "moment",
    "riesz_mean",
    "weyl_measure",
]


class Atom(NamedTuple):
    position: float
    weight: float


@dataclass(frozen=True, eq=False)
class StepMeasure:
    """dN = sum_j w_j delta(lambda_j) with strictly increasing positive positions.

    Build with :func:`make_step_measure`; the arrays are read-only.
    """

    positions: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.positions)

    @property
    def atoms(self) -> list[Atom]:
        return [Atom(float(p), float(w)) for p, w in zip(self.positions, self.weights)]

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def scaled(self, t: float) -> "StepMeasure":
        """Same weights, positions multiplied by ``t > 0``."""
        return make_step_measure(zip(self.positions * t, self.weights))

    def distance_to(self, x: float) -> float:
        return float(np.min(np.abs(self.positions - x)))

    def __eq__(self, other):
        if not isinstance(other, StepMeasure):
            return NotImplemented
        return (np.array_equal(self.positions, other.positions)
                and np.array_equal(self.weights, other.weights))

    def __repr__(self):
        return f"StepMeasure({self.atoms!r})"


def make_step_measure(atoms: Iterable) -> StepMeasure:
    """Sort atoms by position, merging coincident positions by adding weights."""
    pairs = [(float(p), float(w)) for p, w in atoms]
    if not pairs:
        raise ValueError("a measure needs at least one atom")
    for p, w in pairs:
        if not (p > 0 and np.isfinite(p)):
            raise ValueError(f"atom position must be positive and finite, got {p!r}")
        if not (w > 0 and np.isfinite(w)):
            raise ValueError(f"atom weight must be positive and finite, got {w!r}")
    merged: dict[float, float] = {}
    for p, w in pairs:
        merged[p] = merged.get(p, 0.0) + w
    pos = np.array(sorted(merged))
    wts = np.array([merged[p] for p in pos])
    pos.setflags(write=False)
    wts.setflags(write=False)
    return StepMeasure(pos, wts)


def counting_value(measure: StepMeasure, lambda0: float) -> float:
    """N(lambda0) = sum of weights at positions <= lambda0 (right-continuous)."""
    _check_positive(lambda0, "lambda0")
    return float(measure.weights[measure.positions <= lambda0].sum())


def left_limit(measure: StepMeasure, lambda0: float) -> float:
    """N(lambda0 - 0): mass strictly below lambda0."""
    return float(measure.weights[measure.positions < lambda0].sum())


def riesz_mean(measure: StepMeasure, alpha: float, lambda0: float) -> float:
    """Riesz mean of order alpha: sum over lambda_j < lambda0 of w_j (1 - lambda_j/lambda0)**alpha."""
    _check_positive(alpha, "alpha")
    _check_positive(lambda0, "lambda0")
    below = measure.positions < lambda0
    x = 1.0 - measure.positions[below] / lambda0
    return float(np.sum(measure.weights[below] * x ** alpha))


def moment(measure: StepMeasure, q: int) -> float:
    """Negative moment sum_j w_j lambda_j**(-q)."""
    if int(q) != q or q < 1:
        raise ValueError(f"q must be a positive integer, got {q!r}")
    return float(np.sum(measure.weights * measure.positions ** (-float(q))))


def weyl_measure(dimension: int, count: int) -> StepMeasure:
    """Unit atoms at j**(2/dimension), j = 1..count (power-law eigenvalue model)."""
    if dimension < 1 or count < 1:
        raise ValueError("dimension and count must be positive")
    j = np.arange(1, count + 1, dtype=float)
    return make_step_measure(zip(j ** (2.0 / dimension), np.ones(count)))


def measure_to_json(measure: StepMeasure) -> dict:
    return {"atoms": [{"lambda": a.position, "weight": a.weight} for a in measure.atoms]}


def measure_from_json(data: dict) -> StepMeasure:
    try:
        atoms = [(float(a["lambda"]), float(a["weight"])) for a in data["atoms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed measure JSON: {exc}") from exc
    return make_step_measure(atoms)


def _check_positive(x, name):
    if not x > 0:
        raise ValueError(f"{name} must be positive, got {x!r}")
