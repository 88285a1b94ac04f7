"""Both sides of the contour inequalities on concrete (measure, zeta0, contour) instances.

Orientation: every integral "along Gamma" in the main terms is taken from
conj(zeta0) to zeta0.  Together with the vertical segment from zeta0 down to
conj(zeta0) this is the clockwise loop on which

    (1/2 pi i) \\oint ((lambda0 - z)/lambda0)^alpha / (lambda - z) dz
        = (1 - lambda/lambda0)^alpha   for lambda < lambda0,

and 0 for lambda > lambda0.  The generalized main terms use the kernel
(lambda0 - z)^(q-1), which gives the same residue for every q.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .complexpath import (Contour, EvaluationPoint, QuadratureResult, branch_pow,
                          contour_quadrature, default_contour, make_contour)
from .constants import (ALPHA_LT_1, GENERAL, thm1_constants, thm2_constants,
                        thm3_constants)
from .measure import (StepMeasure, counting_value, left_limit, make_step_measure, riesz_mean,
                      weyl_measure)
from .transforms import stieltjes, stieltjes_q

__all__ = [
    "AtomProximityError",
    "PLEIJEL_CONSTANT",
    "VerificationReport",
    "closed_contour_identity",
    "DemoRow",
    "demo_weyl",
    "main_term_integral",
    "pleijel_report",
    "random_contour",
    "random_instance",
    "remainder_bound",
    "run_suite",
    "segment_remainder",
    "thm1_report",
    "thm2_report",
    "thm3_report",
]

PLEIJEL_CONSTANT = math.sqrt(1 + math.pi ** -2)
SEPARATION = 1e-6
DEFAULT_TOL = 1e-10
MIN_TOLERANCE = 1e-9


class AtomProximityError(ValueError):
    """lambda0 sits on (or within 1e-6 lambda0 of) an atom."""


@dataclass(frozen=True)
class VerificationReport:
    theorem: str
    lambda0: float
    eta0: float
    alpha: float | None
    q: int | None
    contour: str
    lhs: float
    main_term: complex
    rhs: float
    margin: float
    holds: bool
    quadrature_error: float
    tolerance: float

    def to_json(self) -> dict:
        return {"theorem": self.theorem,
                "inputs": {"lambda0": self.lambda0, "eta0": self.eta0, "alpha": self.alpha,
                           "q": self.q, "contour": self.contour},
                "lhs": self.lhs,
                "main_term": {"re": self.main_term.real, "im": self.main_term.imag},
                "rhs": self.rhs, "margin": self.margin, "holds": self.holds,
                "quadrature_error": self.quadrature_error, "tolerance": self.tolerance}


def _report(theorem, point, contour, lhs, main, rhs, qerr, tolerance, alpha=None, q=None):
    tol = max(MIN_TOLERANCE if tolerance is None else tolerance, 10 * qerr)
    margin = rhs - lhs
    return VerificationReport(theorem, point.lambda0, point.eta0, alpha, q, contour.digest(),
                              float(lhs), complex(main), float(rhs), float(margin),
                              bool(margin >= -tol), float(qerr), float(tol))


def _setup(measure: StepMeasure, point: EvaluationPoint, contour: Contour | None,
           remark1: bool) -> Contour:
    if contour is None:
        contour = default_contour(point)
    elif contour.start != point.zeta0:
        raise ValueError(f"contour starts at {contour.start!r}, not at zeta0={point.zeta0!r}")
    gap = measure.distance_to(point.lambda0)
    if gap < SEPARATION * point.lambda0:
        msg = f"atom within {gap:.3g} of lambda0={point.lambda0!r}"
        if not remark1:
            raise AtomProximityError(msg + " (N must be constant near lambda0)")
        warnings.warn(msg + "; proceeding in Remark-1 mode", RuntimeWarning, stacklevel=3)
    return contour


def main_term_integral(f: Callable[[np.ndarray], np.ndarray], contour: Contour,
                       measure: StepMeasure, tol: float = DEFAULT_TOL) -> QuadratureResult:
    """(1/2 pi i) times the integral of f along Gamma, from conj(zeta0) to zeta0."""
    res = contour_quadrature(f, contour.reversed(), tol,
                             singularities=measure.positions.astype(complex))
    return QuadratureResult(res.value / (2j * math.pi), res.error_estimate / (2 * math.pi),
                            res.evaluations)


def _riesz_kernel(lambda0: float, alpha: float):
    return lambda z: branch_pow(1 - z / lambda0, alpha)


def pleijel_report(measure: StepMeasure, point: EvaluationPoint,
                   contour: Contour | None = None, *, remark1: bool = False,
                   tol: float = DEFAULT_TOL, tolerance: float | None = None) -> VerificationReport:
    """|N(lambda0) - (1/2 pi i) int_Gamma S| <= eta0 sqrt(1 + pi^-2) |S(zeta0)|."""
    contour = _setup(measure, point, contour, remark1)
    res = main_term_integral(lambda z: stieltjes(measure, z), contour, measure, tol)
    lhs = abs(counting_value(measure, point.lambda0) - res.value)
    rhs = point.eta0 * PLEIJEL_CONSTANT * abs(stieltjes(measure, point.zeta0))
    return _report("pleijel", point, contour, lhs, res.value, rhs, res.error_estimate, tolerance)


def thm1_report(measure: StepMeasure, point: EvaluationPoint, contour: Contour | None = None,
                alpha: float = 1.0, regime: str = GENERAL, *, sharp: bool = False,
                remark1: bool = False, tol: float = DEFAULT_TOL,
                tolerance: float | None = None) -> VerificationReport:
    """Riesz-mean inequality of order alpha.

    The bound multiplier is 1/(alpha pi) (general regime) or sqrt(1/pi^2 + 1/4)
    (alpha < 1 regime); ``sharp=True`` uses the computed c3 / (2 pi) instead.
    """
    k = thm1_constants(alpha, regime)
    contour = _setup(measure, point, contour, remark1)
    lam = point.lambda0
    kern = _riesz_kernel(lam, alpha)
    res = main_term_integral(lambda z: stieltjes(measure, z) * kern(z), contour, measure, tol)
    lhs = abs(riesz_mean(measure, alpha, lam) - res.value)
    mult = k.sharp_multiplier if sharp else k.multiplier
    rhs = mult * (point.eta0 / lam) ** alpha * point.eta0 * abs(stieltjes(measure, point.zeta0))
    return _report("thm1", point, contour, lhs, res.value, rhs, res.error_estimate, tolerance,
                   alpha=alpha)


def _power_stack(measure, q, lambda0, count, sign=1.0, extra=None):
    """Integrand z -> [S_q(z) (sign (lambda0 - z))^m for m < count] (+ extra column)."""
    def f(z):
        s = stieltjes_q(measure, q, z)
        base = sign * (lambda0 - z)
        cols = [s * base ** m for m in range(count)]
        if extra is not None:
            cols.append(s * extra(z))
        return np.stack(cols, axis=-1)
    return f


def thm2_report(measure: StepMeasure, point: EvaluationPoint, contour: Contour | None = None,
                q: int = 2, *, remark1: bool = False, tol: float = DEFAULT_TOL,
                tolerance: float | None = None) -> VerificationReport:
    """Generalized-transform inequality of order q >= 2 with the computed C_m.

    In Remark-1 mode N(lambda0) is replaced by (N(lambda0 - 0) + N(lambda0 + 0)) / 2.
    """
    if int(q) != q or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    q = int(q)
    k = thm2_constants(q)
    contour = _setup(measure, point, contour, remark1)
    lam, eta = point.lambda0, point.eta0
    res = main_term_integral(_power_stack(measure, q, lam, q), contour, measure, tol)
    vals = res.value * (2j * math.pi)          # raw integrals for the remainder terms
    main = res.value[q - 1]
    n_val = counting_value(measure, lam)
    if remark1:
        n_val = 0.5 * (n_val + left_limit(measure, lam))
    lhs = abs(n_val - main)
    weights = [k.C_m[m] * eta ** (q - 1 - m) for m in range(q - 1)]
    rhs = sum(w * abs(vals[m]) for m, w in enumerate(weights))
    qerr = res.error_estimate * (1 + 2 * math.pi * sum(weights))
    return _report("thm2", point, contour, lhs, main, rhs, qerr, tolerance, q=q)


def thm3_report(measure: StepMeasure, point: EvaluationPoint, contour: Contour | None = None,
                q: int = 2, alpha: float = 1.0, *, tol: float = DEFAULT_TOL,
                tolerance: float | None = None) -> VerificationReport:
    """Riesz-mean version of the generalized inequality, normalized by alpha B(q, alpha)."""
    if int(q) != q or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    q = int(q)
    k = thm3_constants(q, alpha)
    contour = _setup(measure, point, contour, False)
    lam, eta = point.lambda0, point.eta0
    kern = _riesz_kernel(lam, alpha)
    main_kernel = lambda z: (lam - z) ** (q - 1) * kern(z)  # noqa: E731
    f = _power_stack(measure, q, lam, q - 1, sign=-1.0, extra=main_kernel)
    res = main_term_integral(f, contour, measure, tol)
    vals = res.value * (2j * math.pi)
    scale = alpha * k.B
    main = scale * res.value[q - 1]
    lhs = abs(riesz_mean(measure, alpha, lam) - main)
    weights = [k.C_m[m] * (eta / lam) ** alpha * eta ** (q - 1 - m) for m in range(q - 1)]
    rhs = sum(w * abs(vals[m]) for m, w in enumerate(weights))
    qerr = res.error_estimate * (scale + 2 * math.pi * sum(weights))
    return _report("thm3", point, contour, lhs, main, rhs, qerr, tolerance, alpha=alpha, q=q)


def closed_contour_identity(measure: StepMeasure, point: EvaluationPoint,
                            contour: Contour | None = None, alpha: float = 1.0,
                            tol: float = DEFAULT_TOL) -> float:
    """|(1/2 pi i) \\oint S(z) ((lambda0 - z)/lambda0)^alpha dz - N^(alpha)(lambda0)|.

    The loop runs along Gamma from conj(zeta0) to zeta0, then straight down
    through lambda0 back to conj(zeta0).
    """
    contour = _setup(measure, point, contour, False)
    lam = point.lambda0
    kern = _riesz_kernel(lam, alpha)
    path = list(contour.reversed()) + [complex(lam), point.conjugate]
    res = contour_quadrature(lambda z: stieltjes(measure, z) * kern(z), path, tol,
                             singularities=measure.positions.astype(complex))
    return abs(res.value / (2j * math.pi) - riesz_mean(measure, alpha, lam))


def segment_remainder(measure: StepMeasure, point: EvaluationPoint, alpha: float = 1.0,
                      tol: float = DEFAULT_TOL, *, return_error: bool = False):
    """R = (1/2 pi i) int_{conj zeta0}^{zeta0} S(z) ((lambda0 - z)/lambda0)^alpha dz.

    With ``return_error=True`` returns ``(R, error_estimate)``.
    """
    _setup(measure, point, default_contour(point), False)
    lam = point.lambda0
    kern = _riesz_kernel(lam, alpha)
    res = contour_quadrature(lambda z: stieltjes(measure, z) * kern(z),
                             [point.conjugate, complex(lam), point.zeta0], tol,
                             singularities=measure.positions.astype(complex))
    value = res.value / (2j * math.pi)
    if return_error:
        return value, res.error_estimate / (2 * math.pi)
    return value


def remainder_bound(measure: StepMeasure, point: EvaluationPoint, alpha: float,
                    regime: str = GENERAL) -> float:
    """(eta0/lambda0)^alpha (eta0 / 2 pi) c3 |S(zeta0)|, the bound on |segment_remainder|."""
    c3 = thm1_constants(alpha, regime).c3
    lam, eta = point.lambda0, point.eta0
    return (eta / lam) ** alpha * eta / (2 * math.pi) * c3 * abs(stieltjes(measure, point.zeta0))


# --------------------------------------------------------------------------
# randomized instances


def random_contour(rng: np.random.Generator, point: EvaluationPoint) -> Contour:
    """A random valid polyline: wander in the upper half plane, cross the
    negative axis at -L, come back through the lower half plane."""
    lam, eta = point.lambda0, point.eta0
    while True:
        left = lam * rng.uniform(0.05, 2.0)
        up = [complex(rng.uniform(-left, 1.5 * lam), eta * rng.uniform(0.3, 3.0)),
              complex(-left, eta * rng.uniform(0.3, 3.0))]
        down = [complex(-left, -eta * rng.uniform(0.3, 3.0)),
                complex(rng.uniform(-left, 1.5 * lam), -eta * rng.uniform(0.3, 3.0))]
        try:
            return make_contour([point.zeta0, *up, *down, point.conjugate])
        except ValueError:
            continue


def random_instance(rng: np.random.Generator, *, max_atoms: int = 20,
                    remark1: bool = False, random_path: bool = True,
                    separation: float = 1e-3):
    """(measure, point, contour) for randomized suites.

    Atoms: positions uniform in [0.1, 100], weights uniform in (0, 10].
    lambda0 is log-uniform in [0.05, 150] and kept ``separation * lambda0``
    away from every atom, unless ``remark1`` puts it exactly on an atom.
    eta0 is log-uniform in [0.01, 10] * lambda0.
    """
    n = int(rng.integers(1, max_atoms + 1))
    pos = rng.uniform(0.1, 100.0, n)
    wts = 10.0 * (1.0 - rng.random(n))
    measure = make_step_measure(zip(pos, wts))
    if remark1:
        lam = float(rng.choice(measure.positions))
    else:
        while True:
            lam = float(np.exp(rng.uniform(math.log(0.05), math.log(150.0))))
            if measure.distance_to(lam) >= separation * lam:
                break
    eta = lam * float(10 ** rng.uniform(-2, 1))
    point = EvaluationPoint(lam, eta)
    if random_path and rng.random() < 0.5:
        contour = random_contour(rng, point)
    else:
        contour = default_contour(point)
    return measure, point, contour


_SUITE_PARAMS = {
    "pleijel": [{}],
    "thm1": [{"alpha": 0.5, "regime": GENERAL}, {"alpha": 0.5, "regime": ALPHA_LT_1},
             {"alpha": 1.0, "regime": GENERAL}, {"alpha": 2.0, "regime": GENERAL}],
    "thm2": [{"q": 2}, {"q": 3}, {"q": 4}, {"q": 5}],
    "thm3": [{"q": 2, "alpha": 0.5}, {"q": 2, "alpha": 1.0},
             {"q": 3, "alpha": 0.5}, {"q": 3, "alpha": 1.0}],
}

_REPORTS = {"pleijel": pleijel_report, "thm1": thm1_report,
            "thm2": thm2_report, "thm3": thm3_report}


def run_suite(theorem: str, trials: int, seed: int, *, params: list[dict] | None = None,
              remark1: bool = False, max_atoms: int = 20) -> dict:
    """Randomized verification; trial i uses numpy's PCG64 seeded with (seed, i)
    and cycles through ``params``, so results do not depend on execution order."""
    if theorem not in _REPORTS:
        raise ValueError(f"unknown theorem {theorem!r}")
    if remark1 and theorem not in ("pleijel", "thm1", "thm2"):
        raise ValueError("Remark-1 mode applies to pleijel, thm1 and thm2 only")
    params = params or _SUITE_PARAMS[theorem]
    report = _REPORTS[theorem]
    violations, worst_margin, worst_ratio = [], math.inf, 0.0
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        measure, point, contour = random_instance(rng, remark1=remark1, max_atoms=max_atoms)
        kw = dict(params[i % len(params)])
        if remark1:
            kw["remark1"] = True
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            rep = report(measure, point, contour, **kw)
        worst_margin = min(worst_margin, rep.margin)
        if rep.rhs > 0:
            worst_ratio = max(worst_ratio, rep.lhs / rep.rhs)
        if not rep.holds:
            violations.append({"trial": i, **kw, "margin": rep.margin,
                               "tolerance": rep.tolerance})
    return {"theorem": theorem, "trials": trials, "seed": seed,
            "violations": len(violations), "worst_margin": worst_margin,
            "worst_lhs_rhs_ratio": worst_ratio, "failures": violations}


# --------------------------------------------------------------------------
# Weyl-law demo


@dataclass(frozen=True)
class DemoRow:
    lambda0: float
    riesz_mean: float
    main_term: float
    error_bound: float
    relative_gap: float


def demo_weyl(dimension: int, count: int, alpha: float, lambdas) -> list[DemoRow]:
    """Riesz mean against the contour main term for unit atoms at j^(2/dimension).

    Each lambda0 uses zeta0 = lambda0 + i sqrt(lambda0) and the default contour;
    ``relative_gap`` is |N^(alpha) - main| / N^(alpha).
    """
    measure = weyl_measure(dimension, count)
    top = float(measure.positions[-1])
    rows = []
    for lam in lambdas:
        lam = float(lam)
        if lam > top:
            warnings.warn(f"lambda0={lam:g} exceeds the largest atom {top:g}; "
                          "the truncated spectrum no longer follows Weyl's law",
                          RuntimeWarning, stacklevel=2)
        point = EvaluationPoint(lam, math.sqrt(lam))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            rep = thm1_report(measure, point, alpha=alpha, remark1=True)
        n_alpha = riesz_mean(measure, alpha, lam)
        gap = rep.lhs / n_alpha if n_alpha > 0 else math.inf
        rows.append(DemoRow(lam, n_alpha, rep.main_term.real, rep.rhs, gap))
    return rows
