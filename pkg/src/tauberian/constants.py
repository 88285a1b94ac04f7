"""Explicit constants of the Riesz-mean and generalized-transform inequalities.

``thm1_constants`` gives the closed-form pair (c1, c2) controlling the
pointwise bound checked by :func:`eq11_margin`; ``thm2_constants`` and
``thm3_constants`` assemble the remainder weights C_m from an exact kernel
combination and a numerically searched supremum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .complexpath import beta, branch_pow, contour_quadrature
from .kernels import (frac_leading_coeff, h_kernel, h_target, leading_coeff,
                      solve_combination, t_eval, t_frac_eval, t_frac_grid)

__all__ = [
    "ConstructionError",
    "GENERAL",
    "ALPHA_LT_1",
    "Thm1Constants",
    "Thm2Constants",
    "Thm3Constants",
    "eq11_margin",
    "golden_max",
    "p2_coefficients",
    "sup_ratio",
    "thm1_constants",
    "thm2_constants",
    "thm3_constants",
]

GENERAL = "general"
ALPHA_LT_1 = "alpha_lt_1"

_INV_PHI = (math.sqrt(5) - 1) / 2


class ConstructionError(ArithmeticError):
    """The supremum defining C does not look finite."""


@dataclass(frozen=True)
class Thm1Constants:
    alpha: float
    a: float
    b: float
    c1: complex
    c2: float
    c3: float
    regime: str

    @property
    def multiplier(self) -> float:
        """Published factor: 1/(alpha pi), or sqrt(1/pi^2 + 1/4) when alpha < 1."""
        if self.regime == ALPHA_LT_1:
            return math.sqrt(math.pi ** -2 + 0.25)
        return 1.0 / (self.alpha * math.pi)

    @property
    def sharp_multiplier(self) -> float:
        return self.c3 / (2 * math.pi)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "a": self.a, "b": self.b,
                "c1": {"re": self.c1.real, "im": self.c1.imag},
                "c2": self.c2, "c3": self.c3, "regime": self.regime,
                "multiplier": self.multiplier, "sharp_multiplier": self.sharp_multiplier}


def thm1_constants(alpha: float, regime: str = GENERAL) -> Thm1Constants:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if regime not in (GENERAL, ALPHA_LT_1):
        raise ValueError(f"unknown regime {regime!r}")
    if regime == ALPHA_LT_1 and not alpha < 1:
        raise ValueError("the alpha_lt_1 regime needs alpha < 1")
    a = math.sin(math.pi * alpha / 2)
    b = math.cos(math.pi * alpha / 2)
    c1 = 2 * b / (alpha + 1) * complex(b, a)
    if regime == GENERAL:
        c2 = 2 * (abs(a) * (alpha + 1) ** 2 + math.sqrt(a * a + alpha * (alpha + 2))) / (
            alpha * (alpha + 1) * (alpha + 2))
    else:
        c2 = 2 * abs(a) / alpha
    c3 = math.sqrt(abs(c1) ** 2 + c2 ** 2)
    return Thm1Constants(alpha, a, b, c1, c2, c3, regime)


def p2_coefficients(alpha: float, c2: float | None = None) -> tuple[float, float, float]:
    """Coefficients (lead, linear, constant) of the quadratic whose
    nonnegativity certifies the pointwise bound; c2 defaults to the general one."""
    k = thm1_constants(alpha)
    if c2 is None:
        c2 = k.c2
    lead = c2 * alpha - 2 * abs(k.a)
    lin = -4 * abs(k.b) / (alpha + 1)
    return lead, lin, lead + 2 * c2


def eq11_margin(alpha: float, u: float, s: int, constants: Thm1Constants | None = None,
                tol: float = 1e-13) -> float:
    """LHS minus RHS of the pointwise bound at (u, s); <= 0 certifies it.

    |u^-a int_{-u}^{u} tau^a (s + i tau) / (1 + tau^2) d tau - c1 s u / (1 + u^2)|
        - c2 u^2 / (1 + u^2)
    """
    if not u > 0:
        raise ValueError(f"u must be positive, got {u!r}")
    if s not in (1, -1):
        raise ValueError("s must be +1 or -1")
    k = constants if constants is not None else thm1_constants(alpha)

    def integrand(tau):
        return branch_pow(tau, alpha) * (s + 1j * tau) / (1 + tau * tau)

    res = contour_quadrature(integrand, [-u, 0.0, u], tol, rtol=1e-14,
                             singularities=[1j, -1j])
    lhs = abs(res.value / u ** alpha - k.c1 * s * u / (1 + u * u))
    return lhs - k.c2 * u * u / (1 + u * u)


# --------------------------------------------------------------------------
# supremum search


def golden_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-12,
               max_iter: int = 200) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal f on [a, b]."""
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol * (abs(a) + abs(b)):
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc > fd else (d, fd)


def sup_ratio(grid_fn: Callable[[np.ndarray], np.ndarray],
              point_fn: Callable[[float], float],
              limit0: float, limit_inf: float, *, both_signs: bool = False,
              lo: float = 1e-6, hi: float = 1e6, n_grid: int = 10_000,
              growth_tol: float = 1e-2) -> tuple[float, float]:
    """Supremum over mu of a ratio given on a log grid plus its two end limits.

    Returns ``(sup, argmax)``; ``argmax`` is 0.0 or inf when a limit wins.
    Interior maxima are refined by golden-section search in log(mu).
    """
    mus = np.geomspace(lo, hi, n_grid)
    top = min(int(np.searchsorted(mus, hi / 10)), n_grid - 2)
    bottom = max(int(np.searchsorted(mus, lo * 10)), 1)
    best, where = limit0, 0.0
    if limit_inf > best:
        best, where = limit_inf, math.inf
    for sign in ((1.0, -1.0) if both_signs else (1.0,)):
        vals = np.asarray(grid_fn(sign * mus), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise ConstructionError("ratio is not finite on the search grid")
        # compare each end with the value one decade inwards, so rounding
        # noise between neighbouring grid points is not mistaken for growth
        if (vals[-1] > vals[top] * (1 + growth_tol)
                and vals[-1] > limit_inf * (1 + growth_tol)):
            raise ConstructionError("ratio still growing at the upper end of the grid")
        if (vals[0] > vals[bottom] * (1 + growth_tol)
                and vals[0] > limit0 * (1 + growth_tol)):
            raise ConstructionError("ratio still growing at the lower end of the grid")
        i = int(np.argmax(vals))
        cand, arg = float(vals[i]), sign * float(mus[i])
        if 0 < i < n_grid - 1:
            x, fx = golden_max(lambda t: point_fn(sign * math.exp(t)),
                               math.log(mus[i - 1]), math.log(mus[i + 1]))
            if fx > cand:
                cand, arg = fx, sign * math.exp(x)
        if cand > best:
            best, where = cand, arg
    return best, where


@dataclass(frozen=True)
class Thm2Constants:
    q: int
    combo: tuple
    C: float
    extra_ratio: float
    C_m: tuple
    argmax: float = field(default=math.nan)

    def to_json(self) -> dict:
        return {"q": self.q,
                "combo": [{"re": str(c.re), "im": str(c.im)} for c in self.combo],
                "sup": self.C, "extra_ratio": self.extra_ratio,
                "C": list(self.C_m), "argmax": _json_float(self.argmax)}


@dataclass(frozen=True)
class Thm3Constants(Thm2Constants):
    alpha: float = math.nan
    B: float = math.nan

    def to_json(self) -> dict:
        out = super().to_json()
        out.update(alpha=self.alpha, B=self.B, alpha_B=self.alpha * self.B)
        return out


def _json_float(x: float):
    return "inf" if math.isinf(x) else x


def _assemble(q: int, sup: float, extra: float) -> tuple:
    combo = solve_combination(q)
    weights = [float(sup * abs(complex(c))) for c in combo]
    if q % 2 == 1:
        weights[0] += float(extra)
    return tuple(weights)


def _h_limits(q: int) -> tuple[float, float]:
    """H_q(0) and the leading coefficient of H_q at infinity."""
    num = h_target(q)
    return float(num.coefficient(0).re), float(num.coeffs[-1].re)


@lru_cache(maxsize=None)
def thm2_constants(q: int, n_grid: int = 10_000) -> Thm2Constants:
    """C = sup |T_{q,q-1}(mu) - r T_{q,0}(mu)| / H_q(mu) over mu > 0, r = 0 for even q."""
    if int(q) != q or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    q = int(q)
    hk = h_kernel(q)
    ratio = leading_coeff(q, q - 1) / leading_coeff(q, 0) if q % 2 else 0.0

    def grid_fn(mu):
        t = t_eval(q, q - 1, mu)
        if q % 2:
            t = t - ratio * t_eval(q, 0, mu)
        return np.abs(t) / hk.evaluate(mu).real

    def point_fn(mu):
        return float(grid_fn(np.array([mu]))[0])

    h0, _ = _h_limits(q)
    # T_{q,q-1}(0+) = -i^(q+1) pi and T_{q,0}(0) = 0 for odd q; the ratio -> 0 at infinity
    sup, arg = sup_ratio(grid_fn, point_fn, math.pi / h0, 0.0, n_grid=n_grid)
    extra = float(abs(ratio))
    return Thm2Constants(q, solve_combination(q), sup, extra, _assemble(q, sup, extra), arg)


@lru_cache(maxsize=None)
def thm3_constants(q: int, alpha: float, n_grid: int = 10_000) -> Thm3Constants:
    """Same construction with T_{q,q-1+alpha}; no parity, so both signs of mu are searched."""
    if int(q) != q or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    q = int(q)
    hk = h_kernel(q)
    p = q - 1 + alpha
    ratio = frac_leading_coeff(q, alpha) / leading_coeff(q, 0) if q % 2 else 0.0

    def grid_fn(mu):
        t = t_frac_grid(q, alpha, mu)
        if q % 2:
            t = t - ratio * t_eval(q, 0, mu)
        return np.abs(t) / hk.evaluate(mu).real

    def point_fn(mu):
        t = t_frac_eval(q, alpha, mu)
        if q % 2:
            t -= ratio * t_eval(q, 0, mu)
        return abs(t) / hk(mu).real

    h0, h_inf = _h_limits(q)
    limit0 = abs(1 - np.exp(1j * np.pi * alpha)) / alpha / h0
    if q % 2:
        limit_inf = q * abs(1 - np.exp(1j * np.pi * p)) / (p + 2) / h_inf
    else:
        limit_inf = abs(frac_leading_coeff(q, alpha)) / h_inf
    sup, arg = sup_ratio(grid_fn, point_fn, limit0, limit_inf, both_signs=True, n_grid=n_grid)
    extra = float(abs(ratio))
    return Thm3Constants(q, solve_combination(q), sup, extra, _assemble(q, sup, extra), arg,
                         alpha=float(alpha), B=beta(q, alpha))
