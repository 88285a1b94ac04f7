"""The kernel family T_{q,m}(mu) = int_{-1}^{1} tau^m (mu - i tau)^{-q} d tau.

For ``m <= q - 2`` the kernel is rational, ``P_{q,m}(mu) / (1 + mu^2)^(q-1)``
with ``P_{q,m}`` computed exactly over Q(i).  The critical index ``m = q - 1``
picks up an arctangent; the fractional order ``q - 1 + alpha`` is integrated
numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .complexpath import branch_pow, contour_quadrature
from .exact import I, GaussianRational, GaussianRationalPoly, RationalKernel, rank, solve

__all__ = [
    "KernelBasis",
    "SingularArgumentError",
    "basis_rank",
    "frac_leading_coeff",
    "h_kernel",
    "h_target",
    "kernel_basis",
    "kernels_json",
    "leading_coeff",
    "solve_combination",
    "t_eval",
    "t_frac_eval",
    "t_frac_grid",
    "t_poly",
]

# |mu| at which T_{q,q-1} switches from the closed form to the Laurent series
SERIES_SWITCH = 2.0
_SERIES_TERMS = 160
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


class SingularArgumentError(ValueError):
    """mu = 0, where the kernel integral is not absolutely convergent."""


def _check_q(q: int) -> int:
    if int(q) != q or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    return int(q)


@lru_cache(maxsize=None)
def t_poly(q: int, m: int) -> RationalKernel:
    """Exact rational form of T_{q,m}, valid for 0 <= m <= q - 2.

    With u = mu - i tau the integrand becomes i^(m+1) (u - mu)^m u^(-q) du;
    expanding binomially, no u^(-1) term appears, so each antiderivative is a
    power of mu -/+ i and the common denominator is (1 + mu^2)^(q-1).
    """
    q = _check_q(q)
    if not 0 <= m <= q - 2:
        raise ValueError(f"t_poly needs 0 <= m <= q-2, got q={q}, m={m}")
    mu = GaussianRationalPoly([0, 1])
    plus = GaussianRationalPoly([I, 1])        # mu + i
    minus = GaussianRationalPoly([-I, 1])      # mu - i
    base = GaussianRationalPoly([1, 0, 1])     # 1 + mu^2
    total = GaussianRationalPoly()
    for k in range(m + 1):
        j = q - 1 - k
        # (mu - i)^(-j) - (mu + i)^(-j) over (1 + mu^2)^(q-1)
        diff = (plus ** j - minus ** j) * base ** (q - 1 - j)
        coeff = GaussianRational(math.comb(m, k) * (-1) ** (m - k)) / GaussianRational(-j)
        total = total + (mu ** (m - k)) * diff * coeff
    return RationalKernel(total * (I ** (m + 1)), q - 1)


@dataclass(frozen=True)
class KernelBasis:
    q: int
    members: tuple

    @property
    def rank(self) -> int:
        return rank([p.coeffs for p in self.members])


@lru_cache(maxsize=None)
def kernel_basis(q: int) -> KernelBasis:
    q = _check_q(q)
    return KernelBasis(q, tuple(t_poly(q, m).numerator for m in range(q - 1)))


def basis_rank(q: int) -> int:
    return kernel_basis(q).rank


def leading_coeff(q: int, m: int) -> complex:
    """b_{q,m}: T_{q,m} ~ b mu^-q (m even) or b mu^-(q+1) (m odd) as mu -> inf."""
    q = _check_q(q)
    if not 0 <= m <= q - 1:
        raise ValueError(f"leading_coeff needs 0 <= m <= q-1, got q={q}, m={m}")
    if m % 2 == 0:
        return complex(2.0 / (m + 1))
    return complex(0.0, 2.0 * q / (m + 2))


def frac_leading_coeff(q: int, alpha: float) -> complex:
    """Coefficient of mu^-q in T_{q,q-1+alpha}: the integral of branch_pow(tau, q-1+alpha)."""
    p = q - 1 + alpha
    return (1 + np.exp(1j * np.pi * p)) / (p + 1)


def h_target(q: int) -> GaussianRationalPoly:
    """Numerator of H_q: 1 + mu^(q-2) for even q, 1 + mu^(q-3) for odd q."""
    q = _check_q(q)
    deg = q - 2 if q % 2 == 0 else q - 3
    return GaussianRationalPoly([1]) + GaussianRationalPoly.monomial(deg)


def h_kernel(q: int) -> RationalKernel:
    return RationalKernel(h_target(q), q - 1)


@lru_cache(maxsize=None)
def solve_combination(q: int) -> tuple:
    """Exact coefficients c_m (m = 0..q-2) with sum_m c_m P_{q,m} = numerator of H_q."""
    q = _check_q(q)
    return tuple(solve(kernel_basis(q).members, h_target(q), q - 1))


# --------------------------------------------------------------------------
# numerical evaluation


def _laurent(q: int, moments: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """sum_n C(q+n-1, n) i^n moments[n] mu^(-q-n), convergent for |mu| > 1."""
    n = np.arange(len(moments))
    binom = np.array([float(math.comb(q + k - 1, k)) for k in n])
    coeff = binom * (1j ** n) * moments
    inv = 1.0 / mu
    powers = inv[:, None] ** n[None, :]
    return (powers @ coeff) * inv ** q


def _int_moments(m: int, count: int) -> np.ndarray:
    k = m + np.arange(count)
    return np.where(k % 2 == 0, 2.0 / (k + 1), 0.0)


def _frac_moments(p: float, count: int) -> np.ndarray:
    k = p + np.arange(count)
    return (1 + np.exp(1j * np.pi * k)) / (k + 1)


def _critical_closed(q: int, mu: np.ndarray) -> np.ndarray:
    acc = -2j * np.arctan(1.0 / mu)
    for k in range(q - 1):
        e = k - q + 1
        acc = acc + math.comb(q - 1, k) * (-mu) ** (q - 1 - k) * (
            (mu - 1j) ** e - (mu + 1j) ** e) / e
    return (1j ** q) * acc


def _critical(q: int, mu: np.ndarray) -> np.ndarray:
    out = np.empty(mu.shape, dtype=complex)
    far = np.abs(mu) >= SERIES_SWITCH
    if np.any(far):
        out[far] = _laurent(q, _int_moments(q - 1, _SERIES_TERMS), mu[far])
    if np.any(~far):
        out[~far] = _critical_closed(q, mu[~far])
    return out


def t_eval(q: int, m: int, mu):
    """T_{q,m}(mu) for 0 <= m <= q - 1 and real mu != 0 (scalar or array)."""
    q = _check_q(q)
    if not 0 <= m <= q - 1:
        raise ValueError(f"t_eval needs 0 <= m <= q-1, got q={q}, m={m}")
    scalar = np.ndim(mu) == 0
    x = np.atleast_1d(np.asarray(mu, dtype=float))
    if np.any(x == 0):
        raise SingularArgumentError("T_{q,m} is singular at mu = 0")
    if m <= q - 2:
        out = t_poly(q, m).evaluate(x)
    else:
        out = _critical(q, x)
    return complex(out[0]) if scalar else out


def t_frac_eval(q: int, alpha: float, mu: float, tol: float = 1e-10) -> complex:
    """T_{q,q-1+alpha}(mu) by adaptive quadrature, split at tau = 0.

    On the negative half tau^(q-1+alpha) is the principal branch, i.e.
    |tau|^(q-1+alpha) exp(i pi (q-1+alpha)).
    """
    q = _check_q(q)
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    mu = float(mu)
    if mu == 0:
        raise SingularArgumentError("T_{q,q-1+alpha} is evaluated only for mu != 0")
    p = q - 1 + alpha

    def integrand(tau):
        return branch_pow(tau, p) / (mu - 1j * tau) ** q

    res = contour_quadrature(integrand, [-1.0, 0.0, 1.0], tol, rtol=1e-13,
                             singularities=[-1j * mu])
    return complex(res.value)


def _frac_panel_sum(q: int, p: float, mu: float) -> complex:
    """int_0^1 tau^p (mu - i tau)^-q on a mesh graded geometrically towards 0."""
    r = min(abs(mu), 1.0)
    edges = [r * 2.0 ** k for k in range(-45, 1)]
    x = edges[-1] * 2.0
    while x < 1.0:
        edges.append(x)
        x *= 2.0
    edges = np.array([0.0] + [e for e in edges if e < 1.0] + [1.0])
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    tau = (0.5 * (hi + lo))[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = tau ** p / (mu - 1j * tau) ** q
    return complex(np.sum((vals @ _GL_WEIGHTS) * half))


def t_frac_grid(q: int, alpha: float, mu) -> np.ndarray:
    """Vectorized T_{q,q-1+alpha} for sup searches over many mu.

    Laurent series for |mu| >= 2; otherwise a fixed graded Gauss-Legendre mesh
    on [0, 1] folded with T = A + exp(i pi p) conj(A).  Checked against
    :func:`t_frac_eval` in the test suite.
    """
    q = _check_q(q)
    p = q - 1 + alpha
    mu = np.atleast_1d(np.asarray(mu, dtype=float))
    out = np.empty(mu.shape, dtype=complex)
    far = np.abs(mu) >= SERIES_SWITCH
    if np.any(far):
        out[far] = _laurent(q, _frac_moments(p, _SERIES_TERMS), mu[far])
    phase = np.exp(1j * np.pi * p)
    for idx in np.flatnonzero(~far):
        a = _frac_panel_sum(q, p, float(mu[idx]))
        out[idx] = a + phase * np.conj(a)
    return out


def kernels_json(q: int) -> list[dict]:
    """P_{q,m} tables, one record per m = 0..q-2."""
    q = _check_q(q)
    return [{"q": q, "m": m, "numerator": t_poly(q, m).numerator.to_json(), "power": q - 1}
            for m in range(q - 1)]
