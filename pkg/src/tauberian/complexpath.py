"""Complex-plane utilities: principal powers, contours, contour quadrature.

Contours are polylines in the complex plane that start at an evaluation point
``zeta0 = lambda0 + i*eta0`` (first quadrant), end at its conjugate and never
touch the closed positive real half-line.  Closing such a polyline with the
vertical segment from ``conj(zeta0)`` up to ``zeta0`` gives a positively
oriented loop around ``(0, lambda0)``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "AmbiguousPointError",
    "AxisCrossingError",
    "Contour",
    "ContourError",
    "EndpointError",
    "EvaluationPoint",
    "OrientationError",
    "QuadratureError",
    "QuadratureResult",
    "beta",
    "branch_pow",
    "contour_from_json",
    "contour_quadrature",
    "contour_to_json",
    "default_contour",
    "log_gamma",
    "make_contour",
    "winding_number",
]


class ContourError(ValueError):
    """Base class for rejected contours."""


class AxisCrossingError(ContourError):
    """A contour segment meets the positive real axis."""


class EndpointError(ContourError):
    """A contour does not run from zeta0 to conj(zeta0)."""


class OrientationError(ContourError):
    """The closed-up contour winds the wrong way around the spectrum."""


class AmbiguousPointError(ValueError):
    """Winding number requested for a point lying on the path."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature hit its depth limit.

    ``partial`` holds the best estimate available when refinement stopped.
    """

    def __init__(self, message: str, partial: "QuadratureResult"):
        super().__init__(message)
        self.partial = partial


# --------------------------------------------------------------------------
# principal branch


def branch_pow(z, alpha: float):
    """Principal power ``exp(alpha * log z)`` with ``-pi < Im log z <= pi``.

    Negative reals always get argument ``+pi``, whatever the sign of a zero
    imaginary part.  ``z = 0`` is allowed only for ``alpha > 0`` and maps to 0.
    Works on scalars and numpy arrays.
    """
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=complex)
    zero = z == 0
    if np.any(zero) and not alpha > 0:
        raise ZeroDivisionError("branch_pow(0, alpha) needs alpha > 0")
    safe = np.where(zero, 1.0, z)
    log_z = np.log(safe)
    on_cut = (safe.imag == 0) & (safe.real < 0)
    if np.any(on_cut):
        log_z = np.where(on_cut, log_z.real + 1j * np.pi, log_z)
    out = np.exp(alpha * log_z)
    if np.any(zero):
        out = np.where(zero, 0.0, out)
    return complex(out) if scalar else out


# --------------------------------------------------------------------------
# special functions


def log_gamma(x: float) -> float:
    if not x > 0:
        raise ValueError(f"log_gamma needs a positive argument, got {x!r}")
    return math.lgamma(x)


def beta(x: float, y: float) -> float:
    """Euler Beta function ``Gamma(x) Gamma(y) / Gamma(x + y)``."""
    if not (x > 0 and y > 0):
        raise ValueError(f"beta needs positive arguments, got ({x!r}, {y!r})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


# --------------------------------------------------------------------------
# evaluation points and contours


@dataclass(frozen=True)
class EvaluationPoint:
    lambda0: float
    eta0: float

    def __post_init__(self):
        if not (self.lambda0 > 0 and self.eta0 > 0):
            raise ValueError(
                f"zeta0 must lie in the open first quadrant, got "
                f"lambda0={self.lambda0!r}, eta0={self.eta0!r}")

    @property
    def zeta0(self) -> complex:
        return complex(self.lambda0, self.eta0)

    @property
    def conjugate(self) -> complex:
        return complex(self.lambda0, -self.eta0)

    @classmethod
    def from_complex(cls, z: complex) -> "EvaluationPoint":
        return cls(float(z.real), float(z.imag))


@dataclass(frozen=True)
class Contour:
    """Validated polyline from zeta0 to conj(zeta0); build with make_contour."""

    vertices: tuple

    @property
    def start(self) -> complex:
        return self.vertices[0]

    @property
    def end(self) -> complex:
        return self.vertices[-1]

    @property
    def point(self) -> EvaluationPoint:
        return EvaluationPoint.from_complex(self.start)

    def reversed(self) -> tuple:
        """Vertices traversed from conj(zeta0) back to zeta0."""
        return tuple(reversed(self.vertices))

    def closed(self) -> tuple:
        """Vertices of the loop Gamma + [conj(zeta0), zeta0] (implicitly closed)."""
        return self.vertices

    def digest(self) -> str:
        return ";".join(f"{v.real:.12g}{v.imag:+.12g}j" for v in self.vertices)


def _segment_ray_distance(a: complex, b: complex) -> float:
    """Distance between segment [a, b] and the closed ray [0, +inf)."""
    ya, yb = a.imag, b.imag
    if ya * yb <= 0 and (ya != 0 or yb != 0):
        t = ya / (ya - yb)
        x = a.real + t * (b.real - a.real)
        if x >= 0:
            return 0.0
    elif ya == 0 and yb == 0:
        if max(a.real, b.real) >= 0:
            return 0.0
        return -max(a.real, b.real)

    def to_ray(z):
        return abs(z.imag) if z.real >= 0 else abs(z)

    return min(to_ray(a), to_ray(b), _point_segment_distance(0j, a, b))


def _point_segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


def winding_number(vertices: Sequence[complex], point: complex,
                   *, on_path_tol: float = 1e-9) -> int:
    """Winding number of the closed polyline through ``vertices`` about ``point``.

    The polyline is closed implicitly from the last vertex back to the first.
    """
    vs = [complex(v) for v in vertices]
    if len(vs) < 2:
        raise ValueError("need at least two vertices")
    loop = vs + [vs[0]]
    total = 0.0
    for a, b in zip(loop[:-1], loop[1:]):
        if _point_segment_distance(point, a, b) < on_path_tol:
            raise AmbiguousPointError(f"point {point!r} lies on the path")
        total += cmath.phase((b - point) / (a - point))
    turns = total / (2 * math.pi)
    n = round(turns)
    if abs(turns - n) > 1e-6:
        raise AmbiguousPointError(f"non-integer winding {turns!r}")
    return int(n)


def make_contour(vertices: Iterable[complex], *, clearance: float = 1e-12) -> Contour:
    """Validate a polyline from zeta0 to conj(zeta0).

    Every segment must stay at least ``clearance * lambda0`` away from the
    closed positive real axis, and the loop closed by the vertical segment
    ``[conj(zeta0), zeta0]`` must wind once around ``lambda0/2`` and not at
    all around ``2*lambda0``.
    """
    vs = tuple(complex(v) for v in vertices)
    if len(vs) < 2:
        raise EndpointError("a contour needs at least two vertices")
    z0 = vs[0]
    if not (z0.imag > 0 and z0.real > 0):
        raise EndpointError(f"first vertex {z0!r} is not in the open first quadrant")
    if vs[-1] != z0.conjugate():
        raise EndpointError(f"last vertex {vs[-1]!r} is not conj({z0!r})")
    lam0 = z0.real
    for a, b in zip(vs[:-1], vs[1:]):
        if _segment_ray_distance(a, b) < clearance * lam0:
            raise AxisCrossingError(f"segment [{a!r}, {b!r}] meets the positive real axis")
    try:
        inside = winding_number(vs, complex(lam0 / 2))
        outside = winding_number(vs, complex(2 * lam0))
    except AmbiguousPointError as exc:  # pragma: no cover - excluded by the axis check
        raise OrientationError(str(exc)) from exc
    if inside != 1 or outside != 0:
        raise OrientationError(
            f"closed contour winds {inside} times around lambda0/2 and "
            f"{outside} times around 2*lambda0 (expected 1 and 0)")
    return Contour(vs)


def default_contour(point: EvaluationPoint) -> Contour:
    """Rectangle zeta0 -> -lambda0 + i eta0 -> -lambda0 - i eta0 -> conj(zeta0)."""
    lam, eta = point.lambda0, point.eta0
    return make_contour([complex(lam, eta), complex(-lam, eta),
                         complex(-lam, -eta), complex(lam, -eta)])


def contour_to_json(contour: Contour) -> dict:
    return {"vertices": [{"re": v.real, "im": v.imag} for v in contour.vertices]}


def contour_from_json(data: dict) -> Contour:
    try:
        raw = data["vertices"]
        vertices = [complex(float(v["re"]), float(v["im"])) for v in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise ContourError(f"malformed contour JSON: {exc}") from exc
    return make_contour(vertices)


# --------------------------------------------------------------------------
# adaptive Gauss-Kronrod quadrature

# 7-point Gauss / 15-point Kronrod pair (QUADPACK qk15), nodes on [-1, 1]
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_ROUNDOFF = 50 * np.finfo(float).eps
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # ascending, 15 nodes
_KRONROD = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS = np.zeros(15)
_GAUSS[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


@dataclass(frozen=True)
class QuadratureResult:
    value: complex | np.ndarray
    error_estimate: float
    evaluations: int


def _as_path(path) -> list[complex]:
    if isinstance(path, Contour):
        return list(path.vertices)
    vs = [complex(v) for v in path]
    if len(vs) < 2:
        raise ValueError("a path needs at least two points")
    return vs


def _breakpoints(a: complex, b: complex, singularities: Sequence[complex],
                 pieces: int, nearest: int = 8) -> np.ndarray:
    """Initial parameter breakpoints on [0, 1] for segment [a, b].

    The ``nearest`` singularities closest to the segment get a geometric
    cluster of breakpoints around their projection so narrow peaks cannot slip
    between Kronrod nodes; farther ones are left to adaptive refinement.
    """
    ts = set(np.linspace(0.0, 1.0, pieces + 1).tolist())
    sing = np.asarray(singularities, dtype=complex).ravel()
    if sing.size:
        d = b - a
        length = abs(d)
        t = ((sing - a) * np.conj(d)).real / length ** 2
        tc = np.clip(t, 0.0, 1.0)
        width = np.abs(sing - (a + tc * d)) / length
        ok = (width <= 0.25) & (t >= -0.25) & (t <= 1.25)
        order = np.argsort(width[ok], kind="stable")[:nearest]
        for tj, wj in zip(tc[ok][order], width[ok][order]):
            ts.add(float(tj))
            step = max(float(wj), 1e-12)
            while step < 1.0:
                for c in (tj - step, tj + step):
                    if 0.0 < c < 1.0:
                        ts.add(float(c))
                step *= 4.0
    return np.array(sorted(ts))


def contour_quadrature(f: Callable[[np.ndarray], np.ndarray], path, tol: float = 1e-10,
                       *, rtol: float = 1e-12, singularities: Sequence[complex] = (),
                       max_depth: int = 40, pieces: int = 4,
                       max_panels: int = 50_000) -> QuadratureResult:
    """Integrate ``f(z) dz`` along a polyline with globally adaptive G7-K15.

    ``f`` takes a 1-d complex array and returns an array of the same length,
    optionally with a trailing axis for several integrands at once.  Intervals
    whose Kronrod/Gauss discrepancy exceeds their share of the error budget are
    bisected until the summed estimate is below ``max(tol, rtol*|I|)``.

    ``singularities`` lists nearby poles or branch points off the path; they
    only seed the initial subdivision.  Each panel's error estimate is floored
    at 50 machine epsilons times the integral of |f| over it, so tolerances
    below the roundoff level end refinement instead of driving it forever.
    There is no extrapolation step: endpoint singularities like t^(-1/2) need
    a hint at the endpoint, stronger ones may not converge.
    """
    vs = _as_path(path)
    seg_a, seg_d, t0, t1 = [], [], [], []
    for a, b in zip(vs[:-1], vs[1:]):
        if a == b:
            continue
        bp = _breakpoints(a, b, singularities, pieces)
        n = len(bp) - 1
        seg_a.extend([a] * n)
        seg_d.extend([b - a] * n)
        t0.extend(bp[:-1])
        t1.extend(bp[1:])
    if not seg_a:
        return QuadratureResult(0j, 0.0, 0)

    seg_a = np.array(seg_a)
    seg_d = np.array(seg_d)
    t0 = np.array(t0)
    t1 = np.array(t1)
    depth = np.zeros(len(t0), dtype=int)

    def evaluate(a, d, lo, hi):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        t = mid[:, None] + half[:, None] * _NODES[None, :]
        z = a[:, None] + d[:, None] * t
        vals = np.asarray(f(z.ravel()), dtype=complex)
        vals = vals.reshape(z.shape + vals.shape[1:])
        scale = (d * half).reshape((-1,) + (1,) * (vals.ndim - 2))
        k = np.einsum("ij...,j->i...", vals, _KRONROD) * scale
        g = np.einsum("ij...,j->i...", vals, _GAUSS)
        err = np.abs(k - g * scale)
        absint = np.einsum("ij...,j->i...", np.abs(vals), _KRONROD) * np.abs(scale)
        if err.ndim > 1:
            err = err.max(axis=tuple(range(1, err.ndim)))
            absint = absint.max(axis=tuple(range(1, absint.ndim)))
        # Kronrod/Gauss differences below roundoff carry no information
        floor = _ROUNDOFF * absint
        return k, np.maximum(err, floor), floor, z.size

    vals, errs, floors, nev = evaluate(seg_a, seg_d, t0, t1)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("integrand is not finite on the path")
    while True:
        total = vals.sum(axis=0)
        total_err = float(errs.sum())
        goal = max(tol, rtol * float(np.max(np.abs(total))), 2.0 * float(floors.sum()))
        if total_err <= goal:
            break
        pick = (errs > goal / len(errs)) & (errs > floors)
        pick[np.argmax(errs)] = True
        if np.any(depth[pick] >= max_depth) or len(errs) + pick.sum() > max_panels:
            partial = QuadratureResult(_scalar(total), total_err, nev)
            raise QuadratureError(
                f"no convergence within {max_depth} bisections / {max_panels} panels "
                f"(error {total_err:.3g} > goal {goal:.3g})", partial)
        keep = ~pick
        mid = 0.5 * (t0[pick] + t1[pick])
        na = np.concatenate([seg_a[pick], seg_a[pick]])
        nd = np.concatenate([seg_d[pick], seg_d[pick]])
        nlo = np.concatenate([t0[pick], mid])
        nhi = np.concatenate([mid, t1[pick]])
        ndepth = np.concatenate([depth[pick], depth[pick]]) + 1
        new_vals, new_errs, new_floors, n_new = evaluate(na, nd, nlo, nhi)
        if not np.all(np.isfinite(new_vals)):
            raise FloatingPointError("integrand is not finite on the path")
        nev += n_new
        seg_a = np.concatenate([seg_a[keep], na])
        seg_d = np.concatenate([seg_d[keep], nd])
        t0 = np.concatenate([t0[keep], nlo])
        t1 = np.concatenate([t1[keep], nhi])
        depth = np.concatenate([depth[keep], ndepth])
        vals = np.concatenate([vals[keep], new_vals])
        errs = np.concatenate([errs[keep], new_errs])
        floors = np.concatenate([floors[keep], new_floors])
    return QuadratureResult(_scalar(total), total_err, nev)


def _scalar(total):
    return complex(total) if np.ndim(total) == 0 else total
