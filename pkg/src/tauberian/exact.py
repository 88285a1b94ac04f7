"""Exact arithmetic over the Gaussian rationals Q(i).

Small and slow on purpose: degrees stay below ten, and every constant built on
top of these polynomials inherits exactness from here.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = ["GaussianRational", "GaussianRationalPoly", "RationalKernel", "rank", "solve"]


class GaussianRational:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return cls(x, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to GaussianRational")

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n: int):
        if int(n) != n:
            raise ValueError("only integer powers")
        if n < 0:
            return GaussianRational(1) / (self ** -n)
        out, base = GaussianRational(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)


class GaussianRationalPoly:
    """Polynomial in one real variable with Q(i) coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "GaussianRationalPoly":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return GaussianRationalPoly(self.coefficient(k) + other.coefficient(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return GaussianRationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return GaussianRationalPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return GaussianRationalPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GaussianRationalPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            other = _as_poly(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; exact for rational/Gaussian-rational ``x``."""
        exact = isinstance(x, (int, Rational, GaussianRational))
        acc = ZERO if exact else 0j
        for c in reversed(self.coeffs):
            acc = acc * x + (c if exact else complex(c))
        return acc

    def parity(self) -> int | None:
        """+1 if even, -1 if odd, None if mixed (the zero polynomial is even)."""
        degs = [k for k, c in enumerate(self.coeffs) if c]
        if all(k % 2 == 0 for k in degs):
            return 1
        if all(k % 2 == 1 for k in degs):
            return -1
        return None

    def to_complex(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def to_json(self) -> list[list[int]]:
        return [[c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]
                for c in self.coeffs]

    def __repr__(self):
        terms = [f"({complex(c)})*mu^{k}" for k, c in enumerate(self.coeffs) if c]
        return "GaussianRationalPoly(" + (" + ".join(terms) or "0") + ")"


def _as_poly(x) -> GaussianRationalPoly:
    if isinstance(x, GaussianRationalPoly):
        return x
    return GaussianRationalPoly([GaussianRational.coerce(x)])


class RationalKernel:
    """numerator(mu) / (1 + mu**2)**power."""

    __slots__ = ("numerator", "power")

    def __init__(self, numerator: GaussianRationalPoly, power: int):
        if power < 0:
            raise ValueError("power must be nonnegative")
        self.numerator = numerator
        self.power = int(power)

    def __call__(self, mu):
        num = self.numerator(mu)
        if isinstance(mu, (int, Rational, GaussianRational)):
            return num / (GaussianRational.coerce(mu) ** 2 + 1) ** self.power
        return num / (1.0 + mu * mu) ** self.power

    def evaluate(self, mu):
        """Vectorized float evaluation over a numpy array of real ``mu``."""
        import numpy as np

        mu = np.asarray(mu, dtype=float)
        coeffs = self.numerator.to_complex()[::-1] or [0j]
        return np.polyval(coeffs, mu) / (1.0 + mu * mu) ** self.power

    def __eq__(self, other):
        if not isinstance(other, RationalKernel):
            return NotImplemented
        return self.numerator == other.numerator and self.power == other.power

    def __repr__(self):
        return f"RationalKernel({self.numerator!r}, power={self.power})"


def _row_reduce(rows: list[list[GaussianRational]]):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    """Exact rank of a list of coefficient vectors."""
    rows = [[GaussianRational.coerce(x) for x in v] for v in vectors]
    if not rows:
        return 0
    width = max(len(v) for v in rows)
    rows = [v + [ZERO] * (width - len(v)) for v in rows]
    return len(_row_reduce(rows)[1])


def solve(columns: Sequence[GaussianRationalPoly], target: GaussianRationalPoly,
          size: int) -> list[GaussianRational]:
    """Exact coefficients x with sum_m x[m] * columns[m] == target.

    ``size`` is the number of monomials (degrees 0..size-1) in the system.
    Raises ``ArithmeticError`` if the columns do not form a basis.
    """
    n = len(columns)
    rows = [[col.coefficient(k) for col in columns] + [target.coefficient(k)]
            for k in range(size)]
    reduced, pivots = _row_reduce(rows)
    if pivots != list(range(n)):
        raise ArithmeticError("kernel polynomials are linearly dependent")
    for row in reduced[n:]:
        if row[-1]:
            raise ArithmeticError("target lies outside the span of the kernels")
    return [reduced[m][-1] for m in range(n)]
