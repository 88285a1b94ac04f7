import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tauberian.complexpath import beta
from tauberian.constants import (ALPHA_LT_1, GENERAL, ConstructionError, eq11_margin,
                                 golden_max, p2_coefficients, sup_ratio, thm1_constants,
                                 thm2_constants, thm3_constants)
from tauberian.kernels import t_eval


def test_thm1_alpha_one():
    k = thm1_constants(1.0)
    assert (k.a, abs(k.c1), k.c2, k.c3) == pytest.approx((1, 0, 2, 2), abs=1e-12)
    assert k.multiplier == pytest.approx(1 / math.pi)


def test_thm1_alpha_two():
    k = thm1_constants(2.0)
    assert k.a == pytest.approx(0, abs=1e-15)
    assert k.b == pytest.approx(-1)
    assert k.c1 == pytest.approx(2 / 3)
    assert k.c2 == pytest.approx(math.sqrt(2) / 6)
    assert k.c3 == pytest.approx(math.sqrt(0.5))
    assert k.c3 <= 2 / k.alpha


def test_thm1_alpha_half_lt1():
    k = thm1_constants(0.5, ALPHA_LT_1)
    assert k.c2 == pytest.approx(2 * math.sqrt(2))
    expected = 2 * math.sqrt((math.cos(math.pi / 4) / 1.5) ** 2 + (math.sin(math.pi / 4) / 0.5) ** 2)
    assert k.c3 == pytest.approx(expected)
    assert k.c3 <= math.sqrt(4 + math.pi ** 2)
    assert k.multiplier == pytest.approx(math.sqrt(math.pi ** -2 + 0.25))


@pytest.mark.parametrize("alpha, regime", [(0, GENERAL), (-1, GENERAL), (1.0, ALPHA_LT_1),
                                           (0.5, "other")])
def test_thm1_rejects(alpha, regime):
    with pytest.raises(ValueError):
        thm1_constants(alpha, regime)


@given(st.floats(1e-3, 20))
def test_thm1_invariants(alpha):
    k = thm1_constants(alpha)
    assert k.a ** 2 + k.b ** 2 == pytest.approx(1)
    lo, hi = abs(k.a) / alpha, (abs(k.a) * (alpha + 1) + 1) / (alpha * (alpha + 2))
    assert lo - 1e-12 <= k.c2 / 2 <= hi + 1e-12
    assert k.c3 <= 2 / alpha + 1e-12
    assert k.sharp_multiplier <= k.multiplier + 1e-12


@given(st.floats(1e-3, 0.999))
def test_thm1_lt1_bound(alpha):
    assert thm1_constants(alpha, ALPHA_LT_1).c3 <= math.sqrt(4 + math.pi ** 2) + 1e-12


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.5, 1.0, 1.7, 2.0, 4.5])
def test_p2_discriminant_vanishes(alpha):
    lead, lin, const = p2_coefficients(alpha)
    assert lead >= 0
    assert lin ** 2 - 4 * lead * const == pytest.approx(0, abs=1e-12 * max(1, lin ** 2))


@pytest.mark.parametrize("alpha, u, s", [(1, 1, 1), (1, 1e-4, 1), (2, 10, -1), (0.5, 3, 1)])
def test_eq11_examples(alpha, u, s):
    assert eq11_margin(alpha, u, s) <= 1e-10


def test_eq11_small_u_tends_to_zero():
    m = eq11_margin(1.0, 1e-4, 1)
    assert -1e-7 < m <= 1e-12


def test_eq11_fails_with_small_c2():
    # shrinking c2 below the discriminant root must break the pointwise bound somewhere
    k = thm1_constants(1.0)
    from dataclasses import replace
    weak = replace(k, c2=0.5 * k.c2)
    assert max(eq11_margin(1.0, u, s, weak) for u in np.geomspace(1e-2, 1e2, 9)
               for s in (1, -1)) > 0


def test_eq11_rejects():
    with pytest.raises(ValueError):
        eq11_margin(1.0, 0.0, 1)
    with pytest.raises(ValueError):
        eq11_margin(1.0, 1.0, 0)


@pytest.mark.parametrize("alpha", [0.1, 0.25, 0.5, 0.75, 0.9])
def test_beta_identity(alpha):
    a, b = math.sin(math.pi * alpha / 2), math.cos(math.pi * alpha / 2)
    left = abs(a) / alpha * beta((alpha + 2) / 2, (2 - alpha) / 2)
    right = abs(b) / (alpha + 1) * beta((alpha + 3) / 2, (1 - alpha) / 2)
    assert left == pytest.approx(right, rel=1e-10)


def test_golden_max():
    x, fx = golden_max(lambda t: -(t - 0.3) ** 2 + 2, -1, 1)
    assert x == pytest.approx(0.3, abs=1e-6)
    assert fx == pytest.approx(2)


def test_sup_ratio_interior_and_limits():
    grid = lambda mu: 1 / (1 + np.log(mu) ** 2)  # noqa: E731
    sup, arg = sup_ratio(grid, lambda m: float(grid(np.array([m]))[0]), 0.0, 0.0, n_grid=200)
    assert sup == pytest.approx(1.0, abs=1e-12)
    assert arg == pytest.approx(1.0, rel=1e-5)
    sup, arg = sup_ratio(grid, lambda m: 0.0, 3.0, 0.0, n_grid=200)
    assert (sup, arg) == (3.0, 0.0)


def test_sup_ratio_detects_growth():
    grid = lambda mu: np.log1p(mu)  # noqa: E731
    with pytest.raises(ConstructionError):
        sup_ratio(grid, lambda m: math.log1p(m), 0.0, 1.0, n_grid=100)


def test_thm2_q2():
    k = thm2_constants(2)
    assert k.C == pytest.approx(math.pi / 2, abs=1e-6)
    assert k.C_m == pytest.approx((math.pi / 2,), abs=1e-6)
    assert k.extra_ratio == 0
    mu = np.geomspace(1e-4, 1e3, 50)
    closed = (1 + mu ** 2) * np.arctan(1 / mu) - mu
    ratio = np.abs(t_eval(2, 1, mu)) * (1 + mu ** 2) / 2
    np.testing.assert_allclose(ratio, closed, rtol=1e-9, atol=1e-12)
    assert np.all(np.diff(closed) < 0)


def test_thm2_q3_extra_ratio():
    k = thm2_constants(3)
    assert k.extra_ratio == pytest.approx(1 / 3, abs=1e-15)
    assert k.C_m[0] == pytest.approx(1 / 3, abs=1e-15)


@pytest.mark.parametrize("q", range(2, 7))
def test_thm2_parity_zeros(q):
    k = thm2_constants(q)
    for m, c in enumerate(k.C_m):
        zero = (m % 2 == 1) if q % 2 == 0 else (m % 2 == 0 and m >= 2)
        if zero:
            assert c == 0.0
        else:
            assert c > 0


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_thm2_grid_refinement(q):
    coarse, fine = thm2_constants(q), thm2_constants(q, n_grid=100_000)
    assert fine.C == pytest.approx(coarse.C, rel=1e-6)


def test_thm2_json():
    rec = json.loads(json.dumps(thm2_constants(4).to_json()))
    assert rec["q"] == 4 and len(rec["C"]) == 3
    assert rec["combo"][1] == {"re": "0", "im": "0"}


def test_thm3_b_factor():
    k = thm3_constants(2, 1.0)
    assert k.B == pytest.approx(0.5)
    assert k.to_json()["alpha_B"] == pytest.approx(0.5)


def test_thm3_small_alpha_continuity():
    assert thm3_constants(2, 1e-3).C == pytest.approx(thm2_constants(2).C, abs=1e-2)


@pytest.mark.parametrize("q, alpha", [(2, 0.5), (3, 0.5), (3, 1.0), (4, 0.5)])
def test_thm3_finite(q, alpha):
    k = thm3_constants(q, alpha)
    assert math.isfinite(k.C) and k.C > 0
    assert len(k.C_m) == q - 1


def test_constants_reject_bad_q():
    with pytest.raises(ValueError):
        thm2_constants(1)
    with pytest.raises(ValueError):
        thm3_constants(2, 0.0)
