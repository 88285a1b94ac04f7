"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (also repeated in the
terminal summary) and then asserts.  Tolerances are the ones the criteria pin.
"""
import math
import warnings

import numpy as np
import pytest

from oracles import kernel_by_quadrature
from tauberian.complexpath import EvaluationPoint, beta, default_contour, make_contour
from tauberian.constants import (ALPHA_LT_1, GENERAL, eq11_margin, thm1_constants,
                                 thm2_constants)
from tauberian.exact import GaussianRationalPoly, I
from tauberian.kernels import basis_rank, leading_coeff, t_eval, t_poly
from tauberian.verify import (closed_contour_identity, demo_weyl, random_contour,
                              random_instance, remainder_bound, run_suite, segment_remainder,
                              thm1_report)

RESULTS = {}


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_criterion_01_thm1_constants():
    k = thm1_constants(1.0)
    exact = abs(k.c1) <= 1e-12 and abs(k.c2 - 2) <= 1e-12 and abs(k.c3 - 2) <= 1e-12
    alphas = [0.1 * j for j in range(1, 101)]
    sandwich = c3_general = True
    for a in alphas:
        g = thm1_constants(a, GENERAL)
        lo = abs(g.a) / a
        hi = (abs(g.a) * (a + 1) + 1) / (a * (a + 2))
        sandwich &= lo - 1e-12 <= g.c2 / 2 <= hi + 1e-12
        c3_general &= g.c3 <= 2 / a + 1e-12
    root = math.sqrt(4 + math.pi ** 2)
    c3_lt1 = all(thm1_constants(a, ALPHA_LT_1).c3 <= root + 1e-12
                 for a in np.linspace(0.001, 0.999, 999))
    identity = abs(root / (2 * math.pi) - math.sqrt(math.pi ** -2 + 0.25)) <= 1e-14
    record(1, "Theorem-1 constants", exact and sandwich and c3_general and c3_lt1 and identity,
           f"c=({abs(k.c1):.1e},{k.c2:.12g},{k.c3:.12g}) sandwich={sandwich} "
           f"c3<=2/a={c3_general} c3<=sqrt(4+pi^2)={c3_lt1} identity={identity}")


def test_criterion_02_pointwise_inequality():
    us = np.logspace(-3, 3, 25)
    worst = -math.inf
    for alpha in (0.25, 0.5, 1, 1.5, 2, 3, 5):
        regimes = [GENERAL, ALPHA_LT_1] if alpha < 1 else [GENERAL]
        for regime in regimes:
            k = thm1_constants(alpha, regime)
            for u in us:
                for s in (1, -1):
                    worst = max(worst, eq11_margin(alpha, float(u), s, k))
    record(2, "pointwise inequality margin <= 1e-10", worst <= 1e-10, f"max margin {worst:.3e}")


def test_criterion_03_beta_identities():
    worst = 0.0
    for alpha in [0.1 * j for j in range(1, 10)]:
        a, b = math.sin(math.pi * alpha / 2), math.cos(math.pi * alpha / 2)
        b1 = beta((alpha + 2) / 2, (2 - alpha) / 2)
        b2 = beta((alpha + 3) / 2, (1 - alpha) / 2)
        ref1 = (math.pi * alpha / 2) / a
        ref2 = (math.pi * (alpha + 1) / 2) / b
        left, right = abs(a) / alpha * b1, abs(b) / (alpha + 1) * b2
        worst = max(worst, abs(b1 - ref1) / ref1, abs(b2 - ref2) / ref2,
                    abs(left - right) / right)
    record(3, "Beta identities to 1e-10", worst <= 1e-10, f"max rel err {worst:.2e}")


def test_criterion_04_kernel_closed_forms():
    forms = (t_poly(2, 0).numerator == GaussianRationalPoly([2]) and t_poly(2, 0).power == 1
             and t_poly(3, 0).numerator == GaussianRationalPoly([0, 2]) and t_poly(3, 0).power == 2
             and t_poly(3, 1).numerator == GaussianRationalPoly([2 * I]))
    parity = degree = ranks = True
    quad_err = 0.0
    for q in range(2, 9):
        for m in range(q - 1):
            p = t_poly(q, m).numerator
            parity &= p.parity() == (1 if (q - m) % 2 == 0 else -1)
            degree &= p.degree == (q - 2 if m % 2 == 0 else q - 3)
        ranks &= basis_rank(q) == q - 1
        for m in range(q):
            for mu in (0.1, 0.5, 1.0, 2.0, 10.0):
                parity &= abs(t_eval(q, m, -mu) - (-1) ** (q - m) * t_eval(q, m, mu)) \
                    <= 1e-12 * max(1.0, abs(t_eval(q, m, mu)))
                quad_err = max(quad_err, abs(t_eval(q, m, mu) - kernel_by_quadrature(q, m, mu)))
    ok = forms and parity and degree and ranks and quad_err <= 1e-9
    record(4, "kernel closed forms, parity, degree, rank, quadrature", ok,
           f"forms={forms} parity={parity} degree={degree} rank={ranks} "
           f"max|t_eval-quad|={quad_err:.1e}")


def test_criterion_05_asymptotic_coefficients():
    mu = 1e3
    worst = 0.0
    for q in range(2, 7):
        for m in range(q):
            b = leading_coeff(q, m)
            expected = 2 / (m + 1) if m % 2 == 0 else 2j * q / (m + 2)
            if b != expected:
                worst = math.inf
            scaled = mu ** q * t_eval(q, m, mu) if m % 2 == 0 else mu ** (q + 1) * t_eval(q, m, mu)
            worst = max(worst, abs(scaled - b) / abs(b))
    record(5, "asymptotic coefficients b_{q,m} at mu=1e3", worst <= 1e-3,
           f"max rel err {worst:.2e}")


def test_criterion_06_thm2_constants():
    q2 = thm2_constants(2)
    c0 = abs(q2.C_m[0] - math.pi / 2) <= 1e-6
    extra = thm2_constants(3).extra_ratio == 1 / 3 and \
        leading_coeff(3, 2) / leading_coeff(3, 0) == 1 / 3
    zeros = True
    for q in range(2, 7):
        for m, c in enumerate(thm2_constants(q).C_m):
            if (q % 2 == 0 and m % 2 == 1) or (q % 2 == 1 and m % 2 == 0 and m >= 2):
                zeros &= c == 0.0
    drift = max(abs(thm2_constants(q, n_grid=100_000).C - thm2_constants(q).C) / thm2_constants(q).C
                for q in range(2, 7))
    record(6, "Theorem-2 constants", c0 and extra and zeros and drift <= 1e-6,
           f"C0-pi/2={q2.C_m[0] - math.pi / 2:.1e} extra_ratio(3)=1/3:{extra} "
           f"parity zeros={zeros} refinement drift={drift:.1e}")


def test_criterion_07_contour_identities():
    worst = 0.0
    for i in range(100):
        rng = np.random.default_rng([707, i])
        m, p, c = random_instance(rng)
        alpha = (0.5, 1.0, 2.0)[i % 3]
        worst = max(worst, closed_contour_identity(m, p, c, alpha=alpha))
    independent = True
    spread = 0.0
    for i in range(20):
        rng = np.random.default_rng([708, i])
        m, p, _ = random_instance(rng, random_path=False)
        contours = [default_contour(p), random_contour(rng, p), random_contour(rng, p)]
        assert len({c.vertices for c in contours}) == 3
        alpha = (0.5, 1.0, 2.0)[i % 3]
        reps = [thm1_report(m, p, c, alpha=alpha) for c in contours]
        for r in reps[1:]:
            gap = abs(r.main_term - reps[0].main_term)
            allowed = 10 * (r.quadrature_error + reps[0].quadrature_error)
            spread = max(spread, gap / allowed if allowed else math.inf)
            independent &= gap <= allowed
    record(7, "closed-contour identity and contour independence",
           worst <= 1e-8 and independent,
           f"max residual {worst:.1e}, max gap/(10x qerr) {spread:.2f}")


def test_criterion_08_inequality_suites():
    suites = {
        "pleijel": run_suite("pleijel", 1000, 8001),
        "thm1": run_suite("thm1", 1000, 8002, params=[
            {"alpha": 0.5, "regime": GENERAL}, {"alpha": 0.5, "regime": ALPHA_LT_1},
            {"alpha": 1.0, "regime": GENERAL}, {"alpha": 2.0, "regime": GENERAL}]),
        "thm2": run_suite("thm2", 1000, 8003, params=[{"q": q} for q in (2, 3, 4, 5)]),
        "thm3": run_suite("thm3", 1000, 8004, params=[
            {"q": q, "alpha": a} for q in (2, 3) for a in (0.5, 1.0)]),
        "thm1-remark1": run_suite("thm1", 100, 8005, remark1=True, params=[
            {"alpha": 0.5, "regime": GENERAL}, {"alpha": 1.0, "regime": GENERAL},
            {"alpha": 2.0, "regime": GENERAL}]),
    }
    total = sum(s["violations"] for s in suites.values())
    detail = ", ".join(f"{k}: {s['violations']}/{s['trials']} worst lhs/rhs "
                       f"{s['worst_lhs_rhs_ratio']:.3f}" for k, s in suites.items())
    record(8, "randomized inequality suites, zero violations", total == 0, detail)


def test_criterion_09_internal_consistency():
    worst_gap = 0.0
    bound_ok = True
    for i in range(100):
        rng = np.random.default_rng([909, i])
        m, p, c = random_instance(rng)
        alpha = (0.5, 1.0, 2.0)[i % 3]
        r, err = segment_remainder(m, p, alpha, return_error=True)
        rep = thm1_report(m, p, c, alpha=alpha)
        combined = err + rep.quadrature_error
        worst_gap = max(worst_gap, abs(abs(r) - rep.lhs) / combined)
        bound_ok &= abs(r) <= remainder_bound(m, p, alpha) * (1 + 1e-12)
    record(9, "|segment remainder| = Theorem-1 lhs; remainder bound",
           worst_gap <= 1.0 and bound_ok,
           f"max |R|-lhs in units of combined qerr {worst_gap:.2f}, bound holds={bound_ok}")


def test_criterion_10_weyl_demo():
    with warnings.catch_warnings():
        warnings.simplefilter("error", RuntimeWarning)
        rows = demo_weyl(1, 10_000, 1.0, [1e2, 1e3, 1e4])
    gaps = [r.relative_gap for r in rows]
    ratios = [r.riesz_mean / math.sqrt(r.lambda0) for r in rows]
    trend = abs(ratios[2] - ratios[1]) < abs(ratios[1] - ratios[0])
    record(10, "Weyl demo trend", gaps[1] < gaps[0] and trend,
           "relative gaps " + ", ".join(f"{g:.2e}" for g in gaps)
           + "; N^(1)/sqrt(lambda0) " + ", ".join(f"{x:.4f}" for x in ratios))
