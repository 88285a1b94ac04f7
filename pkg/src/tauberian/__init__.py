"""Numerical verification of contour-integral Tauberian inequalities for Stieltjes transforms.

The package evaluates both sides of Pleijel-type bounds relating a counting
function N, its Riesz means, and contour integrals of (generalized) Stieltjes
transforms, computes the explicit constants in those bounds, and checks them
on concrete and randomized instances.
"""
from .complexpath import (Contour, EvaluationPoint, QuadratureResult, beta, branch_pow,
                          contour_quadrature, default_contour, log_gamma, make_contour,
                          winding_number)
from .constants import thm1_constants, thm2_constants, thm3_constants
from .kernels import leading_coeff, solve_combination, t_eval, t_poly
from .measure import StepMeasure, counting_value, make_step_measure, riesz_mean, weyl_measure
from .transforms import stieltjes, stieltjes_q
from .verify import (VerificationReport, closed_contour_identity, demo_weyl, pleijel_report,
                     run_suite, segment_remainder, thm1_report, thm2_report, thm3_report)

__all__ = [
    "Contour", "EvaluationPoint", "QuadratureResult", "StepMeasure", "VerificationReport",
    "beta", "branch_pow", "closed_contour_identity", "contour_quadrature", "counting_value",
    "default_contour", "demo_weyl", "leading_coeff", "log_gamma", "make_contour",
    "make_step_measure", "pleijel_report", "riesz_mean", "run_suite", "segment_remainder",
    "solve_combination", "stieltjes", "stieltjes_q", "t_eval", "t_poly", "thm1_constants",
    "thm1_report", "thm2_constants", "thm2_report", "thm3_constants", "thm3_report",
    "weyl_measure", "winding_number",
]
