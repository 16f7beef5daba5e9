"""Exact and arbitrary-precision machinery around the Minkowski
question-mark distribution: continued fractions and their one-parameter
generalization, the conjugation map between the rational trees, moments
and derived constants, and the exact rational-function series for the
moment generating function, with a full numerical verification suite.
"""

from .errors import (DomainError, PoleError, PrecisionError, QPeriodError,
                     SingularMatrixError)
from .exact import (Polynomial, Rational, RationalFunction, RationalMatrix,
                    mat_det_exact, mat_solve_exact, poly_arith,
                    poly_derivative_k, poly_transform, ratfunc_eval,
                    rational_from_string, rational_to_string)
from .highprec import (CONSTANTS_PREC, DEFAULT_PREC, bessel_j0, format_complex,
                       format_real, gamma_slice, parse_complex, polylog_half,
                       polylog_half_table)
from .moments import (AsymptReport, MomentVector, RelationReport, asympt_report,
                      blt_eval, c0_constant, hausdorff_alpha, mgen_derivative,
                      mgen_eval, moment_relations_check, moments_solve, p_moment)
from .period import (BorelResult, DecayDiagnostics, HTerm, QTerm, borel_m2,
                     borel_slices, contour_check, contraction_double_sum,
                     convergence_diagnostics, feq_residual, g_closed_p2,
                     g_reduce_eval, g_stieltjes, g_via_h, h_recurrence_residual,
                     h_series, lmap_apply, lmap_det, lmap_det_formula,
                     lmap_matrix, q_series)
from .ptree import (CurvePoint, PCFrac, StieltjesMeasure, XMapReport, chi_node,
                    curve_sample, integrate_dFp, mu_ab, mu_chain_bound,
                    mu_table, pcf_expand, stern_poly, stieltjes_measure,
                    tree_generation_symbolic, wall_coeffs, wall_t, wall_w,
                    x_map, x_map_feq_residual, x_map_report)
from .qmark import (ContinuedFraction, cf_expand, cw_generation, empirical_cdf,
                    generation_f_rows, minkowski_f, qmark_eval, question_mark)

__version__ = "1.0.0"
