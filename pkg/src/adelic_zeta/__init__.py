"""Symbolic-numeric toolkit for two-dimensional adelic analysis on
arithmetic surfaces: lifted R((X))-valued measures, zeta integrals with
their projective-line renormalizer, gamma/Q factors, the one-dimensional
adelic decomposition, and inverse-Mellin boundary functions."""

from .errors import (AdelicError, ConventionViolationError, DomainError,
                     InvalidCurveData, ModelValidationError, PoleError,
                     SetAlgebraError, UnsupportedFamilyError)
from .exact import LaurentValue, QHalf, Rank2Val, Rat, RatFuncX, rank2_compare
from .local2d import (Element2D, Local2DField, PointData, eqchar_field,
                      module_value, rank2_valuation, t1, t2)
from .measure2d import (Box, MeasSet, SimpleFunction, fourier_box,
                        integrate_simple, measure_additive,
                        measure_multiplicative)
from .ffcurves import (CurveFF, DivisorFF, closed_point_counts,
                       elliptic_curve, euler_truncated, point_counts,
                       projective_line, rr_dim, summation_check,
                       zeta_closed_form)
from .gammafactor import (GammaProduct, QFactor, check_Q_symmetry, compute_Q,
                          eval_gamma, gamma_C, gamma_R, gamma_surface,
                          normal_form)
from .surface import (BaseField, FibreDesc, HorizontalField, NumberFieldData,
                      RATIONAL_FIELD, SurfaceModel, completed_Z, conductor,
                      fibre_zeta, quadratic_field, surface_zeta, z_callable)
from .zeta2d import (QSExpr, assemble_zeta2, fibre_integral_sq,
                     horizontal_factor, local_factor_smooth, per_prime_factor,
                     renormalizer_sq)
from .analytic import (MellinContour, TateDecomposition, boundary_function,
                       boundary_h, dedekind_xi, frak_h, inverse_mellin,
                       meanper_diagnostic, riemann_zeta, tate_decompose)
from .modelfile import load_model, model_from_dict, model_to_dict, save_model

__version__ = "0.1.0"
