"""Quadratic twists of elliptic curves with a predicted rank of one, and the
class-number, character-sum and density computations that support them."""
from __future__ import annotations

from .arith import factorize, fundamental_discriminant, kronecker, omega, sieve_omega, valuation
from .assumptions import Prediction, Status, heegner_check, rank1_criterion, star_check
from .characters import Character, all_characters, bernoulli1, conductor, gauss_sum, g_normalized, quadratic_character
from .classno import ClassNumberOracle, ClassNumberTable, class_number_analytic, class_number_forms, h3_indivisible
from .curves import CurveModel, QSeries, an_coefficients, ap_good, eisenstein_qexp, find_residual_character
from .density import ScanReport, scan_d_heegner, scan_discriminants, scan_rank_proportions_Q, scan_sextic
from .twists import MordellCurve, g2, g3, g6, quadratic_twist, root_number_twist

__version__ = "0.1.0"
