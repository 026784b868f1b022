"""Exact finite signed measures on the real line and empirical convergence
diagnostics for sequences of them."""

from .bv import (BVFunction, Centre, distribution_function, eval_bv, measure_from_bv,
                 piecewise_linear_measure, sample_csv, sup_abs_bv, updown_parts,
                 variation_function)
from .calculus import integrate, jordan, measure_of_set, restrict, sup_abs, total_mass, tv_norm, variation
from .core import (NEG_INF, POS_INF, DiscontinuityError, Interval, Measure, RealSet, Status,
                   TestFunction, Verdict, complement, constant, dirac, hat, intersect,
                   linear_combine, make_cutoff, piecewise_linear, sign_ramp, union)
from .kernels import BACKEND
from .report import ClassifyConfig, classify, classify_table1
from .sequences import (MeasureSequence, Schedule, TestFamily, check_bounded_on_compacts,
                        check_compact_limsup, check_distfun_convergence, check_no_mass_at,
                        check_norm_limsup, check_open_liminf, check_signed_mass_preservation,
                        check_tightness, check_vague, check_weak)

__version__ = "0.1.0"

__all__ = [
    "ClassifyConfig",
    "classify",
    "classify_table1",
    "BVFunction",
    "Centre",
    "distribution_function",
    "eval_bv",
    "measure_from_bv",
    "piecewise_linear_measure",
    "sample_csv",
    "sup_abs_bv",
    "updown_parts",
    "variation_function",
    "integrate",
    "jordan",
    "measure_of_set",
    "restrict",
    "sup_abs",
    "total_mass",
    "tv_norm",
    "variation",
    "NEG_INF",
    "POS_INF",
    "DiscontinuityError",
    "Interval",
    "Measure",
    "RealSet",
    "Status",
    "TestFunction",
    "Verdict",
    "complement",
    "constant",
    "dirac",
    "hat",
    "intersect",
    "linear_combine",
    "make_cutoff",
    "piecewise_linear",
    "sign_ramp",
    "union",
    "BACKEND",
    "MeasureSequence",
    "Schedule",
    "TestFamily",
    "check_bounded_on_compacts",
    "check_compact_limsup",
    "check_distfun_convergence",
    "check_no_mass_at",
    "check_norm_limsup",
    "check_open_liminf",
    "check_signed_mass_preservation",
    "check_tightness",
    "check_vague",
    "check_weak",
]
