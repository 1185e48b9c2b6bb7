"""Grasper classes, barbell diffeomorphisms and theta classes as group-ring algebra."""

from __future__ import annotations

from .calculus import (
    BarbellSpec,
    Bg,
    Certificate,
    Compose,
    DiffeoNormalForm,
    Identity,
    Inverse,
    Power,
    PsR,
    Sref,
    SrefL,
    SrefLower,
    SrefR,
    SrefRR,
    ThetaData,
    Wat,
    bar_context,
    barbell_class,
    barbell_sref_argument,
    barword_factorize,
    diffeo_equal,
    dual_bar_word,
    eval_diffeo_expr,
    s4_ps_normal_form,
    simple_null_class,
    sref_class,
    theta_class,
)
from .errors import GrasperError, ParseError
from .grammar import parse_expr, parse_ring, parse_word
from .quotient import FULL, WEAK, GrasperClass, ReductionContext, class_of, reduce_to_class
from .ring import RingElement, dax_from_double_points, involution_bar
from .script import Report, emit_json, run_script
from .words import FactorSpec, GroupSpec, Word, compare_words

__all__ = [
    "FULL",
    "WEAK",
    "BarbellSpec",
    "Bg",
    "Certificate",
    "Compose",
    "DiffeoNormalForm",
    "FactorSpec",
    "GrasperClass",
    "GrasperError",
    "GroupSpec",
    "Identity",
    "Inverse",
    "ParseError",
    "Power",
    "PsR",
    "ReductionContext",
    "Report",
    "RingElement",
    "Sref",
    "SrefL",
    "SrefLower",
    "SrefR",
    "SrefRR",
    "ThetaData",
    "Wat",
    "Word",
    "bar_context",
    "barbell_class",
    "barbell_sref_argument",
    "barword_factorize",
    "class_of",
    "compare_words",
    "dax_from_double_points",
    "diffeo_equal",
    "dual_bar_word",
    "emit_json",
    "eval_diffeo_expr",
    "involution_bar",
    "parse_expr",
    "parse_ring",
    "parse_word",
    "reduce_to_class",
    "run_script",
    "s4_ps_normal_form",
    "simple_null_class",
    "sref_class",
    "theta_class",
]
