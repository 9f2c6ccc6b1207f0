"""Scaled number structures: exact arithmetic, three-view term evaluation,
axiom-equivalence checks and a lattice demo of position-dependent scaling."""

from .axioms import (
    CheckReport,
    run_conjugation_suite,
    run_field_suite,
    run_nat_suite,
    run_order_suite,
    run_substructure_suite,
    run_wyz_control,
    witness_order,
)
from .convergence import run_convergence_check, run_limit_mapping
from .evaluate import check_equation, eval_base, eval_external, eval_internal, evaluate
from .exact import CRational, Rational, format_value, parse_value
from .structures import (
    NumberType,
    ScaledValue,
    StructureHandle,
    compose_scaling,
    group_op,
    make_structure,
    parse_structure,
    same_value,
)
from .terms import parse_term, pretty, random_term

__version__ = "0.1.0"

__all__ = [
    "CRational",
    "CheckReport",
    "NumberType",
    "Rational",
    "ScaledValue",
    "StructureHandle",
    "check_equation",
    "compose_scaling",
    "eval_base",
    "eval_external",
    "eval_internal",
    "evaluate",
    "format_value",
    "group_op",
    "make_structure",
    "parse_structure",
    "parse_term",
    "parse_value",
    "pretty",
    "random_term",
    "run_conjugation_suite",
    "run_convergence_check",
    "run_field_suite",
    "run_limit_mapping",
    "run_nat_suite",
    "run_order_suite",
    "run_substructure_suite",
    "run_wyz_control",
    "same_value",
    "witness_order",
]
