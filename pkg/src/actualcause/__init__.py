"""Exact finite structural causal models and actual causation."""

from __future__ import annotations

__version__ = "0.1.0"

from .backends import backend_name
from .errors import (
    CausalError,
    InterventionError,
    InvalidModelError,
    OutOfRangeError,
    ParseError,
    ResourceLimitError,
    UnknownModelError,
    UnknownTheoryError,
    UnknownVariableError,
)
from .expressions import Bin, Call, If, Lit, Var
from .formulas import Atom, Formula, atom
from .model import CausalModel, Provenance, Signature, StructuralFunction
from .dsl import FormulaResult, ParseResult, parse_formula, parse_model
from .printer import format_formula, format_matrix, format_model
from .theories import (
    CausalTheory,
    ComplexCause,
    Witness,
    butfor_causes,
    get_theory,
    hp_causes,
    hp_complex_causes,
    table_theory,
)
from .meta import (
    CauseVerdict,
    Counterexample,
    FixedPoint,
    FixedPointResult,
    PrincipleReport,
    check_empirical,
    check_presumption,
    check_similarity,
    classify,
    find_empirical_fixed_points,
    putative_causes,
)
from .random_models import RandomModelParams, random_model
from .harness import SweepReport, property_suite

__all__ = [
    "__version__",
    "backend_name",
    "CausalError",
    "InterventionError",
    "InvalidModelError",
    "OutOfRangeError",
    "ParseError",
    "ResourceLimitError",
    "UnknownModelError",
    "UnknownTheoryError",
    "UnknownVariableError",
    "Bin",
    "Call",
    "If",
    "Lit",
    "Var",
    "Atom",
    "Formula",
    "atom",
    "CausalModel",
    "Provenance",
    "Signature",
    "StructuralFunction",
    "FormulaResult",
    "ParseResult",
    "parse_formula",
    "parse_model",
    "format_formula",
    "format_matrix",
    "format_model",
    "CausalTheory",
    "ComplexCause",
    "Witness",
    "butfor_causes",
    "get_theory",
    "hp_causes",
    "hp_complex_causes",
    "table_theory",
    "CauseVerdict",
    "Counterexample",
    "FixedPoint",
    "FixedPointResult",
    "PrincipleReport",
    "check_empirical",
    "check_presumption",
    "check_similarity",
    "classify",
    "find_empirical_fixed_points",
    "putative_causes",
    "RandomModelParams",
    "random_model",
    "SweepReport",
    "property_suite",
]
