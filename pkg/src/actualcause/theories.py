"""Causal theories: but-for, Halpern-Pearl (modified), and table lookup.

A causal theory maps a model and an intervention-free formula to the
set of endogenous variables it designates as causes.  Every theory
returns the empty set when the formula does not hold in the model, so
the meta-level definitions can quantify over arbitrary pairs.

The but-for theory marks V a cause when some alternative value of V
alone falsifies the formula.  The HP theory marks V a cause when V
belongs to some complex cause: a set-inclusion-minimal set of
variables admitting a joint setting that falsifies the formula while
some disjoint set of other variables is held at its actual values.

Search order is part of the contract: candidate sets by size then
declaration order, settings in range order, held sets by size then
declaration order.  The first witness found under that order is the
one reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .coded import engine_for
from .dsl import parse_formula
from .errors import (
    InterventionError,
    UnknownModelError,
    UnknownTheoryError,
    UnknownVariableError,
)
from .formulas import Formula, Matrix, check_matrix
from .limits import check_enumeration_size
from .model import subsets
from .printer import format_matrix


def _require_matrix(formula) -> Matrix:
    if isinstance(formula, Formula):
        if formula.intervention:
            raise InterventionError(
                "causal queries take an intervention-free formula"
            )
        return formula.matrix
    if isinstance(formula, Matrix):
        return formula
    raise TypeError(f"not a formula: {formula!r}")


@dataclass(frozen=True)
class Witness:
    """AC2 evidence: the setting that falsifies the formula and the
    variables held at their actual values while it does."""

    setting: tuple
    fixed: tuple


@dataclass(frozen=True)
class ComplexCause:
    variables: frozenset
    witnesses: tuple


@dataclass
class CausalTheory:
    """A named cause function with the uniform empty-set gate."""

    name: str
    fn: object = field(repr=False)
    warnings: list = field(default_factory=list, repr=False)

    def __call__(self, model, formula) -> frozenset:
        matrix = _require_matrix(formula)
        if not model.evaluate(matrix):
            return frozenset()
        causes = frozenset(self.fn(model, matrix))
        unknown = causes - set(model.signature.endogenous_names)
        if unknown:
            raise UnknownVariableError(
                f"theory {self.name!r} returned non-variables: "
                + ", ".join(sorted(unknown))
            )
        return causes


def butfor_causes(model, formula) -> dict:
    """But-for causes with, for each, the first falsifying value.

    A name is in the result exactly when the formula holds in the model
    and pinning that one variable to some other value falsifies it; the
    value recorded is the first such in range order.
    """
    matrix = _require_matrix(formula)
    model.ensure_valid()
    check_matrix(matrix, model.signature)
    engine, vec = engine_for(model)
    prog = engine.compile_matrix(matrix)
    mask, flips = engine.butfor_flips(vec, prog)
    if mask < 0:
        return {}
    out = {}
    for name in model.signature.endogenous_names:
        p = engine.pos[name]
        if mask >> p & 1:
            out[name] = engine.ranges[p][flips[p]]
    return out


def hp_complex_causes(
    model, formula, all_witnesses: bool = False, force: bool = False
) -> tuple:
    """All complex causes, each with its witnesses.

    By default only the first witness per cause is kept; pass
    ``all_witnesses=True`` to retain every (setting, held-set) pair.
    """
    matrix = _require_matrix(formula)
    model.ensure_valid()
    check_matrix(matrix, model.signature)
    check_enumeration_size(model, force)
    engine, vec = engine_for(model)
    prog = engine.compile_matrix(matrix)
    if not engine.holds(vec, prog):
        return ()
    endo = model.signature.endogenous_names
    ranges = model.signature.endogenous_ranges
    actual_codes = engine.solve_codes(vec)
    actual = engine.decode(actual_codes)
    cause_sets = []
    causes = []
    for candidate in subsets(endo):
        if not candidate:
            continue
        cset = frozenset(candidate)
        # a superset of a complex cause is never minimal; smaller sets
        # were all enumerated earlier
        if any(prev < cset for prev in cause_sets):
            continue
        others = [n for n in endo if n not in cset]
        positions = [engine.pos[n] for n in candidate]
        witnesses = []
        for values in itertools.product(*(ranges[n] for n in candidate)):
            pins = [
                (p, engine.ranges[p].index(v))
                for p, v in zip(positions, values)
            ]
            for held in subsets(others):
                trial = engine.extend(
                    vec,
                    pins + [(engine.pos[n], actual_codes[engine.pos[n]]) for n in held],
                )
                if not engine.holds(trial, prog):
                    witnesses.append(
                        Witness(
                            tuple(zip(candidate, values)),
                            tuple((n, actual[n]) for n in held),
                        )
                    )
                    if not all_witnesses:
                        break
            if witnesses and not all_witnesses:
                break
        if witnesses:
            cause_sets.append(cset)
            causes.append(ComplexCause(cset, tuple(witnesses)))
    return tuple(causes)


def hp_causes(model, formula, force: bool = False) -> frozenset:
    """Union of all complex causes."""
    out = set()
    for cause in hp_complex_causes(model, formula, force=force):
        out |= cause.variables
    return frozenset(out)


def table_theory(name, table, models) -> CausalTheory:
    """A theory backed by a lookup table.

    ``table`` maps (model name, formula) to a cause set, where the
    formula may be a matrix, an intervention-free Formula or text.
    Missing formula entries fail closed (empty set, with a warning
    recorded on the theory); querying a model the table never mentions
    raises UnknownModelError.
    """
    models = dict(models)
    entries = {}
    for (model_id, formula), names in table.items():
        model = models.get(model_id)
        if model is None:
            raise UnknownModelError(
                f"table theory {name!r} references unknown model "
                f"{model_id!r}"
            )
        if isinstance(formula, str):
            matrix = _require_matrix(parse_formula(formula).unwrap())
        else:
            matrix = _require_matrix(formula)
        names = frozenset(names)
        extra = names - set(model.signature.endogenous_names)
        if extra:
            raise UnknownVariableError(
                f"table theory {name!r} lists non-variables for "
                f"{model_id!r}: " + ", ".join(sorted(extra))
            )
        entries[(model_id, format_matrix(matrix))] = names

    theory = CausalTheory(name, None)

    def lookup(model, matrix):
        if model.name not in models:
            raise UnknownModelError(
                f"table theory {name!r} has no entries for model "
                f"{model.name!r}"
            )
        key = (model.name, format_matrix(matrix))
        if key not in entries:
            theory.warnings.append(
                f"no entry for model {model.name!r} and formula "
                f"{key[1]}; returning the empty cause set"
            )
            return frozenset()
        return entries[key]

    theory.fn = lookup
    return theory


REGISTRY = {
    "butfor": CausalTheory(
        "butfor", lambda model, matrix: butfor_causes(model, matrix)
    ),
    "hp": CausalTheory("hp", lambda model, matrix: hp_causes(model, matrix)),
}


def get_theory(spec) -> CausalTheory:
    """Resolve a registry name or pass a theory through unchanged."""
    if isinstance(spec, CausalTheory):
        return spec
    if isinstance(spec, str):
        theory = REGISTRY.get(spec)
        if theory is None:
            known = ", ".join(sorted(REGISTRY))
            raise UnknownTheoryError(
                f"unknown theory {spec!r} (known: {known})"
            )
        return theory
    raise TypeError(f"not a theory: {spec!r}")
