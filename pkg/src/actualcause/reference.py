"""Slow, obviously-correct reference implementations.

Everything here recomputes from first principles: models are solved by
repeated substitution over the raw expression trees, interventions are
literal function replacements, and every search enumerates its whole
space with no pruning, no memoized engines, and no shared code with
the optimized paths.  The test suite holds the fast implementations to
these.

Only sensible on small models; nothing here checks resource limits.
"""

from __future__ import annotations

import itertools

from .errors import InvalidModelError
from .expressions import Lit, evaluate_expr, expr_variables
from .formulas import evaluate_matrix
from .model import CausalModel, StructuralFunction, subsets


def solve_naive(model) -> dict:
    """Fixpoint substitution: evaluate whatever has all parents known."""
    env = dict(model.context)
    pending = {f.target: f.body for f in model.functions}
    while pending:
        progressed = False
        for name in list(pending):
            body = pending[name]
            if expr_variables(body) <= env.keys():
                env[name] = evaluate_expr(body, env)
                del pending[name]
                progressed = True
        if not progressed:
            raise InvalidModelError("substitution never terminates")
    return {name: env[name] for name in model.signature.endogenous_names}


def intervene_naive(model, assignment) -> CausalModel:
    assignment = dict(assignment)
    functions = tuple(
        StructuralFunction(f.target, Lit(assignment[f.target]))
        if f.target in assignment
        else f
        for f in model.functions
    )
    return CausalModel(
        model.name, model.signature, functions, model.context, model.frozen
    )


def holds_naive(model, matrix) -> bool:
    return evaluate_matrix(matrix, solve_naive(model))


def butfor_causes_naive(model, matrix) -> dict:
    """Try every alternative value of every variable, one at a time."""
    if not holds_naive(model, matrix):
        return {}
    actual = solve_naive(model)
    out = {}
    for name in model.signature.endogenous_names:
        for value in model.signature.ranges[name]:
            if value == actual[name]:
                continue
            if not holds_naive(intervene_naive(model, {name: value}), matrix):
                out[name] = value
                break
    return out


def _ac2_witness(model, matrix, actual, candidate, others):
    ranges = model.signature.ranges
    for values in itertools.product(*(ranges[n] for n in candidate)):
        setting = dict(zip(candidate, values))
        for held in subsets(others):
            setting.update((n, actual[n]) for n in held)
            if not holds_naive(intervene_naive(model, setting), matrix):
                return dict(zip(candidate, values)), tuple(held)
            for n in held:
                if n not in candidate:
                    del setting[n]
    return None


def hp_complex_causes_naive(model, matrix) -> list:
    """Check AC2 for every nonempty candidate set, then apply
    minimality by a second full pass over subsets."""
    if not holds_naive(model, matrix):
        return []
    actual = solve_naive(model)
    endo = model.signature.endogenous_names
    ac2 = {}
    for candidate in subsets(endo):
        if not candidate:
            continue
        others = [n for n in endo if n not in candidate]
        ac2[candidate] = _ac2_witness(model, matrix, actual, candidate, others)
    causes = []
    for candidate in subsets(endo):
        if not candidate or ac2[candidate] is None:
            continue
        cset = frozenset(candidate)
        minimal = True
        for other in subsets(endo):
            if other and frozenset(other) < cset and ac2[other] is not None:
                minimal = False
                break
        if minimal:
            causes.append((cset, ac2[candidate]))
    return causes


def hp_causes_naive(model, matrix) -> frozenset:
    out = set()
    for cset, _ in hp_complex_causes_naive(model, matrix):
        out |= cset
    return frozenset(out)


def members_naive(model, causes):
    """The counterfactual model space as (assignment, model) pairs,
    deduplicated by identical intervention assignment.

    Every member pins some subset of the cause set to arbitrary values
    and freezes some subset of the rest at its actual values.
    """
    actual = solve_naive(model)
    causes = [n for n in model.signature.endogenous_names if n in set(causes)]
    others = [n for n in model.signature.endogenous_names if n not in causes]
    ranges = model.signature.ranges
    seen = set()
    for changed in subsets(causes):
        for values in itertools.product(*(ranges[n] for n in changed)):
            base = dict(zip(changed, values))
            for frozen_part in subsets(others):
                assignment = dict(base)
                assignment.update((n, actual[n]) for n in frozen_part)
                key = tuple(sorted(assignment.items()))
                if key in seen:
                    continue
                seen.add(key)
                yield assignment, intervene_naive(model, assignment)


def putative_causes_naive(model, matrix, theory) -> frozenset:
    """Variables kept at their actual value by some member of the
    space in which they are but-for causes."""
    causes = theory(model, matrix)
    actual = solve_naive(model)
    out = set()
    for _, member in members_naive(model, causes):
        solution = solve_naive(member)
        flips = butfor_causes_naive(member, matrix)
        for name in flips:
            if solution[name] == actual[name]:
                out.add(name)
    return frozenset(out)


def presumption_verdict_naive(model, matrix, theory):
    """(satisfied, offending variable or None), checked by scanning
    every witness of every preempted cause for an unchanged world."""
    causes = theory(model, matrix)
    actual = solve_naive(model)
    witnesses = {}
    for assignment, member in members_naive(model, causes):
        solution = solve_naive(member)
        flips = butfor_causes_naive(member, matrix)
        for name in flips:
            if solution[name] == actual[name]:
                witnesses.setdefault(name, []).append(solution)
    for name in model.signature.endogenous_names:
        if name in causes or name not in witnesses:
            continue
        for solution in witnesses[name]:
            changed = [n for n in solution if solution[n] != actual[n]]
            if not any(n not in causes for n in changed):
                return False, name
    return True, None


def empirical_ok_naive(model, matrix, causes) -> bool:
    """Does the candidate set reproduce itself through the space?"""
    causes = frozenset(causes)
    actual = solve_naive(model)
    witnessed = set()
    for _, member in members_naive(model, causes):
        solution = solve_naive(member)
        if any(
            solution[n] != actual[n]
            for n in model.signature.endogenous_names
            if n not in causes
        ):
            continue
        flips = butfor_causes_naive(member, matrix)
        for name in flips:
            if solution[name] == actual[name]:
                witnessed.add(name)
    return witnessed == causes


def fixed_points_naive(model, matrix) -> list:
    return [
        frozenset(candidate)
        for candidate in subsets(model.signature.endogenous_names)
        if empirical_ok_naive(model, matrix, candidate)
    ]
