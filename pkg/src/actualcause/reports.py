"""JSON report payloads.

Every CLI command emits the same envelope: tool, version, model name,
command, payload, warnings.  All rational values are rendered as
exact "p/q" strings and every collection is emitted in a deterministic
order (declaration order for variables, discovery order for
witnesses), so reports for the same inputs are byte-identical across
runs modulo the version field.

The ``trivial`` flag marks variables that occur in the query matrix
itself; their causal status is a formality and renderers may want to
tuck them away.
"""

from __future__ import annotations

from . import __version__
from .formulas import matrix_variables
from .meta import (
    CauseVerdict,
    FixedPointResult,
    PrincipleReport,
    classify,
    find_empirical_fixed_points,
)
from .printer import format_formula, format_matrix, format_rational
from .theories import butfor_causes, get_theory, hp_complex_causes


def report(model_name, command, payload, warnings=()) -> dict:
    return {
        "tool": "actualcause",
        "version": __version__,
        "model": model_name,
        "command": command,
        "payload": payload,
        "warnings": list(warnings),
    }


def provenance_json(provenance) -> dict:
    return {
        "changed": {
            name: format_rational(value) for name, value in provenance.changed
        },
        "fixed": list(provenance.fixed),
    }


def witness_json(witness) -> dict:
    return {
        "setting": {
            name: format_rational(value) for name, value in witness.setting
        },
        "fixed": {
            name: format_rational(value) for name, value in witness.fixed
        },
    }


def solve_payload(model) -> dict:
    return {
        "context": {
            name: format_rational(value) for name, value in model.context
        },
        "solution": {
            name: format_rational(value)
            for name, value in model.solve().items()
        },
    }


def eval_payload(model, formula) -> dict:
    return {
        "query": format_formula(formula),
        "holds": model.evaluate(formula),
    }


def causes_payload(model, matrix, theory, force: bool = False) -> dict:
    theory = get_theory(theory)
    trivial = matrix_variables(matrix)
    causes = theory(model, matrix)
    payload = {
        "theory": theory.name,
        "query": format_matrix(matrix),
        "causes": [
            {"variable": name, "trivial": name in trivial}
            for name in model.signature.endogenous_names
            if name in causes
        ],
    }
    if theory.name == "butfor":
        flips = butfor_causes(model, matrix)
        for entry in payload["causes"]:
            entry["flip"] = format_rational(flips[entry["variable"]])
    if theory.name == "hp":
        payload["complex"] = [
            {
                "variables": [
                    name
                    for name in model.signature.endogenous_names
                    if name in cause.variables
                ],
                "witnesses": [
                    witness_json(w) for w in cause.witnesses
                ],
            }
            for cause in hp_complex_causes(model, matrix, force=force)
        ]
    return payload


def verdict_json(verdict: CauseVerdict, trivial) -> dict:
    out = {
        "variable": verdict.variable,
        "status": verdict.status,
        "trivial": verdict.variable in trivial,
        "witnesses": [provenance_json(p) for p in verdict.witnesses],
    }
    if verdict.status == "preempted":
        out["blocking"] = list(verdict.blocking)
    return out


def classify_payload(model, matrix, theory, force: bool = False) -> dict:
    theory = get_theory(theory)
    trivial = matrix_variables(matrix)
    return {
        "theory": theory.name,
        "query": format_matrix(matrix),
        "verdicts": [
            verdict_json(v, trivial)
            for v in classify(model, matrix, theory, force)
        ],
    }


def principle_json(check: PrincipleReport) -> dict:
    counterexample = None
    if check.counterexample is not None:
        ce = check.counterexample
        counterexample = {"variable": ce.variable}
        if ce.provenance is not None:
            counterexample["provenance"] = provenance_json(ce.provenance)
        if ce.changed:
            counterexample["changed"] = [
                {
                    "variable": name,
                    "actual": format_rational(old),
                    "counterfactual": format_rational(new),
                }
                for name, old, new in ce.changed
            ]
        if ce.direction is not None:
            counterexample["direction"] = ce.direction
    return {
        "principle": check.principle,
        "verdict": check.verdict,
        "detail": check.detail,
        "counterexample": counterexample,
    }


def check_payload(matrix, check: PrincipleReport, theory=None, causes=None) -> dict:
    payload = {"query": format_matrix(matrix)}
    if theory is not None:
        payload["theory"] = get_theory(theory).name
    if causes is not None:
        payload["cause-set"] = sorted(causes)
    payload.update(principle_json(check))
    return payload


def fixedpoints_payload(model, result: FixedPointResult) -> dict:
    return {
        "query": format_matrix(result.matrix),
        "searched": result.searched,
        "points": [
            {
                "causes": [
                    name
                    for name in model.signature.endogenous_names
                    if name in point.causes
                ],
                "witnesses": [
                    {
                        "variable": name,
                        "provenance": provenance_json(provenance),
                    }
                    for name, provenance in point.witnesses
                ],
            }
            for point in result.points
        ],
    }


def sweep_payload(sweep) -> dict:
    return {
        "count": sweep.count,
        "seed": sweep.seed,
        "params": {
            "n-endogenous": sweep.params.n_endogenous,
            "max-range": sweep.params.max_range,
            "max-parents": sweep.params.max_parents,
            "exo-count": sweep.params.exo_count,
        },
        "ok": sweep.ok,
        "prop1-violations": [
            {"seed": seed, "variable": name}
            for seed, name in sweep.prop1_violations
        ],
        "prop2-violations": [
            {
                "seed": seed,
                "causes": causes,
                "principle": principle,
                "variable": name,
            }
            for seed, causes, principle, name in sweep.prop2_violations
        ],
        "oracle-mismatches": [
            {"seed": seed, "optimized": fast, "reference": slow}
            for seed, fast, slow in sweep.oracle_mismatches
        ],
        "fixed-point-counts": {
            str(k): v for k, v in sweep.fixed_point_counts
        },
    }
