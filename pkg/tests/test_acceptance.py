"""The ten build-gating checks, one test per criterion.

Every test records a visible pass/fail line for the terminal summary,
tagging its runtime.  Expected values are the frozen worked judgments
bundled with the corpus; the sweeps and oracle runs re-derive their
claims from scratch on every run.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from conftest import record_criterion

from actualcause import (
    RandomModelParams,
    atom,
    check_empirical,
    check_presumption,
    classify,
    find_empirical_fixed_points,
    format_model,
    hp_causes,
    property_suite,
    putative_causes,
    random_model,
)
from actualcause import reference
from actualcause.dsl import parse_model
from actualcause.formulas import matrix_variables
from actualcause.harness import child_seed
from actualcause.theories import butfor_causes, get_theory, hp_complex_causes

BUDGET = 5.0


def _finish(number, label, problems, start, budget=BUDGET, detail=""):
    elapsed = time.perf_counter() - start
    if elapsed > budget:
        problems.append(f"took {elapsed:.1f}s, budget {budget:.0f}s")
    stamp = f"{elapsed:.1f}s"
    detail = f"{detail}, {stamp}" if detail else stamp
    if problems:
        detail = "; ".join(problems[:3])
    record_criterion(number, label, not problems, detail)
    assert not problems, f"criterion {number} ({label}): " + "; ".join(problems)


def test_criterion_01_exact_solutions(m1, m2):
    start = time.perf_counter()
    problems = []
    try:
        expected = {"J1": Fraction(1, 2), "J2": Fraction(1), "B": Fraction(0)}
        for model in (m1, m2):
            got = model.solve()
            if got != expected:
                problems.append(f"{model.name} solved to {got}")
            if not all(isinstance(v, (int, Fraction)) for v in got.values()):
                problems.append(f"{model.name} produced inexact values")
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        1, "exact solutions of both stone-throwing models", problems, start,
        detail="solve(m1) = solve(m2) = {J1: 1/2, J2: 1, B: 0}",
    )


def test_criterion_02_butfor_sets(m1, m2, suzy, antidote, b0, g1):
    start = time.perf_counter()
    problems = []
    try:
        expected = {
            "m1": {"B"},
            "m2": {"J2", "B"},
            "antidote": {"J2", "J3", "B"},
        }
        for model in (m1, m2, antidote):
            got = set(butfor_causes(model, b0))
            if got != expected[model.name]:
                problems.append(f"butfor({model.name}) = {sorted(got)}")
        nontrivial = set(butfor_causes(suzy, g1)) - matrix_variables(g1)
        if nontrivial:
            problems.append(
                f"suzy has non-trivial but-for causes {sorted(nontrivial)}"
            )
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        2, "but-for cause sets on all four corpus models", problems, start,
        detail="m1 {B}; m2 {J2, B}; antidote {J2, J3, B}; suzy trivial only",
    )


def test_criterion_03_hp_sets_and_witness(m1, m2, suzy, antidote, b0, g1):
    start = time.perf_counter()
    problems = []
    try:
        if hp_causes(m1, b0) != {"J1", "J2", "B"}:
            problems.append(f"hp(m1) = {sorted(hp_causes(m1, b0))}")
        if "J1" in hp_causes(m2, b0):
            problems.append("J1 still an hp cause in m2")
        if "J1" in hp_causes(antidote, b0):
            problems.append("J1 still an hp cause in antidote")
        solo = [
            c for c in hp_complex_causes(suzy, g1)
            if c.variables == {"S"}
        ]
        if not solo:
            problems.append("{S} is not a complex cause in suzy")
        else:
            fixed = {name for name, _ in solo[0].witnesses[0].fixed}
            if fixed != {"H_B"}:
                problems.append(f"witness for {{S}} holds {sorted(fixed)}")
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        3, "hp cause sets and the held-fixed witness", problems, start,
        detail="hp(m1) = {J1, J2, B}; J1 dropped in m2/antidote; {S} via {H_B}",
    )


def test_criterion_04_classification(m2, suzy, b0, g1):
    start = time.perf_counter()
    problems = []
    try:
        in_m2 = {v.variable: v.status for v in classify(m2, b0, "hp")}
        if in_m2.get("J1") != "preempted":
            problems.append(f"J1 in m2 is {in_m2.get('J1')}")
        if in_m2 != {"J1": "preempted", "J2": "but-for", "B": "but-for"}:
            problems.append(f"m2 statuses {in_m2}")
        in_suzy = {v.variable: v.status for v in classify(suzy, g1, "hp")}
        if in_suzy.get("B") != "preempted":
            problems.append(f"B in suzy is {in_suzy.get('B')}")
        if in_suzy != {
            "S": "overdetermining",
            "B": "preempted",
            "H_S": "overdetermining",
            "H_B": "non-cause",
            "G": "but-for",
        }:
            problems.append(f"suzy statuses {in_suzy}")
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        4, "preempted classifications under hp", problems, start,
        detail="J1 preempted in m2; B preempted in suzy",
    )


def test_criterion_05_presumption_with_replay(m2, suzy, antidote, b0, g1):
    start = time.perf_counter()
    problems = []
    try:
        if not check_presumption(suzy, g1, "hp").satisfied:
            problems.append("suzy fails presumption")
        for model, phi in ((m2, b0), (antidote, b0)):
            report = check_presumption(model, phi, "hp")
            if report.satisfied:
                problems.append(f"{model.name} passes presumption")
                continue
            ce = report.counterexample
            causes = hp_causes(model, phi)
            actual = model.solve()
            if ce.variable in causes:
                problems.append(f"{model.name}: offender {ce.variable} is a cause")
            assignment = dict(ce.provenance.changed)
            assignment.update({n: actual[n] for n in ce.provenance.fixed})
            member = model.intervene(assignment)
            sol = member.solve()
            if sol[ce.variable] != actual[ce.variable]:
                problems.append(f"{model.name}: witness moves {ce.variable}")
            if not member.evaluate(phi):
                problems.append(f"{model.name}: witness breaks the query")
            ranges = model.signature.endogenous_ranges
            if not any(
                not member.intervene({ce.variable: v}).evaluate(phi)
                for v in ranges[ce.variable]
            ):
                problems.append(
                    f"{model.name}: {ce.variable} is not but-for in the witness"
                )
            diff = {n: (actual[n], sol[n]) for n in sol if sol[n] != actual[n]}
            if diff != {n: (old, new) for n, old, new in ce.changed}:
                problems.append(f"{model.name}: reported change set is wrong")
            if any(n not in causes for n in diff):
                problems.append(
                    f"{model.name}: witness changes a non-cause after all"
                )
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        5, "presumption verdicts with replayed counterexamples", problems,
        start, detail="violated on m2 and antidote, satisfied on suzy",
    )


def test_criterion_06_empirical_fixed_points(m2, suzy, antidote, b0, g1):
    start = time.perf_counter()
    problems = []
    try:
        expected = {
            "m2": [{"J1", "J2", "B"}],
            "suzy": [{"S", "H_S", "G"}],
            "antidote": [{"J1", "J2", "J3", "B"}],
        }
        for model, phi in ((m2, b0), (suzy, g1), (antidote, b0)):
            found = [
                set(p.causes)
                for p in find_empirical_fixed_points(model, phi).points
            ]
            if found != expected[model.name]:
                problems.append(f"{model.name} fixed points {found}")
        report = check_empirical(m2, b0, {"J2", "B"})
        if report.satisfied:
            problems.append("hp causes of m2 pass the empirical check")
        else:
            ce = report.counterexample
            if (ce.variable, ce.direction) != ("J1", "spurious-witness"):
                problems.append(
                    f"empirical offender {ce.variable} ({ce.direction})"
                )
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        6, "empirical fixed points; hp is not empirical on m2", problems,
        start, detail="J1 spuriously witnessed under {J2, B}",
    )


SWEEP_COUNT = 500
SWEEP_PARAMS = RandomModelParams(
    n_endogenous=4, max_range=3, max_parents=2, exo_count=2
)


@pytest.fixture(scope="module")
def sweep():
    return property_suite(SWEEP_COUNT, SWEEP_PARAMS, seed=97, oracle=False)


def test_criterion_07_hp_causes_are_putative(sweep):
    start = time.perf_counter()
    problems = []
    seconds = dict(sweep.seconds)["prop1"]
    if sweep.count < 500:
        problems.append(f"only {sweep.count} models")
    if sweep.prop1_violations:
        problems.append(
            f"{len(sweep.prop1_violations)} violations, "
            f"first at seed {sweep.prop1_violations[0][0]}"
        )
    if seconds > 60:
        problems.append(f"sweep took {seconds:.1f}s, budget 60s")
    record_criterion(
        7, "every hp cause is putative across the sweep", not problems,
        "; ".join(problems[:3]) or f"{sweep.count} models, {seconds:.1f}s",
    )
    assert not problems, "; ".join(problems)
    assert time.perf_counter() - start < 1


def test_criterion_08_fixed_points_are_principled(sweep):
    problems = []
    seconds = dict(sweep.seconds)["prop2"]
    points = sum(k * n for k, n in sweep.fixed_point_counts)
    if sweep.count < 500:
        problems.append(f"only {sweep.count} models")
    if sweep.prop2_violations:
        problems.append(
            f"{len(sweep.prop2_violations)} violations, "
            f"first at seed {sweep.prop2_violations[0][0]}"
        )
    if seconds > 120:
        problems.append(f"sweep took {seconds:.1f}s, budget 120s")
    record_criterion(
        8, "every swept fixed point is similarity-based and presumptive",
        not problems,
        "; ".join(problems[:3]) or f"{points} points, {seconds:.1f}s",
    )
    assert not problems, "; ".join(problems)


def test_criterion_09_oracle_equivalence():
    start = time.perf_counter()
    problems = []
    hp = get_theory("hp")
    try:
        for i in range(200):
            params = RandomModelParams(
                n_endogenous=2 + i % 3,
                max_range=2 + i % 2,
                max_parents=2,
                exo_count=2,
            )
            model = random_model(params, child_seed(31, i))
            sink = model.dependency_order()[-1]
            phi = atom(sink, model.solve()[sink])
            if hp_causes(model, phi) != reference.hp_causes_naive(model, phi):
                problems.append(f"hp mismatch at seed {child_seed(31, i)}")
            fast = frozenset(putative_causes(model, phi, "hp"))
            if fast != reference.putative_causes_naive(model, phi, hp):
                problems.append(
                    f"putative mismatch at seed {child_seed(31, i)}"
                )
            report = check_presumption(model, phi, "hp")
            offender = (
                report.counterexample.variable
                if report.counterexample is not None
                else None
            )
            naive = reference.presumption_verdict_naive(model, phi, hp)
            if (report.satisfied, offender) != naive:
                problems.append(
                    f"presumption mismatch at seed {child_seed(31, i)}"
                )
            if len(problems) > 2:
                break
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        9, "optimized engine agrees with the brute-force reference",
        problems, start, detail="200 models, 600 comparisons",
    )


def test_criterion_10_parser_round_trip_and_fuzz(corpus):
    start = time.perf_counter()
    problems = []
    try:
        for entry in corpus.values():
            result = parse_model(entry.source.encode())
            if not result.ok or format_model(result.model) != entry.source:
                problems.append(f"{entry.name} does not round-trip")
        rng = random.Random(100_003)
        disagreements = 0
        for _ in range(100_000):
            result = parse_model(rng.randbytes(rng.randint(0, 24)))
            if (result.model is not None) != result.ok:
                disagreements += 1
        if disagreements:
            problems.append(
                f"{disagreements} inputs with neither or both of "
                "model and error diagnostics"
            )
    except Exception as exc:
        problems.append(f"crashed: {exc!r}")
    _finish(
        10, "corpus round-trips; 100000 fuzz inputs without a crash",
        problems, start, detail="4 files, 100000 byte strings",
    )
