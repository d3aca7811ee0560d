from __future__ import annotations

from fractions import Fraction

import pytest

from actualcause import (
    Atom,
    CausalModel,
    Formula,
    If,
    InterventionError,
    InvalidModelError,
    Lit,
    OutOfRangeError,
    Signature,
    StructuralFunction,
    UnknownVariableError,
    Var,
    atom,
)
from actualcause.expressions import Bin, Comparison
from actualcause.formulas import And, Not, Or
from actualcause.model import Provenance, subsets


def tiny(body_b=None):
    # U -> A -> B with A copying U and B responding to A
    body_b = body_b or If(Comparison(">=", Var("A"), Lit(1)), Lit(0), Lit(1))
    return CausalModel(
        "tiny",
        Signature(
            exogenous=(("U", (0, 1)),),
            endogenous=(("A", (0, 1)), ("B", (0, 1))),
        ),
        (
            StructuralFunction("A", Var("U")),
            StructuralFunction("B", body_b),
        ),
        (("U", 1),),
    )


def test_solve_declaration_order():
    model = tiny()
    assert model.solve() == {"A": 1, "B": 0}
    assert list(model.solve()) == ["A", "B"]


def test_solution_values_are_exact():
    model = CausalModel(
        "exact",
        Signature(
            exogenous=(("U", (Fraction(1, 3),)),),
            endogenous=(("X", (Fraction(2, 3), Fraction(1, 3))),),
        ),
        (StructuralFunction("X", Bin("+", Var("U"), Var("U"))),),
        (("U", Fraction(1, 3)),),
    )
    assert model.solve() == {"X": Fraction(2, 3)}


def test_duplicate_declaration_rejected():
    model = CausalModel(
        "dup",
        Signature(
            exogenous=(("U", (0, 1)),),
            endogenous=(("A", (0, 1)), ("A", (0, 1))),
        ),
        (StructuralFunction("A", Lit(0)),),
        (("U", 0),),
    )
    codes = {d.code for d in model.validate()}
    assert "duplicate" in codes


def test_cycle_reported_with_participants():
    model = CausalModel(
        "loop",
        Signature(
            exogenous=(("U", (0, 1)),),
            endogenous=(("A", (0, 1)), ("B", (0, 1))),
        ),
        (
            StructuralFunction("A", Var("B")),
            StructuralFunction("B", Var("A")),
        ),
        (("U", 0),),
    )
    cycle = [d for d in model.validate() if d.code == "cycle"]
    assert cycle
    assert "A" in cycle[0].message and "B" in cycle[0].message
    with pytest.raises(InvalidModelError):
        model.solve()


def test_totality_counterexample():
    # A + 1 escapes {0, 1} when A = 1
    model = tiny(body_b=Bin("+", Var("A"), Lit(1)))
    bad = [d for d in model.validate() if d.code == "totality"]
    assert len(bad) == 1
    assert bad[0].variable == "B"
    assert bad[0].witness["assignment"]["A"] == 1
    assert bad[0].witness["result"] == 2


def test_context_value_checked():
    model = CausalModel(
        "ctx",
        Signature(
            exogenous=(("U", (0, 1)),),
            endogenous=(("A", (0, 1)),),
        ),
        (StructuralFunction("A", Var("U")),),
        (("U", 7),),
    )
    assert any(d.code == "context" for d in model.validate())


def test_intervene_overwrites_previous():
    model = tiny()
    once = model.intervene({"A": 0})
    twice = once.intervene({"A": 1})
    assert once.solve() == {"A": 0, "B": 1}
    assert twice.solve() == {"A": 1, "B": 0}
    # intervening at the current value still replaces the mechanism
    pinned = model.intervene({"A": 1})
    assert pinned.solve() == model.solve()
    assert pinned.intervene({"A": 0}).solve()["A"] == 0


def test_intervene_rejects_bad_targets():
    model = tiny()
    with pytest.raises(InterventionError):
        model.intervene({"U": 0})
    with pytest.raises(UnknownVariableError):
        model.intervene({"Z": 0})
    with pytest.raises(OutOfRangeError):
        model.intervene({"A": 5})


def test_empty_intervention_is_identity():
    model = tiny()
    assert model.intervene({}) is model


def test_intervened_name_is_readable():
    model = tiny()
    assert model.intervene({"A": 0}).name == "tiny[A := 0]"


def test_evaluate_matrix_connectives():
    model = tiny()
    a1 = atom("A", 1)
    b0 = atom("B", 0)
    assert model.evaluate(a1)
    assert model.evaluate(And(a1, b0))
    assert not model.evaluate(Not(a1))
    assert model.evaluate(Or(Not(a1), b0))


def test_evaluate_formula_with_intervention_prefix():
    model = tiny()
    formula = Formula(atom("B", 1), intervention=(("A", 0),))
    assert model.evaluate(formula)
    # the prefix does not leak into the base model
    assert model.solve()["B"] == 0


def test_out_of_range_atom_is_an_error_not_false():
    model = tiny()
    with pytest.raises(OutOfRangeError):
        model.evaluate(atom("A", 3))
    with pytest.raises(UnknownVariableError):
        model.evaluate(atom("Z", 0))
    # buried under negation it must still raise, never swallow
    with pytest.raises(OutOfRangeError):
        model.evaluate(Not(Atom("A", 3)))


def test_subsets_order_is_size_then_position():
    assert list(subsets(["x", "y", "z"])) == [
        (),
        ("x",),
        ("y",),
        ("z",),
        ("x", "y"),
        ("x", "z"),
        ("y", "z"),
        ("x", "y", "z"),
    ]


def test_counterfactual_space_count_m2(m2):
    members = list(m2.counterfactual_space(["J2"]))
    # 1 pin choice keeps the base, 3 alternative pins; times 4 freeze
    # subsets of {J1, B}
    assert len(members) == 16
    base = [p for _, p in members if p.is_base]
    assert len(base) == 1


def test_counterfactual_space_provenance_replays(m2):
    for member, provenance in m2.counterfactual_space(["J2", "B"]):
        assignment = dict(provenance.changed)
        actual = m2.solve()
        assignment.update({n: actual[n] for n in provenance.fixed})
        replay = m2.intervene(assignment) if assignment else m2
        assert replay.solve() == member.solve()
