from __future__ import annotations

from fractions import Fraction

import pytest

from actualcause import (
    Formula,
    InterventionError,
    UnknownModelError,
    UnknownTheoryError,
    UnknownVariableError,
    atom,
    butfor_causes,
    get_theory,
    hp_causes,
    hp_complex_causes,
    table_theory,
)
from actualcause.formulas import Not


def test_butfor_sets(m1, m2, suzy, antidote, b0, g1):
    assert set(butfor_causes(m1, b0)) == {"B"}
    assert set(butfor_causes(m2, b0)) == {"J2", "B"}
    assert set(butfor_causes(suzy, g1)) == {"G"}
    assert set(butfor_causes(antidote, b0)) == {"J2", "J3", "B"}


def test_butfor_records_first_flipping_value(m2, b0):
    flips = butfor_causes(m2, b0)
    # J2's range is declared 0, 1/2, 1 and 0 already falsifies
    assert flips["J2"] == 0
    assert flips["B"] == 1


def test_butfor_empty_when_query_fails(m1):
    assert butfor_causes(m1, atom("B", 1)) == {}


def test_theories_reject_intervention_prefix(m1, b0):
    prefixed = Formula(b0, intervention=(("J2", 1),))
    with pytest.raises(InterventionError):
        butfor_causes(m1, prefixed)
    with pytest.raises(InterventionError):
        hp_causes(m1, prefixed)


def test_hp_sets(m1, m2, suzy, antidote, b0, g1):
    assert hp_causes(m1, b0) == {"J1", "J2", "B"}
    assert hp_causes(m2, b0) == {"J2", "B"}
    assert hp_causes(suzy, g1) == {"S", "H_S", "G"}
    assert hp_causes(antidote, b0) == {"J2", "J3", "B"}


def test_hp_complex_cause_structure_m1(m1, b0):
    causes = hp_complex_causes(m1, b0)
    assert [sorted(c.variables) for c in causes] == [["B"], ["J1", "J2"]]
    joint = causes[1].witnesses[0]
    assert joint.setting == (("J1", 0), ("J2", Fraction(1, 2)))
    assert joint.fixed == ()


def test_hp_witness_held_set_suzy(suzy, g1):
    causes = hp_complex_causes(suzy, g1)
    throw = next(c for c in causes if c.variables == {"S"})
    witness = throw.witnesses[0]
    assert witness.setting == (("S", 0),)
    # the backup hitter's miss has to be held fixed for S to matter
    assert witness.fixed == (("H_B", 0),)


def test_hp_minimality_prunes_supersets(m2, b0):
    causes = hp_complex_causes(m2, b0)
    sets = [c.variables for c in causes]
    assert sets == [{"J2"}, {"B"}]
    for a in sets:
        for b in sets:
            assert not a < b


def test_all_witnesses_requested(m1, b0):
    first_only = hp_complex_causes(m1, b0)
    everything = hp_complex_causes(m1, b0, all_witnesses=True)
    assert all(len(c.witnesses) == 1 for c in first_only)
    paired = dict(zip(
        [c.variables for c in everything],
        [len(c.witnesses) for c in everything],
    ))
    assert paired[frozenset({"B"})] >= 2
    # the first witness is the same either way
    assert everything[0].witnesses[0] == first_only[0].witnesses[0]


def test_theory_gate_returns_empty_on_failed_query(m1):
    assert get_theory("hp")(m1, atom("B", 1)) == frozenset()
    assert get_theory("butfor")(m1, atom("B", 1)) == frozenset()


def test_theory_registry(m2, b0):
    assert get_theory("butfor")(m2, b0) == {"J2", "B"}
    theory = get_theory("hp")
    assert get_theory(theory) is theory
    with pytest.raises(UnknownTheoryError):
        get_theory("bogus")


def test_table_theory_lookup_and_fail_closed(m2, b0):
    theory = table_theory(
        "fixed", {("m2", "(B = 0)"): {"J2"}}, {"m2": m2}
    )
    assert theory(m2, b0) == {"J2"}
    assert not theory.warnings
    assert theory(m2, Not(atom("B", 1))) == frozenset()
    assert len(theory.warnings) == 1
    assert "!(B = 1)" in theory.warnings[0]


def test_table_theory_formula_normalization(m2, b0):
    # equivalent spellings of the key resolve to the same entry
    theory = table_theory(
        "fixed", {("m2", atom("B", 0)): {"J2"}}, {"m2": m2}
    )
    assert theory(m2, b0) == {"J2"}


def test_table_theory_unknown_model(m1, m2, b0):
    theory = table_theory(
        "fixed", {("m2", "(B = 0)"): {"J2"}}, {"m2": m2}
    )
    with pytest.raises(UnknownModelError):
        theory(m1, b0)
    with pytest.raises(UnknownModelError):
        table_theory("bad", {("nope", "(B = 0)"): set()}, {"m2": m2})


def test_table_theory_checks_variables(m2):
    with pytest.raises(UnknownVariableError):
        table_theory("bad", {("m2", "(B = 0)"): {"Q"}}, {"m2": m2})
