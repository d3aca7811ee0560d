"""Meta-causal analysis over the counterfactual model space.

Given a model M, a formula, and a causal theory, the space M(C) for
C = Cause(M, phi) contains every model obtained by pinning part of C
to arbitrary values while freezing part of the remainder at its actual
values.  The definitions here quantify over that space:

  putative  V:  some member keeps V at its actual value and makes V a
                but-for cause.
  preempted V:  putative but not designated a cause.

The presumption principle demands that every witness for a preempted
cause visibly changes some non-cause; the similarity principle demands
ButFor subseteq Cause subseteq Putative; the empirical principle asks
whether a candidate set reproduces itself as exactly the variables
witnessed by members that leave all non-candidates untouched.

Enumeration order (cause subsets by size then declaration, values in
range order, freeze subsets likewise) is part of the contract, as is
deduplication of members by the model they denote: pinning a variable
at a value it is already structurally pinned to yields the same model.
All verdicts report the first offender under that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .coded import engine_for
from .errors import UnknownVariableError
from .formulas import check_matrix
from .limits import check_enumeration_size
from .model import Provenance, subsets
from .theories import _require_matrix, butfor_causes, get_theory

PRESUMPTION = "presumption"
SIMILARITY = "similarity"
EMPIRICAL = "empirical"

MISSING_WITNESS = "missing-witness"
SPURIOUS_WITNESS = "spurious-witness"

BUT_FOR = "but-for"
OVERDETERMINING = "overdetermining"
PREEMPTED = "preempted"
PUTATIVE_ONLY = "putative-only-unclassified"
NON_CAUSE = "non-cause"

STATUSES = (BUT_FOR, OVERDETERMINING, PREEMPTED, PUTATIVE_ONLY, NON_CAUSE)


@dataclass(frozen=True)
class CauseVerdict:
    variable: str
    status: str
    witnesses: tuple = ()
    blocking: tuple = ()


@dataclass(frozen=True)
class Counterexample:
    variable: str
    provenance: Provenance | None = None
    changed: tuple = ()
    direction: str | None = None


@dataclass(frozen=True)
class PrincipleReport:
    principle: str
    satisfied: bool
    counterexample: Counterexample | None = None
    detail: str = ""

    @property
    def verdict(self) -> str:
        return "satisfied" if self.satisfied else "violated"


@dataclass(frozen=True)
class FixedPoint:
    causes: frozenset
    witnesses: tuple


@dataclass(frozen=True)
class FixedPointResult:
    matrix: object
    points: tuple
    searched: int


class _Study:
    """One model/formula pair with the shared machinery: compiled
    engine, compiled formula, actual solution, and a member cache
    keyed by the model a pin vector denotes."""

    def __init__(self, model, formula, force: bool = False):
        self.model = model
        self.matrix = _require_matrix(formula)
        model.ensure_valid()
        check_matrix(self.matrix, model.signature)
        check_enumeration_size(model, force)
        self.engine, self.base = engine_for(model)
        self.prog = self.engine.compile_matrix(self.matrix)
        self.endo = model.signature.endogenous_names
        self.actual = self.engine.solve_codes(self.base)
        self.actual_values = self.engine.decode(self.actual)
        self._memo = {}

    def member(self, vec):
        """(solution codes, but-for mask) for the member at vec."""
        key = self.engine.canonical_key(vec)
        hit = self._memo.get(key)
        if hit is None:
            codes = self.engine.solve_codes(vec)
            mask, _ = self.engine.butfor_flips(vec, self.prog)
            hit = (codes, mask)
            self._memo[key] = hit
        return hit

    def space(self, causes):
        """Yield (vec, provenance, first) over the member space rooted
        at this model; first is False when an earlier provenance
        denoted the same model."""
        engine = self.engine
        included = set(causes)
        pinned = [n for n in self.endo if n in included]
        others = [n for n in self.endo if n not in included]
        seen = set()
        for changed in subsets(pinned):
            positions = [engine.pos[n] for n in changed]
            pools = [engine.ranges[p] for p in positions]
            for codes in itertools.product(*(range(len(r)) for r in pools)):
                pins = list(zip(positions, codes))
                values = tuple(r[c] for r, c in zip(pools, codes))
                for part in subsets(others):
                    vec = engine.extend(
                        self.base,
                        pins
                        + [
                            (engine.pos[n], self.actual[engine.pos[n]])
                            for n in part
                        ],
                    )
                    key = engine.canonical_key(vec)
                    first = key not in seen
                    seen.add(key)
                    yield (
                        vec,
                        Provenance(tuple(zip(changed, values)), tuple(part)),
                        first,
                    )

    def value_at(self, codes, name):
        pos = self.engine.pos[name]
        return self.engine.ranges[pos][codes[pos]]

    def changed_at(self, codes, name) -> bool:
        pos = self.engine.pos[name]
        return codes[pos] != self.actual[pos]

    def flips_at(self, mask, codes, name) -> bool:
        """Is name a but-for cause, still at its actual value, in the
        member with this solution and mask?"""
        pos = self.engine.pos[name]
        return bool(mask >> pos & 1) and codes[pos] == self.actual[pos]


def _putative(study: _Study, causes) -> dict:
    """name -> [(provenance, solution codes), ...] over first-seen
    members in which the variable is an unchanged but-for cause."""
    out = {name: [] for name in study.endo}
    for vec, prov, first in study.space(causes):
        if not first:
            continue
        codes, mask = study.member(vec)
        if mask < 0:
            continue
        for name in study.endo:
            if study.flips_at(mask, codes, name):
                out[name].append((prov, codes))
    return out


def putative_causes(model, formula, theory="hp", force: bool = False) -> dict:
    """Putative causes with every witnessing provenance, deduplicated
    by the member model it denotes."""
    theory = get_theory(theory)
    study = _Study(model, formula, force)
    causes = theory(model, study.matrix)
    put = _putative(study, causes)
    return {
        name: tuple(prov for prov, _ in hits)
        for name, hits in put.items()
        if hits
    }


def _blocking(study: _Study, causes, hits) -> tuple:
    """Per witness, the first changed non-cause, or None."""
    out = []
    for _, codes in hits:
        found = None
        for name in study.endo:
            if name not in causes and study.changed_at(codes, name):
                found = name
                break
        out.append(found)
    return tuple(out)


def classify(model, formula, theory="hp", force: bool = False) -> tuple:
    """One verdict per endogenous variable, in declaration order.

    Statuses partition the signature: but-for (designated and flips
    alone), overdetermining (designated, no solo flip), preempted
    (putative only), putative-only-unclassified (flips alone yet not
    designated), non-cause (none of the above).
    """
    theory = get_theory(theory)
    study = _Study(model, formula, force)
    causes = theory(model, study.matrix)
    butfor = butfor_causes(model, study.matrix)
    put = _putative(study, causes)
    verdicts = []
    for name in study.endo:
        hits = put.get(name, [])
        if name in causes and name in butfor:
            status = BUT_FOR
        elif name in causes:
            status = OVERDETERMINING
        elif name in butfor:
            status = PUTATIVE_ONLY
        elif hits:
            status = PREEMPTED
        else:
            status = NON_CAUSE
        blocking = ()
        if status == PREEMPTED:
            blocking = _blocking(study, causes, hits)
        verdicts.append(
            CauseVerdict(
                name, status, tuple(prov for prov, _ in hits), blocking
            )
        )
    return tuple(verdicts)


def check_presumption(
    model, formula, theory="hp", force: bool = False
) -> PrincipleReport:
    """Every witness of a preempted cause must change some non-cause.

    Violated when a preempted variable has a witnessing member whose
    solution differs from the actual one only on designated causes;
    the counterexample lists that full change set.
    """
    theory = get_theory(theory)
    study = _Study(model, formula, force)
    causes = theory(model, study.matrix)
    put = _putative(study, causes)
    for name in study.endo:
        if name in causes:
            continue
        for prov, codes in put.get(name, []):
            changed = tuple(
                (w, study.actual_values[w], study.value_at(codes, w))
                for w in study.endo
                if study.changed_at(codes, w)
            )
            if all(w in causes for w, _, _ in changed):
                return PrincipleReport(
                    PRESUMPTION,
                    False,
                    Counterexample(name, prov, changed),
                    detail=(
                        f"preempted cause {name} has a witness "
                        f"({prov.describe()}) in which every changed "
                        "variable is itself a designated cause"
                    ),
                )
    return PrincipleReport(
        PRESUMPTION,
        True,
        detail="every witness of a preempted cause changes a non-cause",
    )


def check_similarity(
    model, formula, theory="hp", force: bool = False
) -> PrincipleReport:
    """ButFor subseteq Cause subseteq Putative, first offender wins."""
    theory = get_theory(theory)
    study = _Study(model, formula, force)
    causes = theory(model, study.matrix)
    butfor = butfor_causes(model, study.matrix)
    for name in study.endo:
        if name in butfor and name not in causes:
            return PrincipleReport(
                SIMILARITY,
                False,
                Counterexample(name, direction="lower"),
                detail=f"but-for cause {name} is not designated a cause",
            )
    put = _putative(study, causes)
    for name in study.endo:
        if name in causes and not put.get(name):
            return PrincipleReport(
                SIMILARITY,
                False,
                Counterexample(name, direction="upper"),
                detail=f"designated cause {name} is not even putative",
            )
    return PrincipleReport(
        SIMILARITY,
        True,
        detail="but-for causes are designated and designated causes "
        "are putative",
    )


def _empirical_scan(study: _Study, causes) -> dict:
    """name -> first witnessing provenance among members that leave
    every non-candidate at its actual value."""
    witnessed = {}
    for vec, prov, first in study.space(causes):
        if not first:
            continue
        codes, mask = study.member(vec)
        if any(
            study.changed_at(codes, n) for n in study.endo if n not in causes
        ):
            continue
        if mask < 0:
            continue
        for name in study.endo:
            if name not in witnessed and study.flips_at(mask, codes, name):
                witnessed[name] = prov
    return witnessed


def check_empirical(
    model, formula, causes, force: bool = False
) -> PrincipleReport:
    """Is the candidate set a fixed point of the witnessing map?

    Fails in direction missing-witness when a candidate has no
    qualifying witness, and in direction spurious-witness when a
    non-candidate has one; the first failing variable in declaration
    order is reported.
    """
    causes = frozenset(causes)
    study = _Study(model, formula, force)
    unknown = causes - set(study.endo)
    if unknown:
        raise UnknownVariableError(
            "not endogenous: " + ", ".join(sorted(unknown))
        )
    witnessed = _empirical_scan(study, causes)
    for name in study.endo:
        if name in causes and name not in witnessed:
            return PrincipleReport(
                EMPIRICAL,
                False,
                Counterexample(name, direction=MISSING_WITNESS),
                detail=(
                    f"candidate {name} has no witness that leaves all "
                    "non-candidates unchanged (the => direction fails)"
                ),
            )
        if name not in causes and name in witnessed:
            return PrincipleReport(
                EMPIRICAL,
                False,
                Counterexample(
                    name,
                    provenance=witnessed[name],
                    direction=SPURIOUS_WITNESS,
                ),
                detail=(
                    f"non-candidate {name} is witnessed by "
                    f"{witnessed[name].describe()} (the <= direction "
                    "fails)"
                ),
            )
    return PrincipleReport(
        EMPIRICAL,
        True,
        detail="the candidate set is exactly the witnessed set",
    )


def find_empirical_fixed_points(
    model, formula, force: bool = False
) -> FixedPointResult:
    """Exhaustively test every subset of the endogenous variables.

    Candidates are enumerated by size then declaration order; each
    fixed point carries one witnessing provenance per member variable.
    When the formula fails in the model the empty set is the unique
    fixed point.
    """
    study = _Study(model, formula, force)
    points = []
    searched = 0
    for candidate in subsets(study.endo):
        searched += 1
        cset = frozenset(candidate)
        witnessed = _empirical_scan(study, cset)
        if set(witnessed) == cset:
            points.append(
                FixedPoint(
                    cset, tuple((n, witnessed[n]) for n in candidate)
                )
            )
    return FixedPointResult(study.matrix, tuple(points), searched)
