"""Property sweep over random models.

Each seeded model is queried with the formula pinning its last
variable in dependency order at the solved value, so the query always
holds and the interesting machinery engages.  Three properties are
checked per model:

  (a) every HP cause is a putative HP cause;
  (b) every empirical fixed point, read back as a table theory, is
      similarity-based and satisfies the presumption principle;
  (c) the optimized HP causes equal the brute-force reference.

Violations carry the seed so any failure replays in isolation.  The
number of fixed points per model is tallied but deliberately not
asserted: nothing guarantees a nonempty collection in advance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import reference
from .formulas import atom
from .meta import (
    check_presumption,
    check_similarity,
    find_empirical_fixed_points,
    putative_causes,
)
from .printer import format_matrix
from .random_models import RandomModelParams, random_model
from .theories import hp_causes, table_theory


@dataclass(frozen=True)
class SweepReport:
    count: int
    seed: int
    params: RandomModelParams
    prop1_violations: tuple = ()
    prop2_violations: tuple = ()
    oracle_mismatches: tuple = ()
    fixed_point_counts: tuple = ()
    seconds: tuple = ()

    @property
    def ok(self) -> bool:
        return not (
            self.prop1_violations
            or self.prop2_violations
            or self.oracle_mismatches
        )

    def describe(self) -> str:
        timing = ", ".join(f"{k} {v:.2f}s" for k, v in self.seconds)
        tally = ", ".join(f"{k} fp x{v}" for k, v in self.fixed_point_counts)
        status = "ok" if self.ok else (
            f"{len(self.prop1_violations)} prop1 / "
            f"{len(self.prop2_violations)} prop2 / "
            f"{len(self.oracle_mismatches)} oracle failures"
        )
        return (
            f"{self.count} models (seed {self.seed}): {status}; "
            f"fixed points: {tally}; {timing}"
        )


def child_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def property_suite(
    count: int = 100,
    params: RandomModelParams | None = None,
    seed: int = 0,
    oracle: bool = True,
) -> SweepReport:
    params = params or RandomModelParams()
    prop1 = []
    prop2 = []
    mismatches = []
    tally = {}
    clocks = {"prop1": 0.0, "prop2": 0.0, "oracle": 0.0}

    for index in range(count):
        child = child_seed(seed, index)
        model = random_model(params, child)
        sink = model.dependency_order()[-1]
        phi = atom(sink, model.solve()[sink])

        start = time.perf_counter()
        hp = hp_causes(model, phi)
        putative = putative_causes(model, phi, "hp")
        for name in model.signature.endogenous_names:
            if name in hp and name not in putative:
                prop1.append((child, name))
        clocks["prop1"] += time.perf_counter() - start

        start = time.perf_counter()
        found = find_empirical_fixed_points(model, phi)
        tally[len(found.points)] = tally.get(len(found.points), 0) + 1
        for point in found.points:
            theory = table_theory(
                f"fp-{child}",
                {(model.name, format_matrix(phi)): point.causes},
                {model.name: model},
            )
            for report in (
                check_similarity(model, phi, theory),
                check_presumption(model, phi, theory),
            ):
                if not report.satisfied:
                    prop2.append(
                        (child, sorted(point.causes), report.principle,
                         report.counterexample.variable)
                    )
        clocks["prop2"] += time.perf_counter() - start

        if oracle:
            start = time.perf_counter()
            naive = reference.hp_causes_naive(model, phi)
            if naive != hp:
                mismatches.append((child, sorted(hp), sorted(naive)))
            clocks["oracle"] += time.perf_counter() - start

    return SweepReport(
        count,
        seed,
        params,
        tuple(prop1),
        tuple(prop2),
        tuple(mismatches),
        tuple(sorted(tally.items())),
        tuple(sorted(clocks.items())),
    )
