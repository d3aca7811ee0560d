"""Seeded random model generation for the property harness.

Models are acyclic by construction: endogenous variables are built in
a shuffled order and may only depend on exogenous variables and on
variables built earlier, while the declared order stays V1..Vn so the
solver's topological sort gets exercised.  Function bodies are either
a direct copy of a compatible parent or an if-chain enumerating every
parent assignment, which makes totality automatic.  A quarter of the
ranges use halves instead of integers to keep exact arithmetic honest.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .expressions import And, Comparison, If, Lit, Var
from .model import CausalModel, Signature, StructuralFunction


@dataclass(frozen=True)
class RandomModelParams:
    n_endogenous: int = 4
    max_range: int = 3
    max_parents: int = 2
    exo_count: int = 2


def _make_range(rng, max_range: int) -> tuple:
    size = rng.randint(2, max_range)
    if rng.random() < 0.25:
        return tuple(Fraction(i, 2) for i in range(size))
    return tuple(Fraction(i) for i in range(size))


def _table_body(rng, parents, parent_ranges, own_range):
    if not parents:
        return Lit(rng.choice(own_range))
    combos = list(itertools.product(*parent_ranges))
    body = Lit(rng.choice(own_range))
    for combo in reversed(combos[:-1]):
        cond = Comparison("=", Var(parents[0]), Lit(combo[0]))
        for parent, value in zip(parents[1:], combo[1:]):
            cond = And(cond, Comparison("=", Var(parent), Lit(value)))
        body = If(cond, Lit(rng.choice(own_range)), body)
    return body


def random_model(params: RandomModelParams | None = None, seed: int = 0) -> CausalModel:
    params = params or RandomModelParams()
    rng = random.Random(seed)
    exogenous = tuple(
        (f"U{i + 1}", _make_range(rng, params.max_range))
        for i in range(params.exo_count)
    )
    names = [f"V{i + 1}" for i in range(params.n_endogenous)]
    endogenous = tuple((n, _make_range(rng, params.max_range)) for n in names)
    ranges = dict(exogenous) | dict(endogenous)

    build_order = list(range(params.n_endogenous))
    rng.shuffle(build_order)
    functions = []
    built = []
    for index in build_order:
        name = names[index]
        pool = [n for n, _ in exogenous] + built
        width = rng.randint(0, min(params.max_parents, len(pool)))
        parents = rng.sample(pool, width) if width else []
        own = ranges[name]
        if (
            len(parents) == 1
            and rng.random() < 0.3
            and set(ranges[parents[0]]) <= set(own)
        ):
            body = Var(parents[0])
        else:
            body = _table_body(
                rng, parents, [ranges[p] for p in parents], own
            )
        functions.append(StructuralFunction(name, body))
        built.append(name)

    context = tuple((n, rng.choice(values)) for n, values in exogenous)
    model = CausalModel(
        f"random_{seed}",
        Signature(exogenous, endogenous),
        tuple(functions),
        context,
    )
    model.ensure_valid()
    return model
