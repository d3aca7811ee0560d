from __future__ import annotations

import itertools
import random
from array import array

import pytest

from actualcause import backend_name
from actualcause._kernel_py import Kernel as PyKernel
from actualcause.coded import Engine, engine_for
from actualcause.formulas import And, Not, atom
from actualcause.random_models import RandomModelParams, random_model

compiled = pytest.importorskip("actualcause._kernel")
CKernel = compiled.Kernel


def clone_kernel(engine: Engine, cls):
    return cls(
        engine.kernel_args[0],
        *[array("i", a) for a in engine.kernel_args[1:]],
    )


def test_compiled_backend_is_active_by_default():
    assert backend_name() in {"c", "py"}


@pytest.mark.parametrize("seed", range(25))
def test_backends_agree_on_random_models(seed):
    model = random_model(RandomModelParams(5, 3, 2, 2), seed=seed)
    engine, base = engine_for(model)
    sink = model.dependency_order()[-1]
    phi = And(
        atom(sink, model.solve()[sink]),
        Not(Not(atom(sink, model.solve()[sink]))),
    )
    prog = engine.compile_matrix(phi)

    fast = clone_kernel(engine, CKernel)
    slow = clone_kernel(engine, PyKernel)

    rng = random.Random(seed)
    sizes = [len(r) for r in engine.ranges]
    for _ in range(200):
        vec = array("i", base)
        for pos in range(len(sizes)):
            if rng.random() < 0.4:
                vec[pos] = rng.randrange(sizes[pos])
        out_fast = array("i", [0] * len(sizes))
        out_slow = array("i", [0] * len(sizes))
        fast.solve_into(vec, out_fast)
        slow.solve_into(vec, out_slow)
        assert list(out_fast) == list(out_slow)
        assert fast.holds(vec, prog) == slow.holds(vec, prog)
        flips_fast = array("i", [0] * len(sizes))
        flips_slow = array("i", [0] * len(sizes))
        assert fast.butfor_flips(vec, prog, flips_fast) == slow.butfor_flips(
            vec, prog, flips_slow
        )
        assert list(flips_fast) == list(flips_slow)


def test_exhaustive_agreement_small_model(m2):
    engine, base = engine_for(m2)
    phi = atom("B", 0)
    prog = engine.compile_matrix(phi)
    fast = clone_kernel(engine, CKernel)
    slow = clone_kernel(engine, PyKernel)
    sizes = [len(r) for r in engine.ranges]
    pools = [[-1] + list(range(s)) for s in sizes]
    for combo in itertools.product(*pools):
        vec = array("i", combo)
        a, b = array("i", [0] * 3), array("i", [0] * 3)
        fast.solve_into(vec, a)
        slow.solve_into(vec, b)
        assert list(a) == list(b)
        fa, fb = array("i", [0] * 3), array("i", [0] * 3)
        assert fast.butfor_flips(vec, prog, fa) == slow.butfor_flips(
            vec, prog, fb
        )
        assert list(fa) == list(fb)


def test_variable_limit_enforced():
    n = 61
    args = dict(
        n=n,
        par_off=array("i", [0] * (n + 1)),
        parents=array("i", []),
        strides=array("i", []),
        tbl_off=array("i", [0] * (n + 1)),
        tbl=array("i", []),
        sizes=array("i", [1] * n),
    )
    with pytest.raises(ValueError):
        PyKernel(*args.values())
    with pytest.raises(ValueError):
        CKernel(*args.values())
