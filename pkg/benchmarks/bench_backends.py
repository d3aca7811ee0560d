"""Compare the compiled kernel against the pure-Python fallback.

The backend is fixed at import time, so this script re-runs itself in
a subprocess per backend and prints one table at the end:

    python3 benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import os
import pathlib
import subprocess
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))


def tasks():
    from actualcause.coded import engine_for
    from actualcause.formulas import atom
    from actualcause.meta import find_empirical_fixed_points
    from actualcause.random_models import RandomModelParams, random_model
    from actualcause.theories import hp_causes

    wide = random_model(RandomModelParams(10, 3, 3, 2), seed=11)
    sink = wide.dependency_order()[-1]
    phi = atom(sink, wide.solve()[sink])
    engine, vec = engine_for(wide)
    prog = engine.compile_matrix(phi)

    def solve(repeat):
        for _ in range(repeat * 20000):
            engine.solve_codes(vec)

    def butfor(repeat):
        for _ in range(repeat * 5000):
            engine.butfor_flips(vec, prog)

    medium = random_model(RandomModelParams(8, 3, 2, 2), seed=11)
    msink = medium.dependency_order()[-1]
    mphi = atom(msink, medium.solve()[msink])

    def hp(repeat):
        for _ in range(repeat):
            hp_causes(medium, mphi)

    small = random_model(RandomModelParams(6, 3, 2, 2), seed=11)
    ssink = small.dependency_order()[-1]
    sphi = atom(ssink, small.solve()[ssink])

    def fixedpoints(repeat):
        for _ in range(repeat):
            find_empirical_fixed_points(small, sphi)

    return [
        ("solve x20k (10 vars)", solve),
        ("butfor x5k (10 vars)", butfor),
        ("hp causes (8 vars)", hp),
        ("fixed points (6 vars)", fixedpoints),
    ]


def worker(repeat: int) -> None:
    from actualcause.backends import backend_name

    results = {"backend": backend_name(), "times": {}}
    for name, fn in tasks():
        timed = []
        for _ in range(3):
            start = time.perf_counter()
            fn(repeat)
            timed.append(time.perf_counter() - start)
        results["times"][name] = min(timed)
    print(json.dumps(results))


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=1)
    parser.add_argument("--worker", action="store_true")
    args = parser.parse_args()
    if args.worker:
        worker(args.repeat)
        return 0

    rows = {}
    for backend in ("py", "c"):
        env = dict(os.environ, ACTUAL_CAUSE_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        data = json.loads(proc.stdout)
        if data["backend"] != backend:
            raise SystemExit(f"backend selection failed: {data['backend']}")
        rows[backend] = data["times"]

    width = max(len(name) for name in rows["py"])
    print(f"{'task':<{width}}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}")
    for name in rows["py"]:
        pure = rows["py"][name]
        compiled = rows["c"][name]
        print(
            f"{name:<{width}}  {pure:>10.3f}  {compiled:>12.3f}  "
            f"{pure / compiled:>7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
