"""Time the hot kernels under numba and under the plain numpy fallback.

Each backend runs in its own interpreter because the switch is read at
import time:

    python benchmarks/bench_kernels.py            # both backends, table
    python benchmarks/bench_kernels.py --worker   # one backend, JSON (internal)
"""

from __future__ import annotations

import argparse
import json
import os
import random
import subprocess
import sys
import time


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_worker(repeat: int) -> dict:
    from packcolor import _accel
    from packcolor.density import mad_bruteforce
    from packcolor.enumerate import random_subcubic
    from packcolor.graph import petersen, prism
    from packcolor.packing import PackingSpec, solve
    from packcolor.reducibility import build_lemma_config, check_reducible

    spec = PackingSpec((1, 1, 2, 2))
    rng = random.Random(7)
    randoms = [random_subcubic(16, rng) for _ in range(5)]
    two_neighbor = build_lemma_config("two_neighbor")
    cases = {
        "solve petersen (unsat)": lambda: solve(petersen(), spec),
        "solve prism 3..8": lambda: [solve(prism(n), spec) for n in range(3, 9)],
        "mad brute force n=16 x5": lambda: [mad_bruteforce(g) for g in randoms],
        "reducibility two_neighbor": lambda: [check_reducible(c) for c in two_neighbor],
    }
    out = {"backend": _accel.backend(), "times": {}}
    for name, fn in cases.items():
        fn()  # warm-up (numba compile / disk cache load)
        out["times"][name] = _best_of(fn, repeat)
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    if args.worker:
        print(json.dumps(run_worker(args.repeat)))
        return 0

    results = {}
    for disable in ("0", "1"):
        env = dict(os.environ, PACKCOLOR_DISABLE_NUMBA=disable)
        proc = subprocess.run([sys.executable, __file__, "--worker", "--repeat", str(args.repeat)],
                              env=env, capture_output=True, text=True, check=True)
        res = json.loads(proc.stdout.strip().splitlines()[-1])
        results[res["backend"]] = res["times"]

    names = list(next(iter(results.values())))
    print(f"{'kernel':32s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name in names:
        a = results.get("numba", {}).get(name)
        b = results.get("numpy", {}).get(name)
        sp = f"{b / a:8.1f}" if a and b else "     n/a"
        fa = f"{a:10.4f}" if a is not None else "       n/a"
        fb = f"{b:10.4f}" if b is not None else "       n/a"
        print(f"{name:32s} {fa} {fb} {sp}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
