"""Both kernel backends must give identical answers."""

import json
import os
import subprocess
import sys

import pytest

PROBE = r"""
import json, random
from packcolor import _accel
from packcolor.density import format_rational, mad_bruteforce, mad_exact
from packcolor.enumerate import random_subcubic
from packcolor.graph import petersen, prism
from packcolor.packing import PackingSpec, solve
from packcolor.reducibility import build_lemma_config, check_reducible

spec = PackingSpec((1, 1, 2, 2))
rng = random.Random(11)
gs = [random_subcubic(rng.randint(3, 12), rng) for _ in range(25)] + [petersen(), prism(5)]
out = {"backend": _accel.backend(), "solve": [], "mad": [], "lemmas": []}
for g in gs:
    r = solve(g, spec)
    out["solve"].append([r.status.value, None if r.coloring is None else list(r.coloring.classes)])
    out["mad"].append([format_rational(mad_exact(g)[0]), format_rational(mad_bruteforce(g))])
for lemma in ("adjacent_two", "tool"):
    for c in build_lemma_config(lemma):
        v = check_reducible(c)
        out["lemmas"].append([c.name, c.variant, v.reducible, v.scenarios, v.max_repair_size])
print(json.dumps(out))
"""


def probe(disable: str) -> dict:
    env = dict(os.environ, PACKCOLOR_DISABLE_NUMBA=disable)
    proc = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True,
                          text=True, check=True, timeout=600)
    return json.loads(proc.stdout.strip().splitlines()[-1])


@pytest.fixture(scope="module")
def results():
    return probe("0"), probe("1")


def test_fallback_is_selected(results):
    numba_run, numpy_run = results
    assert numpy_run["backend"] == "numpy"
    assert numba_run["backend"] in ("numba", "numpy")


def test_backends_agree(results):
    a, b = results
    for key in ("solve", "mad", "lemmas"):
        assert a[key] == b[key], key


def test_mad_agrees_with_brute_force(results):
    for exact, brute in results[1]["mad"]:
        assert exact == brute
