"""Compare the compiled and pure-Python kernel backends.

Kernel micro-benchmarks call both modules directly; the end-to-end numbers
run the pipeline in a subprocess per backend so that import-time selection
is exercised as users see it.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import random
import subprocess
import sys
import timeit

from wehrhart import kernels
from wehrhart.poly import B, encode
from wehrhart.todd import scaled_table

PIPELINE = """
import json, time
from wehrhart import WeightPoly, parametric_weighted_count, kernels
from wehrhart.alcoved import random_alcoved
cases = [(2, [3, 2]), (3, [1, 1, 1]), (3, [2, 1, 0])]
out = {"backend": kernels.BACKEND}
for d, exps in cases:
    P = random_alcoved(d, 8, 11).polytope()
    w = WeightPoly.monomial(exps)
    best = min(_time(lambda: parametric_weighted_count(P, w)) for _ in range(REPEAT))
    out[f"d={d} w=x^{exps}"] = best
print(json.dumps(out))
"""

PRELUDE = """
import time
def _time(fn):
    t = time.perf_counter(); fn(); return time.perf_counter() - t
"""


def random_terms(rng, size, nvars=6, deg=4):
    out = {}
    for _ in range(size):
        mono = {B(rng.randrange(nvars)): rng.randint(1, deg) for _ in range(rng.randint(1, 3))}
        out[encode(mono)] = rng.randint(-10 ** 6, 10 ** 6)
    return out


def micro(repeat):
    rng = random.Random(0)
    a, b = random_terms(rng, 300), random_terms(rng, 300)
    table, _ = scaled_table(8)
    shift = B(0).shift
    rows = []
    for name, mod in sorted(kernels.available_backends().items()):
        rows.append((name, {
            "mul 300x300": min(timeit.repeat(lambda: mod.mul(a, b), number=3, repeat=repeat)) / 3,
            "todd 300": min(timeit.repeat(lambda: mod.todd(a, shift, table), number=20, repeat=repeat)) / 20,
            "add_into 300": min(timeit.repeat(lambda: mod.add_into(dict(a), b, 3), number=50, repeat=repeat)) / 50,
        }))
    return rows


def end_to_end(repeat):
    rows = []
    for name, env in (("cython", {}), ("python", {"WEHRHART_PURE_PYTHON": "1"})):
        code = PRELUDE + PIPELINE.replace("REPEAT", str(repeat))
        res = subprocess.run([sys.executable, "-c", code], env={**os.environ, **env},
                             capture_output=True, text=True, check=True)
        data = json.loads(res.stdout)
        rows.append((data.pop("backend"), data))
    return rows


def show(title, rows):
    print(title)
    keys = list(rows[0][1])
    width = max(len(k) for k in keys)
    print(" " * (width + 2) + "".join(f"{name:>12}" for name, _ in rows))
    for k in keys:
        print(f"{k:<{width + 2}}" + "".join(f"{r[k] * 1e3:>10.2f}ms" for _, r in rows))
    print()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    show("kernels", micro(args.repeat))
    show("pipeline (best of repeats)", end_to_end(args.repeat))


if __name__ == "__main__":
    main()
