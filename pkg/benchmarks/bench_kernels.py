"""Compare the compiled and pure-Python kernels.

Times the two integer kernels directly, then an end-to-end scalar product
(n=2, r=(2,2)) with each backend in a fresh interpreter.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from bsk import _pykernels

try:
    from bsk import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = """
import time
from fractions import Fraction as F
from bsk import kernels
from bsk.scalar_product import drinfeld_model, scalar_sum
u = ((F(1, 3), F(-17, 4)), (F(22, 7), F(5, 9)))
v = ((F(-9, 2), F(31, 5)), (F(-2, 3), F(40, 11)))
m = drinfeld_model(2, 1, [[F(1, 11)], [F(3, 13)]])
t0 = time.perf_counter()
for _ in range({reps}):
    scalar_sum(v, u, m)
print(kernels.BACKEND, (time.perf_counter() - t0) / {reps})
"""


def kernel_inputs(rng):
    xs = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(6)]
    ys = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(6)]
    mat = [[rng.randint(-10 ** 4, 10 ** 4) for _ in range(12)] for _ in range(12)]
    return xs, ys, mat


def time_kernels(mod, xs, ys, mat, repeat):
    pp = min(timeit.repeat(lambda: mod.pair_products(xs, ys, [7, 3], [5]), number=2000, repeat=repeat))
    bd = min(timeit.repeat(lambda: mod.bareiss_det(mat), number=200, repeat=repeat))
    return pp / 2000, bd / 200


def end_to_end(pure: bool, reps: int) -> tuple:
    env = dict(os.environ)
    env.pop("BSK_PURE_PYTHON", None)
    if pure:
        env["BSK_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", END_TO_END.format(reps=reps)], env=env,
                         capture_output=True, text=True, check=True)
    backend, secs = out.stdout.split()
    return backend, float(secs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    xs, ys, mat = kernel_inputs(random.Random(0))

    rows = [("python", *time_kernels(_pykernels, xs, ys, mat, args.repeat))]
    if _ckernels is not None:
        assert _ckernels.pair_products(xs, ys, [7, 3], [5]) == _pykernels.pair_products(xs, ys, [7, 3], [5])
        assert _ckernels.bareiss_det(mat) == _pykernels.bareiss_det(mat)
        rows.append(("cython", *time_kernels(_ckernels, xs, ys, mat, args.repeat)))
    else:
        print("compiled kernels not built; timing the pure-Python backend only")

    print(f"{'backend':8s} {'pair_products':>16s} {'bareiss 12x12':>16s}")
    for name, pp, bd in rows:
        print(f"{name:8s} {pp * 1e6:13.2f} us {bd * 1e6:13.2f} us")
    if len(rows) == 2:
        print(f"speedup  {rows[0][1] / rows[1][1]:15.2f}x {rows[0][2] / rows[1][2]:15.2f}x")

    print("\nend-to-end scalar_sum, n=2, r=(2,2):")
    for pure in (True, False):
        backend, secs = end_to_end(pure, reps=20)
        print(f"{backend:8s} {secs * 1e3:10.2f} ms")


if __name__ == "__main__":
    main()
