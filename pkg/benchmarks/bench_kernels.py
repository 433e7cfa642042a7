"""Time the numba and numpy kernel paths side by side.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--format csv|json]
"""

from __future__ import annotations

import argparse
import json
import sys
import timeit

import numpy as np

from entrosep import _kernels as K
from entrosep.linalg import random_unitary
from entrosep.measurements import sic_povm


def workloads(rng):
    s3 = sic_povm(3).elements
    return {
        "convolve[D=9]": ("convolve", (rng.random(9), rng.random(9))),
        "power_sum[D=81]": ("power_sum", (rng.dirichlet(np.ones(81)), 1.7)),
        "shannon_sum[D=81]": ("shannon_sum", (rng.dirichlet(np.ones(81)),)),
        "submatrix_profile[D=4]": ("submatrix_profile", (random_unitary(4, rng),)),
        "submatrix_profile[D=6]": ("submatrix_profile", (random_unitary(6, rng),)),
        "convolution_elements[sic3]": ("convolution_elements", (s3, s3.copy())),
    }


def bench(repeat: int, number: int, seed: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for label, (name, args) in workloads(rng).items():
        fn_np, fn_nb = K.NUMPY_KERNELS[name], K.NUMBA_KERNELS[name]
        ref, fast = fn_np(*args), fn_nb(*args)  # warm-up also triggers compilation
        agree = bool(np.allclose(ref, fast, atol=1e-12))
        t_np = min(timeit.repeat(lambda: fn_np(*args), repeat=repeat, number=number)) / number
        t_nb = min(timeit.repeat(lambda: fn_nb(*args), repeat=repeat, number=number)) / number
        rows.append({"kernel": label, "numpy_us": t_np * 1e6, "numba_us": t_nb * 1e6,
                     "speedup": t_np / t_nb, "agree": agree})
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    args = ap.parse_args(argv)
    rows = bench(args.repeat, args.number, args.seed)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        print("kernel,numpy_us,numba_us,speedup,agree")
        for r in rows:
            print(f"{r['kernel']},{r['numpy_us']:.2f},{r['numba_us']:.2f},"
                  f"{r['speedup']:.2f},{r['agree']}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
