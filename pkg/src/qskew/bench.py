"""Benchmark the compiled pair-sum kernels against the numpy fallback.

Run as ``python -m qskew.bench [--dim N] [--trials T] [--alphas G]``.
Times the two kernel entry points on identical inputs and an end-to-end
fuzz pass per backend, and reports the speedup.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import kernels
from .fuzz import RandomModelConfig, run_fuzz, sample_stack
from .inequalities import BatchQuantities
from .linalg import eigh_stack
from .metric import pair_weights
from .monotone import wyd


def _prepare(dim: int, trials: int):
    rho, a, b = sample_stack(20260809, np.arange(trials), dim, 0.05, 1.0)
    q = BatchQuantities.from_matrices(rho, a, b, backend="numpy")
    return q._lams, q._a, q._b


def _time(fn, repeats: int = 3) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--trials", type=int, default=20000)
    parser.add_argument("--alphas", type=int, default=11)
    args = parser.parse_args(argv)

    lams, a, b = _prepare(args.dim, args.trials)
    alphas = np.linspace(0.0, 1.0, args.alphas)
    fs = [wyd(x) for x in np.linspace(0.1, 0.9, 9)]
    w = np.empty((2 * len(fs), lams.shape[0], args.dim, args.dim))
    for i, f in enumerate(fs):
        w[2 * i], w[2 * i + 1] = pair_weights(f, lams)

    rows = []
    for name in kernels.available_backends():
        kb = kernels.get_backend(name)
        t_pow = _time(lambda: kb.power_pair_sums(lams, alphas, a, b))
        t_wgt = _time(lambda: kb.weighted_pair_sums(w, a, b))
        config = RandomModelConfig(
            seed=7,
            dim=args.dim,
            trials=min(args.trials, 5000),
            inequality_ids=("THM2", "THM3", "THM4"),
        )
        t_fuzz = _time(lambda: run_fuzz(config, backend=name), repeats=1)
        rows.append((name, t_pow, t_wgt, t_fuzz))
        print(
            f"{name:>9}: power_pair_sums {t_pow*1e3:8.1f} ms   "
            f"weighted_pair_sums {t_wgt*1e3:8.1f} ms   fuzz(5k trials) {t_fuzz*1e3:8.1f} ms"
        )

    if len(rows) == 2:
        c, n = rows[0], rows[1]
        print(
            f"speedup compiled/numpy: power {n[1]/c[1]:.1f}x, "
            f"weighted {n[2]/c[2]:.1f}x, fuzz {n[3]/c[3]:.1f}x"
        )
    else:
        print("compiled backend not built; only the numpy lane was timed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
