"""Compare the compiled and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Timings are the best of ``--repeat`` runs.  Outputs are checked for exact
equality before anything is timed.
"""

import argparse
import timeit

import numpy as np

from dihedral_hsp import _kernels_py
from dihedral_hsp.ettinger_hoyer import _log_tables, eh_sample

try:
    from dihedral_hsp import _kernels as compiled
except ImportError:
    compiled = None


def loglik_case(n, m, seed=0):
    s = eh_sample(n // 3, n, m, np.random.default_rng(seed))
    lp0, lp1 = _log_tables(n)
    return s.counts(), lp0, lp1


def cdf_case(size, draws, seed=0):
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(rng.random(size))
    cdf /= cdf[-1]
    return cdf, rng.random(draws)


def best_of(fn, args, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(lambda: fn(*args), number=1), 1e-7)))
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = [("numpy", _kernels_py)]
    if compiled is not None:
        backends.insert(0, ("cython", compiled))
    else:
        print("compiled kernels not built; timing the numpy fallback only")

    cases = [("loglik_scan", f"n={n} m={m}", loglik_case(n, m)) for n, m in
             [(64, 384), (256, 512), (1024, 640), (4096, 768)]]
    cases += [("inverse_cdf", f"size={s} draws={d}", cdf_case(s, d)) for s, d in
              [(128, 1000), (2048, 100_000), (8192, 1_000_000)]]

    print(f"{'kernel':<12} {'case':<22}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    for kernel, label, inputs in cases:
        outs = [getattr(mod, kernel)(*inputs) for _, mod in backends]
        for o in outs[1:]:
            assert np.array_equal(o, outs[0]), f"{kernel} backends disagree on {label}"
        times = [best_of(getattr(mod, kernel), inputs, args.repeat) for _, mod in backends]
        speed = f"{times[-1] / times[0]:9.1f}x" if len(times) > 1 else ""
        print(f"{kernel:<12} {label:<22}" + "".join(f"{t * 1e3:12.3f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
