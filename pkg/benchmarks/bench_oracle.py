"""Time the brute-force oracle kernels: numba loops against the numpy fallback.

    python benchmarks/bench_oracle.py [--depth 3] [--repeat 3]

Both backends run on the same batch of flattened Pin+ expressions; their
outputs are compared before any timing is reported.
"""

import argparse
import time

import numpy as np

from pineta import _kernels
from pineta.expr import card
from pineta.oracle import batch_arrays, expressions, flatten


def _best(fn, arrays, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*arrays)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--numpy-limit", type=int, default=5000,
                    help="expressions timed on the numpy path (it is per-expression and slow)")
    args = ap.parse_args(argv)

    xs = [x for x in expressions(args.depth) if card(x).w2zero]
    problems = [flatten(x) for x in xs]
    sub = problems[:args.numpy_limit]
    print(f"{len(problems)} Pin+ expressions up to depth {args.depth}, "
          f"{sum(p.size for p in problems)} assignments")
    if not _kernels.HAVE_NUMBA:
        print("numba not installed; nothing to compare")
        return 1

    arrays = batch_arrays(sub)
    _kernels.enumerate_numba(*arrays)  # compile or load the cached kernel
    t_np, (c_np, v_np) = _best(_kernels.enumerate_numpy, arrays, args.repeat)
    t_nb, (c_nb, v_nb) = _best(_kernels.enumerate_numba, arrays, args.repeat)
    assert np.array_equal(c_np, c_nb) and np.array_equal(v_np, v_nb), "backends disagree"
    print(f"{len(sub)} expressions   numpy {t_np * 1e3:9.1f} ms   numba {t_nb * 1e3:9.1f} ms   "
          f"speedup {t_np / t_nb:6.1f}x")

    full = batch_arrays(problems)
    t_all, _ = _best(_kernels.enumerate_numba, full, args.repeat)
    print(f"{len(problems)} expressions   numba {t_all * 1e3:9.1f} ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
