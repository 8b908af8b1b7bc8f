"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py --n 8 --r 12 --repeat 3
"""

import argparse
import time

import numpy as np

from stutterblocks import _pykernels
from stutterblocks.oracle import partition_table

try:
    from stutterblocks import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--r", type=int, default=12)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--e", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if args.r % args.d:
        ap.error("d must divide r")
    p = args.r // args.d
    table = partition_table(args.n)
    offsets = np.asarray(table.offsets, dtype=np.int64)
    counts = np.asarray(table.counts, dtype=np.int64)
    rv = np.ascontiguousarray(table.residues(args.e), dtype=np.int32)
    kappa = np.arange(args.r, dtype=np.int32) % args.e

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled extension not built; timing the fallback only")

    results = {}
    for name, mod in backends:
        t_ids, ids = best_of(lambda: mod.enumerate_ids(args.n, args.r, offsets, counts), args.repeat)
        ids = np.ascontiguousarray(ids, dtype=np.int32)
        t_keys, keys = best_of(lambda: mod.alpha_keys(ids, rv, kappa, args.n + 1), args.repeat)
        t_orb, orb = best_of(lambda: mod.orbit_sizes(ids, args.d, p), args.repeat)
        results[name] = (ids, keys, orb)
        print(f"{name:7s} rows={len(ids):8d}  enumerate {t_ids:8.4f}s  alpha_keys {t_keys:8.4f}s  "
              f"orbit_sizes {t_orb:8.4f}s")
    if len(results) == 2:
        same = all(np.array_equal(a, b) for a, b in zip(results["python"], results["cython"]))
        print("outputs identical:", same)


if __name__ == "__main__":
    main()
