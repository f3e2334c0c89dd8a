"""Compare the numba and numpy modular-rank kernels.

    python benchmarks/bench_modrank.py [--repeat 3]

Matrices: random dense integer matrices of growing size, and the realified
constructive-rank matrix of the spin-1 order-1 generators.  Both backends must
report the same rank; the script exits nonzero otherwise.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from spinsym import _kernels
from spinsym.linalg import _integerize, _realify_rational
from spinsym.symmetries import characteristic_vector, constructive_generators


def constructive_matrix(two_s: int, r: int) -> np.ndarray:
    index: dict = {}
    rows = [_realify_rational(characteristic_vector(Q, index)) for Q in constructive_generators(two_s, r)]
    rows = [_integerize(row) for row in rows if row is not None]
    ncols = 1 + max(c for row in rows for c in row)
    a = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            a[i, c] = v % _kernels.PRIME
    return a


def timed(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sizes", type=int, nargs="*", default=[100, 200, 400])
    args = ap.parse_args(argv)
    if _kernels._rank_mod_p_numba is None:
        print("numba backend unavailable; nothing to compare")
        return 1
    rng = np.random.default_rng(0)
    cases = [(f"random {n}x{n}", rng.integers(0, 1000, size=(n, n), dtype=np.int64)) for n in args.sizes]
    cases.append(("constructive spin 1, r=1", constructive_matrix(2, 1)))
    # compile outside the timings
    _kernels.rank_mod_p(np.eye(3, dtype=np.int64), backend="numba")
    print(f"{'matrix':28s} {'shape':>11s} {'rank':>5s} {'numba s':>9s} {'numpy s':>9s} {'ratio':>7s}")
    ok = True
    for name, m in cases:
        tn, (rn, _) = timed(lambda: _kernels.rank_mod_p(m, backend="numba"), args.repeat)
        tp, (rp, _) = timed(lambda: _kernels.rank_mod_p(m, backend="numpy"), args.repeat)
        ok = ok and rn == rp
        shape = f"{m.shape[0]}x{m.shape[1]}"
        print(f"{name:28s} {shape:>11s} {rn:5d} {tn:9.4f} {tp:9.4f} {tp / tn:7.1f}" + ("" if rn == rp else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
