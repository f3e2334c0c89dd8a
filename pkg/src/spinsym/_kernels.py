"""Hot loops: Gaussian elimination over Z/pZ on dense int64 matrices.

The numba path is used unless ``SPINSYM_NO_NUMBA=1`` is set (or numba is not
importable), in which case the vectorised numpy path runs instead.  Both
return identical results; ``benchmarks/bench_modrank.py`` compares them.
"""
from __future__ import annotations

import os

import numpy as np

PRIME = 2147483647  # 2^31 - 1; entries stay < 2^31 so products fit in int64

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("SPINSYM_NO_NUMBA", "") not in ("1", "true", "yes")


def _modinv(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def _rank_mod_p_numpy(mat: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    a = np.array(mat, dtype=np.int64) % p
    nrows, ncols = a.shape
    row = 0
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        r = row + nz[0]
        if r != row:
            a[[row, r]] = a[[r, row]]
        inv = _modinv(a[row, col], p)
        a[row] = (a[row] * inv) % p
        below = a[row + 1:, col].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + row + 1
            a[idx] = (a[idx] - (below[mask][:, None] * a[row][None, :]) % p) % p
        pivots.append(col)
        row += 1
    return row, np.array(pivots, dtype=np.int64)


def _rank_mod_p_loops(a, p):
    nrows, ncols = a.shape
    for i in range(nrows):
        for j in range(ncols):
            a[i, j] = a[i, j] % p
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        r = -1
        for i in range(row, nrows):
            if a[i, col] != 0:
                r = i
                break
        if r < 0:
            continue
        if r != row:
            for j in range(ncols):
                t = a[row, j]
                a[row, j] = a[r, j]
                a[r, j] = t
        # modular inverse by exponentiation
        base = a[row, col]
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for j in range(col, ncols):
            a[row, j] = (a[row, j] * inv) % p
        for i in range(row + 1, nrows):
            f = a[i, col]
            if f != 0:
                for j in range(col, ncols):
                    if a[row, j] != 0:
                        a[i, j] = (a[i, j] - f * a[row, j]) % p
        pivots[row] = col
        row += 1
    return row, pivots[:row]


if USE_NUMBA:
    _rank_mod_p_numba = numba.njit(cache=True)(_rank_mod_p_loops)
else:  # pragma: no cover
    _rank_mod_p_numba = None


def rank_mod_p(mat: np.ndarray, p: int = PRIME, backend: str | None = None) -> tuple[int, np.ndarray]:
    """Rank and pivot columns of an integer matrix reduced modulo ``p``.

    ``backend`` is ``"numba"``, ``"numpy"`` or ``None`` (environment default).
    """
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    if mat.size == 0:
        return 0, np.zeros(0, dtype=np.int64)
    if backend == "numba":
        if _rank_mod_p_numba is None:
            raise RuntimeError("numba backend requested but numba is disabled")
        a = np.ascontiguousarray(mat, dtype=np.int64).copy()
        r, piv = _rank_mod_p_numba(a, p)
        return int(r), piv
    return _rank_mod_p_numpy(mat, p)
