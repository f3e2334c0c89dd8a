"""Exact linear algebra over Q, Q(i) and Q(i, sqrt 2).

Rows are sparse ``{column: value}`` dicts throughout; dense row lists are
accepted at the public entry points and converted.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .field import FieldElement, as_field

__all__ = [
    "to_sparse", "exact_nullspace", "exact_rank", "rational_rank", "bareiss_rank_dense",
    "field_rank", "split_rational", "real_rank", "modular_rank", "real_modular_rank", "mat_vec",
]


def to_sparse(matrix) -> list[dict]:
    rows = []
    for r in matrix:
        if isinstance(r, dict):
            rows.append({c: v for c, v in r.items() if v})
        else:
            rows.append({c: v for c, v in enumerate(r) if v})
    return rows


def _ncols(matrix) -> int:
    n = 0
    for r in matrix:
        if isinstance(r, dict):
            if r:
                n = max(n, max(r) + 1)
        else:
            n = max(n, len(r))
    return n


# -- fraction-free elimination over Z ---------------------------------------

def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {c: v // g for c, v in row.items()}
    return row


def _integerize(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    return {c: int(v * den) for c, v in row.items() if v}


class _IntEchelon:
    """Incremental fraction-free row echelon form over Z (sparse rows)."""

    def __init__(self):
        self.basis: dict[int, dict] = {}

    def add(self, row: dict) -> bool:
        """Reduce ``row``; keep it when independent.  Returns True if kept."""
        row = {c: v for c, v in row.items() if v}
        basis = self.basis
        while row:
            c = min(row)
            b = basis.get(c)
            if b is None:
                basis[c] = _primitive(row)
                return True
            f, pv = row[c], b[c]
            g = gcd(f, pv)
            f //= g
            pv //= g
            new = {k: v * pv for k, v in row.items()}
            for k, v in b.items():
                s = new.get(k, 0) - f * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return False

    @property
    def rank(self) -> int:
        return len(self.basis)


def rational_rank(matrix) -> int:
    """Exact rank of a matrix with int/Fraction entries (fraction-free)."""
    ech = _IntEchelon()
    for r in to_sparse(matrix):
        ech.add(_integerize(r))
    return ech.rank


def bareiss_rank_dense(matrix: Sequence[Sequence]) -> int:
    """Rank by the classical Bareiss one-step fraction-free recurrence."""
    rows = [_integerize(dict(enumerate(r))) for r in matrix]
    n = _ncols(matrix)
    a = [[r.get(c, 0) for c in range(n)] for r in rows]
    m = len(a)
    prev = 1
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            ai = a[i]
            f = ai[col]
            for j in range(col + 1, n):
                ai[j] = (p * ai[j] - f * a[rank][j]) // prev
            ai[col] = 0
        prev = p
        rank += 1
        col += 1
    return rank


# -- elimination over a field -------------------------------------------------

def _echelon_field(rows: Iterable[dict]):
    """Row echelon form over a field; pivots normalised to one."""
    basis: dict[int, dict] = {}
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            c = min(row)
            b = basis.get(c)
            if b is None:
                inv = 1 / row[c] if not isinstance(row[c], FieldElement) else row[c].inverse()
                basis[c] = {k: v * inv for k, v in row.items()}
                break
            f = row[c]
            for k, v in b.items():
                s = row.get(k, 0) - f * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
    return basis


def field_rank(matrix) -> int:
    return len(_echelon_field(to_sparse(matrix)))


def exact_rank(matrix) -> int:
    """Exact rank over the smallest field containing the entries.

    Rational matrices go through fraction-free elimination over Z; anything
    with Gaussian or sqrt(2) parts is eliminated directly over Q(i, sqrt 2).
    """
    rows = to_sparse(matrix)
    rational = True
    conv = []
    for r in rows:
        out = {}
        for c, v in r.items():
            if isinstance(v, FieldElement):
                if v.b or v.c or v.d:
                    rational = False
                    break
                out[c] = Fraction(v.a, v.den)
            else:
                out[c] = v
        if not rational:
            break
        conv.append(out)
    if rational:
        return rational_rank(conv)
    return field_rank([{c: as_field(v) for c, v in r.items()} for r in rows])


def exact_nullspace(matrix, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel, as dense vectors; ``M v = 0`` exactly."""
    rows = to_sparse(matrix)
    if ncols is None:
        ncols = _ncols(matrix)
    if rows and all(not isinstance(v, FieldElement) for r in rows for v in r.values()):
        rows = [{c: Fraction(v) for c, v in r.items()} for r in rows]
        zero, one = Fraction(0), Fraction(1)
    else:
        rows = [{c: as_field(v) for c, v in r.items()} for r in rows]
        zero, one = as_field(0), as_field(1)
    basis = _echelon_field(rows)
    # back substitution to reduced form
    for p in sorted(basis, reverse=True):
        prow = basis[p]
        for q in basis:
            if q < p:
                f = basis[q].get(p)
                if f:
                    qrow = basis[q]
                    for k, v in prow.items():
                        s = qrow.get(k, 0) - f * v
                        if s:
                            qrow[k] = s
                        else:
                            qrow.pop(k, None)
    free = [c for c in range(ncols) if c not in basis]
    out = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for p, prow in basis.items():
            x = prow.get(f)
            if x:
                v[p] = -x
        out.append(v)
    return out


def mat_vec(matrix, vec) -> list:
    out = []
    for r in to_sparse(matrix):
        s = 0
        for c, v in r.items():
            s = s + v * vec[c]
        out.append(s)
    return out


# -- real structure -------------------------------------------------------------

def split_rational(vec: dict | Sequence) -> dict:
    """Map each FieldElement entry to four rational coordinates (column 4c+t)."""
    items = vec.items() if isinstance(vec, dict) else enumerate(vec)
    out = {}
    for c, v in items:
        v = as_field(v)
        for t, part in enumerate((v.a, v.b, v.c, v.d)):
            if part:
                out[4 * c + t] = Fraction(part, v.den)
    return out


def _realify_rational(vec: dict) -> dict | None:
    """Scale a Q(i, sqrt 2) vector into Q(i) by a power of sqrt 2, then split
    into (re, im) rational coordinates.  None when the vector mixes the two
    sqrt(2)-cosets (no single real scaling makes it Gaussian)."""
    has_rat = any(v.a or v.b for v in vec.values())
    has_rad = any(v.c or v.d for v in vec.values())
    if has_rat and has_rad:
        return None
    out = {}
    for c, v in vec.items():
        if has_rad:  # v = (c + d i) sqrt 2 -> divide by sqrt 2
            re, im = Fraction(v.c, v.den), Fraction(v.d, v.den)
        else:
            re, im = Fraction(v.a, v.den), Fraction(v.b, v.den)
        if re:
            out[2 * c] = re
        if im:
            out[2 * c + 1] = im
    return out


def real_rank(vectors: Iterable[dict]) -> int:
    """Dimension of the real span of complex vectors with Q(i, sqrt 2) entries."""
    vecs = [{c: as_field(v) for c, v in vec.items() if v} for vec in vectors]
    rat = [_realify_rational(v) for v in vecs]
    if all(r is not None for r in rat):
        return rational_rank(rat)
    # general case: eliminate [Re | Im] over the real field Q(sqrt 2)
    rows = []
    for v in vecs:
        row = {}
        for c, x in v.items():
            re = FieldElement(x.a, 0, x.c, 0, x.den)
            im = FieldElement(x.b, 0, x.d, 0, x.den)
            if re:
                row[2 * c] = re
            if im:
                row[2 * c + 1] = im
        rows.append(row)
    return field_rank(rows)


def real_modular_rank(vectors: Iterable[dict], backend: str | None = None) -> int | None:
    """Modular counterpart of ``real_rank``: a fast lower bound used to
    cross-check exact ranks.  None when a vector mixes sqrt(2) cosets."""
    vecs = [{c: as_field(v) for c, v in vec.items() if v} for vec in vectors]
    rat = [_realify_rational(v) for v in vecs]
    if any(r is None for r in rat):
        return None
    return modular_rank(rat, backend=backend)


def modular_rank(rows: Sequence[dict], ncols: int | None = None, backend: str | None = None,
                 p: int = _kernels.PRIME) -> int:
    """Rank of a rational matrix modulo ``p`` (a certified lower bound on the
    exact rank when no denominator is divisible by ``p``)."""
    rows = [_integerize(r) for r in rows]
    cols = sorted({c for r in rows for c in r}) if ncols is None else range(ncols)
    index = {c: i for i, c in enumerate(cols)}
    a = np.zeros((len(rows), len(index)), dtype=np.int64)
    for i, r in enumerate(rows):
        for c, v in r.items():
            a[i, index[c]] = v % p
    return _kernels.rank_mod_p(a, p, backend=backend)[0]
