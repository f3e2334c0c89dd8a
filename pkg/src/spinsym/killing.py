"""Killing spinors by polynomial ansatz, and the conformal Killing vectors.

A Killing spinor of type (k, l) is stored as ``comps[(j, m)]``: ``k`` lower
unprimed indices (``j`` ones) and ``l`` upper primed indices (``m`` ones),
each entry a polynomial in the spinor coordinates x^{AA'}.
"""
from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from pathlib import Path

from .conventions import EPS_LOWER, EPS_UPPER, ETA, SIGMA_UP, convention_hash
from .field import FieldElement, as_field
from .jets import coord_derivative, to_spinor_coords
from .linalg import exact_nullspace, rational_rank
from .poly import Polynomial, coord, spinor_coord
from .spinor import SpinorArray, from_symmetric

__all__ = [
    "KillingSpinor", "KillingBasis", "DomainError", "killing_dimension", "solve_killing",
    "killing_residual", "conformal_killing_basis", "ConformalKillingVector",
    "factorization_span_check", "wave_identity_check", "derivative_exchange_check",
    "cache_dir", "complex_rank",
]

log = logging.getLogger(__name__)

CACHE_VERSION = 1
CACHE_ENV = "SPINSYM_CACHE_DIR"

# spinor coordinate slot t = 2*A + A'
_Y = [spinor_coord(t >> 1, t & 1) for t in range(4)]


class DomainError(ValueError):
    """No closed-form dimension is known for the requested type."""


def killing_dimension(k: int, l: int) -> int:
    """Complex dimension of type-(k, l) Killing spinors for l = k or l = k + 2s."""
    if k < 0 or l < k:
        raise DomainError(f"no dimension formula for type ({k},{l})")
    if l == k:
        return (k + 1) ** 2 * (k + 2) ** 2 * (2 * k + 3) // 12
    n = l - k  # = 2s
    return (k + 1) * (k + 2) * (k + n + 1) * (k + n + 2) * (2 * k + n + 3) // 12


@dataclass
class KillingSpinor:
    k: int
    l: int
    comps: dict  # (j, m) -> Polynomial in spinor coordinates
    degree_bound: int = 0

    def component(self, j: int, m: int) -> Polynomial:
        return self.comps[(j, m)]

    def array(self) -> SpinorArray:
        return from_symmetric(self.k, self.l, self.comps, upper_primed=True)

    def scale(self, c) -> "KillingSpinor":
        return KillingSpinor(self.k, self.l, {q: p.scale(c) for q, p in self.comps.items()},
                             self.degree_bound)

    def __add__(self, other: "KillingSpinor") -> "KillingSpinor":
        return KillingSpinor(self.k, self.l, {q: p + other.comps[q] for q, p in self.comps.items()},
                             max(self.degree_bound, other.degree_bound))


@dataclass
class KillingBasis:
    k: int
    l: int
    degree_bound: int
    elements: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]


# -- the Killing operator -------------------------------------------------------

def _d_up(p: Polynomial, a: int, ap: int) -> Polynomial:
    """d_a^{a'} = eps^{a'b'} d_{ab'}."""
    return coord_derivative(p, a, 1) if ap == 0 else -coord_derivative(p, a, 0)


def killing_residual(k: int, l: int, comps: dict) -> dict:
    """Symmetrized derivative of a type-(k, l) array, up to positive weights.

    Returns ``{(J, M): Polynomial}`` over the type-(k+1, l+1) components; the
    array is a Killing spinor iff every entry vanishes.
    """
    out = {}
    for J in range(k + 2):
        for M in range(l + 2):
            acc = Polynomial()
            for a in (0, 1):
                j = J - a
                if not 0 <= j <= k:
                    continue
                for ap in (0, 1):
                    m = M - ap
                    if not 0 <= m <= l:
                        continue
                    c = comps.get((j, m))
                    if c:
                        acc = acc + _d_up(c, a, ap).scale(comb(k, j) * comb(l, m))
            out[(J, M)] = acc
    return out


def _monomials(deg: int):
    for combo in combinations_with_replacement(range(4), deg):
        e = [0, 0, 0, 0]
        for t in combo:
            e[t] += 1
        yield tuple(e)


def _solve_degree(k: int, l: int, d: int) -> list[dict]:
    """Homogeneous degree-d solutions as {(j, m): {exponents: Fraction}}."""
    comps = [(j, m) for j in range(k + 1) for m in range(l + 1)]
    monos = list(_monomials(d))
    unknowns = [(c, e) for c in comps for e in monos]
    if d == 0:
        return [{c: {e: Fraction(1)}} for c, e in unknowns]
    eq_index: dict = {}
    rows: list[dict] = []
    for col, ((j, m), e) in enumerate(unknowns):
        w = comb(k, j) * comb(l, m)
        for a in (0, 1):
            for ap in (0, 1):
                # d_a^{a'}: a' = 0 -> +d_{a1}, a' = 1 -> -d_{a0}
                t = 2 * a + (1 - ap)
                if not e[t]:
                    continue
                sign = 1 if ap == 0 else -1
                f = list(e)
                f[t] -= 1
                key = (j + a, m + ap, tuple(f))
                r = eq_index.get(key)
                if r is None:
                    r = eq_index[key] = len(rows)
                    rows.append({})
                rows[r][col] = rows[r].get(col, 0) + sign * w * e[t]
    null = exact_nullspace(rows, len(unknowns))
    out = []
    for vec in null:
        sol: dict = {}
        for (c, e), v in zip(unknowns, vec):
            if v:
                sol.setdefault(c, {})[e] = Fraction(v)
        out.append(sol)
    return out


def _to_poly(terms: dict) -> Polynomial:
    acc = {}
    for e, v in terms.items():
        mono = tuple((_Y[t], n) for t, n in enumerate(e) if n)
        acc[mono] = as_field(v)
    return Polynomial(acc)


def _from_poly(p: Polynomial) -> dict:
    out = {}
    for mono, c in p.terms.items():
        e = [0, 0, 0, 0]
        for v, n in mono:
            e[2 * v.index[0] + v.index[1]] = n
        out[tuple(e)] = Fraction(c.a, c.den)
    return out


# -- cache ---------------------------------------------------------------------

def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "spinsym"


def _cache_path(k: int, l: int, bound: int, root: Path) -> Path:
    return root / f"killing_{k}_{l}_deg{bound}_{convention_hash()}.json"


def _write_cache(path: Path, k: int, l: int, bound: int, raw: list[dict]):
    doc = {
        "version": CACHE_VERSION,
        "type": [k, l],
        "degree_bound": bound,
        "convention_hash": convention_hash(),
        "basis": [
            [{"component": [j, m],
              "terms": [[list(e), [str(v.numerator), str(v.denominator)]] for e, v in sorted(t.items())]}
             for (j, m), t in sorted(sol.items())]
            for sol in raw
        ],
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_cache(path: Path, k: int, l: int, bound: int) -> list[dict] | None:
    try:
        doc = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if (doc.get("version") != CACHE_VERSION or doc.get("type") != [k, l]
            or doc.get("degree_bound") != bound or doc.get("convention_hash") != convention_hash()):
        return None
    raw = []
    for sol in doc["basis"]:
        item = {}
        for comp in sol:
            item[tuple(comp["component"])] = {
                tuple(e): Fraction(int(n), int(d)) for e, (n, d) in comp["terms"]}
        raw.append(item)
    return raw


def solve_killing(k: int, l: int, degree_bound: int | None = None, *, use_cache: bool = False,
                  cache_root: str | os.PathLike | None = None) -> KillingBasis:
    """Exact basis of type-(k, l) Killing spinors with polynomial entries of
    degree at most ``degree_bound`` (default ``k + l``).

    The equations preserve homogeneous degree, so each degree is solved
    separately.
    """
    if degree_bound is None:
        degree_bound = k + l
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    raw = None
    path = None
    if use_cache:
        path = _cache_path(k, l, degree_bound, Path(cache_root) if cache_root else cache_dir())
        raw = _read_cache(path, k, l, degree_bound)
        if raw is not None:
            log.debug("killing basis (%d,%d) read from %s", k, l, path)
    if raw is None:
        raw = []
        for d in range(degree_bound + 1):
            raw.extend(_solve_degree(k, l, d))
        if use_cache:
            _write_cache(path, k, l, degree_bound, raw)
    elements = []
    for sol in raw:
        comps = {(j, m): Polynomial() for j in range(k + 1) for m in range(l + 1)}
        for c, t in sol.items():
            comps[c] = _to_poly(t)
        elements.append(KillingSpinor(k, l, comps, degree_bound))
    return KillingBasis(k, l, degree_bound, elements)


# -- conformal Killing vectors ----------------------------------------------------

@dataclass
class ConformalKillingVector:
    """Real vector field xi^i(x) on Minkowski space."""

    name: str
    components: tuple  # four Polynomials in the real coordinates

    def spinor_upper(self) -> dict:
        """xi^{AA'} = sigma_i^{AA'} xi^i in spinor coordinates, keyed (A, A')."""
        out = {}
        for a in range(2):
            for ap in range(2):
                acc = Polynomial()
                for i in range(4):
                    s = SIGMA_UP[i][a][ap]
                    if s and self.components[i]:
                        acc = acc + self.components[i].scale(s)
                out[(a, ap)] = to_spinor_coords(acc)
        return out

    def killing_spinor(self) -> KillingSpinor:
        """xi_A^{A'} = xi^{BA'} eps_{BA}, stored as a type-(1,1) Killing spinor."""
        up = self.spinor_upper()
        comps = {}
        for a in range(2):
            for ap in range(2):
                acc = Polynomial()
                for b in range(2):
                    e = EPS_LOWER[b][a]
                    if e:
                        acc = acc + up[(b, ap)].scale(e)
                comps[(a, ap)] = acc
        return KillingSpinor(1, 1, comps, 2)

    def conformal_factor(self) -> Polynomial | None:
        """k(x) with d_(i xi_j) = k eta_ij, or None if xi is not conformal Killing."""
        xs = [coord(i) for i in range(4)]
        low = [self.components[j].scale(ETA[j]) for j in range(4)]
        sym = [[(low[j].partial(xs[i]) + low[i].partial(xs[j])).scale(FieldElement(1, 0, 0, 0, 2))
                for j in range(4)] for i in range(4)]
        k = sym[0][0]
        for i in range(4):
            for j in range(4):
                if sym[i][j] != (k.scale(ETA[i]) if i == j else Polynomial()):
                    return None
        return k

    def divergence(self) -> Polynomial:
        acc = Polynomial()
        for i in range(4):
            acc = acc + self.components[i].partial(coord(i))
        return acc

    def scale(self, c) -> "ConformalKillingVector":
        return ConformalKillingVector(f"{c}*{self.name}", tuple(p.scale(c) for p in self.components))


def conformal_killing_basis() -> list[ConformalKillingVector]:
    """The 15 classical generators: translations, Lorentz, dilation, special conformal."""
    x = [Polynomial.var(coord(i)) for i in range(4)]
    xl = [x[i].scale(ETA[i]) for i in range(4)]
    zero = Polynomial()
    out = []
    for a in range(4):
        comps = [Polynomial.const(1) if i == a else zero for i in range(4)]
        out.append(ConformalKillingVector(f"P{a}", tuple(comps)))
    for a in range(4):
        for b in range(a + 1, 4):
            comps = [zero] * 4
            comps[a] = xl[b]
            comps[b] = -xl[a]
            out.append(ConformalKillingVector(f"M{a}{b}", tuple(comps)))
    out.append(ConformalKillingVector("D", tuple(x)))
    xx = sum((x[i] * xl[i] for i in range(1, 4)), x[0] * xl[0])
    for b in range(4):
        bx = xl[b]
        comps = [bx * x[i].scale(2) - (xx if i == b else zero) for i in range(4)]
        out.append(ConformalKillingVector(f"K{b}", tuple(comps)))
    return out


# -- spans and identities ---------------------------------------------------------

def _gaussian_normalized(ks: KillingSpinor) -> KillingSpinor:
    """Rescale by a power of sqrt 2 so every coefficient lies in Q(i); the
    complex span is unaffected."""
    coeffs = [v for p in ks.comps.values() for v in p.terms.values()]
    if any(v.c or v.d for v in coeffs):
        if any(v.a or v.b for v in coeffs):
            raise ValueError("Killing spinor mixes both sqrt(2) cosets")
        return ks.scale(FieldElement(0, 0, 1, 0, 2))
    return ks


def _vectorize(ks: KillingSpinor, index: dict) -> dict:
    row = {}
    ks = _gaussian_normalized(ks)
    for c, p in ks.comps.items():
        for mono, v in p.terms.items():
            col = index.setdefault((c, mono), len(index))
            row[2 * col] = Fraction(v.a, v.den)
            if v.b:
                row[2 * col + 1] = Fraction(v.b, v.den)
            if v.c or v.d:
                raise ValueError("Killing spinor coefficients left Q(i)")
    return row


def complex_rank(spinors) -> int:
    """Dimension of the complex span of Killing spinors with Q(i) coefficients."""
    index: dict = {}
    rows = []
    for ks in spinors:
        r = _vectorize(ks, index)
        rows.append(r)
        # i * ks, so the rational rank counts real dimensions of the complex span
        ri = {}
        for col2, v in r.items():
            if col2 % 2 == 0:
                ri[col2 + 1] = v
            else:
                ri[col2 - 1] = -v
        rows.append(ri)
    return rational_rank(rows) // 2


def _sym_product(factors) -> KillingSpinor:
    arr = factors[0].array()
    for f in factors[1:]:
        arr = arr.outer(f.array())
    arr = arr.symmetrize("both")
    m, mp = arr.rank
    return KillingSpinor(m, mp, arr.to_symmetric(), 0)


def factorization_span_check(k: int, two_s: int = 0) -> dict:
    """Span of symmetrized products of ``k`` type-(1,1) Killing spinors, times one
    type-(0, 2s) Killing spinor when ``two_s`` > 0."""
    base = solve_killing(1, 1)
    prods = []
    lead = solve_killing(0, two_s).elements if two_s else [None]
    for head in lead:
        for combo in combinations_with_replacement(range(len(base)), k):
            facs = ([head] if head is not None else []) + [base[i] for i in combo]
            if not facs:
                continue
            prods.append(_sym_product(facs))
    target = killing_dimension(k, k + two_s)
    rank = complex_rank(prods)
    bad = sum(1 for p in prods if any(killing_residual(p.k, p.l, p.comps).values()))
    return {"type": [k, k + two_s], "products": len(prods), "rank": rank, "expected": target,
            "non_killing_products": bad, "pass": rank == target and bad == 0}


def wave_identity_check(pi: KillingSpinor) -> bool:
    """d_{CC'} d^{CD'} pi = 0 for a type-(0, n) Killing spinor."""
    for cp in range(2):
        for dp in range(2):
            for m, comp in pi.comps.items():
                acc = Polynomial()
                for c in range(2):
                    for e in range(2):
                        for ep in range(2):
                            w = EPS_UPPER[c][e] * EPS_UPPER[dp][ep]
                            if w:
                                acc = acc + coord_derivative(coord_derivative(comp, e, ep), c, cp).scale(w)
                if acc:
                    return False
    return True


def derivative_exchange_check(pi: KillingSpinor) -> bool:
    """d_{CC'} d_{DD'} pi = d_{CD'} d_{DC'} pi."""
    for comp in pi.comps.values():
        for c in range(2):
            for cp in range(2):
                for d in range(2):
                    for dp in range(2):
                        lhs = coord_derivative(coord_derivative(comp, d, dp), c, cp)
                        rhs = coord_derivative(coord_derivative(comp, d, cp), c, dp)
                        if lhs != rhs:
                            return False
    return True
