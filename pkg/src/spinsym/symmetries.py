"""Generalized symmetries of the spin-s massless free field equations.

A characteristic is stored as the list ``comps[a]`` of its symmetric
components Q_{A_{2s}} (``a`` = number of indices equal to one); the
conjugate half of the evolutionary field is implied.  Every family is built
directly in on-shell jet coordinates, where a trivial symmetry is a zero
characteristic and equivalence is equality.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from .conventions import LEADING_SIGN_CHIRAL, LEADING_SIGN_CONFORMAL
from .field import FieldElement, I, as_field
from .jets import CapacityError, JetContext, coord_derivative
from .killing import ConformalKillingVector, KillingSpinor, conformal_killing_basis, solve_killing
from .linalg import exact_nullspace, real_modular_rank, real_rank
from .poly import CONJ_JET, JET, Polynomial, conj_jet, jet, spinor_coord
from .spinor import Slot, SpinorArray, from_symmetric

__all__ = [
    "Characteristic", "NotASolution", "chiral_coefficient", "build_scaling", "build_elementary",
    "solve_massless_polynomial", "build_conformal", "build_chiral", "lie_derive",
    "verify_symmetry", "determining_residual", "pi_recursion_check", "leading_symbol",
    "leading_closed_form", "dimension_d_r", "constructive_rank", "constructive_generators",
    "characteristic_vector",
]

log = logging.getLogger(__name__)


class NotASolution(ValueError):
    """Input to build_elementary does not solve the massless equation."""

    def __init__(self, message: str, residual: dict):
        super().__init__(message)
        self.residual = residual


@dataclass
class Characteristic:
    two_s: int
    comps: list
    family: str = ""
    params: dict = field(default_factory=dict)
    tag: str = "phi"

    @property
    def order(self) -> int:
        """Highest exact-set order present (-1 for a jet-free characteristic)."""
        best = -1
        for c in self.comps:
            for v in c.variables():
                if v.kind in (JET, CONJ_JET) and v.order > best:
                    best = v.order
        return best

    def scale(self, c) -> "Characteristic":
        return replace(self, comps=[q.scale(c) for q in self.comps])

    def __add__(self, other: "Characteristic") -> "Characteristic":
        return replace(self, comps=[a + b for a, b in zip(self.comps, other.comps)],
                       family=self.family or other.family)

    def __sub__(self, other: "Characteristic") -> "Characteristic":
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def as_dict(self) -> dict:
        return {self.tag: self.comps}


def _frac(num: int, den: int = 1) -> FieldElement:
    return FieldElement(num, 0, 0, 0, den)


def chiral_coefficient(two_s: int, p: int) -> Fraction:
    """c_{2s,p} = (4s - p + 1)/(4s + 1) * binomial(2s, p)."""
    if not 0 <= p <= two_s:
        raise ValueError(f"p={p} outside 0..{two_s}")
    return Fraction(2 * two_s - p + 1, 2 * two_s + 1) * comb(two_s, p)


def _context(two_s: int, order: int, ctx: JetContext | None, tag: str = "phi") -> JetContext:
    if ctx is not None:
        return ctx
    return JetContext(two_s, order, ((tag, two_s),))


# -- scaling and elementary -------------------------------------------------------

def build_scaling(two_s: int, kind: str = "S", tag: str = "phi") -> Characteristic:
    comps = [Polynomial.var(jet(tag, 0, a, 0)) for a in range(two_s + 1)]
    if kind in ("S_tilde", "dual"):
        comps = [c.scale(I) for c in comps]
    elif kind != "S":
        raise ValueError(kind)
    return Characteristic(two_s, comps, "scaling" if kind == "S" else "dual-scaling", {}, tag)


def massless_residual(two_s: int, comps: Sequence[Polynomial]) -> dict:
    """d_{A'}^{A} phi_{A A_{2s-1}} for a coordinate-only symmetric spinor field."""
    out = {}
    for j in range(two_s):
        for ap in range(2):
            out[(j, ap)] = coord_derivative(comps[j], 1, ap) - coord_derivative(comps[j + 1], 0, ap)
    return out


def build_elementary(comps: Sequence[Polynomial], two_s: int | None = None, tag: str = "phi") -> Characteristic:
    """Jet-independent characteristic given by a polynomial solution."""
    comps = list(comps)
    if two_s is None:
        two_s = len(comps) - 1
    res = massless_residual(two_s, comps)
    if any(res.values()):
        bad = {k: str(v) for k, v in res.items() if v}
        raise NotASolution(f"not a solution of the spin-{two_s}/2 massless equation", bad)
    return Characteristic(two_s, comps, "elementary", {}, tag)


def _monomials(deg: int):
    from itertools import combinations_with_replacement
    for combo in combinations_with_replacement(range(4), deg):
        e = [0, 0, 0, 0]
        for t in combo:
            e[t] += 1
        yield tuple(e)


def solve_massless_polynomial(two_s: int, degree: int) -> list[list[Polynomial]]:
    """Basis of polynomial solutions of degree at most ``degree``."""
    y = [spinor_coord(t >> 1, t & 1) for t in range(4)]
    out = []
    for d in range(degree + 1):
        monos = list(_monomials(d))
        unknowns = [(a, e) for a in range(two_s + 1) for e in monos]
        rows: dict = {}
        for col, (a, e) in enumerate(unknowns):
            # residual (j, a') = d_{1a'} phi[j] - d_{0a'} phi[j+1]
            for j, sign, c in ((a, 1, 1), (a - 1, -1, 0)):
                if not 0 <= j < two_s:
                    continue
                for ap in range(2):
                    t = 2 * c + ap
                    if not e[t]:
                        continue
                    f = list(e)
                    f[t] -= 1
                    row = rows.setdefault((j, ap, tuple(f)), {})
                    row[col] = row.get(col, 0) + sign * e[t]
        null = exact_nullspace(list(rows.values()), len(unknowns)) if rows else \
            [[Fraction(int(i == c)) for i in range(len(unknowns))] for c in range(len(unknowns))]
        for vec in null:
            comps = [dict() for _ in range(two_s + 1)]
            for (a, e), v in zip(unknowns, vec):
                if v:
                    comps[a][tuple((y[t], n) for t, n in enumerate(e) if n)] = as_field(v)
            out.append([Polynomial(c) for c in comps])
    return out


# -- conformal family ---------------------------------------------------------------

def _xi_upper(xi) -> dict:
    if isinstance(xi, ConformalKillingVector):
        return xi.spinor_upper()
    return dict(xi)


def build_conformal(xi, two_s: int, dual: bool = False, tag: str = "phi") -> Characteristic:
    """Z[xi] (or Z[i xi]) from a conformal Killing vector.

    ``xi`` is a ConformalKillingVector or a mapping (A, A') -> xi^{AA'}.
    """
    up = _xi_upper(xi)
    s = _frac(two_s, 2)
    # M_a^c = d_{aC'} xi^{cC'}
    M = [[coord_derivative(up[(c, 0)], a, 0) + coord_derivative(up[(c, 1)], a, 1)
          for c in range(2)] for a in range(2)]
    div = M[0][0] + M[1][1]
    w3 = (_frac(1) - s) * _frac(1, 4)
    phi0 = [Polynomial.var(jet(tag, 0, a, 0)) for a in range(two_s + 1)]
    comps = []
    for j in range(two_s + 1):
        t1 = Polynomial()
        for c in range(2):
            # xi^{cC'} phi_{..c C'}, primed index lowered
            t1 = t1 - up[(c, 0)] * Polynomial.var(jet(tag, 1, j + c, 1)) \
                + up[(c, 1)] * Polynomial.var(jet(tag, 1, j + c, 0))
        t2 = Polynomial()
        for a in range(2):
            rest = j - a
            if not 0 <= rest <= two_s - 1:
                continue
            w = _frac(comb(two_s - 1, rest), comb(two_s, j))
            acc = Polynomial()
            for c in range(2):
                if M[a][c]:
                    acc = acc + M[a][c] * phi0[rest + c]
            t2 = t2 + acc.scale(w)
        q = t1 + t2.scale(s) + (div * phi0[j]).scale(w3)
        comps.append(q)
    ch = Characteristic(two_s, comps, "dual-conformal" if dual else "conformal",
                        {"xi": getattr(xi, "name", "custom")}, tag)
    return ch.scale(I) if dual else ch


# -- chiral family ------------------------------------------------------------------

def _pi_derivative_table(pi: KillingSpinor, p: int) -> dict:
    """G[(a, c)] = sum over contracted B'_p of d_{B'_1 A_1}..d_{B'_p A_p} pi^{B'_p C'},
    with ``a`` ones among the A's and ``c`` ones among the remaining primed slots."""
    n = pi.l - p
    memo: dict = {}

    def d(poly_key, n_exps):
        key = (poly_key, n_exps)
        if key in memo:
            return memo[key]
        if not any(n_exps):
            val = pi.comps[(0, poly_key)]
        else:
            t = next(i for i in range(4) if n_exps[i])
            prev = list(n_exps)
            prev[t] -= 1
            val = coord_derivative(d(poly_key, tuple(prev)), t >> 1, t & 1)
        memo[key] = val
        return val

    G = {}
    for a in range(p + 1):
        for c in range(n + 1):
            acc = Polynomial()
            for b0 in range(p - a + 1):
                for b1 in range(a + 1):
                    mult = comb(p - a, b0) * comb(a, b1)
                    exps = (p - a - b0, b0, a - b1, b1)
                    term = d(b0 + b1 + c, exps)
                    if term:
                        acc = acc + term.scale(mult)
            G[(a, c)] = acc
    return G


def _lowered_conj_block(q: int, two_s: int, j: int, m: int, tag: str) -> Polynomial:
    """phibar of order q with its q upper unprimed indices lowered: ``j`` ones
    among its lower primed indices and ``m`` ones among the lowered unprimed."""
    sign = -1 if (q - m) % 2 else 1
    return Polynomial.var(conj_jet(tag, q, j, q - m), sign)


def chiral_term(pi: KillingSpinor, two_s: int, p: int, tag: str = "phi",
                conj_source: Callable | None = None) -> list[Polynomial]:
    """The p-th summand of W[pi] without its coefficient c_{2s,p}.

    ``conj_source(q, j, m)`` supplies the lowered conjugate block; the default
    is the exact-set variable itself.
    """
    q = two_s - p
    n = 2 * two_s - p
    G = _pi_derivative_table(pi, p)
    src = conj_source or (lambda qq, j, m: _lowered_conj_block(qq, two_s, j, m, tag))
    # contraction over the n symmetric primed slots, per unprimed counts (m, a)
    T = {}
    for m in range(q + 1):
        for a in range(p + 1):
            acc = Polynomial()
            for c in range(n + 1):
                g = G[(a, c)]
                if g:
                    acc = acc + (g * src(q, c, m)).scale(comb(n, c))
            T[(m, a)] = acc
    comps = []
    for J in range(two_s + 1):
        acc = Polynomial()
        for m in range(q + 1):
            a = J - m
            if 0 <= a <= p and T[(m, a)]:
                acc = acc + T[(m, a)].scale(_frac(comb(q, m) * comb(p, a), comb(two_s, J)))
        comps.append(acc)
    return comps


def build_chiral(pi: KillingSpinor, two_s: int, tag: str = "phi",
                 coefficients: dict | None = None, conj_source: Callable | None = None) -> Characteristic:
    """W[pi] for a type-(0, 4s) Killing spinor.

    ``coefficients`` overrides individual c_{2s,p} (negative controls).
    """
    if pi.k != 0 or pi.l != 2 * two_s:
        from .killing import DomainError
        raise DomainError(f"W needs a type (0,{2 * two_s}) Killing spinor, got ({pi.k},{pi.l})")
    comps = [Polynomial() for _ in range(two_s + 1)]
    for p in range(two_s + 1):
        c = (coefficients or {}).get(p, chiral_coefficient(two_s, p))
        term = chiral_term(pi, two_s, p, tag, conj_source)
        cf = as_field(c)
        comps = [a + b.scale(cf) for a, b in zip(comps, term)]
    return Characteristic(two_s, comps, "chiral", {}, tag)


# -- Lie derivative tower --------------------------------------------------------------

def lie_derive(base: Characteristic, zeta, ctx: JetContext | None = None) -> Characteristic:
    """pr Z[zeta] applied componentwise to ``base``."""
    z = build_conformal(zeta, base.two_s, tag=base.tag)
    ctx = _context(base.two_s, base.order + 2, ctx, base.tag)
    comps = [ctx.apply_evolutionary(z.as_dict(), q) for q in base.comps]
    chain = list(base.params.get("zeta", [])) + [getattr(zeta, "name", "custom")]
    return replace(base, comps=comps, params={**base.params, "zeta": chain})


# -- verification ---------------------------------------------------------------------

def determining_residual(Q: Characteristic, ctx: JetContext | None = None,
                         only: str | None = None) -> dict:
    """D_{A'}^{A} Q_{A A_{2s-1}} on-shell, keyed (j, A')."""
    ctx = _context(Q.two_s, max(Q.order, 0) + 1, ctx, Q.tag)
    out = {}
    for j in range(Q.two_s):
        for ap in range(2):
            out[(j, ap)] = ctx.total_derivative_lower(Q.comps[j], 1, ap, only) - \
                ctx.total_derivative_lower(Q.comps[j + 1], 0, ap, only)
    return out


def verify_symmetry(Q: Characteristic, ctx: JetContext | None = None) -> dict:
    res = determining_residual(Q, ctx)
    nonzero = {f"{k}": str(v) for k, v in res.items() if v}
    return {
        "family": Q.family, "params": Q.params, "order": Q.order,
        "pass": not nonzero, "residual_terms": sum(len(v) for v in res.values()),
        "residual": nonzero,
    }


def pi_recursion_check(pi: KillingSpinor, two_s: int) -> dict:
    """Compare coordinate and jet parts of the residuals of the W summands."""
    ctx = JetContext(two_s, two_s + 1)
    pi1, pi2 = [], []
    for p in range(two_s + 1):
        term = Characteristic(two_s, chiral_term(pi, two_s, p))
        pi1.append(determining_residual(term, ctx, only="coords"))
        pi2.append(determining_residual(term, ctx, only="jets"))
    failures = []
    for p in range(two_s):
        r = _frac(-(2 * two_s - p) * (two_s - p), (2 * two_s - p + 1) * (p + 1))
        for key in pi1[p]:
            if pi1[p][key] != pi2[p + 1][key].scale(r):
                failures.append(f"p={p} {key}")
    if any(pi1[two_s].values()):
        failures.append("Pi1_2s nonzero")
    if any(pi2[0].values()):
        failures.append("Pi2_0 nonzero")
    return {"two_s": two_s, "pass": not failures, "failures": failures}


# -- leading symbols -------------------------------------------------------------------

def leading_symbol(Q: Characteristic) -> list[Polynomial]:
    """Part of each component containing an exact-set variable of maximal order."""
    top = Q.order

    def keep(mono):
        return any(v.kind in (JET, CONJ_JET) and v.order == top for v, _ in mono)
    return [c.filter(keep) for c in Q.comps]


def _mixed_ckv(xi) -> SpinorArray:
    """xi^C_{C'} = xi^{CD'} eps_{D'C'}: upper unprimed, lower primed."""
    up = _xi_upper(xi)
    arr = SpinorArray([Slot(False, True), Slot(True, True)],
                      [up[(0, 0)], up[(0, 1)], up[(1, 0)], up[(1, 1)]])
    return arr.eps_move(1, "lower")


def _phi_array(two_s: int, n: int, tag: str) -> SpinorArray:
    return from_symmetric(two_s + n, n, lambda j, k: Polynomial.var(jet(tag, n, j, k)),
                          upper_primed=True)


def _conj_array_mixed(two_s: int, n: int, tag: str) -> SpinorArray:
    """phibar of order n with unprimed lowered and primed raised."""
    arr = from_symmetric(n, two_s + n, lambda j, k: Polynomial.var(conj_jet(tag, n, k, j)),
                         upper_unprimed=True)
    m = n
    for i in range(m):
        arr = arr.eps_move(i, "lower")
    for i in range(m, len(arr.slots)):
        arr = arr.eps_move(i, "raise")
    return arr


def _contract_all(a: SpinorArray, b: SpinorArray, pairs: list[tuple[int, int]]) -> SpinorArray:
    """Outer product then contract pairs (slot in a, slot in b); slots of ``b``
    are addressed after the canonical reordering of the product."""
    na_u = sum(1 for s in a.slots if not s.primed)
    nb_u = sum(1 for s in b.slots if not s.primed)
    na = len(a.slots)
    prod = a.outer(b)

    def pos(which, i):
        if which == "a":
            return i if not a.slots[i].primed else nb_u + i
        return na_u + i if not b.slots[i].primed else na + i
    targets = [(pos("a", i), pos("b", j)) for i, j in pairs]
    while targets:
        i, j = targets.pop(0)
        up, dn = (i, j) if prod.slots[i].upper else (j, i)
        prod = prod.contract(up, dn)
        hi, lo = max(i, j), min(i, j)

        def shift(x):
            return x - (x > lo) - (x > hi)
        targets = [(shift(x), shift(y)) for x, y in targets]
    return prod


def leading_closed_form(family: str, two_s: int, head, zetas: Sequence = (), tag: str = "phi") -> list[Polynomial]:
    """Displayed leading terms (times the frozen global sign) as symmetric components.

    ``family`` is "conformal" (head = xi) or "chiral" (head = pi).
    """
    n = len(zetas)
    if family in ("conformal", "dual-conformal"):
        K = _mixed_ckv(head)
        for z in zetas:
            K = K.outer(_mixed_ckv(z))
        K = K.symmetrize("both")
        order = n + 1
        F = _phi_array(two_s, order, tag)
        # K: order upper unprimed then order lower primed; F: 2s+order lower unprimed, order upper primed
        pairs = [(i, two_s + i) for i in range(order)] + \
                [(order + i, two_s + order + i) for i in range(order)]
        res = _contract_all(K, F, pairs)
        sign = (-1) ** (n + 1) * LEADING_SIGN_CONFORMAL
        comps = [res.to_symmetric()[(a, 0)].scale(sign) for a in range(two_s + 1)]
        if family == "dual-conformal":
            comps = [c.scale(I) for c in comps]
        return comps
    if family == "chiral":
        pi: KillingSpinor = head
        # pi lowered primed, times the zetas with upper unprimed / lower primed
        P = from_symmetric(0, pi.l, {(0, m): pi.comps[(0, m)] for m in range(pi.l + 1)},
                           upper_primed=True)
        for i in range(pi.l):
            P = P.eps_move(i, "lower")
        K = P
        for z in zetas:
            K = K.outer(_mixed_ckv(z))
        K = K.symmetrize("both")
        order = two_s + n
        F = _conj_array_mixed(two_s, order, tag)
        # K: n upper unprimed, 2s*2+n lower primed;
        # F: order lower unprimed (A's first then C's), 2s+order upper primed
        pairs = [(i, two_s + i) for i in range(n)] + \
                [(n + i, order + i) for i in range(2 * two_s + n)]
        res = _contract_all(K, F, pairs)
        sign = (-1) ** n * LEADING_SIGN_CHIRAL
        return [res.to_symmetric()[(a, 0)].scale(sign) for a in range(two_s + 1)]
    raise ValueError(family)


# -- dimensions and ranks --------------------------------------------------------------

def dimension_d_r(two_s: int, r: int) -> int:
    """Real dimension of order-r symmetry classes for spin s = two_s/2."""
    if r < 0:
        raise ValueError("r must be non-negative")
    num = ((r + 1) * (r + 2) * (r + 3)) ** 2
    if r >= two_s:
        num += ((r + 1) ** 2 - two_s ** 2) * ((r + 2) ** 2 - two_s ** 2) * ((r + 3) ** 2 - two_s ** 2)
    return num // 18


def characteristic_vector(Q: Characteristic, index: dict) -> dict:
    row = {}
    for a, c in enumerate(Q.comps):
        for mono, v in c.terms.items():
            col = index.setdefault((a, mono), len(index))
            row[col] = v
    return row


def constructive_generators(two_s: int, r: int, ckvs=None, pis=None) -> Iterable[Characteristic]:
    """The spanning families of order <= r, in a fixed order."""
    ckvs = ckvs if ckvs is not None else conformal_killing_basis()
    yield build_scaling(two_s, "S")
    yield build_scaling(two_s, "S_tilde")
    ctx = JetContext(two_s, r + 1)
    # single Lie-derivative chains Z[xi; zeta_1..zeta_p], p <= r-1
    level = [build_conformal(x, two_s) for x in ckvs]
    for p in range(r):
        for z in level:
            yield z
            yield z.scale(I)
        if p + 1 < r:
            level = [lie_derive(z, zeta, ctx) for z in level for zeta in ckvs]
    if r >= two_s:
        pis = pis if pis is not None else solve_killing(0, 2 * two_s).elements
        level = [build_chiral(pi, two_s) for pi in pis]
        for q in range(r - two_s + 1):
            for w in level:
                yield w
                yield w.scale(I)
            if q + 1 <= r - two_s:
                level = [lie_derive(w, zeta, ctx) for w in level for zeta in ckvs]


def constructive_rank(two_s: int, r: int, **kw) -> dict:
    index: dict = {}
    vecs = []
    for Q in constructive_generators(two_s, r, **kw):
        if Q.order > r:
            raise CapacityError(f"generator of order {Q.order} exceeds r={r}")
        vecs.append(characteristic_vector(Q, index))
    rank = real_rank(vecs)
    return {"two_s": two_s, "r": r, "generators": len(vecs), "columns": len(index),
            "rank": rank, "modular_rank": real_modular_rank(vecs), "expected": dimension_d_r(two_s, r),
            "pass": rank == dimension_d_r(two_s, r)}
