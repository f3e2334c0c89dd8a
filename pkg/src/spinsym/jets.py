"""On-shell jet calculus for massless spin-s fields.

Coordinates on the solution manifold are the spacetime coordinates and
Penrose's exact sets.  The variable ``jet(f, p, j, k)`` is the component of
the symmetrized derivative spinor of order ``p`` of field ``f``: ``2s + p``
lower unprimed indices of which ``j`` equal one, and ``p`` upper primed
indices of which ``k`` equal one.  ``conj_jet(f, p, j, k)`` is its complex
conjugate (``2s + p`` lower primed, ``p`` upper unprimed indices).

Spacetime polynomials are written either in the real coordinates x^i or in
the hermitian spinor coordinates x^{AA'} = sigma_i^{AA'} x^i, for which the
spinor derivative is simply d_{AA'} = d/dx^{AA'}.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .conventions import SIGMA, SIGMA_UP
from .field import FieldElement, as_field
from .poly import (CONJ_JET, COORD, JET, PARAM, SPINOR_COORD, Polynomial, Variable,
                   conj_jet, coord, jet, spinor_coord)

__all__ = [
    "CapacityError", "JetContext", "coord_derivative", "to_spinor_coords",
    "to_real_coords", "commutation_check", "sym_total_derivative_power",
]

log = logging.getLogger(__name__)


class CapacityError(RuntimeError):
    """A jet of order above the context's ``max_order`` was required."""


class ContractViolation(ValueError):
    pass


def coord_derivative(p: Polynomial, a: int, ap: int) -> Polynomial:
    """d_{AA'} p = sigma^i_{AA'} dp/dx^i for a polynomial in coordinates only."""
    out = Polynomial()
    for v in p.variables():
        if v.kind == SPINOR_COORD:
            if v.index == (a, ap):
                out = out + p.partial(v)
        elif v.kind == COORD:
            s = SIGMA[v.index[0]][a][ap]
            if s:
                out = out + p.partial(v).scale(s)
        elif v.kind != PARAM:
            raise ContractViolation(f"coord_derivative got jet variable {v!r}; use total_derivative")
    return out


@lru_cache(maxsize=None)
def _real_to_spinor_map():
    return {coord(i): _lin({spinor_coord(a, ap): SIGMA[i][a][ap]
                            for a in range(2) for ap in range(2)}) for i in range(4)}


@lru_cache(maxsize=None)
def _spinor_to_real_map():
    return {spinor_coord(a, ap): _lin({coord(i): SIGMA_UP[i][a][ap] for i in range(4)})
            for a in range(2) for ap in range(2)}


def _lin(coeffs) -> Polynomial:
    return Polynomial({((v, 1),): c for v, c in coeffs.items() if c})


def to_spinor_coords(p: Polynomial) -> Polynomial:
    """Rewrite x^i as sigma^i_{AA'} x^{AA'}."""
    mapping = {v: q for v, q in _real_to_spinor_map().items() if v in p.variables()}
    return p.substitute(mapping) if mapping else p


def to_real_coords(p: Polynomial) -> Polynomial:
    """Rewrite x^{AA'} as sigma_i^{AA'} x^i."""
    mapping = {v: q for v, q in _spinor_to_real_map().items() if v in p.variables()}
    return p.substitute(mapping) if mapping else p


@dataclass(frozen=True)
class JetContext:
    """Immutable description of the on-shell jet ring.

    ``fields`` maps each field tag to its ``two_s``; ordinary spin-s work uses
    the single tag ``"phi"``.
    """

    two_s: int
    max_order: int
    fields: tuple = field(default=())

    def __post_init__(self):
        if self.two_s < 1:
            raise ValueError("two_s must be positive")
        if not self.fields:
            object.__setattr__(self, "fields", (("phi", self.two_s),))

    def spin_of(self, tag: str) -> int:
        for f, ts in self.fields:
            if f == tag:
                return ts
        raise KeyError(tag)

    def with_order(self, max_order: int) -> "JetContext":
        return JetContext(self.two_s, max_order, self.fields)

    # -- variable blocks --------------------------------------------------
    def phi(self, p: int, j: int, k: int, tag: str = "phi") -> Polynomial:
        self._check(p)
        return Polynomial.var(jet(tag, p, j, k))

    def phibar(self, p: int, j: int, k: int, tag: str = "phi") -> Polynomial:
        self._check(p)
        return Polynomial.var(conj_jet(tag, p, j, k))

    def block(self, p: int, tag: str = "phi", conjugate: bool = False) -> dict:
        """Symmetric storage {(j, k): variable} of the order-p exact set."""
        ts = self.spin_of(tag)
        mk = self.phibar if conjugate else self.phi
        return {(j, k): mk(p, j, k, tag) for j in range(ts + p + 1) for k in range(p + 1)}

    def block_size(self, p: int, tag: str = "phi") -> int:
        return (self.spin_of(tag) + p + 1) * (p + 1)

    def _check(self, p: int):
        if p > self.max_order:
            raise CapacityError(
                f"jet order {p} exceeds max_order={self.max_order}; enlarge the JetContext")

    # -- total derivatives ------------------------------------------------
    def _d_lower_var(self, v: Variable, c: int, cp: int) -> Polynomial:
        """D_{cc'} (both indices lower) of a single variable."""
        if v.kind == SPINOR_COORD:
            return Polynomial.const(1) if v.index == (c, cp) else Polynomial()
        if v.kind == COORD:
            return Polynomial.const(SIGMA[v.index[0]][c][cp])
        if v.kind == JET:
            self._check(v.order + 1)
            # D_{cc'} phi = eps_{d'c'} D_c^{d'} phi
            if cp == 0:
                return -Polynomial.var(jet(v.field, v.order + 1, v.j + c, v.k + 1))
            return Polynomial.var(jet(v.field, v.order + 1, v.j + c, v.k))
        if v.kind == CONJ_JET:
            self._check(v.order + 1)
            # D_{cc'} phibar = eps_{dc} D^{d}_{c'} phibar
            if c == 0:
                return -Polynomial.var(conj_jet(v.field, v.order + 1, v.j + cp, v.k + 1))
            return Polynomial.var(conj_jet(v.field, v.order + 1, v.j + cp, v.k))
        if v.kind == PARAM:
            return Polynomial()
        raise ContractViolation(f"variable {v!r} is not in the on-shell ring")

    def total_derivative_lower(self, p: Polynomial, c: int, cp: int, only: str | None = None) -> Polynomial:
        """D_{CC'} with both indices lower.

        ``only="coords"`` keeps just the explicit coordinate dependence,
        ``only="jets"`` just the chain rule through exact-set variables.
        """
        out: dict = {}
        dcache: dict = {}
        for m, coeff in p.terms.items():
            for idx, (v, e) in enumerate(m):
                if only is not None and (v.kind in (COORD, SPINOR_COORD)) != (only == "coords"):
                    continue
                dv = dcache.get(v)
                if dv is None:
                    dv = self._d_lower_var(v, c, cp)
                    dcache[v] = dv
                if not dv:
                    continue
                rest = m[:idx] + ((v, e - 1),) + m[idx + 1:] if e > 1 else m[:idx] + m[idx + 1:]
                base = Polynomial({rest: coeff * e}, _clean=True)
                for mm, cc in (base * dv).terms.items():
                    prev = out.get(mm)
                    out[mm] = cc if prev is None else prev + cc
        return Polynomial({m: c_ for m, c_ in out.items() if not c_.is_zero()}, _clean=True)

    def total_derivative(self, p: Polynomial, c: int, cp: int, only: str | None = None) -> Polynomial:
        """D_C^{C'}: appends C to the unprimed and C' to the primed group of
        every exact-set variable (product rule over all factors)."""
        # D_c^{c'} = eps^{c'd'} D_{cd'}
        if cp == 0:
            return self.total_derivative_lower(p, c, 1, only)
        return -self.total_derivative_lower(p, c, 0, only)

    def total_derivative_mixed(self, p: Polynomial, cp: int, c_up: int, only: str | None = None) -> Polynomial:
        """D^{C}_{C'} (unprimed upper, primed lower) = eps^{CD} D_{DC'}."""
        if c_up == 0:
            return self.total_derivative_lower(p, 1, cp, only)
        return -self.total_derivative_lower(p, 0, cp, only)

    # -- evolutionary vector fields ----------------------------------------
    def sym_total_derivative_power(self, comps: Sequence[Polynomial], p: int,
                                   tag: str = "phi") -> dict:
        """Symmetrized p-fold total derivative of a characteristic.

        ``comps[a]`` is the component with ``a`` ones among its ``2s`` lower
        unprimed indices.  Returns ``{(j, k): Polynomial}`` for the symmetric
        rank-(2s+p, p) array pairing with the order-p exact set.
        """
        ts = self.spin_of(tag)
        if len(comps) != ts + 1:
            raise ValueError("characteristic has the wrong number of components")
        if p == 0:
            return {(a, 0): comps[a] for a in range(ts + 1)}
        memo: dict = {}

        def dpow(a: int, n: tuple) -> Polynomial:
            key = (a, n)
            val = memo.get(key)
            if val is not None:
                return val
            if not any(n):
                val = comps[a]
            else:
                t = next(i for i in range(4) if n[i])
                prev = list(n)
                prev[t] -= 1
                val = self.total_derivative(dpow(a, tuple(prev)), t >> 1, t & 1)
            memo[key] = val
            return val

        out: dict = {}
        pf = factorial(p)
        for a in range(ts + 1):
            wa = comb(ts, a)
            for n00 in range(p + 1):
                for n01 in range(p + 1 - n00):
                    for n10 in range(p + 1 - n00 - n01):
                        n11 = p - n00 - n01 - n10
                        mult = pf // (factorial(n00) * factorial(n01) * factorial(n10) * factorial(n11))
                        d = dpow(a, (n00, n01, n10, n11))
                        if not d:
                            continue
                        j, k = a + n10 + n11, n01 + n11
                        w = FieldElement(wa * mult, 0, 0, 0, comb(ts + p, j) * comb(p, k))
                        term = d.scale(w)
                        out[(j, k)] = out[(j, k)] + term if (j, k) in out else term
        for j in range(ts + p + 1):
            for k in range(p + 1):
                out.setdefault((j, k), Polynomial())
        return out

    def apply_evolutionary(self, char: dict, g: Polynomial) -> Polynomial:
        """pr Y (g) for the evolutionary field with characteristic ``char``.

        ``char`` maps field tag -> list of components; the conjugate tower is
        driven by the conjugated components.
        """
        needed: dict = {}
        for v in g.variables():
            if v.kind in (JET, CONJ_JET) and v.field in char:
                needed.setdefault(v.field, set()).add(v.order)
        out = Polynomial()
        for tag, orders in needed.items():
            comps = char[tag]
            for p in sorted(orders):
                sym = self.sym_total_derivative_power(comps, p, tag)
                for (j, k), val in sym.items():
                    vj = jet(tag, p, j, k)
                    dg = g.partial(vj)
                    if dg and val:
                        out = out + dg * val
                    vc = conj_jet(tag, p, j, k)
                    dgc = g.partial(vc)
                    if dgc and val:
                        out = out + dgc * val.conj()
        return out


def sym_total_derivative_power(ctx: JetContext, comps, p: int, tag: str = "phi") -> dict:
    return ctx.sym_total_derivative_power(comps, p, tag)


# -- commutation formula on the off-shell free module ------------------------

def _offshell(tag: str, a: int, n: tuple) -> Variable:
    """Unsymmetrized derivative variable: ``a`` ones among the field indices and
    ``n = (n00, n01, n10, n11)`` derivative index pairs (C, C')."""
    return Variable(JET, "offshell:" + tag, sum(n), a, 0, index=n)


def _offshell_D(v: Variable, c: int, cp: int) -> Variable:
    n = list(v.index)
    n[2 * c + cp] += 1
    return Variable(JET, v.field, v.order + 1, v.j, 0, index=tuple(n))


def _offshell_op(two_s: int, p: int, a_ones: int, b_ones: int, bp_ones: int, v: Variable) -> FieldElement:
    """Value of the partial-derivative operator with index counts (A, B_p, B'_p)
    on the off-shell variable ``v``: product of separately symmetrized deltas."""
    n00, n01, n10, n11 = v.index
    if v.order != p or v.j != a_ones or n10 + n11 != b_ones or n01 + n11 != bp_ones:
        return as_field(0)
    return FieldElement(1, 0, 0, 0, comb(two_s, a_ones) * comb(p, b_ones) * comb(p, bp_ones))


def commutation_check(two_s: int, p_order: int, tag: str = "phi") -> dict:
    """Check the commutator of the field-derivative operators with D_C^{C'}.

    Works on the free module of unsymmetrized derivative variables up to
    order ``p_order``; both sides are derivations, so agreement on every
    generator is agreement everywhere.  Returns a report whose
    ``violations`` list must be empty.
    """
    if p_order < 1:
        raise ValueError("the commutation formula requires p >= 1")
    p = p_order
    gens = []
    for r in range(p + 1):
        for a in range(two_s + 1):
            for n00 in range(r + 1):
                for n01 in range(r + 1 - n00):
                    for n10 in range(r + 1 - n00 - n01):
                        gens.append(_offshell(tag, a, (n00, n01, n10, r - n00 - n01 - n10)))
    violations = []
    checked = 0
    from itertools import product
    for abits in product((0, 1), repeat=two_s):
        for bbits in product((0, 1), repeat=p):
            for bpbits in product((0, 1), repeat=p):
                A, B, Bp = sum(abits), sum(bbits), sum(bpbits)
                for c in (0, 1):
                    for cp in (0, 1):
                        for v in gens:
                            # [O, D](v) = O(D v) - D(O v); O v is constant so D kills it
                            lhs = _offshell_op(two_s, p, A, B, Bp, _offshell_D(v, c, cp))
                            rhs = as_field(0)
                            for i in range(p):
                                if bbits[i] != c:
                                    continue
                                for ip in range(p):
                                    if bpbits[ip] != cp:
                                        continue
                                    rhs = rhs + _offshell_op(two_s, p - 1, A, B - c, Bp - cp, v)
                            rhs = rhs * FieldElement(1, 0, 0, 0, p * p)
                            checked += 1
                            if lhs != rhs:
                                violations.append({"A": abits, "B": bbits, "Bp": bpbits,
                                                   "C": c, "Cp": cp, "var": repr(v),
                                                   "lhs": str(lhs), "rhs": str(rhs)})
    return {"two_s": two_s, "p": p, "checked": checked, "violations": violations,
            "pass": not violations}
