"""Maxwell's equations in tensor form and their translation to spin 1.

World tensors are dicts from index tuples (0..3) to Polynomials, all indices
lower unless stated.  Jets of the field tensor are ``tensor_jet("F", i, j, K)``
variables with i < j; ``F_jet`` handles the antisymmetry.  Verification of
tensor symmetries goes through the spinor dictionary

    sigma^i_{AA'} sigma^j_{BB'} F_ij = eps_{A'B'} phi_AB + eps_AB conj(phi)_{A'B'}

into the on-shell spin-1 jet ring.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Callable, Sequence

from .conventions import EPS_LOWER, EPS_UPPER, ETA, HODGE_SIGN, SIGMA, SIGMA_UP
from .field import FieldElement, as_field
from .jets import JetContext, coord_derivative, to_spinor_coords
from .killing import ConformalKillingVector, KillingSpinor
from .linalg import exact_nullspace
from .poly import TENSOR_JET, Polynomial, conj_jet, coord, jet, tensor_jet

__all__ = [
    "TensorArray", "levi_civita", "hodge_dual", "F_jet", "F_tensor", "dual_F_jet",
    "MaxwellDictionary", "tensor_conformal", "admissible_basis", "random_admissible",
    "validate_coefficients", "build_p", "weyl_symmetry_defects", "spinor_projection",
    "alpha_from_a", "pi_closed_form", "maxwell_chiral", "hodge_of_characteristic",
    "maxwell_dimension", "pi_family_rank", "einsum", "shortcut_check", "ij_symmetrized_derivative_check",
]

HALF = FieldElement(1, 0, 0, 0, 2)
QUARTER = FieldElement(1, 0, 0, 0, 4)


def _f(n, d=1) -> FieldElement:
    return FieldElement(n, 0, 0, 0, d)


# -- tensors ------------------------------------------------------------------------

@dataclass
class TensorArray:
    """Dense world tensor; ``upper[n]`` flags the variance of slot n."""

    rank: int
    comps: dict
    upper: tuple = ()

    def __post_init__(self):
        if not self.upper:
            self.upper = (False,) * self.rank

    def __getitem__(self, idx) -> Polynomial:
        return self.comps.get(tuple(idx), Polynomial())

    @classmethod
    def from_function(cls, rank: int, f: Callable, upper=()) -> "TensorArray":
        return cls(rank, {idx: f(*idx) for idx in product(range(4), repeat=rank)}, tuple(upper))

    def move(self, slot: int) -> "TensorArray":
        """Raise or lower one slot with the (diagonal) Minkowski metric."""
        up = list(self.upper)
        up[slot] = not up[slot]
        return TensorArray(self.rank, {idx: v.scale(ETA[idx[slot]]) for idx, v in self.comps.items()},
                           tuple(up))

    def antisymmetrize(self, a: int, b: int) -> "TensorArray":
        def f(*idx):
            sw = list(idx)
            sw[a], sw[b] = sw[b], sw[a]
            return (self[idx] - self[tuple(sw)]).scale(HALF)
        return TensorArray.from_function(self.rank, f, self.upper)

    def symmetrize(self, a: int, b: int) -> "TensorArray":
        def f(*idx):
            sw = list(idx)
            sw[a], sw[b] = sw[b], sw[a]
            return (self[idx] + self[tuple(sw)]).scale(HALF)
        return TensorArray.from_function(self.rank, f, self.upper)

    def __eq__(self, other):
        return all(self[i] == other[i] for i in product(range(4), repeat=self.rank))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.comps.values())


def _perm_sign(p) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


@lru_cache(maxsize=None)
def levi_civita() -> dict:
    """eps_{ijkl} with eps_{0123} = +1 (all indices lower)."""
    return {p: _perm_sign(p) for p in permutations(range(4))}


def hodge_dual(F, sign: int | None = None):
    """(*F)_ij = 1/2 eps_ijkl F^{kl} for an antisymmetric 4x4 array of polynomials."""
    sign = HODGE_SIGN if sign is None else sign
    get = (lambda i, j: F[(i, j)]) if isinstance(F, (dict, TensorArray)) else (lambda i, j: F[i][j])
    for i in range(4):
        for j in range(i, 4):
            if get(i, j) + get(j, i):
                raise ValueError("hodge_dual needs an antisymmetric tensor")
    eps = levi_civita()
    out = [[Polynomial() for _ in range(4)] for _ in range(4)]
    for (i, j, k, l), e in eps.items():
        # F^{kl} = eta^kk eta^ll F_kl, the 1/2 absorbed by summing k<l only
        if k < l:
            v = get(k, l)
            if v:
                out[i][j] = out[i][j] + v.scale(e * ETA[k] * ETA[l] * sign)
    return out


# -- F jets -------------------------------------------------------------------------

def F_jet(i: int, j: int, ks: Sequence[int] = (), name: str = "F") -> Polynomial:
    """F_{ij,K} as a polynomial (antisymmetric in i, j)."""
    if i == j:
        return Polynomial()
    if i < j:
        return Polynomial.var(tensor_jet(name, i, j, ks))
    return -Polynomial.var(tensor_jet(name, j, i, ks))


def F_tensor(ks: Sequence[int] = (), name: str = "F") -> list:
    return [[F_jet(i, j, ks, name) for j in range(4)] for i in range(4)]


def dual_F_jet(i: int, j: int, ks: Sequence[int] = (), name: str = "F") -> Polynomial:
    """(*F)_{ij,K}."""
    return hodge_dual(F_tensor(ks, name))[i][j]


def _dual_substitution(expr: Polynomial, name: str = "F") -> Polynomial:
    """Replace every F-jet by the corresponding jet of *F."""
    mapping = {}
    for v in expr.variables():
        if v.kind == TENSOR_JET and v.field == name:
            i, j, *ks = v.index
            mapping[v] = dual_F_jet(i, j, ks, name)
    return expr.substitute(mapping) if mapping else expr


class MaxwellDictionary:
    """Translation of tensor jet expressions into the spin-1 on-shell ring."""

    def __init__(self, max_order: int = 4, name: str = "F", tag: str = "phi"):
        self.ctx = JetContext(2, max_order, ((tag, 2),))
        self.name = name
        self.tag = tag
        self._cache: dict = {}

    def D_world(self, p: Polynomial, k: int) -> Polynomial:
        """D_k = sigma_k^{CC'} D_{CC'} on the on-shell ring."""
        acc = Polynomial()
        for c in range(2):
            for cp in range(2):
                s = SIGMA_UP[k][c][cp]
                if s:
                    acc = acc + self.ctx.total_derivative_lower(p, c, cp).scale(s)
        return acc

    def _spinor_F(self, a, b, ap, bp) -> Polynomial:
        """eps_{A'B'} phi_AB + eps_AB conj(phi)_{A'B'}."""
        acc = Polynomial()
        if EPS_LOWER[ap][bp]:
            acc = acc + Polynomial.var(jet(self.tag, 0, a + b, 0), EPS_LOWER[ap][bp])
        if EPS_LOWER[a][b]:
            acc = acc + Polynomial.var(conj_jet(self.tag, 0, ap + bp, 0), EPS_LOWER[a][b])
        return acc

    def F_image(self, i: int, j: int, ks: tuple = ()) -> Polynomial:
        key = (i, j, tuple(sorted(ks)))
        val = self._cache.get(key)
        if val is not None:
            return val
        if not ks:
            acc = Polynomial()
            for a, ap, b, bp in product(range(2), repeat=4):
                w = SIGMA_UP[i][a][ap] * SIGMA_UP[j][b][bp]
                if w:
                    acc = acc + self._spinor_F(a, b, ap, bp).scale(w)
            val = acc
        else:
            ks = key[2]
            val = self.D_world(self.F_image(i, j, ks[:-1]), ks[-1])
        self._cache[key] = val
        return val

    def translate(self, expr: Polynomial) -> Polynomial:
        mapping = {}
        for v in expr.variables():
            if v.kind == TENSOR_JET and v.field == self.name:
                i, j, *ks = v.index
                mapping[v] = self.F_image(i, j, tuple(ks))
        out = expr.substitute(mapping) if mapping else expr
        return to_spinor_coords(out)

    def spinor_characteristic(self, Q) -> tuple[list, dict]:
        """Q_AB = 1/2 eps^{A'B'} sigma^i_{AA'} sigma^j_{BB'} Q_ij, plus the defect of
        the full decomposition (must be all zero for a real tensor characteristic)."""
        S = {}
        for a, ap, b, bp in product(range(2), repeat=4):
            acc = Polynomial()
            for i in range(4):
                for j in range(4):
                    w = SIGMA[i][a][ap] * SIGMA[j][b][bp]
                    if w and Q[i][j]:
                        acc = acc + Q[i][j].scale(w)
            S[(a, ap, b, bp)] = acc
        comps = []
        for n in range(3):
            a, b = (0, 0) if n == 0 else ((0, 1) if n == 1 else (1, 1))
            acc = Polynomial()
            for ap in range(2):
                for bp in range(2):
                    e = EPS_UPPER[ap][bp]
                    if e:
                        acc = acc + S[(a, ap, b, bp)].scale(e)
            comps.append(acc.scale(HALF))
        defect = {}
        for (a, ap, b, bp), v in S.items():
            rebuilt = Polynomial()
            if EPS_LOWER[ap][bp]:
                rebuilt = rebuilt + comps[a + b].scale(EPS_LOWER[ap][bp])
            if EPS_LOWER[a][b]:
                rebuilt = rebuilt + comps[ap + bp].conj().scale(EPS_LOWER[a][b])
            d = v - rebuilt
            if d:
                defect[(a, ap, b, bp)] = d
        return comps, defect

    def translate_tensor(self, Q) -> list:
        return [[self.translate(Q[i][j]) for j in range(4)] for i in range(4)]

    def determining_residuals(self, Q) -> dict:
        """D^j Q_ij and D^j (*Q)_ij in the on-shell ring."""
        T = self.translate_tensor(Q)
        TD = self.translate_tensor(hodge_dual(Q))
        out = {}
        for label, M in (("Q", T), ("*Q", TD)):
            for i in range(4):
                acc = Polynomial()
                for j in range(4):
                    if M[i][j]:
                        acc = acc + self.D_world(M[i][j], j).scale(ETA[j])
                out[(label, i)] = acc
        return out


# -- conformal symmetries -------------------------------------------------------------

def tensor_conformal(xi: ConformalKillingVector, dual: bool = False, name: str = "F") -> list:
    """Z_ij[F; xi] = xi^k F_ij,k - 2 d_[i xi^k F_j]k  (with *F when ``dual``)."""
    Fj = dual_F_jet if dual else F_jet
    xs = [coord(i) for i in range(4)]
    out = [[Polynomial() for _ in range(4)] for _ in range(4)]
    for i in range(4):
        for j in range(4):
            acc = Polynomial()
            for k in range(4):
                if xi.components[k]:
                    acc = acc + xi.components[k] * Fj(i, j, (k,), name)
                di = xi.components[k].partial(xs[i])
                dj = xi.components[k].partial(xs[j])
                # -2 * 1/2 (d_i xi^k F_jk - d_j xi^k F_ik)
                if di:
                    acc = acc - di * Fj(j, k, (), name)
                if dj:
                    acc = acc + dj * Fj(i, k, (), name)
            out[i][j] = acc
    return out


# -- coefficient tensors --------------------------------------------------------------

def _index_list(rank):
    return list(product(range(4), repeat=rank))


def _constraint_rows(h: int) -> tuple[list, list]:
    if h in (0, 4):
        idx = _index_list(4)
        col = {t: n for n, t in enumerate(idx)}
        rows = []
        for i, j, k, l in idx:
            # a_ijkl = a_[kl][ij]
            r = {col[(i, j, k, l)]: Fraction(1)}
            for t, s in (((k, l, i, j), 1), ((l, k, i, j), -1), ((k, l, j, i), -1), ((l, k, j, i), 1)):
                r[col[t]] = r.get(col[t], 0) - Fraction(s, 4)
            rows.append(r)
            rows.append(_antisym_row((i, j, k, l), col))
        for i, k in product(range(4), repeat=2):
            rows.append({col[(i, j, k, j)]: Fraction(ETA[j]) for j in range(4)})
        return rows, idx
    if h in (1, 3):
        idx = _index_list(3)
        col = {t: n for n, t in enumerate(idx)}
        rows = []
        for i, j, k in idx:
            r = {col[(i, j, k)]: Fraction(1)}
            r[col[(i, k, j)]] = r.get(col[(i, k, j)], 0) + 1
            rows.append(r)
            rows.append(_antisym_row((i, j, k), col))
        for i in range(4):
            rows.append({col[(j, i, j)]: Fraction(ETA[j]) for j in range(4)})
        return rows, idx
    if h == 2:
        idx = _index_list(2)
        col = {t: n for n, t in enumerate(idx)}
        rows = [{col[(i, j)]: Fraction(1), col[(j, i)]: Fraction(-1)} for i, j in idx if i < j]
        rows.append({col[(i, i)]: Fraction(ETA[i]) for i in range(4)})
        return rows, idx
    raise ValueError(f"h must be 0..4, got {h}")


def _antisym_row(t, col) -> dict:
    r: dict = {}
    for p in permutations(range(len(t))):
        tt = tuple(t[q] for q in p)
        if len(set(tt)) < len(tt):
            continue
        r[col[tt]] = r.get(col[tt], 0) + _perm_sign(p)
    return {c: Fraction(v) for c, v in r.items() if v}


@lru_cache(maxsize=None)
def admissible_basis(h: int) -> tuple:
    """Exact basis of the constant tensors a^h obeying the constraints."""
    rows, idx = _constraint_rows(h)
    rows = [r for r in rows if r]
    null = exact_nullspace(rows, len(idx))
    return tuple({t: v for t, v in zip(idx, vec) if v} for vec in null)


def random_admissible(h: int, rng: random.Random, bound: int = 3) -> dict:
    """Random rational combination of the admissible basis."""
    out: dict = {}
    for b in admissible_basis(h):
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if c:
            for t, v in b.items():
                out[t] = out.get(t, 0) + c * v
    return {t: v for t, v in out.items() if v}


def validate_coefficients(h: int, a: dict) -> list[str]:
    """Names of violated constraints (empty when admissible)."""
    rows, idx = _constraint_rows(h)
    bad = []
    for n, r in enumerate(rows):
        if r and sum(v * a.get(idx[c], 0) for c, v in r.items()) != 0:
            bad.append(f"constraint row {n}")
    return bad


# -- the polynomials p^h --------------------------------------------------------------

def _x_lower():
    return [Polynomial.var(coord(i)).scale(ETA[i]) for i in range(4)]


def _x_upper():
    return [Polynomial.var(coord(i)) for i in range(4)]


def _anti2(f):
    """Antisymmetrize f(i,j,k,l) over (i,j) and over (k,l)."""
    def g(i, j, k, l):
        return (f(i, j, k, l) - f(j, i, k, l) - f(i, j, l, k) + f(j, i, l, k)).scale(QUARTER)
    return g


def build_p(h: int, a: dict) -> TensorArray:
    """Polynomial tensor p^h_{ijkl} of degree h from admissible coefficients."""
    bad = validate_coefficients(h, a)
    if bad:
        raise ValueError(f"coefficients violate constraints for h={h}: {bad[:5]}")
    A = lambda *t: as_field(a.get(tuple(t), 0))  # noqa: E731
    xl, xu = _x_lower(), _x_upper()
    xx = sum((xl[i] * xu[i] for i in range(1, 4)), xl[0] * xu[0])
    eta = lambda i, j: ETA[i] if i == j else 0  # noqa: E731
    zero = Polynomial()

    def c(v):
        return Polynomial.const(v)

    if h == 0:
        f = lambda i, j, k, l: c(A(i, j, k, l))  # noqa: E731
    elif h == 1:
        def contract_n(fn):
            return sum((xu[n].scale(fn(n)) for n in range(4) if fn(n)), zero)

        def f(i, j, k, l):
            t = (xl[i].scale(A(j, k, l)) - xl[j].scale(A(i, k, l))).scale(HALF)
            t = t + (xl[k].scale(A(l, i, j)) - xl[l].scale(A(k, i, j))).scale(HALF)
            t = t + _anti2(lambda i, j, k, l: contract_n(lambda n: eta(i, k) * A(l, j, n)))(i, j, k, l)
            t = t + _anti2(lambda i, j, k, l: contract_n(lambda n: eta(k, i) * A(j, l, n)))(i, j, k, l)
            return t
    elif h == 2:
        amnxx = sum((xu[m] * xu[n]).scale(A(m, n)) for m in range(4) for n in range(4) if A(m, n))
        if not isinstance(amnxx, Polynomial):
            amnxx = zero

        def vec_n(fn):
            return sum((xu[n].scale(fn(n)) for n in range(4) if fn(n)), zero)

        t1 = _anti2(lambda i, j, k, l: (xl[l] * xl[j]).scale(A(i, k)))
        t2 = _anti2(lambda i, j, k, l: xx.scale(eta(i, k) * A(l, j)))
        t3 = _anti2(lambda i, j, k, l: xl[j] * vec_n(lambda n: eta(i, k) * A(l, n)))
        t4 = _anti2(lambda i, j, k, l: xl[l] * vec_n(lambda n: eta(k, i) * A(j, n)))

        def f(i, j, k, l):
            t = t1(i, j, k, l) - t2(i, j, k, l).scale(HALF)
            t = t + (t3(i, j, k, l) + t4(i, j, k, l)).scale(HALF)
            g = eta(i, k) * eta(l, j) - eta(i, l) * eta(k, j)
            if g:
                t = t - amnxx.scale(_f(g, 12))
            return t
    elif h == 3:
        def vec_n(fn):
            return sum((xu[n].scale(fn(n)) for n in range(4) if fn(n)), zero)

        def quad(fn):
            return sum(((xu[m] * xu[n]).scale(fn(m, n)) for m in range(4) for n in range(4) if fn(m, n)), zero)

        s1 = _anti2(lambda i, j, k, l: xl[i] * xl[l] * vec_n(lambda n: A(j, n, k)))
        s2 = _anti2(lambda i, j, k, l: xl[k] * xl[j] * vec_n(lambda n: A(l, n, i)))
        s3 = _anti2(lambda i, j, k, l: xl[l] * quad(lambda m, n: A(m, n, i) * eta(j, k)))
        s4 = _anti2(lambda i, j, k, l: xl[j] * quad(lambda m, n: A(m, n, k) * eta(l, i)))
        s5 = _anti2(lambda i, j, k, l: vec_n(lambda m: A(i, m, k) * eta(l, j)))
        s6 = _anti2(lambda i, j, k, l: vec_n(lambda m: A(k, m, i) * eta(j, l)))

        def f(i, j, k, l):
            t = s1(i, j, k, l) + s2(i, j, k, l)
            u = (xl[i].scale(A(j, k, l)) - xl[j].scale(A(i, k, l))
                 + xl[k].scale(A(l, i, j)) - xl[l].scale(A(k, i, j))).scale(HALF)
            t = t + (u * xx).scale(QUARTER)
            t = t + (s3(i, j, k, l) + s4(i, j, k, l)).scale(HALF)
            t = t + ((s5(i, j, k, l) + s6(i, j, k, l)) * xx).scale(QUARTER)
            return t
    elif h == 4:
        def quad(fn):
            return sum(((xu[m] * xu[n]).scale(fn(m, n)) for m in range(4) for n in range(4) if fn(m, n)), zero)

        u1 = _anti2(lambda i, j, k, l: xl[l] * xl[j] * quad(lambda m, n: A(m, i, n, k)))
        u2 = _anti2(lambda i, j, k, l: quad(lambda m, n: A(m, i, n, k) * eta(l, j)))

        def f(i, j, k, l):
            t = u1(i, j, k, l) - (u2(i, j, k, l) * xx).scale(HALF)
            if A(i, j, k, l):
                t = t - (xx * xx).scale(A(i, j, k, l) * _f(1, 16))
            return t
    else:
        raise ValueError(f"h must be 0..4, got {h}")
    return TensorArray.from_function(4, f)


def weyl_symmetry_defects(p: TensorArray) -> list[str]:
    """Check p = p_[kl][ij], p_[ijkl] = 0 and p_ijk^j = 0."""
    bad = []
    for i, j, k, l in product(range(4), repeat=4):
        sym = (p[(k, l, i, j)] - p[(l, k, i, j)] - p[(k, l, j, i)] + p[(l, k, j, i)]).scale(QUARTER)
        if p[(i, j, k, l)] != sym:
            bad.append(f"pair symmetry {i}{j}{k}{l}")
    for t in product(range(4), repeat=4):
        if len(set(t)) == 4:
            acc = Polynomial()
            for perm in permutations(range(4)):
                acc = acc + p[tuple(t[q] for q in perm)].scale(_perm_sign(perm))
            if acc:
                bad.append(f"cyclic {t}")
    for i, k in product(range(4), repeat=2):
        acc = Polynomial()
        for j in range(4):
            acc = acc + p[(i, j, k, j)].scale(ETA[j])
        if acc:
            bad.append(f"trace {i}{k}")
    return bad


# -- spinor index computations -----------------------------------------------------------

def einsum(factors, free: Sequence[str]) -> dict:
    """Brute-force spinor contraction.

    ``factors`` is a list of ``(fn, names)``: ``fn(*values)`` returns a
    Polynomial or scalar for index values 0/1 bound to ``names``.  Names not
    in ``free`` are summed.  Returns ``{free_values: Polynomial}``.
    """
    names = []
    for _, ns in factors:
        for n in ns:
            if n not in names:
                names.append(n)
    summed = [n for n in names if n not in free]
    out = {}
    for fv in product(range(2), repeat=len(free)):
        env = dict(zip(free, fv))
        acc = Polynomial()
        for sv in product(range(2), repeat=len(summed)):
            env.update(zip(summed, sv))
            term = None
            for fn, ns in factors:
                v = fn(*(env[n] for n in ns))
                if isinstance(v, Polynomial):
                    if not v:
                        term = None
                        break
                elif not v:
                    term = None
                    break
                else:
                    v = Polynomial.const(v)
                term = v if term is None else term * v
            if term is not None:
                acc = acc + term
        out[fv] = acc
    return out


def _eps_up(a, b):
    return EPS_UPPER[a][b]


def _eps_lo(a, b):
    return EPS_LOWER[a][b]


def _symmetrize_primed(arr: dict, n: int, groups=None) -> dict:
    """Average over permutations of the listed positions of each key."""
    groups = groups or [list(range(n))]
    out = {}
    for key in arr:
        acc = Polynomial()
        count = 0
        perms = [list(permutations(g)) for g in groups]
        for choice in product(*perms):
            k2 = list(key)
            for g, pg in zip(groups, choice):
                for src, dst in zip(g, pg):
                    k2[dst] = key[src]
            acc = acc + arr[tuple(k2)]
            count += 1
        out[key] = acc.scale(_f(1, count))
    return out


def _spinor_rep4(p: TensorArray):
    """p_{II'JJ'KK'LL'} = sigma^i_{II'} ... p_ijkl as a function of 8 bits."""
    cache = {}

    def fn(a, ap, b, bp, c, cp, d, dp):
        key = (a, ap, b, bp, c, cp, d, dp)
        v = cache.get(key)
        if v is None:
            v = Polynomial()
            for i, j, k, l in product(range(4), repeat=4):
                w = SIGMA[i][a][ap] * SIGMA[j][b][bp] * SIGMA[k][c][cp] * SIGMA[l][d][dp]
                if w and p[(i, j, k, l)]:
                    v = v + p[(i, j, k, l)].scale(w)
            cache[key] = v
        return v
    return fn


def _primed_trace(fn) -> dict:
    """f_{P I'}{}^P{}_{J' Q K'}{}^Q{}_{L'} keyed by (I', J', K', L')."""
    return einsum([
        (fn, ["P", "I", "R", "J", "Q", "K", "S", "L"]),
        (_eps_up, ["P", "R"]), (_eps_up, ["Q", "S"]),
    ], ["I", "J", "K", "L"])


def spinor_projection(p: TensorArray) -> KillingSpinor:
    """pi_{I'J'K'L'} = 1/4 p_{P(I'}{}^P{}_{J'|Q|K'}{}^Q{}_{L')}, returned with
    its primed indices raised (type (0,4) storage)."""
    tr = _primed_trace(_spinor_rep4(p))
    tr = _symmetrize_primed(tr, 4)
    low = {key: to_spinor_coords(v.scale(QUARTER)) for key, v in tr.items()}
    return _store_upper(low)


def _store_upper(low: dict) -> KillingSpinor:
    """Raise all four primed indices of a symmetric array and compress."""
    comps = {}
    for m in range(5):
        bits = (1,) * m + (0,) * (4 - m)
        acc = Polynomial()
        for src in product(range(2), repeat=4):
            w = 1
            for b, s in zip(bits, src):
                w *= EPS_UPPER[b][s]
                if not w:
                    break
            if w:
                acc = acc + low[src].scale(w)
        comps[(0, m)] = acc
    return KillingSpinor(0, 4, comps, 4)


def shortcut_check(f: TensorArray) -> bool:
    """Spinor trace of f_[ij][kl] equals the primed-pair symmetrized trace of f."""
    h = TensorArray.from_function(4, _anti2(lambda i, j, k, l: f[(i, j, k, l)]))
    lhs = _primed_trace(_spinor_rep4(h))
    rhs = _symmetrize_primed(_primed_trace(_spinor_rep4(f)), 4, [[0, 1], [2, 3]])
    return all(lhs[k] == rhs[k] for k in lhs)


# -- alpha spinors and the closed forms ---------------------------------------------------

def _sigma_world(rank: int, a: dict):
    """Spinor representative of a constant lower-index tensor, as bit function."""
    def fn(*bits):
        acc = ZERO_F
        for idx in product(range(4), repeat=rank):
            v = a.get(idx)
            if not v:
                continue
            w = as_field(v)
            for n, i in enumerate(idx):
                w = w * SIGMA[i][bits[2 * n]][bits[2 * n + 1]]
                if w.is_zero():
                    break
            acc = acc + w
        return acc
    return fn


ZERO_F = as_field(0)


def alpha_from_a(h: int, a: dict) -> dict:
    """Constant symmetric spinor alpha^h with the index layout used below.

    h = 0, 4: alpha_{I'J'K'L'};  h = 1, 3: alpha_{I I'J'K'} (unprimed first);
    h = 2: alpha_{IJ I'J'}.
    """
    if h in (0, 4):
        fn = _sigma_world(4, a)
        tr = einsum([(lambda *b: Polynomial.const(fn(*b)), ["P", "I", "R", "J", "Q", "K", "S", "L"]),
                     (_eps_up, ["P", "R"]), (_eps_up, ["Q", "S"])], ["I", "J", "K", "L"])
        return {k: v.scale(QUARTER).constant_term() for k, v in tr.items()}
    if h in (1, 3):
        fn = _sigma_world(3, a)
        tr = einsum([(lambda *b: Polynomial.const(fn(*b)), ["I", "Ip", "J", "Jp", "K", "Kp"]),
                     (_eps_up, ["J", "K"])], ["I", "Ip", "Jp", "Kp"])
        return {k: v.scale(HALF).constant_term() for k, v in tr.items()}
    if h == 2:
        fn = _sigma_world(2, a)
        return {(i, j, ip, jp): fn(i, ip, j, jp) for i, j, ip, jp in product(range(2), repeat=4)}
    raise ValueError(h)


def _x_mixed(c, cp):
    """x^{C}_{C'} = x^{CD'} eps_{D'C'} in spinor coordinates."""
    from .poly import spinor_coord
    acc = Polynomial()
    for dp in range(2):
        e = EPS_LOWER[dp][cp]
        if e:
            acc = acc + Polynomial.var(spinor_coord(c, dp), e)
    return acc


def pi_closed_form(h: int, alpha: dict, printed_sign: bool = False) -> KillingSpinor:
    """The closed-form pi^h in terms of alpha^h.

    For h = 1 the direct projection of p^1 carries an overall minus sign
    relative to the commonly printed form; ``printed_sign=True`` returns the
    printed variant instead.
    """
    P = lambda v: Polynomial.const(v)  # noqa: E731
    conj = lambda v: as_field(v).conj()  # noqa: E731
    X = lambda c, cp: _x_mixed(c, cp)  # noqa: E731
    if h == 0:
        low = {k: P(v) for k, v in alpha.items()}
    elif h == 1:
        raw = einsum([(lambda l, i, j, k: P(alpha[(l, i, j, k)]), ["L", "I", "J", "K"]),
                      (X, ["L", "M"])], ["I", "J", "K", "M"])
        low = _symmetrize_primed(raw, 4)
        if not printed_sign:
            low = {k: -v for k, v in low.items()}
    elif h == 2:
        raw = einsum([(lambda k, l, i, j: P(alpha[(k, l, i, j)]), ["K", "L", "I", "J"]),
                      (X, ["K", "Kp"]), (X, ["L", "Lp"])], ["I", "J", "Kp", "Lp"])
        low = {k: v.scale(QUARTER) for k, v in _symmetrize_primed(raw, 4).items()}
    elif h == 3:
        # conj(alpha^3)_{I' I J K}: conjugate of alpha_{I I'J'K'}
        raw = einsum([(lambda ip, j, k, l: P(conj(alpha[(ip, j, k, l)])), ["Ip", "J", "K", "L"]),
                      (X, ["J", "Jp"]), (X, ["K", "Kp"]), (X, ["L", "Lp"])], ["Ip", "Jp", "Kp", "Lp"])
        low = {k: v.scale(-HALF) for k, v in _symmetrize_primed(raw, 4).items()}
    elif h == 4:
        raw = einsum([(lambda i, j, k, l: P(conj(alpha[(i, j, k, l)])), ["I", "J", "K", "L"]),
                      (X, ["I", "Ip"]), (X, ["J", "Jp"]), (X, ["K", "Kp"]), (X, ["L", "Lp"])],
                     ["Ip", "Jp", "Kp", "Lp"])
        low = {k: v.scale(QUARTER) for k, v in _symmetrize_primed(raw, 4).items()}
    else:
        raise ValueError(h)
    return _store_upper(low)


# -- chiral symmetries -------------------------------------------------------------------

def maxwell_chiral(p: TensorArray, dual: bool = False, name: str = "F") -> list:
    """W_ij[F; p] (or W_ij[*F; p]) as a 4x4 array of tensor-jet polynomials."""
    Fj = dual_F_jet if dual else F_jet
    xs = [coord(i) for i in range(4)]
    three_fifths = _f(3, 5)

    def Fup(k, l, ms=()):
        # F^{kl}_{,m...} with the derivative indices raised
        w = ETA[k] * ETA[l]
        for m in ms:
            w *= ETA[m]
        return Fj(k, l, ms, name).scale(w)

    dp = {}

    def d(i, *idx):
        key = (i,) + idx
        v = dp.get(key)
        if v is None:
            v = p[idx].partial(xs[i])
            dp[key] = v
        return v

    def X(i, j):
        acc = Polynomial()
        for k, l, m in product(range(4), repeat=3):
            if k == l:
                continue
            t = p[(k, l, m, i)]
            if t:
                acc = acc + t * Fj(k, l, (m, j), name).scale(ETA[k] * ETA[l] * ETA[m])
            t = d(i, j, m, k, l)
            if t:
                acc = acc + t * Fup(k, l, (m,))
            t = d(m, k, l, m, i)
            if t:
                acc = acc + (t * Fj(k, l, (j,), name)).scale(three_fifths * ETA[k] * ETA[l] * ETA[m])
            t = d(i, j, m, k, l)
            if t:
                t = t.partial(xs[m])
                if t:
                    acc = acc + (t * Fup(k, l)).scale(three_fifths * ETA[m])
        return acc

    raw = [[X(i, j) if i != j else Polynomial() for j in range(4)] for i in range(4)]
    return [[(raw[i][j] - raw[j][i]).scale(HALF) for j in range(4)] for i in range(4)]


def hodge_of_characteristic(Q) -> list:
    return hodge_dual(Q)


def ij_symmetrized_derivative_check(pi: KillingSpinor, tag: str = "phi") -> bool:
    """The Killing-contraction identity for a type-(0,4) spinor against the
    order-1 conjugate exact set, checked symbolically."""
    low = _lower_all(pi)

    def dpi(c, cp, *rest):
        return coord_derivative(low[rest], c, cp)

    def phibar_up(k, l, m, pu):
        # conj(phi)^{K'L'M'P}: primed raised, P upper unprimed (natural position)
        acc = Polynomial()
        for a, b, c in product(range(2), repeat=3):
            w = EPS_UPPER[k][a] * EPS_UPPER[l][b] * EPS_UPPER[m][c]
            if w:
                acc = acc + Polynomial.var(conj_jet(tag, 1, a + b + c, pu), w)
        return acc

    def phibar_mixed(j, k, l, pu):
        # conj(phi)_{J'}{}^{K'L'P}
        acc = Polynomial()
        for b, c in product(range(2), repeat=2):
            w = EPS_UPPER[k][b] * EPS_UPPER[l][c]
            if w:
                acc = acc + Polynomial.var(conj_jet(tag, 1, j + b + c, pu), w)
        return acc

    lhs = einsum([(lambda pp, i, j, k, l, m: dpi(pp, i, j, k, l, m), ["P", "I", "J", "K", "L", "M"]),
                  (phibar_up, ["K", "L", "M", "P"])], ["I", "J"])
    lhs = _symmetrize_primed(lhs, 2)

    def dpi_up(pp, q, *rest):
        # d_P^{Q'} = eps^{Q'R'} d_{PR'}
        acc = Polynomial()
        for r in range(2):
            e = EPS_UPPER[q][r]
            if e:
                acc = acc + coord_derivative(low[rest], pp, r).scale(e)
        return acc

    rhs = einsum([(lambda pp, q, k, l, i: dpi_up(pp, q, k, l, q, i), ["P", "Q", "K", "L", "I"]),
                  (phibar_mixed, ["J", "K", "L", "P"])], ["I", "J"])
    rhs = {k: v.scale(_f(3, 5)) for k, v in _symmetrize_primed(rhs, 2).items()}
    return all(lhs[k] == rhs[k] for k in lhs)


def _lower_all(pi: KillingSpinor) -> dict:
    """pi_{I'J'K'L'...} with all primed indices lowered, keyed by bit tuples."""
    n = pi.l
    out = {}
    for bits in product(range(2), repeat=n):
        acc = Polynomial()
        for src in product(range(2), repeat=n):
            w = 1
            for s, b in zip(src, bits):
                w *= EPS_LOWER[s][b]
                if not w:
                    break
            if w:
                acc = acc + pi.comps[(0, sum(src))].scale(w)
        out[bits] = acc
    return out


def pi_family_rank(hs: Sequence[int] = range(5)) -> int:
    """Complex dimension spanned by the projections of the p^h over admissible bases."""
    from .killing import complex_rank
    spinors = []
    for h in hs:
        for b in admissible_basis(h):
            spinors.append(spinor_projection(build_p(h, b)))
    return complex_rank(spinors)


def maxwell_dimension(r: int) -> int:
    """Number of independent order-r symmetries of Maxwell's equations (r >= 2)."""
    num = (r + 1) * (r + 3) * (r ** 4 + 8 * r ** 3 + 17 * r ** 2 + 4 * r + 6)
    assert num % 9 == 0
    return num // 9
