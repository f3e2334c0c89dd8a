"""The Weyl system (massless Dirac equation) as a decoupled spin-1/2 pair.

A Dirac spinor is (psi^{A'}, phi_A).  Both halves are handled by the spin-1/2
engine: the phi-half directly (tag ``"phi"``), the psi-half through
chi_A = conj(psi)_A (tag ``"psi"``).  So ``jet("psi", ...)`` variables are the
jets of conj(psi) and ``conj_jet("psi", ...)`` those of psi itself.  A
characteristic (Q^{A'}, R_A) is stored as (conj(Q)_A, R_A).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable

from .conventions import ETA, GAMMA_SCALE, SIGMA, SIGMA_UP
from .field import I, ONE, ZERO, as_field
from .jets import CapacityError, JetContext
from .killing import ConformalKillingVector, DomainError, KillingSpinor, conformal_killing_basis, solve_killing
from .linalg import real_rank
from .poly import CONJ_JET, JET, Polynomial
from .symmetries import (
    Characteristic, _lowered_conj_block, build_chiral, build_conformal, build_scaling,
    characteristic_vector, determining_residual, dimension_d_r,
)

__all__ = [
    "gamma_matrices", "gamma5", "clifford_defects", "DiracCharacteristic",
    "build_dirac_symmetry", "dirac_lie_derive", "verify_dirac", "dirac_dimension",
    "dirac_generators", "dirac_constructive_rank", "VARIANTS",
]

TAGS = ("psi", "phi")
VARIANTS = ("plain", "gamma5", "conjugate", "i-multiple")

# -- gamma matrices ----------------------------------------------------------------
# rows/cols 0,1 index the psi^{A'} slot, 2,3 the phi_A slot


def _zero4():
    return [[ZERO] * 4 for _ in range(4)]


def gamma_matrices(upper: bool = False) -> list:
    """gamma_i (or gamma^i) as 4x4 lists of field elements."""
    out = []
    for i in range(4):
        g = _zero4()
        for a, ap in product(range(2), repeat=2):
            # psi^{A'} <- sigma_i^{BA'} phi_B ; phi_A <- sigma_{iAB'} psi^{B'}
            g[ap][2 + a] = SIGMA_UP[i][a][ap] * GAMMA_SCALE
            g[2 + a][ap] = SIGMA[i][a][ap] * (ETA[i] * GAMMA_SCALE)
        if upper:
            g = [[x * ETA[i] for x in row] for row in g]
        out.append(g)
    return out


def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(4)), ZERO) for j in range(4)] for i in range(4)]


def gamma5() -> list:
    g = gamma_matrices()
    m = _matmul(_matmul(g[0], g[1]), _matmul(g[2], g[3]))
    return [[x * (-I) for x in row] for row in m]


def clifford_defects() -> list[str]:
    """Violations of g^i g^j + g^j g^i = 2 eta^{ij} and of g5 anticommuting."""
    g = gamma_matrices(upper=True)
    g5 = gamma5()
    bad = []
    for i in range(4):
        for j in range(4):
            s = _matmul(g[i], g[j])
            t = _matmul(g[j], g[i])
            for r, c in product(range(4), repeat=2):
                want = as_field(2 * ETA[i]) if (i == j and r == c) else ZERO
                if s[r][c] + t[r][c] != want:
                    bad.append(f"clifford {i}{j}")
                    break
        s, t = _matmul(g[i], g5), _matmul(g5, g[i])
        if any(not (s[r][c] + t[r][c]).is_zero() for r, c in product(range(4), repeat=2)):
            bad.append(f"gamma5 anticommutes with gamma{i}")
    diag = [ONE, ONE, -ONE, -ONE]
    for r, c in product(range(4), repeat=2):
        if g5[r][c] != (diag[r] if r == c else ZERO):
            bad.append("gamma5 block form")
            break
    return bad


# -- characteristics ---------------------------------------------------------------


@dataclass
class DiracCharacteristic:
    psi: list
    phi: list
    family: str = ""
    variant: tuple = ()
    params: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        best = -1
        for c in self.psi + self.phi:
            for v in c.variables():
                if v.kind in (JET, CONJ_JET) and v.order > best:
                    best = v.order
        return best

    def halves(self) -> tuple[Characteristic, Characteristic]:
        return (Characteristic(1, self.psi, self.family, self.params, "psi"),
                Characteristic(1, self.phi, self.family, self.params, "phi"))

    def psi_upper(self) -> list:
        """Q^{A'} recovered from the stored conj(Q)_A."""
        low = [c.conj() for c in self.psi]
        return [-low[1], low[0]]

    def gamma5(self) -> "DiracCharacteristic":
        return replace(self, phi=[-c for c in self.phi], variant=self.variant + ("gamma5",))

    def times_i(self) -> "DiracCharacteristic":
        # Q^{A'} -> i Q^{A'} conjugates to -i on the stored psi-half
        return replace(self, psi=[c.scale(-I) for c in self.psi],
                       phi=[c.scale(I) for c in self.phi], variant=self.variant + ("i-multiple",))

    def conjugate(self) -> "DiracCharacteristic":
        """The same construction applied to Psi* = (conj(phi)^{A'}, conj(psi)_A)."""
        return replace(self, psi=[_swap_tags(c) for c in self.psi],
                       phi=[_swap_tags(c) for c in self.phi], variant=self.variant + ("conjugate",))

    def scale(self, c) -> "DiracCharacteristic":
        return replace(self, psi=[q.scale(c) for q in self.psi], phi=[q.scale(c) for q in self.phi])

    def as_dict(self) -> dict:
        return {"psi": self.psi, "phi": self.phi}


def _swap_tags(p: Polynomial) -> Polynomial:
    from .poly import Variable
    mapping = {}
    for v in p.variables():
        if v.kind in (JET, CONJ_JET) and v.field in TAGS:
            other = "phi" if v.field == "psi" else "psi"
            mapping[v] = Polynomial.var(Variable(v.kind, other, v.order, v.j, v.k))
    return p.substitute(mapping) if mapping else p


def _cross_source(tag: str):
    return lambda q, j, m: _lowered_conj_block(q, 1, j, m, tag)


def build_dirac_symmetry(family: str, param=None, variants: Iterable[str] = (),
                         coefficients: dict | None = None) -> DiracCharacteristic:
    """S, S_tilde, Z or W for the Weyl system, then the listed variants in order.

    Z takes a conformal Killing vector; W a type (0,2) Killing spinor.
    ``coefficients`` overrides the chiral weights (negative controls).
    """
    if family in ("S", "S_tilde"):
        a = build_scaling(1, "S", "psi").comps
        b = build_scaling(1, "S", "phi").comps
        Q = DiracCharacteristic(a, b, family)
        if family == "S_tilde":
            Q = replace(Q.times_i(), variant=())
    elif family == "Z":
        if not isinstance(param, ConformalKillingVector):
            raise DomainError("Z needs a conformal Killing vector")
        Q = DiracCharacteristic(build_conformal(param, 1, tag="psi").comps,
                                build_conformal(param, 1, tag="phi").comps,
                                "Z", params={"xi": param.name})
    elif family == "W":
        if not isinstance(param, KillingSpinor) or (param.k, param.l) != (0, 2):
            raise DomainError("W needs a type (0,2) Killing spinor")
        # the psi-half pairs pi with conj(phi); the phi-half pairs pi with psi
        Q = DiracCharacteristic(
            build_chiral(param, 1, "psi", coefficients, _cross_source("phi")).comps,
            build_chiral(param, 1, "phi", coefficients, _cross_source("psi")).comps,
            "W")
    else:
        raise ValueError(f"unknown Dirac family {family!r}")
    for v in variants:
        if v == "plain":
            continue
        if v == "gamma5":
            Q = Q.gamma5()
        elif v == "conjugate":
            Q = Q.conjugate()
        elif v == "i-multiple":
            Q = Q.times_i()
        else:
            raise ValueError(f"unknown variant {v!r}")
    return Q


def _context(order: int) -> JetContext:
    return JetContext(1, order, (("psi", 1), ("phi", 1)))


def dirac_lie_derive(base: DiracCharacteristic, zeta: ConformalKillingVector,
                     ctx: JetContext | None = None) -> DiracCharacteristic:
    z = build_dirac_symmetry("Z", zeta)
    ctx = ctx or _context(base.order + 2)
    ch = z.as_dict()
    chain = list(base.params.get("zeta", [])) + [zeta.name]
    return replace(base, psi=[ctx.apply_evolutionary(ch, q) for q in base.psi],
                   phi=[ctx.apply_evolutionary(ch, q) for q in base.phi],
                   params={**base.params, "zeta": chain})


def verify_dirac(Q: DiracCharacteristic, ctx: JetContext | None = None) -> dict:
    """Both decoupled determining equations; pass iff both residuals vanish."""
    ctx = ctx or _context(max(Q.order, 0) + 1)
    out = {"family": Q.family, "variant": list(Q.variant), "params": Q.params, "order": Q.order}
    total = 0
    ok = True
    for half in Q.halves():
        res = determining_residual(half, ctx)
        n = sum(len(v) for v in res.values())
        out[f"{half.tag}_residual_terms"] = n
        total += n
        ok = ok and n == 0
    out["residual_terms"] = total
    out["pass"] = ok
    return out


# -- dimensions ---------------------------------------------------------------------


def dirac_dimension(r: int) -> int:
    if r < 1:
        raise ValueError("the Weyl-system count is stated for r >= 1")
    num = 2 * (((r + 1) * (r + 2) * (r + 3)) ** 2
               + ((r + 1) ** 2 - 1) * ((r + 2) ** 2 - 1) * ((r + 3) ** 2 - 1))
    assert num % 9 == 0
    return num // 9


_S_VARIANTS = [(), ("gamma5",)]


def dirac_generators(r: int, ckvs=None, pis=None) -> Iterable[DiracCharacteristic]:
    """The generator table of order <= r, each with its gamma5 / conjugate /
    i-multiple companions, in a fixed order."""
    ckvs = ckvs if ckvs is not None else conformal_killing_basis()
    ctx = _context(r + 1)

    def companions(Q, with_i=True):
        for conj in (False, True):
            base = Q.conjugate() if conj else Q
            for g5 in (False, True):
                b = base.gamma5() if g5 else base
                yield b
                if with_i:
                    yield b.times_i()

    S = build_dirac_symmetry("S")
    yield from companions(S)
    level = [build_dirac_symmetry("Z", x) for x in ckvs]
    for p in range(r):
        for z in level:
            yield from companions(z)
        if p + 1 < r:
            level = [dirac_lie_derive(z, zeta, ctx) for z in level for zeta in ckvs]
    if r >= 1:
        pis = pis if pis is not None else solve_killing(0, 2).elements
        # pi ranges over a complex space, so i * pi enters alongside pi
        level = []
        for pi in pis:
            level.append(build_dirac_symmetry("W", pi))
            level.append(build_dirac_symmetry("W", pi.scale(I)))
        for q in range(r):
            for w in level:
                yield from companions(w, with_i=False)
            if q + 1 < r:
                level = [dirac_lie_derive(w, zeta, ctx) for w in level for zeta in ckvs]


def dirac_constructive_rank(r: int = 1, **kw) -> dict:
    index: dict = {}
    vecs = []
    for Q in dirac_generators(r, **kw):
        if Q.order > r:
            raise CapacityError(f"generator of order {Q.order} exceeds r={r}")
        row = characteristic_vector(Characteristic(1, Q.psi + Q.phi), index)
        vecs.append(row)
    rank = real_rank(vecs)
    return {"r": r, "generators": len(vecs), "columns": len(index), "rank": rank,
            "expected": dirac_dimension(r), "pass": rank == dirac_dimension(r),
            "spin_half_multiple": 4 * dimension_d_r(1, r)}

