"""Frozen sign and normalisation conventions.

Every constant a computed identity depends on lives here, and
``convention_hash`` fingerprints them for the Killing-basis cache.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .field import ONE, ZERO, FieldElement

# spinor metric: eps_{01} = +1 and eps^{01} = +1
#   lowering  l_B = l^A eps_{AB};  raising  l^A = eps^{AB} l_B
EPS_LOWER = ((0, 1), (-1, 0))
EPS_UPPER = ((0, 1), (-1, 0))

ETA = (1, -1, -1, -1)

# Levi-Civita orientation eps_{0123}
ORIENTATION = 1

# Hodge star: (*F)_{ij} = HODGE_SIGN * 1/2 eps_{ijkl} F^{kl}.  Pinned so that
# F^- = (F - i *F)/2 has spinor form eps_{KL} conj(phi)_{K'L'}; the test
# suite re-derives it from both candidate signs.
HODGE_SIGN = 1

# Gamma matrices are built from sqrt(2) * sigma blocks so that the Clifford
# relations read g^i g^j + g^j g^i = 2 eta^{ij} with sigma normalised by 1/sqrt 2.
GAMMA_SCALE = FieldElement(0, 0, 1)

# Sign relating the displayed leading terms (-1)^{p+1} xi...phi and
# (-1)^q zeta...pi phibar to the constructed characteristics; fixed at p = q = 0.
LEADING_SIGN_CONFORMAL = 1
LEADING_SIGN_CHIRAL = 1

_H = FieldElement(0, 0, 1, 0, 2)  # 1/sqrt(2)


def _sigma():
    """sigma^i_{AA'} = (1/sqrt 2) (identity, Pauli x, y, z)."""
    zero = ZERO
    i_ = FieldElement(0, 1)
    mats = [
        ((ONE, zero), (zero, ONE)),
        ((zero, ONE), (ONE, zero)),
        ((zero, -i_), (i_, zero)),
        ((ONE, zero), (zero, -ONE)),
    ]
    return tuple(tuple(tuple(_H * x for x in row) for row in m) for m in mats)


SIGMA = _sigma()  # SIGMA[i][A][A'] = sigma^i_{AA'}


def _sigma_up():
    """SIGMA_UP[i][A][A'] = sigma_i^{AA'} = eta_{ij} eps^{AB} eps^{A'B'} sigma^j_{BB'}."""
    out = []
    for i in range(4):
        m = []
        for a in range(2):
            row = []
            for ap in range(2):
                s = ZERO
                for b in range(2):
                    for bp in range(2):
                        e = EPS_UPPER[a][b] * EPS_UPPER[ap][bp]
                        if e:
                            s = s + SIGMA[i][b][bp] * e
                row.append(s * ETA[i])
            m.append(tuple(row))
        out.append(tuple(m))
    return tuple(out)


SIGMA_UP = _sigma_up()


def convention_hash() -> str:
    payload = {
        "eps_lower": EPS_LOWER, "eps_upper": EPS_UPPER, "eta": ETA,
        "orientation": ORIENTATION, "hodge": HODGE_SIGN,
        "sigma": [[[str(x) for x in row] for row in m] for m in SIGMA],
        "leading": [LEADING_SIGN_CONFORMAL, LEADING_SIGN_CHIRAL],
        "gamma_scale": str(GAMMA_SCALE),
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def binomial(n: int, k: int) -> int:
    from math import comb
    return comb(n, k) if 0 <= k <= n else 0


HALF = Fraction(1, 2)
