"""Acceptance criteria, one test each, with wall-clock limits.

Each test records one ``ACn PASS|FAIL`` line; the block of lines is printed
at the end of the pytest run.  ``python tests/test_acceptance.py`` runs only
this file.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction

import pytest

from spinsym import dirac as dc
from spinsym import maxwell as mx
from spinsym import symmetries as sy
from spinsym.field import I
from spinsym.jets import commutation_check
from spinsym.killing import conformal_killing_basis, killing_dimension, killing_residual, solve_killing
from spinsym.poly import CONJ_JET, Polynomial, spinor_coord

CKVS = conformal_killing_basis()
RESULTS: list[str] = []  # printed by the terminal-summary hook in conftest


def _report(tag: str, ok: bool, elapsed: float, limit: float | None, detail: str = ""):
    within = limit is None or elapsed <= limit
    status = "PASS" if ok and within else "FAIL"
    budget = f" (limit {limit:.0f}s)" if limit else ""
    RESULTS.append(f"{tag:<5} {status}  {elapsed:8.2f}s{budget}  {detail}".rstrip())
    assert ok, detail
    assert within, f"{tag} took {elapsed:.1f}s, over the {limit:.0f}s limit"


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_ac01_killing_dimensions():
    cases = {(0, 0): 1, (1, 1): 15, (2, 2): 84, (0, 2): 10, (0, 4): 35, (0, 6): 84, (1, 3): 70}
    worst, bad = 0.0, []
    with _Timer() as t:
        for (k, l), want in cases.items():
            t0 = time.perf_counter()
            dim = solve_killing(k, l).dimension
            worst = max(worst, time.perf_counter() - t0)
            if not dim == want == killing_dimension(k, l):
                bad.append(f"({k},{l})={dim}")
    _report("AC1", not bad and worst < 60, t.elapsed, None,
            f"7 types, slowest solve {worst:.2f}s" + (f"; wrong {bad}" if bad else ""))


def test_ac02_conformal():
    n = fails = 0
    with _Timer() as t:
        for two_s in (1, 2, 3, 4):
            for xi in CKVS:
                for dual in (False, True):
                    n += 1
                    fails += not sy.verify_symmetry(sy.build_conformal(xi, two_s, dual=dual))["pass"]
    _report("AC2", fails == 0, t.elapsed, 300, f"{n - fails}/{n} Z[xi], Z[i xi] at 2s=1..4")


def test_ac03_chiral():
    counts = {}
    with _Timer() as t:
        for two_s in (1, 2, 3):
            pis = solve_killing(0, 2 * two_s).elements
            ok = sum(sy.verify_symmetry(sy.build_chiral(pi, two_s))["pass"] for pi in pis)
            counts[two_s] = (ok, len(pis))
    good = counts == {1: (10, 10), 2: (35, 35), 3: (84, 84)}
    _report("AC3", good, t.elapsed, 1200,
            ", ".join(f"2s={k}: {a}/{b}" for k, (a, b) in counts.items()))


def test_ac04_pi_recursion():
    n = fails = 0
    with _Timer() as t:
        for two_s in (1, 2):
            for pi in solve_killing(0, 2 * two_s):
                n += 1
                fails += not sy.pi_recursion_check(pi, two_s)["pass"]
    _report("AC4", fails == 0, t.elapsed, None, f"{n - fails}/{n} spinors at 2s=1,2")


def test_ac05_lie_tower():
    rng = random.Random(2024)
    n = fails = 0
    with _Timer() as t:
        for two_s in (1, 2):
            pis = solve_killing(0, 2 * two_s).elements
            for k in range(12):
                zeta = rng.choice(CKVS)
                base = sy.build_conformal(rng.choice(CKVS), two_s) if k % 2 == 0 \
                    else sy.build_chiral(rng.choice(pis), two_s)
                q = sy.lie_derive(base, zeta)
                n += 1
                fails += not (sy.verify_symmetry(q)["pass"] and q.order == base.order + 1)
    _report("AC5", fails == 0, t.elapsed, None, f"{n - fails}/{n} sampled (base, zeta) pairs")


def test_ac06_leading_symbols():
    rng = random.Random(6)
    n = fails = 0
    with _Timer() as t:
        for two_s in (1, 2):
            pis = solve_killing(0, 2 * two_s).elements
            for xi in CKVS:
                z = sy.build_conformal(xi, two_s)
                n += 1
                fails += sy.leading_symbol(z) != sy.leading_closed_form("conformal", two_s, xi)
            for pi in pis:
                n += 1
                fails += sy.leading_symbol(sy.build_chiral(pi, two_s)) != \
                    sy.leading_closed_form("chiral", two_s, pi)
            for _ in range(4):
                xi, zeta, pi = rng.choice(CKVS), rng.choice(CKVS), rng.choice(pis[3:])
                z1 = sy.lie_derive(sy.build_conformal(xi, two_s), zeta)
                w1 = sy.lie_derive(sy.build_chiral(pi, two_s), zeta)
                n += 2
                fails += sy.leading_symbol(z1) != sy.leading_closed_form("conformal", two_s, xi, [zeta])
                fails += sy.leading_symbol(w1) != sy.leading_closed_form("chiral", two_s, pi, [zeta])
    _report("AC6", fails == 0, t.elapsed, None, f"{n - fails}/{n} symbols, p,q in {{0,1}}, 2s=1,2")


def test_ac07_dimensions():
    formula = [sy.dimension_d_r(2, r) for r in range(4)] + [sy.dimension_d_r(1, r) for r in range(2)]
    ranks = {}
    slow = 0.0
    with _Timer() as t:
        for (two_s, r), want in {(1, 0): 2, (1, 1): 52, (2, 0): 2, (2, 1): 32, (2, 2): 270}.items():
            t0 = time.perf_counter()
            ranks[(two_s, r)] = (sy.constructive_rank(two_s, r)["rank"], want)
            if (two_s, r) == (2, 2):
                slow = time.perf_counter() - t0
    ok = formula == [2, 32, 270, 1248, 2, 52] and all(a == b for a, b in ranks.values()) and slow < 1800
    _report("AC7", ok, t.elapsed, None,
            "ranks " + ", ".join(f"({Fraction(s, 2)},{r})={a}" for (s, r), (a, _) in ranks.items())
            + f"; (1,2) in {slow:.1f}s")


def test_ac08_cross_identities():
    with _Timer() as t:
        mx_ok = all(mx.maxwell_dimension(r) == sy.dimension_d_r(2, r) for r in range(2, 7))
        dc_ok = all(dc.dirac_dimension(r) == 4 * sy.dimension_d_r(1, r) for r in range(1, 7))
        anchors = (mx.maxwell_dimension(2), mx.maxwell_dimension(3), dc.dirac_dimension(1))
    _report("AC8", mx_ok and dc_ok and anchors == (270, 1248, 208), t.elapsed, None,
            f"maxwell r=2,3 -> {anchors[0]}, {anchors[1]}; dirac r=1 -> {anchors[2]}")


@pytest.mark.slow
def test_ac09_maxwell_chiral():
    rng = random.Random(909)
    D = mx.MaxwellDictionary(4)
    bad = []
    with _Timer() as t:
        for h in range(5):
            for s in range(3):
                a = mx.random_admissible(h, rng)
                p = mx.build_p(h, a)
                W = mx.maxwell_chiral(p)
                Wd = mx.maxwell_chiral(p, dual=True)
                # (a) D^j W_ij = D^j *W_ij = 0 via the spinor dictionary
                if any(D.determining_residuals(W).values()):
                    bad.append(f"h={h}#{s} determining")
                # (b) *W[F] = -W[*F] on solutions
                hw, wd = D.translate_tensor(mx.hodge_dual(W)), D.translate_tensor(Wd)
                if any(hw[i][j] != -wd[i][j] for i in range(4) for j in range(4)):
                    bad.append(f"h={h}#{s} parity")
                # (c) projection = closed form, and Killing
                pi = mx.spinor_projection(p)
                if pi.comps != mx.pi_closed_form(h, mx.alpha_from_a(h, a)).comps:
                    bad.append(f"h={h}#{s} closed form")
                if any(killing_residual(0, 4, pi.comps).values()):
                    bad.append(f"h={h}#{s} Killing")
        # (d) complex span of all projections
        rank = mx.pi_family_rank()
        if rank != 35:
            bad.append(f"rank {rank}")
    _report("AC9", not bad, t.elapsed, 900, f"15 coefficient sets, pi-family rank {rank}" +
            (f"; failures {bad}" if bad else ""))


def test_ac10_convention_anchors():
    D = mx.MaxwellDictionary(1)
    with _Timer() as t:
        fminus = all({v.kind for v in D.translate(mx.F_jet(i, j) - mx.dual_F_jet(i, j).scale(I)).variables()}
                     == {CONJ_JET} for i in range(4) for j in range(i + 1, 4))
        clifford = dc.clifford_defects() == []
        comm = {(two_s, p): commutation_check(two_s, p)["pass"] for two_s in (1, 2) for p in (1, 2)}
    _report("AC10", fminus and clifford and all(comm.values()), t.elapsed, None,
            f"F- identity {fminus}, Clifford {clifford}, commutation {sum(comm.values())}/4")


def test_ac11_negative_controls():
    with _Timer() as t:
        pis = solve_killing(0, 4).elements
        c21 = sum(not sy.verify_symmetry(sy.build_chiral(pi, 2, coefficients={1: Fraction(1)}))["pass"]
                  for pi in pis)
        half = solve_killing(0, 2).elements
        c23 = sum(not dc.verify_dirac(dc.build_dirac_symmetry("W", pi, coefficients={1: Fraction(1)}))["pass"]
                  for pi in half)
        rng = random.Random(11)
        y = [Polynomial.var(spinor_coord(a, b)) for a in range(2) for b in range(2)]
        rejected = 0
        trials = 5
        for _ in range(trials):
            comps = [sum((v.scale(rng.randint(-3, 3)) for v in y), Polynomial()) * y[2] for _ in range(3)]
            try:
                sy.build_elementary(comps)
            except sy.NotASolution:
                rejected += 1
    # constant spinors have no derivative term, so they are immune to the corruption
    ok = c21 == 30 and c23 == 7 and rejected == trials
    _report("AC11", ok, t.elapsed, None,
            f"c21 corrupt fails {c21}/35, Dirac 2/3 corrupt fails {c23}/10, non-solutions rejected {rejected}/{trials}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
