"""Arrays of polynomials carrying two-component spinor indices.

Slots are kept in canonical order: all unprimed slots first, then primed,
each group in the order the slots were created.  A component is addressed
by a bit tuple over the slots (slot 0 is the most significant bit of the
flat index).  Variance (upper/lower) is tracked per slot.
"""
from __future__ import annotations

from itertools import product
from math import comb
from typing import Callable, Sequence

from .conventions import EPS_LOWER, EPS_UPPER
from .field import as_field
from .poly import Polynomial

__all__ = ["Slot", "SpinorArray", "ContractError", "epsilon", "delta", "from_symmetric"]

UNPRIMED, PRIMED = False, True
LOWER, UPPER = False, True


class ContractError(ValueError):
    """An index operation was applied to slots of the wrong type."""


class Slot(tuple):
    """(primed, upper)."""

    def __new__(cls, primed: bool, upper: bool):
        return super().__new__(cls, (bool(primed), bool(upper)))

    @property
    def primed(self) -> bool:
        return self[0]

    @property
    def upper(self) -> bool:
        return self[1]

    def __repr__(self):
        return ("'" if self.primed else "") + ("^" if self.upper else "_")


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.const(x)


class SpinorArray:
    __slots__ = ("slots", "entries")

    def __init__(self, slots: Sequence, entries: Sequence | None = None):
        slots = [s if isinstance(s, Slot) else Slot(*s) for s in slots]
        order = [i for i, s in enumerate(slots) if not s.primed] + \
                [i for i, s in enumerate(slots) if s.primed]
        n = len(slots)
        if entries is None:
            entries = [Polynomial()] * (1 << n)
        if len(entries) != 1 << n:
            raise ValueError("entry count does not match slot count")
        entries = [_as_poly(e) for e in entries]
        if order != list(range(n)):
            entries = _permute(entries, n, order)
            slots = [slots[i] for i in order]
        self.slots = tuple(slots)
        self.entries = tuple(entries)

    # -- construction -----------------------------------------------------
    @classmethod
    def from_function(cls, slots: Sequence, f: Callable[[tuple], object]) -> "SpinorArray":
        """Entries from ``f(bits)``; ``slots`` must already be canonical."""
        slots = [s if isinstance(s, Slot) else Slot(*s) for s in slots]
        n = len(slots)
        return cls(slots, [f(bits) for bits in product((0, 1), repeat=n)])

    @classmethod
    def scalar(cls, value) -> "SpinorArray":
        return cls([], [value])

    # -- shape ------------------------------------------------------------
    @property
    def rank(self) -> tuple[int, int]:
        m = sum(1 for s in self.slots if not s.primed)
        return m, len(self.slots) - m

    def __getitem__(self, bits) -> Polynomial:
        return self.entries[_flat(bits)]

    def component(self, bits) -> Polynomial:
        return self[bits]

    def __eq__(self, other):
        return isinstance(other, SpinorArray) and self.slots == other.slots and \
            self.entries == other.entries

    def __repr__(self):
        return f"SpinorArray(slots={list(self.slots)}, nonzero={sum(1 for e in self.entries if e)})"

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    # -- linear structure -------------------------------------------------
    def __add__(self, other):
        _same_shape(self, other)
        return SpinorArray(self.slots, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        _same_shape(self, other)
        return SpinorArray(self.slots, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return SpinorArray(self.slots, [-a for a in self.entries])

    def scale(self, c) -> "SpinorArray":
        if isinstance(c, Polynomial):
            return SpinorArray(self.slots, [e * c for e in self.entries])
        c = as_field(c)
        return SpinorArray(self.slots, [e.scale(c) for e in self.entries])

    def map(self, f) -> "SpinorArray":
        return SpinorArray(self.slots, [f(e) for e in self.entries])

    # -- index operations -------------------------------------------------
    def outer(self, other: "SpinorArray") -> "SpinorArray":
        entries = []
        for a in self.entries:
            for b in other.entries:
                entries.append(a * b if a and b else Polynomial())
        return SpinorArray(list(self.slots) + list(other.slots), entries)

    def contract(self, slot_up: int, slot_down: int) -> "SpinorArray":
        """Sum over one upper and one lower slot of equal primedness."""
        s1, s2 = self.slots[slot_up], self.slots[slot_down]
        if s1.primed != s2.primed:
            raise ContractError("cannot contract primed with unprimed slot")
        if s1.upper == s2.upper:
            raise ContractError("contraction needs one upper and one lower slot")
        n = len(self.slots)
        keep = [i for i in range(n) if i not in (slot_up, slot_down)]
        out = []
        for bits in product((0, 1), repeat=len(keep)):
            full = [0] * n
            for i, b in zip(keep, bits):
                full[i] = b
            acc = Polynomial()
            for v in (0, 1):
                full[slot_up] = v
                full[slot_down] = v
                e = self.entries[_flat(full)]
                if e:
                    acc = acc + e
            out.append(acc)
        return SpinorArray([self.slots[i] for i in keep], out)

    def eps_move(self, slot: int, direction: str) -> "SpinorArray":
        """Raise or lower one slot with the spinor metric."""
        s = self.slots[slot]
        if direction == "lower":
            if not s.upper:
                raise ContractError("slot is already lower")
            table, new = EPS_LOWER, Slot(s.primed, LOWER)
        elif direction == "raise":
            if s.upper:
                raise ContractError("slot is already upper")
            table, new = EPS_UPPER, Slot(s.primed, UPPER)
        else:
            raise ValueError(direction)
        n = len(self.slots)
        out = []
        for bits in product((0, 1), repeat=n):
            acc = Polynomial()
            b = bits[slot]
            for a in (0, 1):
                # lower: l_b = l^a eps_{ab};  raise: l^b = eps^{ba} l_a
                coeff = table[a][b] if direction == "lower" else table[b][a]
                if coeff:
                    src = list(bits)
                    src[slot] = a
                    e = self.entries[_flat(src)]
                    if e:
                        acc = acc + (e if coeff == 1 else -e)
            out.append(acc)
        slots = list(self.slots)
        slots[slot] = new
        return SpinorArray(slots, out)

    def group(self, which: str) -> list[int]:
        if which == "unprimed":
            return [i for i, s in enumerate(self.slots) if not s.primed]
        if which == "primed":
            return [i for i, s in enumerate(self.slots) if s.primed]
        if which == "both":
            return list(range(len(self.slots)))
        raise ValueError(which)

    def symmetrize(self, group: str = "both", slots: Sequence[int] | None = None) -> "SpinorArray":
        """Average over permutations within the unprimed and/or primed slots.

        With ``group="both"`` the two groups are symmetrized separately.
        ``slots`` restricts symmetrization to an explicit slot subset.
        """
        if slots is not None:
            groups = [list(slots)]
        elif group == "both":
            groups = [self.group("unprimed"), self.group("primed")]
        else:
            groups = [self.group(group)]
        arr = self
        for g in groups:
            if len(g) > 1:
                arr = arr._sym_one(g)
        return arr

    def _sym_one(self, g: list[int]) -> "SpinorArray":
        kinds = {self.slots[i] for i in g}
        if len(kinds) != 1:
            raise ContractError("symmetrized slots must share primedness and variance")
        n = len(self.slots)
        gs = len(g)
        cache: dict = {}
        out = []
        for bits in product((0, 1), repeat=n):
            ones = sum(bits[i] for i in g)
            rest = tuple(b for i, b in enumerate(bits) if i not in g)
            key = (rest, ones)
            val = cache.get(key)
            if val is None:
                acc = Polynomial()
                for sub in product((0, 1), repeat=gs):
                    if sum(sub) != ones:
                        continue
                    full = list(bits)
                    for i, b in zip(g, sub):
                        full[i] = b
                    e = self.entries[_flat(full)]
                    if e:
                        acc = acc + e
                val = acc.scale(as_field(1) / comb(gs, ones))
                cache[key] = val
            out.append(val)
        return SpinorArray(self.slots, out)

    def conjugate(self) -> "SpinorArray":
        """Complex conjugate: primed and unprimed slots swap, entries conjugated."""
        slots = [Slot(not s.primed, s.upper) for s in self.slots]
        return SpinorArray(slots, [e.conj() for e in self.entries])

    # -- symmetric storage --------------------------------------------------
    def is_symmetric(self) -> bool:
        return self.symmetrize("both") == self

    def to_symmetric(self) -> dict:
        """{(j, k): entry} with j, k the counts of ones among unprimed/primed slots."""
        if not self.is_symmetric():
            raise ContractError("array is not symmetric in its unprimed and primed slots")
        m, mp = self.rank
        out = {}
        for j in range(m + 1):
            for k in range(mp + 1):
                bits = (1,) * j + (0,) * (m - j) + (1,) * k + (0,) * (mp - k)
                out[(j, k)] = self[bits]
        return out


def from_symmetric(m: int, mp: int, comps, upper_unprimed: bool = False,
                   upper_primed: bool = False) -> SpinorArray:
    """Dense array from symmetric storage ``comps[(j, k)]`` (or ``comps(j, k)``)."""
    get = comps if callable(comps) else (lambda j, k: comps.get((j, k), Polynomial()))
    slots = [Slot(UNPRIMED, upper_unprimed)] * m + [Slot(PRIMED, upper_primed)] * mp
    return SpinorArray.from_function(slots, lambda bits: get(sum(bits[:m]), sum(bits[m:])))


def epsilon(primed: bool = False, upper: bool = False) -> SpinorArray:
    table = EPS_UPPER if upper else EPS_LOWER
    s = Slot(primed, upper)
    return SpinorArray.from_function([s, s], lambda b: table[b[0]][b[1]])


def delta(primed: bool = False) -> SpinorArray:
    """Kronecker delta with an upper then a lower slot."""
    return SpinorArray.from_function([Slot(primed, UPPER), Slot(primed, LOWER)],
                                     lambda b: 1 if b[0] == b[1] else 0)


def _flat(bits) -> int:
    idx = 0
    for b in bits:
        idx = (idx << 1) | b
    return idx


def _permute(entries, n, order):
    """Reorder slots: new slot i is old slot order[i]."""
    out = [None] * (1 << n)
    for bits in product((0, 1), repeat=n):
        new_bits = [bits[o] for o in order]
        out[_flat(new_bits)] = entries[_flat(bits)]
    return out


def _same_shape(a: SpinorArray, b: SpinorArray):
    if a.slots != b.slots:
        raise ContractError(f"slot mismatch {a.slots} vs {b.slots}")
