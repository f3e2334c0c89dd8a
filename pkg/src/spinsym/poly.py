"""Sparse multivariate polynomials over Q(i, sqrt 2).

Variables are interned; their total order is the tuple ``Variable.key``:

    (kind, field tag, derivative order, unprimed-ones, primed-ones, index, name)

with kinds ordered coordinate < spinor coordinate < jet < conjugate jet
< tensor jet < parameter.  A monomial is a tuple of ``(Variable, exponent)``
pairs sorted by that key, so the canonical form of a polynomial is unique.
"""
from __future__ import annotations

from typing import Callable, Iterable, Mapping

from .field import ZERO, FieldElement, as_field

__all__ = [
    "COORD", "SPINOR_COORD", "JET", "CONJ_JET", "TENSOR_JET", "PARAM",
    "Variable", "Polynomial", "coord", "spinor_coord", "jet", "conj_jet",
    "tensor_jet", "param",
]

COORD, SPINOR_COORD, JET, CONJ_JET, TENSOR_JET, PARAM = range(6)
_KIND_NAMES = ("coordinate", "spinor-coordinate", "jet", "conjugate-jet",
               "tensor-jet", "parameter")


class Variable:
    """An interned polynomial variable; construct through the helpers below."""

    __slots__ = ("kind", "field", "order", "j", "k", "index", "name", "key", "_hash", "_conj")
    _table: dict = {}

    def __new__(cls, kind, field="", order=0, j=0, k=0, index=(), name=""):
        key = (kind, field, order, j, k, tuple(index), name)
        v = cls._table.get(key)
        if v is not None:
            return v
        v = object.__new__(cls)
        v.kind, v.field, v.order, v.j, v.k = kind, field, order, j, k
        v.index, v.name, v.key = tuple(index), name, key
        v._hash = hash(key)
        v._conj = None
        cls._table[key] = v
        return v

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other

    def __lt__(self, other):
        return self.key < other.key

    def __reduce__(self):
        return (Variable, self.key)

    @property
    def kind_name(self) -> str:
        return _KIND_NAMES[self.kind]

    @property
    def is_jet(self) -> bool:
        return self.kind in (JET, CONJ_JET)

    def conj(self) -> "Variable":
        c = self._conj
        if c is None:
            if self.kind == SPINOR_COORD:
                a, ap = self.index
                c = spinor_coord(ap, a)
            elif self.kind == JET:
                c = Variable(CONJ_JET, self.field, self.order, self.j, self.k)
            elif self.kind == CONJ_JET:
                c = Variable(JET, self.field, self.order, self.j, self.k)
            else:
                c = self
            self._conj = c
        return c

    def __repr__(self):
        if self.kind == COORD:
            return f"x{self.index[0]}"
        if self.kind == SPINOR_COORD:
            return "y{}{}'".format(*self.index)
        if self.kind in (JET, CONJ_JET):
            bar = "~" if self.kind == CONJ_JET else ""
            return f"{bar}{self.field}[{self.order}][{self.j},{self.k}]"
        if self.kind == TENSOR_JET:
            i, j, *ks = self.index
            return f"{self.field}_{i}{j}" + ("," + "".join(map(str, ks)) if ks else "")
        return self.name


def coord(i: int) -> Variable:
    """Real Cartesian coordinate x^i, i = 0..3."""
    return Variable(COORD, index=(i,))


def spinor_coord(a: int, ap: int) -> Variable:
    """Hermitian spinor coordinate x^{AA'}."""
    return Variable(SPINOR_COORD, index=(a, ap))


def jet(field: str, order: int, j: int, k: int) -> Variable:
    return Variable(JET, field, order, j, k)


def conj_jet(field: str, order: int, j: int, k: int) -> Variable:
    return Variable(CONJ_JET, field, order, j, k)


def tensor_jet(field: str, i: int, j: int, ks: Iterable[int] = ()) -> Variable:
    return Variable(TENSOR_JET, field, index=(i, j, *sorted(ks)))


def param(name: str) -> Variable:
    return Variable(PARAM, name=name)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 is v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1.key < v2.key:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_from(pairs) -> tuple:
    acc: dict = {}
    for v, e in pairs:
        if e:
            acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: t[0].key))


class Polynomial:
    """Immutable sparse polynomial: ``terms`` maps monomial -> FieldElement."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None, _clean: bool = False):
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            self.terms = {m: as_field(c) for m, c in terms.items() if c}

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Polynomial":
        c = as_field(c)
        return cls({(): c}, _clean=True) if c else cls()

    @classmethod
    def var(cls, v: Variable, coeff=1) -> "Polynomial":
        c = as_field(coeff)
        return cls({((v, 1),): c}, _clean=True) if c else cls()

    @classmethod
    def monomial(cls, pairs, coeff=1) -> "Polynomial":
        c = as_field(coeff)
        return cls({_mono_from(pairs): c}, _clean=True) if c else cls()

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def degree(self, pred: Callable[[Variable], bool] | None = None) -> int:
        """Total degree, optionally counting only variables matching ``pred``."""
        if not self.terms:
            return -1
        if pred is None:
            return max(sum(e for _, e in m) for m in self.terms)
        return max(sum(e for v, e in m if pred(v)) for m in self.terms)

    def constant_term(self) -> FieldElement:
        return self.terms.get((), ZERO)

    def items(self):
        return self.terms.items()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for m, c in b.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s.is_zero():
                    del out[m]
                else:
                    out[m] = s
        return Polynomial(out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return Polynomial.const(other) - self

    def scale(self, c) -> "Polynomial":
        c = as_field(c)
        if c.is_zero():
            return Polynomial()
        if c.a == 1 and c.den == 1 and not (c.b or c.c or c.d):
            return self
        return Polynomial({m: v * c for m, v in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        if not self.terms or not other.terms:
            return Polynomial()
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                prev = out.get(m)
                out[m] = c if prev is None else prev + c
        return Polynomial({m: c for m, c in out.items() if not c.is_zero()}, _clean=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        out = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, FieldElement)) or hasattr(other, "numerator"):
            return self == Polynomial.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and maps --------------------------------------------------
    def partial(self, v: Variable) -> "Polynomial":
        """Formal partial derivative with respect to ``v``."""
        out: dict = {}
        for m, c in self.terms.items():
            for idx, (w, e) in enumerate(m):
                if w is v:
                    nm = m[:idx] + ((w, e - 1),) + m[idx + 1:] if e > 1 else m[:idx] + m[idx + 1:]
                    out[nm] = c * e
                    break
        return Polynomial(out, _clean=True)

    def substitute(self, mapping: Mapping[Variable, "Polynomial"]) -> "Polynomial":
        """Replace variables by polynomials (simultaneously)."""
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            p = cache.get(key)
            if p is None:
                p = mapping[v] ** e
                cache[key] = p
            return p

        out = Polynomial()
        acc: dict = {}
        for m, c in self.terms.items():
            keep = []
            factor = None
            for v, e in m:
                if v in mapping:
                    p = power(v, e)
                    factor = p if factor is None else factor * p
                else:
                    keep.append((v, e))
            if factor is None:
                mono = tuple(keep)
                prev = acc.get(mono)
                acc[mono] = c if prev is None else prev + c
            else:
                out = out + Polynomial({tuple(keep): c}, _clean=True) * factor
        rest = Polynomial({m: c for m, c in acc.items() if not c.is_zero()}, _clean=True)
        return out + rest

    def map_coefficients(self, f) -> "Polynomial":
        return Polynomial({m: f(c) for m, c in self.terms.items()})

    def conj(self) -> "Polynomial":
        """Complex conjugate: coefficients conjugated, variables mapped to conjugates."""
        out = {}
        for m, c in self.terms.items():
            nm = _mono_from((v.conj(), e) for v, e in m)
            out[nm] = c.conj()
        return Polynomial(out, _clean=True)

    def coefficient_in(self, pred: Callable[[Variable], bool]) -> dict:
        """Split by the sub-monomial of variables matching ``pred``.

        Returns ``{sub_monomial: Polynomial in the remaining variables}``.
        """
        out: dict = {}
        for m, c in self.terms.items():
            sel = tuple(t for t in m if pred(t[0]))
            rest = tuple(t for t in m if not pred(t[0]))
            out.setdefault(sel, {})[rest] = c
        return {k: Polynomial(v, _clean=True) for k, v in out.items()}

    def filter(self, pred: Callable[[tuple], bool]) -> "Polynomial":
        """Keep only the terms whose monomial satisfies ``pred``."""
        return Polynomial({m: c for m, c in self.terms.items() if pred(m)}, _clean=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        chunks = []
        for m, c in sorted(self.terms.items(), key=lambda t: [v.key + (e,) for v, e in t[0]]):
            mono = "*".join(f"{v!r}" + (f"^{e}" if e > 1 else "") for v, e in m)
            chunks.append(f"({c})" + ("*" + mono if mono else ""))
        return " + ".join(chunks)
