"""Symbolic coefficients over the exact scalars.

Two rings live here:

* SymScalar, a commutative multivariate Laurent polynomial with CycScalar
  coefficients.  It carries named indeterminates (connection entries,
  matrix entries, the deformation parameter "eps", coordinates "x1"...),
  supports formal partial derivatives, and inverts single-term elements,
  which is all the diagonal-gauge constructions need.

* JetPoly, a noncommutative polynomial in jet symbols A_j and their
  commuting partial derivatives, used for gauge-field coefficients of
  differential forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .scalars import CycScalar, Mode

# a monomial is a sorted tuple of (name, exponent) pairs with exponent != 0
Monomial = tuple[tuple[str, int], ...]

EPS = "eps"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged = dict(a)
    for name, e in b:
        e2 = merged.get(name, 0) + e
        if e2:
            merged[name] = e2
        else:
            del merged[name]
    return tuple(sorted(merged.items()))


class SymScalar:
    """Sparse Laurent polynomial in named variables over CycScalar."""

    __slots__ = ("mode", "terms")

    def __init__(self, mode: Mode, terms: dict[Monomial, CycScalar] | None = None):
        pruned = {m: c for m, c in (terms or {}).items() if c}
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", pruned)

    def __setattr__(self, *a):
        raise AttributeError("SymScalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, mode: Mode) -> "SymScalar":
        return cls(mode, {})

    @classmethod
    def one(cls, mode: Mode) -> "SymScalar":
        return cls(mode, {(): CycScalar.one(mode)})

    @classmethod
    def constant(cls, value) -> "SymScalar":
        if isinstance(value, SymScalar):
            return value
        if not isinstance(value, CycScalar):
            raise TypeError("constant expects a CycScalar")
        return cls(value.mode, {(): value})

    @classmethod
    def variable(cls, name: str, mode: Mode) -> "SymScalar":
        return cls(mode, {((name, 1),): CycScalar.one(mode)})

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SymScalar):
            if other.mode != self.mode:
                raise ValueError("mode mismatch between symbolic scalars")
            return other
        if isinstance(other, CycScalar):
            return SymScalar(self.mode, {(): other})
        if isinstance(other, (int, Fraction)):
            return SymScalar(self.mode, {(): CycScalar.rational(other, self.mode)})
        return None

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return SymScalar(self.mode, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return SymScalar(self.mode, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Monomial, CycScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return SymScalar(self.mode, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = SymScalar.one(self.mode)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "SymScalar":
        """Inverse of a single-term element (Laurent monomial)."""
        if len(self.terms) != 1:
            raise ArithmeticError("only single-term symbolic scalars invert")
        (mono, coeff), = self.terms.items()
        inv_mono = tuple((name, -e) for name, e in mono)
        return SymScalar(self.mode, {inv_mono: coeff.inverse()})

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    # -- calculus ------------------------------------------------------------

    def derivative(self, name: str) -> "SymScalar":
        out: dict[Monomial, CycScalar] = {}
        for mono, c in self.terms.items():
            for i, (vname, e) in enumerate(mono):
                if vname != name:
                    continue
                rest = mono[:i] + mono[i + 1:]
                new = rest if e == 1 else _mono_mul(rest, ((name, e - 1),))
                dc = c * e
                s = out.get(new)
                out[new] = dc if s is None else s + dc
                break
        return SymScalar(self.mode, out)

    def partial(self, i: int) -> "SymScalar":
        """Derivative with respect to the coordinate variable x<i>."""
        return self.derivative(f"x{i}")

    # -- structure -----------------------------------------------------------

    def degree_in(self, name: str) -> int:
        """Largest exponent of the variable; -1 on the zero element."""
        if not self.terms:
            return -1
        best = 0
        for mono in self.terms:
            for vname, e in mono:
                if vname == name and e > best:
                    best = e
        return best

    def lowest_order_in(self, name: str) -> int | None:
        """Smallest exponent of the variable occurring in any term."""
        if not self.terms:
            return None
        orders = []
        for mono in self.terms:
            e = 0
            for vname, ex in mono:
                if vname == name:
                    e = ex
            orders.append(e)
        return min(orders)

    def coefficient_of(self, name: str, power: int) -> "SymScalar":
        """Collect terms with the exact given power of the variable, with
        that variable divided out."""
        out = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for vname, ex in mono:
                if vname == name:
                    e = ex
                else:
                    rest.append((vname, ex))
            if e == power:
                out[tuple(rest)] = c
        return SymScalar(self.mode, out)

    def constant_scalar(self) -> CycScalar:
        """The value as a CycScalar; error if any variable occurs."""
        if not self.terms:
            return CycScalar.zero(self.mode)
        if set(self.terms) != {()}:
            raise ValueError("symbolic scalar is not constant")
        return self.terms[()]

    def variables(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    # -- comparisons ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    # -- text ----------------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            cs = self.terms[mono].render()
            factors = []
            if cs != "1" or not mono:
                factors.append("(" + cs + ")" if " " in cs and mono else cs)
            for name, e in mono:
                factors.append(name if e == 1 else f"{name}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"<sym {self.render()}>"


def eps_variable(mode: Mode) -> SymScalar:
    """The deformation parameter as an exact indeterminate."""
    return SymScalar.variable(EPS, mode)


def eps_coefficients(s: SymScalar, upto: int | None = None) -> list[SymScalar]:
    """Coefficients of successive powers of the deformation parameter."""
    top = s.degree_in(EPS) if upto is None else upto
    return [s.coefficient_of(EPS, k) for k in range(top + 1)]


# ---------------------------------------------------------------------------
# noncommutative jet algebra
# ---------------------------------------------------------------------------

# a jet symbol is (field index, sorted tuple of derivative directions)
JetSymbol = tuple[int, tuple[int, ...]]
Word = tuple[JetSymbol, ...]


class JetPoly:
    """Noncommutative polynomial in gauge-field jet symbols.

    Generators are the components A_j together with all their formal
    partial derivatives; derivative multi-indices are kept sorted because
    partials commute.  Multiplication concatenates words.
    """

    __slots__ = ("mode", "terms")

    def __init__(self, mode: Mode, terms: dict[Word, CycScalar] | None = None):
        pruned = {w: c for w, c in (terms or {}).items() if c}
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "terms", pruned)

    def __setattr__(self, *a):
        raise AttributeError("JetPoly is immutable")

    @classmethod
    def zero(cls, mode: Mode) -> "JetPoly":
        return cls(mode, {})

    @classmethod
    def one(cls, mode: Mode) -> "JetPoly":
        return cls(mode, {(): CycScalar.one(mode)})

    @classmethod
    def generator(cls, field: int, mode: Mode) -> "JetPoly":
        return cls(mode, {((field, ()),): CycScalar.one(mode)})

    def _coerce(self, other):
        if isinstance(other, JetPoly):
            if other.mode != self.mode:
                raise ValueError("mode mismatch between jet polynomials")
            return other
        if isinstance(other, CycScalar):
            return JetPoly(self.mode, {(): other})
        if isinstance(other, (int, Fraction)):
            return JetPoly(self.mode, {(): CycScalar.rational(other, self.mode)})
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            s = out.get(w)
            out[w] = c if s is None else s + c
        return JetPoly(self.mode, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return JetPoly(self.mode, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[Word, CycScalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = out.get(w)
                out[w] = c if s is None else s + c
        return JetPoly(self.mode, out)

    def __rmul__(self, other):
        # only scalars land here, and scalars commute with jet words
        if isinstance(other, (CycScalar, int, Fraction)):
            return self * other
        return NotImplemented

    def partial(self, i: int) -> "JetPoly":
        """Formal derivative: Leibniz over words, index appended (sorted)."""
        out: dict[Word, CycScalar] = {}
        for word, c in self.terms.items():
            for t, (field, derivs) in enumerate(word):
                new_sym = (field, tuple(sorted(derivs + (i,))))
                w = word[:t] + (new_sym,) + word[t + 1:]
                s = out.get(w)
                out[w] = c if s is None else s + c
        return JetPoly(self.mode, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms):
            c = self.terms[word]
            cs = c.render()
            factors = []
            if cs != "1" or not word:
                factors.append("(" + cs + ")" if " " in cs else cs)
            for field, derivs in word:
                name = f"A{field}"
                if derivs:
                    name += "_" + "".join(str(d) for d in derivs)
                factors.append(name)
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"<jet {self.render()}>"
