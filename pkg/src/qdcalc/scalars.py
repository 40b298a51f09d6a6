"""Exact scalars: rationals, polynomials in q, and cyclotomic residues.

A scalar lives either in Q[q] (generic mode) or in the quotient field
Q[q]/(Phi_N(q)) (root mode), where Phi_N is the N-th cyclotomic polynomial.
Root mode realizes q as an exact primitive N-th root of unity: q**N == 1
while q**m != 1 for 0 < m < N.  Reduction is always modulo Phi_N, never
modulo q**N - 1, so primitivity survives composite N.

Polynomials are stored as coefficient tuples indexed by the power of q,
with no trailing zeros.  Coefficients are Fractions, normalized to plain
ints whenever the denominator is 1 so the common integer paths stay fast.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Coeff = Union[int, Fraction]


class ModeError(ValueError):
    """Arithmetic between scalars of different modes."""


# ---------------------------------------------------------------------------
# coefficient-tuple helpers (internal)
# ---------------------------------------------------------------------------

def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _trim(cs) -> tuple:
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


def _padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = _norm(out[i] + c)
    return _trim(out)


def _pneg(a: tuple) -> tuple:
    return tuple(-c for c in a)


def _psub(a: tuple, b: tuple) -> tuple:
    return _padd(a, _pneg(b))


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] += ca * cb
    return _trim([_norm(c) for c in out])


def _pscale(a: tuple, c: Coeff) -> tuple:
    if not c:
        return ()
    return _trim([_norm(x * c) for x in a])


def _pdivmod(a: tuple, b: tuple) -> tuple[tuple, tuple]:
    """Euclidean division in Q[q]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    rem = list(a)
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 0)
    while len(rem) > db:
        rem = list(_trim(rem))
        if len(rem) <= db:
            break
        c = _norm(Fraction(rem[-1]) / lead) if lead != 1 else rem[-1]
        k = len(rem) - 1 - db
        quo[k] = c
        for i, cb in enumerate(b):
            rem[k + i] = _norm(rem[k + i] - c * cb)
        rem.pop()
    return _trim(quo), _trim(rem)


# ---------------------------------------------------------------------------
# public polynomial wrapper
# ---------------------------------------------------------------------------

class QPolynomial:
    """Polynomial in q over the rationals, canonical (no trailing zeros)."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients=()):
        self.coefficients = _trim([_norm(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
                                   for c in coefficients])

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self.coefficients == _trim([_norm(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __add__(self, other):
        return QPolynomial(_padd(self.coefficients, other.coefficients))

    def __sub__(self, other):
        return QPolynomial(_psub(self.coefficients, other.coefficients))

    def __neg__(self):
        return QPolynomial(_pneg(self.coefficients))

    def __mul__(self, other):
        return QPolynomial(_pmul(self.coefficients, other.coefficients))

    def __divmod__(self, other):
        q, r = _pdivmod(self.coefficients, other.coefficients)
        return QPolynomial(q), QPolynomial(r)

    def __repr__(self):
        return f"QPolynomial({list(self.coefficients)!r})"


@functools.cache
def _cyclotomic(n: int) -> tuple:
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if n == 1:
        return (-1, 1)
    num = tuple([-1] + [0] * (n - 1) + [1])  # q**n - 1
    den = (1,)
    for d in range(1, n):
        if n % d == 0:
            den = _pmul(den, _cyclotomic(d))
    quo, rem = _pdivmod(num, den)
    if rem:
        raise ArithmeticError("cyclotomic division left a remainder")
    return quo


def cyclotomic_polynomial(n: int) -> QPolynomial:
    """N-th cyclotomic polynomial Phi_N, monic with integer coefficients."""
    return QPolynomial(_cyclotomic(n))


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mode:
    """Where a scalar lives: Q[q] when n is None, Q[q]/(Phi_n) otherwise."""

    n: int | None = None

    @property
    def is_root(self) -> bool:
        return self.n is not None

    @property
    def modulus(self) -> tuple:
        if self.n is None:
            raise ModeError("generic mode has no modulus")
        return _cyclotomic(self.n)

    def __str__(self):
        return "generic" if self.n is None else f"root:{self.n}"


GENERIC = Mode(None)


@functools.cache
def root(n: int) -> Mode:
    if n < 2:
        raise ValueError("root-of-unity order must be >= 2")
    return Mode(n)


def parse_mode(text: str) -> Mode:
    if text == "generic":
        return GENERIC
    if text.startswith("root:"):
        return root(int(text[5:]))
    raise ValueError(f"unknown mode {text!r}")


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

class CycScalar:
    """Element of Q[q], or of Q[q]/(Phi_N) when its mode is a root mode.

    Immutable; all operations return fresh scalars.  Mixing modes raises
    ModeError.  ints and Fractions coerce to constants of the same mode.
    """

    __slots__ = ("mode", "coeffs")

    def __init__(self, mode: Mode, coeffs=(), reduce: bool = True):
        cs = _trim([_norm(c) for c in coeffs])
        if reduce and mode.is_root and len(cs) >= len(mode.modulus):
            _, cs = _pdivmod(cs, mode.modulus)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, *a):
        raise AttributeError("CycScalar is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, mode: Mode) -> "CycScalar":
        return cls(mode, (), reduce=False)

    @classmethod
    def one(cls, mode: Mode) -> "CycScalar":
        return cls(mode, (1,), reduce=False)

    @classmethod
    def q(cls, mode: Mode) -> "CycScalar":
        return cls(mode, (0, 1))

    @classmethod
    def rational(cls, value, mode: Mode) -> "CycScalar":
        return cls(mode, (_norm(Fraction(value)),), reduce=False)

    @classmethod
    def from_polynomial(cls, poly: QPolynomial, mode: Mode) -> "CycScalar":
        return cls(mode, poly.coefficients)

    # -- views ---------------------------------------------------------------

    @property
    def polynomial(self) -> QPolynomial:
        return QPolynomial(self.coeffs)

    def coefficient(self, k: int) -> Fraction:
        c = self.coeffs[k] if 0 <= k < len(self.coeffs) else 0
        return Fraction(c)

    def constant_value(self) -> Fraction:
        """The value as a rational; error if q actually occurs."""
        if len(self.coeffs) > 1:
            raise ValueError("scalar is not constant")
        return Fraction(self.coeffs[0]) if self.coeffs else Fraction(0)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycScalar):
            if other.mode != self.mode:
                raise ModeError(f"mode mismatch: {self.mode} vs {other.mode}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.rational(other, self.mode)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.mode, _padd(self.coeffs, o.coeffs), reduce=False)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.mode, _psub(self.coeffs, o.coeffs), reduce=False)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return CycScalar(self.mode, _pneg(self.coeffs), reduce=False)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycScalar(self.mode, _pmul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CycScalar.one(self.mode)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "CycScalar":
        """Multiplicative inverse modulo Phi_N, by the extended Euclidean
        algorithm.  Only root mode is a field; generic mode raises."""
        if not self.mode.is_root:
            raise ModeError("no inverses in generic mode")
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        r0, r1 = self.mode.modulus, self.coeffs
        s0, s1 = (), (1,)
        while r1:
            quo, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(quo, s1))
        if len(r0) != 1:
            raise ArithmeticError("nontrivial gcd against the cyclotomic modulus")
        inv = _pscale(s0, Fraction(1, 1) / r0[0])
        return CycScalar(self.mode, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- comparisons ---------------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, CycScalar):
            return self.mode == other.mode and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([_norm(other)])
        return NotImplemented

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    # -- text ----------------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, e.g. '1/2 - 2/3*q + q^2'."""
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(Fraction(c))
            if k == 0:
                body = _fmt_fraction(mag)
            else:
                qpart = "q" if k == 1 else f"q^{k}"
                body = qpart if mag == 1 else f"{_fmt_fraction(mag)}*{qpart}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"<{self.render()} ({self.mode})>"

    @classmethod
    def parse(cls, text: str, mode: Mode) -> "CycScalar":
        return _parse_scalar(text, mode)


def _fmt_fraction(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _parse_scalar(text: str, mode: Mode) -> CycScalar:
    """Parse the rendering produced by CycScalar.render (exact round trip)."""
    s = text.strip()
    if not s:
        raise ValueError("empty scalar")
    result = CycScalar.zero(mode)
    idx = 0
    sign = 1
    if s[idx] == "-":
        sign = -1
        idx += 1
    elif s[idx] == "+":
        idx += 1
    while True:
        while idx < len(s) and s[idx] == " ":
            idx += 1
        term, idx = _parse_scalar_term(s, idx, mode)
        result = result + (term if sign > 0 else -term)
        while idx < len(s) and s[idx] == " ":
            idx += 1
        if idx >= len(s):
            return result
        if s[idx] == "+":
            sign = 1
        elif s[idx] == "-":
            sign = -1
        else:
            raise ValueError(f"unexpected character {s[idx]!r} in scalar at {idx}")
        idx += 1


def _parse_scalar_term(s: str, idx: int, mode: Mode) -> tuple[CycScalar, int]:
    coeff = Fraction(1)
    have_coeff = False
    if idx < len(s) and s[idx].isdigit():
        num, idx = _parse_int(s, idx)
        if idx < len(s) and s[idx] == "/":
            den, idx = _parse_int(s, idx + 1)
            coeff = Fraction(num, den)
        else:
            coeff = Fraction(num)
        have_coeff = True
        if idx < len(s) and s[idx] == "*":
            idx += 1
        elif not (idx < len(s) and s[idx] == "q"):
            return CycScalar.rational(coeff, mode), idx
    if idx < len(s) and s[idx] == "q":
        idx += 1
        exp = 1
        if idx < len(s) and s[idx] == "^":
            idx += 1
            neg = False
            if idx < len(s) and s[idx] == "-":
                neg = True
                idx += 1
            exp, idx = _parse_int(s, idx)
            if neg:
                exp = -exp
        q = CycScalar.q(mode)
        return CycScalar.rational(coeff, mode) * q ** exp, idx
    if have_coeff:
        return CycScalar.rational(coeff, mode), idx
    raise ValueError(f"expected scalar term at position {idx} in {s!r}")


def _parse_int(s: str, idx: int) -> tuple[int, int]:
    start = idx
    while idx < len(s) and s[idx].isdigit():
        idx += 1
    if start == idx:
        raise ValueError(f"expected digits at position {start} in {s!r}")
    return int(s[start:idx]), idx


@functools.cache
def q_power(mode: Mode, e: int) -> CycScalar:
    """Cached power of q; hot in the matrix differentials."""
    if mode.is_root:
        e %= mode.n
    return CycScalar.q(mode) ** e


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

def q_integer(k: int, mode: Mode) -> CycScalar:
    """[k] = 1 + q + ... + q**(k-1); [0] = 0."""
    if k < 0:
        raise ValueError("q-integer index must be >= 0")
    return CycScalar(mode, (1,) * k)


def q_factorial(k: int, mode: Mode) -> CycScalar:
    """[k]! = [1][2]...[k]; empty product for k = 0."""
    if k < 0:
        raise ValueError("q-factorial index must be >= 0")
    out = CycScalar.one(mode)
    for i in range(1, k + 1):
        out = out * q_integer(i, mode)
    return out


@functools.cache
def _binomial_row(n: int, mode: Mode) -> tuple:
    if n == 0:
        return (CycScalar.one(mode),)
    prev = _binomial_row(n - 1, mode)
    q = CycScalar.q(mode)
    one = CycScalar.one(mode)
    row = [one]
    for j in range(1, n):
        row.append(q ** j * prev[j] + prev[j - 1])
    row.append(one)
    return tuple(row)


def q_binomial(n: int, k: int, mode: Mode) -> CycScalar:
    """Gaussian binomial via the Pascal-style recurrence; division free.

    Out-of-range k returns 0 rather than raising.
    """
    if n < 0:
        raise ValueError("q-binomial needs n >= 0")
    if k < 0 or k > n:
        return CycScalar.zero(mode)
    return _binomial_row(n, mode)[k]


def q_binomial_quotient(n: int, k: int, mode: Mode) -> CycScalar:
    """Gaussian binomial from the factorial quotient.

    Independent of the recurrence path: generic mode uses exact polynomial
    division in Q[q], root mode uses field inverses (which requires the
    denominator factorials to be invertible, e.g. any root order > n).
    """
    if k < 0 or k > n:
        return CycScalar.zero(mode)
    if mode.is_root:
        return q_factorial(n, mode) / (q_factorial(k, mode) * q_factorial(n - k, mode))
    num = q_factorial(n, mode)
    den = q_factorial(k, mode) * q_factorial(n - k, mode)
    quo, rem = _pdivmod(num.coeffs, den.coeffs)
    if rem:
        raise ArithmeticError("factorial quotient is not a polynomial")
    return CycScalar(mode, quo, reduce=False)
