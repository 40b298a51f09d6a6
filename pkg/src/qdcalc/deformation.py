"""First-order deformations of the differential parameter.

The differential with shifted parameter acts on a homogeneous matrix of
degree b by B -> eta B - (q + delta)^b B eta, the shift delta being an
exact polynomial in the deformation parameter (no truncation).  Cyclic
families of shifts summing to zero produce degree-preserving operators
at specific orders of the parameter; at order two those operators are
polynomials in the conjugation C: B -> eta B eta^(N-1), and idempotent
ones among them project onto conjugation eigenspaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import CycScalar, Mode, q_power, root
from .symbolic import EPS, SymScalar, eps_variable
from .graded_matrix import GradedMatrix, d_q, zero_matrix


def _as_shift(delta, mode: Mode) -> SymScalar:
    if isinstance(delta, SymScalar):
        return delta
    if isinstance(delta, CycScalar):
        return SymScalar.constant(delta)
    return SymScalar.constant(CycScalar.rational(delta, mode))


@dataclass(frozen=True)
class DeformedDifferential:
    """The differential with parameter q + shift."""

    shift: SymScalar

    def __call__(self, b: GradedMatrix) -> GradedMatrix:
        return apply_deformed(self.shift, b)


def apply_deformed(delta, b: GradedMatrix) -> GradedMatrix:
    """One application of the shifted differential; at zero shift this is
    the plain differential.  Inhomogeneous input extends additively, each
    component keeping its own degree exponent."""
    n = b.n
    mode = b.mode
    shift = _as_shift(delta, mode)
    base = SymScalar.constant(CycScalar.q(mode)) + shift
    powers = [SymScalar.one(mode)]
    for _ in range(n - 1):
        powers.append(powers[-1] * base)
    rows = b.rows
    zero = SymScalar.zero(mode)
    out = []
    for i in range(n):
        up = rows[(i + 1) % n]
        here = rows[i]
        new_row = []
        for j in range(n):
            a = up[j]
            c = here[(j - 1) % n]
            if not a and not c:
                new_row.append(zero)
                continue
            deg = (j - 1 - i) % n
            new_row.append(a - powers[deg] * c)
        out.append(new_row)
    return GradedMatrix(out)


def cyclic_combination(deltas: Sequence, weights: Sequence,
                       b: GradedMatrix) -> GradedMatrix:
    """Weighted sum over cyclic rotations of a composition of deformed
    differentials; within each product the rightmost differential acts
    first.  The shifts must sum to zero."""
    if len(deltas) != len(weights):
        raise ValueError("need one weight per shift")
    mode = b.mode
    shifts = [_as_shift(d, mode) for d in deltas]
    total = SymScalar.zero(mode)
    for s in shifts:
        total = total + s
    if total:
        raise ValueError("shifts must sum to zero")
    m = len(shifts)
    result = None
    for alpha in range(m):
        rotation = shifts[alpha:] + shifts[:alpha]
        cur = b.lift_symbolic()
        for s in reversed(rotation):
            cur = apply_deformed(s, cur)
        cur = cur.scale(weights[alpha])
        result = cur if result is None else result + cur
    return result


def deformed_covariant(a: GradedMatrix, lam: GradedMatrix, delta,
                       b: GradedMatrix) -> GradedMatrix:
    """Covariant step with both the parameter and the connection deformed:
    the shifted differential plus (a + delta * lam) acting on the left."""
    mode = b.mode
    shift = _as_shift(delta, mode)
    b_sym = b.lift_symbolic()
    conn = a.lift_symbolic() + lam.lift_symbolic().scale(shift)
    return apply_deformed(shift, b_sym) + conn * b_sym


# ---------------------------------------------------------------------------
# conjugation operators and projector extraction
# ---------------------------------------------------------------------------

class ConjugationOperator:
    """Operator B -> sum_k c_k eta^k B eta^(N-k); closed under composition,
    which is cyclic convolution of the coefficient vectors."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[CycScalar]):
        if len(coeffs) != n:
            raise ValueError("need one coefficient per conjugation power")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("ConjugationOperator is immutable")

    def apply(self, m: GradedMatrix) -> GradedMatrix:
        n = self.n
        out = None
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            rotated = GradedMatrix([[m.rows[(i + k) % n][(j + k) % n]
                                     for j in range(n)] for i in range(n)])
            rotated = rotated.scale(c)
            out = rotated if out is None else out + rotated
        return out if out is not None else zero_matrix(n, root(n))

    def compose(self, other: "ConjugationOperator") -> "ConjugationOperator":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        n = self.n
        mode = root(n)
        out = [CycScalar.zero(mode)] * n
        for a, ca in enumerate(self.coeffs):
            if not ca:
                continue
            for b, cb in enumerate(other.coeffs):
                if cb:
                    out[(a + b) % n] = out[(a + b) % n] + ca * cb
        return ConjugationOperator(n, out)

    def eigenvalues(self) -> list[CycScalar]:
        """Values on the conjugation eigenspaces, indexed by the power of q
        scaling under one conjugation step."""
        mode = root(self.n)
        out = []
        for m in range(self.n):
            v = CycScalar.zero(mode)
            for k, c in enumerate(self.coeffs):
                v = v + c * q_power(mode, k * m)
            out.append(v)
        return out

    def scale(self, s) -> "ConjugationOperator":
        return ConjugationOperator(self.n, [s * c for c in self.coeffs])

    def __add__(self, other):
        return ConjugationOperator(self.n, [a + b for a, b in
                                            zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return ConjugationOperator(self.n, [a - b for a, b in
                                            zip(self.coeffs, other.coeffs)])

    def is_idempotent(self) -> bool:
        return self.compose(self) == self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ConjugationOperator):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    __hash__ = None

    def render(self) -> str:
        names = ["B"] + [f"e^{k}*B*e^{self.n - k}" for k in range(1, self.n)]
        parts = [f"({c})*{nm}" for c, nm in zip(self.coeffs, names) if c]
        return " + ".join(parts) if parts else "0"

    @classmethod
    def identity(cls, n: int) -> "ConjugationOperator":
        mode = root(n)
        return cls(n, [CycScalar.one(mode)] + [CycScalar.zero(mode)] * (n - 1))


class ExtractionError(ArithmeticError):
    """The leading operator exists but no scaling makes it a projector."""


def generic_homogeneous(n: int, degree: int, prefix: str = "b") -> GradedMatrix:
    """Matrix with fresh symbolic entries along one cyclic off-diagonal."""
    mode = root(n)
    zero = SymScalar.zero(mode)
    rows = [[zero] * n for _ in range(n)]
    for i in range(n):
        rows[i][(i + degree) % n] = SymScalar.variable(f"{prefix}{i}", mode)
    return GradedMatrix(rows)


def _conjugation_read_off(result: GradedMatrix, degree: int,
                          prefix: str = "b") -> list[SymScalar]:
    """Coefficients c_k from the action on a generic homogeneous matrix:
    row i of the result must read sum_k c_k b_{i+k}; consistency across
    rows is enforced."""
    n = result.n
    mode = root(n)
    coeffs: list[SymScalar | None] = [None] * n
    for i in range(n):
        for j in range(n):
            entry = result.rows[i][j]
            if (j - i) % n != degree % n:
                if entry:
                    raise ArithmeticError("operator does not preserve the degree")
                continue
            for k in range(n):
                var = f"{prefix}{(i + k) % n}"
                c = entry.coefficient_of(var, 1)
                if coeffs[k] is None:
                    coeffs[k] = c
                elif coeffs[k] != c:
                    raise ArithmeticError("operator is not a conjugation polynomial")
    return [c if c is not None else SymScalar.zero(mode) for c in coeffs]


def extract_leading_operator(n: int, deltas: Sequence, weights: Sequence,
                             degree: int) -> tuple[int, ConjugationOperator]:
    """Exact expansion of the weighted cyclic combination on a generic
    homogeneous matrix; returns the lowest order in the deformation
    parameter together with the conjugation operator at that order."""
    b = generic_homogeneous(n, degree)
    combo = cyclic_combination(deltas, weights, b)
    order = None
    for row in combo.rows:
        for e in row:
            if not e:
                continue
            low = e.lowest_order_in(EPS)
            if low is not None and (order is None or low < order):
                order = low
    if order is None:
        raise ExtractionError("combination is identically zero")
    leading = combo.map_entries(lambda e: e.coefficient_of(EPS, order))
    coeffs_sym = _conjugation_read_off(leading, degree + len(deltas))
    coeffs = [c.constant_scalar() for c in coeffs_sym]
    return order, ConjugationOperator(n, coeffs)


def extract_projector(n: int, deltas: Sequence, weights: Sequence,
                      degree: int) -> tuple[int, ConjugationOperator]:
    """Leading operator normalized to a projector.

    The nonzero conjugation eigenvalues of the leading operator must all
    coincide; dividing by that common value then yields an idempotent.
    Otherwise no scalar normalization can work and ExtractionError carries
    the eigenvalue diagnostic.
    """
    order, op = extract_leading_operator(n, deltas, weights, degree)
    nonzero = [v for v in op.eigenvalues() if v]
    if not nonzero:
        raise ExtractionError("leading operator is nilpotent, not a projector")
    mu = nonzero[0]
    if any(v != mu for v in nonzero[1:]):
        raise ExtractionError(
            "leading operator has distinct nonzero conjugation eigenvalues "
            + str([str(v) for v in op.eigenvalues()]))
    proj = op.scale(mu.inverse())
    if not proj.is_idempotent():
        raise ExtractionError("normalized operator failed idempotence")
    return order, proj


# ---------------------------------------------------------------------------
# deformed covariant products
# ---------------------------------------------------------------------------

def covariant_product_parts(a: GradedMatrix, lam: GradedMatrix,
                            b: GradedMatrix) -> dict:
    """Symmetric and antisymmetric combinations of the two-sided deformed
    covariant product at order two, as exact polynomials in the parameter.

    Returns the even part (half the sum), the odd part (the sum and the
    difference of the two orderings), and reference values for the
    comparisons the checks need.
    """
    mode = b.mode
    eps = eps_variable(mode)
    plus = lambda x: deformed_covariant(a, lam, eps, x)
    minus = lambda x: deformed_covariant(a, lam, -eps, x)
    plain_plus = lambda x: deformed_covariant(a, zero_matrix(b.n, mode), eps, x)
    plain_minus = lambda x: deformed_covariant(a, zero_matrix(b.n, mode), -eps, x)

    b_sym = b.lift_symbolic()
    first = plain_plus(minus(b_sym))    # undeformed-connection step last
    second = plain_minus(plus(b_sym))
    half = CycScalar.rational(Fraction(1, 2), mode)
    return {
        "symmetric": (first + second).scale(half),
        "antisymmetric": first - second,
    }
