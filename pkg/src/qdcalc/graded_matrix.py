"""The N x N matrix realization of the Z_N-graded algebra.

A matrix is homogeneous of degree b when its nonzero entries sit on the
cyclic off-diagonal (i, i + b mod N); conjugating with the grading matrix
U = diag(q, q^2, ..., q^N) then multiplies it by q^b.  The differential
raises degree by one and is nilpotent of order N once q is a primitive
N-th root of unity.

Entries may be CycScalar or SymScalar (any ring whose elements combine
with CycScalar through the arithmetic operators); dimension N always
matches the root order of the scalar mode.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from .scalars import CycScalar, Mode, root
from .symbolic import SymScalar
from . import scalars


class GradedMatrix:
    """Dense square matrix over exact scalars, with Z_N-degree structure."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, *a):
        raise AttributeError("GradedMatrix is immutable")

    # -- basic structure -----------------------------------------------------

    @property
    def mode(self) -> Mode:
        for row in self.rows:
            for e in row:
                m = getattr(e, "mode", None)
                if m is not None:
                    return m
        raise ValueError("matrix has no mode-carrying entries")

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def map_entries(self, f: Callable) -> "GradedMatrix":
        return GradedMatrix([[f(e) for e in row] for row in self.rows])

    def lift_symbolic(self) -> "GradedMatrix":
        """Entries lifted into the symbolic coefficient ring."""
        return self.map_entries(lambda e: e if isinstance(e, SymScalar) else SymScalar.constant(e))

    # -- ring operations -----------------------------------------------------

    def _check(self, other: "GradedMatrix"):
        if not isinstance(other, GradedMatrix):
            raise TypeError("expected a GradedMatrix")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        return GradedMatrix([[a + b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return GradedMatrix([[a - b for a, b in zip(r1, r2)]
                             for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map_entries(lambda e: -e)

    def __mul__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        self._check(other)
        n = self.n
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            arow = self.rows[i]
            orow = out[i]
            for k in range(n):
                a = arow[k]
                if not a:
                    continue
                brow = other.rows[k]
                for j in range(n):
                    b = brow[j]
                    if not b:
                        continue
                    p = a * b
                    orow[j] = p if orow[j] is None else orow[j] + p
        zero = CycScalar.zero(self.mode)
        return GradedMatrix([[zero if e is None else e for e in row] for row in out])

    def scale(self, s) -> "GradedMatrix":
        """Left multiplication of every entry by a scalar."""
        return self.map_entries(lambda e: s * e)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative matrix powers are not supported")
        result = identity_matrix(self.n, self.mode)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self) -> "GradedMatrix":
        return GradedMatrix([[self.rows[j][i] for j in range(self.n)] for i in range(self.n)])

    def __bool__(self):
        return any(any(e for e in row) for row in self.rows)

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return self.n == other.n and all(
            a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    __hash__ = None

    # -- grading -------------------------------------------------------------

    def degree(self) -> int | None:
        """Degree read off the off-diagonal support; 0 for the zero matrix,
        None when the matrix is not homogeneous."""
        n = self.n
        present = set()
        for i in range(n):
            for j in range(n):
                if self.rows[i][j]:
                    present.add((j - i) % n)
                    if len(present) > 1:
                        return None
        if not present:
            return 0
        return present.pop()

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n)
                   for j in range(self.n) if i != j)

    def diagonal_inverse(self) -> "GradedMatrix":
        """Inverse of an invertible diagonal matrix, entry by entry."""
        if not self.is_diagonal():
            raise ValueError("matrix is not diagonal")
        n = self.n
        zero = CycScalar.zero(self.mode)
        out = [[zero] * n for _ in range(n)]
        for i in range(n):
            e = self.rows[i][i]
            if not e:
                raise ZeroDivisionError("singular diagonal matrix")
            out[i][i] = e.inverse()
        return GradedMatrix(out)

    def render(self) -> list[list[str]]:
        """Row-major nested lists of entry renderings."""
        return [[str(e) for e in row] for row in self.rows]

    def __repr__(self):
        return "GradedMatrix(" + repr(self.render()) + ")"


def degree_of(m: GradedMatrix) -> int | None:
    return m.degree()


def homogeneous_decompose(m: GradedMatrix) -> dict[int, GradedMatrix]:
    """Split into homogeneous components, keyed by degree; zero components
    are omitted, so the zero matrix decomposes to an empty map."""
    n = m.n
    zero = CycScalar.zero(m.mode)
    parts: dict[int, list[list]] = {}
    for i in range(n):
        for j in range(n):
            e = m.rows[i][j]
            if not e:
                continue
            b = (j - i) % n
            if b not in parts:
                parts[b] = [[zero] * n for _ in range(n)]
            parts[b][i][j] = e
    return {b: GradedMatrix(rows) for b, rows in sorted(parts.items())}


# ---------------------------------------------------------------------------
# canonical generators
# ---------------------------------------------------------------------------

def zero_matrix(n: int, mode: Mode) -> GradedMatrix:
    z = CycScalar.zero(mode)
    return GradedMatrix([[z] * n for _ in range(n)])


def identity_matrix(n: int, mode: Mode) -> GradedMatrix:
    z, o = CycScalar.zero(mode), CycScalar.one(mode)
    return GradedMatrix([[o if i == j else z for j in range(n)] for i in range(n)])


def basis_matrix(n: int, mode: Mode, i: int, j: int) -> GradedMatrix:
    z, o = CycScalar.zero(mode), CycScalar.one(mode)
    return GradedMatrix([[o if (r, c) == (i, j) else z for c in range(n)] for r in range(n)])


def grading_matrix(n: int) -> GradedMatrix:
    """U = diag(q, q^2, ..., q^N) over the order-N root mode."""
    mode = root(n)
    q = CycScalar.q(mode)
    z = CycScalar.zero(mode)
    return GradedMatrix([[q ** (i + 1) if i == j else z for j in range(n)] for i in range(n)])


def eta(n: int) -> GradedMatrix:
    """Cyclic shift matrix: ones above the diagonal and in the corner."""
    mode = root(n)
    z, o = CycScalar.zero(mode), CycScalar.one(mode)
    return GradedMatrix([[o if j == (i + 1) % n else z for j in range(n)] for i in range(n)])


def _eta_k_factors(n: int, k: int) -> list[CycScalar]:
    """Superdiagonal entries of the k-th degree-one generator, by row."""
    mode = root(n)
    q = CycScalar.q(mode)
    return [q ** ((i + 1) * k) for i in range(n - 1)] + [CycScalar.one(mode)]


def eta_k(n: int, k: int) -> GradedMatrix:
    """Degree-one generator with superdiagonal q^k, q^2k, ... and corner 1."""
    if not 1 <= k <= n:
        raise ValueError("generator index must lie in 1..N")
    mode = root(n)
    z = CycScalar.zero(mode)
    g = _eta_k_factors(n, k)
    return GradedMatrix([[g[i] if j == (i + 1) % n else z for j in range(n)]
                         for i in range(n)])


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------

def _graded_commutator(m: GradedMatrix, gen_factors: Sequence) -> GradedMatrix:
    """g B - q^deg B g for the degree-one generator given by its row factors.

    Works entry by entry: the (i, j) result entry receives g_i * B[i+1, j]
    from the left product and q^b * B[i, j-1] * g_{j-1} from the right one,
    where b is the degree of the source component, read off the offset.
    Inhomogeneous input is handled additively for free this way.
    """
    n = m.n
    mode = m.mode
    qpow = [scalars.q_power(mode, t) for t in range(n)]
    rows = m.rows
    zero = CycScalar.zero(mode)
    out = []
    for i in range(n):
        new_row = []
        up = rows[(i + 1) % n]
        here = rows[i]
        for j in range(n):
            a = up[j]
            b = here[(j - 1) % n]
            if not a and not b:
                new_row.append(zero)
                continue
            left = gen_factors[i] * a
            right = qpow[(j - 1 - i) % n] * b * gen_factors[(j - 1) % n]
            new_row.append(left - right)
        out.append(new_row)
    return GradedMatrix(out)


def d_q(m: GradedMatrix) -> GradedMatrix:
    """The q-differential eta B - q^deg(B) B eta, extended additively."""
    one = CycScalar.one(m.mode)
    return _graded_commutator(m, [one] * m.n)


def d_k(m: GradedMatrix, k: int) -> GradedMatrix:
    """Partial differential built on the k-th degree-one generator."""
    if not 1 <= k <= m.n:
        raise ValueError("generator index must lie in 1..N")
    return _graded_commutator(m, _eta_k_factors(m.n, k))


def d_q_iterated(m: GradedMatrix, n: int) -> GradedMatrix:
    if n < 1:
        raise ValueError("iteration count must be >= 1")
    out = m
    for _ in range(n):
        out = d_q(out)
    return out


def _rotate(m: GradedMatrix, row_shift: int, col_shift: int) -> GradedMatrix:
    """eta^a B eta^c as an index rotation: entry (i, j) -> B[i+a, j-c]."""
    n = m.n
    return GradedMatrix([[m.rows[(i + row_shift) % n][(j - col_shift) % n]
                          for j in range(n)] for i in range(n)])


def d_q_closed_form(m: GradedMatrix, n: int) -> GradedMatrix:
    """Binomial expansion of the n-th power of the differential on a
    homogeneous matrix:

        sum_k (-1)^k q^(k*b + k(k-1)/2) [n choose k]_q eta^(n-k) B eta^k
    """
    if n < 1:
        raise ValueError("iteration count must be >= 1")
    b = m.degree()
    if b is None:
        raise ValueError("matrix is not homogeneous")
    mode = m.mode
    q = CycScalar.q(mode)
    total = zero_matrix(m.n, mode)
    for k in range(n + 1):
        phase = q ** (k * b + k * (k - 1) // 2) * scalars.q_binomial(n, k, mode)
        if k % 2:
            phase = -phase
        if not phase:
            continue
        total = total + _rotate(m, (n - k) % m.n, k % m.n).scale(phase)
    return total


def symmetrized_diff(indices: Sequence[int], m: GradedMatrix) -> GradedMatrix:
    """Sum of d_{k1} ... d_{kN} over all distinct arrangements of the index
    multiset; the rightmost differential acts first.  The index count must
    equal the matrix dimension."""
    if len(indices) != m.n:
        raise ValueError("index multiplicities must sum to the dimension")
    total = zero_matrix(m.n, m.mode)

    # walk the tree of distinct arrangements, sharing common application
    # prefixes instead of recomputing each full chain
    def extend(current: GradedMatrix, remaining: dict[int, int]):
        nonlocal total
        if not remaining:
            total = total + current
            return
        for k in sorted(remaining):
            rest = dict(remaining)
            if rest[k] == 1:
                del rest[k]
            else:
                rest[k] -= 1
            extend(d_k(current, k), rest)

    counts: dict[int, int] = {}
    for k in indices:
        counts[k] = counts.get(k, 0) + 1
    extend(m, counts)
    return total
