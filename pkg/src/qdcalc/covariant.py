"""Covariant differentials, curvature, and gauge transformations.

The module of the matrix realization is the algebra acting on itself by
left multiplication, so module elements are plain matrices and the
standard matrix units serve as the test basis.  A connection is a
homogeneous degree-one matrix; the covariant differential adds left
multiplication by it to the plain differential.  At a primitive root of
unity the N-th covariant power collapses to multiplication by a single
degree-zero element, the curvature, which in this realization is always
a scalar multiple of the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .scalars import CycScalar, Mode, q_binomial, root
from .symbolic import SymScalar
from .graded_matrix import (
    GradedMatrix,
    basis_matrix,
    d_k,
    d_q,
    d_q_iterated,
    identity_matrix,
    zero_matrix,
)


def ensure_connection(a: GradedMatrix) -> GradedMatrix:
    if a and a.degree() != 1:
        raise ValueError("connection must be homogeneous of degree 1")
    return a


def cycle_connection(n: int, entries: Sequence) -> GradedMatrix:
    """Degree-one matrix with the given entries along the cyclic
    superdiagonal, wrapping into the corner."""
    if len(entries) != n:
        raise ValueError("need one entry per row")
    mode = root(n)
    z = CycScalar.zero(mode)
    rows = [[z] * n for _ in range(n)]
    for i, e in enumerate(entries):
        if not hasattr(e, "mode"):
            e = CycScalar.rational(e, mode)
        rows[i][(i + 1) % n] = e
    return GradedMatrix(rows)


def symbolic_cycle_connection(n: int, prefix: str = "a") -> GradedMatrix:
    """Cycle connection whose entries are fresh symbolic variables."""
    mode = root(n)
    return cycle_connection(
        n, [SymScalar.variable(f"{prefix}{i + 1}", mode) for i in range(n)])


def cycle_entries(a: GradedMatrix) -> list:
    """The superdiagonal-cycle entries of a degree-one matrix, by row."""
    return [a.rows[i][(i + 1) % a.n] for i in range(a.n)]


# ---------------------------------------------------------------------------
# covariant differential
# ---------------------------------------------------------------------------

def apply_D(a: GradedMatrix, phi: GradedMatrix, k: int | None = None) -> GradedMatrix:
    """One covariant step: the differential of phi plus a * phi.

    k selects which degree-one generator drives the differential; None
    means the plain cyclic shift."""
    if a.n != phi.n:
        raise ValueError("connection and module element dimensions differ")
    dphi = d_q(phi) if k is None else d_k(phi, k)
    return dphi + a * phi


def D_power_iterated(a: GradedMatrix, phi: GradedMatrix, n: int,
                     k: int | None = None) -> GradedMatrix:
    if n < 0:
        raise ValueError("power must be >= 0")
    out = phi
    for _ in range(n):
        out = apply_D(a, out, k)
    return out


def covariant_powers_of_connection(a: GradedMatrix, upto: int) -> list[GradedMatrix]:
    """[a, Da, D^2 a, ...] up to the requested power."""
    out = [a]
    for _ in range(upto):
        out.append(apply_D(a, out[-1]))
    return out


def D_power_recurrence(a: GradedMatrix, phi: GradedMatrix, n: int) -> GradedMatrix:
    """Closed recurrence for the n-th covariant power:

        D^n phi = d^n phi
                + sum_{k=1}^{n-1} [n k]_q (D^(k-1) a) d^(n-k) phi
                + (D^(n-1) a) phi
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    mode = phi.mode
    da_powers = covariant_powers_of_connection(a, max(n - 2, 0))
    d_phi = [phi]
    for _ in range(n):
        d_phi.append(d_q(d_phi[-1]))
    total = d_phi[n]
    for k in range(1, n):
        coeff = q_binomial(n, k, mode)
        if not coeff:
            continue
        total = total + (da_powers[k - 1] * d_phi[n - k]).scale(coeff)
    total = total + covariant_powers_of_connection(a, n - 1)[n - 1] * phi
    return total


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

@dataclass
class Curvature:
    """The degree-zero element representing the N-th covariant power."""

    omega: GradedMatrix
    scalar_part: object | None  # set when omega is a multiple of the identity

    def is_zero(self) -> bool:
        return not self.omega


def _identity_multiple(m: GradedMatrix):
    """The scalar c with m == c * 1, or None."""
    n = m.n
    c = m.rows[0][0]
    for i in range(n):
        for j in range(n):
            if i == j:
                if m.rows[i][j] != c:
                    return None
            elif m.rows[i][j]:
                return None
    return c


def curvature(a: GradedMatrix, check_basis: bool = True) -> Curvature:
    """Curvature of a single connection: the (N-1)-th covariant power of
    the connection itself.  Optionally re-verified against the N-th
    covariant power on the standard matrix basis."""
    ensure_connection(a)
    n = a.n
    omega = covariant_powers_of_connection(a, n - 1)[n - 1]
    if check_basis:
        mode = a.mode
        for i in range(n):
            for j in range(n):
                e = basis_matrix(n, mode, i, j)
                if D_power_iterated(a, e, n) != omega * e:
                    raise ArithmeticError("curvature failed to reproduce the N-th power")
    return Curvature(omega, _identity_multiple(omega))


def pure_gauge(s: GradedMatrix) -> GradedMatrix:
    """The flat connection induced by an invertible diagonal element."""
    if not s.is_diagonal():
        raise ValueError("gauge element must be diagonal")
    return s.diagonal_inverse() * d_q(s)


def pure_gauge_expansion_check(s: GradedMatrix, phi: GradedMatrix, n: int) -> GradedMatrix:
    """Evaluate the binomial expansion of the n-th covariant power of the
    connection induced by s,

        d^n phi + s^-1 (d^n s) phi
                + sum_{k=1}^{n-1} [n k]_q s^-1 (d^k s) d^(n-k) phi,

    and require it to equal the iterated application."""
    if n < 1:
        raise ValueError("power must be >= 1")
    mode = phi.mode
    s_inv = s.diagonal_inverse()
    d_s = [s]
    d_phi = [phi]
    for _ in range(n):
        d_s.append(d_q(d_s[-1]))
        d_phi.append(d_q(d_phi[-1]))
    total = d_phi[n] + s_inv * d_s[n] * phi
    for k in range(1, n):
        coeff = q_binomial(n, k, mode)
        if not coeff:
            continue
        total = total + (s_inv * d_s[k] * d_phi[n - k]).scale(coeff)
    iterated = D_power_iterated(pure_gauge(s), phi, n)
    if total != iterated:
        raise ArithmeticError("expansion disagrees with the iterated covariant power")
    return total


# ---------------------------------------------------------------------------
# several connections at once
# ---------------------------------------------------------------------------

def multi_apply(assignments: Sequence[tuple[GradedMatrix, int]],
                phi: GradedMatrix) -> GradedMatrix:
    """D_{k1} D_{k2} ... D_{kN} phi, rightmost factor acting first."""
    out = phi
    for a, k in reversed(list(assignments)):
        out = apply_D(a, out, k)
    return out


def symmetrized_multi_apply(assignments: Sequence[tuple[GradedMatrix, int]],
                            phi: GradedMatrix) -> GradedMatrix:
    """Sum of the composite covariant differentials over all distinct
    arrangements of the given (connection, generator) pairs."""
    seen = set()
    total = zero_matrix(phi.n, phi.mode)
    for perm in itertools.permutations(range(len(assignments))):
        key = tuple(assignments[i][1] for i in perm)
        if key in seen:
            continue
        seen.add(key)
        total = total + multi_apply([assignments[i] for i in perm], phi)
    return total


def multi_curvature(assignments: Sequence[tuple[GradedMatrix, int]],
                    check_basis: bool = True) -> Curvature:
    """Curvature of a family of connections: the symmetrized product of
    their covariant differentials acts as left multiplication by a single
    element, obtained by application to the identity."""
    if not assignments:
        raise ValueError("need at least one connection")
    n = assignments[0][0].n
    if len(assignments) != n:
        raise ValueError("need exactly N (connection, generator) pairs")
    for a, k in assignments:
        ensure_connection(a)
        if not 1 <= k <= n:
            raise ValueError("generator index out of range")
    mode = assignments[0][0].mode
    omega = symmetrized_multi_apply(assignments, identity_matrix(n, mode))
    if check_basis:
        for i in range(n):
            for j in range(n):
                e = basis_matrix(n, mode, i, j)
                if symmetrized_multi_apply(assignments, e) != omega * e:
                    raise ArithmeticError("symmetrized product is not left multiplication")
    return Curvature(omega, _identity_multiple(omega))


# ---------------------------------------------------------------------------
# gauge transformations
# ---------------------------------------------------------------------------

def gauge_transform(a: GradedMatrix, u: GradedMatrix,
                    k: int | None = None) -> GradedMatrix:
    """u^-1 a u + u^-1 (d u) for an invertible degree-zero u."""
    if not u.is_diagonal():
        raise ValueError("gauge transformations act by diagonal elements here")
    u_inv = u.diagonal_inverse()
    du = d_q(u) if k is None else d_k(u, k)
    return u_inv * a * u + u_inv * du


def is_symmetric_connection(m_coeffs: Sequence[Sequence],
                            u: GradedMatrix,
                            a_list: Sequence[GradedMatrix]) -> bool:
    """Whether the linear index action m sends each connection to its own
    gauge transform: sum_j m[j][k] a_j == u^-1 a_k u + u^-1 (d_k u)."""
    n = len(a_list)
    for a in a_list:
        ensure_connection(a)
    for k in range(1, n + 1):
        combo = zero_matrix(a_list[0].n, a_list[0].mode)
        for j in range(1, n + 1):
            c = m_coeffs[j - 1][k - 1]
            if not c:
                continue
            combo = combo + a_list[j - 1].scale(c)
        if combo != gauge_transform(a_list[k - 1], u, k):
            return False
    return True
