from fractions import Fraction

import pytest

from qdcalc.sampling import Sampler
from qdcalc.scalars import CycScalar, root
from qdcalc.symbolic import SymScalar
from qdcalc.graded_matrix import (
    basis_matrix,
    d_q,
    d_q_iterated,
    identity_matrix,
    zero_matrix,
)
from qdcalc.covariant import (
    D_power_iterated,
    D_power_recurrence,
    apply_D,
    curvature,
    cycle_connection,
    cycle_entries,
    gauge_transform,
    is_symmetric_connection,
    multi_curvature,
    pure_gauge,
    pure_gauge_expansion_check,
    symbolic_cycle_connection,
)


def symbolic_product_minus_one(n):
    """(a1+1)(a2+1)...(aN+1) - 1 over the symbolic entries."""
    mode = root(n)
    prod = SymScalar.one(mode)
    for i in range(n):
        prod = prod * (SymScalar.variable(f"a{i + 1}", mode) + 1)
    return prod - 1


class TestApplyD:
    def test_zero_connection(self):
        s = Sampler(21)
        for n in range(2, 6):
            phi = s.matrix(n, root(n))
            assert apply_D(zero_matrix(n, root(n)), phi) == d_q(phi)

    def test_identity_module_element(self):
        s = Sampler(22)
        for n in range(2, 6):
            a = s.homogeneous_matrix(n, root(n), 1)
            assert apply_D(a, identity_matrix(n, root(n))) == a

    def test_two_step_expansion(self):
        # D^2 phi = d^2 phi + (1+q) a d phi + (Da) phi
        s = Sampler(23)
        for n in range(2, 7):
            mode = root(n)
            q = CycScalar.q(mode)
            a = s.homogeneous_matrix(n, mode, 1)
            phi = s.matrix(n, mode)
            da = apply_D(a, a)
            expected = d_q_iterated(phi, 2) + (a * d_q(phi)).scale(1 + q) + da * phi
            assert D_power_iterated(a, phi, 2) == expected


class TestRecurrence:
    def test_single_step(self):
        s = Sampler(24)
        for n in range(2, 6):
            a = s.homogeneous_matrix(n, root(n), 1)
            phi = s.matrix(n, root(n))
            assert D_power_recurrence(a, phi, 1) == apply_D(a, phi)

    def test_matches_iterated(self):
        s = Sampler(25)
        for n in range(2, 7):
            for _ in range(10):
                a = s.homogeneous_matrix(n, root(n), 1)
                phi = s.matrix(n, root(n))
                for power in range(1, n + 1):
                    assert D_power_recurrence(a, phi, power) == \
                        D_power_iterated(a, phi, power), (n, power)

    def test_full_power_reduces_to_curvature_action(self):
        s = Sampler(26)
        for n in range(2, 7):
            a = s.homogeneous_matrix(n, root(n), 1)
            phi = s.matrix(n, root(n))
            omega = curvature(a, check_basis=False).omega
            assert D_power_iterated(a, phi, n) == omega * phi

    def test_two_graded_case(self):
        # at order two the square of D is plain multiplication by Da
        s = Sampler(27)
        a = s.homogeneous_matrix(2, root(2), 1)
        phi = s.matrix(2, root(2))
        da = apply_D(a, a)
        assert D_power_iterated(a, phi, 2) == da * phi


class TestCurvature:
    def test_zero_connection(self):
        for n in range(2, 6):
            c = curvature(zero_matrix(n, root(n)))
            assert c.is_zero()
            assert c.scalar_part == 0

    def test_pure_gauge_is_flat_random(self):
        s = Sampler(28)
        for n in range(2, 7):
            for _ in range(10):
                g = s.invertible_diagonal(n, root(n))
                assert curvature(pure_gauge(g), check_basis=False).is_zero()

    def test_pure_gauge_entries_n2(self):
        mode = root(2)
        a_sym = SymScalar.variable("s1", mode)
        b_sym = SymScalar.variable("s2", mode)
        z = SymScalar.zero(mode)
        from qdcalc.graded_matrix import GradedMatrix
        s = GradedMatrix([[a_sym, z], [z, b_sym]])
        conn = pure_gauge(s)
        alpha, omega = cycle_entries(conn)
        assert alpha == b_sym / a_sym - 1
        assert omega == a_sym / b_sym - 1

    def test_pure_gauge_entry_product_is_one(self):
        s = Sampler(29)
        for n in range(2, 7):
            g = s.invertible_diagonal(n, root(n))
            entries = cycle_entries(pure_gauge(g))
            prod = CycScalar.one(root(n))
            for e in entries:
                prod = prod * (e + 1)
            assert prod == 1

    def test_symbolic_scalar_part_is_product_minus_one(self):
        # exact symbolic curvature for the generic cycle connection
        for n in range(2, 5):
            a = symbolic_cycle_connection(n)
            c = curvature(a, check_basis=(n <= 3))
            assert c.scalar_part is not None
            assert c.scalar_part == symbolic_product_minus_one(n)

    def test_singular_gauge_rejected(self):
        n = 3
        m = zero_matrix(n, root(n))
        with pytest.raises(ZeroDivisionError):
            pure_gauge(m)


class TestExpansionCheck:
    def test_two_step_display(self):
        s = Sampler(30)
        for n in range(2, 6):
            mode = root(n)
            q = CycScalar.q(mode)
            g = s.invertible_diagonal(n, mode)
            phi = s.matrix(n, mode)
            rhs = pure_gauge_expansion_check(g, phi, 2)
            g_inv = g.diagonal_inverse()
            expected = d_q_iterated(phi, 2) + g_inv * d_q_iterated(g, 2) * phi \
                + (g_inv * d_q(g) * d_q(phi)).scale(1 + q)
            assert rhs == expected

    def test_full_power_vanishes(self):
        s = Sampler(31)
        for n in range(2, 6):
            g = s.invertible_diagonal(n, root(n))
            phi = s.matrix(n, root(n))
            assert not pure_gauge_expansion_check(g, phi, n)

    def test_identity_gauge(self):
        s = Sampler(32)
        for n in range(2, 5):
            phi = s.matrix(n, root(n))
            ident = identity_matrix(n, root(n))
            for power in range(1, n + 1):
                assert pure_gauge_expansion_check(ident, phi, power) == \
                    d_q_iterated(phi, power)


def sym_pair_connection(n, idx):
    """Connection with symbolic cycle entries, labelled by family index."""
    mode = root(n)
    return cycle_connection(
        n, [SymScalar.variable(f"c{idx}_{i + 1}", mode) for i in range(n)])


class TestMultiCurvature:
    def test_two_graded_table(self):
        mode = root(2)
        al1 = SymScalar.variable("al1", mode)
        be1 = SymScalar.variable("be1", mode)
        al2 = SymScalar.variable("al2", mode)
        be2 = SymScalar.variable("be2", mode)
        a1 = cycle_connection(2, [al1, be1])
        a2 = cycle_connection(2, [al2, be2])

        # repeated index: each curvature picks up the quadratic term of the
        # square of its own connection
        om11 = multi_curvature([(a1, 1), (a1, 1)])
        assert om11.scalar_part == al1 - be1 + al1 * be1
        om22 = multi_curvature([(a2, 2), (a2, 2)])
        assert om22.scalar_part == al2 + be2 + al2 * be2

        # mixed indices agree in both orders and match the known bilinear form
        om12 = multi_curvature([(a1, 1), (a2, 2)])
        om21 = multi_curvature([(a2, 2), (a1, 1)])
        expected = al1 + al2 + be1 - be2 + al1 * be2 + al2 * be1
        assert om12.scalar_part == expected
        assert om21.scalar_part == expected

    def test_zero_connections(self):
        n = 3
        z = zero_matrix(n, root(n))
        assert multi_curvature([(z, 1), (z, 2), (z, 3)]).is_zero()

    def test_proportional_to_identity_n3(self):
        s = Sampler(33)
        n = 3
        for _ in range(5):
            pairs = [(s.homogeneous_matrix(n, root(n), 1), k) for k in range(1, 4)]
            c = multi_curvature(pairs)
            assert c.scalar_part is not None

    def test_wrong_count(self):
        n = 3
        z = zero_matrix(n, root(n))
        with pytest.raises(ValueError):
            multi_curvature([(z, 1), (z, 2)])


class TestGauge:
    def test_identity_gauge_fixes_connection(self):
        s = Sampler(34)
        for n in range(2, 5):
            a = s.homogeneous_matrix(n, root(n), 1)
            assert gauge_transform(a, identity_matrix(n, root(n))) == a

    def test_flatness_is_gauge_stable(self):
        s = Sampler(35)
        for n in range(2, 5):
            u = s.invertible_diagonal(n, root(n))
            a = gauge_transform(zero_matrix(n, root(n)), u)
            assert curvature(a, check_basis=False).is_zero()

    def test_scalar_part_invariant(self):
        s = Sampler(36)
        for n in (2, 3):
            for _ in range(10):
                a = s.homogeneous_matrix(n, root(n), 1)
                u = s.invertible_diagonal(n, root(n))
                before = curvature(a, check_basis=False)
                after = curvature(gauge_transform(a, u), check_basis=False)
                assert before.scalar_part == after.scalar_part

    def test_multi_curvature_gauge_invariant(self):
        s = Sampler(37)
        n = 2
        for _ in range(10):
            a1 = s.homogeneous_matrix(n, root(n), 1)
            a2 = s.homogeneous_matrix(n, root(n), 1)
            u = s.invertible_diagonal(n, root(n))
            before = multi_curvature([(a1, 1), (a2, 2)], check_basis=False)
            after = multi_curvature(
                [(gauge_transform(a1, u, 1), 1), (gauge_transform(a2, u, 2), 2)],
                check_basis=False)
            assert before.scalar_part == after.scalar_part


class TestSymmetricConnections:
    def test_identity_everything(self):
        s = Sampler(38)
        n = 2
        mode = root(n)
        a_list = [s.homogeneous_matrix(n, mode, 1) for _ in range(n)]
        ident_map = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        assert is_symmetric_connection(ident_map, identity_matrix(n, mode), a_list)

    def test_negative_case(self):
        s = Sampler(39)
        n = 2
        mode = root(n)
        a_list = [s.homogeneous_matrix(n, mode, 1) for _ in range(n)]
        u = s.invertible_diagonal(n, mode)
        ident_map = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        # generic data will not satisfy the fixed-point condition
        assert not is_symmetric_connection(ident_map, u, a_list)

    def test_constructed_symmetric_instance(self):
        # build a_k as the fixed point of its own gauge transform: with
        # diagonal u whose ratios differ from 1, solve entrywise
        n = 2
        mode = root(n)
        q = CycScalar.q(mode)
        u_entries = [CycScalar.rational(2, mode), CycScalar.rational(3, mode)]
        from qdcalc.graded_matrix import GradedMatrix
        z = CycScalar.zero(mode)
        u = GradedMatrix([[u_entries[0], z], [z, u_entries[1]]])
        a_list = []
        for k in (1, 2):
            from qdcalc.graded_matrix import d_k as dk
            g = u.diagonal_inverse() * dk(u, k)
            g_entries = cycle_entries(g)
            entries = []
            for i in range(n):
                ratio = u_entries[(i + 1) % n] / u_entries[i]
                entries.append(g_entries[i] / (1 - ratio))
            a_list.append(cycle_connection(n, entries))
        ident_map = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        assert is_symmetric_connection(ident_map, u, a_list)
