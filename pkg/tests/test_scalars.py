import random
from fractions import Fraction

import pytest

from qdcalc.scalars import (
    GENERIC,
    CycScalar,
    ModeError,
    QPolynomial,
    cyclotomic_polynomial,
    q_binomial,
    q_binomial_quotient,
    q_factorial,
    q_integer,
    root,
)


def poly(*cs):
    return QPolynomial(cs)


class TestCyclotomic:
    def test_base_cases(self):
        assert cyclotomic_polynomial(1) == poly(-1, 1)
        assert cyclotomic_polynomial(2) == poly(1, 1)

    def test_n4_by_exact_division(self):
        # independent oracle: divide q^4 - 1 by Phi_1 * Phi_2 directly
        num = poly(-1, 0, 0, 0, 1)
        den = poly(-1, 1) * poly(1, 1)
        quo, rem = divmod(num, den)
        assert not rem
        assert cyclotomic_polynomial(4) == quo == poly(1, 0, 1)

    def test_divides_qn_minus_one(self):
        for n in range(1, 25):
            num = QPolynomial([-1] + [0] * (n - 1) + [1])
            quo, rem = divmod(num, cyclotomic_polynomial(n))
            assert not rem, n

    def test_known_degrees(self):
        # degree equals Euler's totient
        totients = {3: 2, 6: 2, 8: 4, 9: 6, 12: 4}
        for n, d in totients.items():
            assert cyclotomic_polynomial(n).degree == d


class TestScalarArithmetic:
    def test_q_squared_at_root_two(self):
        m = root(2)
        q = CycScalar.q(m)
        assert q * q == CycScalar.one(m)
        assert q == -1

    def test_additive_inverse(self):
        m = GENERIC
        a = CycScalar(m, (1, 1))
        assert a + (-a) == CycScalar.zero(m)

    def test_q_cubed_reduces(self):
        m = root(3)
        q = CycScalar.q(m)
        assert q * q ** 2 == 1

    def test_mode_mismatch(self):
        with pytest.raises(ModeError):
            CycScalar.q(root(2)) * CycScalar.q(root(3))
        with pytest.raises(ModeError):
            CycScalar.q(GENERIC) + CycScalar.q(root(2))

    def test_primitivity(self):
        for n in range(2, 13):
            m = root(n)
            q = CycScalar.q(m)
            assert q ** n == 1
            for k in range(1, n):
                assert q ** k != 1, (n, k)

    def test_int_and_fraction_coercion(self):
        m = root(4)
        q = CycScalar.q(m)
        assert (1 + q) - q == 1
        assert Fraction(1, 2) * CycScalar.rational(2, m) == 1


class TestInverse:
    def test_one(self):
        m = root(5)
        assert CycScalar.one(m).inverse() == 1

    def test_q_inverse_is_last_power(self):
        for n in range(2, 9):
            m = root(n)
            q = CycScalar.q(m)
            assert q.inverse() == q ** (n - 1)

    def test_one_plus_q_at_root_four(self):
        m = root(4)
        q = CycScalar.q(m)
        inv = (1 + q).inverse()
        assert inv == (1 - q) * Fraction(1, 2)
        assert inv * (1 + q) == 1

    def test_generic_mode_has_no_inverse(self):
        with pytest.raises(ModeError):
            CycScalar.q(GENERIC).inverse()

    def test_zero_inverse(self):
        with pytest.raises(ZeroDivisionError):
            CycScalar.zero(root(3)).inverse()

    def test_random_inverses(self):
        rng = random.Random(20240811)
        for n in range(2, 9):
            m = root(n)
            deg = cyclotomic_polynomial(n).degree
            count = 0
            while count < 200:
                cs = [rng.randint(-9, 9) for _ in range(deg)]
                a = CycScalar(m, cs)
                if not a:
                    continue
                count += 1
                assert a.inverse() * a == 1


class TestQCombinatorics:
    def test_q_integer(self):
        assert q_integer(0, GENERIC) == 0
        assert q_integer(3, GENERIC) == CycScalar(GENERIC, (1, 1, 1))
        for n in range(2, 13):
            assert q_integer(n, root(n)) == 0

    def test_q_factorial(self):
        assert q_factorial(0, GENERIC) == 1
        assert q_factorial(2, GENERIC) == CycScalar(GENERIC, (1, 1))
        # oracle: multiply the factors out directly
        expected = CycScalar(GENERIC, (1, 1)) * CycScalar(GENERIC, (1, 1, 1))
        assert q_factorial(3, GENERIC) == expected

    def test_binomial_boundaries(self):
        for n in range(0, 8):
            assert q_binomial(n, 0, GENERIC) == 1
            assert q_binomial(n, n, GENERIC) == 1
        assert q_binomial(3, 5, GENERIC) == 0

    def test_binomial_4_2(self):
        # frozen from the quotient-definition oracle (exact poly division)
        oracle = q_binomial_quotient(4, 2, GENERIC)
        assert oracle == CycScalar(GENERIC, (1, 1, 2, 1, 1))
        assert q_binomial(4, 2, GENERIC) == oracle

    def test_recurrence_matches_quotient(self):
        for n in range(0, 13):
            for k in range(0, n + 1):
                assert q_binomial(n, k, GENERIC) == q_binomial_quotient(n, k, GENERIC)

    def test_recurrence_identity_generic(self):
        q = CycScalar.q(GENERIC)
        for n in range(0, 13):
            for k in range(0, n + 1):
                lhs = q ** (k + 1) * q_binomial(n, k + 1, GENERIC) + q_binomial(n, k, GENERIC)
                assert lhs == q_binomial(n + 1, k + 1, GENERIC)

    def test_quotient_at_large_root_orders(self):
        for n in range(0, 8):
            for k in range(0, n + 1):
                for m in (n + 1, n + 3):
                    if m < 2:
                        continue
                    mode = root(m)
                    assert q_binomial(n, k, mode) == q_binomial_quotient(n, k, mode)

    def test_vanishing_at_matching_root(self):
        # includes composite orders, which need reduction by Phi_N
        for n in range(2, 13):
            mode = root(n)
            for k in range(1, n):
                assert q_binomial(n, k, mode) == 0, (n, k)


class TestRendering:
    def test_examples(self):
        m = root(4)
        q = CycScalar.q(m)
        assert CycScalar.zero(m).render() == "0"
        assert CycScalar.one(m).render() == "1"
        assert q.render() == "q"
        assert (q ** 2).render() == "-1"
        half = CycScalar.rational(Fraction(1, 2), m)
        assert (half - half * q).render() == "1/2 - 1/2*q"

    def test_round_trip_random(self):
        rng = random.Random(11)
        for mode in (GENERIC, root(2), root(3), root(4), root(6), root(8)):
            deg = 5 if mode.n is None else cyclotomic_polynomial(mode.n).degree
            for _ in range(200):
                cs = [Fraction(rng.randint(-9, 9), rng.choice((1, 1, 2, 3)))
                      for _ in range(rng.randint(0, deg))]
                a = CycScalar(mode, cs)
                assert CycScalar.parse(a.render(), mode) == a

    def test_parse_negative_exponent(self):
        m = root(5)
        assert CycScalar.parse("q^-1", m) == CycScalar.q(m) ** 4
