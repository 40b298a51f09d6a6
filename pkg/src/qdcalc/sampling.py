"""Deterministic random generators for property checks.

Everything is driven by a seeded random.Random so the CLI verification
reports are reproducible byte for byte.  Coefficients are kept small
(numerators bounded by 9) to keep exact arithmetic quick.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .scalars import GENERIC, CycScalar, Mode, cyclotomic_polynomial
from .symbolic import SymScalar
from .graded_matrix import GradedMatrix, zero_matrix


class Sampler:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)

    def integer(self, nonzero: bool = False) -> int:
        while True:
            num = self.rng.randint(-9, 9)
            if num or not nonzero:
                return num

    def fraction(self, nonzero: bool = False) -> Fraction:
        return Fraction(self.integer(nonzero), self.rng.choice((1, 1, 2, 3)))

    def scalar(self, mode: Mode, nonzero: bool = False) -> CycScalar:
        deg = 5 if mode.n is None else cyclotomic_polynomial(mode.n).degree
        while True:
            cs = [self.integer() for _ in range(self.rng.randint(1, deg))]
            s = CycScalar(mode, cs)
            if s or not nonzero:
                return s

    def matrix(self, n: int, mode: Mode) -> GradedMatrix:
        return GradedMatrix([[self.scalar(mode) for _ in range(n)] for _ in range(n)])

    def homogeneous_matrix(self, n: int, mode: Mode, degree: int,
                           nonzero: bool = True) -> GradedMatrix:
        while True:
            m = zero_matrix(n, mode)
            rows = [list(r) for r in m.rows]
            for i in range(n):
                rows[i][(i + degree) % n] = self.scalar(mode)
            out = GradedMatrix(rows)
            if out or not nonzero:
                return out

    def invertible_diagonal(self, n: int, mode: Mode) -> GradedMatrix:
        rows = [list(r) for r in zero_matrix(n, mode).rows]
        for i in range(n):
            rows[i][i] = self.scalar(mode, nonzero=True)
        return GradedMatrix(rows)

    def coordinate_polynomial(self, d: int, mode: Mode, terms: int = 3,
                              max_power: int = 2) -> SymScalar:
        """Small polynomial in the coordinates x1..xD."""
        out = SymScalar.zero(mode)
        for _ in range(self.rng.randint(1, terms)):
            mono = SymScalar.one(mode)
            for k in range(1, d + 1):
                e = self.rng.randint(0, max_power)
                if e:
                    mono = mono * SymScalar.variable(f"x{k}", mode) ** e
            out = out + CycScalar.rational(self.integer(), mode) * mono
        return out
