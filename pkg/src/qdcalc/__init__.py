"""Exact Z_N-graded q-differential calculus at primitive roots of unity."""

from .scalars import (
    GENERIC,
    CycScalar,
    Mode,
    ModeError,
    QPolynomial,
    cyclotomic_polynomial,
    q_binomial,
    q_factorial,
    q_integer,
    root,
)

__version__ = "0.1.0"

__all__ = [
    "GENERIC",
    "CycScalar",
    "Mode",
    "ModeError",
    "QPolynomial",
    "cyclotomic_polynomial",
    "q_binomial",
    "q_factorial",
    "q_integer",
    "root",
    "__version__",
]
