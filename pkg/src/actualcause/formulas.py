"""Causal formulas: an optional intervention prefix over a boolean matrix.

A formula is ``[X1 := x1, ...] matrix`` where the matrix is a boolean
combination of atoms ``(V = v)`` about endogenous variables.  The plain
matrix form is the special case with no prefix.  Atoms that mention an
unknown variable or a value outside its range are rejected up front;
"not defined" is an error, never just false.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OutOfRangeError, UnknownVariableError
from .rationals import as_value, format_rational


@dataclass(frozen=True)
class Atom:
    var: str
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_value(self.value))


@dataclass(frozen=True)
class Not:
    operand: "Matrix"


@dataclass(frozen=True)
class And:
    left: "Matrix"
    right: "Matrix"


@dataclass(frozen=True)
class Or:
    left: "Matrix"
    right: "Matrix"


Matrix = Atom | Not | And | Or


@dataclass(frozen=True)
class Formula:
    """``intervention`` is None for a bare matrix, else ((name, value), ...)."""

    matrix: Matrix
    intervention: tuple | None = None

    def __post_init__(self):
        if self.intervention is not None:
            norm = tuple((n, as_value(v)) for n, v in self.intervention)
            names = [n for n, _ in norm]
            if len(set(names)) != len(names):
                dup = next(n for n in names if names.count(n) > 1)
                raise ValueError(f"duplicate intervention target {dup}")
            object.__setattr__(self, "intervention", norm)


def atom(var, value) -> Atom:
    return Atom(var, as_value(value))


def matrix_variables(matrix) -> set[str]:
    if isinstance(matrix, Atom):
        return {matrix.var}
    if isinstance(matrix, Not):
        return matrix_variables(matrix.operand)
    if isinstance(matrix, (And, Or)):
        return matrix_variables(matrix.left) | matrix_variables(matrix.right)
    raise TypeError(f"not a matrix: {matrix!r}")


def check_matrix(matrix, signature) -> None:
    """Raise unless every atom is an in-range claim about an endogenous var."""
    if isinstance(matrix, Atom):
        rng = signature.endogenous_ranges.get(matrix.var)
        if rng is None:
            raise UnknownVariableError(
                f"formula mentions unknown endogenous variable {matrix.var}"
            )
        if matrix.value not in rng:
            raise OutOfRangeError(
                f"value {format_rational(matrix.value)} is not in the range "
                f"of {matrix.var}"
            )
    elif isinstance(matrix, Not):
        check_matrix(matrix.operand, signature)
    elif isinstance(matrix, (And, Or)):
        check_matrix(matrix.left, signature)
        check_matrix(matrix.right, signature)
    else:
        raise TypeError(f"not a matrix: {matrix!r}")


def evaluate_matrix(matrix, solution) -> bool:
    """Truth of ``matrix`` in a solved assignment name -> Fraction."""
    if isinstance(matrix, Atom):
        return solution[matrix.var] == matrix.value
    if isinstance(matrix, Not):
        return not evaluate_matrix(matrix.operand, solution)
    if isinstance(matrix, And):
        return evaluate_matrix(matrix.left, solution) and evaluate_matrix(
            matrix.right, solution
        )
    if isinstance(matrix, Or):
        return evaluate_matrix(matrix.left, solution) or evaluate_matrix(
            matrix.right, solution
        )
    raise TypeError(f"not a matrix: {matrix!r}")
