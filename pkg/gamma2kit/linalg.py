from __future__ import annotations

from typing import Iterable

import galois
import numpy as np
import numpy.typing as npt
import sympy

from gamma2kit.errors import DimensionError, NotUnimodularError

IntMatrix = npt.NDArray[np.object_]
GF2 = galois.GF2


def int_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    """Read-only matrix of Python ints; entries never wrap."""
    data = [[int(value) for value in row] for row in rows]
    if not data or any(len(row) != len(data[0]) for row in data):
        raise DimensionError("matrix rows must be nonempty and of equal length")
    array = np.empty((len(data), len(data[0])), dtype=object)
    for r, row in enumerate(data):
        for c, value in enumerate(row):
            array[r, c] = value
    array.flags.writeable = False
    return array


def freeze(array: npt.NDArray) -> IntMatrix:
    return int_matrix(array.tolist())


def identity(n: int) -> IntMatrix:
    return int_matrix([[1 if r == c else 0 for c in range(n)] for r in range(n)])


def matmul(left: IntMatrix, right: IntMatrix) -> IntMatrix:
    if left.shape[1] != right.shape[0]:
        raise DimensionError(f"cannot multiply {left.shape} by {right.shape}")
    product = np.dot(left, right)
    product.flags.writeable = False
    return product


def matrix_power(matrix: IntMatrix, exponent: int) -> IntMatrix:
    if exponent < 0:
        return matrix_power(exact_inverse(matrix), -exponent)
    return freeze(np.linalg.matrix_power(matrix, exponent))


def equal(left: IntMatrix, right: IntMatrix) -> bool:
    return left.shape == right.shape and bool(np.all(left == right))


def is_identity(matrix: IntMatrix) -> bool:
    rows, cols = matrix.shape
    return rows == cols and equal(matrix, identity(rows))


def determinant(matrix: IntMatrix) -> int:
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionError(f"determinant of a non-square {matrix.shape} matrix")
    return int(sympy.Matrix(matrix.tolist()).det(method="bareiss"))


def exact_inverse(matrix: IntMatrix) -> IntMatrix:
    """Inverse over the integers; only unimodular matrices qualify."""
    if abs(determinant(matrix)) != 1:
        raise NotUnimodularError("matrix is not invertible over the integers")
    inverse = sympy.Matrix(matrix.tolist()).inv()
    return int_matrix([[int(inverse[r, c]) for c in range(inverse.cols)] for r in range(inverse.rows)])


def congruent_to_identity_mod2(matrix: IntMatrix) -> bool:
    rows, cols = matrix.shape
    if rows != cols:
        return False
    return all((matrix[r, c] - (1 if r == c else 0)) % 2 == 0 for r in range(rows) for c in range(cols))


def reduce_mod2(matrix: IntMatrix) -> galois.FieldArray:
    return GF2(np.array([[value % 2 for value in row] for row in matrix.tolist()], dtype=np.int64))


def to_decimal_rows(matrix: IntMatrix | galois.FieldArray) -> list[list[str]]:
    return [[str(int(value)) for value in row] for row in np.asarray(matrix).tolist()]


def gf2_rank(rows: galois.FieldArray) -> int:
    if rows.size == 0:
        return 0
    return int(np.linalg.matrix_rank(rows))


def gf2_pivot_columns(columns: galois.FieldArray) -> tuple[int, ...]:
    """Indices of the earliest linearly independent columns."""
    if columns.size == 0:
        return ()
    reduced = columns.row_reduce()
    pivots = []
    for row in reduced:
        nonzero = np.flatnonzero(np.asarray(row))
        if nonzero.size:
            pivots.append(int(nonzero[0]))
    return tuple(pivots)


def gf2_in_span(vector: galois.FieldArray, rows: galois.FieldArray) -> bool:
    base_rank = gf2_rank(rows)
    augmented = GF2(np.vstack([np.asarray(rows), np.asarray(vector).reshape(1, -1)]))
    return gf2_rank(augmented) == base_rank
