"""Small exact linear algebra over Fraction.

Matrices are tuples of row tuples. Dimensions here never exceed a few dozen,
so plain Gauss-Jordan elimination is fast enough and keeps everything exact.
"""
from __future__ import annotations

from fractions import Fraction as Q
from typing import Sequence

Matrix = Sequence[Sequence]
Vector = Sequence


class SingularMatrixError(ArithmeticError):
    pass


def transpose(m: Matrix) -> tuple[tuple, ...]:
    return tuple(zip(*m))


def matvec(m: Matrix, v: Vector) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def matmul(a: Matrix, b: Matrix) -> tuple[tuple, ...]:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def dot(u: Vector, v: Vector):
    return sum(a * b for a, b in zip(u, v))


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def columns_to_matrix(cols: Sequence[Vector]) -> tuple[tuple, ...]:
    """Matrix whose j-th column is cols[j]."""
    return transpose(cols)


def det_int(m: Matrix) -> int:
    """Determinant of an integer matrix by fraction-free Bareiss elimination."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _row_reduce(rows: list[list[Q]], ncols: int) -> list[int]:
    """In-place reduced row echelon form over the first ncols columns.

    Returns the pivot column of each nonzero row, in order.
    """
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(m: Matrix) -> int:
    rows = [[Q(x) for x in row] for row in m]
    if not rows:
        return 0
    return len(_row_reduce(rows, len(rows[0])))


def inverse(m: Matrix) -> tuple[tuple[Q, ...], ...]:
    n = len(m)
    rows = [[Q(x) for x in row] + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    if len(_row_reduce(rows, n)) < n:
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


def solve_columns(cols: Sequence[Vector], target: Vector) -> tuple[Q, ...] | None:
    """Coefficients c with sum_j c_j cols[j] == target, or None if no solution.

    The columns must be linearly independent; the system may be overdetermined.
    """
    k = len(cols)
    n = len(target)
    rows = [[Q(cols[j][i]) for j in range(k)] + [Q(target[i])] for i in range(n)]
    pivots = _row_reduce(rows, k)
    if len(pivots) < k:
        raise SingularMatrixError("columns are linearly dependent")
    if any(row[k] != 0 for row in rows[k:]):
        return None
    return tuple(rows[i][k] for i in range(k))
