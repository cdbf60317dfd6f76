"""Exact rational linear algebra: reduced row echelon form, affine solution
descriptions and row-space comparison for small systems.

Matrices are lists of lists of Fractions.  Everything here is tiny (at most
~20 columns), so plain Gaussian elimination with exact pivoting is enough.
"""
from __future__ import annotations

from fractions import Fraction


def rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column indices.

    The input is not modified.  Zero rows are kept at the bottom.
    """
    m = [[Fraction(x) for x in row] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def nonzero_rows(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    return [row for row in matrix if any(x != 0 for x in row)]


def same_affine_solutions(
    system_a: tuple[list[list[Fraction]], list[Fraction]],
    system_b: tuple[list[list[Fraction]], list[Fraction]],
) -> bool:
    """True iff the two systems A x = b define the same affine solution set,
    checked by comparing RREFs of the augmented matrices."""
    def canonical(system):
        mat, rhs = system
        aug = [list(row) + [c] for row, c in zip(mat, rhs)]
        reduced, _ = rref(aug)
        return nonzero_rows(reduced)

    return canonical(system_a) == canonical(system_b)


class AffineSolver:
    """Parametric description of the solutions of A x = b.

    After construction, `pivot_cols` and `free_cols` partition the columns;
    `solve_from_free` evaluates the pivot coordinates given values for the
    free ones, returning None when the fixed equations are violated.
    """

    def __init__(self, matrix: list[list[Fraction]], rhs: list[Fraction]):
        aug = [list(row) + [Fraction(c)] for row, c in zip(matrix, rhs)]
        reduced, pivots = rref(aug)
        ncols = len(matrix[0]) if matrix else 0
        self.ncols = ncols
        self.inconsistent = any(
            all(row[c] == 0 for c in range(ncols)) and row[ncols] != 0
            for row in reduced
        )
        self.rows = [row for row in nonzero_rows(reduced) if not all(
            row[c] == 0 for c in range(ncols))]
        self.pivot_cols = [c for c in pivots if c < ncols]
        self.free_cols = [c for c in range(ncols) if c not in self.pivot_cols]

    def solve_from_free(self, free_values: dict[int, Fraction]) -> list[Fraction] | None:
        if self.inconsistent:
            return None
        x = [Fraction(0)] * self.ncols
        for c, v in free_values.items():
            x[c] = Fraction(v)
        for row, pc in zip(self.rows, self.pivot_cols):
            value = row[self.ncols]
            for c in self.free_cols:
                if row[c] != 0:
                    value -= row[c] * x[c]
            x[pc] = value
        return x
