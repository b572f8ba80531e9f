# ABOUTME: Exact linear algebra over Q for small dense matrices
# ABOUTME: Determinants and incremental detection of the first linear dependence

from collections.abc import Sequence
from fractions import Fraction


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """
    Determinant by fraction-exact Gaussian elimination.

    Args:
        rows: Square matrix given as a sequence of rows

    Returns:
        The exact determinant
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant of a non-square matrix")
    a = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            factor = a[r][col] / pv
            if factor:
                row_r, row_c = a[r], a[col]
                for c in range(col, n):
                    row_r[c] -= factor * row_c[c]
    return det


class IncrementalEchelon:
    """
    Row echelon basis that grows one vector at a time.

    Each stored row remembers how it is written in terms of the original
    vectors, so the first vector that falls into the span of its predecessors
    yields the coefficients of that dependence.
    """

    def __init__(self):
        self._rows: list[tuple[int, list[Fraction], list[Fraction]]] = []
        self._count = 0

    def add(self, vector: Sequence[Fraction]) -> list[Fraction] | None:
        """
        Adds v_k. Returns c with v_k = sum(c[i] * v_i for i < k) if v_k is
        dependent on the earlier vectors, otherwise None.
        """
        k = self._count
        self._count += 1
        w = [Fraction(v) for v in vector]
        combo = [Fraction(0)] * k + [Fraction(1)]
        for pivot, row, row_combo in self._rows:
            if w[pivot] != 0:
                factor = w[pivot] / row[pivot]
                for i in range(pivot, len(w)):
                    w[i] -= factor * row[i]
                for i, c in enumerate(row_combo):
                    combo[i] -= factor * c
        lead = next((i for i, v in enumerate(w) if v != 0), None)
        if lead is None:
            return [-c for c in combo[:k]]
        self._rows.append((lead, w, combo))
        return None


def first_linear_dependence(vectors) -> list[Fraction] | None:
    """Coefficients expressing the first dependent vector through its predecessors."""
    echelon = IncrementalEchelon()
    for v in vectors:
        dep = echelon.add(v)
        if dep is not None:
            return dep
    return None
