"""Exact integer determinants and Laplacians for spanning-tree counting."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination.

    Every intermediate value is an integer and each division is exact, so
    the result is exact for arbitrarily large entries.  The empty matrix
    has determinant 1.
    """
    m = [[int(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class Laplacian:
    """Integer Laplacian of a simple graph; rows follow ``order``."""

    order: tuple
    matrix: tuple

    @classmethod
    def of_graph(cls, nodes: Sequence, edges: Sequence[tuple]) -> "Laplacian":
        order = tuple(nodes)
        pos = {v: i for i, v in enumerate(order)}
        n = len(order)
        a = [[0] * n for _ in range(n)]
        for u, v in edges:
            i, j = pos[u], pos[v]
            if i == j:
                raise ValueError("Laplacian of a graph with a self-loop")
            if a[i][j]:
                raise ValueError("Laplacian of a multigraph")
            a[i][j] = a[j][i] = -1
            a[i][i] += 1
            a[j][j] += 1
        return cls(order, tuple(tuple(row) for row in a))

    def reduced(self, removed_index: int) -> tuple:
        """The matrix with row and column ``removed_index`` deleted."""
        n = len(self.order)
        if not 0 <= removed_index < n:
            raise ValueError(f"removed_index {removed_index} out of range for {n} rows")
        return tuple(
            tuple(x for j, x in enumerate(row) if j != removed_index)
            for i, row in enumerate(self.matrix)
            if i != removed_index
        )

    def tree_count(self, removed_index: int = 0) -> int:
        return bareiss_determinant(self.reduced(removed_index))
