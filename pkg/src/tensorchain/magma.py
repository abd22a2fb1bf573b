"""Cayley tables of finite magmas and exhaustive law checks over them.

A :class:`MagmaTable` is built by calling the binary operation on every
ordered pair of elements; entries whose result falls outside the element
list are stored as ``-1`` and make the table non-closed.  Law checks are
vectorised row by row so that full triple scans stay practical for a few
thousand elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

OUTSIDE = -1


@dataclass(frozen=True)
class LawReport:
    idempotent: bool
    commutative: bool
    associativity_counterexample: Optional[tuple] = None
    elements: int = 0

    @property
    def associative(self) -> bool:
        return self.associativity_counterexample is None


class MagmaTable:
    def __init__(self, elements: Sequence, table: np.ndarray):
        self.elements = list(elements)
        self.table = table
        self.index = {e: i for i, e in enumerate(self.elements)}

    @classmethod
    def from_operation(cls, elements: Sequence, op: Callable) -> "MagmaTable":
        elements = list(elements)
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("magma elements must be distinct")
        n = len(elements)
        table = np.empty((n, n), dtype=np.int32)
        get = index.get
        for i, a in enumerate(elements):
            row = table[i]
            for j, b in enumerate(elements):
                row[j] = get(op(a, b), OUTSIDE)
        return cls(elements, table)

    @classmethod
    def from_rows(cls, elements: Sequence, rows: Sequence[Sequence]) -> "MagmaTable":
        """Table given as rows of element values: ``rows[i][j] = e_i * e_j``."""
        index = {e: i for i, e in enumerate(elements)}
        table = np.array([[index.get(x, OUTSIDE) for x in row] for row in rows], dtype=np.int32)
        if table.shape != (len(elements), len(elements)):
            raise ValueError("Cayley table must be square")
        return cls(elements, table)

    def __len__(self):
        return len(self.elements)

    def op(self, a, b):
        k = self.table[self.index[a], self.index[b]]
        return None if k == OUTSIDE else self.elements[k]

    @property
    def closed(self) -> bool:
        return not (self.table == OUTSIDE).any()

    def is_idempotent(self) -> bool:
        return bool((np.diagonal(self.table) == np.arange(len(self))).all())

    def is_commutative(self) -> bool:
        return bool((self.table == self.table.T).all())

    def find_associativity_counterexample(self, order: Optional[Sequence[int]] = None):
        """First ``(a, b, c)`` with ``(a*b)*c != a*(b*c)``, scanning ``a`` in ``order``.

        Requires a closed table.  Returns element triples, or None when the
        table is associative.
        """
        if not self.closed:
            raise ValueError("associativity is only defined on a closed table")
        t = self.table
        rows = range(len(self)) if order is None else order
        for a in rows:
            ab = t[a]                # a*b for every b
            left = t[ab]              # left[b, c] = (a*b)*c
            right = ab[t]             # right[b, c] = a*(b*c)
            bad = np.flatnonzero(left != right)
            if bad.size:
                b, c = divmod(int(bad[0]), len(self))
                e = self.elements
                return (e[a], e[b], e[c])
        return None

    def is_associative(self) -> bool:
        return self.find_associativity_counterexample() is None

    def laws(self, order: Optional[Sequence[int]] = None) -> LawReport:
        return LawReport(
            idempotent=self.is_idempotent(),
            commutative=self.is_commutative(),
            associativity_counterexample=self.find_associativity_counterexample(order),
            elements=len(self),
        )

    def compatibility_violation(self, labels: Sequence):
        """A witness that the equivalence ``label(x) == label(y)`` is not a congruence.

        Returns ``(a, b, c, side)`` with ``label(a) == label(b)`` but
        ``label(c*a) != label(c*b)`` (side ``"left"``) or
        ``label(a*c) != label(b*c)`` (side ``"right"``); None if compatible.
        """
        if not self.closed:
            raise ValueError("compatibility is only defined on a closed table")
        codes = {}
        cls = np.array([codes.setdefault(lab, len(codes)) for lab in labels], dtype=np.int64)
        # representative of each class: first element carrying the label
        rep_of_code = np.full(len(codes), -1, dtype=np.int64)
        for i in range(len(cls) - 1, -1, -1):
            rep_of_code[cls[i]] = i
        rep = rep_of_code[cls]
        result_cls = cls[self.table]  # result_cls[x, y] = class of x*y
        e = self.elements
        # left: columns are the varying argument a, rows are c
        left_bad = np.argwhere(result_cls != result_cls[:, rep])
        if left_bad.size:
            c, a = (int(v) for v in left_bad[0])
            return (e[a], e[int(rep[a])], e[c], "left")
        right_bad = np.argwhere(result_cls != result_cls[rep, :])
        if right_bad.size:
            a, c = (int(v) for v in right_bad[0])
            return (e[a], e[int(rep[a])], e[c], "right")
        return None
