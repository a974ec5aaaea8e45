"""Exact rational linear algebra on sparse rows (dict column -> Fraction)."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

SparseVec = dict


def rank(rows: Iterable[Mapping[Hashable, Fraction]]) -> int:
    return len(RowEchelon(rows).pivots)


class RowEchelon:
    """Incremental row reduction; ``add`` reports whether a row was independent."""

    def __init__(self, rows: Iterable[Mapping[Hashable, Fraction]] = ()):
        self.pivots: dict[Hashable, dict] = {}
        self.order: list[Hashable] = []
        for r in rows:
            self.add(r)

    def reduce(self, row: Mapping[Hashable, Fraction]) -> dict:
        r = {k: Fraction(v) for k, v in row.items() if v}
        for p in self.order:
            c = r.get(p)
            if c:
                for k, v in self.pivots[p].items():
                    nv = r.get(k, 0) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        return r

    def add(self, row: Mapping[Hashable, Fraction]) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        p = min(r, key=_sort_key)
        c = r[p]
        r = {k: v / c for k, v in r.items()}
        # keep earlier pivot rows reduced against the new pivot
        for q in self.order:
            row_q = self.pivots[q]
            f = row_q.get(p)
            if f:
                for k, v in r.items():
                    nv = row_q.get(k, 0) - f * v
                    if nv:
                        row_q[k] = nv
                    else:
                        row_q.pop(k, None)
        self.pivots[p] = r
        self.order.append(p)
        return True


def _sort_key(k):
    return (0, k) if isinstance(k, int) else (1, repr(k))


def solve_columns(columns: Mapping[Hashable, Mapping[Hashable, Fraction]], target: Mapping[Hashable, Fraction]):
    """Find coefficients x with sum_c x[c] * columns[c] == target exactly.

    Returns ``None`` when the target is outside the column span.  The solution
    is unique when the columns are independent.
    """
    return ColumnSolver(columns).solve(target)


class ColumnSolver:
    """Precomputed solver for ``A x = b`` with fixed sparse columns of ``A``."""

    def __init__(self, columns: Mapping[Hashable, Mapping[Hashable, Fraction]]):
        # augment each column with a tag so reduction tracks the combination
        self._ech = RowEchelon()
        self.independent = True
        for c, col in columns.items():
            row = {("v", k): Fraction(v) for k, v in col.items() if v}
            row[("x", c)] = Fraction(1)
            if not self._ech.add(row):
                self.independent = False
        v_pivots = [p for p in self._ech.order if p[0] == "v"]
        if len(v_pivots) != len(columns):
            self.independent = False

    def solve(self, target: Mapping[Hashable, Fraction]):
        row = {("v", k): Fraction(v) for k, v in target.items() if v}
        r = self._ech.reduce(row)
        if any(k[0] == "v" for k in r):
            return None
        # remainder is -sum x_c tags
        return {k[1]: -v for k, v in r.items()}


def det(matrix) -> Fraction:
    """Exact determinant of a dense square matrix."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return out
