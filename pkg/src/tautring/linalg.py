"""Exact incremental row echelon form over the rationals."""
from __future__ import annotations

from fractions import Fraction


def _sparse(row) -> dict:
    if isinstance(row, dict):
        return {k: Fraction(v) for k, v in row.items() if v}
    return {i: Fraction(v) for i, v in enumerate(row) if v}


class RowSpace:
    """Span of rows added so far, with bookkeeping of linear combinations.

    Each stored row remembers how it is built from the original rows that
    were added (identified by their tags), so :meth:`reduce` can express a
    vector in terms of the tagged inputs.
    """

    def __init__(self):
        self._rows = []     # (pivot, row, combination)

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, row):
        """Return ``(residual, combination)`` with ``row = Σ c_t·input_t + residual``."""
        row = _sparse(row)
        comb = {}
        for p, r, c in self._rows:
            x = row.get(p)
            if not x:
                continue
            for k, v in r.items():
                nv = row.get(k, 0) - x * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            for t, v in c.items():
                nv = comb.get(t, 0) + x * v
                if nv:
                    comb[t] = nv
                else:
                    comb.pop(t, None)
        return row, comb

    def add(self, row, tag) -> bool:
        """Insert ``row`` unless it is already in the span; report whether added."""
        res, comb = self.reduce(row)
        if not res:
            return False
        p = min(res)
        x = res[p]
        r = {k: v / x for k, v in res.items()}
        c = {t: -v / x for t, v in comb.items()}
        c[tag] = c.get(tag, 0) + 1 / x
        self._rows.append((p, r, c))
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)[0]


def rank(matrix) -> int:
    rs = RowSpace()
    for i, row in enumerate(matrix):
        rs.add(row, i)
    return rs.rank
