"""Exact sparse row reduction over the integers.

Rows are dicts ``column -> int``. The echelon is kept fully reduced: every pivot
column appears in exactly one row, and the pivot of a row is its smallest
column. Rows are stored primitive (content 1, positive pivot), so no fractions
appear until a caller asks for a normal form or a kernel vector.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = abs(reduce(gcd, row.values()))
    if row[min(row)] < 0:
        g = -g
    if g != 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(a: int, x: dict[int, int], b: int, y: Mapping[int, int]) -> dict[int, int]:
    """Return ``a*x - b*y`` without zero entries."""
    out = {c: a * v for c, v in x.items()} if a != 1 else dict(x)
    for c, v in y.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self):
        self.rows: dict[int, dict[int, int]] = {}
        self._containing: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def is_pivot(self, col: int) -> bool:
        return col in self.rows

    def _index(self, pivot: int, row: dict[int, int]):
        for c in row:
            self._containing.setdefault(c, set()).add(pivot)

    def _unindex(self, pivot: int, row: dict[int, int]):
        for c in row:
            self._containing[c].discard(pivot)

    def reduce(self, vec: Mapping[int, int]) -> tuple[dict[int, int], int]:
        """Return ``(w, s)`` with ``s * vec - w`` in the row space and no pivot column in ``w``."""
        v = {c: x for c, x in vec.items() if x}
        scale = 1
        for c in [c for c in v if c in self.rows]:
            b = v.get(c)
            if not b:
                continue
            row = self.rows[c]
            a = row[c]
            v = _combine(a, v, b, row)
            scale *= a
        if v and scale != 1:
            g = reduce(gcd, v.values(), scale)
            if g > 1:
                v = {c: x // g for c, x in v.items()}
                scale //= g
        return v, scale

    def add(self, vec: Mapping[int, int]) -> bool:
        """Insert a row; returns ``False`` if it was already in the span."""
        w, _ = self.reduce(vec)
        if not w:
            return False
        w = _primitive(w)
        p = min(w)
        a = w[p]
        for q in sorted(self._containing.get(p, ())):
            row = self.rows[q]
            self._unindex(q, row)
            new = _primitive(_combine(a, row, row[p], w))
            self.rows[q] = new
            self._index(q, new)
        self.rows[p] = w
        self._index(p, w)
        return True

    def extend(self, vecs: Iterable[Mapping[int, int]]) -> int:
        return sum(self.add(v) for v in vecs)

    def normal_form(self, vec: Mapping[int, int]) -> dict[int, Fraction]:
        """Unique representative of ``vec`` modulo the row space, in non-pivot columns."""
        w, s = self.reduce(vec)
        return {c: Fraction(x, s) for c, x in w.items()}

    def kernel(self, ncols: int) -> list[dict[int, Fraction]]:
        """Kernel basis of the row space on columns ``0..ncols-1``.

        One vector per free column ``f`` with ``x_f = 1``, ordered by ``f``.
        """
        basis = []
        for f in range(ncols):
            if f in self.rows:
                continue
            vec = {f: Fraction(1)}
            for p in self._containing.get(f, ()):
                row = self.rows[p]
                vec[p] = Fraction(-row[f], row[p])
            basis.append(dict(sorted(vec.items())))
        return basis


def nullity(rows: Iterable[Mapping[int, int]], ncols: int) -> int:
    e = Echelon()
    e.extend(rows)
    return ncols - e.rank
