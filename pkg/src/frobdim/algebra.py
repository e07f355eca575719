"""The bound path algebra kQ/I over the rationals.

Paths are vertex tuples: ``(v,)`` is the stationary path at ``v`` and
``(v0, v1, ..., vm)`` runs along the arrows ``v0 -> v1 -> ... -> vm``. Products
concatenate left to right, so ``x * y`` is nonzero only when ``x`` ends where
``y`` starts.

The quotient is computed by linear algebra rather than rewriting, because
commutativity relations may relate paths of different lengths. Paths containing
a zero relation are discarded up front; the remaining paths up to a truncation
length ``T`` span a space in which the ideal is generated by ``u r v`` for
commutativity relations ``r``. Once every path of length ``L + 1`` lies in that
span (checked with ``T = 2(L + 1)``), all longer paths are in the ideal and the
basis is read off from the non-pivot paths of length at most ``L``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from . import kernels
from .linalg import Echelon
from .quiver import Path, QuiverError
from .relations import BoundQuiver

AlgebraElement = dict  # basis index -> Fraction

# Hard cap on the number of paths enumerated below the truncation length.
MAX_PATHS = 400_000


class NotAdmissible(QuiverError):
    """The relations do not cut the path algebra down to finite dimension."""


def path_length(p: Path) -> int:
    return len(p) - 1


def concat(p: Path, q: Path) -> Path | None:
    return p + q[1:] if p[-1] == q[0] else None


def path_key(p: Path) -> tuple:
    """Total order on paths: by length, then lexicographically on vertices."""
    return (len(p), p)


class _Monomials:
    """Membership test for paths avoiding every zero-relation subpath."""

    def __init__(self, zeros):
        self.zeros = set(zeros)
        self.lengths = sorted({len(z) for z in self.zeros})

    def suffix_ok(self, p: Path) -> bool:
        return not any(n <= len(p) and p[-n:] in self.zeros for n in self.lengths)

    def ok(self, p: Path) -> bool:
        return not any(p[i:i + n] in self.zeros
                       for n in self.lengths for i in range(len(p) - n + 1))


def _paths_up_to(bq: BoundQuiver, mono: _Monomials, T: int) -> list[Path]:
    q = bq.quiver
    level = [(v,) for v in q.vertices]
    out = list(level)
    for _ in range(T):
        nxt = []
        for p in level:
            for w in q.successors(p[-1]):
                ext = p + (w,)
                if mono.suffix_ok(ext):
                    nxt.append(ext)
        out += nxt
        if len(out) > MAX_PATHS:
            raise NotAdmissible(f"more than {MAX_PATHS} paths below length {T}")
        if not nxt:
            break
        level = nxt
    return out


def _ideal_rows(bq, mono, paths, col, T):
    """Vectors ``u r v`` (terms longer than ``T`` or hitting a zero relation dropped)."""
    by_target = defaultdict(list)
    by_source = defaultdict(list)
    for p in paths:
        by_target[p[-1]].append(p)
        by_source[p[0]].append(p)
    for rel in bq.relations:
        if rel.kind != "comm":
            continue
        first, second = rel.first, rel.second
        shortest = min(len(first), len(second)) - 1
        for u in by_target[first[0]]:
            lu = path_length(u)
            if lu + shortest > T:
                continue
            for v in by_source[first[-1]]:
                if lu + path_length(v) + shortest > T:
                    continue
                row = {}
                for sign, mid in ((1, first), (-1, second)):
                    term = u + mid[1:] + v[1:]
                    if path_length(term) <= T and mono.ok(term):
                        c = col[term]
                        row[c] = row.get(c, 0) + sign
                row = {c: x for c, x in row.items() if x}
                if row:
                    yield row


@dataclass
class PathAlgebra:
    """Finite-dimensional quotient of a path algebra by an admissible ideal.

    Attributes
    ----------
    bound : BoundQuiver
    basis : list of Path
        Representative of each basis class, the smallest path in its class.
    source, target : numpy.ndarray
        Endpoints of each basis class.
    idempotents : dict
        Vertex to basis index of its stationary path.
    mult_idx, mult_coef : numpy.ndarray
        ``basis[i] * basis[j] = mult_coef[i, j] * basis[mult_idx[i, j]]``, with
        ``mult_idx = -1`` for a zero product.
    truncation : int
        ``L``: every path longer than this is zero.
    """

    bound: BoundQuiver
    basis: list
    source: np.ndarray
    target: np.ndarray
    idempotents: dict
    mult_idx: np.ndarray
    mult_coef: np.ndarray
    truncation: int
    _echelon: Echelon = field(repr=False)
    _col: dict = field(repr=False)
    _col_to_basis: dict = field(repr=False)
    _mono: _Monomials = field(repr=False)
    _index: dict = field(default_factory=dict, repr=False)
    _nonzero: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {p: i for i, p in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def quiver(self):
        return self.bound.quiver

    def index(self, p: Path) -> int:
        """Basis index of a representative path."""
        return self._index[tuple(p)]

    def reduce_path(self, p: Path) -> AlgebraElement:
        """Normal form of a path as a combination of basis classes."""
        p = tuple(p)
        if not self.quiver.is_path(p):
            raise QuiverError(f"{p} is not a path")
        if path_length(p) > self.truncation or not self._mono.ok(p):
            return {}
        nf = self._echelon.normal_form({self._col[p]: 1})
        return {self._col_to_basis[c]: x for c, x in nf.items()}

    def is_zero(self, p: Path) -> bool:
        return not self.reduce_path(p)

    def element(self, p: Path) -> AlgebraElement:
        return self.reduce_path(p)

    def nonzero_paths(self) -> list[Path]:
        """Every path whose class in the algebra is nonzero."""
        if self._nonzero is None:
            self._nonzero = [p for p in self._col
                             if path_length(p) <= self.truncation and self.reduce_path(p)]
            self._nonzero.sort(key=path_key)
        return self._nonzero

    def nilpotency_index(self) -> int:
        """Smallest ``r`` such that every path of length ``r`` is zero."""
        return max(path_length(p) for p in self.nonzero_paths()) + 1


def build_algebra(bq: BoundQuiver) -> PathAlgebra:
    q = bq.quiver
    mono = _Monomials(r.first for r in bq.relations if r.kind == "zero")
    n = max(len(q), 1)
    L = n
    while L <= 8 * n:
        T = 2 * (L + 1)
        paths = _paths_up_to(bq, mono, T)
        ordered = sorted(paths, key=path_key, reverse=True)
        col = {p: i for i, p in enumerate(ordered)}
        ech = Echelon()
        ech.extend(_ideal_rows(bq, mono, paths, col, T))
        if all(not ech.reduce({col[p]: 1})[0] for p in paths if path_length(p) == L + 1):
            return _finish(bq, mono, paths, col, ech, L)
        L *= 2
    raise NotAdmissible(f"paths of length {L // 2 + 1} are not all in the ideal")


def _finish(bq, mono, paths, col, ech, L) -> PathAlgebra:
    for p in paths:
        if path_length(p) > L:
            ech.add({col[p]: 1})
    basis = sorted((p for p in paths if not ech.is_pivot(col[p])), key=path_key)
    col_to_basis = {col[p]: i for i, p in enumerate(basis)}
    d = len(basis)
    source = np.array([p[0] for p in basis], dtype=np.int64)
    target = np.array([p[-1] for p in basis], dtype=np.int64)
    idem = {p[0]: i for i, p in enumerate(basis) if len(p) == 1}
    mult_idx = np.full((d, d), -1, dtype=np.int64)
    mult_coef = np.zeros((d, d), dtype=np.int64)
    for i, p in enumerate(basis):
        for j, r in enumerate(basis):
            pr = concat(p, r)
            if pr is None or path_length(pr) > L or not mono.ok(pr):
                continue
            nf = ech.normal_form({col[pr]: 1})
            if not nf:
                continue
            if len(nf) != 1:
                raise QuiverError("product of basis paths is not a multiple of a basis path")
            (c, x), = nf.items()
            if x.denominator != 1:
                raise QuiverError("non-integral structure constant")
            mult_idx[i, j] = col_to_basis[c]
            mult_coef[i, j] = int(x)
    return PathAlgebra(bq, basis, source, target, idem, mult_idx, mult_coef, L,
                       ech, col, col_to_basis, mono)


# --------------------------------------------------------------------------
# arithmetic
# --------------------------------------------------------------------------


def multiply(a: PathAlgebra, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> AlgebraElement:
    out: dict[int, Fraction] = {}
    for i, cx in x.items():
        for j, cy in y.items():
            k = a.mult_idx[i, j]
            if k >= 0:
                out[k] = out.get(k, 0) + cx * cy * int(a.mult_coef[i, j])
    return {k: Fraction(v) for k, v in sorted(out.items()) if v}


def unit(a: PathAlgebra) -> AlgebraElement:
    return {i: Fraction(1) for i in sorted(a.idempotents.values())}


def associativity_defects(a: PathAlgebra) -> int:
    """Number of basis triples with ``(xy)z != x(yz)``."""
    return int(kernels.associativity_defects(a.mult_idx, a.mult_coef))


# --------------------------------------------------------------------------
# path statistics
# --------------------------------------------------------------------------


def _check_vertex(a: PathAlgebra, v: int):
    if v not in a.quiver:
        raise QuiverError(f"unknown vertex {v}")


def dim_hom(a: PathAlgebra, i: int, j: int) -> int:
    """Number of basis classes from ``i`` to ``j``."""
    _check_vertex(a, i)
    _check_vertex(a, j)
    return int(np.count_nonzero((a.source == i) & (a.target == j)))


def longest_in(a: PathAlgebra, v: int) -> int:
    """Length of the longest nonzero path ending at ``v``."""
    _check_vertex(a, v)
    return max(path_length(p) for p in a.nonzero_paths() if p[-1] == v)


def longest_out(a: PathAlgebra, v: int) -> int:
    """Length of the longest nonzero path starting at ``v``."""
    _check_vertex(a, v)
    return max(path_length(p) for p in a.nonzero_paths() if p[0] == v)


def count_in(a: PathAlgebra, v: int) -> int:
    """Nonzero classes of positive length ending at ``v``."""
    _check_vertex(a, v)
    return int(np.count_nonzero(a.target == v)) - 1


def count_out(a: PathAlgebra, v: int) -> int:
    """Nonzero classes of positive length starting at ``v``."""
    _check_vertex(a, v)
    return int(np.count_nonzero(a.source == v)) - 1
