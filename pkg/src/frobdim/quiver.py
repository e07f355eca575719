"""Quivers: parsing, Fomin-Zelevinsky mutation, isomorphism, mutation classes.

Paths are plain tuples of vertices, ``(v,)`` being the stationary path at
``v``. This is unambiguous because every quiver handled here has at most one
arrow between any ordered pair of vertices.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from . import kernels

Path = tuple


class QuiverError(ValueError):
    """Malformed quiver text or a violated quiver invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Arrow(NamedTuple):
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Relation:
    """A zero relation ``first`` or a commutativity relation ``first - second``.

    Paths are vertex sequences; ``kind`` is ``"zero"`` or ``"comm"``.
    """

    kind: str
    first: Path
    second: Path | None = None

    def __post_init__(self):
        if self.kind == "zero":
            if self.second is not None or len(self.first) < 3:
                raise QuiverError("zero relation must be a single path of length >= 2")
        elif self.kind == "comm":
            a, b = self.first, self.second
            if b is None or len(a) < 3 or len(b) < 3:
                raise QuiverError("commutativity relation needs two paths of length >= 2")
            if a[0] != b[0] or a[-1] != b[-1]:
                raise QuiverError("commutativity paths must share source and target")
            if a == b:
                raise QuiverError("commutativity paths must differ")
        else:
            raise QuiverError(f"unknown relation kind {self.kind!r}")

    def paths(self) -> tuple[Path, ...]:
        return (self.first,) if self.second is None else (self.first, self.second)

    def relabel(self, mapping: dict[int, int]) -> "Relation":
        def move(path):
            return tuple(mapping[v] for v in path)

        return Relation(self.kind, move(self.first), None if self.second is None else move(self.second))

    def to_line(self) -> str:
        if self.kind == "zero":
            return "zero " + " ".join(map(str, self.first))
        return "comm " + " ".join(map(str, self.first)) + " = " + " ".join(map(str, self.second))


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]
    _succ: dict = field(init=False, repr=False, compare=False, hash=False)
    _pred: dict = field(init=False, repr=False, compare=False, hash=False)
    _by_pair: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(sorted(self.vertices))
        if len(set(verts)) != len(verts):
            raise QuiverError("duplicate vertex identifier")
        object.__setattr__(self, "vertices", verts)
        vset = set(verts)
        names = set()
        succ = {v: [] for v in verts}
        pred = {v: [] for v in verts}
        by_pair = {}
        for arrow in self.arrows:
            name, s, t = arrow
            if s not in vset or t not in vset:
                raise QuiverError(f"arrow {name} uses unknown vertex")
            if s == t:
                raise QuiverError(f"loop at vertex {s} (arrow {name})")
            if name in names:
                raise QuiverError(f"duplicate arrow name {name}")
            if (s, t) in by_pair:
                raise QuiverError(f"parallel arrows {s}->{t}")
            if (t, s) in by_pair:
                raise QuiverError(f"2-cycle between {s} and {t}")
            names.add(name)
            by_pair[(s, t)] = arrow
            succ[s].append(t)
            pred[t].append(s)
        ordered = tuple(sorted((Arrow(*a) for a in self.arrows), key=lambda a: (a.source, a.target)))
        object.__setattr__(self, "arrows", ordered)
        object.__setattr__(self, "_succ", {v: tuple(sorted(w)) for v, w in succ.items()})
        object.__setattr__(self, "_pred", {v: tuple(sorted(w)) for v, w in pred.items()})
        object.__setattr__(self, "_by_pair", by_pair)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None) -> "Quiver":
        """Build a quiver from ``(source, target)`` pairs, naming arrows ``a1, a2, ...``."""
        pairs = sorted(pairs)
        if vertices is None:
            vertices = {v for p in pairs for v in p}
        return cls(tuple(vertices), tuple(Arrow(f"a{i + 1}", s, t) for i, (s, t) in enumerate(pairs)))

    # -- local structure -------------------------------------------------

    def successors(self, v: int) -> tuple[int, ...]:
        return self._succ[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self._pred[v]

    def neighbours(self, v: int) -> set[int]:
        return set(self._succ[v]) | set(self._pred[v])

    def arrow(self, s: int, t: int) -> Arrow | None:
        return self._by_pair.get((s, t))

    def has_arrow(self, s: int, t: int) -> bool:
        return (s, t) in self._by_pair

    def pairs(self) -> set[tuple[int, int]]:
        return set(self._by_pair)

    def __contains__(self, v) -> bool:
        return v in self._succ

    def __len__(self) -> int:
        return len(self.vertices)

    def is_path(self, path: Path) -> bool:
        return (len(path) >= 1 and all(v in self._succ for v in path)
                and all((a, b) in self._by_pair for a, b in zip(path, path[1:])))

    def path_arrows(self, path: Path) -> list[str]:
        return [self._by_pair[(a, b)].name for a, b in zip(path, path[1:])]

    def induced(self, keep: Iterable[int]) -> "Quiver":
        """Full subquiver on ``keep``."""
        keep = set(keep)
        return Quiver(tuple(keep), tuple(a for a in self.arrows if a.source in keep and a.target in keep))

    def relabel(self, mapping: dict[int, int]) -> "Quiver":
        return Quiver(tuple(mapping[v] for v in self.vertices),
                      tuple(Arrow(a.name, mapping[a.source], mapping[a.target]) for a in self.arrows))

    def adjacency(self) -> np.ndarray:
        """0/1 matrix indexed by vertex position in ``self.vertices``."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        adj = np.zeros((len(self.vertices), len(self.vertices)), dtype=np.uint8)
        for a in self.arrows:
            adj[pos[a.source], pos[a.target]] = 1
        return adj

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            v = stack.pop()
            for w in self.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def components(self) -> list[set[int]]:
        left = set(self.vertices)
        comps = []
        while left:
            start = min(left)
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self.neighbours(v):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            comps.append(comp)
            left -= comp
        return comps

    def is_acyclic(self) -> bool:
        indeg = {v: len(self._pred[v]) for v in self.vertices}
        ready = [v for v, d in indeg.items() if d == 0]
        seen = 0
        while ready:
            v = ready.pop()
            seen += 1
            for w in self._succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        return seen == len(self.vertices)


# --------------------------------------------------------------------------
# file format
# --------------------------------------------------------------------------

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_quiver_with_relations(text: str) -> tuple[Quiver, list[Relation]]:
    """Parse quiver-file text, returning the quiver and any explicit relations."""
    n_vertices = None
    arrows: list[Arrow] = []
    relations: list[tuple[int, Relation]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if n_vertices is None:
            if head != "vertices" or len(words) != 2:
                raise QuiverError("expected 'vertices N' as the first statement", lineno)
            n_vertices = _int(words[1], lineno)
            if n_vertices < 1:
                raise QuiverError("vertex count must be positive", lineno)
            continue
        if head == "vertices":
            raise QuiverError("repeated 'vertices' statement", lineno)
        if head == "arrow":
            if len(words) != 4:
                raise QuiverError("expected 'arrow NAME S T'", lineno)
            name = words[1]
            if not _NAME.match(name):
                raise QuiverError(f"bad arrow name {name!r}", lineno)
            s, t = _vertex(words[2], n_vertices, lineno), _vertex(words[3], n_vertices, lineno)
            arrows.append(Arrow(name, s, t))
        elif head == "zero":
            path = tuple(_vertex(w, n_vertices, lineno) for w in words[1:])
            if len(path) < 3:
                raise QuiverError("zero relation needs at least 3 vertices", lineno)
            relations.append((lineno, Relation("zero", path)))
        elif head == "comm":
            if words.count("=") != 1:
                raise QuiverError("expected 'comm V1 ... Vk = W1 ... Wm'", lineno)
            cut = words.index("=")
            first = tuple(_vertex(w, n_vertices, lineno) for w in words[1:cut])
            second = tuple(_vertex(w, n_vertices, lineno) for w in words[cut + 1:])
            try:
                rel = Relation("comm", first, second)
            except QuiverError as exc:
                raise QuiverError(str(exc), lineno) from None
            relations.append((lineno, rel))
        else:
            raise QuiverError(f"unknown statement {head!r}", lineno)
    if n_vertices is None:
        raise QuiverError("empty quiver file")
    quiver = Quiver(tuple(range(1, n_vertices + 1)), tuple(arrows))
    for lineno, rel in relations:
        for path in (rel.first, rel.second):
            if path is not None and not quiver.is_path(path):
                raise QuiverError(f"relation path {' '.join(map(str, path))} is not a path", lineno)
    return quiver, [rel for _, rel in relations]


def parse_quiver(text: str) -> Quiver:
    return parse_quiver_with_relations(text)[0]


def _int(word: str, lineno: int) -> int:
    try:
        return int(word)
    except ValueError:
        raise QuiverError(f"expected an integer, got {word!r}", lineno) from None


def _vertex(word: str, n: int, lineno: int) -> int:
    v = _int(word, lineno)
    if not 1 <= v <= n:
        raise QuiverError(f"vertex {v} out of range 1..{n}", lineno)
    return v


def format_quiver(q: Quiver) -> str:
    """Serialise in the file format; vertices must be ``1..N``."""
    if q.vertices != tuple(range(1, len(q.vertices) + 1)):
        raise QuiverError("vertices must be 1..N to serialise")
    lines = [f"vertices {len(q.vertices)}"]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in q.arrows]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# mutation
# --------------------------------------------------------------------------


def mutate(q: Quiver, k: int) -> Quiver:
    """Fomin-Zelevinsky mutation at ``k``.

    Raises ``QuiverError`` if the result would need parallel arrows.
    """
    if k not in q:
        raise QuiverError(f"unknown vertex {k}")
    b: dict[tuple[int, int], int] = {}
    for a in q.arrows:
        b[(a.source, a.target)] = b.get((a.source, a.target), 0) + 1
        b[(a.target, a.source)] = b.get((a.target, a.source), 0) - 1
    for i in q.predecessors(k):
        for j in q.successors(k):
            b[(i, j)] = b.get((i, j), 0) + 1
            b[(j, i)] = b.get((j, i), 0) - 1
    for pair in list(b):
        if k in pair:
            b[pair] = -b[pair]
    names = {(a.source, a.target): a.name for a in q.arrows}
    used = set(names.values())
    arrows = []
    for (i, j), m in sorted(b.items()):
        if m <= 0:
            continue
        if i == k or j == k:
            arrows.append(Arrow(names[(j, i)], i, j))
            continue
        if m > 1:
            raise QuiverError(f"mutation at {k} creates parallel arrows {i}->{j}")
        name = names.get((i, j))
        if name is None:
            name = f"x{i}_{j}"
            while name in used:
                name += "_"
            used.add(name)
        arrows.append(Arrow(name, i, j))
    return Quiver(q.vertices, tuple(arrows))


def valency(q: Quiver, v: int) -> int:
    if v not in q:
        raise QuiverError(f"unknown vertex {v}")
    return len(q.successors(v)) + len(q.predecessors(v))


def three_cycles(q: Quiver) -> list[tuple[int, int, int]]:
    """Oriented 3-cycles ``x->y->z->x`` as vertex triples, smallest vertex first."""
    out = []
    for x in q.vertices:
        for y in q.successors(x):
            if y < x:
                continue
            for z in q.successors(y):
                if z > x and q.has_arrow(z, x):
                    out.append((x, y, z))
    return sorted(out)


# --------------------------------------------------------------------------
# canonical forms and isomorphism
# --------------------------------------------------------------------------


def _refined_cells(q: Quiver) -> list[list[int]]:
    """Colour refinement; returns vertex cells ordered by invariant colour."""
    colour = {v: (len(q.predecessors(v)), len(q.successors(v))) for v in q.vertices}
    colour = _rank(colour)
    while True:
        sig = {v: (colour[v],
                   tuple(sorted(colour[w] for w in q.successors(v))),
                   tuple(sorted(colour[w] for w in q.predecessors(v))))
               for v in q.vertices}
        new = _rank(sig)
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    cells: dict[int, list[int]] = {}
    for v in q.vertices:
        cells.setdefault(colour[v], []).append(v)
    return [cells[c] for c in sorted(cells)]


def _rank(values: dict) -> dict:
    order = {val: i for i, val in enumerate(sorted(set(values.values())))}
    return {v: order[val] for v, val in values.items()}


def _orderings(cells: list[list[int]], pos: dict[int, int]) -> np.ndarray:
    count = math.prod(math.factorial(len(c)) for c in cells)
    n = sum(len(c) for c in cells)
    out = np.empty((count, n), dtype=np.int64)
    for row, choice in enumerate(itertools.product(*(itertools.permutations(c) for c in cells))):
        out[row] = [pos[v] for part in choice for v in part]
    return out


@dataclass(frozen=True)
class CanonicalForm:
    key: tuple
    order: tuple[int, ...]  # order[i] = vertex placed at canonical position i + 1

    def mapping(self) -> dict[int, int]:
        return {v: i + 1 for i, v in enumerate(self.order)}


def canonical_form(q: Quiver) -> CanonicalForm:
    """Minimal adjacency encoding over colour-respecting vertex orderings."""
    pos = {v: i for i, v in enumerate(q.vertices)}
    adj = q.adjacency()
    perms = _orderings(_refined_cells(q), pos)
    best = kernels.best_permutation(adj, perms)
    perm = perms[best]
    enc = adj[perm[:, None], perm[None, :]]
    key = (len(q.vertices), enc.tobytes())
    return CanonicalForm(key, tuple(q.vertices[i] for i in perm))


def canonical_quiver(q: Quiver) -> Quiver:
    """Relabel ``q`` onto ``1..N`` in canonical order, renaming arrows by position."""
    return _canonical(q)[1]


def _canonical(q: Quiver) -> tuple[tuple, Quiver]:
    cf = canonical_form(q)
    m = cf.mapping()
    rep = Quiver.from_pairs(((m[a.source], m[a.target]) for a in q.arrows), range(1, len(q) + 1))
    return cf.key, rep


def is_isomorphic(q1: Quiver, q2: Quiver) -> dict[int, int] | None:
    """A vertex bijection ``q1 -> q2`` preserving arrows, or ``None``."""
    if len(q1) != len(q2) or len(q1.arrows) != len(q2.arrows):
        return None
    if sorted(_degrees(q1)) != sorted(_degrees(q2)):
        return None
    c1, c2 = canonical_form(q1), canonical_form(q2)
    if c1.key != c2.key:
        return None
    return {v: w for v, w in zip(c1.order, c2.order)}


def _degrees(q: Quiver) -> list[tuple[int, int]]:
    return [(len(q.predecessors(v)), len(q.successors(v))) for v in q.vertices]


class MutationClassTooLarge(RuntimeError):
    pass


def enumerate_mutation_class(q: Quiver, max_size: int = 10_000) -> list[Quiver]:
    """All quivers mutation-equivalent to ``q``, one canonical representative each.

    The result is sorted by canonical key, so it is deterministic.
    """
    key, start = _canonical(q)
    seen = {key: start}
    frontier = [start]
    while frontier:
        produced = []
        for member in frontier:
            for k in member.vertices:
                key, rep = _canonical(mutate(member, k))
                if key not in seen:
                    seen[key] = rep
                    produced.append((key, rep))
                    if len(seen) > max_size:
                        raise MutationClassTooLarge(f"more than {max_size} classes")
        frontier = [rep for _, rep in sorted(produced, key=lambda kv: kv[0])]
    return [seen[k] for k in sorted(seen)]
