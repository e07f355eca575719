"""Recognise which cluster-tilted family a quiver belongs to.

Three detectors are tried in order: the mutation class of type A (local
conditions on cycles and valencies), the four subtypes of type D (a distinguished
full subquiver whose residual pieces are of type A), and the E6 table (template
match up to orientation of free edges).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources

import networkx as nx
import numpy as np

from . import kernels
from .quiver import Quiver, QuiverError, Relation, parse_quiver_with_relations, three_cycles, valency


class Tag(str, Enum):
    A = "TypeA"
    D_I = "TypeD_I"
    D_II = "TypeD_II"
    D_III = "TypeD_III"
    D_IV = "TypeD_IV"
    E6 = "TypeE6"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ACheck:
    """Outcome of the type-A membership test; truthy iff the quiver belongs."""

    ok: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class DWitness:
    """Distinguished vertices of a type D quiver.

    For subtype IV, ``central`` lists the central cycle ``v0 -> v1 -> ... -> v0``
    and ``spikes`` maps ``i`` to the spike vertex of the arrow ``v_i -> v_{i+1}``.
    ``parts`` maps each anchor vertex (c and d, or a spike vertex) to the vertex set
    of the type A piece hanging from it, anchor included.
    """

    subtype: str
    a: int | None = None
    b: int | None = None
    c: int | None = None
    d: int | None = None
    central: tuple[int, ...] = ()
    spikes: dict = field(default_factory=dict)
    parts: dict = field(default_factory=dict)

    def describe(self) -> str:
        if self.subtype == "IV":
            spikes = ",".join(f"{self.central[i]}>{self.central[(i + 1) % len(self.central)]}:{v}"
                              for i, v in sorted(self.spikes.items()))
            return f"central={'-'.join(map(str, self.central))} spikes={spikes or '-'}"
        names = [(n, getattr(self, n)) for n in "abcd" if getattr(self, n) is not None]
        return " ".join(f"{n}={v}" for n, v in names)


@dataclass(frozen=True)
class E6Match:
    index: int
    mapping: dict  # template vertex -> quiver vertex
    orientations: dict  # free edge name -> (source, target) in template labels

    def describe(self) -> str:
        m = ",".join(f"{k}>{v}" for k, v in sorted(self.mapping.items()))
        o = ",".join(f"{s}>{t}" for _, (s, t) in sorted(self.orientations.items()))
        return f"template={self.index} map={m} orient={o or '-'}"


@dataclass(frozen=True)
class ClassLabel:
    tag: Tag
    hereditary: bool
    witness: DWitness | E6Match | None = None

    def record(self) -> str:
        parts = [f"class: {self.tag}", f"hereditary: {str(self.hereditary).lower()}"]
        if self.witness is not None:
            parts.append(f"witness: {self.witness.describe()}")
        return " ".join(parts)


# --------------------------------------------------------------------------
# type A
# --------------------------------------------------------------------------


def _undirected(q: Quiver) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(q.vertices)
    g.add_edges_from((a.source, a.target) for a in q.arrows)
    return g


def _require_connected(q: Quiver):
    if not q.is_connected():
        raise QuiverError("quiver is not connected")


def is_mutation_class_A(q: Quiver) -> ACheck:
    """Test the four local conditions characterising the mutation class of A_n."""
    _require_connected(q)
    g = _undirected(q)
    triangles_at: dict[int, int] = {v: 0 for v in q.vertices}
    for block in nx.biconnected_components(g):
        if len(block) == 2:
            continue
        sub = g.subgraph(block)
        if len(block) == 3 and sub.number_of_edges() == 3:
            x, y, z = sorted(block)
            oriented = ((q.has_arrow(x, y) and q.has_arrow(y, z) and q.has_arrow(z, x))
                        or (q.has_arrow(x, z) and q.has_arrow(z, y) and q.has_arrow(y, x)))
            if not oriented:
                return ACheck(False, "non-oriented 3-cycle", (x, y, z))
            for v in block:
                triangles_at[v] += 1
            continue
        cycle = next(c for c in nx.simple_cycles(sub) if len(c) != 3) if len(block) > 3 else None
        if cycle is None:  # pragma: no cover - a 2-connected block on 4+ vertices has one
            cycle = sorted(block)
        return ACheck(False, f"non-trivial cycle of length {len(cycle)}", tuple(cycle))
    for v in q.vertices:
        val = valency(q, v)
        if val > 4:
            return ACheck(False, f"vertex {v} has valency {val}", (v,))
        if val == 4 and triangles_at[v] != 2:
            return ACheck(False, f"valency-4 vertex {v} is not on two 3-cycles", (v,))
        if val == 3 and triangles_at[v] != 1:
            return ACheck(False, f"valency-3 vertex {v} is not on exactly one 3-cycle", (v,))
    return ACheck(True)


def connecting_vertices(q: Quiver) -> set[int]:
    """Valency-1 vertices and valency-2 vertices lying on a 3-cycle.

    A single-vertex quiver counts its vertex as connecting.
    """
    check = is_mutation_class_A(q)
    if not check:
        raise QuiverError(f"quiver is not of mutation type A: {check.reason}")
    if len(q) == 1:
        return set(q.vertices)
    on_cycle = {v for cyc in three_cycles(q) for v in cyc}
    return {v for v in q.vertices
            if valency(q, v) == 1 or (valency(q, v) == 2 and v in on_cycle)}


def _is_A_with_connecting(q: Quiver, anchor: int) -> bool:
    return bool(is_mutation_class_A(q)) and anchor in connecting_vertices(q)


# --------------------------------------------------------------------------
# type D
# --------------------------------------------------------------------------


def _hang_parts(q: Quiver, core: set[int], anchors: set[int]) -> dict[int, frozenset] | None:
    """Group the components of ``q - core`` by the single anchor each touches."""
    rest = q.induced(set(q.vertices) - core)
    parts = {x: {x} for x in anchors}
    for comp in (rest.components() if rest.vertices else []):
        touched = {w for v in comp for w in q.neighbours(v) if w in core}
        if len(touched) != 1 or not touched <= anchors:
            return None
        parts[touched.pop()] |= comp
    return {x: frozenset(vs) for x, vs in parts.items()}


def _parts_ok(q: Quiver, parts: dict[int, frozenset]) -> bool:
    return all(_is_A_with_connecting(q.induced(vs), x) for x, vs in parts.items())


def _find_IV(q: Quiver) -> DWitness | None:
    dg = nx.DiGraph(list(q.pairs()))
    dg.add_nodes_from(q.vertices)
    cycles = []
    for cyc in nx.simple_cycles(dg):
        k = len(cyc)
        if k < 3:
            continue
        if sum(1 for x in cyc for y in cyc if q.has_arrow(x, y)) != k:
            continue
        i = cyc.index(min(cyc))
        cycles.append(tuple(cyc[i:] + cyc[:i]))
    for central in sorted(cycles, key=lambda c: (len(c), c)):
        w = _check_IV(q, central)
        if w is not None:
            return w
    return None


def _check_IV(q: Quiver, central: tuple[int, ...]) -> DWitness | None:
    k = len(central)
    on_cycle = set(central)
    spikes = {}
    for i in range(k):
        src, dst = central[i], central[(i + 1) % k]
        cands = [c for c in q.successors(dst) if c not in on_cycle and q.has_arrow(c, src)]
        if len(cands) > 1:
            return None
        if cands:
            spikes[i] = cands[0]
    if len(set(spikes.values())) != len(spikes):
        return None
    for i, v in enumerate(central):
        allowed = {central[i - 1], central[(i + 1) % k]}
        if i in spikes:
            allowed.add(spikes[i])
        if (i - 1) % k in spikes:
            allowed.add(spikes[(i - 1) % k])
        if q.neighbours(v) != allowed:
            return None
    core = on_cycle | set(spikes.values())
    for i, s in spikes.items():
        if q.neighbours(s) & core != {central[i], central[(i + 1) % k]}:
            return None
    parts = _hang_parts(q, core, set(spikes.values()))
    if parts is None or not _parts_ok(q, parts):
        return None
    return DWitness("IV", central=central, spikes=spikes, parts=parts)


def _find_II(q: Quiver) -> DWitness | None:
    for arrow in q.arrows:
        d, c = arrow.source, arrow.target
        middles = sorted(x for x in q.successors(c)
                         if x != d and q.has_arrow(x, d) and valency(q, x) == 2)
        for a, b in itertools.combinations(middles, 2):
            parts = _hang_parts(q, {a, b, c, d}, {c, d})
            if parts is not None and _parts_ok(q, parts):
                return DWitness("II", a=a, b=b, c=c, d=d, parts=parts)
    return None


def _find_III(q: Quiver) -> DWitness | None:
    for c in q.vertices:
        for b in q.successors(c):
            for d in q.successors(b):
                for a in q.successors(d):
                    if len({a, b, c, d}) != 4 or not q.has_arrow(a, c):
                        continue
                    if valency(q, a) != 2 or valency(q, b) != 2:
                        continue
                    if q.has_arrow(c, d) or q.has_arrow(d, c):
                        continue
                    parts = _hang_parts(q, {a, b, c, d}, {c, d})
                    if parts is not None and _parts_ok(q, parts):
                        return DWitness("III", a=a, b=b, c=c, d=d, parts=parts)
    return None


def _find_I(q: Quiver) -> DWitness | None:
    for c in q.vertices:
        leaves = [x for x in sorted(q.neighbours(c)) if valency(q, x) == 1]
        sinks = [x for x in leaves if q.has_arrow(c, x)]
        sources = [x for x in leaves if q.has_arrow(x, c)]
        # same-direction pairs first; a mixed pair still gives a type D quiver
        pairs = [p for g in (sinks, sources) for p in itertools.combinations(g, 2)]
        pairs += [tuple(sorted(p)) for p in itertools.product(sinks, sources)]
        for a, b in pairs:
            rest = set(q.vertices) - {a, b}
            if len(rest) < 2:
                continue
            if _is_A_with_connecting(q.induced(rest), c):
                return DWitness("I", a=a, b=b, c=c, parts={c: frozenset(rest)})
    return None


def classify_D(q: Quiver) -> DWitness | None:
    """Search subtypes in the order IV, II, III, I; ``None`` if none applies."""
    _require_connected(q)
    for finder in (_find_IV, _find_II, _find_III, _find_I):
        w = finder(q)
        if w is not None:
            return w
    return None


# --------------------------------------------------------------------------
# E6 table
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class E6Template:
    index: int
    directed: tuple[tuple[int, int], ...]
    free: tuple[tuple[str, int, int], ...]
    relations: tuple[Relation, ...]

    def quiver(self, orientation: dict[str, bool] | None = None) -> Quiver:
        """Template with free edges oriented as listed, or reversed where ``orientation[name]``."""
        orientation = orientation or {}
        pairs = list(self.directed)
        for name, s, t in self.free:
            pairs.append((t, s) if orientation.get(name) else (s, t))
        return Quiver.from_pairs(pairs, range(1, 7))


def _parse_templates(text: str) -> tuple[E6Template, ...]:
    templates = []
    block: list[str] | None = None
    index = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("format"):
            continue
        words = line.split()
        if words[0] == "template":
            index, block = int(words[1]), []
        elif words[0] == "end":
            templates.append(_build_template(index, block))
            block = None
        else:
            block.append(line)
    return tuple(templates)


def _build_template(index: int, lines: list[str]) -> E6Template:
    free = []
    body = []
    for line in lines:
        words = line.split()
        if words[0] == "edge":
            free.append((words[1], int(words[2]), int(words[3])))
        else:
            body.append(line)
    quiver, relations = parse_quiver_with_relations("\n".join(body))
    for rel in relations:
        for path in rel.paths():
            if not quiver.is_path(path):
                raise QuiverError(f"template {index}: relation {rel.to_line()} is not a path")
    directed = tuple((a.source, a.target) for a in quiver.arrows)
    return E6Template(index, directed, tuple(free), tuple(relations))


@lru_cache(maxsize=None)
def e6_templates() -> tuple[E6Template, ...]:
    text = resources.files("frobdim").joinpath("data/e6_templates.txt").read_text(encoding="utf-8")
    return _parse_templates(text)


@lru_cache(maxsize=1)
def _all_perms6() -> np.ndarray:
    return np.array(list(itertools.permutations(range(6))), dtype=np.int64)


def match_E6(q: Quiver) -> E6Match | None:
    """First template matching ``q``, with vertex map and chosen free-edge orientations."""
    if len(q) != 6:
        return None
    qadj = q.adjacency()
    perms = _all_perms6()
    for t in e6_templates():
        if len(t.directed) + len(t.free) != len(q.arrows):
            continue
        tdir = np.zeros((6, 6), dtype=np.uint8)
        tund = np.zeros((6, 6), dtype=np.uint8)
        for s, e in t.directed:
            tdir[s - 1, e - 1] = 1
        for _, s, e in t.free:
            tund[s - 1, e - 1] = 1
        hit = kernels.first_template_match(qadj, tdir, tund, perms)
        if hit < 0:
            continue
        mapping = {i + 1: q.vertices[int(p)] for i, p in enumerate(perms[hit])}
        orient = {}
        for name, s, e in t.free:
            orient[name] = (s, e) if q.has_arrow(mapping[s], mapping[e]) else (e, s)
        return E6Match(t.index, mapping, orient)
    return None


# --------------------------------------------------------------------------
# dispatcher
# --------------------------------------------------------------------------

_D_TAGS = {"I": Tag.D_I, "II": Tag.D_II, "III": Tag.D_III, "IV": Tag.D_IV}


def classify(q: Quiver) -> ClassLabel:
    _require_connected(q)
    hereditary = q.is_acyclic()
    if is_mutation_class_A(q):
        return ClassLabel(Tag.A, hereditary)
    w = classify_D(q)
    if w is not None:
        return ClassLabel(_D_TAGS[w.subtype], hereditary, w)
    m = match_E6(q)
    if m is not None:
        return ClassLabel(Tag.E6, hereditary, m)
    return ClassLabel(Tag.UNKNOWN, hereditary)
