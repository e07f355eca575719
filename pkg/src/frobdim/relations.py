"""Zero and commutativity relations of a cluster-tilted algebra from its quiver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .classify import ClassLabel, DWitness, E6Match, Tag, classify, e6_templates, is_mutation_class_A
from .quiver import Quiver, QuiverError, Relation, three_cycles

__all__ = [
    "BoundQuiver",
    "Relation",
    "Unclassifiable",
    "bound_quiver",
    "relations_A",
    "relations_D",
    "relations_E6",
    "relations_for",
]


class Unclassifiable(QuiverError):
    """Raised when relations are needed for a quiver outside the three families."""


@dataclass(frozen=True)
class BoundQuiver:
    quiver: Quiver
    relations: tuple[Relation, ...]
    label: ClassLabel | None = None
    explicit: bool = False

    def __post_init__(self):
        check_relations(self.quiver, self.relations)


def check_relations(q: Quiver, relations: Sequence[Relation]):
    for rel in relations:
        for path in rel.paths():
            if not q.is_path(path):
                raise QuiverError(f"relation {rel.to_line()!r} is not a path in the quiver")


def _unique(relations):
    seen = set()
    out = []
    for r in relations:
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


def _saturate(q: Quiver) -> list[Relation]:
    rels = []
    for x, y, z in three_cycles(q):
        rels += [Relation("zero", (x, y, z)), Relation("zero", (y, z, x)), Relation("zero", (z, x, y))]
    return rels


def relations_A(q: Quiver) -> list[Relation]:
    """Three length-2 zero relations per 3-cycle."""
    check = is_mutation_class_A(q)
    if not check:
        raise QuiverError(f"quiver is not of mutation type A: {check.reason}")
    return _saturate(q)


def relations_D(q: Quiver, w: DWitness) -> list[Relation]:
    """Relations of the distinguished subquiver plus saturation of the type A parts."""
    rels: list[Relation] = []
    if w.subtype == "II":
        a, b, c, d = w.a, w.b, w.c, w.d
        rels.append(Relation("comm", (c, b, d), (c, a, d)))
        rels += [Relation("zero", p) for p in ((d, c, b), (d, c, a), (b, d, c), (a, d, c))]
    elif w.subtype == "III":
        a, b, c, d = w.a, w.b, w.c, w.d
        rels += [Relation("zero", p) for p in ((c, b, d, a), (b, d, a, c), (d, a, c, b), (a, c, b, d))]
    elif w.subtype == "IV":
        cyc = w.central
        k = len(cyc)
        for i in range(k):
            src, dst = cyc[i], cyc[(i + 1) % k]
            around = tuple(cyc[(i + 1 + j) % k] for j in range(k))
            spike = w.spikes.get(i)
            if spike is None:
                rels.append(Relation("zero", around))
            else:
                rels.append(Relation("comm", around, (dst, spike, src)))
                rels.append(Relation("zero", (src, dst, spike)))
                rels.append(Relation("zero", (spike, src, dst)))
    elif w.subtype != "I":
        raise QuiverError(f"unknown subtype {w.subtype!r}")
    for part in w.parts.values():
        rels += _saturate(q.induced(part))
    rels = _unique(rels)
    check_relations(q, rels)
    return rels


def relations_E6(q: Quiver, m: E6Match) -> list[Relation]:
    """The matched template's relations carried along the vertex map."""
    template = next(t for t in e6_templates() if t.index == m.index)
    rels = [r.relabel(m.mapping) for r in template.relations]
    for r in rels:
        for path in r.paths():
            if not q.is_path(path):
                raise QuiverError(f"template {m.index} relation does not transport to a path")
    return rels


def relations_for(q: Quiver, label: ClassLabel) -> list[Relation]:
    if label.tag == Tag.A:
        return relations_A(q)
    if label.tag == Tag.E6:
        return relations_E6(q, label.witness)
    if label.tag == Tag.UNKNOWN:
        raise Unclassifiable("quiver is not in the mutation class of A, D or E6")
    return relations_D(q, label.witness)


def bound_quiver(q: Quiver, relations: Sequence[Relation] | None = None) -> BoundQuiver:
    """Classify and generate relations; explicit relations, when given, are used verbatim."""
    if relations:
        label = classify(q) if q.is_connected() else None
        return BoundQuiver(q, tuple(relations), label, explicit=True)
    if not q.is_connected():
        raise Unclassifiable("quiver is not connected")
    label = classify(q)
    return BoundQuiver(q, tuple(relations_for(q, label)), label)
