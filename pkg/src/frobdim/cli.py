"""Command-line interface.

Exit codes: 0 success, 1 parse or precondition error, 2 a formula was required
for a quiver outside the supported families, 3 a verification failed.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import families
from .algebra import NotAdmissible, PathAlgebra, build_algebra
from .classify import ClassLabel, Tag, classify
from .frobenius import (
    FormulaResult,
    NOT_APPLICABLE,
    coproduct_of,
    format_scalar,
    format_tensor_term,
    frobdim_formula,
    frobdim_oracle,
)
from .quiver import (
    MutationClassTooLarge,
    Quiver,
    QuiverError,
    enumerate_mutation_class,
    format_quiver,
    mutate,
    parse_quiver_with_relations,
)
from .relations import Unclassifiable, bound_quiver

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNCLASSIFIED = 2
EXIT_FAIL = 3

COMMANDS = ("classify", "relations", "basis", "mutate", "frobdim", "enumerate", "verify")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR):
        super().__init__(message)
        self.code = code


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_quiver_with_relations(text)
    except QuiverError as exc:
        where = f"{path}:{exc.line}: " if exc.line else f"{path}: "
        raise CliError(where + str(exc)) from None


def _bound(path: str):
    q, rels = _read(path)
    try:
        return bound_quiver(q, rels)
    except Unclassifiable as exc:
        raise CliError(str(exc), EXIT_UNCLASSIFIED) from None


def _algebra(bq) -> PathAlgebra:
    try:
        return build_algebra(bq)
    except NotAdmissible as exc:
        raise CliError(f"relations do not give a finite-dimensional algebra: {exc}") from None


def _seed_quiver(args) -> Quiver:
    if args.seed:
        return _read(args.seed)[0]
    rank = args.rank
    if args.type and args.type.upper() == "E6":
        rank = 6 if rank is None else rank
    if not args.type or rank is None:
        raise CliError("give --seed FILE or --type T --rank N")
    try:
        return families.seed(args.type, rank)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _class_lines(label: ClassLabel | None) -> list[str]:
    if label is None:
        return ["class: Unknown", "hereditary: unknown"]
    lines = [f"class: {label.tag}", f"hereditary: {str(label.hereditary).lower()}"]
    if label.witness is not None:
        lines.append(f"witness: {label.witness.describe()}")
    return lines


def _formula_lines(f: FormulaResult) -> list[str]:
    lines = [f"formula.kind: {f.kind}"]
    if f.kind != NOT_APPLICABLE:
        lines += [f"formula.value: {f.value}", f"formula: {f.value}"]
    elif f.note:
        lines.append(f"formula.note: {f.note}")
    return lines


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_classify(args, out) -> int:
    q, _ = _read(args.file)
    if not q.is_connected():
        raise CliError("quiver is not connected")
    print(classify(q).record(), file=out)
    return EXIT_OK


def cmd_relations(args, out) -> int:
    bq = _bound(args.file)
    for rel in bq.relations:
        print(rel.to_line(), file=out)
    return EXIT_OK


def _basis_lines(a: PathAlgebra) -> list[str]:
    lines = []
    for k, p in enumerate(a.basis):
        seq = f"e {p[0]}" if len(p) == 1 else " ".join(map(str, p))
        lines.append(f"CLASS {k} : {p[0]} -> {p[-1]} : {seq}")
    return lines


def cmd_basis(args, out) -> int:
    a = _algebra(_bound(args.file))
    print("\n".join(_basis_lines(a)), file=out)
    return EXIT_OK


def cmd_mutate(args, out) -> int:
    q, _ = _read(args.file)
    try:
        text = format_quiver(mutate(q, args.vertex))
    except QuiverError as exc:
        raise CliError(str(exc)) from None
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_frobdim(args, out) -> int:
    started = time.perf_counter()
    q, rels = _read(args.file)
    try:
        bq = bound_quiver(q, rels)
    except Unclassifiable as exc:
        if args.method in ("formula", "both"):
            raise CliError(str(exc), EXIT_UNCLASSIFIED) from None
        raise CliError(f"{exc}; supply explicit relations to use the oracle") from None
    label = bq.label
    classified = label is not None and label.tag != Tag.UNKNOWN
    method = args.method or ("both" if classified else "oracle")
    if method in ("formula", "both") and not classified:
        raise CliError("quiver is not in a supported family", EXIT_UNCLASSIFIED)
    a = _algebra(bq)
    lines = _class_lines(label) + [f"algebra.dim: {a.dim}"]
    formula = space = None
    if method in ("formula", "both"):
        formula = frobdim_formula(a, count_paths=args.count_paths)
        lines += _formula_lines(formula)
    if method in ("oracle", "both"):
        space = frobdim_oracle(a)
        lines += [f"oracle.dim: {space.dim}", f"oracle: {space.dim}"]
    code = EXIT_OK
    if formula is not None and space is not None:
        ok = formula.admits(space.dim)
        lines.append(f"verdict: {'PASS' if ok else 'FAIL'}")
        code = EXIT_OK if ok else EXIT_FAIL
    if args.show_basis:
        if formula is None:
            formula = frobdim_formula(a, count_paths=args.count_paths)
        for p in formula.basis_paths:
            lines.append("basis_path: " + " ".join(map(str, p)))
        for v, i, o in formula.special:
            lines.append(f"special: {v} in={i} out={o}")
    if args.show_coproducts:
        if space is None:
            space = frobdim_oracle(a)
        lines += _coproduct_lines(a, space)
    if args.timing:
        lines.append(f"time: {time.perf_counter() - started:.3f}")
    print("\n".join(lines), file=out)
    return code


def _coproduct_lines(a: PathAlgebra, space) -> list[str]:
    lines = []
    for k in range(space.dim):
        lines.append(f"structure {k}")
        for v in a.quiver.vertices:
            delta = coproduct_of(space, k, {a.idempotents[v]: 1})
            for (p, r), c in delta.items():
                lines.append(f"Delta(e_{v}) += {format_scalar(c)} * {format_tensor_term(a, p, r)}")
    return lines


def cmd_enumerate(args, out) -> int:
    q = _seed_quiver(args)
    try:
        members = enumerate_mutation_class(q, max_size=args.limit)
    except MutationClassTooLarge:
        raise CliError(f"mutation class has more than {args.limit} members") from None
    print(f"classes: {len(members)}", file=out)
    if args.list:
        for k, m in enumerate(members):
            arrows = " ".join(f"{s}>{t}" for s, t in sorted(m.pairs()))
            print(f"member {k}: {arrows}", file=out)
    return EXIT_OK


def _verify_corpus(args) -> list[Quiver]:
    if args.family:
        if args.family != "D":
            raise CliError("only --family D is available")
        return list(families.generated_D())
    try:
        return enumerate_mutation_class(_seed_quiver(args), max_size=args.limit)
    except MutationClassTooLarge:
        raise CliError(f"mutation class has more than {args.limit} members") from None


def cmd_verify(args, out) -> int:
    corpus = _verify_corpus(args)
    failures = 0
    for k, q in enumerate(corpus):
        try:
            a = build_algebra(bound_quiver(q))
        except Unclassifiable:
            print(f"member {k}: class Unknown FAIL", file=out)
            failures += 1
            continue
        f = frobdim_formula(a, count_paths=args.count_paths)
        dim = frobdim_oracle(a).dim
        ok = f.admits(dim)
        failures += not ok
        value = "-" if f.kind == NOT_APPLICABLE else f.value
        print(f"member {k}: class {a.bound.label.tag} formula {f.kind} {value} "
              f"oracle {dim} {'PASS' if ok else 'FAIL'}", file=out)
    print(f"members: {len(corpus)}", file=out)
    print(f"failures: {failures}", file=out)
    print(f"verdict: {'FAIL' if failures else 'PASS'}", file=out)
    return EXIT_FAIL if failures else EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="frobdim",
        description="Frobenius dimension of cluster-tilted algebras of type A, D and E6.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="print the family and witness of a quiver")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("relations", help="print the relations, one per line")
    s.add_argument("file")
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("basis", help="print a basis of the bound path algebra")
    s.add_argument("file")
    s.set_defaults(func=cmd_basis)

    s = sub.add_parser("mutate", help="mutate at a vertex")
    s.add_argument("file")
    s.add_argument("--vertex", "-k", type=int, required=True)
    s.add_argument("--out", "-o", help="write the result here instead of stdout")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("frobdim", help="Frobenius dimension by formula and/or exact solver")
    s.add_argument("file")
    s.add_argument("--method", choices=("formula", "oracle", "both"),
                   help="default: both when the quiver classifies, otherwise oracle")
    s.add_argument("--show-basis", action="store_true", help="list basis paths and special vertices")
    s.add_argument("--show-coproducts", action="store_true",
                   help="print Delta(e_v) for every basis structure")
    s.add_argument("--count-paths", action="store_true",
                   help="weight special vertices by path counts instead of longest lengths")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_frobdim)

    for name, helptext, func in (("enumerate", "list a mutation class", cmd_enumerate),
                                 ("verify", "check formula against solver over a corpus", cmd_verify)):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("--seed", help="quiver file to start from")
        s.add_argument("--type", help="A, D or E6")
        s.add_argument("--rank", type=int)
        s.add_argument("--limit", type=int, default=10_000, help="maximum class size")
        if name == "enumerate":
            s.add_argument("--list", action="store_true", help="print every member")
        else:
            s.add_argument("--family", help="use the built-in generated corpus (D)")
            s.add_argument("--count-paths", action="store_true")
        s.set_defaults(func=func)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    # `frobdim FILE ...` is shorthand for `frobdim frobdim FILE ...`
    if argv and argv[0] not in COMMANDS and not argv[0].startswith("-"):
        argv.insert(0, "frobdim")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; that code means "unclassified" here
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
