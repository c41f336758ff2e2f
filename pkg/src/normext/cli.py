"""``normext``: validate, build and compare marked reflection data from text documents.

Exit codes: 0 pass, 1 validation failure, 2 usage or parse error,
3 internal assertion (a computed fact contradicts a proven one).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import acceptance, docformat, intmat
from .catalog import build_entry, names
from .cochains import cocycle_defect, cohomologous
from .docformat import Document, DocumentError
from .extensions import normalizer_extension, presentation_check, reflection_extension, split_check, tits_cocycle
from .lattice import StrictMarking, generate_group, is_reflection, markings_of
from .rootdata import (MarkedReflectionLattice, MarkedReflectionTorus, RootSystem, lattice_to_rootsystem,
                       lattice_to_torus, marking_family, reflection_classes, validate_root_system)
from .twoadic import (CompleteMarkedLattice, FixtureError, TwoAdicMarking, block_fixture, classify_factor, di4_data,
                      marking_family_mod, markings_mod, promote, reflection_partition, write_di4_fixture)
from .words import find_simple_system

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# loading documents


def read_document(path: str) -> Document:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return docformat.parse(text)


def _given_marking(sigma, b, beta) -> StrictMarking:
    if beta is None:
        n = len(sigma)
        j = next((i for i in range(n) if b[i]), None)
        if j is None:
            raise UsageError("marking vector b is zero")
        beta = tuple(Fraction(sigma[j][c] - (j == c), b[j]) for c in range(n))
        if any(x.denominator != 1 for x in beta):
            raise UsageError(f"b = {b} is not a marking vector of its reflection")
        beta = tuple(int(x) for x in beta)
    return StrictMarking(tuple(b), tuple(beta))


def _reflection_gens(doc: Document):
    if not doc.gens:
        raise UsageError("document has no generators")
    return list(doc.gens.items())


def lattice_from_document(doc: Document) -> MarkedReflectionLattice:
    """Group from the generators; given markings are spread by conjugation, other classes get b0."""
    if doc.kind == "rootsystem":
        from .rootdata import rootsystem_to_lattice

        return rootsystem_to_lattice(rootsystem_from_document(doc))
    gens = _reflection_gens(doc)
    group = generate_group([m for _, m in gens], dim=doc.rank)
    given = {}
    for label, (b, beta) in doc.marks.items():
        sigma = doc.gens[label]
        given[group.find(sigma)] = _given_marking(sigma, b, beta)
    choice = dict(given)
    for cls in reflection_classes(group):
        if not any(i in given for i in cls):
            choice[cls[0]] = markings_of(group.elements[cls[0]])[0]
    fam = marking_family(group, choice)
    fam.update({i: m.canonical() for i, m in given.items()})
    return MarkedReflectionLattice(group, fam)


def torus_from_document(doc: Document) -> MarkedReflectionTorus:
    if doc.kind != "torus-marking":
        return lattice_to_torus(lattice_from_document(doc))
    gens = _reflection_gens(doc)
    group = generate_group([m for _, m in gens], dim=doc.rank)
    torus = MarkedReflectionTorus(group, {})
    marks = {group.find(doc.gens[label]): h for label, h in doc.torus_marks.items()}
    marks = {i: tuple(Fraction(x) % 1 for x in h) for i, h in marks.items()}
    frontier = list(marks)
    while frontier:
        x = frontier.pop()
        for w in group.generators:
            y = group.conj(w, x)
            if y not in marks:
                marks[y] = torus.act(w, marks[x])
                frontier.append(y)
    return MarkedReflectionTorus(group, marks)


def rootsystem_from_document(doc: Document) -> RootSystem:
    if doc.kind != "rootsystem":
        return lattice_to_rootsystem(lattice_from_document(doc))
    co = {}
    for r, c in doc.roots:
        co[r] = c
    return RootSystem(doc.rank, tuple(sorted(co)), co)


def two_adic_from_document(doc: Document, precision: int | None = None) -> CompleteMarkedLattice:
    if doc.kind != "two-adic":
        return promote(lattice_from_document(doc), precision or 16)
    k = precision or doc.precision
    if k > doc.precision:
        raise UsageError(f"document only carries precision 2^{doc.precision}")
    mod = 2**k
    gens = [intmat.reduce_mod(m, mod) for _, m in _reflection_gens(doc)]
    group = generate_group(gens, mod=mod, dim=doc.rank)
    choice = {}
    for label, (b, beta) in doc.marks.items():
        i = group.find(intmat.reduce_mod(doc.gens[label], mod))
        if beta is None:
            # without beta only the choice between b0 and 2 b0 is meaningful
            doubled = all(x % 2 == 0 for x in b)
            opts = [m for m in markings_mod(group.elements[i], mod) if m.doubled == doubled]
            if not opts:
                raise UsageError(f"b = {b} is not a marking vector of generator {label}")
            choice[i] = opts[0]
        else:
            choice[i] = TwoAdicMarking(tuple(x % mod for x in b), tuple(x % mod for x in beta), mod)
    for cls in reflection_classes(group):
        if not any(i in choice for i in cls):
            choice[cls[0]] = markings_mod(group.elements[cls[0]], mod)[0]
    return CompleteMarkedLattice(group, marking_family_mod(group, choice))


# reports


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n")
        return
    for key, val in report.items():
        if isinstance(val, str) and "\n" in val:
            out.write(f"{key}:\n{val}")
            if not val.endswith("\n"):
                out.write("\n")
        else:
            out.write(f"{key}: {_jsonable(val)}\n")


# commands


def cmd_validate(args) -> int:
    doc = read_document(args.path)
    report: dict = {"kind": doc.kind, "rank": doc.rank}
    if doc.kind == "rootsystem":
        results = validate_root_system(rootsystem_from_document(doc))
        report.update(results=results.results, details=results.details)
        ok = results.passed
    elif doc.kind == "torus-marking":
        torus = torus_from_document(doc)
        rep = torus.validate()
        ok = rep.passed
        report.update(results=rep.results, details=rep.details)
        if ok:
            bad = cocycle_defect(normalizer_extension(torus))
            report["cocycle_identity"] = not bad
            ok = not bad
    elif doc.kind == "two-adic":
        res = two_adic_from_document(doc).validate()
        report["results"] = res
        ok = all(res.values())
    elif doc.kind == "lattice":
        lat = lattice_from_document(doc)
        rep = lat.validate()
        report.update(results=rep.results, details=rep.details)
        ok = rep.passed
        if ok:
            bad = cocycle_defect(reflection_extension(lat.group))
            report["cocycle_identity"] = not bad
            ok = not bad
    else:
        raise UsageError(f"nothing to validate for kind {doc.kind!r}")
    report["verdict"] = "valid" if ok else "invalid"
    emit(report, args.json)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_markings(args) -> int:
    doc = read_document(args.path)
    rows = []
    if doc.kind == "two-adic":
        mod = 2**doc.precision
        for label, m in doc.gens.items():
            m = intmat.reduce_mod(m, mod)
            if is_reflection(m, mod):
                rows.append({"generator": label, "markings": [[mk.b, mk.beta] for mk in markings_mod(m, mod)]})
    else:
        for label, m in doc.gens.items():
            if is_reflection(m):
                rows.append({"generator": label, "markings": [[mk.b, mk.beta] for mk in markings_of(m)]})
    report = {"reflections": len(rows)}
    for r in rows:
        report[r["generator"]] = f"{len(r['markings'])} marking(s): " + "; ".join(
            f"b={b} beta={beta}" for b, beta in r["markings"])
    if args.json:
        report = {"reflections": rows}
    emit(report, args.json)
    return EXIT_OK


def cmd_build_nt(args) -> int:
    doc = read_document(args.path)
    torus = torus_from_document(doc)
    rep = torus.validate()
    if not rep.passed:
        emit({"verdict": "invalid", "details": rep.details}, args.json)
        return EXIT_INVALID
    nu = normalizer_extension(torus)
    report: dict = {"group_order": len(torus.group), "reflections": len(torus.group.reflections())}
    ok = True
    if args.split_check:
        res = split_check(nu)
        report["split"] = "split" if res else "nonsplit"
    if args.presentation_check:
        pres = presentation_check(torus, find_simple_system(torus.group))
        report["presentation"] = pres.summary()
        report["coxeter_matrix"] = pres.coxeter_matrix
        report["presentation_lifts"] = pres.lifts
        ok = pres.passed
    if args.export_table:
        Path(args.export_table).write_text(nu.export_table())
        report["table"] = args.export_table
    elif not args.json and not (args.split_check or args.presentation_check):
        report["table"] = nu.export_table()
    emit(report, args.json)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_compare(args) -> int:
    """One document: reflection extension vs Tits extension. Two: normalizer extensions of the same W."""
    if args.other is None:
        lat = lattice_from_document(read_document(args.path))
        ss = find_simple_system(lat.group)
        res = cohomologous(reflection_extension(lat.group), tits_cocycle(ss))
        report = {"compare": "reflection extension vs Tits extension", "cohomologous": bool(res)}
    else:
        a = torus_from_document(read_document(args.path))
        b = torus_from_document(read_document(args.other))
        if a.group.elements != b.group.elements:
            raise UsageError("the two documents do not generate the same group")
        res = split_check(normalizer_extension(a) - normalizer_extension(b))
        report = {"compare": "normalizer extensions", "cohomologous": bool(res), "equal_markings": a == b}
    emit(report, args.json)
    return EXIT_OK if report["cohomologous"] else EXIT_INVALID


def cmd_classify2adic(args) -> int:
    doc = read_document(args.path)
    if doc.rank == 0:
        emit({"factors": []}, args.json)
        return EXIT_OK
    C = two_adic_from_document(doc, args.precision)
    part = reflection_partition(C)
    if not part.split:
        emit({"split": False, "determinant": part.determinant, "factors": []}, args.json)
        return EXIT_INVALID
    factors = [{"tag": classify_factor(f), "rank": f.rank, "order": f.lattice.group.order,
                "reflections": len(f.reflections)} for f in part.factors]
    report = {"precision": C.precision, "factors": [f["tag"] for f in factors], "fixed_rank": len(part.fixed)}
    if args.json:
        report["detail"] = factors
    emit(report, args.json)
    return EXIT_OK


SPECIAL_EXPORTS = ("DI4", "DI4+B2+A1")


def cmd_catalog(args) -> int:
    if args.action == "list":
        if args.json:
            emit({"entries": [{"name": n, "type": build_entry(n).cartan_type, "form": build_entry(n).form} for n in names()]}, True)
        else:
            for n in names():
                e = build_entry(n)
                print(f"{n:10s} {e.cartan_type:8s} rank {e.rank}  {e.form}")
            for n in SPECIAL_EXPORTS:
                print(f"{n:10s} two-adic fixture")
        return EXIT_OK
    if args.name is None:
        raise UsageError("catalog export needs an entry name")
    if args.name == "DI4":
        doc = docformat.two_adic_document(di4_data(args.precision or 16).lattice, "DI4")
    elif args.name == "DI4+B2+A1":
        doc = docformat.two_adic_document(block_fixture(args.precision or 16), "DI4 + B2 + A1 block fixture")
    else:
        try:
            e = build_entry(args.name)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        if args.precision:
            doc = docformat.two_adic_document(promote(e.lattice, args.precision), e.name)
        elif args.kind == "rootsystem":
            doc = docformat.rootsystem_document(lattice_to_rootsystem(e.lattice), e.name)
        elif args.kind == "torus-marking":
            doc = docformat.torus_document(e.torus, e.name)
        else:
            doc = docformat.lattice_document(e.lattice, e.name)
    sys.stdout.write(docformat.dump(doc))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = acceptance.run(args.level)
    failed = [r for r in results if not r.passed and not r.known_deviation]
    if args.json:
        emit({"level": args.level, "criteria": [r.__dict__ for r in results], "failed": [r.number for r in failed]}, True)
    else:
        for r in results:
            print(r.line())
        print(f"total {sum(r.seconds for r in results):.1f}s; {len(failed)} unexpected failure(s)")
    return EXIT_OK if not failed else EXIT_INVALID


def cmd_di4_oracle(args) -> int:
    path = write_di4_fixture(Path(args.out) if args.out else None, args.precision)
    data = di4_data(16, path=path)
    emit({"written": str(path), "order": data.lattice.group.order}, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="normext", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check the axioms of a document")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("markings", help="list the markings of every reflection generator")
    s.add_argument("path")
    s.set_defaults(func=cmd_markings)

    s = sub.add_parser("build-nt", help="normalizer extension of a marked torus")
    s.add_argument("path")
    s.add_argument("--presentation-check", action="store_true")
    s.add_argument("--split-check", action="store_true")
    s.add_argument("--export-table", metavar="FILE")
    s.set_defaults(func=cmd_build_nt)

    s = sub.add_parser("compare", help="compare extensions for cohomology")
    s.add_argument("path")
    s.add_argument("other", nargs="?")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("classify2adic", help="split a complete lattice into DI4 and Coxeter factors")
    s.add_argument("path")
    s.add_argument("--precision", type=int)
    s.set_defaults(func=cmd_classify2adic)

    s = sub.add_parser("catalog", help="list or export catalog entries")
    s.add_argument("action", choices=["list", "export"])
    s.add_argument("name", nargs="?")
    s.add_argument("--kind", choices=["lattice", "rootsystem", "torus-marking"], default="lattice")
    s.add_argument("--precision", type=int, help="export the promoted two-adic lattice at this precision")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("selftest", help="run the acceptance checks")
    s.add_argument("--level", choices=["quick", "full"], default="quick")
    s.set_defaults(func=cmd_selftest)

    s = sub.add_parser("di4-oracle", help="regenerate the DI4 fixture from its oracle")
    s.add_argument("--out")
    s.add_argument("--precision", type=int, default=64)
    s.set_defaults(func=cmd_di4_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixtureError as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, KeyError, intmat.PrecisionError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except AssertionError as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
