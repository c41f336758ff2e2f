"""Line-oriented text documents for lattices, root systems and markings.

A document is a sequence of directives, one per line; '#' starts a comment.

    kind lattice | rootsystem | torus-marking | two-adic | subgroup
    rank <n>
    precision <k>                      (two-adic only)
    gen <label>                        followed by n rows of n integers
    mark <label> <b...> [| <beta...>]  marking of reflection generator <label>
    h <label> <x...>                   torus marking, entries like 1/2 or 0
    root <r...> | <coroot...>          one (root, coroot) pair of a root system
    torsion <x...>                     generator of a finite subgroup of the torus

Example:

    kind lattice
    rank 1
    gen s
    -1
    mark s 1 | -1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

KINDS = ("lattice", "rootsystem", "torus-marking", "two-adic", "subgroup")


class DocumentError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class Document:
    kind: str
    rank: int
    precision: int | None = None
    gens: dict[str, tuple] = field(default_factory=dict)
    marks: dict[str, tuple[tuple[int, ...], tuple[int, ...] | None]] = field(default_factory=dict)
    torus_marks: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)
    roots: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)
    torsion: list[tuple[Fraction, ...]] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)


def _ints(tokens, line, col0):
    out = []
    for k, t in enumerate(tokens):
        try:
            out.append(int(t))
        except ValueError:
            raise DocumentError(f"expected an integer, got {t!r}", line, col0 + k) from None
    return tuple(out)


def _fracs(tokens, line, col0):
    out = []
    for k, t in enumerate(tokens):
        try:
            out.append(Fraction(t))
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"expected a rational number, got {t!r}", line, col0 + k) from None
    return tuple(out)


def parse(text: str) -> Document:
    """Parse a document; errors carry 1-based line and token column."""
    lines = text.splitlines()
    kind = rank = precision = None
    doc = None
    i = 0
    pending: list[tuple[int, str]] = []

    def need_header(lineno):
        nonlocal doc
        if doc is None:
            if kind is None or rank is None:
                raise DocumentError("'kind' and 'rank' must come first", lineno)
            doc = Document(kind, rank, precision)
        return doc

    while i < len(lines):
        raw = lines[i]
        lineno = i + 1
        i += 1
        body = raw.split("#", 1)[0].strip()
        if not body:
            if raw.strip().startswith("#") and doc is None:
                pending.append((lineno, raw.strip()[1:].strip()))
            continue
        tok = body.split()
        head, rest = tok[0], tok[1:]
        if head == "kind":
            if len(rest) != 1 or rest[0] not in KINDS:
                raise DocumentError(f"kind must be one of {', '.join(KINDS)}", lineno, 2)
            kind = rest[0]
        elif head == "rank":
            (n,) = _ints(rest, lineno, 2) if len(rest) == 1 else (None,)
            if n is None or n < 0:
                raise DocumentError("rank takes one nonnegative integer", lineno, 2)
            rank = n
        elif head == "precision":
            (k,) = _ints(rest, lineno, 2) if len(rest) == 1 else (None,)
            if k is None or k < 1:
                raise DocumentError("precision takes one positive integer", lineno, 2)
            precision = k
            if doc is not None:
                doc.precision = k
        elif head == "gen":
            d = need_header(lineno)
            if len(rest) != 1:
                raise DocumentError("gen takes a single label", lineno, 2)
            label = rest[0]
            if label in d.gens:
                raise DocumentError(f"duplicate generator {label!r}", lineno, 2)
            rows = []
            while len(rows) < d.rank:
                if i >= len(lines):
                    raise DocumentError(f"generator {label!r} is truncated", len(lines) + 1)
                row_raw = lines[i].split("#", 1)[0].strip()
                i += 1
                if not row_raw:
                    continue
                row = _ints(row_raw.split(), i, 1)
                if len(row) != d.rank:
                    raise DocumentError(f"matrix row has {len(row)} entries, expected {d.rank}", i, len(row) + 1)
                rows.append(row)
            d.gens[label] = tuple(rows)
        elif head == "mark":
            d = need_header(lineno)
            if not rest:
                raise DocumentError("mark needs a generator label", lineno, 2)
            label, vals = rest[0], rest[1:]
            if "|" in vals:
                k = vals.index("|")
                b, beta = _ints(vals[:k], lineno, 3), _ints(vals[k + 1:], lineno, k + 4)
            else:
                b, beta = _ints(vals, lineno, 3), None
            if len(b) != d.rank or (beta is not None and len(beta) != d.rank):
                raise DocumentError(f"marking vectors must have {d.rank} entries", lineno, 3)
            d.marks[label] = (b, beta)
        elif head == "h":
            d = need_header(lineno)
            if len(rest) != d.rank + 1:
                raise DocumentError(f"h needs a label and {d.rank} entries", lineno, 2)
            d.torus_marks[rest[0]] = _fracs(rest[1:], lineno, 3)
        elif head == "root":
            d = need_header(lineno)
            if "|" not in rest:
                raise DocumentError("root needs 'root | coroot'", lineno, 2)
            k = rest.index("|")
            r, c = _ints(rest[:k], lineno, 2), _ints(rest[k + 1:], lineno, k + 3)
            if len(r) != d.rank or len(c) != d.rank:
                raise DocumentError(f"root and coroot must have {d.rank} entries", lineno, 2)
            d.roots.append((r, c))
        elif head == "torsion":
            d = need_header(lineno)
            if len(rest) != d.rank:
                raise DocumentError(f"torsion needs {d.rank} entries", lineno, 2)
            d.torsion.append(_fracs(rest, lineno, 2))
        else:
            raise DocumentError(f"unknown directive {head!r}", lineno, 1)
    d = need_header(len(lines) + 1)
    d.comments = [c for _, c in pending]
    for label in list(d.marks) + list(d.torus_marks):
        if label not in d.gens:
            raise DocumentError(f"marking refers to unknown generator {label!r}", len(lines))
    if d.kind == "two-adic" and d.precision is None:
        raise DocumentError("two-adic documents need a precision line", len(lines))
    return d


def _fmt(x) -> str:
    return str(x)


def dump(doc: Document) -> str:
    out = [f"# {c}" for c in doc.comments]
    out.append(f"kind {doc.kind}")
    out.append(f"rank {doc.rank}")
    if doc.precision is not None:
        out.append(f"precision {doc.precision}")
    for label, m in doc.gens.items():
        out.append(f"gen {label}")
        out.extend(" ".join(map(str, row)) for row in m)
    for label, (b, beta) in doc.marks.items():
        line = f"mark {label} " + " ".join(map(str, b))
        if beta is not None:
            line += " | " + " ".join(map(str, beta))
        out.append(line)
    for label, h in doc.torus_marks.items():
        out.append(f"h {label} " + " ".join(map(_fmt, h)))
    for r, c in doc.roots:
        out.append("root " + " ".join(map(str, r)) + " | " + " ".join(map(str, c)))
    for t in doc.torsion:
        out.append("torsion " + " ".join(map(_fmt, t)))
    return "\n".join(out) + "\n"


# conversions between documents and library objects


def lattice_document(lat, name: str = "") -> Document:
    """Generators are the simple reflections (or the stored generators when there is no simple system)."""
    from .words import find_simple_system

    g = lat.group
    try:
        gens = find_simple_system(g).simples if g.reflections() else []
    except ValueError:
        gens = list(g.generators)
    doc = Document("lattice", g.dim, comments=[name] if name else [])
    for k, s in enumerate(gens):
        label = f"s{k + 1}"
        doc.gens[label] = g.elements[s]
        mk = lat.markings.get(s)
        if mk is not None:
            doc.marks[label] = (mk.b, mk.beta)
    return doc


def torus_document(torus, name: str = "") -> Document:
    from .words import find_simple_system

    g = torus.group
    doc = Document("torus-marking", g.dim, comments=[name] if name else [])
    gens = find_simple_system(g).simples if g.reflections() else []
    for k, s in enumerate(gens):
        label = f"s{k + 1}"
        doc.gens[label] = g.elements[s]
        doc.torus_marks[label] = torus.markings[s]
    return doc


def rootsystem_document(rs, name: str = "") -> Document:
    doc = Document("rootsystem", rs.rank, comments=[name] if name else [])
    doc.roots = [(r, rs.coroots[r]) for r in rs.roots]
    return doc


def two_adic_document(C, name: str = "") -> Document:
    g = C.group
    doc = Document("two-adic", g.dim, precision=C.precision, comments=[name] if name else [])
    for k, gi in enumerate(g.generators):
        label = f"g{k + 1}"
        doc.gens[label] = g.elements[gi]
        mk = C.markings.get(gi)
        if mk is not None:
            doc.marks[label] = (mk.b, mk.beta)
    return doc
