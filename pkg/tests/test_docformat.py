from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normext.catalog import build_entry, names
from normext.docformat import (Document, DocumentError, dump, lattice_document, parse, rootsystem_document,
                               torus_document, two_adic_document)
from normext.rootdata import lattice_to_rootsystem
from normext.twoadic import promote

SU2 = """\
# the simply connected rank-one lattice
kind lattice
rank 1
gen s
-1
mark s 1 | -2
"""


def test_parse_minimal_lattice():
    doc = parse(SU2)
    assert doc.kind == "lattice"
    assert doc.rank == 1
    assert doc.gens == {"s": ((-1,),)}
    assert doc.marks == {"s": ((1,), (-2,))}
    assert doc.comments == ["the simply connected rank-one lattice"]


def test_mark_without_beta():
    doc = parse("kind lattice\nrank 1\ngen s\n-1\nmark s 2\n")
    assert doc.marks["s"] == ((2,), None)


def test_torus_marks_and_torsion_are_fractions():
    doc = parse("kind subgroup\nrank 2\ngen s\n0 1\n1 0\nh s 1/2 0\ntorsion 1/4 3/4\n")
    assert doc.torus_marks["s"] == (Fraction(1, 2), Fraction(0))
    assert doc.torsion == [(Fraction(1, 4), Fraction(3, 4))]


def test_dump_then_parse_is_the_identity():
    doc = parse(SU2)
    assert parse(dump(doc)) == doc


def test_inline_comments_and_blank_rows_are_skipped():
    doc = parse("kind lattice  # a comment\nrank 2\ngen s\n\n0 1  # row one\n1 0\n")
    assert doc.gens["s"] == ((0, 1), (1, 0))


@pytest.mark.parametrize("text,line,column", [
    ("rank 1\ngen s\n-1\n", 2, 1),
    ("kind lattice\nrank 1\ngen s\nx\n", 4, 1),
    ("kind lattice\nrank 2\ngen s\n1 0\n0\n", 5, 2),
    ("kind flat\nrank 1\n", 1, 2),
    ("kind lattice\nrank 1\nfrobnicate\n", 3, 1),
    ("kind lattice\nrank 1\ngen s\n-1\nmark s 1 | y\n", 5, 5),
])
def test_errors_carry_line_and_column(text, line, column):
    with pytest.raises(DocumentError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


def test_truncated_generator():
    with pytest.raises(DocumentError, match="truncated"):
        parse("kind lattice\nrank 2\ngen s\n0 1\n")


def test_duplicate_generator():
    with pytest.raises(DocumentError, match="duplicate"):
        parse("kind lattice\nrank 1\ngen s\n-1\ngen s\n-1\n")


def test_mark_for_unknown_generator():
    with pytest.raises(DocumentError, match="unknown generator"):
        parse("kind lattice\nrank 1\ngen s\n-1\nmark t 1\n")


def test_two_adic_needs_precision():
    with pytest.raises(DocumentError, match="precision"):
        parse("kind two-adic\nrank 1\ngen s\n-1\n")


def test_rank_zero_document():
    doc = parse("kind lattice\nrank 0\n")
    assert doc.rank == 0 and doc.gens == {}


@pytest.mark.parametrize("name", names())
def test_catalog_documents_round_trip(name):
    e = build_entry(name)
    for doc in (lattice_document(e.lattice, name), torus_document(e.torus, name),
                rootsystem_document(lattice_to_rootsystem(e.lattice), name)):
        assert parse(dump(doc)) == doc


def test_two_adic_document_round_trip():
    doc = two_adic_document(promote(build_entry("B2_sc").lattice, 10), "B2")
    back = parse(dump(doc))
    assert back == doc
    assert back.precision == 10


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(st.fractions(min_value=0, max_value=1, max_denominator=8), min_size=n, max_size=n))))
def test_random_documents_round_trip(data):
    n, rows, h = data
    doc = Document("torus-marking", n, gens={"g": tuple(map(tuple, rows))}, torus_marks={"g": tuple(h)})
    assert parse(dump(doc)) == doc
