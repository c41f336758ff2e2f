import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import conjugate, unimodular

from normext import intmat
from normext.catalog import build_entry
from normext.lattice import (GroupTooLargeError, StrictMarking, conjugate_marking, eigenlattice, generate_group,
                             is_reflection, is_trivial_mod2, markings_of, negative_image_chain, reflections_in)

NEG1 = ((-1,),)
SWAP = ((0, 1), (1, 0))
DIAG = ((-1, 0), (0, 1))
B2_GENS = [((-1, 0), (0, 1)), ((0, 1), (1, 0))]


def test_is_reflection_examples():
    assert is_reflection(NEG1)
    assert not is_reflection(intmat.identity(2))
    assert is_reflection(SWAP)
    assert not is_reflection(((-1, 0), (0, -1)))


def test_is_reflection_rejects_non_invertible():
    with pytest.raises(ValueError):
        is_reflection(((2, 0), (0, 1)))


def test_generate_group_orders():
    assert generate_group([NEG1]).order == 2
    assert generate_group(B2_GENS).order == 8


def test_generate_group_catches_infinite_order():
    with pytest.raises(GroupTooLargeError):
        generate_group([((1, 1), (0, 1))], cap=1000)


def test_group_is_closed_and_ordered():
    g = generate_group(B2_GENS)
    assert g.elements == sorted(g.elements)
    for a in range(len(g)):
        for b in range(len(g)):
            assert intmat.matmul(g.elements[a], g.elements[b]) in g


@pytest.mark.parametrize("name,count", [("SU(2)", 1), ("A2_sc", 3), ("B2_sc", 4), ("G2_sc", 6), ("B3_sc", 9)])
def test_reflection_counts(name, count):
    assert len(reflections_in(build_entry(name).lattice.group)) == count


def test_markings_of_rank_one():
    assert sorted(m.b for m in markings_of(NEG1)) == [(1,), (2,)]


def test_markings_of_swap():
    (m,) = markings_of(SWAP)
    assert m.b == (1, -1)


def test_markings_of_diag():
    assert len(markings_of(DIAG)) == 2


def test_trivial_mod2_examples():
    assert is_trivial_mod2(DIAG)
    assert not is_trivial_mod2(SWAP)
    assert is_trivial_mod2(NEG1)


def test_eigenlattices_of_swap():
    assert eigenlattice(NEG1, -1) == [(1,)]
    assert eigenlattice(SWAP, -1) == [(1, -1)]
    assert eigenlattice(SWAP, 1) == [(1, 1)]


def test_conjugate_marking_examples():
    (m,) = markings_of(SWAP)
    assert conjugate_marking(intmat.identity(2), m) == m
    flipped = conjugate_marking(SWAP, m)
    assert flipped == StrictMarking(tuple(-x for x in m.b), tuple(-x for x in m.beta))
    assert flipped.canonical() == m.canonical()


def test_conjugate_marking_moves_between_reflections_of_a2():
    g = build_entry("A2_sc").lattice.group
    s1 = g.reflections()[0]
    (m,) = markings_of(g.elements[s1])
    for w in range(len(g)):
        image = conjugate_marking(g.elements[w], m)
        assert image.matrix() == g.elements[g.conj(w, s1)]


reflection_pool = [build_entry(n).lattice.group.elements[s]
                   for n in ("SU(2)", "U(2)", "B2_sc", "G2_ad", "A3_sc")
                   for s in build_entry(n).lattice.group.reflections()]


@st.composite
def conjugated_reflection(draw):
    sigma = draw(st.sampled_from(reflection_pool))
    return conjugate(draw(unimodular(len(sigma))), sigma)


@given(conjugated_reflection())
def test_markings_reproduce_the_reflection(sigma):
    for m in markings_of(sigma):
        assert m.matrix() == sigma
        assert intmat.dot(m.beta, m.b) == -2


@given(conjugated_reflection())
def test_marking_count_law(sigma):
    assert len(markings_of(sigma)) == (2 if is_trivial_mod2(sigma) else 1)


@given(conjugated_reflection())
def test_negative_chain_indices(sigma):
    # 2 ker(1+s) <= im(1-s) <= ker(1+s); the left inclusion is equality iff trivial mod 2
    top, bottom = negative_image_chain(sigma)
    assert top * bottom == 2
    assert (top == 2) == is_trivial_mod2(sigma)
