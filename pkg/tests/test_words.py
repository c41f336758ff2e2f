import pytest
from hypothesis import given
from hypothesis import strategies as st

from normext import intmat
from normext.catalog import build_entry
from normext.words import (all_minimal_words, find_simple_system, is_minimal, length, prod_word, reflection_sequence,
                           word_image)


def simple_system(name):
    return find_simple_system(build_entry(name).lattice.group)


def test_rank_one_simple_system():
    ss = simple_system("SU(2)")
    assert ss.simples == ss.group.reflections()


@pytest.mark.parametrize("name,m", [("A2_sc", 3), ("B2_sc", 4), ("G2_sc", 6)])
def test_rank_two_coxeter_numbers(name, m):
    ss = simple_system(name)
    assert ss.rank == 2
    assert ss.coxeter_matrix == [[1, m], [m, 1]]


def test_f4_coxeter_matrix_is_a_chain_3_4_3():
    ss = simple_system("F4")
    off = sorted(ss.coxeter_matrix[i][j] for i in range(4) for j in range(i + 1, 4))
    assert off == [2, 2, 2, 3, 3, 4]


def test_prod_word_ends_on_the_right_letter():
    assert prod_word(0, 0, 1) == ()
    assert prod_word(1, 0, 1) == (1,)
    assert prod_word(2, 0, 1) == (0, 1)
    assert prod_word(3, 0, 1) == (1, 0, 1)


def test_word_image_examples():
    ss = simple_system("A2_sc")
    g = ss.group
    assert word_image(ss, ()) == g.identity
    assert word_image(ss, (0, 0)) == g.identity
    third = word_image(ss, (0, 1, 0))
    assert third in g.reflections() and third not in ss.simples


def test_lengths_in_b2():
    ss = simple_system("B2_sc")
    lengths = ss.lengths()
    assert length(ss, ss.group.identity) == 0
    assert all(length(ss, s) == 1 for s in ss.simples)
    assert max(lengths) == 4
    assert sorted(lengths) == [0, 1, 1, 2, 2, 3, 3, 4]


def test_reflection_sequence_examples():
    ss = simple_system("A2_sc")
    g = ss.group
    s0, s1 = ss.simples
    assert reflection_sequence(ss, (0,)) == [s0]
    assert reflection_sequence(ss, (0, 1)) == [s0, g.conj(s0, s1)]
    longest = max(range(len(g)), key=lambda x: ss.lengths()[x])
    (w, *_) = all_minimal_words(ss, longest)
    assert sorted(reflection_sequence(ss, w)) == sorted(g.reflections())


@pytest.mark.parametrize("name", ["A2_sc", "B2_sc", "G2_sc", "A3_sc"])
def test_number_of_positive_roots_is_longest_length(name):
    ss = simple_system(name)
    assert max(ss.lengths()) == len(ss.group.reflections())


def test_all_minimal_words_of_longest_a2():
    ss = simple_system("A2_sc")
    longest = max(range(6), key=lambda x: ss.lengths()[x])
    assert all_minimal_words(ss, longest) == [(0, 1, 0), (1, 0, 1)]


def test_reduced_word_count_of_longest_a3():
    # the longest element of S_4 has 16 reduced words (standard Young tableaux of shape (3,2,1))
    ss = simple_system("A3_sc")
    longest = max(range(24), key=lambda x: ss.lengths()[x])
    assert len(all_minimal_words(ss, longest)) == 16


@given(st.sampled_from(["A2_sc", "B2_sc", "G2_sc", "A3_sc"]), st.lists(st.integers(0, 2), max_size=10))
def test_lengths_are_subadditive_and_parity_preserving(name, raw):
    ss = simple_system(name)
    word = tuple(i % ss.rank for i in raw)
    x = word_image(ss, word)
    assert length(ss, x) <= len(word)
    assert length(ss, x) % 2 == len(word) % 2
    # determinant detects parity independently of the BFS
    assert intmat.det(ss.group.elements[x]) == (-1) ** len(word)
    assert is_minimal(ss, word) == (length(ss, x) == len(word))


@given(st.sampled_from(["B2_sc", "G2_sc", "A3_sc"]), st.data())
def test_lexfirst_words_are_minimal(name, data):
    ss = simple_system(name)
    x = data.draw(st.integers(0, len(ss.group) - 1))
    w = ss.lexfirst_words()[x]
    assert word_image(ss, w) == x and len(w) == ss.lengths()[x]
    assert w == all_minimal_words(ss, x)[0]
