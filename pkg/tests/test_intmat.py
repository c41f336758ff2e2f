from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normext import intmat

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_hensel_sqrt_of_minus_seven():
    for k in (8, 16, 40):
        x = intmat.hensel_sqrt((-7) % 2**k, k)
        assert (x * x + 7) % 2**k == 0


def test_hensel_sqrt_rejects_non_squares():
    with pytest.raises(ValueError):
        intmat.hensel_sqrt(3, 10)


def test_valuation2():
    assert [intmat.valuation2(x) for x in (1, 2, 12, -8)] == [0, 1, 2, 3]


def test_integer_inverse_of_unimodular():
    a = ((2, 1), (1, 1))
    assert intmat.matmul(a, intmat.integer_inverse(a)) == intmat.identity(2)


def test_integer_inverse_rejects_det_two():
    with pytest.raises(intmat.NotInvertibleError):
        intmat.integer_inverse(((2, 0), (0, 1)))


def test_rational_inverse_matches_integer_inverse():
    a = ((3, 2), (1, 1))
    inv = intmat.rational_inverse(a)
    assert all(isinstance(x, Fraction) for row in inv for x in row)
    assert tuple(tuple(int(x) for x in row) for row in inv) == intmat.integer_inverse(a)


@given(matrices(3, 3))
def test_smith_diagonal_divisibility(a):
    s = intmat.smith(a)
    d = [abs(x) for x in s.diag]
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    # |det| is the product of the invariant factors when full rank
    if s.rank == 3:
        prod = 1
        for x in d:
            prod *= x
        assert prod == abs(intmat.det(a))
    else:
        assert intmat.det(a) == 0


@given(matrices(2, 4))
def test_kernel_vectors_are_killed_and_saturated(a):
    ker = intmat.kernel_basis(a, 4)
    for v in ker:
        assert intmat.matvec(a, v) == (0, 0)
    assert len(ker) == 4 - intmat.rank(a)
    assert intmat.saturate(ker, 4) == ker or intmat.lattice_index(ker, intmat.saturate(ker, 4)) == 1


@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_returns_true_solutions(a, x):
    b = intmat.matvec(a, x)
    y = intmat.solve(a, b)
    assert y is not None and intmat.matvec(a, y) == b


@settings(max_examples=50)
@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_mod_power_of_two(a, x):
    mod = 64
    b = intmat.matvec(a, x, mod)
    y = intmat.solve(a, b, mod)
    assert y is not None and intmat.matvec(a, y, mod) == b


def test_solve_detects_no_solution():
    assert intmat.solve(((2, 0), (0, 2)), (1, 0)) is None


def test_lattice_index_of_doubled_lattice():
    assert intmat.lattice_index(((2, 0), (0, 2)), ((1, 0), (0, 1))) == 4


def test_inverse_mod():
    a = ((3, 2), (4, 1))  # det -5 is odd
    inv = intmat.inverse_mod(a, 256)
    assert intmat.matmul(a, inv, 256) == intmat.identity(2)
