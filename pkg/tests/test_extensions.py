from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normext.catalog import build_entry
from normext.cochains import ExtensionCocycle, cocycle_defect, coboundary_witness, is_cocycle
from normext.extensions import (SemidirectElement, centralizer_splitting, normalizer_extension, presentation_check,
                                pushforward, reflection_data, reflection_extension, reflection_length,
                                semidirect_inv, semidirect_mul, split_check, tits_cocycle, tits_cocycle_raw,
                                tits_subgroup, tits_vs_reflection, tits_word_element)
from normext.lattice import generate_group
from normext.rootdata import MarkedReflectionTorus
from normext.words import find_simple_system


def group(name):
    return build_entry(name).lattice.group


def simple_system(name):
    return find_simple_system(group(name))


def torus_with(h):
    g = generate_group([((-1,),)])
    return MarkedReflectionTorus(g, {g.reflections()[0]: (Fraction(h),)})


def test_centralizer_splitting_rank_one():
    g = group("SU(2)")
    sp = centralizer_splitting(g, g.reflections()[0])
    assert sorted(sp.centralizer) == list(range(len(g)))
    assert sp.perp == [g.identity]


def test_centralizer_splitting_b2_long_class():
    g = group("B2_sc")
    for t in g.reflections():
        sp = centralizer_splitting(g, t)
        assert len(sp.centralizer) == 4
        (other,) = [p for p in sp.perp if p != g.identity]
        assert other in g.reflections() and other != t


def test_centralizer_splitting_a2():
    g = group("A2_sc")
    for t in g.reflections():
        sp = centralizer_splitting(g, t)
        assert sorted(sp.centralizer) == sorted([g.identity, t])
        assert sp.perp == [g.identity]


def test_reflection_length_of_a2():
    g = group("A2_sc")
    # identity, three reflections, two rotations
    assert sorted(reflection_length(g)) == [0, 1, 1, 1, 2, 2]


def test_rho_rank_one_is_the_nonzero_class():
    g = group("SU(2)")
    s = g.reflections()[0]
    rho = reflection_extension(g)
    assert rho(s, s) == (1,)
    assert not coboundary_witness(rho)


def test_rho_of_trivial_group_is_zero():
    g = generate_group([], dim=2)
    rho = reflection_extension(g)
    assert rho(g.identity, g.identity) == ()


@pytest.mark.parametrize("name", ["SU(2)", "A2_sc", "B2_sc", "G2_sc", "A3_sc", "B3_sc"])
def test_rho_and_tau_are_cocycles(name):
    ss = simple_system(name)
    assert is_cocycle(reflection_extension(ss.group))
    assert is_cocycle(tits_cocycle(ss))


def test_tits_generators():
    assert len(tits_subgroup(simple_system("SU(2)"))) == 1
    ss = simple_system("A2_sc")
    gens = tits_subgroup(ss)
    assert len(gens) == 2
    data = reflection_data(ss.group)
    for q in gens:
        sq = semidirect_mul(data, q, q)
        assert sq.part == ss.group.identity
        assert sq.vec == tuple(2 * v for v in q.vec)


def test_tits_word_elements():
    ss = simple_system("B2_sc")
    data = reflection_data(ss.group)
    zero = (0,) * len(data.refl)
    assert tits_word_element(ss, ()) == SemidirectElement(zero, ss.group.identity)
    q = tits_subgroup(ss)[0]
    assert tits_word_element(ss, (0,)) == q
    assert tits_word_element(ss, (0, 0)) == SemidirectElement(tuple(2 * v for v in q.vec), ss.group.identity)


def test_semidirect_inverse():
    ss = simple_system("G2_sc")
    data = reflection_data(ss.group)
    x = tits_word_element(ss, (0, 1, 0))
    e = semidirect_mul(data, x, semidirect_inv(data, x))
    assert e.part == ss.group.identity and not any(e.vec)


def test_tits_cocycle_rank_one_and_normalization():
    ss = simple_system("SU(2)")
    s = ss.simples[0]
    tau = tits_cocycle(ss)
    assert tau(s, s) == (1,)
    g = ss.group
    assert all(not any(tau(g.identity, w)) for w in range(len(g)))


def test_tits_raw_values_are_even_for_b2():
    raw = tits_cocycle_raw(simple_system("B2_sc"))
    assert len(raw) == 64
    assert all(v % 2 == 0 for vec in raw.values() for v in vec)


@pytest.mark.parametrize("name", ["SU(2)", "A2_sc", "B2_sc", "G2_sc"])
def test_tits_and_reflection_are_cohomologous(name):
    g = group(name)
    res = tits_vs_reflection(g, find_simple_system(g))
    assert res and res.witness is not None


def test_normalizer_rank_one_values():
    g = group("SU(2)")
    s = g.reflections()[0]
    assert normalizer_extension(torus_with(Fraction(1, 2)))(s, s) == (1,)  # the torus point 1/2
    nu0 = normalizer_extension(torus_with(0))
    assert all(nu0(a, b) == (0,) for a in range(2) for b in range(2))


def test_normalizer_of_u2_takes_the_central_value():
    e = build_entry("U(2)")
    s = e.lattice.group.reflections()[0]
    assert normalizer_extension(e.torus)(s, s) == (1, 1)


def test_split_verdicts_rank_one():
    assert not split_check(normalizer_extension(build_entry("SU(2)").torus))
    assert split_check(normalizer_extension(build_entry("SO(3)").torus))


def test_u2_normalizer_splits_by_permutation_matrices():
    # the swap lifts to an involution in N(T) of U(2), so the extension splits
    assert split_check(normalizer_extension(build_entry("U(2)").torus))


def test_doubled_class_over_z2_splits():
    nu = normalizer_extension(build_entry("SU(2)").torus)
    assert split_check(nu + nu)


def test_pushforward_of_rho_is_nu():
    e = build_entry("B2_sc")
    g = e.lattice.group
    data = reflection_data(g)
    nu = normalizer_extension(e.torus)
    images = [[int(2 * x) for x in e.torus.markings[s]] for s in data.refl]
    pushed = pushforward(reflection_extension(g), images, nu.module)
    assert all(pushed(a, b) == nu(a, b) for a in range(len(g)) for b in range(len(g)))


@pytest.mark.parametrize("name", ["SU(2)", "SO(3)", "U(2)", "G2_sc", "B3_ad"])
def test_presentation(name):
    e = build_entry(name)
    rep = presentation_check(e.torus, find_simple_system(e.lattice.group))
    assert rep.passed, rep.summary()
    assert rep.square and rep.conjugation and all(rep.braid.values())


def test_presentation_g2_braid_is_order_six():
    e = build_entry("G2_sc")
    rep = presentation_check(e.torus, find_simple_system(e.lattice.group))
    assert rep.coxeter_matrix[0][1] == 6


def test_cocycle_defect_catches_a_broken_cocycle():
    g = group("A2_sc")
    rho = reflection_extension(g)
    a, b = 1, 2
    broken = ExtensionCocycle(rho.module, lambda x, y: tuple(v + (1 if (x, y) == (a, b) else 0) for v in rho(x, y)))
    assert cocycle_defect(broken)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["A2_ad", "B2_ad", "G2_ad", "A3_ad", "C3_sc", "SO(6)"]))
def test_normalizer_extensions_are_cocycles(name):
    assert is_cocycle(normalizer_extension(build_entry(name).torus))
