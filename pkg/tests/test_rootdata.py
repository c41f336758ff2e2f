from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normext.acceptance import conjugated_lattice, round_trip
from normext.catalog import build_entry
from normext.lattice import generate_group, markings_of
from normext.rootdata import (MarkedReflectionLattice, RootSystem, all_marking_families, count_root_systems, dualize,
                              integral_form, lattice_to_rootsystem, lattice_to_torus, marked_lattice,
                              rootsystem_to_lattice, torus_marking_conditions, torus_to_lattice, validate_root_system)
from strategies import unimodular

A1_SC = RootSystem.build(1, [((1,), (-2,)), ((-1,), (2,))])


def rank_one(b):
    g = generate_group([((-1,),)])
    (m,) = [mk for mk in markings_of(((-1,),)) if mk.b == (b,)]
    return MarkedReflectionLattice(g, {g.find(((-1,),)): m})


def test_a1_axioms_pass():
    assert validate_root_system(A1_SC).passed


def test_doubled_root_breaks_r3():
    rs = RootSystem.build(1, [((1,), (-2,)), ((-1,), (2,)), ((2,), (-1,)), ((-2,), (1,))])
    rep = validate_root_system(rs)
    assert not rep.results["R3"]


def test_empty_root_system_is_valid():
    assert validate_root_system(RootSystem.build(1, [])).passed


def test_rank_one_lattices_to_root_systems():
    assert lattice_to_rootsystem(rank_one(1)).roots == ((-1,), (1,))
    assert lattice_to_rootsystem(rank_one(2)).roots == ((-2,), (2,))
    for b in (1, 2):
        assert rootsystem_to_lattice(lattice_to_rootsystem(rank_one(b))) == rank_one(b)


def test_b2_marking_families_give_b2_and_c2():
    g = build_entry("B2_sc").lattice.group
    systems = [lattice_to_rootsystem(MarkedReflectionLattice(g, fam)) for fam in all_marking_families(g)]
    assert len(systems) == 2
    assert all(len(rs.roots) == 8 for rs in systems)
    # the long roots are the doubled ones; which class is doubled tells B2 from C2
    def doubled(rs):
        return sorted(r for r in rs.roots if all(x % 2 == 0 for x in r))
    assert doubled(systems[0]) != doubled(systems[1])


def test_dualize_swaps_sc_and_adjoint_in_rank_one():
    rs = lattice_to_rootsystem(rank_one(1))
    assert dualize(rs) == lattice_to_rootsystem(rank_one(2))
    assert dualize(dualize(rs)) == rs


def test_torus_markings_in_rank_one():
    assert list(lattice_to_torus(rank_one(1)).markings.values()) == [(Fraction(1, 2),)]
    assert list(lattice_to_torus(rank_one(2)).markings.values()) == [(Fraction(0),)]


def test_torus_marking_halves_b_componentwise():
    # a marking with b = (1, -1) halves to (1/2, 1/2) mod 1
    t = lattice_to_torus(build_entry("U(2)").lattice)
    assert list(t.markings.values()) == [(Fraction(1, 2), Fraction(1, 2))]


def test_torus_marking_conditions_on_rank_one():
    conds = torus_marking_conditions(((-1,),), (Fraction(1, 2),))
    assert all(conds.values())
    assert not torus_marking_conditions(((-1,),), (Fraction(1, 4),))["two_torsion"]


@pytest.mark.parametrize("name,count", [("SU(2)", 2), ("B2_sc", 2), ("A2_sc", 1), ("A1xA1_sc", 4), ("G2_sc", 1)])
def test_count_root_systems(name, count):
    g = build_entry(name).lattice.group
    assert count_root_systems(g) == count
    assert len(all_marking_families(g)) == count


def test_integral_forms_of_a1():
    roots = [(1,), (-1,)]
    sc = integral_form(roots, [(1,)])
    ad = integral_form(roots, [(Fraction(1, 2),)])
    assert sorted(sc.roots) == [(-1,), (1,)]
    assert sorted(ad.roots) == [(-2,), (2,)]
    with pytest.raises(ValueError):
        integral_form(roots, [(Fraction(1, 4),)])


def test_integral_forms_of_b2():
    roots = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]
    assert validate_root_system(integral_form(roots, [(1, 0), (0, 1)])).passed
    l_max = [(1, 0), (Fraction(1, 2), Fraction(1, 2))]
    assert validate_root_system(integral_form(roots, l_max)).passed
    with pytest.raises(ValueError):
        integral_form(roots, [(Fraction(1, 2), 0), (0, Fraction(1, 2))])


def test_marked_lattice_choices():
    gens = [((-1, 0), (0, 1)), ((0, 1), (1, 0))]
    short = marked_lattice(gens, "short")
    long = marked_lattice(gens, "long")
    assert short != long
    assert short.validate().passed and long.validate().passed


@pytest.mark.parametrize("name", ["SU(2)", "U(2)", "SO(4)", "B2_ad", "G2_sc", "A3_sc", "SO(6)", "C3_ad", "D4_sc"])
def test_catalog_round_trips(name):
    assert round_trip(build_entry(name).lattice)


pool = ["SU(2)", "SO(3)", "U(2)", "A1xA1_sc", "SO(4)", "A2_ad", "B2_sc", "G2_sc", "A3_ad", "B3_sc", "C3_sc"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(pool), st.data())
def test_round_trip_after_change_of_basis(name, data):
    lat = build_entry(name).lattice
    fam = data.draw(st.sampled_from(all_marking_families(lat.group)))
    q = data.draw(unimodular(lat.rank))
    moved = conjugated_lattice(lat, q, fam)
    assert moved.validate().passed
    assert round_trip(moved)
    assert torus_to_lattice(lattice_to_torus(moved)) == moved
