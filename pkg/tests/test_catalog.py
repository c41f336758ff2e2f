import itertools
from fractions import Fraction

import pytest

from normext import intmat
from normext.acceptance import conjugated_lattice
from normext.catalog import ALIASES, build_entry, cartan_matrix, names, nt_model, simply_connected_torus_splitting
from normext.extensions import normalizer_extension, split_check
from normext.rootdata import lattice_to_torus
from normext.words import find_simple_system

WEYL_ORDERS = {"SU(2)": 2, "U(2)": 2, "SO(4)": 4, "A2_sc": 6, "B2_ad": 8, "G2_sc": 12, "A3_sc": 24, "B3_sc": 48,
               "C3_ad": 48, "D4_sc": 192, "F4": 1152}


def fundamental_group_order(entry) -> int:
    """[L : span of the coroots], or 0 when a central torus is present."""
    lat = entry.lattice
    span = intmat.image_basis([m.b for m in lat.markings.values()], lat.rank)
    if len(span) < lat.rank:
        return 0
    return intmat.lattice_index(span, intmat.identity(lat.rank))


def test_rank_one_entries():
    su2, so3, u2 = (build_entry(n) for n in ("SU(2)", "SO(3)", "U(2)"))
    assert su2.rank == 1 and [m.b for m in su2.lattice.markings.values()] == [(1,)]
    assert list(su2.torus.markings.values()) == [(Fraction(1, 2),)]
    assert list(so3.torus.markings.values()) == [(Fraction(0),)]
    assert u2.rank == 2 and list(u2.torus.markings.values()) == [(Fraction(1, 2), Fraction(1, 2))]


def test_aliases_resolve():
    for alias, target in ALIASES.items():
        assert build_entry(alias) is build_entry(target)
    with pytest.raises(KeyError):
        build_entry("E8")


@pytest.mark.parametrize("name,order", sorted(WEYL_ORDERS.items()))
def test_weyl_group_orders(name, order):
    assert build_entry(name).lattice.group.order == order


@pytest.mark.parametrize("name", names())
def test_entries_validate(name):
    e = build_entry(name)
    assert e.lattice.validate().passed
    assert e.torus.validate().passed


@pytest.mark.parametrize("family,n", [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4)])
def test_adjoint_fundamental_group_is_cartan_determinant(family, n):
    tag = f"{family}{n}"
    sc = build_entry("F4" if tag == "F4" else f"{tag}_sc")
    ad = build_entry("F4" if tag == "F4" else f"{tag}_ad")
    assert fundamental_group_order(sc) == 1
    assert fundamental_group_order(ad) == abs(intmat.det(cartan_matrix(family, n)))


def test_intermediate_forms():
    assert fundamental_group_order(build_entry("SO(4)")) == 2
    assert fundamental_group_order(build_entry("SO(6)")) == 2
    assert fundamental_group_order(build_entry("U(2)")) == 0


@pytest.mark.parametrize("name", ["A2_sc", "B2_sc", "G2_sc", "B3_sc", "D4_sc"])
def test_simply_connected_splitting(name):
    assert simply_connected_torus_splitting(build_entry(name))["basis"]


def test_adjoint_a2_is_rejected_with_index_three():
    with pytest.raises(ValueError, match="index 3"):
        simply_connected_torus_splitting(build_entry("A2_ad"))


def test_nt_model_rank_one():
    assert not split_check(nt_model(build_entry("SU(2)")))
    assert split_check(nt_model(build_entry("SO(3)")))


def test_g2_forms_agree():
    sc, ad = build_entry("G2_sc"), build_entry("G2_ad")
    ss_sc, ss_ad = find_simple_system(sc.lattice.group), find_simple_system(ad.lattice.group)
    target = [sc.lattice.markings[s].b for s in ss_sc.simples]
    matches = []
    for perm in itertools.permutations(ss_ad.simples):
        for signs in itertools.product((1, -1), repeat=2):
            src = [tuple(e * x for x in ad.lattice.markings[s].b) for e, s in zip(signs, perm)]
            q = intmat.matmul(intmat.transpose(target), intmat.integer_inverse(intmat.transpose(src)))
            moved = conjugated_lattice(ad.lattice, q)
            if moved == sc.lattice:
                matches.append(moved)
    assert matches
    # transported adjoint data carries the same normalizer class
    nu_moved = normalizer_extension(lattice_to_torus(matches[0]))
    assert split_check(nt_model(sc) - nu_moved)
    assert bool(split_check(nt_model(sc))) == bool(split_check(nt_model(ad)))
