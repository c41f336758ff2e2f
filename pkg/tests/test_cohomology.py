from fractions import Fraction

import pytest

from normext.catalog import build_entry
from normext.cochains import ExtensionCocycle, coboundary_witness, cohomologous, trivial_module
from normext.cohomology import (centralizer_class, closure, centralizer_compat_check, character_cocycle, coset_space,
                                determinant_character, double_coset_formula_check, double_cosets, fixing_subgroup,
                                induced_reflection_extension, restriction_kernel_mod2, shapiro_backward,
                                shapiro_forward, subgroup_view, vanishing_check)
from normext.extensions import reflection_extension
from normext.lattice import generate_group

HALF = Fraction(1, 2)


def group(name):
    return build_entry(name).lattice.group


def everything(G):
    return list(range(len(G)))


def test_coset_space_partitions_the_group():
    G = group("B2_sc")
    H = G.centralizer(G.reflections()[0])
    cs = coset_space(G, H)
    assert len(cs) == len(G) // len(H)
    assert cs.coset_of[G.identity] == cs.coset_of[cs.reps[0]]
    for g in range(len(G)):
        for j in range(len(cs)):
            assert cs.h(j, g) in H


def test_shapiro_with_h_equal_g_is_the_identity():
    G = group("A2_sc")
    k = character_cocycle(G, determinant_character(G), 2, "det")
    ind = shapiro_forward(k, subgroup_view(G, everything(G)))
    assert all(ind(a, b) == k(a, b) for a in range(6) for b in range(6))


def test_shapiro_of_trivial_class_is_zero():
    G = group("A2_sc")
    view = subgroup_view(G, G.centralizer(G.reflections()[0]))
    zero = ExtensionCocycle(trivial_module(view.group), lambda a, b: (0,), "0")
    ind = shapiro_forward(zero, view)
    assert all(not any(ind(a, b)) for a in range(6) for b in range(6))


@pytest.mark.parametrize("name", ["SU(2)", "A2_sc", "B2_sc", "G2_sc"])
def test_shapiro_round_trip_is_exact(name):
    G = group(name)
    for t in (G.reflections()[0], G.reflections()[-1]):
        view, k = centralizer_class(G, t)
        back = shapiro_backward(shapiro_forward(k, view), view)
        n = len(view.group)
        assert all(back(a, b) == k(a, b) for a in range(n) for b in range(n))


@pytest.mark.parametrize("name", ["SU(2)", "A2_sc", "B2_sc", "G2_sc", "A3_sc"])
def test_induced_route_matches_closed_rho(name):
    G = group(name)
    assert cohomologous(induced_reflection_extension(G), reflection_extension(G))


def test_double_cosets_with_k_equal_g():
    G = group("A2_sc")
    H = G.centralizer(G.reflections()[0])
    assert len(double_cosets(G, everything(G), H)) == 1


def test_double_cosets_of_a_reflection_in_a2():
    G = group("A2_sc")
    H = G.centralizer(G.reflections()[0])
    dec = double_cosets(G, H, H)
    assert len(dec) == 2
    assert sorted(len(o) for o in dec.orbits) == [1, 2]


@pytest.mark.parametrize("name", ["A2_sc", "B2_sc", "G2_sc"])
def test_double_coset_formula_with_k_equal_g(name):
    G = group(name)
    view, k = centralizer_class(G, G.reflections()[0])
    rep = double_coset_formula_check(G, everything(G), view.members, k)
    assert rep.cohomologous and rep.pieces == 1


def test_double_coset_formula_b2_centralizers():
    G = group("B2_sc")
    t, u = G.reflections()[0], G.reflections()[-1]
    view, k = centralizer_class(G, t)
    assert double_coset_formula_check(G, G.centralizer(u), view.members, k).cohomologous


def test_double_coset_formula_a3_fixing_subgroup():
    e = build_entry("A3_sc")
    G = e.lattice.group
    WA = fixing_subgroup(e.torus, [(HALF, 0, 0)])
    view, k = centralizer_class(G, G.reflections()[0])
    assert double_coset_formula_check(G, WA, view.members, k).cohomologous


def test_compat_with_trivial_subgroup():
    rep = centralizer_compat_check(build_entry("B2_sc").torus, [])
    assert rep.applicable and rep.cohomologous and rep.order == 8


def test_compat_b3_half_point():
    rep = centralizer_compat_check(build_entry("B3_sc").torus, [(HALF, 0, 0)])
    assert rep.applicable and rep.cohomologous


def test_compat_reports_non_reflection_fixers():
    # on G2 the whole of T[2] is fixed only by {1, -1}, and -1 is not a reflection
    rep = centralizer_compat_check(build_entry("G2_sc").torus, [(HALF, 0), (0, HALF)])
    assert rep.order == 2
    assert not rep.applicable
    assert "not applicable" in rep.summary()


def minus_identity(G):
    return G.find(tuple(tuple(-int(i == j) for j in range(G.dim)) for i in range(G.dim)))


@pytest.mark.parametrize("name,a", [("A2_sc", (HALF, 0)), ("B2_sc", (Fraction(1, 4), 0)), ("A3_sc", (HALF, 0, 0))])
def test_outside_pieces_vanish(name, a):
    e = build_entry(name)
    G = e.lattice.group
    WA = fixing_subgroup(e.torus, [a])
    for cls in G.conjugacy_classes(G.reflections()):
        for x, inside, trivial in vanishing_check(G, WA, cls[0]):
            assert inside or trivial


@pytest.mark.parametrize("name,a", [("B3_sc", (HALF, 0, 0)), ("G2_sc", (HALF, 0))])
def test_outside_pieces_survive_when_minus_identity_fixes_a(name, a):
    # -1 lies in W_A and centralizes every reflection while negating its root, so a piece
    # over a reflection outside W_A can carry the nonzero class; nu is still compatible
    e = build_entry(name)
    G = e.lattice.group
    WA = fixing_subgroup(e.torus, [a])
    assert minus_identity(G) in WA
    surviving = []
    for cls in G.conjugacy_classes(G.reflections()):
        dec = double_cosets(G, WA, G.centralizer(cls[0]))
        for (x, inside, trivial), Ka in zip(vanishing_check(G, WA, cls[0]), dec.intersections):
            if not inside and not trivial:
                surviving.append(x)
                assert minus_identity(G) in Ka
    assert surviving
    assert centralizer_compat_check(e.torus, [a]).cohomologous


def product_group(left, right):
    a, b = group(left), group(right)
    n, m = a.dim, b.dim

    def block(x, y):
        rows = [tuple(x[i]) + (0,) * m for i in range(n)]
        return tuple(rows + [(0,) * n + tuple(y[i]) for i in range(m)])

    gens = [block(a.elements[g], b.elements[b.identity]) for g in a.generators]
    gens += [block(a.elements[a.identity], b.elements[g]) for g in b.generators]
    return generate_group(gens)


def test_restriction_to_the_whole_group_is_injective():
    G = build_entry("A1xA1_sc").lattice.group
    assert restriction_kernel_mod2(G, everything(G)).injective


@pytest.mark.parametrize("right", ["A2_sc", "G2_sc"])
def test_restriction_to_odd_index_is_injective(right):
    G = product_group("SU(2)", right)
    sub = G.centralizer(G.reflections()[-1])
    sub = [g for g in sub if g in set(closure(G, [s for s in G.reflections() if s in set(sub)]))]
    rep = restriction_kernel_mod2(G, sub)
    assert rep.index % 2 == 1 and rep.h2_dim > 0
    assert rep.injective


def test_restriction_even_index_control_has_kernel():
    G = group("B2_sc")
    sub = G.centralizer(G.reflections()[0])
    rep = restriction_kernel_mod2(G, sub)
    assert rep.index == 2 and rep.kernel_dim > 0


def test_k_t_is_not_a_coboundary():
    G = group("G2_sc")
    _, k = centralizer_class(G, G.reflections()[0])
    assert not coboundary_witness(k)
