"""Built-in marked reflection lattices for compact connected Lie groups.

The lattice is the cocharacter lattice pi_1(T). Markings are
(b, beta) = (coroot, -root), so the torus marking b/2 is the image of -1
under the coroot. The simply connected form uses the coroot lattice, the
adjoint form the coweight lattice, and intermediate forms add coweights.
Cartan integers are computed from Euclidean simple roots, never typed in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import intmat
from .intmat import Matrix
from .lattice import FiniteMatrixGroup, StrictMarking, generate_group
from .rootdata import MarkedReflectionLattice, MarkedReflectionTorus, lattice_to_torus, marking_family


def _simple_roots(family: str, n: int) -> list[tuple[int, ...]]:
    e = lambda i, dim: tuple(int(j == i) for j in range(dim))  # noqa: E731
    sub = lambda u, v: tuple(a - b for a, b in zip(u, v))  # noqa: E731
    add = lambda u, v: tuple(a + b for a, b in zip(u, v))  # noqa: E731
    if family == "A":
        return [sub(e(i, n + 1), e(i + 1, n + 1)) for i in range(n)]
    if family in "BCD":
        base = [sub(e(i, n), e(i + 1, n)) for i in range(n - 1)]
        if family == "B":
            return base + [e(n - 1, n)]
        if family == "C":
            return base + [tuple(2 * x for x in e(n - 1, n))]
        return base + [add(e(n - 2, n), e(n - 1, n))]
    if family == "G":
        return [(1, -1, 0), (-2, 1, 1)]
    if family == "F":
        return [(0, 2, -2, 0), (0, 0, 2, -2), (0, 0, 0, 2), (1, -1, -1, -1)]
    raise ValueError(f"unknown family {family}")


def cartan_matrix(family: str, n: int) -> list[list[int]]:
    """a[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)."""
    roots = _simple_roots(family, n)
    out = []
    for a in roots:
        aa = intmat.dot(a, a)
        row = []
        for b in roots:
            v = Fraction(2 * intmat.dot(a, b), aa)
            assert v.denominator == 1
            row.append(int(v))
        out.append(row)
    return out


def _product_cartan(parts: Sequence[tuple[str, int]]) -> list[list[int]]:
    blocks = [cartan_matrix(f, n) for f, n in parts]
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def lattice_from_cartan(cartan: list[list[int]], extra_coweights: Sequence[Sequence[int]] = (), adjoint: bool = False) -> MarkedReflectionLattice:
    """Marked lattice between the coroot and coweight lattices.

    Coordinates are first taken in the coroot basis, where the root alpha_j
    is the functional x -> sum_i a[i][j] x_i. The lattice is spanned by the
    coroots plus ``extra_coweights`` (given in fundamental coweight
    coordinates), or all coweights if ``adjoint``.
    """
    l = len(cartan)
    # root functionals, rows indexed by j
    R = [[cartan[i][j] for i in range(l)] for j in range(l)]
    Rinv = intmat.rational_inverse(R)  # column j = fundamental coweight j in coroot coordinates
    gens = [tuple(Fraction(int(i == j)) for i in range(l)) for j in range(l)]
    cw = [tuple(Rinv[i][j] for i in range(l)) for j in range(l)]
    if adjoint:
        gens += cw
    for c in extra_coweights:
        gens.append(tuple(sum(Fraction(c[j]) * cw[j][i] for j in range(l)) for i in range(l)))
    # basis of the lattice spanned by gens: clear denominators, take row space, rescale
    den = 1
    for v in gens:
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
    basis_int = intmat.image_basis([tuple(int(x * den) for x in v) for v in gens], l)
    B = [[Fraction(basis_int[j][i], den) for j in range(l)] for i in range(l)]  # columns = basis vectors
    Binv = intmat.rational_inverse(B)

    def to_int(m):
        assert all(x.denominator == 1 for row in m for x in row), "lattice not W-stable or not between coroot and coweight lattices"
        return tuple(tuple(int(x) for x in row) for row in m)

    simple_mats, simple_marks = [], []
    for i in range(l):
        coroot = tuple(Fraction(int(k == i)) for k in range(l))
        b = [sum(Binv[r][k] * coroot[k] for k in range(l)) for r in range(l)]
        beta = [-sum(R[i][k] * B[k][c] for k in range(l)) for c in range(l)]
        mk = StrictMarking(to_int([b])[0], to_int([beta])[0])
        simple_mats.append(mk.matrix())
        simple_marks.append(mk)
    group = generate_group(simple_mats, dim=l) if l else generate_group([], dim=0)
    fam = marking_family(group, {group.find(m): mk for m, mk in zip(simple_mats, simple_marks)})
    return MarkedReflectionLattice(group, fam)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass
class CatalogEntry:
    name: str
    cartan_type: str
    rank: int
    form: str
    lattice: MarkedReflectionLattice
    expected: dict = field(default_factory=dict)

    @property
    def torus(self) -> MarkedReflectionTorus:
        return lattice_to_torus(self.lattice)


def _u2() -> MarkedReflectionLattice:
    swap = ((0, 1), (1, 0))
    group = generate_group([swap])
    return MarkedReflectionLattice(group, {group.find(swap): StrictMarking((1, -1), (-1, 1))})


# name -> (type label, rank, form, builder, expected facts)
_ENTRIES: dict[str, tuple] = {
    "SU(2)": ("A1", "SC", lambda: lattice_from_cartan(cartan_matrix("A", 1)), {"split": False, "h": "1/2"}),
    "SO(3)": ("A1", "adjoint", lambda: lattice_from_cartan(cartan_matrix("A", 1), adjoint=True), {"split": True, "h": "0"}),
    "U(2)": ("A1+T1", "U(2)", _u2, {"h": "(1/2, 1/2)"}),
    "A1xA1_sc": ("A1xA1", "SC", lambda: lattice_from_cartan(_product_cartan([("A", 1), ("A", 1)])), {}),
    "A1xA1_ad": ("A1xA1", "adjoint", lambda: lattice_from_cartan(_product_cartan([("A", 1), ("A", 1)]), adjoint=True), {}),
    "SO(4)": ("A1xA1", "intermediate: coroots + (w1 + w2)",
              lambda: lattice_from_cartan(_product_cartan([("A", 1), ("A", 1)]), extra_coweights=[(1, 1)]), {}),
    "A2_sc": ("A2", "SC", lambda: lattice_from_cartan(cartan_matrix("A", 2)), {}),
    "A2_ad": ("A2", "adjoint", lambda: lattice_from_cartan(cartan_matrix("A", 2), adjoint=True), {}),
    "B2_sc": ("B2", "SC", lambda: lattice_from_cartan(cartan_matrix("B", 2)), {}),
    "B2_ad": ("B2", "adjoint", lambda: lattice_from_cartan(cartan_matrix("B", 2), adjoint=True), {}),
    "G2_sc": ("G2", "SC", lambda: lattice_from_cartan(cartan_matrix("G", 2)), {}),
    "G2_ad": ("G2", "adjoint", lambda: lattice_from_cartan(cartan_matrix("G", 2), adjoint=True), {}),
    "A3_sc": ("A3", "SC", lambda: lattice_from_cartan(cartan_matrix("A", 3)), {}),
    "A3_ad": ("A3", "adjoint", lambda: lattice_from_cartan(cartan_matrix("A", 3), adjoint=True), {}),
    "SO(6)": ("A3", "intermediate: coroots + w2", lambda: lattice_from_cartan(cartan_matrix("A", 3), extra_coweights=[(0, 1, 0)]), {}),
    "B3_sc": ("B3", "SC", lambda: lattice_from_cartan(cartan_matrix("B", 3)), {}),
    "B3_ad": ("B3", "adjoint", lambda: lattice_from_cartan(cartan_matrix("B", 3), adjoint=True), {}),
    "C3_sc": ("C3", "SC", lambda: lattice_from_cartan(cartan_matrix("C", 3)), {}),
    "C3_ad": ("C3", "adjoint", lambda: lattice_from_cartan(cartan_matrix("C", 3), adjoint=True), {}),
    "D4_sc": ("D4", "SC", lambda: lattice_from_cartan(cartan_matrix("D", 4)), {}),
    "D4_ad": ("D4", "adjoint", lambda: lattice_from_cartan(cartan_matrix("D", 4), adjoint=True), {}),
    "F4": ("F4", "SC", lambda: lattice_from_cartan(cartan_matrix("F", 4)), {}),
}

ALIASES = {"A1_sc": "SU(2)", "A1_ad": "SO(3)", "F4_sc": "F4", "F4_ad": "F4"}

_cache: dict[str, CatalogEntry] = {}


def names() -> list[str]:
    return list(_ENTRIES)


def build_entry(name: str) -> CatalogEntry:
    name = ALIASES.get(name, name)
    if name not in _ENTRIES:
        raise KeyError(f"unknown catalog entry {name!r}")
    if name not in _cache:
        label, form, builder, expected = _ENTRIES[name]
        lat = builder()
        _cache[name] = CatalogEntry(name, label, lat.rank, form, lat, dict(expected))
    return _cache[name]


def simply_connected_torus_splitting(entry: CatalogEntry) -> dict:
    """Check that the simple coroots b_{s_i} form a basis of L.

    Then T is the direct sum of the circles T(1) (x) <b_{s_i}>, which are the
    identity components of the negative tori of the simple reflections.
    """
    from .words import find_simple_system

    lat = entry.lattice
    ss = find_simple_system(lat.group)
    basis = [lat.markings[s].b for s in ss.simples]
    d = abs(intmat.det(basis)) if basis else 1
    report = {"entry": entry.name, "simple_roots": basis, "index": d, "basis": d == 1 and len(basis) == lat.rank}
    if not report["basis"]:
        raise ValueError(f"{entry.name} is not simply connected: simple coroots span a sublattice of index {d}"
                         if len(basis) == lat.rank else f"{entry.name} has a central torus")
    return report


def nt_model(entry: CatalogEntry):
    """The normalizer extension of the entry's marked torus: a model for N(T) of the Lie group."""
    from .extensions import normalizer_extension

    return normalizer_extension(entry.torus)
