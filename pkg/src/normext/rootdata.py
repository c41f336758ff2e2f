"""Root systems, marked reflection lattices and marked reflection tori.

The three structures determine each other:

* a marked lattice gives roots {+-b_sigma} with coroots +-beta_sigma;
* a root system gives reflections x -> x + n_r(x) r, which generate W;
* a lattice marking b gives the torus marking b/2 mod L.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import intmat
from .intmat import Matrix, Vector
from .lattice import (DEFAULT_CAP, FiniteMatrixGroup, StrictMarking, canonical_vector, conjugate_marking,
                      generate_group, is_trivial_mod2, markings_of, negative_root_vector)

TorusElement = tuple[Fraction, ...]


def torus_element(coords: Sequence) -> TorusElement:
    """Reduce rational coordinates into [0, 1)."""
    return tuple(Fraction(x) % 1 for x in coords)


@dataclass(frozen=True)
class RootSystem:
    rank: int
    roots: tuple[Vector, ...]
    coroots: Mapping[Vector, Vector]

    @staticmethod
    def build(rank: int, pairs: Sequence[tuple[Sequence[int], Sequence[int]]]) -> "RootSystem":
        co = {}
        for r, n in pairs:
            co[tuple(r)] = tuple(n)
        return RootSystem(rank, tuple(sorted(co)), co)

    def __eq__(self, other) -> bool:
        return (isinstance(other, RootSystem) and self.rank == other.rank and self.roots == other.roots
                and all(self.coroots[r] == other.coroots[r] for r in self.roots))

    def __hash__(self) -> int:
        return hash((self.rank, self.roots))


@dataclass
class AxiomReport:
    results: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.results.values())

    def fail(self, key: str, msg: str) -> None:
        self.results[key] = False
        self.details.setdefault(key, msg)


class MarkedReflectionLattice:
    """A lattice Z^n with a finite reflection group and a marking per reflection."""

    def __init__(self, group: FiniteMatrixGroup, markings: Mapping[int, StrictMarking]):
        self.group = group
        self.markings = {i: m.canonical() for i, m in markings.items()}

    @property
    def rank(self) -> int:
        return self.group.dim

    def key(self):
        return (tuple(self.group.elements),
                tuple(sorted((self.group.elements[i], m.b, m.beta) for i, m in self.markings.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, MarkedReflectionLattice) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def marking_of(self, sigma: Matrix) -> StrictMarking:
        return self.markings[self.group.find(sigma)]

    def validate(self) -> AxiomReport:
        """Marking identities, full coverage of reflections, equivariance, generation."""
        rep = AxiomReport()
        g = self.group
        refl = g.reflections()
        rep.results["marked"] = set(self.markings) == set(refl)
        if not rep.results["marked"]:
            rep.details["marked"] = "some reflection carries no marking (or a non-reflection is marked)"
        rep.results["strict"] = True
        for i, m in self.markings.items():
            if m.matrix() != g.elements[i] or intmat.dot(m.beta, m.b) != -2:
                rep.fail("strict", f"marking of element {i} does not satisfy sigma = I + b beta")
        rep.results["equivariant"] = True
        for w in g.generators:
            for i, m in self.markings.items():
                j = g.conj(w, i)
                if j in self.markings and conjugate_marking(g.elements[w], m).canonical() != self.markings[j]:
                    rep.fail("equivariant", f"generator {w} does not carry marking {i} to marking {j}")
        gen = g.subgroup(refl) if refl else None
        rep.results["reflection_generated"] = (gen.order if gen else 1) == g.order
        return rep


class MarkedReflectionTorus:
    """The torus T(1) (x) Z^n with a finite reflection group and 2-torsion markings."""

    def __init__(self, group: FiniteMatrixGroup, markings: Mapping[int, TorusElement]):
        self.group = group
        self.markings = {i: torus_element(h) for i, h in markings.items()}

    @property
    def rank(self) -> int:
        return self.group.dim

    def key(self):
        return (tuple(self.group.elements), tuple(sorted((self.group.elements[i], h) for i, h in self.markings.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, MarkedReflectionTorus) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def act(self, w: int, h: TorusElement) -> TorusElement:
        m = self.group.elements[w]
        return torus_element(sum(m[i][j] * h[j] for j in range(len(h))) for i in range(len(h)))

    def validate(self) -> AxiomReport:
        rep = AxiomReport()
        g = self.group
        rep.results["marked"] = set(self.markings) == set(g.reflections())
        rep.results["torus_marking"] = True
        for i, h in self.markings.items():
            conds = torus_marking_conditions(g.elements[i], h)
            if not all(conds.values()):
                bad = ", ".join(k for k, v in conds.items() if not v)
                rep.fail("torus_marking", f"element {i} fails: {bad}")
        rep.results["equivariant"] = True
        for w in g.generators:
            for i, h in self.markings.items():
                j = g.conj(w, i)
                if j in self.markings and self.act(w, h) != self.markings[j]:
                    rep.fail("equivariant", f"generator {w} does not carry h of {i} to h of {j}")
        return rep


# marked lattices


def marking_family(group: FiniteMatrixGroup, choice: Mapping[int, StrictMarking]) -> dict[int, StrictMarking]:
    """Spread a marking chosen on one reflection per class to the whole class by conjugation."""
    out: dict[int, StrictMarking] = {}
    for rep, m in choice.items():
        out[rep] = m.canonical()
        frontier = [rep]
        while frontier:
            x = frontier.pop()
            for w in group.generators:
                y = group.conj(w, x)
                if y not in out:
                    out[y] = conjugate_marking(group.elements[w], out[x]).canonical()
                    frontier.append(y)
    return out


def reflection_classes(group: FiniteMatrixGroup) -> list[list[int]]:
    return group.conjugacy_classes(group.reflections())


def all_marking_families(group: FiniteMatrixGroup) -> list[dict[int, StrictMarking]]:
    """Every equivariant marking family, by choosing a marking on each class representative."""
    classes = reflection_classes(group)
    options = [markings_of(group.elements[c[0]]) for c in classes]
    fams = []
    for pick in itertools.product(*options):
        fams.append(marking_family(group, {c[0]: m for c, m in zip(classes, pick)}))
    return fams


def marked_lattice(generators: Sequence[Matrix], choose: str | Sequence[int] = "short", cap: int = DEFAULT_CAP) -> MarkedReflectionLattice:
    """Marked lattice from reflection generators.

    ``choose`` picks the marking per reflection class: "short" takes b0
    everywhere, "long" takes 2 b0 wherever allowed, or a sequence of 1/2
    multipliers indexed by class.
    """
    group = generate_group(generators, cap=cap)
    classes = reflection_classes(group)
    picks = {}
    for k, cls in enumerate(classes):
        opts = markings_of(group.elements[cls[0]])
        if choose == "short":
            idx = 0
        elif choose == "long":
            idx = len(opts) - 1
        else:
            idx = 0 if choose[k] == 1 else 1
            if idx >= len(opts):
                raise ValueError(f"class {k} has no doubled marking (not trivial mod 2)")
        picks[cls[0]] = opts[idx]
    return MarkedReflectionLattice(group, marking_family(group, picks))


def count_root_systems(group: FiniteMatrixGroup) -> int:
    """2^k with k the number of reflection classes that are trivial mod 2."""
    k = sum(1 for cls in reflection_classes(group) if is_trivial_mod2(group.elements[cls[0]]))
    return 2 ** k


# root systems


def validate_root_system(rs: RootSystem) -> AxiomReport:
    rep = AxiomReport()
    n = rs.rank
    R = set(rs.roots)
    # (R1): span(R) + common kernel of the coroots has full rank
    common = intmat.kernel_basis([rs.coroots[r] for r in rs.roots], n) if rs.roots else \
        [tuple(int(i == j) for i in range(n)) for j in range(n)]
    vecs = list(rs.roots) + list(common)
    rep.results["R1"] = (intmat.rank(vecs) if vecs else 0) == n
    if not rep.results["R1"]:
        rep.details["R1"] = "roots and the common kernel of the coroots do not span"
    rep.results["R2"] = True
    for r in rs.roots:
        if intmat.dot(rs.coroots[r], r) != -2:
            rep.fail("R2", f"n_r(r) != -2 for r = {r}")
    rep.results["R3"] = True
    for r, t in itertools.permutations(rs.roots, 2):
        k = _integer_ratio(t, r)
        if k is not None and k not in (1, -1):
            rep.fail("R3", f"{t} = {k} * {r}")
    rep.results["R4"] = True
    for r in rs.roots:
        for t in rs.roots:
            c = intmat.dot(rs.coroots[r], t)
            if tuple(ti + c * ri for ti, ri in zip(t, r)) not in R:
                rep.fail("R4", f"t + n_r(t) r not a root for r = {r}, t = {t}")
    rep.results["negation"] = all(tuple(-x for x in r) in R and
                                  rs.coroots[tuple(-x for x in r)] == tuple(-x for x in rs.coroots[r]) for r in rs.roots)
    return rep


def _integer_ratio(t: Vector, r: Vector) -> int | None:
    """k with t = k r, if it exists."""
    j = next((i for i in range(len(r)) if r[i]), None)
    if j is None or t[j] % r[j]:
        return None
    k = t[j] // r[j]
    return k if all(ti == k * ri for ti, ri in zip(t, r)) else None


def lattice_to_rootsystem(m: MarkedReflectionLattice) -> RootSystem:
    pairs = []
    for mk in m.markings.values():
        pairs.append((mk.b, mk.beta))
        pairs.append((tuple(-x for x in mk.b), tuple(-x for x in mk.beta)))
    return RootSystem.build(m.rank, pairs)


def rootsystem_to_lattice(rs: RootSystem, cap: int = DEFAULT_CAP) -> MarkedReflectionLattice:
    gens = sorted({StrictMarking(r, rs.coroots[r]).matrix() for r in rs.roots})
    n = rs.rank
    group = generate_group(gens, cap=cap) if gens else generate_group([], dim=n)
    markings = {group.find(StrictMarking(r, rs.coroots[r]).matrix()): StrictMarking(r, rs.coroots[r]) for r in rs.roots}
    missing = set(group.reflections()) - set(markings)
    if missing:
        raise ValueError("root system leaves some reflections of W unmarked")
    return MarkedReflectionLattice(group, markings)


def dualize(rs: RootSystem) -> RootSystem:
    """Swap roots and coroots; the result lives on the dual lattice."""
    return RootSystem.build(rs.rank, [(rs.coroots[r], r) for r in rs.roots])


def dual_lattice(m: MarkedReflectionLattice) -> MarkedReflectionLattice:
    """(L^#, W) with the contragredient action and markings +-(beta, b)."""
    g = m.group
    gens = [intmat.transpose(intmat.integer_inverse(g.elements[i])) for i in g.generators]
    group = generate_group(gens, dim=m.rank)
    markings = {group.find(intmat.transpose(g.elements[i])): StrictMarking(mk.beta, mk.b) for i, mk in m.markings.items()}
    return MarkedReflectionLattice(group, markings)


# tori


def torus_marking_conditions(sigma: Matrix, h: TorusElement) -> dict[str, bool]:
    """The three torus-marking conditions for h relative to the reflection sigma."""
    h = torus_element(h)
    b0 = negative_root_vector(sigma)
    # strongly negative: h lies in T(1) (x) ker(1+sigma), i.e. h = lambda b0 mod Z^n
    d = 1
    for x in h:
        d = d * x.denominator // _gcd(d, x.denominator)
    y = [int(x * d) for x in h]
    # a functional phi with phi(b0) = 1 exists since b0 is primitive
    phi = intmat.solve([b0], [1])
    mu = intmat.dot(phi, y) % d
    strongly_negative = all((yi - mu * bi) % d == 0 for yi, bi in zip(y, b0))
    two_torsion = all((2 * x) % 1 == 0 for x in h)
    nonzero_ok = is_trivial_mod2(sigma) or any(h)
    return {"strongly_negative": strongly_negative, "two_torsion": two_torsion, "nonzero_if_nontrivial_mod2": nonzero_ok}


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def lattice_to_torus(m: MarkedReflectionLattice) -> MarkedReflectionTorus:
    return MarkedReflectionTorus(m.group, {i: torus_element(Fraction(x, 2) for x in mk.b) for i, mk in m.markings.items()})


def torus_to_lattice(t: MarkedReflectionTorus) -> MarkedReflectionLattice:
    """Inverse of b -> b/2: h = b0/2 gives b0, h = 0 gives 2 b0."""
    out = {}
    for i, h in t.markings.items():
        sigma = t.group.elements[i]
        opts = markings_of(sigma)
        match = [mk for mk in opts if torus_element(Fraction(x, 2) for x in mk.b) == h]
        if len(match) != 1:
            raise ValueError(f"{h} is not a torus marking of reflection {i}")
        out[i] = match[0]
    return MarkedReflectionLattice(t.group, out)


# integral forms of geometric root systems


def integral_form(roots: Sequence[Sequence], basis: Sequence[Sequence], gram: Sequence[Sequence] | None = None) -> RootSystem:
    """Root system (L, R, {H_r}) for a lattice L between L_min = span R and L_max.

    ``roots`` are vectors of a reduced geometric root system in Q^n, ``basis``
    a list of basis vectors of L (each in Q^n), and ``gram`` an invariant inner product (identity by default). H_r is read off
    the orthogonal reflection s_r(x) = x - 2(x,r)/(r,r) r = x + H_r(x) r.
    """
    n = len(basis)
    roots = [tuple(Fraction(x) for x in r) for r in roots]
    B = [tuple(Fraction(x) for x in v) for v in basis]
    dim = len(B[0]) if B else 0
    if n != dim:
        raise ValueError("basis must have full rank")
    G = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)] if gram is None else \
        [[Fraction(x) for x in row] for row in gram]

    def ip(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(dim) for j in range(dim))

    Rset = set(roots)
    H = {}
    for r in roots:
        rr = ip(r, r)
        # H_r as a row vector in ambient coordinates: x -> -2 (x, r)/(r, r)
        H[r] = tuple(-2 * sum(G[i][j] * r[j] for j in range(dim)) / rr for i in range(dim))
        for t in roots:
            img = tuple(ti + sum(H[r][i] * t[i] for i in range(dim)) * ri for ti, ri in zip(t, r))
            if img not in Rset:
                raise ValueError("roots are not preserved by their reflections for this inner product")
    Bt = intmat.transpose(B)  # columns are basis vectors
    Binv = intmat.rational_inverse(Bt)
    pairs = []
    for r in roots:
        coords = tuple(sum(Binv[i][j] * r[j] for j in range(dim)) for i in range(n))
        if any(c.denominator != 1 for c in coords):
            raise ValueError("lattice does not contain L_min (a root is not integral)")
        cor = tuple(sum(H[r][j] * Bt[j][i] for j in range(dim)) for i in range(n))
        if any(c.denominator != 1 for c in cor):
            raise ValueError("lattice is not contained in L_max (a coroot is not integral on it)")
        pairs.append((tuple(int(c) for c in coords), tuple(int(c) for c in cor)))
    return RootSystem.build(n, pairs)
