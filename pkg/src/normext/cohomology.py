"""Induction and restriction of extension classes.

Subgroups are passed as sorted lists of element indices of the ambient
group; ``subgroup_view`` turns such a list into a standalone
FiniteMatrixGroup together with its embedding. Every comparison of
classes is an explicit "is this cocycle a coboundary" question.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .cochains import (CoboundaryResult, ExtensionCocycle, Module, coboundary_witness, permutation_module,
                       torus_search_level, trivial_module)
from .extensions import normalizer_extension, reflection_data
from .lattice import FiniteMatrixGroup
from .rootdata import MarkedReflectionTorus, TorusElement, torus_element


@dataclass
class SubgroupView:
    group: FiniteMatrixGroup  # the subgroup as a group in its own right
    embed: list[int]  # subgroup index -> ambient index
    ambient: FiniteMatrixGroup

    @property
    def members(self) -> list[int]:
        return sorted(self.embed)

    def local(self, g: int) -> int:
        return self.group.index[self.ambient.elements[g]]


def closure(G: FiniteMatrixGroup, gens: Sequence[int]) -> list[int]:
    seen = {G.identity}
    q = deque([G.identity])
    while q:
        x = q.popleft()
        for s in gens:
            y = G.mul(x, s)
            if y not in seen:
                seen.add(y)
                q.append(y)
    return sorted(seen)


def subgroup_view(G: FiniteMatrixGroup, members: Sequence[int]) -> SubgroupView:
    """Wrap a subgroup given by its elements; generators are picked greedily in index order."""
    members = sorted(set(members))
    gens: list[int] = []
    span = {G.identity}
    for x in members:
        if x not in span:
            gens.append(x)
            span = set(closure(G, gens))
    if span != set(members):
        raise ValueError("element list is not a subgroup")
    sub = FiniteMatrixGroup([G.elements[x] for x in members], [G.elements[x] for x in gens], G.mod)
    return SubgroupView(sub, [G.index[m] for m in sub.elements], G)


def word_lengths(G: FiniteMatrixGroup) -> list[int]:
    """Distance from the identity in the Cayley graph of the stored generators."""
    dist = [-1] * len(G)
    dist[G.identity] = 0
    q = deque([G.identity])
    while q:
        x = q.popleft()
        for s in G.generators:
            y = G.mul(x, s)
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


@dataclass
class CosetSpace:
    """Left cosets gH with representatives of minimal (length, index)."""

    group: FiniteMatrixGroup
    sub: list[int]
    reps: list[int]
    coset_of: list[int]  # element -> coset number

    def __len__(self) -> int:
        return len(self.reps)

    def perm(self, g: int) -> list[int]:
        G = self.group
        return [self.coset_of[G.mul(g, x)] for x in self.reps]

    def h(self, j: int, g: int) -> int:
        """h_j(g) = x_{g(j)}^-1 g x_j, an element of H."""
        G = self.group
        x = G.mul(g, self.reps[j])
        return G.mul(G.inv(self.reps[self.coset_of[x]]), x)


def coset_space(G: FiniteMatrixGroup, sub: Sequence[int]) -> CosetSpace:
    lengths = word_lengths(G)
    coset_of = [-1] * len(G)
    order = sorted(range(len(G)), key=lambda g: (lengths[g], g))
    reps = []
    for g in order:
        if coset_of[g] >= 0:
            continue
        for h in sub:
            coset_of[G.mul(g, h)] = len(reps)
        reps.append(g)
    return CosetSpace(G, list(sub), reps, coset_of)


def shapiro_forward(k: ExtensionCocycle, inclusion: SubgroupView) -> ExtensionCocycle:
    """Induce an H-cocycle with trivial coefficients to a G-cocycle over Z[G/H].

    Writing g x_j = x_{g(j)} h_j(g), the induced cocycle has coordinate
    k(h_{g2(j)}(g1), h_j(g2)) at the coset g1 g2 (j).
    """
    if k.module.dim != 1 or k.module.kind not in ("trivial", "mod"):
        raise ValueError("shapiro_forward expects trivial one-dimensional coefficients")
    G = inclusion.ambient
    cs = coset_space(G, inclusion.members)
    perms = [cs.perm(g) for g in range(len(G))]
    module = Module(G, len(cs), k.module.modulus, perms, None, list(cs.reps), "perm")
    loc = inclusion.local

    def value(g1: int, g2: int):
        out = [0] * len(cs)
        p2 = perms[g2]
        p12 = perms[G.mul(g1, g2)]
        for j in range(len(cs)):
            out[p12[j]] = k(loc(cs.h(p2[j], g1)), loc(cs.h(j, g2)))[0]
        return tuple(out)

    c = ExtensionCocycle(module, value, f"ind({k.name})")
    c.cosets = cs
    return c


def shapiro_backward(c: ExtensionCocycle, inclusion: SubgroupView) -> ExtensionCocycle:
    """Restrict to H and project Z[G/H] onto the eH coordinate."""
    G = inclusion.ambient
    cs = coset_space(G, inclusion.members)
    j0 = cs.coset_of[G.identity]
    if c.module.dim != len(cs):
        raise ValueError("coefficients are not Z[G/H] for this H")
    H = inclusion.group
    module = trivial_module(H, c.module.modulus)
    emb = inclusion.embed
    return ExtensionCocycle(module, lambda a, b: (c(emb[a], emb[b])[j0],), f"res({c.name})")


# cocycles on subgroups


def character_cocycle(H: FiniteMatrixGroup, chi: Callable[[int], int], n: int, name: str = "") -> ExtensionCocycle:
    """Bockstein of a character chi: H -> Z/n, as a Z-valued cocycle.

    With lifts in [0, n), k(g, h) = (chi(g) + chi(h) - chi(gh)) / n is 0 or 1.
    """
    def value(a: int, b: int):
        s = chi(a) % n + chi(b) % n - chi(H.mul(a, b)) % n
        assert s % n == 0
        return (s // n,)

    return ExtensionCocycle(trivial_module(H), value, name or f"bockstein mod {n}")


def determinant_character(H: FiniteMatrixGroup) -> Callable[[int], int]:
    from . import intmat

    def chi(a: int) -> int:
        d = intmat.det(H.elements[a])
        if H.mod:
            d = d % H.mod
            return 0 if d % 4 == 1 else 1  # the sign of a 2-adic unit of order <= 2 mod 4
        return 0 if d == 1 else 1

    return chi


def centralizer_character(H: FiniteMatrixGroup, t: int) -> Callable[[int], int]:
    """C -> <t> ~ Z/2 for H = C(t) = <t> x C_perp: 1 on elements that negate the root of t."""
    from .extensions import centralizer_splitting

    sp = centralizer_splitting(H, t)
    return lambda a: sp.signs[a]


def centralizer_class(G: FiniteMatrixGroup, t: int) -> tuple[SubgroupView, ExtensionCocycle]:
    """The centralizer C(t) with the pullback of the nonzero class of H^2(Z/2; Z)."""
    view = subgroup_view(G, G.centralizer(t))
    chi = centralizer_character(view.group, view.local(t))
    return view, character_cocycle(view.group, chi, 2, "k_t")


def induced_reflection_extension(G: FiniteMatrixGroup) -> ExtensionCocycle:
    """rho(W) rebuilt by inducing each centralizer class, in the Z[Sigma] basis.

    Z[W/C_i] is identified with Z[Sigma_i] by x C_i -> x t_i x^-1. This is
    the independent route to the closed formula in extensions.
    """
    data = reflection_data(G)
    parts = []
    for cls in data.classes:
        t = cls[0]
        view, k = centralizer_class(G, t)
        ind = shapiro_forward(k, view)
        where = [data.pos[G.conj(x, t)] for x in ind.cosets.reps]
        parts.append((ind, where))
    r = len(data.refl)

    def value(g1: int, g2: int):
        out = [0] * r
        for ind, where in parts:
            for j, v in zip(where, ind(g1, g2)):
                out[j] += v
        return tuple(out)

    return ExtensionCocycle(data.module, value, "ind-rho")


# double cosets


@dataclass
class DoubleCosetDecomp:
    reps: list[int]
    intersections: list[list[int]]  # K_alpha = K cap x H x^-1, ambient indices
    orbits: list[list[int]]  # coset numbers of G/H in each K-orbit
    cosets: CosetSpace

    def __len__(self) -> int:
        return len(self.reps)


def double_cosets(G: FiniteMatrixGroup, K: Sequence[int], H: Sequence[int]) -> DoubleCosetDecomp:
    """K-orbits on G/H; representative = the minimal (length, index) element of K x H."""
    cs = coset_space(G, H)
    lengths = word_lengths(G)
    seen = [False] * len(cs)
    reps, inters, orbits = [], [], []
    Hset = set(H)
    for j in range(len(cs)):
        if seen[j]:
            continue
        orbit = sorted({cs.coset_of[G.mul(k, cs.reps[j])] for k in K})
        for o in orbit:
            seen[o] = True
        dc = {G.mul(G.mul(k, cs.reps[j]), h) for k in K for h in H}
        x = min(dc, key=lambda g: (lengths[g], g))
        xi = G.inv(x)
        inters.append(sorted(k for k in K if G.mul(G.mul(xi, k), x) in Hset))
        reps.append(x)
        orbits.append(orbit)
    total = sum(len(K) // len(Ka) for Ka in inters)
    if total != len(cs) or sum(len(o) for o in orbits) != len(cs):
        raise AssertionError("double cosets do not partition G")
    return DoubleCosetDecomp(reps, inters, orbits, cs)


@dataclass
class DoubleCosetReport:
    cohomologous: bool
    pieces: int
    index: int
    witness: CoboundaryResult = field(repr=False, default=None)


def conjugate_pullback(k: ExtensionCocycle, H: SubgroupView, x: int, Ka: SubgroupView) -> ExtensionCocycle:
    """v_alpha^*(k): a, b in K_alpha map to x^-1 a x, x^-1 b x in H."""
    G = H.ambient
    xi = G.inv(x)

    def value(a: int, b: int):
        ga, gb = Ka.embed[a], Ka.embed[b]
        return k(H.local(G.mul(G.mul(xi, ga), x)), H.local(G.mul(G.mul(xi, gb), x)))

    return ExtensionCocycle(trivial_module(Ka.group, k.module.modulus), value, f"conj({k.name})")


def double_coset_formula_check(G: FiniteMatrixGroup, K: Sequence[int], H: Sequence[int], k: ExtensionCocycle) -> DoubleCosetReport:
    """Compare res_K ind_H^G k with the sum of ind_{K_alpha}^K of conjugated pullbacks.

    Both sides are K-cocycles over Z[G/H]; the right side is moved there by
    y K_alpha -> y x_alpha H.
    """
    Hv = subgroup_view(G, H)
    Kv = subgroup_view(G, K)
    lhs_full = shapiro_forward(k, Hv)
    cs = lhs_full.cosets
    lhs = lhs_full.restrict(Kv.group, Kv.embed)
    dec = double_cosets(G, K, H)
    pieces = []
    for x, Ka_members in zip(dec.reps, dec.intersections):
        Ka_in_K = [Kv.local(a) for a in Ka_members]
        Ka = subgroup_view(Kv.group, Ka_in_K)
        # K_alpha as a subgroup of the standalone K, and as a subgroup of G for the pullback
        Ka_G = SubgroupView(Ka.group, [Kv.embed[i] for i in Ka.embed], G)
        pulled = conjugate_pullback(k, Hv, x, Ka_G)
        ind = shapiro_forward(pulled, Ka)
        where = [cs.coset_of[G.mul(Kv.embed[y], x)] for y in ind.cosets.reps]
        if len(set(where)) != len(where):
            raise AssertionError("coset identification is not injective")
        pieces.append((ind, where))

    def value(a: int, b: int):
        out = [0] * len(cs)
        for ind, where in pieces:
            for j, v in zip(where, ind(a, b)):
                out[j] += v
        return tuple(out)

    rhs = ExtensionCocycle(lhs.module, value, "sum of induced pullbacks")
    res = coboundary_witness(lhs - rhs)
    return DoubleCosetReport(bool(res), len(pieces), len(cs), res)


# centralizer compatibility


def _fixes(G: FiniteMatrixGroup, w: int, a: TorusElement) -> bool:
    m = G.elements[w]
    moved = torus_element([sum(m[i][j] * a[j] for j in range(len(a))) for i in range(len(a))])
    return moved == torus_element(a)


def fixing_subgroup(torus: MarkedReflectionTorus, A: Sequence[Sequence]) -> list[int]:
    """W_A: elements fixing every generator of A."""
    G = torus.group
    gens = [torus_element(a) for a in A]
    return [w for w in range(len(G)) if all(_fixes(G, w, a) for a in gens)]


@dataclass
class CompatReport:
    applicable: bool
    cohomologous: bool | None
    order: int
    reflections: int
    level: int | None = None
    witness: CoboundaryResult | None = field(default=None, repr=False)

    def summary(self) -> str:
        if not self.applicable:
            return f"not applicable: W_A of order {self.order} is not generated by its {self.reflections} reflections"
        return f"W_A order {self.order}, {self.reflections} reflections: {'cohomologous' if self.cohomologous else 'NOT cohomologous'}"


def centralizer_compat_check(torus: MarkedReflectionTorus, A: Sequence[Sequence]) -> CompatReport:
    """nu(W_A) built from the restricted markings versus the pullback of nu(W)."""
    G = torus.group
    WA = fixing_subgroup(torus, A)
    refl = [s for s in G.reflections() if s in set(WA)]
    if closure(G, refl) != WA:
        return CompatReport(False, None, len(WA), len(refl))
    view = subgroup_view(G, WA)
    sub_torus = MarkedReflectionTorus(view.group, {view.local(s): torus.markings[s] for s in refl})
    own = normalizer_extension(sub_torus)
    pulled = normalizer_extension(torus).restrict(view.group, view.embed)
    pulled = ExtensionCocycle(own.module, pulled, "pullback(nu)")
    level = torus_search_level(len(WA))
    res = coboundary_witness((own - pulled).at_level(level))
    return CompatReport(True, bool(res), len(WA), len(refl), level, res)


def vanishing_check(G: FiniteMatrixGroup, WA: Sequence[int], t: int) -> list[tuple[int, bool, bool]]:
    """For each double coset W_A x C(t): (x, x t x^-1 in W_A, pulled-back class trivial).

    The expected pattern: whenever x t x^-1 lies outside W_A, the class is trivial.
    """
    C, k = centralizer_class(G, t)
    dec = double_cosets(G, WA, C.members)
    out = []
    WAset = set(WA)
    for x, Ka_members in zip(dec.reps, dec.intersections):
        Ka = subgroup_view(G, Ka_members)
        pulled = conjugate_pullback(k, C, x, Ka)
        out.append((x, G.conj(x, t) in WAset, bool(coboundary_witness(pulled))))
    return out


# brute-force H^2 over F_2 for small groups


def _rank_mod2(rows: np.ndarray) -> int:
    a = (rows % 2).astype(np.uint8)
    r = 0
    nrows, ncols = a.shape
    for c in range(ncols):
        piv = np.nonzero(a[r:, c])[0]
        if not len(piv):
            continue
        p = r + piv[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        r += 1
        if r == nrows:
            break
    return r


def _kernel_mod2(a: np.ndarray) -> np.ndarray:
    """Basis (rows) of {x : a x = 0 mod 2}."""
    a = (a % 2).astype(np.uint8).copy()
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = np.nonzero(a[r:, c])[0]
        if not len(piv):
            continue
        p = r + piv[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = a[row, f]
    return basis


class F2Cochains:
    """Normalized cochains of a small group with coefficients in T[2] = F_2^r."""

    def __init__(self, G: FiniteMatrixGroup):
        self.G = G
        self.r = G.dim
        n = len(G)
        self.nonid = [g for g in range(n) if g != G.identity]
        self.pos1 = {g: i for i, g in enumerate(self.nonid)}
        self.pairs = [(a, b) for a in self.nonid for b in self.nonid]
        self.pos2 = {p: i for i, p in enumerate(self.pairs)}
        self.mats = [np.array(G.elements[g], dtype=np.int64) % 2 for g in range(n)]

    def _col2(self, a: int, b: int) -> int | None:
        return self.pos2.get((a, b))

    def d1(self) -> np.ndarray:
        """df(a, b) = a f(b) - f(ab) + f(a)."""
        G, r = self.G, self.r
        M = np.zeros((len(self.pairs) * r, len(self.nonid) * r), dtype=np.int64)
        for i, (a, b) in enumerate(self.pairs):
            rows = slice(i * r, (i + 1) * r)
            jb = self.pos1[b]
            M[rows, jb * r:(jb + 1) * r] += self.mats[a]
            ab = G.mul(a, b)
            if ab in self.pos1:
                j = self.pos1[ab]
                M[rows, j * r:(j + 1) * r] -= np.eye(r, dtype=np.int64)
            j = self.pos1[a]
            M[rows, j * r:(j + 1) * r] += np.eye(r, dtype=np.int64)
        return M % 2

    def d2(self) -> np.ndarray:
        G, r = self.G, self.r
        trips = [(a, b, c) for a in self.nonid for b in self.nonid for c in self.nonid]
        M = np.zeros((len(trips) * r, len(self.pairs) * r), dtype=np.int64)
        eye = np.eye(r, dtype=np.int64)
        for i, (a, b, c) in enumerate(trips):
            rows = slice(i * r, (i + 1) * r)

            def add(p, q, m):
                j = self._col2(p, q)
                if j is not None:
                    M[rows, j * r:(j + 1) * r] += m

            add(b, c, self.mats[a])
            add(G.mul(a, b), c, -eye)
            add(a, G.mul(b, c), eye)
            add(a, b, -eye)
        return M % 2

    def restrict_vector(self, z: np.ndarray, view: SubgroupView, target: "F2Cochains") -> np.ndarray:
        r = self.r
        out = np.zeros(len(target.pairs) * r, dtype=np.int64)
        for i, (a, b) in enumerate(target.pairs):
            j = self.pos2[(view.embed[a], view.embed[b])]
            out[i * r:(i + 1) * r] = z[j * r:(j + 1) * r]
        return out


@dataclass
class RestrictionReport:
    h2_dim: int
    kernel_dim: int
    index: int

    @property
    def injective(self) -> bool:
        return self.kernel_dim == 0


def restriction_kernel_mod2(G: FiniteMatrixGroup, sub: Sequence[int]) -> RestrictionReport:
    """dim H^2(G; T[2]) and the dimension of the kernel of restriction to ``sub``, by brute force."""
    view = subgroup_view(G, sub)
    big = F2Cochains(G)
    small = F2Cochains(view.group)
    Z = _kernel_mod2(big.d2())
    B_rank = _rank_mod2(big.d1().T)
    h2 = Z.shape[0] - B_rank
    BA = small.d1().T  # rows span B^2(sub)
    BA_rank = _rank_mod2(BA) if BA.size else 0
    res = np.array([small_v for small_v in (big.restrict_vector(z.astype(np.int64), view, small) for z in Z)],
                   dtype=np.int64).reshape(len(Z), -1)
    stacked = np.vstack([BA, res]) if BA.size else res
    image_dim = _rank_mod2(stacked) - BA_rank if stacked.size else 0
    # classes killed by restriction = dim Z - dim of image modulo B(sub) - dim B(G)
    kernel = Z.shape[0] - image_dim - B_rank
    return RestrictionReport(h2, kernel, len(G) // len(sub))
