"""Reflection, Tits and normalizer extensions of a finite reflection group.

All three are handled as explicit normalized 2-cocycles:

* rho(W) over Z[Sigma], induced class by class from the centralizer of a
  representative reflection t, where the centralizer extension is pulled
  back from the nonzero class of H^2(Z/2; Z) along C -> <t>;
* tau(W) over 2Z[Sigma*] (reported in Z[Sigma] after halving), from the
  section w -> (sum of sigma_k*, w) along lexicographically first minimal
  words;
* nu(W) over the 2-torsion of the torus, the image of rho(W) under
  sigma -> h_sigma.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import intmat
from .cochains import (CoboundaryResult, ExtensionCocycle, Module, coboundary_witness, permutation_module,
                       torus_module, torus_search_level)
from .lattice import FiniteMatrixGroup, canonical_vector, negative_root_vector
from .rootdata import MarkedReflectionTorus, TorusElement, reflection_classes, torus_element
from .words import SimpleSystem, Word, prod_word, reflection_sequence, word_image


def root_line(group: FiniteMatrixGroup, sigma: int) -> tuple[int, ...]:
    """Canonical generator of ker(1 + sigma), over Z or Z/2^k."""
    if group.mod is None:
        return negative_root_vector(group.elements[sigma])
    from .twoadic import negative_root_vector_mod

    return negative_root_vector_mod(group.elements[sigma], group.mod)


def reflection_length(group: FiniteMatrixGroup) -> list[int]:
    """Word length with respect to the set of all reflections."""
    refl = group.reflections()
    dist = [-1] * len(group)
    dist[group.identity] = 0
    q = deque([group.identity])
    while q:
        x = q.popleft()
        for s in refl:
            y = group.mul(x, s)
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def _reducer(group: FiniteMatrixGroup):
    """Vectors are compared mod 2^(k-1) over Z/2^k: root lines are only known to that precision."""
    if group.mod is None:
        return tuple
    cmp = group.mod >> 1
    return lambda v: tuple(x % cmp for x in v)


@dataclass
class CentralizerSplitting:
    class_rep: int
    centralizer: list[int]
    perp: list[int]
    witness: tuple[int, ...]
    signs: dict[int, int] = field(default_factory=dict)  # element -> 0 if it fixes the witness, 1 if it negates it


def centralizer_splitting(group: FiniteMatrixGroup, rep: int) -> CentralizerSplitting:
    """C = <t> x C_perp with C_perp the stabilizer of a generator a of ker(1 + t)."""
    a = root_line(group, rep)
    red = _reducer(group)
    a = red(a)
    neg = red(tuple(-x for x in a))
    C = group.centralizer(rep)
    signs = {}
    for w in C:
        v = red(group.act(w, a))
        if v == a:
            signs[w] = 0
        elif v == neg:
            signs[w] = 1
        else:
            raise AssertionError("centralizer element does not send a to +-a")
    perp = [w for w in C if signs[w] == 0]
    # direct product check: every element of C is uniquely t^e p with p in perp
    prods = {group.mul(t, p) for t in (group.identity, rep) for p in perp}
    if len(prods) != len(C) or set(prods) != set(C):
        raise AssertionError("centralizer does not split as <t> x C_perp")
    return CentralizerSplitting(rep, C, perp, a, signs)


class ReflectionData:
    """Per-group tables shared by the rho, tau and nu cocycles.

    ``refl`` fixes the basis order of Z[Sigma]; ``conj[g][j]`` is the basis
    index of g sigma_j g^-1; ``sign[g][j]`` is 1 when g a_j = -a_{conj}.
    """

    def __init__(self, group: FiniteMatrixGroup):
        self.group = group
        self.refl = group.reflections()
        self.pos = {s: j for j, s in enumerate(self.refl)}
        n, r = len(group), len(self.refl)
        self.classes = reflection_classes(group)
        rlen = reflection_length(group)
        self.coset_reps: dict[int, int] = {}
        self.root: dict[int, tuple[int, ...]] = {}
        self.splittings = []
        for cls in self.classes:
            t = cls[0]
            sp = centralizer_splitting(group, t)
            self.splittings.append(sp)
            best: dict[int, tuple[int, int]] = {}
            for g in range(n):
                tau = group.conj(g, t)
                key = (rlen[g], g)
                if tau not in best or key < best[tau]:
                    best[tau] = key
            for tau, (_, g) in best.items():
                self.coset_reps[tau] = g
                self.root[tau] = group.act(g, sp.witness)
        self.conj = np.zeros((n, r), dtype=np.int64)
        self.sign = np.zeros((n, r), dtype=np.int64)
        red = _reducer(group)
        for g in range(n):
            for j, s in enumerate(self.refl):
                k = self.pos[group.conj(g, s)]
                self.conj[g, j] = k
                v = red(group.act(g, self.root[s]))
                target = red(self.root[self.refl[k]])
                if v == target:
                    self.sign[g, j] = 0
                elif v == red(tuple(-x for x in target)):
                    self.sign[g, j] = 1
                else:
                    raise AssertionError("W does not permute the chosen root vectors up to sign")
        self.module = permutation_module(group, [list(map(int, row)) for row in self.conj], list(self.refl))

    def rho_value(self, g1: int, g2: int) -> tuple[int, ...]:
        g = self.group
        p = g.inv(g.mul(g1, g2))
        tau = self.conj[p]  # tau_j = (g1 g2)^-1 sigma_j (g1 g2)
        return tuple(int(v) for v in self.sign[g2, tau] * self.sign[g1, self.conj[g2, tau]])


_data_cache: dict[int, ReflectionData] = {}


def reflection_data(group: FiniteMatrixGroup) -> ReflectionData:
    key = id(group)
    d = _data_cache.get(key)
    if d is None or d.group is not group:
        d = ReflectionData(group)
        _data_cache[key] = d
    return d


def reflection_extension(group: FiniteMatrixGroup) -> ExtensionCocycle:
    """rho(W) over Z[Sigma]: the sum over classes of the Shapiro-induced centralizer extensions."""
    data = reflection_data(group)
    return ExtensionCocycle(data.module, data.rho_value, "rho")


# Tits extension


@dataclass(frozen=True)
class SemidirectElement:
    """(vec, w) in Z[Sigma*] x| W; vec is indexed like the reflection basis."""

    vec: tuple[int, ...]
    part: int


def semidirect_mul(data: ReflectionData, x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    moved = [0] * len(data.refl)
    for j, v in enumerate(y.vec):
        if v:
            moved[data.conj[x.part, j]] += v
    return SemidirectElement(tuple(a + b for a, b in zip(x.vec, moved)), data.group.mul(x.part, y.part))


def semidirect_inv(data: ReflectionData, x: SemidirectElement) -> SemidirectElement:
    wi = data.group.inv(x.part)
    moved = [0] * len(data.refl)
    for j, v in enumerate(x.vec):
        if v:
            moved[data.conj[wi, j]] -= v
    return SemidirectElement(tuple(moved), wi)


def tits_subgroup(ss: SimpleSystem) -> list[SemidirectElement]:
    """Generators (s_i*, s_i)."""
    data = reflection_data(ss.group)
    out = []
    for s in ss.simples:
        vec = [0] * len(data.refl)
        vec[data.pos[s]] = 1
        out.append(SemidirectElement(tuple(vec), s))
    return out


def tits_word_element(ss: SimpleSystem, word: Sequence[int]) -> SemidirectElement:
    """a(i) = (sum_k sigma_k*, r(i)), cross-checked against the iterated product of generators."""
    data = reflection_data(ss.group)
    vec = [0] * len(data.refl)
    for s in reflection_sequence(ss, word):
        vec[data.pos[s]] += 1
    closed = SemidirectElement(tuple(vec), word_image(ss, word))
    gens = tits_subgroup(ss)
    x = SemidirectElement((0,) * len(data.refl), ss.group.identity)
    for i in word:
        x = semidirect_mul(data, x, gens[i])
    if x != closed:
        raise AssertionError("closed formula and iterated product disagree")
    return closed


def tits_section(ss: SimpleSystem) -> list[SemidirectElement]:
    words = ss.lexfirst_words()
    return [tits_word_element(ss, words[w]) for w in range(len(ss.group))]


def tits_cocycle(ss: SimpleSystem) -> ExtensionCocycle:
    """z(w1, w2) = s(w1) s(w2) s(w1 w2)^-1, halved into Z[Sigma]."""
    data = reflection_data(ss.group)
    sec = tits_section(ss)

    def value(w1: int, w2: int) -> tuple[int, ...]:
        z = semidirect_mul(data, semidirect_mul(data, sec[w1], sec[w2]), semidirect_inv(data, sec[ss.group.mul(w1, w2)]))
        assert z.part == ss.group.identity
        if any(v % 2 for v in z.vec):
            raise AssertionError(f"Tits cocycle value {z.vec} at ({w1}, {w2}) is not in 2Z[Sigma*]")
        return tuple(v // 2 for v in z.vec)

    return ExtensionCocycle(data.module, value, "tau")


def tits_cocycle_raw(ss: SimpleSystem) -> dict[tuple[int, int], tuple[int, ...]]:
    """Unhalved Tits cocycle values in Z[Sigma*] (for checking the kernel statement directly)."""
    data = reflection_data(ss.group)
    sec = tits_section(ss)
    n = len(ss.group)
    out = {}
    for a in range(n):
        for b in range(n):
            z = semidirect_mul(data, semidirect_mul(data, sec[a], sec[b]), semidirect_inv(data, sec[ss.group.mul(a, b)]))
            out[a, b] = z.vec
    return out


def tits_vs_reflection(group: FiniteMatrixGroup, ss: SimpleSystem) -> CoboundaryResult:
    """Witness f with rho - tau = df over Z[Sigma]."""
    res = coboundary_witness(reflection_extension(group) - tits_cocycle(ss))
    if not res:
        raise AssertionError("reflection and Tits extensions are not cohomologous")
    return res


# normalizer extension


def _level_one(h: TorusElement) -> tuple[int, ...]:
    out = []
    for x in h:
        y = Fraction(x) * 2
        if y.denominator != 1:
            raise ValueError("torus marking is not 2-torsion")
        out.append(int(y) % 2)
    return tuple(out)


def normalizer_extension(torus: MarkedReflectionTorus) -> ExtensionCocycle:
    """nu = image of rho under sigma -> h_sigma, valued in T[2] (level 1)."""
    group = torus.group
    data = reflection_data(group)
    hs = np.array([_level_one(torus.markings[s]) for s in data.refl], dtype=np.int64).reshape(len(data.refl), group.dim)
    module = torus_module(group, 1)

    def value(g1: int, g2: int) -> tuple[int, ...]:
        c = np.array(data.rho_value(g1, g2), dtype=np.int64)
        return tuple(int(v) % 2 for v in c @ hs) if len(c) else (0,) * group.dim

    return ExtensionCocycle(module, value, "nu")


def pushforward(c: ExtensionCocycle, images: Sequence[Sequence[int]], target: Module) -> ExtensionCocycle:
    """Image of a Z[Sigma]-valued cocycle along basis vector j -> images[j]."""
    M = np.array(images, dtype=object)

    def value(g1: int, g2: int):
        v = np.array(c(g1, g2), dtype=object)
        return tuple(int(x) for x in v.dot(M)) if len(v) else target.zero()

    return ExtensionCocycle(target, value, f"push({c.name})")


def split_check(c: ExtensionCocycle, level: int | None = None) -> CoboundaryResult:
    """Is c a coboundary? Torus cocycles are decided with cochains in T[2^level]."""
    if c.module.kind == "torus":
        lvl = level if level is not None else max(c.module.level, torus_search_level(len(c.group)))
        return coboundary_witness(c.at_level(lvl))
    return coboundary_witness(c)


# presentation


@dataclass
class PresentationReport:
    passed: bool
    level: int
    lifts: list[tuple[int, ...]]
    zero_lifts_work: bool
    square: bool
    conjugation: bool
    braid: dict[tuple[int, int], bool]
    coxeter_matrix: list[list[int]]

    def summary(self) -> str:
        return (f"presentation {'pass' if self.passed else 'FAIL'}: squares {self.square}, conjugation {self.conjugation}, "
                f"braid {all(self.braid.values())} (m = {self.coxeter_matrix}), lifts at level {self.level}")


class _Realized:
    """Elements (t, w) of the extension defined by a torus cocycle at a fixed level."""

    def __init__(self, c: ExtensionCocycle):
        self.c = c
        self.g = c.group
        self.mod = c.module.modulus

    def mul(self, x, y):
        t, w = x
        u, v = y
        wu = intmat.matvec(self.g.elements[w], u, self.mod)
        return (tuple((a + b + k) % self.mod for a, b, k in zip(t, wu, self.c(w, v))), self.g.mul(w, v))

    def inv(self, x):
        t, w = x
        wi = self.g.inv(w)
        s = tuple((a + k) for a, k in zip(t, self.c(w, wi)))
        return (tuple((-v) % self.mod for v in intmat.matvec(self.g.elements[wi], s, self.mod)), wi)


def presentation_check(torus: MarkedReflectionTorus, ss: SimpleSystem, nu: ExtensionCocycle | None = None,
                       level: int | None = None) -> PresentationReport:
    """Find lifts q_i = (t_i, s_i) in nu and verify the three relation families.

    q_i^2 = h_{s_i}; q_i t q_i^-1 = s_i(t); prod(m_ij; q_i, q_j) = prod(m_ij; q_j, q_i).
    The squares and braids are affine in the t_i, so the lifts come from a
    linear system mod 2^level; every relation is then re-checked by direct
    multiplication in the realized group.
    """
    nu = nu if nu is not None else normalizer_extension(torus)
    group = torus.group
    levels = [level] if level is not None else sorted({1, 2, torus_search_level(len(group)) + 1})
    last = None
    for lvl in levels:
        rep = _presentation_at(torus, ss, nu.at_level(lvl), lvl)
        if rep.passed:
            return rep
        last = rep
    return last


def _presentation_at(torus: MarkedReflectionTorus, ss: SimpleSystem, c: ExtensionCocycle, lvl: int) -> PresentationReport:
    g = torus.group
    r, l = g.dim, ss.rank
    mod = 2**lvl
    N = r * l
    hs = [tuple(int(x * mod) % mod for x in torus.markings[s]) for s in ss.simples]

    def affine_gen(i):
        A = [[0] * N for _ in range(r)]
        for k in range(r):
            A[k][i * r + k] = 1
        return (A, (0,) * r, ss.simples[i])

    def amul(x, y):
        A, a, w = x
        B, b, v = y
        W = g.elements[w]
        WB = intmat.matmul(W, B, mod) if B else B
        C = [[(A[i][j] + WB[i][j]) % mod for j in range(N)] for i in range(r)]
        cv = c(w, v)
        Wb = intmat.matvec(W, b, mod)
        return (C, tuple((p + q + k) % mod for p, q, k in zip(a, Wb, cv)), g.mul(w, v))

    def aprod(word):
        x = ([[0] * N for _ in range(r)], (0,) * r, g.identity)
        for i in word:
            x = amul(x, affine_gen(i))
        return x

    rows, rhs = [], []
    for i in range(l):
        A, a, w = aprod((i, i))
        assert w == g.identity
        for k in range(r):
            rows.append(A[k])
            rhs.append((hs[i][k] - a[k]) % mod)
    for i in range(l):
        for j in range(i + 1, l):
            m = ss.coxeter_matrix[i][j]
            L = aprod(prod_word(m, i, j))
            R = aprod(prod_word(m, j, i))
            assert L[2] == R[2]
            for k in range(r):
                rows.append([(x - y) % mod for x, y in zip(L[0][k], R[0][k])])
                rhs.append((R[1][k] - L[1][k]) % mod)
    zero_ok = all(v % mod == 0 for v in rhs)
    x = intmat.solve(rows, rhs, mod) if rows else ()
    if x is None:
        return PresentationReport(False, lvl, [], zero_ok, False, False, {}, ss.coxeter_matrix)
    lifts = [tuple(x[i * r:(i + 1) * r]) for i in range(l)]
    G = _Realized(c)
    q = [(lifts[i], ss.simples[i]) for i in range(l)]
    one = ((0,) * r, g.identity)

    def prod_elems(word):
        y = one
        for i in word:
            y = G.mul(y, q[i])
        return y

    square = all(G.mul(q[i], q[i]) == (hs[i], g.identity) for i in range(l))
    conjugation = True
    for i in range(l):
        qi_inv = G.inv(q[i])
        for k in range(r):
            e = tuple(int(j == k) for j in range(r))
            lhs = G.mul(G.mul(q[i], (e, g.identity)), qi_inv)
            if lhs != (intmat.matvec(g.elements[ss.simples[i]], e, mod), g.identity):
                conjugation = False
    braid = {}
    for i in range(l):
        for j in range(i + 1, l):
            m = ss.coxeter_matrix[i][j]
            braid[(i, j)] = prod_elems(prod_word(m, i, j)) == prod_elems(prod_word(m, j, i))
    ok = square and conjugation and all(braid.values())
    return PresentationReport(ok, lvl, lifts, zero_ok, square, conjugation, braid, ss.coxeter_matrix)
