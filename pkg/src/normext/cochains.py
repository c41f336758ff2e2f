"""Coefficient modules, normalized 2-cocycles and the coboundary solver.

A cocycle c: W x W -> A satisfies

    w1.c(w2, w3) - c(w1 w2, w3) + c(w1, w2 w3) - c(w1, w2) = 0,

and it is a coboundary when c = df with df(g, h) = g.f(h) - f(gh) + f(g).
Deciding that is a linear system: fix f on the group generators, spread
it over the Cayley graph with f(g s) = g.f(s) + f(g) - c(g, s), and ask
that the spread be consistent. If c is a normalized cocycle, agreement on
all pairs (g, s) forces c = df everywhere (induct on the length of the
second argument), so the system is small: one unknown block per
generator.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import intmat
from .lattice import FiniteMatrixGroup

Coeff = tuple[int, ...]


@dataclass
class Module:
    """A W-module Z^d, (Z/N)^d, or the 2^level-torsion of a torus.

    ``perm`` gives permutation modules (Z[Sigma], Z[G/H]): g sends basis
    vector j to basis vector perm[g][j]. Otherwise ``matrices[g]`` is the
    action matrix. For torus torsion, a value v in (Z/2^level)^d encodes the
    torus point v / 2^level.
    """

    group: FiniteMatrixGroup
    dim: int
    modulus: int | None = None
    perm: list[list[int]] | None = None
    matrices: Callable[[int], Sequence[Sequence[int]]] | None = None
    labels: list = field(default_factory=list)
    kind: str = "perm"
    level: int | None = None

    def act(self, g: int, v: Sequence[int]) -> Coeff:
        if self.perm is not None:
            out = [0] * self.dim
            p = self.perm[g]
            for j, x in enumerate(v):
                if x:
                    out[p[j]] = x
            return tuple(out)
        m = self.matrices(g)
        return intmat.matvec(m, v, self.modulus)

    def matrix(self, g: int) -> np.ndarray:
        if self.perm is not None:
            a = np.zeros((self.dim, self.dim), dtype=np.int64)
            a[self.perm[g], np.arange(self.dim)] = 1
            return a
        return np.array(self.matrices(g), dtype=np.int64).reshape(self.dim, self.dim)

    def reduce(self, v: Sequence[int]) -> Coeff:
        return tuple(x % self.modulus for x in v) if self.modulus else tuple(v)

    def zero(self) -> Coeff:
        return (0,) * self.dim

    def at_level(self, level: int) -> "Module":
        if self.kind != "torus":
            raise ValueError("only torus modules change level")
        return Module(self.group, self.dim, 2**level, None, self.matrices, self.labels, "torus", level)

    def restrict(self, sub: FiniteMatrixGroup, embed: Sequence[int]) -> "Module":
        """The same module viewed over a subgroup (embed[i] = index of sub element i in the big group)."""
        perm = [self.perm[embed[i]] for i in range(len(sub))] if self.perm is not None else None
        mats = (lambda i: self.matrices(embed[i])) if self.matrices is not None else None
        return Module(sub, self.dim, self.modulus, perm, mats, self.labels, self.kind, self.level)


def permutation_module(group: FiniteMatrixGroup, perm: list[list[int]], labels: list) -> Module:
    return Module(group, len(labels), None, perm, None, list(labels), "perm")


def torus_module(group: FiniteMatrixGroup, level: int) -> Module:
    mod = 2**level
    return Module(group, group.dim, mod, None, lambda g: group.elements[g], [], "torus", level)


def trivial_module(group: FiniteMatrixGroup, modulus: int | None = None) -> Module:
    return Module(group, 1, modulus, [[0] for _ in range(len(group))], None, ["1"], "trivial" if modulus is None else "mod")


class ExtensionCocycle:
    """A 2-cocycle W x W -> A, evaluated lazily and memoized."""

    def __init__(self, module: Module, func: Callable[[int, int], Sequence[int]], name: str = ""):
        self.module = module
        self.group = module.group
        self._func = func
        self._memo: dict[tuple[int, int], Coeff] = {}
        self.name = name

    def __call__(self, g: int, h: int) -> Coeff:
        key = (g, h)
        v = self._memo.get(key)
        if v is None:
            v = self.module.reduce(self._func(g, h))
            self._memo[key] = v
        return v

    value = __call__

    def table(self) -> np.ndarray:
        n = len(self.group)
        return np.array([[self(g, h) for h in range(n)] for g in range(n)], dtype=np.int64).reshape(n, n, self.module.dim)

    def at_level(self, level: int) -> "ExtensionCocycle":
        """Reinterpret a torus-torsion cocycle inside T[2^level]."""
        m = self.module
        if m.kind != "torus":
            raise ValueError("only torus cocycles change level")
        if level < m.level:
            raise ValueError("cannot lower the level")
        f = 2 ** (level - m.level)
        return ExtensionCocycle(m.at_level(level), lambda g, h: tuple(f * x for x in self(g, h)), self.name)

    def __sub__(self, other: "ExtensionCocycle") -> "ExtensionCocycle":
        return ExtensionCocycle(self.module, lambda g, h: tuple(a - b for a, b in zip(self(g, h), other(g, h))),
                                f"{self.name}-{other.name}")

    def __add__(self, other: "ExtensionCocycle") -> "ExtensionCocycle":
        return ExtensionCocycle(self.module, lambda g, h: tuple(a + b for a, b in zip(self(g, h), other(g, h))),
                                f"{self.name}+{other.name}")

    def restrict(self, sub: FiniteMatrixGroup, embed: Sequence[int]) -> "ExtensionCocycle":
        return ExtensionCocycle(self.module.restrict(sub, embed), lambda a, b: self(embed[a], embed[b]), self.name)

    def export_table(self) -> str:
        """Text table 'w1 w2 value' with deterministic element indices; zero rows omitted."""
        lines = [f"# cocycle {self.name} on a group of order {len(self.group)}; module {self.module.kind} dim {self.module.dim}"
                 + (f" level {self.module.level}" if self.module.level is not None else "")]
        n = len(self.group)
        for g in range(n):
            for h in range(n):
                v = self(g, h)
                if any(v):
                    lines.append(f"{g} {h} " + " ".join(map(str, v)))
        return "\n".join(lines) + "\n"


def embedding(sub: FiniteMatrixGroup, big: FiniteMatrixGroup) -> list[int]:
    return [big.find(m) for m in sub.elements]


def cocycle_defect(c: ExtensionCocycle, triples: Sequence[tuple[int, int, int]] | None = None,
                   sample: int | None = None, seed: int = 0) -> list[tuple[int, int, int]]:
    """Triples where the cocycle identity fails, plus normalization failures as (g, -1, -1).

    Exhaustive unless ``triples`` or ``sample`` is given.
    """
    g = c.group
    n = len(g)
    bad = []
    e = g.identity
    for x in range(n):
        if any(c(e, x)) or any(c(x, e)):
            bad.append((x, -1, -1))
    if triples is None and sample is None and c.module.dim * n**3 <= 3 * 10**7:
        return bad + _cocycle_defect_numpy(c)
    if triples is None:
        rng = random.Random(seed)
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(sample or 20000)]
    m = c.module
    for a, b, d in triples:
        lhs = [p - q + r - s for p, q, r, s in zip(m.act(a, c(b, d)), c(g.mul(a, b), d), c(a, g.mul(b, d)), c(a, b))]
        if any(m.reduce(lhs)):
            bad.append((a, b, d))
    return bad


def _cocycle_defect_numpy(c: ExtensionCocycle) -> list[tuple[int, int, int]]:
    g = c.group
    n = len(g)
    T = c.table()
    mul = g.table()
    m = c.module
    bad = []
    for a in range(n):
        M = m.matrix(a)
        acted = T @ M.T  # a.c(b, d) for all b, d
        lhs = acted - T[mul[a]] + T[a][mul] - T[a][:, None, :]
        if m.modulus:
            lhs %= m.modulus
        for b, d in zip(*np.nonzero(lhs.any(axis=2))):
            bad.append((a, int(b), int(d)))
    return bad


def is_cocycle(c: ExtensionCocycle, **kw) -> bool:
    return not cocycle_defect(c, **kw)


@dataclass
class CoboundaryResult:
    is_coboundary: bool
    witness: dict[int, Coeff] | None = None
    unknowns: int = 0
    equations: int = 0
    verified_pairs: int = 0

    def __bool__(self) -> bool:
        return self.is_coboundary


def coboundary_witness(c: ExtensionCocycle, generators: Sequence[int] | None = None, verify: bool = True) -> CoboundaryResult:
    """Solve c = df exactly over Z or Z/N; returns the 1-cochain f when it exists."""
    g = c.group
    m = c.module
    n, d = len(g), m.dim
    gens = list(generators) if generators is not None else list(g.generators)
    gens = [s for s in gens if s != g.identity]
    N = d * len(gens)
    mod = m.modulus
    A = {g.identity: np.zeros((d, N), dtype=object)}
    a = {g.identity: np.zeros(d, dtype=object)}
    rows: list[list[int]] = []
    rhs: list[int] = []
    queue = deque([g.identity])
    mats = {}

    def act_mat(x):
        if x not in mats:
            mats[x] = m.matrix(x).astype(object)
        return mats[x]

    while queue:
        x = queue.popleft()
        Mx = act_mat(x)
        for k, s in enumerate(gens):
            y = g.mul(x, s)
            An = A[x].copy()
            An[:, k * d:(k + 1) * d] += Mx
            an = a[x] - np.array(c(x, s), dtype=object)
            if mod:
                An %= mod
                an %= mod
            if y not in A:
                A[y], a[y] = An, an
                queue.append(y)
            else:
                D = An - A[y]
                r = a[y] - an
                for i in range(d):
                    row = [int(v) for v in D[i]]
                    rv = int(r[i])
                    if mod:
                        row = [v % mod for v in row]
                        rv %= mod
                    if any(row) or rv:
                        rows.append(row)
                        rhs.append(rv)
    if len(A) != n:
        raise ValueError("generators do not generate the group")
    x = intmat.solve(rows, rhs, mod) if rows else (0,) * N
    res = CoboundaryResult(x is not None, None, N, len(rows))
    if x is None:
        return res
    xv = np.array(x, dtype=object)
    f = {}
    for y in range(n):
        v = A[y].dot(xv) + a[y]
        f[y] = tuple(int(t) % mod if mod else int(t) for t in v)
    res.witness = f
    if verify:
        pairs = [(p, q) for p in range(n) for q in range(n)] if n <= 200 else \
            [(p, q) for p in range(n) for q in gens]
        for p, q in pairs:
            df = [u - v + w for u, v, w in zip(m.act(p, f[q]), f[g.mul(p, q)], f[p])]
            if m.reduce(df) != c(p, q):
                raise AssertionError("coboundary witness failed verification")
        res.verified_pairs = len(pairs)
    return res


def cohomologous(c1: ExtensionCocycle, c2: ExtensionCocycle, **kw) -> CoboundaryResult:
    return coboundary_witness(c1 - c2, **kw)


def two_adic_valuation(n: int) -> int:
    return intmat.valuation2(n) if n else 0


def torus_search_level(order: int) -> int:
    """Cochain level 2^M at which torus coboundaries of 2-torsion cocycles are decided.

    If c = df with f arbitrary and 2c = 0, then n^2 f' = 0 for some f' with
    df' = c (n = |W| annihilates H^1 and H^2), and the odd part of f' can be
    dropped. So M = 2 v_2(|W|) is enough; at least 1 so that T[2] fits.
    """
    return max(1, 2 * two_adic_valuation(order))
