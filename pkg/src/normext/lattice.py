"""Reflections, finite matrix groups and strict markings on a lattice.

Matrices act on column vectors of lattice coordinates. A functional
(covector) is a row tuple, applied by dot product. The same classes serve
the 2-adic code: a group built with ``mod=2**k`` lives in GL(n, Z/2^k).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import intmat
from .intmat import Matrix, Vector

DEFAULT_CAP = 2_000_000


class GroupTooLargeError(RuntimeError):
    """Group closure exceeded the configured element cap."""


def _as_matrix(m: Sequence[Sequence[int]], mod: int | None = None) -> Matrix:
    m = intmat.mat(m)
    if not intmat.is_square(m):
        raise ValueError("matrix is not square")
    return intmat.reduce_mod(m, mod) if mod else m


def is_reflection(m: Sequence[Sequence[int]], mod: int | None = None) -> bool:
    """True iff m is an involution with trace dim - 2.

    Over Q an involution is diagonalizable with eigenvalues +-1, so the
    trace pins down a single -1 eigenvalue. With ``mod`` the test is done
    in Z/mod, which is the right notion for 2-adic matrices at finite
    precision.
    """
    m = _as_matrix(m, mod)
    n = len(m)
    d = intmat.det(m)
    if mod is None and d not in (1, -1):
        raise ValueError("matrix is not invertible over the integers")
    if mod is not None and d % 2 == 0:
        raise ValueError("matrix is not invertible over the 2-adic integers")
    sq = intmat.matmul(m, m, mod)
    tr = intmat.trace(m)
    if mod is None:
        return sq == intmat.identity(n) and tr == n - 2
    return sq == intmat.reduce_mod(intmat.identity(n), mod) and (tr - (n - 2)) % mod == 0


def is_trivial_mod2(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    return all((m[i][j] - (i == j)) % 2 == 0 for i in range(n) for j in range(n))


@dataclass(frozen=True)
class StrictMarking:
    """A pair (b, beta) with sigma(x) = x + beta(x) b and beta(b) = -2."""

    b: Vector
    beta: Vector

    def matrix(self, mod: int | None = None) -> Matrix:
        n = len(self.b)
        return tuple(tuple(((i == j) + self.b[i] * self.beta[j]) % mod if mod else (i == j) + self.b[i] * self.beta[j]
                           for j in range(n)) for i in range(n))

    def negate(self, mod: int | None = None) -> "StrictMarking":
        f = (lambda v: tuple((-x) % mod for x in v)) if mod else (lambda v: tuple(-x for x in v))
        return StrictMarking(f(self.b), f(self.beta))

    def canonical(self) -> "StrictMarking":
        """Sign representative whose b has positive first nonzero coordinate."""
        for x in self.b:
            if x:
                return self if x > 0 else self.negate()
        return self


class FiniteMatrixGroup:
    """A finite group of integer (or Z/2^k) matrices, enumerated exhaustively.

    Elements are stored in lexicographic order of their entries, so every
    index derived from a group is reproducible across runs.
    """

    def __init__(self, elements: list[Matrix], generators: list[Matrix], mod: int | None = None):
        self.elements = elements
        self.mod = mod
        self.dim = len(elements[0])
        self.index = {m: i for i, m in enumerate(elements)}
        self.identity = self.index[intmat.reduce_mod(intmat.identity(self.dim), mod) if mod else intmat.identity(self.dim)]
        self.generators = [self.index[g] for g in generators]
        self._table: np.ndarray | None = None
        self._inv: list[int] | None = None
        self._reflections: list[int] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, m) -> bool:
        return self._key(m) in self.index

    def _key(self, m) -> Matrix:
        m = intmat.mat(m)
        return intmat.reduce_mod(m, self.mod) if self.mod else m

    def find(self, m) -> int:
        try:
            return self.index[self._key(m)]
        except KeyError:
            raise KeyError("matrix is not in the group") from None

    def __getitem__(self, i: int) -> Matrix:
        return self.elements[i]

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        return self.index[intmat.matmul(self.elements[i], self.elements[j], self.mod)]

    def table(self) -> np.ndarray:
        """Full multiplication table (computed once)."""
        if self._table is None:
            n = len(self.elements)
            arr = np.array(self.elements, dtype=object)
            if all(abs(x) < 2**20 for m in self.elements for row in m for x in row):
                arr = arr.astype(np.int64)
            t = np.empty((n, n), dtype=np.int64)
            for i in range(n):
                prods = np.matmul(arr[i], arr)  # arr[i] @ arr[j] for all j
                if self.mod:
                    prods = prods % self.mod
                for j in range(n):
                    t[i, j] = self.index[tuple(map(tuple, prods[j].tolist()))]
            self._table = t
        return self._table

    def inv(self, i: int) -> int:
        if self._inv is None:
            inv = [0] * len(self.elements)
            if self._table is not None:
                for a in range(len(self.elements)):
                    inv[a] = int(np.nonzero(self._table[a] == self.identity)[0][0])
            else:
                for a, m in enumerate(self.elements):
                    if self.mod:
                        inv[a] = self.index[intmat.inverse_mod(m, self.mod)]
                    else:
                        inv[a] = self.index[intmat.integer_inverse(m)]
            self._inv = inv
        return self._inv[i]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(self.mul(g, x), self.inv(g))

    def act(self, g: int, v: Sequence[int]) -> Vector:
        return intmat.matvec(self.elements[g], v, self.mod)

    def reflections(self) -> list[int]:
        """Indices of the reflections, in element order."""
        if self._reflections is None:
            self._reflections = [i for i, m in enumerate(self.elements) if is_reflection(m, self.mod)]
        return self._reflections

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.mul(x, i)
            k += 1
        return k

    def subgroup(self, gens: Iterable[int], cap: int = DEFAULT_CAP) -> "FiniteMatrixGroup":
        gens = list(gens)
        return generate_group([self.elements[g] for g in gens], cap=cap, mod=self.mod, dim=self.dim)

    def conjugacy_classes(self, subset: Sequence[int]) -> list[list[int]]:
        """Partition ``subset`` (closed under conjugation) into classes, each sorted."""
        remaining = set(subset)
        classes = []
        for x in subset:
            if x not in remaining:
                continue
            cls = sorted({self.conj(g, x) for g in range(len(self))})
            remaining.difference_update(cls)
            classes.append(cls)
        return classes

    def centralizer(self, x: int) -> list[int]:
        return [g for g in range(len(self)) if self.mul(g, x) == self.mul(x, g)]


def generate_group(gens: Sequence[Sequence[Sequence[int]]], cap: int = DEFAULT_CAP, mod: int | None = None,
                   dim: int | None = None) -> FiniteMatrixGroup:
    """Closure of the generators under multiplication.

    Raises GroupTooLargeError when more than ``cap`` elements appear, which
    is how infinite groups are caught.
    """
    gens = [_as_matrix(g, mod) for g in gens]
    if dim is None:
        if not gens:
            raise ValueError("need at least one generator or an explicit dim")
        dim = len(gens[0])
    for g in gens:
        d = intmat.det(g)
        if (mod is None and d not in (1, -1)) or (mod is not None and d % 2 == 0):
            raise ValueError("generator is not invertible")
    one = intmat.identity(dim)
    if mod:
        one = intmat.reduce_mod(one, mod)
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = intmat.matmul(x, g, mod)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupTooLargeError(f"group exceeds {cap} elements")
                queue.append(y)
    return FiniteMatrixGroup(sorted(seen), gens, mod)


def reflections_in(group: FiniteMatrixGroup) -> list[Matrix]:
    return [group.elements[i] for i in group.reflections()]


def canonical_vector(v: Sequence[int]) -> Vector:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def eigenlattice(sigma: Sequence[Sequence[int]], sign: int) -> list[Vector]:
    """Basis of ker(1 - sign*sigma); sign -1 gives the negative eigenlattice."""
    sigma = _as_matrix(sigma)
    n = len(sigma)
    a = tuple(tuple((i == j) - sign * sigma[i][j] for j in range(n)) for i in range(n))
    return [canonical_vector(v) for v in intmat.kernel_basis(a, n)]


def negative_root_vector(sigma: Sequence[Sequence[int]]) -> Vector:
    """Canonical generator b0 of ker(1 + sigma)."""
    basis = eigenlattice(sigma, -1)
    if len(basis) != 1:
        raise ValueError("not a reflection")
    return basis[0]


def _functional_for(sigma: Matrix, b: Vector) -> Vector | None:
    """beta with sigma - I = b beta^T, or None if it is not integral."""
    n = len(sigma)
    j = next(i for i in range(n) if b[i])
    beta = []
    for c in range(n):
        num = sigma[j][c] - (j == c)
        if num % b[j]:
            return None
        beta.append(num // b[j])
    if StrictMarking(b, tuple(beta)).matrix() != sigma:
        return None
    return tuple(beta)


def markings_of(sigma: Sequence[Sequence[int]]) -> list[StrictMarking]:
    """All markings of a reflection, one canonical strict marking per class.

    b runs over the generators of ker(1 + sigma) and twice them; the
    doubled one is a marking exactly when sigma is trivial mod 2.
    """
    sigma = _as_matrix(sigma)
    if not is_reflection(sigma):
        raise ValueError("not a reflection")
    b0 = negative_root_vector(sigma)
    out = []
    for k in (1, 2):
        b = tuple(k * x for x in b0)
        beta = _functional_for(sigma, b)
        if beta is not None:
            out.append(StrictMarking(b, beta))
    return out


def conjugate_marking(w: Sequence[Sequence[int]], m: StrictMarking) -> StrictMarking:
    """w.(b, beta) = (w b, beta o w^-1), the marking of w sigma w^-1."""
    w = _as_matrix(w)
    winv = intmat.integer_inverse(w)
    return StrictMarking(intmat.matvec(w, m.b), intmat.vecmat(m.beta, winv))


def negative_image_chain(sigma: Sequence[Sequence[int]]) -> tuple[int, int]:
    """Indices [ker(1+s) : im(1-s)] and [ker(1+s) : 2 ker(1+s)]/[...] for the chain
    2 ker(1+s) <= im(1-s) <= ker(1+s).

    Returns (index of im(1-s) in ker(1+s), index of 2ker(1+s) in im(1-s)).
    """
    sigma = _as_matrix(sigma)
    n = len(sigma)
    b0 = negative_root_vector(sigma)
    one_minus = [[(i == j) - sigma[i][j] for j in range(n)] for i in range(n)]
    img = intmat.image_basis(intmat.transpose(one_minus), n)
    (g,) = img
    # g is a multiple of b0
    j = next(i for i in range(n) if b0[i])
    k = abs(g[j] // b0[j])
    assert tuple(k * x for x in b0) == canonical_vector(g)
    return k, 2 // k
