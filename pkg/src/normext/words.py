"""Simple systems, lengths and words in the simple reflections.

A word is a tuple of indices into the simple reflections; its image is
the product r_{i1} r_{i2} ... r_{im} in letter order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import intmat
from .lattice import FiniteMatrixGroup, negative_root_vector

Word = tuple[int, ...]

GENERIC_BASE = 10**6


@dataclass
class SimpleSystem:
    group: FiniteMatrixGroup
    simples: list[int]  # element indices of s_1..s_l
    coxeter_matrix: list[list[int]]
    positive_roots: dict[int, tuple[int, ...]] = field(default_factory=dict)
    _lengths: list[int] | None = field(default=None, repr=False)
    _lexfirst: list[Word] | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.simples)

    def lengths(self) -> list[int]:
        if self._lengths is None:
            self._bfs()
        return self._lengths

    def lexfirst_words(self) -> list[Word]:
        """Lexicographically first minimal word for every element."""
        if self._lexfirst is None:
            self._bfs()
        return self._lexfirst

    def _bfs(self) -> None:
        g = self.group
        n = len(g)
        length = [-1] * n
        best: list[Word | None] = [None] * n
        length[g.identity] = 0
        best[g.identity] = ()
        layer = [g.identity]
        while layer:
            nxt = {}
            for x in layer:
                for i, s in enumerate(self.simples):
                    y = g.mul(x, s)
                    if length[y] == -1:
                        cand = best[x] + (i,)
                        if y not in nxt or cand < nxt[y]:
                            nxt[y] = cand
            for y, w in nxt.items():
                length[y] = len(w)
                best[y] = w
            layer = sorted(nxt)
        if -1 in length:
            raise ValueError("simple reflections do not generate the group")
        self._lengths = length
        self._lexfirst = best


def _generic_functional(dim: int, base: int) -> tuple[int, ...]:
    return tuple(base**k for k in range(dim))


def find_simple_system(group: FiniteMatrixGroup, marking=None, base: int = GENERIC_BASE) -> SimpleSystem:
    """Simple reflections of a Weyl group acting on an integer lattice.

    The root line of a reflection is ker(1 + sigma); a generic integer
    functional orients each line, and the simple reflections are the ones
    sending exactly one positive root line to the negative side. This only
    uses root directions, so ``marking`` is accepted for interface symmetry
    and ignored.
    """
    refl = group.reflections()
    if not refl:
        return SimpleSystem(group, [], [])
    roots = {s: negative_root_vector(group.elements[s]) for s in refl}
    while True:
        phi = _generic_functional(group.dim, base)
        vals = {s: intmat.dot(phi, r) for s, r in roots.items()}
        if all(vals.values()):
            break
        base += 1
    pos = {s: (r if vals[s] > 0 else tuple(-x for x in r)) for s, r in roots.items()}
    simples = []
    for s in refl:
        m = group.elements[s]
        flipped = sum(1 for t in refl if intmat.dot(phi, intmat.matvec(m, pos[t])) < 0)
        if flipped == 1:
            simples.append(s)
    cox = [[group.element_order(group.mul(a, b)) for b in simples] for a in simples]
    ss = SimpleSystem(group, simples, cox, pos)
    ss.lengths()  # also checks generation
    return ss


def prod_word(n: int, y: int, x: int) -> Word:
    """prod(n; y, x) = ... y x y x with n letters, the rightmost being x."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return tuple(x if (n - 1 - k) % 2 == 0 else y for k in range(n))


def word_image(ss: SimpleSystem, word: Sequence[int]) -> int:
    g = ss.group
    x = g.identity
    for i in word:
        x = g.mul(x, ss.simples[i])
    return x


def length(ss: SimpleSystem, element: int) -> int:
    if not 0 <= element < len(ss.group):
        raise KeyError("element not in group")
    return ss.lengths()[element]


def reflection_sequence(ss: SimpleSystem, word: Sequence[int]) -> list[int]:
    """sigma_k = r(i_1..i_{k-1}) r_{i_k} r(i_1..i_{k-1})^-1 for k = 1..m."""
    g = ss.group
    prefix = g.identity
    out = []
    for i in word:
        out.append(g.conj(prefix, ss.simples[i]))
        prefix = g.mul(prefix, ss.simples[i])
    return out


def is_minimal(ss: SimpleSystem, word: Sequence[int]) -> bool:
    return len(word) == length(ss, word_image(ss, word))


def all_minimal_words(ss: SimpleSystem, element: int) -> list[Word]:
    """Every minimal word for ``element``, sorted."""
    memo: dict[int, list[Word]] = {ss.group.identity: [()]}
    lengths = ss.lengths()
    g = ss.group

    def words(x: int) -> list[Word]:
        if x in memo:
            return memo[x]
        out = []
        for i, s in enumerate(ss.simples):
            y = g.mul(x, s)
            if lengths[y] == lengths[x] - 1:
                out.extend(w + (i,) for w in words(y))
        memo[x] = sorted(out)
        return memo[x]

    return words(element)
