"""Reflection lattices over the 2-adic integers, at finite precision 2^k.

Matrices are tuples of residues mod 2^k. Every step that has to decide
whether a residue is "really" zero does so with an explicit valuation
threshold and raises PrecisionError when the answer is not clear.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

from . import intmat
from .intmat import Matrix, PrecisionError, Vector
from .lattice import DEFAULT_CAP, FiniteMatrixGroup, GroupTooLargeError, StrictMarking, generate_group, is_reflection, is_trivial_mod2
from .rootdata import MarkedReflectionLattice, marking_family, reflection_classes

DEFAULT_PRECISION = 16
FIXTURE_PRECISION = 64


def _threshold(mod: int) -> int:
    """Largest valuation still read as a genuine nonzero residue."""
    return max(1, (mod.bit_length() - 1) // 2)


def _val(x: int, mod: int) -> int | None:
    x %= mod
    return None if x == 0 else intmat.valuation2(x)


def canonical_vector_mod(v: Sequence[int], mod: int) -> Vector:
    """Representative of the unit multiples of v: the first coordinate of least valuation becomes a power of two."""
    v = [x % mod for x in v]
    vals = [_val(x, mod) for x in v]
    if all(e is None for e in vals):
        return tuple(v)
    e = min(x for x in vals if x is not None)
    i = vals.index(e)
    u = pow((v[i] >> e), -1, mod)
    return tuple((x * u) % mod for x in v)


def kernel_mod(a: Sequence[Sequence[int]], mod: int) -> tuple[list[Vector], int]:
    """Z_2-kernel of a matrix known mod 2^k, and the modulus to which its vectors are known.

    A pivot 2^e leaves the kernel undetermined in the top e digits.
    """
    n = len(a[0])
    s = intmat.smith(a, mod=mod)
    limit = _threshold(mod)
    loss = 0
    for d in s.diag:
        e = intmat.valuation2(d)
        if e > limit:
            raise PrecisionError(f"pivot 2^{e} is too close to the precision 2^{mod.bit_length() - 1}")
        loss = max(loss, e)
    known = mod >> loss
    return [tuple(s.v[i][j] % known for i in range(n)) for j in range(s.rank, n)], known


def saturated_span_mod(vectors: Sequence[Sequence[int]], n: int, mod: int) -> list[Vector]:
    """Basis of (Q_2-span of vectors) cap Z_2^n."""
    rows = [tuple(x % mod for x in v) for v in vectors if any(x % mod for x in v)]
    if not rows:
        return []
    s = intmat.smith(rows, mod=mod)
    limit = _threshold(mod)
    for d in s.diag:
        if intmat.valuation2(d) > limit:
            raise PrecisionError("span rank is ambiguous at this precision")
    vinv = intmat.inverse_mod(s.v, mod)
    return [tuple(vinv[i]) for i in range(s.rank)]


def root_vector_mod(sigma: Sequence[Sequence[int]], mod: int) -> tuple[Vector, int]:
    """Canonical generator b0 of ker(1 + sigma) and the modulus to which it is known.

    sigma - I = b0 gamma^T with b0 primitive, so the column of sigma - I
    holding an entry of least valuation e is (2^e unit) b0. That pins b0
    down mod 2^(k-e); e = 1 exactly when sigma = I mod 2.
    """
    n = len(sigma)
    best = None
    for i in range(n):
        for j in range(n):
            v = _val(sigma[i][j] - (i == j), mod)
            if v is not None and (best is None or v < best[0]):
                best = (v, i, j)
    if best is None:
        raise ValueError("identity is not a reflection")
    e, i, j = best
    if e > 1:
        raise ValueError("not a reflection over the 2-adic integers")
    known = mod >> e
    u = pow(((sigma[i][j] - (i == j)) % mod) >> e, -1, known)
    col = [(((sigma[r][j] - (r == j)) % mod) >> e) * u % known for r in range(n)]
    # the column is b0 up to a unit; (1 + sigma) b0 = 0 is re-checked at the known precision
    one_plus = [[(sigma[a][b] + (a == b)) % known for b in range(n)] for a in range(n)]
    if any(x % known for x in intmat.matvec(one_plus, col, known)):
        raise ValueError("not a reflection over the 2-adic integers")
    return canonical_vector_mod(col, known), known


def negative_root_vector_mod(sigma: Sequence[Sequence[int]], mod: int) -> Vector:
    """b0 reduced to the precision at which it is known (see root_vector_mod)."""
    return root_vector_mod(sigma, mod)[0]


# markings


@dataclass(frozen=True)
class TwoAdicMarking:
    """sigma = I + b beta^T mod 2^k with beta(b) = -2; equivalent up to (u b, u^-1 beta)."""

    b: Vector
    beta: Vector
    mod: int

    def matrix(self) -> Matrix:
        n = len(self.b)
        return tuple(tuple((int(i == j) + self.b[i] * self.beta[j]) % self.mod for j in range(n)) for i in range(n))

    @property
    def doubled(self) -> bool:
        return all(x % 2 == 0 for x in self.b)

    def canonical(self) -> "TwoAdicMarking":
        """Scale b to canonical form and drop the digits that sigma does not determine.

        If beta has valuation e (b has valuation f), b is only known mod
        2^(k-e) and beta mod 2^(k-f).
        """
        mod = self.mod
        f = min(_val(x, mod) for x in self.b if x % mod)
        e = min((_val(x, mod) for x in self.beta if x % mod), default=0)
        b_mod, beta_mod = mod >> e, mod >> f
        i = next(j for j, x in enumerate(self.b) if _val(x, mod) == f)
        u = ((self.b[i] % mod) >> f) % b_mod
        b = tuple((x * pow(u, -1, b_mod)) % b_mod for x in self.b)
        return TwoAdicMarking(b, tuple((x * u) % beta_mod for x in self.beta), mod)


def markings_mod(sigma: Sequence[Sequence[int]], mod: int) -> list[TwoAdicMarking]:
    """All marking classes of a 2-adic reflection: b0 always, 2 b0 iff sigma = I mod 2."""
    n = len(sigma)
    sigma = intmat.reduce_mod(sigma, mod)
    if not is_reflection(sigma, mod):
        raise ValueError("not a reflection")
    b0 = negative_root_vector_mod(sigma, mod)
    i = next(j for j, x in enumerate(b0) if x == 1)
    gamma = tuple((sigma[i][j] - (i == j)) % mod for j in range(n))  # b0[i] = 1
    first = TwoAdicMarking(b0, gamma, mod)
    if first.matrix() != sigma:
        raise AssertionError("sigma - I is not b0 times a functional")
    out = [first]
    if is_trivial_mod2(sigma):
        out.append(TwoAdicMarking(tuple((2 * x) % mod for x in b0), tuple(x // 2 for x in gamma), mod))
        assert out[-1].matrix() == sigma
    return out


def conjugate_marking_mod(w: Matrix, m: TwoAdicMarking) -> TwoAdicMarking:
    winv = intmat.inverse_mod(w, m.mod)
    return TwoAdicMarking(intmat.matvec(w, m.b, m.mod), intmat.vecmat(m.beta, winv, m.mod), m.mod)


def marking_family_mod(group: FiniteMatrixGroup, choice: Mapping[int, TwoAdicMarking]) -> dict[int, TwoAdicMarking]:
    out: dict[int, TwoAdicMarking] = {}
    for rep, m in choice.items():
        out[rep] = m.canonical()
        frontier = [rep]
        while frontier:
            x = frontier.pop()
            for w in group.generators:
                y = group.conj(w, x)
                if y not in out:
                    out[y] = conjugate_marking_mod(group.elements[w], out[x]).canonical()
                    frontier.append(y)
    return out


@dataclass
class CompleteMarkedLattice:
    group: FiniteMatrixGroup
    markings: dict[int, TwoAdicMarking]

    @property
    def mod(self) -> int:
        return self.group.mod

    @property
    def precision(self) -> int:
        return self.group.mod.bit_length() - 1

    @property
    def rank(self) -> int:
        return self.group.dim

    def validate(self) -> dict[str, bool]:
        g = self.group
        refl = g.reflections()
        res = {"marked": set(self.markings) == set(refl)}
        res["strict"] = all(m.matrix() == g.elements[i] and (intmat.dot(m.beta, m.b) + 2) % g.mod == 0
                            for i, m in self.markings.items())
        res["equivariant"] = all(conjugate_marking_mod(g.elements[w], m).canonical() == self.markings[g.conj(w, i)]
                                 for w in g.generators for i, m in self.markings.items())
        span = g.subgroup(refl).order if refl else 1
        res["reflection_generated"] = span == g.order
        return res


def complete_lattice(generators: Sequence[Matrix], mod: int, doubled: Sequence[bool] | None = None,
                     cap: int = DEFAULT_CAP) -> CompleteMarkedLattice:
    """Complete marked lattice from generator matrices; per class, b0 or (where allowed) 2 b0."""
    group = generate_group(generators, mod=mod, cap=cap)
    classes = reflection_classes(group)
    picks = {}
    for k, cls in enumerate(classes):
        opts = markings_mod(group.elements[cls[0]], mod)
        want = doubled[k] if doubled is not None else False
        if want and len(opts) < 2:
            raise ValueError(f"class {k} has no doubled marking")
        picks[cls[0]] = opts[1 if want else 0]
    return CompleteMarkedLattice(group, marking_family_mod(group, picks))


def promote(m: MarkedReflectionLattice, k: int = DEFAULT_PRECISION) -> CompleteMarkedLattice:
    """Z_2 (x) L at precision 2^k, markings carried over."""
    mod = 2**k
    g = m.group
    gens = [intmat.reduce_mod(g.elements[x], mod) for x in g.generators]
    group = generate_group(gens, mod=mod, dim=g.dim)
    if group.order != g.order:
        raise AssertionError("reduction mod 2^k is not injective on the group")
    marks = {}
    for i, mk in m.markings.items():
        j = group.find(g.elements[i])
        marks[j] = TwoAdicMarking(tuple(x % mod for x in mk.b), tuple(x % mod for x in mk.beta), mod).canonical()
    return CompleteMarkedLattice(group, marks)


# DI(4)


def _f2_matmul(a, b):
    return tuple(tuple(sum(a[i][k] & b[k][j] for k in range(3)) & 1 for j in range(3)) for i in range(3))


def _gl32() -> tuple[list[Matrix], list[Matrix]]:
    """GL(3, F_2) and a generating pair (an order-7 element and a transvection)."""
    g7 = ((0, 0, 1), (1, 0, 1), (0, 1, 0))
    tv = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    group = generate_group([g7, tv], mod=2)
    assert group.order == 168
    return group.elements, [g7, tv]


def di4_oracle(precision: int = FIXTURE_PRECISION) -> list[Matrix]:
    """Integral 2-adic form of Z/2 x GL(3, F_2), by character projection.

    The 3-dimensional character chi of GL(3, F_2) has values in Q(sqrt(-7)),
    and sqrt(-7) lies in Z_2. The vector sum_g chi(g^-1) [gX], for X of
    order 3, spans the chi-part of Z_2[G/X] (multiplicity one), so its
    G-orbit spans a G-stable lattice of rank 3. Generators come back in a
    basis of that lattice; -I is appended.
    """
    K = precision + 16
    mod = 2**K
    elems, gens = _gl32()
    group = FiniteMatrixGroup(elems, gens, 2)
    n = len(elems)
    s = intmat.hensel_sqrt((-7) % 2 ** (K + 2), K + 2)  # alpha^2 + alpha + 2 = (s^2 + 7) / 4
    alpha = ((s - 1) // 2) % mod
    alpha_bar = (-1 - alpha) % mod
    order = [group.element_order(i) for i in range(n)]
    g7 = next(i for i in range(n) if order[i] == 7)
    class7 = {group.conj(x, g7) for x in range(n)}
    assert group.mul(g7, g7) in class7 and group.inv(g7) not in class7

    def chi(i: int) -> int:
        o = order[i]
        if o == 7:
            return alpha if i in class7 else alpha_bar
        return {1: 3, 2: -1, 3: 0, 4: 1}[o] % mod

    x3 = next(i for i in range(n) if order[i] == 3)
    X = [group.identity, x3, group.mul(x3, x3)]
    coset_id: dict[int, int] = {}
    cosets = []
    for g in range(n):
        if g in coset_id:
            continue
        for x in X:
            coset_id[group.mul(g, x)] = len(cosets)
        cosets.append(g)
    m = len(cosets)
    perm = [[coset_id[group.mul(h, c)] for c in cosets] for h in range(n)]
    v = [0] * m
    for g in range(n):
        v[coset_id[g]] = (v[coset_id[g]] + chi(group.inv(g))) % mod

    def act(h: int, vec: Sequence[int]) -> list[int]:
        out = [0] * m
        for j, x in enumerate(vec):
            out[perm[h][j]] = x
        return out

    orbit = [act(h, v) for h in range(n)]
    sm = intmat.smith(orbit, mod=mod)
    if sm.rank != 3:
        raise AssertionError(f"projection has rank {sm.rank}, expected 3")
    vinv = intmat.inverse_mod(sm.v, mod)
    basis = [[(sm.diag[i] * x) % mod for x in vinv[i]] for i in range(3)]
    loss = max(intmat.valuation2(d) for d in sm.diag)
    out_mod = 2**precision
    assert K - loss >= precision

    def coords(vec):
        y = intmat.vecmat(vec, sm.v, mod)
        assert all(x % mod == 0 for x in y[3:])
        return [(y[j] // sm.diag[j]) % out_mod for j in range(3)]

    mats = []
    for gm in gens:
        h = group.find(gm)
        cols = [coords(act(h, b)) for b in basis]
        mats.append(tuple(tuple(cols[i][j] for i in range(3)) for j in range(3)))
    mats.append(tuple(tuple((-int(i == j)) % out_mod for j in range(3)) for i in range(3)))
    return mats


def fixture_dir() -> Path:
    env = os.environ.get("NORMEXT_FIXTURES")
    return Path(env) if env else Path(__file__).with_name("fixtures")


def write_di4_fixture(path: Path | None = None, precision: int = FIXTURE_PRECISION) -> Path:
    from .docformat import Document, dump

    path = path or fixture_dir() / "di4.txt"
    mats = di4_oracle(precision)
    doc = Document("two-adic", 3, precision=precision, gens=dict(zip(["A", "B", "minus_identity"], mats)),
                   comments=["generators of Z/2 x GL(3, F_2) on a rank-3 Z_2-lattice",
                             "produced by di4_oracle: chi_3 projection of the 56-point permutation module"])
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump(doc))
    return path


@lru_cache(maxsize=None)
def _load_di4(path: str) -> tuple[int, tuple[Matrix, ...]]:
    from .docformat import parse

    doc = parse(Path(path).read_text())
    if doc.kind != "two-adic" or doc.rank != 3 or doc.precision is None:
        raise ValueError("DI4 fixture must be a rank-3 two-adic document with a precision header")
    return doc.precision, tuple(doc.gens.values())


DI4_CAP = 4096


@dataclass
class DI4Data:
    precision: int
    generators: list[Matrix]
    lattice: CompleteMarkedLattice


class FixtureError(AssertionError):
    """A fixture violates one of its defining invariants."""


def di4_data(k: int = DEFAULT_PRECISION, path: Path | None = None, verify: bool = True) -> DI4Data:
    """The DI4 generators at precision 2^k, read from the fixture and re-verified."""
    if k < 8:
        raise ValueError("DI4 data needs precision at least 2^8")
    prec, mats = _load_di4(str(path or fixture_dir() / "di4.txt"))
    if k > prec:
        raise PrecisionError(f"fixture only carries precision 2^{prec}")
    mod = 2**k
    gens = [intmat.reduce_mod(m, mod) for m in mats]
    try:
        # a damaged generator can produce a huge (or non-invertible) group; 336 is far below the cap
        lat = complete_lattice(gens, mod, cap=DI4_CAP)
    except GroupTooLargeError:
        raise FixtureError(f"DI4 fixture fails: order 336 (generated group exceeds {DI4_CAP} elements)") from None
    except ValueError as exc:
        raise FixtureError(f"DI4 fixture fails: order 336 ({exc})") from None
    data = DI4Data(k, gens, lat)
    if verify:
        problems = di4_invariants(data)
        bad = [name for name, ok in problems.items() if not ok]
        if bad:
            raise FixtureError("DI4 fixture fails: " + ", ".join(bad))
    return data


def mod2_image(group: FiniteMatrixGroup) -> FiniteMatrixGroup:
    return generate_group([intmat.reduce_mod(group.elements[g], 2) for g in group.generators], mod=2, dim=group.dim)


def mod2_irreducible(group: FiniteMatrixGroup) -> bool:
    """No proper nonzero subspace of F_2^n is stable (brute force over subspaces given by spans)."""
    n = group.dim
    gens = [intmat.reduce_mod(group.elements[g], 2) for g in group.generators]
    vecs = [v for v in itertools.product((0, 1), repeat=n) if any(v)]
    for v in vecs:
        # smallest stable subspace containing v
        span = {tuple([0] * n), v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = intmat.matvec(g, x, 2)
                new = {tuple((a + b) % 2 for a, b in zip(y, s)) for s in span} | {y}
                for z in new:
                    if z not in span:
                        span.add(z)
                        frontier.append(z)
            # close under addition
            closed = {tuple((a + b) % 2 for a, b in zip(p, q)) for p in span for q in span}
            for z in closed - span:
                span.add(z)
                frontier.append(z)
        if len(span) < 2**n:
            return False
    return True


def di4_invariants(data: DI4Data) -> dict[str, bool]:
    g = data.lattice.group
    refl = g.reflections()
    minus = intmat.reduce_mod(tuple(tuple(-int(i == j) for j in range(3)) for i in range(3)), g.mod)
    img = mod2_image(g)
    families = 1
    for cls in reflection_classes(g):
        families *= len(markings_mod(g.elements[cls[0]], g.mod))
    return {
        "order 336": g.order == 336,
        "mod-2 image of order 168": img.order == 168,
        "mod-2 action irreducible": mod2_irreducible(g),
        "-I present": minus in g,
        "21 reflections": len(refl) == 21,
        "reflections nontrivial mod 2": all(not is_trivial_mod2(g.elements[s]) for s in refl),
        "unique marking family": families == 1,
        "reflection generated": g.subgroup(refl).order == g.order,
    }


# block sums and partition


def block_sum(parts: Sequence[CompleteMarkedLattice], conjugator: Matrix | None = None) -> CompleteMarkedLattice:
    """Orthogonal sum of complete lattices, optionally written in another Z_2-basis."""
    mod = parts[0].mod
    n = sum(p.rank for p in parts)
    gens = []
    off = 0
    for p in parts:
        for gi in p.group.generators:
            m = p.group.elements[gi]
            big = [[int(i == j) for j in range(n)] for i in range(n)]
            for i in range(p.rank):
                for j in range(p.rank):
                    big[off + i][off + j] = m[i][j]
            gens.append(tuple(map(tuple, big)))
        off += p.rank
    marks_src = []
    off = 0
    for p in parts:
        for i, mk in p.markings.items():
            pad = lambda v, o=off: tuple([0] * o + list(v) + [0] * (n - o - len(v)))  # noqa: E731
            marks_src.append((pad(mk.b), pad(mk.beta)))
        off += p.rank
    if conjugator is not None:
        Q = intmat.reduce_mod(conjugator, mod)
        Qi = intmat.inverse_mod(Q, mod)
        gens = [intmat.matmul(intmat.matmul(Q, g, mod), Qi, mod) for g in gens]
        marks_src = [(intmat.matvec(Q, b, mod), intmat.vecmat(beta, Qi, mod)) for b, beta in marks_src]
    group = generate_group(gens, mod=mod, dim=n)
    marks = {}
    for b, beta in marks_src:
        mk = TwoAdicMarking(tuple(x % mod for x in b), tuple(x % mod for x in beta), mod)
        marks[group.find(mk.matrix())] = mk.canonical()
    return CompleteMarkedLattice(group, marks)


# a fixed change of basis used to hide block structure in fixtures
SHUFFLE_6 = ((1, 1, 0, 0, 1, 0), (0, 1, 0, 1, 0, 0), (0, 0, 1, 0, 0, 1),
             (1, 0, 0, 2, 0, 0), (0, 0, 1, 0, 1, 1), (0, 1, 0, 0, 0, 1))


def block_fixture(k: int = DEFAULT_PRECISION) -> CompleteMarkedLattice:
    """DI4 + B2 + A1 (simply connected forms), in a shuffled basis."""
    from .catalog import build_entry

    return block_sum([di4_data(k).lattice, promote(build_entry("B2_sc").lattice, k),
                      promote(build_entry("SU(2)").lattice, k)], SHUFFLE_6)


@dataclass
class Factor:
    reflections: list[int]  # indices in the ambient group
    basis: list[Vector]  # basis of L_i inside the ambient lattice
    lattice: CompleteMarkedLattice  # W_i acting on L_i in that basis

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass
class Partition:
    factors: list[Factor]
    fixed: list[Vector]
    split: bool
    determinant: int


def _components(group: FiniteMatrixGroup, refl: Sequence[int]) -> list[list[int]]:
    parent = {s: s for s in refl}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in itertools.combinations(refl, 2):
        if group.mul(a, b) != group.mul(b, a):
            parent[find(a)] = find(b)
    comps: dict[int, list[int]] = {}
    for s in refl:
        comps.setdefault(find(s), []).append(s)
    return sorted(comps.values(), key=lambda c: c[0])


def reflection_partition(C: CompleteMarkedLattice) -> Partition:
    """Split along the components of the non-commuting graph on reflections.

    L_i is the saturation of the root lines of component i, the fixed part
    is the saturated fixed lattice of W. The decomposition is accepted only
    when the combined basis is a Z_2-basis (odd determinant). Root lines of
    reflections that are trivial mod 2 are known one digit short, so the
    factors come back at precision 2^(k-1).
    """
    g = C.group
    n = g.dim
    refl = g.reflections()
    comps = _components(g, refl)
    roots = {s: root_vector_mod(g.elements[s], g.mod) for s in refl}
    gens = [g.elements[w] for w in g.generators]
    fixed, fixed_known = [tuple(int(i == j) for i in range(n)) for j in range(n)], g.mod
    if gens:
        stacked = [[(m[i][j] - (i == j)) % g.mod for j in range(n)] for m in gens for i in range(n)]
        fixed, fixed_known = kernel_mod(stacked, g.mod)
    mod = min([fixed_known] + [k for _, k in roots.values()])
    fixed = [tuple(x % mod for x in v) for v in fixed]
    bases = [saturated_span_mod([roots[s][0] for s in comp], n, mod) for comp in comps]
    cols = [v for b in bases for v in b] + list(fixed)
    if len(cols) != n:
        return Partition([], fixed, False, 0)
    P = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
    d = intmat.det(P) % mod
    if d % 2 == 0:
        return Partition([], fixed, False, d)
    Pinv = intmat.inverse_mod(P, mod)
    factors = []
    off = 0
    for comp, basis in zip(comps, bases):
        r = len(basis)
        sub = [_block(intmat.matmul(intmat.matmul(Pinv, intmat.reduce_mod(g.elements[s], mod), mod), P, mod), off, r, n)
               for s in comp]
        group = generate_group(sub, mod=mod, dim=r)
        marks = {}
        for s in comp:
            mk = C.markings[s]
            b = intmat.matvec(Pinv, [x % mod for x in mk.b], mod)
            beta = intmat.vecmat([x % mod for x in mk.beta], P, mod)
            assert all(x % mod == 0 for i, x in enumerate(b) if not off <= i < off + r)
            local = TwoAdicMarking(tuple(b[off:off + r]), tuple(beta[off:off + r]), mod)
            marks[group.find(local.matrix())] = local.canonical()
        factors.append(Factor(comp, basis, CompleteMarkedLattice(group, marks)))
        off += r
    return Partition(factors, fixed, True, d)


def _block(m: Matrix, off: int, r: int, n: int) -> Matrix:
    for i in range(n):
        for j in range(n):
            inside = off <= i < off + r and off <= j < off + r
            if not inside and m[i][j] != (i == j):
                raise AssertionError("reflection does not preserve the factor decomposition")
    return tuple(tuple(m[off + i][off + j] for j in range(r)) for i in range(r))


# classification

COXETER_TABLE = {
    (2, 1, 1): "A1",
    (6, 2, 3): "A2", (8, 2, 4): "B2", (12, 2, 6): "G2",
    (24, 3, 6): "A3", (48, 3, 9): "B3",
    (120, 4, 10): "A4", (384, 4, 16): "B4", (192, 4, 12): "D4", (1152, 4, 24): "F4",
}

CATALOG_FOR = {"A1": "SU(2)", "A2": "A2_sc", "B2": "B2_sc", "G2": "G2_sc", "A3": "A3_sc", "B3": "B3_sc",
               "D4": "D4_sc", "F4": "F4"}


def classify_factor(factor: CompleteMarkedLattice | Factor) -> str:
    """'DI4' or 'Coxeter(<type>)' for an irreducible factor."""
    lat = factor.lattice if isinstance(factor, Factor) else factor
    g = lat.group
    nrefl = len(g.reflections())
    if g.order == 336 and g.dim == 3:
        if mod2_image(g).order == 168 and mod2_irreducible(g):
            return "DI4"
    name = COXETER_TABLE.get((g.order, g.dim, nrefl))
    if name is None:
        raise ValueError(f"no irreducible reflection group of order {g.order}, rank {g.dim} with {nrefl} reflections")
    return f"Coxeter({name})"


def classify(C: CompleteMarkedLattice) -> list[str]:
    part = reflection_partition(C)
    if not part.split:
        raise ValueError("factor lattices do not split the lattice")
    tags = [classify_factor(f) for f in part.factors]
    if part.fixed:
        tags.append(f"trivial(rank {len(part.fixed)})")
    return tags


# descent to an integral form


def _coxeter_data(group: FiniteMatrixGroup, simples: Sequence[int]):
    return [[group.element_order(group.mul(a, b)) for b in simples] for a in simples]


def _match_simples(src: FiniteMatrixGroup, simples: Sequence[int], tgt: FiniteMatrixGroup):
    """Images of the simple reflections in tgt obeying the same Coxeter matrix and generating tgt."""
    cox = _coxeter_data(src, simples)
    refl = tgt.reflections()
    l = len(simples)

    def extend(chosen):
        i = len(chosen)
        if i == l:
            if tgt.subgroup(chosen).order == tgt.order:
                yield list(chosen)
            return
        for s in refl:
            if s in chosen:
                continue
            if all(tgt.element_order(tgt.mul(chosen[j], s)) == cox[j][i] for j in range(i)):
                yield from extend(chosen + [s])

    yield from extend([])


def _intertwiner(src_mats: Sequence[Matrix], tgt_mats: Sequence[Matrix], mod: int) -> tuple[Matrix, int] | None:
    """F with F s = t F for each pair, when the solution line is unambiguous, with its known modulus."""
    n = len(src_mats[0])
    rows = []
    for s, t in zip(src_mats, tgt_mats):
        for i in range(n):
            for j in range(n):
                # (F s)_ij - (t F)_ij
                row = [0] * (n * n)
                for k in range(n):
                    row[i * n + k] += s[k][j]
                    row[k * n + j] -= t[i][k]
                rows.append([x % mod for x in row])
    try:
        ker, known = kernel_mod(rows, mod)
    except PrecisionError:
        return None
    if len(ker) != 1:
        return None
    f = ker[0]
    return tuple(tuple(f[i * n + j] for j in range(n)) for i in range(n)), known


@dataclass
class Descent:
    name: str
    lattice: MarkedReflectionLattice
    basis: list[tuple[Fraction, ...]]  # basis of L in the catalog coordinates
    intertwiner: Matrix  # Z_2 (x) L -> factor lattice, in the L basis


def coxeterize(factor: CompleteMarkedLattice | Factor, name: str | None = None) -> Descent:
    """An integral marked lattice L with Z_2 (x) L isomorphic to the factor.

    Take the catalog lattice L' of the same type, match simple reflections,
    find the equivariant map F: Z_2 (x) L' -> factor, and pull back:
    L = 2^-e {z in L' : F z = 0 mod 2^e} where 2^e bounds the cokernel.
    """
    from .catalog import build_entry
    from .words import find_simple_system

    lat = factor.lattice if isinstance(factor, Factor) else factor
    tag = classify_factor(lat)
    if not tag.startswith("Coxeter("):
        raise ValueError(f"factor is {tag}, not of Coxeter type")
    found = tag[len("Coxeter("):-1]
    if name is not None and name != found:
        raise ValueError(f"factor has type {found}, not {name}")
    if found not in CATALOG_FOR:
        raise ValueError(f"no catalog form for {found}")
    mod = lat.mod
    ref = build_entry(CATALOG_FOR[found]).lattice
    ss = find_simple_system(ref.group)
    src = [intmat.reduce_mod(ref.group.elements[s], mod) for s in ss.simples]
    found_map = None
    for images in _match_simples(ref.group, ss.simples, lat.group):
        found_map = _intertwiner(src, [lat.group.elements[t] for t in images], mod)
        if found_map is not None:
            break
    if found_map is None:
        raise ValueError("no equivariant identification with the catalog lattice")
    F, mod = found_map
    n = lat.rank
    sm = intmat.smith(F, mod=mod)
    e = max((intmat.valuation2(d) for d in sm.diag), default=0)
    if len(sm.diag) < n or e > _threshold(mod):
        raise PrecisionError("intertwiner is degenerate at this precision")
    # {z : F z = 0 mod 2^e} contains 2^e Z^n; a basis comes from the Smith form of F mod 2^e
    q = 2**e
    gens = [tuple(q * int(i == j) for i in range(n)) for j in range(n)]
    if e:
        se = intmat.smith(F, mod=q)
        for j in range(n):
            d = se.diag[j] if j < len(se.diag) else q
            col = tuple(se.v[i][j] * (q // d) for i in range(n))
            gens.append(col)
    zbasis = intmat.image_basis(gens, n)
    basis = [tuple(Fraction(x, q) for x in v) for v in zbasis]
    Bm = tuple(tuple(basis[j][i] for j in range(n)) for i in range(n))
    Binv = intmat.rational_inverse(Bm)

    def in_basis(m):
        out = [[sum(Binv[i][a] * sum(m[a][b] * Bm[b][j] for b in range(n)) for a in range(n)) for j in range(n)]
               for i in range(n)]
        if any(x.denominator != 1 for row in out for x in row):
            raise AssertionError("pulled-back lattice is not stable")
        return tuple(tuple(int(x) for x in row) for row in out)

    mats = [in_basis(ref.group.elements[s]) for s in ss.simples]
    group = generate_group(mats, dim=n)
    # F in the new basis: F B, which must be invertible mod 2
    # F B = F z / 2^e with F z = 0 mod 2^e, so e more digits are lost
    FB = [[sum(F[i][k] * Bm[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert all(x.denominator == 1 for row in FB for x in row)
    mod >>= e
    FBi = [[int(x) % mod for x in row] for row in FB]
    target_index = {intmat.reduce_mod(m, mod): i for i, m in enumerate(lat.group.elements)}
    if intmat.det(FBi) % 2 == 0:
        raise AssertionError("descent map is not an isomorphism mod 2")
    FBi_inv = intmat.inverse_mod(FBi, mod)
    from .lattice import markings_of

    choice = {}
    for cls in reflection_classes(group):
        s = cls[0]
        m2 = intmat.matmul(intmat.matmul(FBi, group.elements[s], mod), FBi_inv, mod)
        target = lat.markings[target_index[m2]]
        opts = markings_of(group.elements[s])
        choice[s] = opts[1] if target.doubled else opts[0]
        if target.doubled and len(opts) < 2:
            raise AssertionError("doubled 2-adic marking on a reflection that is nontrivial mod 2")
    out = MarkedReflectionLattice(group, marking_family(group, choice))
    return Descent(found, out, basis, tuple(map(tuple, FBi)))


# discrete normalizer extension


def discrete_torus(C: CompleteMarkedLattice):
    """Torus markings h = b/2 in (Z/2^inf)^n; only b mod 2 matters."""
    from .rootdata import MarkedReflectionTorus

    return MarkedReflectionTorus(C.group, {i: tuple(Fraction(x % 2, 2) for x in mk.b) for i, mk in C.markings.items()})


def discrete_normalizer_extension(C: CompleteMarkedLattice):
    from .extensions import normalizer_extension

    return normalizer_extension(discrete_torus(C))


def reflection_square_check(C: CompleteMarkedLattice, level: int = 2) -> dict[int, bool]:
    """For each reflection sigma: some lift q = (x, sigma) in nu has q^2 = h_sigma.

    (x, sigma)^2 = (x + sigma x + nu(sigma, sigma), 1), so this is the
    linear condition (1 + sigma) x = h_sigma - nu(sigma, sigma) mod 2^level.
    """
    nu = discrete_normalizer_extension(C).at_level(level)
    torus = discrete_torus(C)
    q = 2**level
    out = {}
    g = C.group
    for s in g.reflections():
        m = g.elements[s]
        a = [[(m[i][j] + (i == j)) % q for j in range(g.dim)] for i in range(g.dim)]
        h = [int(x * q) % q for x in torus.markings[s]]
        rhs = [(x - y) % q for x, y in zip(h, nu(s, s))]
        out[s] = intmat.solve(a, rhs, q) is not None
    return out
