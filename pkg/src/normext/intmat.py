"""Exact integer matrix arithmetic.

Matrices are tuples of row tuples of Python ints, so they hash and compare
exactly. Everything structural (kernels, images, saturation, linear
systems) goes through one Smith normal form routine, with a variant over
the local ring Z/2^k for the 2-adic code.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class NotInvertibleError(ValueError):
    pass


class PrecisionError(ArithmeticError):
    """Raised when a 2-adic computation cannot be certified at the working precision."""


def mat(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], mod: int | None = None) -> Matrix:
    bt = list(zip(*b))
    if mod is None:
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % mod for col in bt) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int], mod: int | None = None) -> Vector:
    if mod is None:
        return tuple(sum(x * y for x, y in zip(row, v)) for row in a)
    return tuple(sum(x * y for x, y in zip(row, v)) % mod for row in a)


def vecmat(v: Sequence[int], a: Sequence[Sequence[int]], mod: int | None = None) -> Vector:
    """Row vector times matrix, i.e. the functional x -> v(a x)."""
    out = tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]) if a else 0))
    return out if mod is None else tuple(x % mod for x in out)


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(u, v))


def reduce_mod(a: Sequence[Sequence[int]], mod: int) -> Matrix:
    return tuple(tuple(x % mod for x in row) for row in a)


def trace(a: Sequence[Sequence[int]]) -> int:
    return sum(a[i][i] for i in range(len(a)))


def is_square(a: Sequence[Sequence[int]]) -> bool:
    return all(len(row) == len(a) for row in a)


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rational_inverse(a: Sequence[Sequence[int | Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse over Q by Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise NotInvertibleError("singular matrix")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def integer_inverse(a: Sequence[Sequence[int]]) -> Matrix:
    inv = rational_inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise NotInvertibleError("matrix is not invertible over the integers")
    return tuple(tuple(int(x) for x in row) for row in inv)


def inverse_mod(a: Sequence[Sequence[int]], mod: int) -> Matrix:
    """Inverse modulo a power of two (the matrix must be odd-determinant)."""
    n = len(a)
    m = [[x % mod for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] % 2), None)
        if p is None:
            raise NotInvertibleError("matrix is singular mod 2")
        m[c], m[p] = m[p], m[c]
        u = pow(m[c][c], -1, mod)
        m[c] = [(x * u) % mod for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [(x - f * y) % mod for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def valuation2(x: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of zero")
    return (x & -x).bit_length() - 1


def hensel_sqrt(a: int, k: int) -> int:
    """Square root of a modulo 2^k for a = 1 mod 8 (the root that is 1 mod 4)."""
    if a % 8 != 1:
        raise ValueError("a must be 1 mod 8 to have a 2-adic square root")
    x = 1
    for j in range(3, k + 1):
        # x^2 = a mod 2^j holds; lift to mod 2^(j+1)
        if (x * x - a) % (1 << (j + 1)):
            x += 1 << (j - 1)
    mod = 1 << k
    x %= mod
    assert (x * x - a) % mod == 0
    return x


# Smith normal form over Z and over Z/2^k.


class Smith:
    """Result of a Smith reduction  U A V = D.

    Only V is kept as a matrix; the row operations are replayed on any
    right-hand sides handed to the reduction (see ``smith``).
    """

    def __init__(self, diag: list[int], v: list[list[int]], rhs: list[list[int]], mod: int | None, shape: tuple[int, int]):
        self.diag = diag
        self.v = v
        self.rhs = rhs
        self.mod = mod
        self.shape = shape

    @property
    def rank(self) -> int:
        return len(self.diag)


def smith(a: Sequence[Sequence[int]], rhs: Sequence[Sequence[int]] = (), mod: int | None = None, want_v: bool = True) -> Smith:
    """Diagonalize ``a`` by unimodular row and column operations.

    ``rhs`` is a list of column vectors (each of length ``len(a)``) to which
    the row operations are applied. Over Z the diagonal has the divisibility
    property; over Z/2^k (``mod`` a power of two) each diagonal entry is a
    power of two and every remaining entry is zero.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(row) for row in a]
    if mod is not None:
        A = [[x % mod for x in row] for row in A]
    B = [list(col) for col in rhs]
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_v else []

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for col in B:
            col[i], col[j] = col[j], col[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        if f == 0:
            return
        rs, rd = A[src], A[dst]
        if mod is None:
            for c in range(n):
                if rs[c]:
                    rd[c] += f * rs[c]
            for col in B:
                col[dst] += f * col[src]
        else:
            for c in range(n):
                if rs[c]:
                    rd[c] = (rd[c] + f * rs[c]) % mod
            for col in B:
                col[dst] = (col[dst] + f * col[src]) % mod

    def add_col(dst, src, f):  # col_dst += f * col_src
        if f == 0:
            return
        for row in A:
            if row[src]:
                row[dst] = row[dst] + f * row[src] if mod is None else (row[dst] + f * row[src]) % mod
        for row in V:
            if row[src]:
                row[dst] = row[dst] + f * row[src] if mod is None else (row[dst] + f * row[src]) % mod

    def scale_row(i, u):
        A[i] = [(x * u) % mod for x in A[i]]
        for col in B:
            col[i] = (col[i] * u) % mod

    diag: list[int] = []
    t = 0
    while t < min(m, n):
        if mod is None:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            while True:
                p = A[t][t]
                done = True
                for i in range(t + 1, m):
                    if A[i][t]:
                        q = A[i][t] // p
                        add_row(i, t, -q)
                        if A[i][t]:
                            done = False
                for j in range(t + 1, n):
                    if A[t][j]:
                        q = A[t][j] // p
                        add_col(j, t, -q)
                        if A[t][j]:
                            done = False
                if done:
                    # divisibility condition on the trailing block
                    bad = None
                    for i in range(t + 1, m):
                        for j in range(t + 1, n):
                            if A[i][j] % p:
                                bad = i
                                break
                        if bad is not None:
                            break
                    if bad is None:
                        break
                    add_row(t, bad, 1)
                    continue
                # move the smallest remaining entry of row/column t to the pivot
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cands)
                swap_rows(t, i)
                swap_cols(t, j)
            if A[t][t] < 0:
                A[t] = [-x for x in A[t]]
                for col in B:
                    col[t] = -col[t]
            diag.append(A[t][t])
        else:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    x = row[j]
                    if x:
                        v = valuation2(x)
                        if best is None or v < best[0]:
                            best = (v, i, j)
                            if v == 0:
                                break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            e, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            u = A[t][t] >> e
            scale_row(t, pow(u, -1, mod))
            p = 1 << e
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] >> e))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] >> e))
            assert A[t][t] == p
            diag.append(p)
        t += 1
    return Smith(diag, V, B, mod, (m, n))


def kernel_basis(a: Sequence[Sequence[int]], n: int | None = None) -> list[Vector]:
    """Basis of the (automatically saturated) integer kernel {x : a x = 0}."""
    if not a:
        n = n or 0
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    s = smith(a)
    ncols = s.shape[1]
    return [tuple(s.v[i][j] for i in range(ncols)) for j in range(s.rank, ncols)]


def image_basis(vectors: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Basis of the sublattice of Z^n spanned by ``vectors``."""
    return _row_space_basis([v for v in vectors if any(v)], n)


def _row_space_basis(rows: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Echelon basis of the Z-span of ``rows`` (integer row reduction)."""
    basis: list[list[int]] = []
    pivots: list[int] = []
    for r in rows:
        basis, pivots = _insert_row(basis, pivots, r, n)
    return [tuple(b) for b in basis]


def _insert_row(basis, pivots, r, n):
    # keep basis in echelon form with positive pivots, sorted by pivot column
    r = list(r)
    out_b, out_p = [list(b) for b in basis], list(pivots)
    while True:
        c = next((j for j in range(n) if r[j]), None)
        if c is None:
            return out_b, out_p
        if c in out_p:
            idx = out_p.index(c)
            b = out_b[idx]
            # extended gcd combination of b and r in column c
            x, y = b[c], r[c]
            g, s, t = _xgcd(x, y)
            nb = [s * bi + t * ri for bi, ri in zip(b, r)]
            nr = [(x // g) * ri - (y // g) * bi for bi, ri in zip(b, r)]
            out_b[idx] = nb
            r = nr
        else:
            if r[c] < 0:
                r = [-v for v in r]
            pos = sum(1 for p in out_p if p < c)
            out_b.insert(pos, r)
            out_p.insert(pos, c)
            return out_b, out_p


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def saturate(vectors: Sequence[Sequence[int]], n: int) -> list[Vector]:
    """Basis of (Q-span of vectors) intersected with Z^n."""
    vs = [tuple(v) for v in vectors if any(v)]
    if not vs:
        return []
    annihilator = kernel_basis(vs, n)  # functionals vanishing on the span
    if not annihilator:
        return [tuple(int(i == j) for i in range(n)) for j in range(n)]
    return kernel_basis(annihilator, n)


def rank(a: Sequence[Sequence[int]]) -> int:
    if not a or not a[0]:
        return 0
    return smith(a, want_v=False).rank


def solve(a: Sequence[Sequence[int]], b: Sequence[int], mod: int | None = None) -> Vector | None:
    """One solution x of a x = b over Z (``mod`` None) or Z/2^k, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise ValueError("shape mismatch")
    if mod is not None:
        b = [x % mod for x in b]
    # discard zero rows, checking consistency, and duplicate rows
    rows, rhs, seen = [], [], {}
    for row, bi in zip(a, b):
        row = tuple(row) if mod is None else tuple(x % mod for x in row)
        if not any(row):
            if bi != 0:
                return None
            continue
        if row in seen:
            if seen[row] != bi:
                return None
            continue
        seen[row] = bi
        rows.append(row)
        rhs.append(bi)
    if not rows:
        return (0,) * n
    s = smith(rows, rhs=[rhs], mod=mod)
    c = s.rhs[0]
    y = [0] * n
    for i, d in enumerate(s.diag):
        if c[i] % d:
            return None
        y[i] = c[i] // d
    for i in range(s.rank, len(rows)):
        if (c[i] % mod if mod else c[i]) != 0:
            return None
    x = tuple(sum(s.v[i][j] * y[j] for j in range(n)) for i in range(n))
    if mod is not None:
        x = tuple(v % mod for v in x)
    return x


def lattice_index(sub: Sequence[Sequence[int]], sup: Sequence[Sequence[int]]) -> int:
    """Index [sup : sub] for full-rank-in-each-other sublattices given by basis rows.

    Both must span the same rational space; sub must lie in sup.
    """
    if not sub:
        return 1
    # coordinates of sub in terms of sup
    coords = []
    supt = transpose(sup)
    for v in sub:
        x = solve(supt, v)
        if x is None:
            raise ValueError("sub is not contained in sup")
        coords.append(x)
    s = smith(coords, want_v=False)
    if s.rank != len(sup):
        raise ValueError("lattices do not have the same rank")
    out = 1
    for d in s.diag:
        out *= d
    return out
