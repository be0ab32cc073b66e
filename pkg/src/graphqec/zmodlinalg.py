"""Exact integer linear algebra over Z and Z_d.

Everything here runs on arbitrary-precision Python integers: Smith normal
form with tracked unimodular transforms, kernels of integer matrices acting
modulo d (any d >= 2, prime or not), and fraction-free Bareiss determinants.
Matrices are plain lists of row lists; operations that must work on matrices
with zero rows take an explicit column count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

IntMatrix = list[list[int]]


def _copy(a) -> IntMatrix:
    return [[int(x) for x in row] for row in a]


def _identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if aik:
                bk = b[k]
                for j in range(cols):
                    oi[j] += aik * bk[j]
    return out


def _ncols_of(a, ncols: int | None) -> int:
    if a:
        widths = {len(row) for row in a}
        if len(widths) != 1:
            raise ValueError("ragged matrix")
        width = widths.pop()
        if ncols is not None and ncols != width:
            raise ValueError(f"ncols={ncols} disagrees with row width {width}")
        return width
    if ncols is None:
        raise ValueError("matrix with zero rows needs an explicit ncols")
    return ncols


@dataclass(frozen=True)
class SmithDecomposition:
    """A = U * S * V with U, V unimodular and S in Smith normal form.

    ``v_inv`` is the inverse of V, kept because kernels are read off through
    it: x solves A x = 0 (mod d) exactly when x = v_inv * y for y with
    S y = 0 (mod d).
    """

    u: tuple[tuple[int, ...], ...]
    s: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]
    v_inv: tuple[tuple[int, ...], ...]
    nrows: int
    ncols: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.nrows, self.ncols)
        return tuple(self.s[i][i] for i in range(k))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)

    def reconstruct(self) -> IntMatrix:
        return _matmul(_matmul([list(r) for r in self.u], [list(r) for r in self.s]),
                       [list(r) for r in self.v])


@dataclass(frozen=True)
class KernelBasis:
    """Generators of {x in Z_d^n : A x = 0 mod d} as a Z_d-module."""

    modulus: int
    dimension: int
    generators: tuple[tuple[int, ...], ...]

    @property
    def is_trivial(self) -> bool:
        return not self.generators


def smith_normal_form(a, ncols: int | None = None) -> SmithDecomposition:
    """Smith normal form with deterministic pivoting.

    Pivot rule: smallest nonzero absolute value in the remaining block, ties
    broken by lowest (row, col).  The divisibility chain s_1 | s_2 | ... is
    enforced and diagonal entries are normalized to be nonnegative.
    """
    n = _ncols_of(a, ncols)
    s = _copy(a)
    m = len(s)
    u = _identity(m)        # accumulates inverses of row ops: A = u * s * v
    v = _identity(n)
    v_inv = _identity(n)    # accumulates column ops: kernel vectors live here

    def row_swap(i, k):
        s[i], s[k] = s[k], s[i]
        for r in u:
            r[i], r[k] = r[k], r[i]

    def row_addmul(i, k, c):
        # row_i += c * row_k
        si, sk = s[i], s[k]
        for j in range(n):
            si[j] += c * sk[j]
        for r in u:
            r[k] -= c * r[i]

    def row_negate(i):
        s[i] = [-x for x in s[i]]
        for r in u:
            r[i] = -r[i]

    def col_swap(j, l):
        for row in s:
            row[j], row[l] = row[l], row[j]
        for row in v_inv:
            row[j], row[l] = row[l], row[j]
        v[j], v[l] = v[l], v[j]

    def col_addmul(j, l, c):
        # col_j += c * col_l
        for row in s:
            row[j] += c * row[l]
        for row in v_inv:
            row[j] += c * row[l]
        vl, vj = v[l], v[j]
        for jj in range(n):
            vl[jj] -= c * vj[jj]

    def col_negate(j):
        for row in s:
            row[j] = -row[j]
        for row in v_inv:
            row[j] = -row[j]
        v[j] = [-x for x in v[j]]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x and (best is None or abs(x) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        pivot = find_pivot(t)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(t, pivot[0])
        if pivot[1] != t:
            col_swap(t, pivot[1])
        while True:
            # Euclidean clearing of column t then row t; a nonzero remainder
            # becomes the new, strictly smaller pivot.
            i = next((i for i in range(t + 1, m) if s[i][t]), None)
            if i is not None:
                q = s[i][t] // s[t][t]
                row_addmul(i, t, -q)
                if s[i][t]:
                    row_swap(t, i)
                continue
            j = next((j for j in range(t + 1, n) if s[t][j]), None)
            if j is not None:
                q = s[t][j] // s[t][t]
                col_addmul(j, t, -q)
                if s[t][j]:
                    col_swap(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                 if s[i][j] % s[t][t]),
                None,
            )
            if bad is not None:
                # Fold the offending row into row t; the next round shrinks
                # the pivot to a divisor of both.
                row_addmul(t, bad[0], 1)
                continue
            break
        if s[t][t] < 0:
            row_negate(t)
        t += 1

    return SmithDecomposition(
        u=tuple(tuple(r) for r in u),
        s=tuple(tuple(r) for r in s),
        v=tuple(tuple(r) for r in v),
        v_inv=tuple(tuple(r) for r in v_inv),
        nrows=m,
        ncols=n,
    )


def kernel_from_snf(snf: SmithDecomposition, d: int) -> KernelBasis:
    """Kernel of x -> A x over Z_d read off a precomputed decomposition."""
    if d < 2:
        raise ValueError(f"modulus must be >= 2, got {d}")
    n = snf.ncols
    diag = snf.diagonal
    generators: list[tuple[int, ...]] = []
    for j in range(n):
        if j < len(diag) and diag[j] != 0:
            step = d // math.gcd(diag[j], d)
            if step % d == 0:
                continue
        else:
            step = 1
        vec = tuple((step * snf.v_inv[i][j]) % d for i in range(n))
        if any(vec):
            generators.append(vec)
    return KernelBasis(modulus=d, dimension=n, generators=tuple(generators))


def kernel_mod(a, d: int, ncols: int | None = None) -> KernelBasis:
    """Generating set of {x : A x = 0 (mod d)} for any modulus d >= 2."""
    n = _ncols_of(a, ncols)
    return kernel_from_snf(smith_normal_form(a, ncols=n), d)


def kernel_trivial(a, d: int, ncols: int | None = None) -> bool:
    """True iff the only solution of A x = 0 (mod d) is x = 0."""
    return kernel_mod(a, d, ncols=ncols).is_trivial


def det_exact(a) -> int:
    """Exact determinant by fraction-free Bareiss elimination.

    Arbitrary-precision throughout; the interior divisions are exact by the
    Bareiss identity.  The empty 0x0 matrix has determinant 1.
    """
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    m = _copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
