"""Exact integer linear algebra on plain lists of Python ints.

Matrices are lists of rows.  Nothing here touches floating point; every
routine is safe for arbitrarily large entries.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence

Matrix = List[List[int]]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def congruent(basis: Sequence[Sequence[int]], gram: Sequence[Sequence[int]]) -> Matrix:
    """Return basis . gram . basis^T (the Gram matrix of the rows of `basis`)."""
    bg = matmul(basis, gram)
    return [[sum(x * y for x, y in zip(row, other)) for other in basis] for row in bg]


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def vec_mat(v: Sequence[int], m: Sequence[Sequence[int]]) -> List[int]:
    n = len(m[0]) if m else 0
    out = [0] * n
    for c, row in zip(v, m):
        if c:
            for j in range(n):
                out[j] += c * row[j]
    return out


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def _echelon(rows: Matrix, ncols: int) -> int:
    """In-place unimodular row reduction to echelon form on the first `ncols` columns.

    Returns the number of pivot rows; they occupy the top of `rows`.
    Pivots are made positive.  Columns past `ncols` are carried along.
    """
    m = len(rows)
    piv = 0
    for col in range(ncols):
        if piv >= m:
            break
        while True:
            best = None
            for i in range(piv, m):
                x = rows[i][col]
                if x and (best is None or abs(x) < abs(rows[best][col])):
                    best = i
            if best is None:
                break
            rows[piv], rows[best] = rows[best], rows[piv]
            p = rows[piv]
            pc = p[col]
            dirty = False
            for i in range(piv + 1, m):
                r = rows[i]
                x = r[col]
                if x:
                    q = x // pc
                    for j in range(len(r)):
                        r[j] -= q * p[j]
                    if r[col]:
                        dirty = True
            if not dirty:
                break
        if piv < m and rows[piv][col] != 0:
            if rows[piv][col] < 0:
                rows[piv] = [-x for x in rows[piv]]
            piv += 1
    return piv


def hnf(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form; zero rows are dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    """
    a = [list(r) for r in rows]
    if not a:
        return []
    n = len(a[0])
    k = _echelon(a, n)
    a = a[:k]
    for i, row in enumerate(a):
        c = next(j for j, x in enumerate(row) if x)
        p = row[c]
        for i2 in range(i):
            q = a[i2][c] // p
            if q:
                a[i2] = [x - q * y for x, y in zip(a[i2], row)]
    return a


def kernel_basis(forms: Sequence[Sequence[int]], n: int) -> Matrix:
    """Integral basis (in HNF) of {x in Z^n : f . x = 0 for every row f of `forms`}."""
    m = len(forms)
    aug = [[forms[i][j] for i in range(m)] + [1 if k == j else 0 for k in range(n)] for j in range(n)]
    k = _echelon(aug, m)
    return hnf([row[m:] for row in aug[k:]])


def rational_inverse(m: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        p = next((i for i in range(col, n) if a[i][col] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[p] = a[p], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def integer_inverse(m: Sequence[Sequence[int]]) -> Matrix:
    inv = rational_inverse(m)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def adjugate(m: Sequence[Sequence[int]]) -> Matrix:
    """Integer adjugate, adj(m) = det(m) * m^-1 (m nonsingular)."""
    d = bareiss_det(m)
    inv = rational_inverse(m)
    return [[int(x * d) for x in row] for row in inv]


def solve_rational(m: Sequence[Sequence[int]], b: Sequence) -> List[Fraction]:
    """Solve x . m = b for a row vector x, m square nonsingular."""
    inv = rational_inverse(m)
    n = len(m)
    return [sum((Fraction(b[k]) * inv[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
