"""Exact enumeration of vectors in positive definite lattices.

The workhorse is an integer-only Fincke-Pohst search.  The Gram matrix is
factored over the rationals as G = U^T D U, after which every quantity the
search needs is rescaled to integers so that pruning never rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import intlin
from .lattice import Covector, Lattice, LatticeError, LatticeVector, orthogonal_complement


# ---------------------------------------------------------------- reduction

def pair_reduce(gram: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Pairwise size reduction of a positive definite Gram matrix.

    Repeatedly replaces b_i by b_i - q b_j whenever that strictly shortens b_i.
    Returns (new_gram, transform) with transform . gram . transform^T == new_gram.
    The basis is finally sorted by norm.
    """
    n = len(gram)
    g = [list(r) for r in gram]
    t = [[int(i == j) for j in range(n)] for i in range(n)]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                gij, gjj = g[i][j], g[j][j]
                if 2 * abs(gij) <= gjj:
                    continue
                q = (2 * gij + gjj) // (2 * gjj)
                if q == 0:
                    continue
                _sub_row(g, t, i, j, q)
                changed = True
    order = sorted(range(n), key=lambda i: (g[i][i], i))
    g = [[g[i][j] for j in order] for i in order]
    t = [t[i] for i in order]
    return g, t


def _sub_row(g, t, i, j, q):
    # b_i <- b_i - q b_j, updating the Gram matrix in place
    gjj = g[j][j]
    gij = g[i][j]
    gii = g[i][i] - 2 * q * gij + q * q * gjj
    n = len(g)
    for k in range(n):
        if k != i:
            g[i][k] -= q * g[j][k]
            g[k][i] = g[i][k]
    g[i][i] = gii
    ti, tj = t[i], t[j]
    for k in range(n):
        ti[k] -= q * tj[k]


def short_basis(gram: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[List[int]]]:
    """Pairwise reduction followed by greedy exchange against shorter vectors.

    A basis vector b_i is replaced by a strictly shorter lattice vector whose
    i-th coordinate is +-1, which keeps the basis unimodular.  Returns
    (new_gram, transform) as for pair_reduce.
    """
    g, t = pair_reduce(gram)
    n = len(g)
    while n:
        top = max(g[i][i] for i in range(n))
        if top <= 1:
            break
        fac = _Factor(g)
        found = []
        _search(fac, lambda: top - 1, lambda x, q: found.append((q // fac.delta, tuple(x))))
        found.sort()
        improved = False
        for i in sorted(range(n), key=lambda i: -g[i][i]):
            for q, x in found:
                if q >= g[i][i]:
                    break
                if abs(x[i]) == 1:
                    sub = [[int(a == j) for a in range(n)] if j != i else list(x) for j in range(n)]
                    g = intlin.congruent(sub, g)
                    t = intlin.matmul(sub, t)
                    improved = True
                    break
            if improved:
                break
        if not improved:
            break
        g2, t2 = pair_reduce(g)
        g, t = g2, intlin.matmul(t2, t)
    return g, t


def reduce_lattice(L: Lattice) -> Tuple[Lattice, List[List[int]]]:
    g, t = pair_reduce(L.gram)
    return Lattice.from_rows(g, L.name), t


# ---------------------------------------------------------------- Fincke-Pohst

class _Factor:
    """Integer-scaled LDL data: Delta * Q(x) = sum_i c[i] * z_i(x)^2,
    where z_i = b[i]*x_i + sum_{j>i} a[i][j]*x_j."""

    def __init__(self, gram: Sequence[Sequence[int]]):
        n = len(gram)
        a = [[Fraction(x) for x in row] for row in gram]
        d = []
        u = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            p = a[i][i]
            if p <= 0:
                raise LatticeError("lattice is not positive definite")
            d.append(p)
            for j in range(i + 1, n):
                u[i][j] = a[i][j] / p
            for j in range(i + 1, n):
                f = a[j][i] / p
                if f:
                    for k in range(i + 1, n):
                        a[j][k] -= f * a[i][k]
        self.n = n
        self.b = []
        self.a = []
        for i in range(n):
            den = 1
            for j in range(i + 1, n):
                den = lcm(den, u[i][j].denominator)
            self.b.append(den)
            self.a.append([0] * (i + 1) + [int(u[i][j] * den) for j in range(i + 1, n)])
        scaled = [d[i] / (self.b[i] ** 2) for i in range(n)]
        delta = 1
        for s in scaled:
            delta = lcm(delta, s.denominator)
        self.delta = delta
        self.c = [int(s * delta) for s in scaled]


def _search(fac: _Factor, bound: Callable[[], int], emit: Callable[[List[int], int], None],
            exact: Optional[int] = None, parity: Optional[Sequence[int]] = None,
            half: bool = True) -> None:
    """Visit integer x with Delta*Q(x) <= Delta*bound().

    `bound` is re-read at every level so that callers may shrink it.
    With `exact` set, only vectors of that exact norm are produced.
    With `parity`, coordinate i is restricted to x_i = parity[i] (mod 2).
    With `half`, only one of each +-pair is produced and x = 0 is skipped.
    """
    n = fac.n
    b, a, c, delta = fac.b, fac.a, fac.c, fac.delta
    x = [0] * n
    if n == 0:
        return

    def level(i: int, used: int, zero_above: bool):
        s = 0
        ai = a[i]
        for j in range(i + 1, n):
            if x[j]:
                s += ai[j] * x[j]
        rem = delta * (exact if exact is not None else bound()) - used
        if rem < 0:
            return
        if i == 0 and exact is not None:
            if rem % c[0]:
                return
            z2 = rem // c[0]
            z = isqrt(z2)
            if z * z != z2:
                return
            cands = {z, -z}
            for zz in sorted(cands):
                num = zz - s
                if num % b[0]:
                    continue
                xi = num // b[0]
                if parity is not None and (xi - parity[0]) % 2:
                    continue
                if half and zero_above and xi <= 0:
                    continue
                x[0] = xi
                emit(x, rem + used)
            x[0] = 0
            return
        zmax = isqrt(rem // c[i])
        lo = -((zmax + s) // b[i])
        hi = (zmax - s) // b[i]
        if half and zero_above:
            lo = max(lo, 0)
        if parity is not None:
            lo += (parity[i] - lo) % 2
            step = 2
        else:
            step = 1
        ci, bi = c[i], b[i]
        for xi in range(lo, hi + 1, step):
            z = bi * xi + s
            q = ci * z * z
            if exact is None and q + used > delta * bound():
                continue
            x[i] = xi
            if i == 0:
                if half and zero_above and xi == 0:
                    continue
                emit(x, q + used)
            else:
                level(i - 1, used + q, zero_above and xi == 0)
        x[i] = 0

    level(n - 1, 0, True)


def _canonical(v: Sequence[int]) -> Tuple[int, ...]:
    v = tuple(v)
    w = tuple(-c for c in v)
    return min(v, w)


def _reduced_frame(L: Lattice):
    if not L.is_positive_definite:
        raise LatticeError("enumeration requires a positive definite lattice")
    g, t = pair_reduce(L.gram)
    return g, t


def _back(y: Sequence[int], t: Sequence[Sequence[int]]) -> List[int]:
    return intlin.vec_mat(y, t)


def raw_vectors_of_norm(gram: Sequence[Sequence[int]], N: int) -> List[Tuple[int, ...]]:
    """Vectors of norm exactly N for an already reduced Gram (one per +-pair)."""
    fac = _Factor(gram)
    out = []
    _search(fac, lambda: N, lambda x, q: out.append(tuple(x)), exact=N)
    return out


@dataclass(frozen=True)
class NormSlice:
    lattice: Lattice
    norm: int
    vectors: Tuple[LatticeVector, ...]

    def __len__(self):
        return len(self.vectors)

    def coords(self) -> List[Tuple[int, ...]]:
        return [v.coords for v in self.vectors]


def vectors_of_norm(L: Lattice, N: int) -> NormSlice:
    """All vectors of norm N, one representative (the lexicographically smaller) per +-pair."""
    if N <= 0:
        raise LatticeError("norm must be positive")
    g, t = _reduced_frame(L)
    found = [_canonical(_back(y, t)) for y in raw_vectors_of_norm(g, N)]
    found.sort()
    return NormSlice(L, N, tuple(LatticeVector(v, L) for v in found))


def short_vectors(L: Lattice, bound: int) -> Dict[int, List[Tuple[int, ...]]]:
    """Map norm -> sorted representatives, for all nonzero vectors of norm <= bound."""
    g, t = _reduced_frame(L)
    fac = _Factor(g)
    out: Dict[int, List[Tuple[int, ...]]] = {}

    def emit(x, q):
        out.setdefault(q // fac.delta, []).append(_canonical(_back(x, t)))

    _search(fac, lambda: bound, emit)
    for k in out:
        out[k].sort()
    return dict(sorted(out.items()))


def norm_counts(L: Lattice, bound: int) -> Tuple[int, ...]:
    """Number of +-pairs of each norm 1..bound."""
    if L.rank == 0:
        return (0,) * bound
    sv = short_vectors(L, bound)
    return tuple(len(sv.get(k, ())) for k in range(1, bound + 1))


def vectors_in_sublattice(L: Lattice, basis: Sequence[Sequence[int]], N: int) -> List[Tuple[int, ...]]:
    """Vectors of norm N lying in the full-rank sublattice spanned by `basis`, in L-coordinates."""
    sub = L.sublattice(basis)
    g, t = pair_reduce(sub.gram)
    frame = intlin.matmul(t, basis)
    return sorted(_canonical(_back(y, frame)) for y in raw_vectors_of_norm(g, N))


# ---------------------------------------------------------------- unit splitting

def is_even(L: Lattice) -> bool:
    return L.is_even


def reduced_part(L: Lattice) -> Tuple[int, Lattice]:
    """Split L = L' + <1>^k; returns (k, L') with L' free of norm-1 vectors.

    Norm-1 vectors of a positive definite lattice are pairwise orthogonal up to
    sign, so all of them are split off in one complement.
    """
    if L.rank == 0:
        return 0, L
    units = vectors_of_norm(L, 1).coords()
    if not units:
        return 0, reduce_lattice(L)[0]
    comp, _ = orthogonal_complement(L, units)
    if comp.rank:
        comp = reduce_lattice(comp)[0]
    return len(units), comp


# ---------------------------------------------------------------- characteristic covectors

def solve_mod2(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[List[int]]:
    """Solve rows . x = rhs over the field with two elements; None if inconsistent."""
    n = len(rows[0]) if rows else 0
    eqs = []
    for r, v in zip(rows, rhs):
        mask = 0
        for j, x in enumerate(r):
            if x & 1:
                mask |= 1 << j
        eqs.append((mask, v & 1))
    pivots = []
    for col in range(n):
        bit = 1 << col
        k = next((i for i in range(len(pivots), len(eqs)) if eqs[i][0] & bit), None)
        if k is None:
            continue
        r = len(pivots)
        eqs[r], eqs[k] = eqs[k], eqs[r]
        pm, pv = eqs[r]
        for i in range(len(eqs)):
            if i != r and eqs[i][0] & bit:
                eqs[i] = (eqs[i][0] ^ pm, eqs[i][1] ^ pv)
        pivots.append(col)
    for m, v in eqs[len(pivots):]:
        if m == 0 and v:
            return None
    x = [0] * n
    for r, col in enumerate(pivots):
        x[col] = eqs[r][1]
    return x


@dataclass(frozen=True)
class CharCoset:
    """The characteristic covectors of a lattice: base + 2 L*."""

    lattice: Lattice
    base: Covector

    def contains(self, xi: Covector) -> bool:
        g = self.lattice.gram
        for p, i in zip(xi.pairings, range(len(g))):
            if p.denominator != 1 or (p.numerator - g[i][i]) % 2:
                return False
        return True

    def parity(self) -> List[int]:
        """Pairing residues mod 2 shared by every element."""
        return [self.lattice.gram[i][i] % 2 for i in range(self.lattice.rank)]


def char_coset(L: Lattice) -> CharCoset:
    g = L.gram
    if L.rank and L.det == 0:
        raise LatticeError("lattice is degenerate")
    c = solve_mod2(g, [g[i][i] for i in range(L.rank)])
    assert c is not None, "diagonal of a symmetric matrix lies in its image mod 2"
    return CharCoset(L, Covector(tuple(c), L))


def min_char_square(L: Lattice) -> Tuple[Fraction, Tuple[Fraction, ...]]:
    """Minimal square of a characteristic covector, and the pairing vector of a minimizer.

    A covector with integer pairing vector p has square p^T adj(G) p / det(G); it is
    characteristic iff p_i = G_ii (mod 2).  The search runs over p in that coset with
    the Gram matrix adj(G), shrinking the bound to the best value seen so far.
    """
    n = L.rank
    if n == 0:
        return Fraction(0), ()
    if not L.is_positive_definite:
        raise LatticeError("delta requires a positive definite lattice")
    det = L.det
    adj = intlin.adjugate(L.gram)
    ared, t = pair_reduce(adj)
    # p = p' . t, so p' must satisfy p' . t = parity (mod 2)
    target = [L.gram[i][i] % 2 for i in range(n)]
    tinv = intlin.integer_inverse(t)
    par = [x % 2 for x in intlin.vec_mat(target, tinv)]
    fac = _Factor(ared)
    start = sum(par[i] * sum(ared[i][j] * par[j] for j in range(n)) for i in range(n))
    best = {"q": start, "p": list(par)}

    def emit(x, q):
        val = q // fac.delta
        if val < best["q"]:
            p = intlin.vec_mat(x, t)
            assert all((p[i] - L.gram[i][i]) % 2 == 0 for i in range(n))
            best["q"] = val
            best["p"] = list(x)

    _search(fac, lambda: best["q"], emit, parity=par, half=False)
    p = intlin.vec_mat(best["p"], t)
    return Fraction(best["q"], det), tuple(Fraction(v) for v in p)


def delta_lattice(L: Lattice) -> Fraction:
    """rank(L) minus the minimal square of a characteristic covector."""
    m, _ = min_char_square(L)
    return L.rank - m
