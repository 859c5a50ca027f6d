"""Recognition and comparison of positive definite lattices.

Isomorphism is decided by backtracking: the images of a reduced basis of the
first lattice are chosen among vectors of the second lattice with matching
norms, subject to every inner product agreeing.  Cheap invariants are
compared first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import intlin
from .enumeration import norm_counts, pair_reduce, reduced_part, short_basis, short_vectors, vectors_of_norm
from .lattice import Lattice, LatticeError, complement
from .names import LatticeName, make

MAX_RANK = 17


class RankGuardError(LatticeError):
    """Raised when an input exceeds the rank the exact search is designed for."""


def _guard(L: Lattice):
    if L.rank > MAX_RANK:
        raise RankGuardError(f"rank {L.rank} exceeds the supported maximum of {MAX_RANK}")


# ---------------------------------------------------------------- invariants

@lru_cache(maxsize=4096)
def _invariants(gram) -> Tuple:
    L = Lattice(gram)
    return (L.rank, L.det, L.is_even, norm_counts(L, 4) if L.rank else ())


def invariants(L: Lattice) -> Tuple:
    """(rank, det, even, counts of +-pairs of norm 1..4); equal for isomorphic lattices."""
    return _invariants(L.gram)


# ---------------------------------------------------------------- roots

@dataclass(frozen=True)
class RootDecomposition:
    components: Tuple[Tuple[str, int], ...]
    covered_rank: int

    def __str__(self):
        if not self.components:
            return "empty"
        return "+".join(f"{k}{n}" for k, n in self.components)

    def as_name(self) -> LatticeName:
        return LatticeName(tuple((k, (n,)) for k, n in self.components))


_POSITIVE_ROOTS = {"A": lambda n: n * (n + 1) // 2, "D": lambda n: n * (n - 1),
                   "E": lambda n: {6: 36, 7: 63, 8: 120}[n]}


def _root_order(c: Tuple[str, int]):
    return ("EDA".index(c[0]), -c[1])


def simple_roots(L: Lattice) -> Tuple[List[Tuple[int, ...]], int]:
    """A simple system for the roots (norm-2 vectors) of L, and the number of positive roots."""
    roots = vectors_of_norm(L, 2).coords() if L.rank else []
    if not roots:
        return [], 0
    big = 2 * max(abs(c) for r in roots for c in r) + 1
    weights = [big ** i for i in range(L.rank)]
    pos = []
    for r in roots:
        f = sum(w * c for w, c in zip(weights, r))
        pos.append(r if f > 0 else tuple(-c for c in r))
    posset = set(pos)
    simple = []
    for r in pos:
        if not any(tuple(a - b for a, b in zip(r, s)) in posset for s in pos if s != r):
            simple.append(r)
    simple.sort()
    return simple, len(pos)


def _dynkin_type(nodes: List[int], adj: Dict[int, List[int]]) -> Tuple[str, int]:
    n = len(nodes)
    degs = [len(adj[v]) for v in nodes]
    if max(degs, default=0) <= 2:
        return ("A", n)
    branch = [v for v in nodes if len(adj[v]) == 3]
    if len(branch) != 1 or max(degs) > 3:
        raise LatticeError("root graph is not of ADE type")
    b = branch[0]
    legs = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return ("D", n)
    if legs[0] == 1 and legs[1] == 2 and legs[2] in (2, 3, 4):
        return ("E", n)
    raise LatticeError(f"root graph with legs {legs} is not of ADE type")


def root_decomposition(L: Lattice) -> RootDecomposition:
    """ADE type of the root sublattice of the reduced part of L."""
    _guard(L)
    _, red = reduced_part(L)
    simple, npos = simple_roots(red)
    m = len(simple)
    adj: Dict[int, List[int]] = {i: [] for i in range(m)}
    for i in range(m):
        for j in range(i + 1, m):
            p = red.dot(simple[i], simple[j])
            if p % 2:
                adj[i].append(j)
                adj[j].append(i)
    seen = set()
    comps = []
    for i in range(m):
        if i in seen:
            continue
        stack, part = [i], []
        seen.add(i)
        while stack:
            v = stack.pop()
            part.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_dynkin_type(part, adj))
    comps.sort(key=_root_order)
    expected = sum(_POSITIVE_ROOTS[k](n) for k, n in comps)
    if expected != npos:
        raise LatticeError("root count does not match the detected ADE type")
    return RootDecomposition(tuple(comps), m)


# ---------------------------------------------------------------- isomorphism

@dataclass
class IsometryResult:
    isomorphic: bool
    witness: Optional[List[List[int]]] = None
    reason: str = ""

    def __bool__(self):
        return self.isomorphic


@lru_cache(maxsize=256)
def _short_frame(gram, bound: int):
    """All nonzero vectors of norm <= bound (both signs) with their pairing rows."""
    sv = short_vectors(Lattice(gram), bound)
    reps = [v for k in sorted(sv) for v in sv[k]]
    if not reps:
        return None
    vecs = np.array(reps + [tuple(-c for c in r) for r in reps], dtype=np.int64)
    pair = vecs @ np.array(gram, dtype=np.int64)
    norms = np.einsum("ij,ij->i", pair, vecs)
    return vecs, pair, norms


def _fingerprints(pair: np.ndarray, frame, bound: int) -> np.ndarray:
    """Per-vector counts of short vectors of each norm at each |inner product|.

    Isometries preserve these counts, so a basis vector can only map to a vector
    with the same row.
    """
    svecs, _, snorms = frame
    prods = np.abs(pair @ svecs.T)
    cols = []
    for k in range(1, bound + 1):
        sel = snorms == k
        if not sel.any():
            continue
        sub = prods[:, sel]
        for val in range(0, k + 1):
            cols.append((sub == val).sum(axis=1))
    return np.stack(cols, axis=1) if cols else np.zeros((len(pair), 0), dtype=np.int64)


def _find_isometry(g1, g2) -> Optional[List[List[int]]]:
    """Rows X with X g2 X^T == g1, both arguments reduced positive definite Grams."""
    n = len(g1)
    if n == 0:
        return []
    key1 = tuple(map(tuple, g1))
    key2 = tuple(map(tuple, g2))
    bound = max(g1[i][i] for i in range(n))
    f1 = _short_frame(key1, bound)
    f2 = _short_frame(key2, bound)
    if f1 is None or f2 is None or len(f1[0]) != len(f2[0]):
        return None
    basis_fp = _fingerprints(np.array(g1, dtype=np.int64), f1, bound)
    all_fp = _fingerprints(f2[1], f2, bound)
    vecs2, pair2, norms2 = f2
    pools = []
    for i in range(n):
        sel = (norms2 == g1[i][i]) & (all_fp == basis_fp[i]).all(axis=1)
        idx = np.nonzero(sel)[0]
        if len(idx) == 0:
            return None
        pools.append(idx)
    # start from the longest vector (glue rather than roots), then keep the
    # order connected, preferring small candidate pools
    order: List[int] = []
    left = set(range(n))
    while left:
        if not order:
            nxt = min(left, key=lambda i: (-g1[i][i], len(pools[i]), i))
        else:
            nxt = min(left, key=lambda i: (-sum(1 for j in order if g1[i][j]), len(pools[i]), i))
        order.append(nxt)
        left.remove(nxt)
    images: List[np.ndarray] = []

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        idx = pools[i]
        mask = np.ones(len(idx), dtype=bool)
        sub = pair2[idx]
        for pos in range(k):
            mask &= (sub @ images[pos]) == g1[i][order[pos]]
            if not mask.any():
                return False
        for j in idx[mask]:
            images.append(vecs2[j])
            if extend(k + 1):
                return True
            images.pop()
        return False

    if not extend(0):
        return None
    x = [None] * n
    for pos, i in enumerate(order):
        x[i] = [int(c) for c in images[pos]]
    return x


def is_isomorphic(L1: Lattice, L2: Lattice) -> IsometryResult:
    """Decide whether L1 and L2 are isometric.

    On success the witness W is an integer matrix with W . gram2 . W^T == gram1;
    its rows express the images of the basis of L1 in the basis of L2.
    """
    _guard(L1)
    _guard(L2)
    if not (L1.is_positive_definite and L2.is_positive_definite):
        raise LatticeError("isomorphism testing requires positive definite lattices")
    if L1.rank != L2.rank:
        return IsometryResult(False, reason="rank")
    if L1.det != L2.det:
        return IsometryResult(False, reason="det")
    if L1.is_even != L2.is_even:
        return IsometryResult(False, reason="parity")
    if L1.gram == L2.gram:
        return IsometryResult(True, [[int(i == j) for j in range(L1.rank)] for i in range(L1.rank)])
    if invariants(L1) != invariants(L2):
        return IsometryResult(False, reason="norm counts")
    g1, t1 = short_basis(L1.gram)
    g2, t2 = short_basis(L2.gram)
    x = _find_isometry(g1, g2)
    if x is None:
        return IsometryResult(False, reason="no isometry")
    w = intlin.matmul(intlin.matmul(intlin.integer_inverse(t1), x), t2)
    assert intlin.congruent(w, L2.gram) == [list(r) for r in L1.gram]
    assert abs(intlin.bareiss_det(w)) == 1
    return IsometryResult(True, w)


# ---------------------------------------------------------------- decomposition

def _component_lists(pairs: np.ndarray, n: int) -> List[List[int]]:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    ii, jj = np.nonzero(pairs)
    for a, b in zip(ii.tolist(), jj.tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: Dict[int, List[int]] = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def orthogonal_summands(L: Lattice) -> List[Tuple[Lattice, List[List[int]]]]:
    """Split a positive definite lattice into indecomposable orthogonal summands.

    A vector x is indecomposable when no y has 0 < y.y < x.x and x.y = y.y.
    Indecomposable vectors up to the largest norm of a reduced basis generate L,
    and the connected components of their non-orthogonality graph span the
    summands.  Returns each summand with its basis in L-coordinates.
    """
    _guard(L)
    if L.rank == 0:
        return []
    g, t = pair_reduce(L.gram)
    R = Lattice.from_rows(g)
    bound = max(g[i][i] for i in range(R.rank))
    sv = short_vectors(R, bound)
    reps = [v for k in sorted(sv) for v in sv[k]]
    V = np.array(reps, dtype=np.int64)
    G = np.array(g, dtype=np.int64)
    P = V @ G @ V.T
    norms = np.diag(P)
    # y decomposes x iff x.y = y.y (with y.y < x.x); test both signs of y via |x.y|
    dec = (np.abs(P) == norms[None, :]) & (norms[None, :] < norms[:, None])
    keep = ~dec.any(axis=1)
    idx = np.nonzero(keep)[0]
    Vk = V[idx]
    Pk = P[np.ix_(idx, idx)]
    parts = []
    for comp in _component_lists(Pk != 0, len(idx)):
        rows = intlin.hnf([[int(c) for c in Vk[i]] for i in comp])
        basis = intlin.matmul(rows, t)
        sub = L.sublattice(basis)
        gr, tr = pair_reduce(sub.gram)
        parts.append((Lattice.from_rows(gr), intlin.matmul(tr, basis)))
    parts.sort(key=lambda p: (-p[0].rank, p[0].det, p[0].gram))
    assert sum(p[0].rank for p in parts) == L.rank
    return parts


def _catalog() -> Dict[Tuple[int, int, bool], List[Tuple[str, Lattice]]]:
    names = [f"A{n}" for n in range(1, 18)] + [f"D{n}" for n in range(4, 18)] + ["E6", "E7", "E8", "Gamma12"]
    names += [f"C{n}" for n in range(2, 9)] + ["Lambda(3,2,2,2)", "Lambda(3,4)", "Lambda(2,4)", "Lambda(2,3)"]
    cat: Dict[Tuple[int, int, bool], List[Tuple[str, Lattice]]] = {}
    for nm in names:
        L = make(nm)
        cat.setdefault((L.rank, L.det, L.is_even), []).append((nm, L))
    return cat


_CATALOG = None


def _lookup(L: Lattice) -> Optional[LatticeName]:
    global _CATALOG
    if L.rank == 1:
        return LatticeName((("diag", (L.gram[0][0],)),))
    if L.rank == 2:
        g, _ = pair_reduce(L.gram)
        if abs(g[0][1]) == 1:
            a, b = g[0][0], g[1][1]
            if a == b == 2:
                return LatticeName.parse("A2")
            return LatticeName((("Lambda", (a, b)),))
    if _CATALOG is None:
        _CATALOG = _catalog()
    for nm, M in _CATALOG.get((L.rank, L.det, L.is_even), []):
        if is_isomorphic(L, M):
            return LatticeName.parse(nm)
    return None


def recognize(L: Lattice) -> Optional[LatticeName]:
    """Name L as a sum of catalog lattices, or None if some summand is unknown."""
    _guard(L)
    if not L.is_positive_definite:
        raise LatticeError("recognition requires a positive definite lattice")
    k, red = reduced_part(L)
    named = []
    diag_entries = []
    for part, _ in orthogonal_summands(red):
        nm = _lookup(part)
        if nm is None:
            return None
        kind, p = nm.terms[0]
        if kind == "diag":
            diag_entries.append(p[0])
        else:
            named.append(nm.terms[0])
    named.sort(key=_term_order)
    diag_entries.sort(reverse=True)
    diag_entries += [1] * k
    terms = list(named)
    if diag_entries:
        terms.append(("diag", tuple(diag_entries)))
    return LatticeName(tuple(terms))


def _term_order(t):
    kind, p = t
    rank = {"E": 0, "Gamma12": 1, "C": 2, "D": 3, "A": 4, "Lambda": 5}
    return (rank.get(kind, 9), -sum(p) if kind != "C" else p[0], p)


# ---------------------------------------------------------------- extension sweeps

@dataclass
class SweepResult:
    lattice: Lattice
    norm: int
    det: int
    total: int
    hits: List[Tuple[Tuple[int, ...], Lattice]]
    classes: List[Lattice]


def complement_sweep(L: Lattice, norm: int, det: int) -> SweepResult:
    """All v in L (up to sign) with v.v = norm and |det(v^perp)| = det, grouped by isometry class.

    Every vector of the given norm is enumerated.  Since
    |det(v^perp)| * gcd(v.L)^2 = v.v * |det L|, only vectors whose pairing gcd
    squares to norm * |det L| / det can qualify; the complement is computed for
    those and its determinant checked directly.
    """
    _guard(L)
    vs = vectors_of_norm(L, norm).coords()
    total = len(vs)
    num = norm * abs(L.det)
    hits = []
    if vs and num % det == 0:
        want = num // det
        P = np.array(vs, dtype=np.int64) @ np.array(L.gram, dtype=np.int64)
        g = np.gcd.reduce(np.abs(P), axis=1)
        for i in np.nonzero(g * g == want)[0]:
            C = complement(L, vs[i])
            if abs(C.det) == det:
                hits.append((tuple(vs[i]), C))
    classes: List[Lattice] = []
    for _, C in hits:
        if not any(invariants(c) == invariants(C) and is_isomorphic(c, C) for c in classes):
            classes.append(C)
    return SweepResult(L, norm, det, total, hits, classes)


# ---------------------------------------------------------------- static table

@lru_cache(maxsize=1)
def low_rank_table() -> List[dict]:
    """Rows of the static low-rank lattice table (display annotations only)."""
    text = resources.files("latfill").joinpath("data/cs_table.json").read_text()
    return json.loads(text)["rows"]


def table_annotation(L: Lattice) -> List[str]:
    """Table entries sharing rank and |det| with L (display only)."""
    key = (L.rank, abs(L.det))
    for row in low_rank_table():
        if (row["rank"], row["det"]) == key:
            return list(row["lattices"])
    return []
