"""Inductive search for reduced fillings of integer surgeries.

Row n is produced from row n-1: for each reduced lattice M' in the previous
row and each vector v of M = M' + <1>^p with v.v = n(n-1) whose pairings with M
have gcd n-1, the complement of v is split into its reduced part and kept if
its determinant is n and its delta does not exceed that of the surgery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import intlin
from .classify import invariants, is_isomorphic, recognize
from .enumeration import delta_lattice, reduced_part, vectors_in_sublattice
from .floer import KnotSpec, delta_Y
from .lattice import Lattice, LatticeVector, diag, direct_sum, pairing_gcd

DEFAULT_PADDING = 2

SURVIVED_DELTA = "survived-delta"
SURVIVED_ROKHLIN = "survived-rokhlin"
NEEDS_UNIT_PADDING = "needs-unit-padding"

EXCLUDED_BARE = "excluded-bare"
UNCONSTRAINED = "unconstrained"


@dataclass
class FillingEntry:
    lattice: Lattice
    flags: FrozenSet[str]
    delta: Fraction
    rokhlin_audit: str = UNCONSTRAINED
    sources: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)
    _name: Optional[str] = None

    @property
    def name(self) -> str:
        if self._name is None:
            nm = recognize(self.lattice)
            self._name = str(nm) if nm is not None else "unnamed"
        return self._name

    def pretty(self) -> str:
        nm = recognize(self.lattice)
        return nm.pretty() if nm is not None else "unnamed"


@dataclass
class FillingTable:
    spec: KnotSpec
    rows: Dict[int, List[FillingEntry]] = field(default_factory=dict)
    padding: int = DEFAULT_PADDING

    def lattices(self, n: int) -> List[Lattice]:
        return [e.lattice for e in self.rows[n]]


# ---------------------------------------------------------------- candidates

def unit_patterns(n: int, padding: int) -> List[Tuple[int, ...]]:
    """Unit-coordinate parts b (sorted, non-negative) with (n-1)^2 b.b <= n(n-1)."""
    out = []
    for support in range(0, padding + 1):
        for combo in combinations_with_replacement(range(1, n + 1), support):
            b = tuple(sorted(combo, reverse=True)) + (0,) * (padding - support)
            if (n - 1) * sum(c * c for c in b) <= n:
                out.append(b)
    return sorted(set(out))


def divisible_sublattice(M: Lattice, m: int) -> List[List[int]]:
    """HNF basis of {x in M : x.w = 0 (mod m) for all w in M}."""
    r = M.rank
    if m == 1:
        return [[int(i == j) for j in range(r)] for i in range(r)]
    forms = [list(M.gram[i]) + [-m if j == i else 0 for j in range(r)] for i in range(r)]
    ker = intlin.kernel_basis(forms, 2 * r)
    return intlin.hnf([row[:r] for row in ker])


def candidate_vectors(M: Lattice, n: int, padding: int = DEFAULT_PADDING) -> List[LatticeVector]:
    """Vectors v = (x, (n-1) b) of M + <1>^padding with v.v = n(n-1) and pairing gcd n-1.

    One vector is kept per orbit under sign changes of x and under permutations
    and sign changes of the unit coordinates.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    m = n - 1
    target = n * m
    ambient = direct_sum(M, diag(*([1] * padding))) if padding else M
    sub = divisible_sublattice(M, m) if M.rank else []
    out = []
    for b in unit_patterns(n, padding):
        y = tuple(m * c for c in b)
        rest = target - sum(c * c for c in y)
        if rest < 0:
            continue
        if rest == 0:
            xs = [(0,) * M.rank]
        elif M.rank == 0:
            xs = []
        else:
            xs = vectors_in_sublattice(M, sub, rest)
        for x in xs:
            v = tuple(x) + y
            if not any(v):
                continue
            if pairing_gcd(ambient, v) != m:
                continue
            out.append(LatticeVector(v, ambient))
    return out


# ---------------------------------------------------------------- Rokhlin

def rokhlin_obstruction(L: Lattice, n: int) -> str:
    """Mod-8 test for a bare even filling.

    Gluing an even filling L of rank r onto the surgery trace produces a closed
    form of signature 1 - r.  When that signature is not divisible by 16 the
    closed form cannot be even, so the surgery vector must be characteristic,
    which forces n = 1 - r (mod 8).  If that fails, L can occur only with at
    least one extra unit summand.
    """
    if not L.is_even:
        return UNCONSTRAINED
    r = L.rank
    sig = 1 - r
    if sig % 16 == 0:
        return UNCONSTRAINED
    if (n - sig) % 8 == 0:
        return UNCONSTRAINED
    return EXCLUDED_BARE


def rokhlin_flag_applies(L: Lattice, n: int) -> bool:
    """The pipeline flag is set only in the proven instance: n = 2, even, rank 9."""
    return n == 2 and L.is_even and L.rank == 9 and rokhlin_obstruction(L, n) == EXCLUDED_BARE


# ---------------------------------------------------------------- pipeline

def _entry(L: Lattice, n: int, d: Fraction, source=None) -> FillingEntry:
    flags = {SURVIVED_DELTA, SURVIVED_ROKHLIN}
    if rokhlin_flag_applies(L, n):
        flags.add(NEEDS_UNIT_PADDING)
    e = FillingEntry(L, frozenset(flags), d, rokhlin_obstruction(L, n))
    if source:
        e.sources.append(source)
    return e


def _merge(entries: List[FillingEntry]) -> List[FillingEntry]:
    buckets: Dict[Tuple, List[FillingEntry]] = {}
    for e in entries:
        key = invariants(e.lattice)
        group = buckets.setdefault(key, [])
        for kept in group:
            if is_isomorphic(kept.lattice, e.lattice):
                kept.sources.extend(e.sources)
                if e.lattice.gram < kept.lattice.gram:
                    kept.lattice = e.lattice
                break
        else:
            group.append(e)
    merged = [e for group in buckets.values() for e in group]
    merged.sort(key=lambda e: (-e.lattice.rank, e.lattice.gram))
    return merged


def step_candidates(spec: KnotSpec, n: int, prev_row: Sequence[Lattice], padding: int = DEFAULT_PADDING):
    """Every reduced complement with |det| = n, before the delta filter.

    Yields (reduced lattice, parent index, vector).
    """
    for idx, M in enumerate(prev_row):
        for v in candidate_vectors(M, n, padding):
            comp = _complement(v)
            _, red = reduced_part(comp)
            if abs(red.det) != n:
                continue
            yield red, idx, v.coords


def _complement(v: LatticeVector) -> Lattice:
    from .lattice import complement
    return complement(v.parent, v.coords)


def step(spec: KnotSpec, n: int, prev_row: Sequence[Lattice], padding: int = DEFAULT_PADDING,
         dy: Optional[Fraction] = None) -> List[FillingEntry]:
    if dy is None:
        dy = delta_Y(spec, n)
    kept = []
    seen_delta: Dict[Tuple, Fraction] = {}
    for red, idx, v in step_candidates(spec, n, prev_row, padding):
        key = red.gram
        if key not in seen_delta:
            seen_delta[key] = delta_lattice(red)
        d = seen_delta[key]
        if d > dy:
            continue
        kept.append(_entry(red, n, d, (str(idx), v)))
    return _merge(kept)


def classify_fillings(spec: KnotSpec, n_max: int, padding: int = DEFAULT_PADDING) -> FillingTable:
    if n_max < 1 or n_max > 16:
        raise ValueError("n_max must lie in 1..16")
    table = FillingTable(spec, padding=padding)
    d1 = delta_Y(spec, 1)
    row = []
    for L in spec.base_fillings:
        d = delta_lattice(L)
        if d <= d1:
            row.append(_entry(L, 1, d))
    table.rows[1] = _merge(row)
    for n in range(2, n_max + 1):
        table.rows[n] = step(spec, n, table.lattices(n - 1), padding)
    return table


def padding_is_sufficient(table: FillingTable, extra: int = 1) -> bool:
    """Re-run each step with more unit coordinates and check nothing new appears."""
    for n in range(2, max(table.rows) + 1):
        wider = step(table.spec, n, table.lattices(n - 1), table.padding + extra)
        if len(wider) != len(table.rows[n]):
            return False
        for e in wider:
            if not any(is_isomorphic(e.lattice, f.lattice) for f in table.rows[n]):
                return False
    return True
