"""Integral lattices given by Gram matrices.

A :class:`Lattice` is an immutable symmetric integer Gram matrix with an
optional display name.  Vectors are integer coordinate tuples with respect to
the lattice basis; covectors (elements of the dual) are rational coordinate
tuples in the same basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

from . import intlin

Gram = Tuple[Tuple[int, ...], ...]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Lattice:
    gram: Gram
    name: Optional[str] = None

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        for i, row in enumerate(g):
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
            for j in range(i):
                if row[j] != g[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], name: Optional[str] = None) -> "Lattice":
        return cls(tuple(tuple(r) for r in rows), name)

    @classmethod
    def empty(cls) -> "Lattice":
        return cls((), None)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return intlin.bareiss_det(self.gram)

    @cached_property
    def signature(self) -> Tuple[int, int, int]:
        """(positive, negative, zero) counts of the diagonalized form."""
        return _signature(self.gram)

    @property
    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0, 0)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        return LatticeVector(tuple(coords), self)

    def basis_vector(self, i: int) -> "LatticeVector":
        return LatticeVector(tuple(int(j == i) for j in range(self.rank)), self)

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        g = self.gram
        return sum(u[i] * sum(g[i][j] * v[j] for j in range(len(v))) for i in range(len(u)) if u[i])

    def norm(self, v: Sequence[int]) -> int:
        return self.dot(v, v)

    def pairings(self, v: Sequence[int]) -> list:
        return intlin.mat_vec(self.gram, v)

    def sublattice(self, basis: Sequence[Sequence[int]], name: Optional[str] = None) -> "Lattice":
        return Lattice.from_rows(intlin.congruent(basis, self.gram), name)

    def renamed(self, name: Optional[str]) -> "Lattice":
        return Lattice(self.gram, name)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<Lattice{tag} rank={self.rank} det={self.det}>"


@dataclass(frozen=True)
class LatticeVector:
    coords: Tuple[int, ...]
    parent: Lattice = field(repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        if len(self.coords) != self.parent.rank:
            raise LatticeError(f"expected {self.parent.rank} coordinates, got {len(self.coords)}")

    @property
    def norm(self) -> int:
        return self.parent.norm(self.coords)

    def dot(self, other: Union["LatticeVector", Sequence[int]]) -> int:
        c = other.coords if isinstance(other, LatticeVector) else other
        return self.parent.dot(self.coords, c)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __neg__(self):
        return LatticeVector(tuple(-c for c in self.coords), self.parent)


@dataclass(frozen=True)
class Covector:
    """Element of L (x) Q, stored by rational coordinates in the basis of L."""

    coords: Tuple[Fraction, ...]
    parent: Lattice = field(repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if len(self.coords) != self.parent.rank:
            raise LatticeError("covector length does not match lattice rank")

    @classmethod
    def from_pairings(cls, lattice: Lattice, pairings: Sequence[int]) -> "Covector":
        """The covector whose pairing with basis vector i is pairings[i]."""
        if lattice.rank == 0:
            return cls((), lattice)
        return cls(tuple(intlin.solve_rational(lattice.gram, pairings)), lattice)

    @property
    def pairings(self) -> Tuple[Fraction, ...]:
        g = self.parent.gram
        return tuple(sum((g[i][j] * self.coords[j] for j in range(len(g))), Fraction(0)) for i in range(len(g)))

    def in_dual(self) -> bool:
        return all(p.denominator == 1 for p in self.pairings)

    @property
    def square(self) -> Fraction:
        return sum((c * p for c, p in zip(self.coords, self.pairings)), Fraction(0))


def _signature(gram: Gram) -> Tuple[int, int, int]:
    # congruence diagonalization over Q; zero pivots are repaired by symmetric moves
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = zero = 0
    while a:
        n = len(a)
        if a[0][0] == 0:
            k = next((i for i in range(1, n) if a[i][i] != 0), None)
            if k is not None:
                a[0], a[k] = a[k], a[0]
                for row in a:
                    row[0], row[k] = row[k], row[0]
            else:
                k = next((j for j in range(1, n) if a[0][j] != 0), None)
                if k is None:
                    zero += 1
                    a = [row[1:] for row in a[1:]]
                    continue
                # e0 <- e0 + ek makes the (0,0) entry 2*a[0][k] != 0
                a[0] = [x + y for x, y in zip(a[0], a[k])]
                for row in a:
                    row[0] += row[k]
        p = a[0][0]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = []
        for i in range(1, n):
            f = a[i][0] / p
            rest.append([a[i][j] - f * a[0][j] for j in range(1, n)])
        a = rest
    return pos, neg, zero


def _coords(v) -> Tuple[int, ...]:
    return v.coords if isinstance(v, LatticeVector) else tuple(v)


def det(L: Lattice) -> int:
    """Signed determinant of the Gram matrix (1 for the empty lattice)."""
    return L.det


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(L.rank for L in lattices)
    rows = []
    off = 0
    for L in lattices:
        for row in L.gram:
            rows.append((0,) * off + row + (0,) * (n - off - L.rank))
        off += L.rank
    names = [L.name for L in lattices if L.rank]
    name = "+".join(names) if names and all(names) else None
    return Lattice(tuple(rows), name)


def negate(L: Lattice) -> Lattice:
    return Lattice(tuple(tuple(-x for x in row) for row in L.gram))


def pairing_gcd(L: Lattice, v) -> int:
    """gcd of v . w over all w in L (the content of gram . v)."""
    c = _coords(v)
    if not any(c):
        raise LatticeError("zero vector")
    return intlin.content(L.pairings(c))


def complement_basis(L: Lattice, vectors: Sequence) -> list:
    """HNF basis (coordinates in L) of the sublattice orthogonal to all `vectors`."""
    forms = [L.pairings(_coords(v)) for v in vectors]
    return intlin.kernel_basis(forms, L.rank)


def complement(L: Lattice, v) -> Lattice:
    """The sublattice {w in L : w . v = 0} with the Gram matrix of its HNF basis."""
    c = _coords(v)
    if not any(c):
        raise LatticeError("zero vector has no proper orthogonal complement")
    if len(c) != L.rank:
        raise LatticeError("vector length does not match lattice rank")
    return L.sublattice(complement_basis(L, [c]))


def orthogonal_complement(L: Lattice, vectors: Sequence) -> Tuple[Lattice, list]:
    """Complement of a set of vectors; returns the lattice and its basis in L-coordinates."""
    basis = complement_basis(L, vectors)
    return L.sublattice(basis), basis


def change_basis(L: Lattice, transform: Sequence[Sequence[int]]) -> Lattice:
    """Gram matrix in the basis given by the rows of a unimodular `transform`."""
    if abs(intlin.bareiss_det(transform)) != 1:
        raise LatticeError("change of basis must be unimodular")
    return L.sublattice(transform)


def diag(*entries: int) -> Lattice:
    n = len(entries)
    return Lattice(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)))


def unimodular_lattice_I(a: int, b: int) -> Lattice:
    """I_{a,b}: a basis vectors of square +1 followed by b of square -1."""
    return diag(*([1] * a + [-1] * b)).renamed(f"I({a},{b})")


def gram_equal_up_to(L1: Lattice, L2: Lattice, witness: Sequence[Sequence[int]]) -> bool:
    """Check witness . gram2 . witness^T == gram1 exactly."""
    return tuple(map(tuple, intlin.congruent(witness, L2.gram))) == L1.gram


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0
