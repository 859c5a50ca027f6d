"""Lattice names: parsing, formatting and the built-in constructors.

Grammar: terms joined by ``+``.  A term is one of ``A<n>``, ``D<n>``, ``E<n>``,
``T<n>``, ``C<n>``, ``Gamma12``, ``diag(a,b,...)``, ``Lambda(a,b,...)``,
``I(a,b)`` or ``empty``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from . import intlin
from .lattice import Lattice, LatticeError, diag, direct_sum, unimodular_lattice_I

Term = Tuple[str, Tuple[int, ...]]

_TERM = re.compile(r"^(?:(A|D|E|T|C)(\d+)|(Gamma12)|(diag|Lambda|I)\(([-\d,\s]+)\)|(empty))$")

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class NameError_(LatticeError):
    pass


@dataclass(frozen=True)
class LatticeName:
    terms: Tuple[Term, ...]

    @classmethod
    def parse(cls, text: str) -> "LatticeName":
        text = text.strip()
        if not text:
            raise NameError_("empty lattice name")
        terms: List[Term] = []
        for raw in _split_sum(text):
            m = _TERM.match(raw.strip())
            if not m:
                raise NameError_(f"unknown lattice name: {raw.strip()!r}")
            if m.group(1):
                terms.append((m.group(1), (int(m.group(2)),)))
            elif m.group(3):
                terms.append(("Gamma12", ()))
            elif m.group(4):
                try:
                    args = tuple(int(a) for a in m.group(5).split(","))
                except ValueError:
                    raise NameError_(f"bad parameters in {raw.strip()!r}") from None
                terms.append((m.group(4), args))
            else:
                continue
        name = cls(tuple(terms))
        name.validate()
        return name

    def validate(self):
        for kind, p in self.terms:
            ok = True
            if kind == "A":
                ok = p[0] >= 1
            elif kind == "D":
                ok = p[0] >= 4
            elif kind == "E":
                ok = p[0] in (6, 7, 8)
            elif kind == "T":
                ok = 1 <= p[0] <= 8
            elif kind == "C":
                ok = 1 <= p[0] <= 12
            elif kind == "Lambda":
                ok = len(p) >= 1 and all(a >= 1 for a in p)
            elif kind == "diag":
                ok = len(p) >= 1 and all(a != 0 for a in p)
            elif kind == "I":
                ok = len(p) == 2 and p[0] >= 0 and p[1] >= 0
            if not ok:
                raise NameError_(f"parameters out of range for {_fmt_term((kind, p))}")

    def __str__(self):
        if not self.terms:
            return "empty"
        return "+".join(_fmt_term(t) for t in self.terms)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for kind, p in self.terms:
            if kind in ("A", "D", "E"):
                out.append(kind + str(p[0]).translate(_SUB))
            elif kind == "T":
                out.append("𝒯" + str(p[0]).translate(_SUB))
            elif kind == "C":
                out.append("𝒞" + str(p[0]).translate(_SUB))
            elif kind == "Gamma12":
                out.append("Γ₁₂")
            elif kind == "diag":
                out.extend(f"⟨{a}⟩" for a in p)
            elif kind == "Lambda":
                out.append("Λ(" + ",".join(map(str, p)) + ")")
            elif kind == "I":
                out.append(f"I_{{{p[0]},{p[1]}}}")
        return " ⊕ ".join(out)

    def __add__(self, other: "LatticeName") -> "LatticeName":
        return LatticeName(self.terms + other.terms)


def _split_sum(text: str) -> List[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _fmt_term(t: Term) -> str:
    kind, p = t
    if kind in ("A", "D", "E", "T", "C"):
        return f"{kind}{p[0]}"
    if kind == "Gamma12":
        return "Gamma12"
    return f"{kind}(" + ",".join(map(str, p)) + ")"


# ---------------------------------------------------------------- constructors

def graph_gram(weights: Sequence[int], edges: Sequence[Tuple[int, int]]) -> List[List[int]]:
    n = len(weights)
    g = [[0] * n for _ in range(n)]
    for i, w in enumerate(weights):
        g[i][i] = w
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return g


def linear_chain(weights: Sequence[int]) -> Lattice:
    return Lattice.from_rows(graph_gram(weights, [(i, i + 1) for i in range(len(weights) - 1)]))


def star(legs: Sequence[int], center: int = 2) -> Lattice:
    """Weight-2 star: a central vertex with legs of the given lengths."""
    weights = [center]
    edges = []
    for length in legs:
        prev = 0
        for _ in range(length):
            weights.append(2)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return Lattice.from_rows(graph_gram(weights, edges))


def a_lattice(n: int) -> Lattice:
    return linear_chain([2] * n)


def d_lattice(n: int) -> Lattice:
    basis, _ = ambient_model(f"D{n}")
    return _gram_of(basis)


def e_lattice(n: int) -> Lattice:
    # E8 has legs 1, 2, 4 off the branch vertex; E7 and E6 shorten the long leg
    return star([1, 2, n - 4])


def t_lattice(n: int) -> Lattice:
    if n <= 5:
        return star([1, 2, 5 - n])
    if n == 6:
        return direct_sum(a_lattice(1), a_lattice(2))
    if n == 7:
        return linear_chain([2, 4])
    return diag(8)


def c_lattice(n: int) -> Lattice:
    if n == 12:
        return diag(12)
    if n == 11:
        return linear_chain([3, 4])
    if n == 10:
        return direct_sum(a_lattice(1), linear_chain([3, 2]))
    # chain 3 - 2 - (branch) - 2 - ... with one extra leaf on the branch vertex
    chain = 12 - n
    weights = [3] + [2] * (chain - 1) + [2]
    edges = [(i, i + 1) for i in range(chain - 1)] + [(2, chain)]
    return Lattice.from_rows(graph_gram(weights, edges))


def make(name) -> Lattice:
    """Gram matrix of a named lattice (a LatticeName or its text form)."""
    if isinstance(name, str):
        name = LatticeName.parse(name)
    parts = []
    for kind, p in name.terms:
        if kind == "A":
            parts.append(a_lattice(p[0]))
        elif kind == "D":
            parts.append(d_lattice(p[0]))
        elif kind == "E":
            parts.append(e_lattice(p[0]))
        elif kind == "T":
            parts.append(t_lattice(p[0]))
        elif kind == "C":
            parts.append(c_lattice(p[0]))
        elif kind == "Gamma12":
            parts.append(c_lattice(1))
        elif kind == "diag":
            parts.append(diag(*p))
        elif kind == "Lambda":
            parts.append(linear_chain(p))
        elif kind == "I":
            parts.append(unimodular_lattice_I(*p))
    if not parts:
        return Lattice.empty().renamed("empty")
    out = parts[0] if len(parts) == 1 else direct_sum(*parts)
    return out.renamed(str(name))


# ---------------------------------------------------------------- coordinate models

_HALF = Fraction(1, 2)


def ambient_model(name: str) -> Tuple[List[List[Fraction]], int]:
    """Basis vectors of a lattice inside Euclidean space, as (rows, dimension).

    Available for A<n>, D<n>, E8, Gamma12 and C3 (the latter two with the
    weight-3 vector first, matching the graph used by make()).
    """
    m = re.fullmatch(r"([AD])(\d+)", name)
    if m:
        n = int(m.group(2))
        if m.group(1) == "A":
            rows = [_unit(n + 1, i) for i in range(n)]
            for i in range(n):
                rows[i][i + 1] = Fraction(-1)
            return rows, n + 1
        if n < 4:
            raise NameError_("D needs n >= 4")
        rows = [_unit(n, i) for i in range(n - 1)]
        for i in range(n - 1):
            rows[i][i + 1] = Fraction(-1)
        last = _unit(n, n - 2)
        last[n - 1] = Fraction(1)
        rows.append(last)
        return rows, n
    if name == "E8":
        h = _HALF
        rows = [
            [-h, h, h, h, h, h, h, -h],
            [0, 0, 0, 0, 0, 0, -1, 1],
            [0, 0, 0, 0, 0, -1, 1, 0],
            [0, 0, 0, 0, -1, 1, 0, 0],
            [0, 0, 0, -1, 1, 0, 0, 0],
            [0, 0, -1, 1, 0, 0, 0, 0],
            [0, -1, 1, 0, 0, 0, 0, 0],
            [h, h, h, h, -h, -h, -h, -h],
        ]
        return [[Fraction(x) for x in r] for r in rows], 8
    if name in ("Gamma12", "C1", "C3"):
        rows = [[_HALF] * 12, [Fraction(-1), Fraction(-1)] + [Fraction(0)] * 10]
        for i in range(1, 10):
            r = [Fraction(0)] * 12
            r[i], r[i + 1] = Fraction(1), Fraction(-1)
            rows.append(r)
        leaf = [Fraction(0)] * 12
        leaf[0], leaf[1] = Fraction(1), Fraction(-1)
        if name == "C3":
            rows = rows[:9]
        return rows + [leaf], 12
    raise NameError_(f"no coordinate model for {name}")


def _unit(n, i):
    r = [Fraction(0)] * n
    r[i] = Fraction(1)
    return r


def _gram_of(rows: Sequence[Sequence[Fraction]]) -> Lattice:
    g = [[sum((a * b for a, b in zip(r, s)), Fraction(0)) for s in rows] for r in rows]
    return Lattice.from_rows([[int(x) for x in row] for row in g])


def model_lattice(name: str) -> Lattice:
    rows, _ = ambient_model(name)
    return _gram_of(rows).renamed(name)


def from_ambient(name: str, vector: Sequence) -> Tuple[int, ...]:
    """Basis coordinates of an ambient vector in the model of `name`."""
    rows, dim = ambient_model(name)
    if len(vector) != dim:
        raise LatticeError(f"expected {dim} ambient coordinates")
    v = [Fraction(x) for x in vector]
    # least-squares is exact here: solve (B B^T) c = B v
    g = [[sum((a * b for a, b in zip(r, s)), Fraction(0)) for s in rows] for r in rows]
    rhs = [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in rows]
    scale = lcm(*(x.denominator for row in g for x in row))
    gi = [[int(x * scale) for x in row] for row in g]
    c = intlin.solve_rational(gi, [x * scale for x in rhs])
    back = [sum((ci * r[k] for ci, r in zip(c, rows)), Fraction(0)) for k in range(dim)]
    if back != v or any(x.denominator != 1 for x in c):
        raise LatticeError("vector is not in the lattice")
    return tuple(int(x) for x in c)
