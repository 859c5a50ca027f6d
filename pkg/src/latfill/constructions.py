"""Plumbings, continued fractions and blow-up complement identities."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .classify import is_isomorphic, recognize, root_decomposition
from .lattice import Lattice, LatticeError, LatticeVector, complement, diag, direct_sum, negate, unimodular_lattice_I
from .names import make


# ---------------------------------------------------------------- continued fractions

def hj_expansion(a: int, b: int) -> List[int]:
    """t_1, ..., t_m with a/b = t_1 - 1/(t_2 - 1/(... - 1/t_m)), greedy t = ceil(a/b)."""
    if b == 0:
        raise ValueError("denominator must be nonzero")
    if a <= 0:
        raise ValueError("numerator must be positive")
    frac = Fraction(a, b)
    out = []
    while True:
        t = -((-frac.numerator) // frac.denominator)
        out.append(t)
        rest = t - frac
        if rest == 0:
            return out
        frac = 1 / rest
        if len(out) > 10_000:
            raise ValueError("continued fraction does not terminate")


def hj_evaluate(ts: Sequence[int]) -> Fraction:
    if not ts:
        raise ValueError("empty expansion")
    val = Fraction(ts[-1])
    for t in reversed(ts[:-1]):
        val = t - 1 / val
    return val


# ---------------------------------------------------------------- plumbing graphs

@dataclass
class PlumbingGraph:
    vertices: List[Tuple[int, int]]
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be unique")
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError("loops are not allowed")
            if a not in ids or b not in ids:
                raise ValueError("edge refers to an unknown vertex")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError("multiple edges are not allowed")
            seen.add(key)

    def weight(self, v: int) -> int:
        return dict(self.vertices)[v]

    def neighbours(self, v: int) -> List[int]:
        return sorted([b for a, b in self.edges if a == v] + [a for a, b in self.edges if b == v])


def plumbing_gram(g: PlumbingGraph) -> Lattice:
    index = {v: i for i, (v, _) in enumerate(g.vertices)}
    n = len(g.vertices)
    rows = [[0] * n for _ in range(n)]
    for v, w in g.vertices:
        rows[index[v]][index[v]] = w
    for a, b in g.edges:
        rows[index[a]][index[b]] = rows[index[b]][index[a]] = -1
    return Lattice.from_rows(rows)


def absorb_zero_vertices(g: PlumbingGraph) -> PlumbingGraph:
    """Replace each chain x - 0 - y by a single vertex of weight x + y.

    The merged vertex keeps the remaining neighbours of both ends.  This is the
    move that turns the plumbing of a Seifert datum with central weight 0 into a
    definite one.
    """
    verts = dict(g.vertices)
    edges = {frozenset(e) for e in g.edges}
    changed = True
    while changed:
        changed = False
        for v, w in sorted(verts.items()):
            nb = sorted(u for e in edges if v in e for u in e if u != v)
            if w != 0 or len(nb) != 2:
                continue
            x, y = nb
            if frozenset((x, y)) in edges:
                continue
            new_nb = {u for e in edges if (x in e or y in e) for u in e} - {x, y, v}
            edges = {e for e in edges if not (e & {v, x, y})}
            verts[x] += verts.pop(y)
            verts.pop(v)
            for u in new_nb:
                edges.add(frozenset((x, u)))
            changed = True
            break
    return PlumbingGraph(sorted(verts.items()), sorted(tuple(sorted(e)) for e in edges))


# ---------------------------------------------------------------- Seifert data

@dataclass(frozen=True)
class SeifertData:
    b: int
    fractions: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "fractions", tuple(Fraction(f) for f in self.fractions))

    @property
    def euler(self) -> Fraction:
        return self.b - sum(self.fractions, Fraction(0))

    def normalized(self) -> "SeifertData":
        """Fractions reduced into (0, 1), integral fibres dropped, Euler number kept."""
        b = self.b
        fr = []
        for f in self.fractions:
            k = f.numerator // f.denominator
            b -= k
            if f - k:
                fr.append(f - k)
        return SeifertData(b, tuple(fr))

    @classmethod
    def parse(cls, text: str) -> "SeifertData":
        """Parse ``"b; b1/a1, b2/a2, ..."``."""
        if ";" in text:
            head, tail = text.split(";", 1)
        else:
            head, tail = text, ""
        try:
            b = int(head.strip().lstrip("("))
            fr = tuple(Fraction(p.strip().rstrip(")")) for p in tail.split(",") if p.strip().rstrip(")"))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"malformed Seifert data: {text!r}") from None
        for f in fr:
            if f.denominator <= 0:
                raise ValueError("fibre denominators must be positive")
        return cls(b, fr)

    def __str__(self):
        return f"({self.b}; " + ", ".join(str(f) for f in self.fractions) + ")"


def seifert_plumbing(s: SeifertData) -> PlumbingGraph:
    """Star graph: central weight b, one leg per fibre with weights HJ(a_i/b_i)."""
    s = s.normalized()
    verts = [(0, s.b)]
    edges = []
    nxt = 1
    for f in s.fractions:
        prev = 0
        for t in hj_expansion(f.denominator, f.numerator):
            verts.append((nxt, t))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return PlumbingGraph(verts, edges)


def seifert_lattice(s: SeifertData) -> Lattice:
    return plumbing_gram(absorb_zero_vertices(seifert_plumbing(s)))


def lens_filling(p: int, q: int) -> Lattice:
    """Linear plumbing on HJ(p/(p-q)), the definite filling used for L(p,q)."""
    return plumbing_gram(_chain(hj_expansion(p, p - q)))


def _chain(ts: Sequence[int]) -> PlumbingGraph:
    return PlumbingGraph([(i, t) for i, t in enumerate(ts)], [(i, i + 1) for i in range(len(ts) - 1)])


TREFOIL_SEIFERT = {
    1: "2; 1/2, 2/3, 4/5",
    2: "2; 1/2, 2/3, 3/4",
    3: "2; 1/2, 2/3, 2/3",
    4: "2; 1/2, 1/2, 2/3",
    5: "2; 1/2, 2/3",
    7: "-2; -1/2, -1/3",
}


def cinquefoil_seifert(n: int) -> SeifertData:
    if not 1 <= n <= 9:
        raise ValueError("Seifert description is used for 1 <= n <= 9")
    return SeifertData(2, (Fraction(1, 2), Fraction(3, 5), Fraction(9 - n, 10 - n)))


# ---------------------------------------------------------------- blow-up classes

_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(h|e(\d+))")


def blowup_class(coeffs, k: Optional[int] = None) -> LatticeVector:
    """A class in I_{1,k}: either a string like ``"3h-e1-e2"`` or (a, [c_1..c_k]) for a h + sum c_i e_i."""
    if isinstance(coeffs, str):
        a, es = _parse_class(coeffs)
        if k is None:
            k = max(es, default=0)
        c = [0] * k
        for i, x in es.items():
            if i > k:
                raise LatticeError(f"e{i} does not exist in I(1,{k})")
            c[i - 1] = x
    else:
        a, c = coeffs
        c = list(c)
        if k is None:
            k = len(c)
        if len(c) != k:
            raise LatticeError("coefficient list length does not match k")
    return LatticeVector((a,) + tuple(c), unimodular_lattice_I(1, k))


def _parse_class(text: str) -> Tuple[int, Dict[int, int]]:
    s = text.replace(" ", "")
    pos = 0
    a = 0
    es: Dict[int, int] = {}
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise LatticeError(f"malformed class: {text!r}")
        pos = m.end()
        mult = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            mult = -mult
        if m.group(3) == "h":
            a += mult
        else:
            i = int(m.group(4))
            if i < 1:
                raise LatticeError("exceptional classes are numbered from 1")
            es[i] = es.get(i, 0) + mult
    if pos != len(s) or not s:
        raise LatticeError(f"malformed class: {text!r}")
    return a, es


def format_class(v: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(v):
        if c == 0:
            continue
        sym = "h" if i == 0 else f"e{i}"
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}{sym}")
    text = "".join(parts) or "0"
    return text[1:] if text.startswith("+") else text


def t_class(n: int) -> LatticeVector:
    k = 9 - n
    return blowup_class((3, [-1] * k))


def c_class(n: int) -> LatticeVector:
    k = 13 - n
    return blowup_class((4, [-2] + [-1] * (k - 1)))


def e_class(n: int) -> LatticeVector:
    k = 15 - n
    return blowup_class((6, [-2] * 7 + [-1] * (k - 7)))


def a_class(n: int) -> LatticeVector:
    k = 16 - n
    return blowup_class((4, [-1] * k))


def d_class(n: int) -> LatticeVector:
    k = 17 - n
    return blowup_class((8, [-4, -3] + [-2] * 8 + [-1] * (k - 10)))


def double_class(v: LatticeVector, extra: int) -> LatticeVector:
    """2v - e_{k+1} (extra=1) or 2v - e_{k+1} - e_{k+2} (extra=2) in I_{1,k+extra}."""
    a, *c = v.coords
    return blowup_class((2 * a, [2 * x for x in c] + [-1] * extra))


def random_unit_class(k: int, rng: random.Random, steps: int = 12) -> LatticeVector:
    """A random norm-1 class of I_{1,k}, the image of h under random reflections."""
    if k < 3:
        raise ValueError("need k >= 3 for the cubic reflection")
    L = unimodular_lattice_I(1, k)
    v = [1] + [0] * k
    for _ in range(steps):
        kind = rng.randrange(3)
        r = [0] * (k + 1)
        if kind == 0:
            i, j = rng.sample(range(1, k + 1), 2)
            r[i], r[j] = 1, -1
        elif kind == 1:
            r[0] = 1
            for i in rng.sample(range(1, k + 1), 3):
                r[i] = -1
        else:
            r[rng.randrange(1, k + 1)] = 1
        rr = L.norm(r)
        vr = L.dot(v, r)
        # reflection x -> x - 2 (x.r)/(r.r) r is integral for r.r in {-1, -2}
        f = -2 * vr // rr
        v = [x + f * y for x, y in zip(v, r)]
    if v[0] < 0:
        v = [-x for x in v]
    return LatticeVector(tuple(v), L)


# ---------------------------------------------------------------- identity checks

@dataclass
class IdentityReport:
    family: str
    n: int
    ambient: str
    vector: str
    complement: str
    isomorphic: bool
    details: Dict[str, object] = field(default_factory=dict)

    def lines(self) -> List[str]:
        out = [f"family: {self.family}", f"n: {self.n}", f"ambient: {self.ambient}",
               f"vector: {self.vector}", f"complement: {self.complement}",
               f"isomorphic: {str(self.isomorphic).lower()}"]
        out += [f"{k}: {v}" for k, v in self.details.items()]
        return out


FAMILY_RANGES = {"T": (1, 8), "C": (1, 11), "E": (1, 7), "A": (1, 15), "D": (1, 7),
                 "double3": (1, 1), "double21": (1, 1)}

_ROOT_TYPE_AT_ONE = {"E": "E7+E7", "A": "A15", "D": "D8+D8"}


def _negated_complement(v: LatticeVector) -> Lattice:
    return negate(complement(v.parent, v.coords))


def verify_identity(family: str, n: int, base: str = "T", vector: Optional[LatticeVector] = None) -> IdentityReport:
    """Check that the complement of a blow-up class is the expected definite lattice (negated).

    For the doubling families the base class is the norm-1 class of family
    `base` at n = 1 unless an explicit norm-1 `vector` is given.
    """
    if family not in FAMILY_RANGES:
        raise ValueError(f"unknown family {family!r}")
    lo, hi = FAMILY_RANGES[family]
    if vector is None and not lo <= n <= hi:
        raise ValueError(f"n={n} is out of range {lo}..{hi} for family {family}")
    if family in ("T", "C"):
        v = t_class(n) if family == "T" else c_class(n)
        target = make(f"{family}{n}")
        comp = _negated_complement(v)
        ok = bool(is_isomorphic(comp, target))
        return IdentityReport(family, n, v.parent.name, format_class(v.coords), f"-{target.name}", ok,
                              {"rank": comp.rank, "det": abs(comp.det)})
    if family in ("double3", "double21"):
        if vector is None:
            if base not in ("T", "C"):
                raise ValueError("doubling base must be T or C")
            vector = t_class(1) if base == "T" else c_class(1)
        if vector.norm != 1:
            raise ValueError("doubling needs a class of square 1")
        extra = 1 if family == "double3" else 2
        lam = _negated_complement(vector)
        w = double_class(vector, extra)
        comp = _negated_complement(w)
        target = direct_sum(lam, diag(3)) if extra == 1 else direct_sum(lam, diag(2), diag(1))
        ok = bool(is_isomorphic(comp, target))
        base_name = recognize(lam)
        suffix = "+diag(3)" if extra == 1 else "+diag(2,1)"
        return IdentityReport(family, n, w.parent.name, format_class(w.coords),
                              f"-({base_name}{suffix})" if base_name else "-(Lambda" + suffix + ")", ok,
                              {"base vector": format_class(vector.coords), "rank": comp.rank, "det": abs(comp.det)})
    v = {"E": e_class, "A": a_class, "D": d_class}[family](n)
    comp = _negated_complement(v)
    details: Dict[str, object] = {"rank": comp.rank, "det": abs(comp.det)}
    ok = comp.is_positive_definite and abs(comp.det) == n and comp.rank == v.parent.rank - 1
    if n == 1:
        roots = str(root_decomposition(comp))
        details["roots"] = roots
        ok = ok and roots == _ROOT_TYPE_AT_ONE[family]
    return IdentityReport(family, n, v.parent.name, format_class(v.coords), f"-{family}_{n}", ok, details)
