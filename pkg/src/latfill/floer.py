"""Correction terms of integer surgeries on knots, computed from V-sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .lattice import Lattice
from .names import make


@dataclass(frozen=True)
class VSequence:
    """V_0, V_1, ... with implicit zeros past the end."""

    values: Tuple[int, ...] = ()

    def __post_init__(self):
        vals = list(int(v) for v in self.values)
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "values", tuple(vals))
        for i, v in enumerate(vals):
            if v < 0:
                raise ValueError("V-values must be non-negative")
            nxt = vals[i + 1] if i + 1 < len(vals) else 0
            if not (v - 1 <= nxt <= v):
                raise ValueError(f"V-sequence must drop by at most one per step: {vals}")

    def __getitem__(self, i: int) -> int:
        i = abs(i)
        return self.values[i] if i < len(self.values) else 0

    def __str__(self):
        return ",".join(map(str, self.values)) if self.values else "0"


@dataclass(frozen=True)
class KnotSpec:
    label: str
    g4_bound: int
    v_seq: VSequence
    base_fillings: Tuple[Lattice, ...] = field(default=())

    def __post_init__(self):
        if self.v_seq not in admissible_v_sequences(self.g4_bound):
            raise ValueError(f"V-sequence {self.v_seq} violates the slice genus bound {self.g4_bound}")


@dataclass(frozen=True)
class DTable:
    n: int
    d: Dict[int, Fraction]

    def rows(self) -> List[Tuple[int, Fraction]]:
        return sorted(self.d.items())


def _ceil_half(a: int) -> int:
    return -((-a) // 2)


def admissible_v_sequences(g: int) -> List[VSequence]:
    """All V-sequences compatible with slice genus at most g (g <= 4)."""
    if g < 0 or g > 4:
        raise ValueError("slice genus bound must lie in 0..4")
    caps = [_ceil_half(g - i) for i in range(g)]
    out = []

    def grow(prefix: List[int]):
        i = len(prefix)
        if i == g:
            try:
                out.append(VSequence(tuple(prefix)))
            except ValueError:
                pass
            return
        prev = prefix[-1] if prefix else None
        for v in range(caps[i] + 1):
            if prev is not None and not (prev - 1 <= v <= prev):
                continue
            grow(prefix + [v])

    grow([])
    uniq = sorted(set(out), key=lambda s: (len(s.values), s.values))
    return uniq


def d_unknot(n: int, i: int) -> Fraction:
    if n < 1:
        raise ValueError("surgery coefficient must be positive")
    if not 0 <= i < n:
        raise ValueError(f"spin-c index {i} out of range for n={n}")
    return Fraction((2 * i - n) ** 2 - n, 4 * n)


def d_surgery(spec: KnotSpec, n: int, i: int) -> Fraction:
    base = d_unknot(n, i)
    return base - 2 * max(spec.v_seq[i], spec.v_seq[n - i])


def d_surgery_rational(spec: KnotSpec, p: int, q: int, i: int) -> Fraction:
    """Reserved for p/q surgery with q > 1."""
    if q == 1:
        return d_surgery(spec, p, i)
    raise NotImplementedError("unimplemented: rational surgery needs lens space correction terms")


def d_table(spec: KnotSpec, n: int) -> DTable:
    return DTable(n, {i: d_surgery(spec, n, i) for i in range(n)})


def delta_Y(spec: KnotSpec, n: int) -> Fraction:
    """-4 times the minimal correction term of n-surgery."""
    return max(-4 * d_surgery(spec, n, i) for i in range(n))


def _builtin(label, g4, vals, base):
    return KnotSpec(label, g4, VSequence(vals), tuple(make(b) for b in base))


BUILTIN_KNOTS = {
    "U": _builtin("U", 0, (), ["empty"]),
    "T23": _builtin("T23", 1, (1,), ["empty", "E8"]),
    "T25": _builtin("T25", 2, (1, 1), ["empty", "E8", "Gamma12"]),
}


def base_fillings_for_genus(g: int) -> Tuple[Lattice, ...]:
    """Reduced unimodular fillings of 1-surgery allowed by slice genus g (g <= 2), taken as given."""
    names = {0: ["empty"], 1: ["empty", "E8"], 2: ["empty", "E8", "Gamma12"]}
    if g not in names:
        raise ValueError("base fillings are only known for slice genus at most 2")
    return tuple(make(b) for b in names[g])


def custom_knot(v_values: Sequence[int], g4: int, base: Sequence[Lattice] = None, label: str = "custom") -> KnotSpec:
    if base is None:
        base = base_fillings_for_genus(g4)
    return KnotSpec(label, g4, VSequence(tuple(v_values)), tuple(base))


def matching_builtin(spec: KnotSpec, n_max: int) -> List[str]:
    """Labels of built-in knots whose correction terms agree with spec for every n <= n_max."""
    hits = []
    for label, other in BUILTIN_KNOTS.items():
        if all(d_surgery(spec, n, i) == d_surgery(other, n, i) for n in range(1, n_max + 1) for i in range(n)):
            hits.append(label)
    return hits
