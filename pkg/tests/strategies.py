"""Hypothesis strategies for small integral lattices."""

import random

from hypothesis import assume
from hypothesis import strategies as st

from latfill.lattice import Lattice


@st.composite
def definite_grams(draw, min_rank=1, max_rank=4, max_diag=5):
    """Positive definite Gram matrices with |g_ij| <= min(g_ii, g_jj) / 2 (so short bases)."""
    n = draw(st.integers(min_rank, max_rank))
    d = [draw(st.integers(1, max_diag)) for _ in range(n)]
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = d[i]
        for j in range(i):
            lim = min(d[i], d[j]) // 2
            g[i][j] = g[j][i] = draw(st.integers(-lim, lim))
    L = Lattice.from_rows(g)
    assume(L.is_positive_definite)
    return L


@st.composite
def unimodular(draw, n, steps=8):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = random.Random(seed)
    t = [[int(i == j) for j in range(n)] for i in range(n)]
    if n < 2:
        return [[rng.choice((-1, 1))]] if n else []
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        t[i] = [a + c * b for a, b in zip(t[i], t[j])]
        if rng.random() < 0.3:
            t[i], t[j] = t[j], t[i]
    return t


@st.composite
def nonzero_vector(draw, n, bound=3):
    v = [draw(st.integers(-bound, bound)) for _ in range(n)]
    assume(any(v))
    return v
