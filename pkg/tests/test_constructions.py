import random
from fractions import Fraction
from math import gcd

import pytest

from latfill.classify import is_isomorphic, root_decomposition
from latfill.constructions import (FAMILY_RANGES, TREFOIL_SEIFERT, PlumbingGraph, SeifertData, absorb_zero_vertices,
                                   blowup_class, cinquefoil_seifert, double_class, format_class, hj_evaluate,
                                   hj_expansion, lens_filling, plumbing_gram, random_unit_class, seifert_lattice,
                                   seifert_plumbing, t_class, verify_identity)
from latfill.enumeration import delta_lattice, reduced_part
from latfill.floer import BUILTIN_KNOTS, delta_Y
from latfill.lattice import LatticeError, complement, diag, direct_sum, negate
from latfill.names import make
from oracles import pipeline


# ---------------------------------------------------------------- continued fractions

def test_hj_examples():
    assert hj_expansion(2, 1) == [2]
    assert hj_expansion(5, 4) == [2, 2, 2, 2]
    assert hj_expansion(3, 2) == [2, 2]
    assert hj_expansion(11, 4) == [3, 4]
    with pytest.raises(ValueError):
        hj_expansion(3, 0)


def test_hj_round_trip_all_small_fractions():
    for a in range(1, 51):
        for b in range(1, 51):
            if gcd(a, b) != 1:
                continue
            ts = hj_expansion(a, b)
            assert hj_evaluate(ts) == Fraction(a, b)
            if a > b:
                assert all(t >= 2 for t in ts)


# ---------------------------------------------------------------- plumbings

def test_plumbing_gram_examples():
    assert plumbing_gram(PlumbingGraph([(0, 5)])).gram == ((5,),)
    chain = plumbing_gram(PlumbingGraph([(0, 3), (1, 4)], [(0, 1)]))
    assert chain.gram == ((3, -1), (-1, 4))
    assert is_isomorphic(chain, make("C11"))


def test_plumbing_graph_must_be_simple():
    with pytest.raises(ValueError):
        PlumbingGraph([(0, 2), (0, 3)])
    with pytest.raises(ValueError):
        PlumbingGraph([(0, 2)], [(0, 0)])
    with pytest.raises(ValueError):
        PlumbingGraph([(0, 2), (1, 2)], [(0, 1), (1, 0)])


def test_e8_star():
    g = seifert_plumbing(SeifertData.parse("2; 1/2, 2/3, 4/5"))
    assert [w for _, w in g.vertices] == [2] * 8
    legs = []
    for start in g.neighbours(0):
        length, prev, cur = 1, 0, start
        while [u for u in g.neighbours(cur) if u != prev]:
            prev, cur = cur, [u for u in g.neighbours(cur) if u != prev][0]
            length += 1
        legs.append(length)
    assert sorted(legs) == [1, 2, 4] and len(g.edges) == 7
    assert is_isomorphic(plumbing_gram(g), make("E8"))


def test_seifert_normalization_and_euler():
    s = SeifertData.parse("-2; -1/2, -1/3")
    assert s.euler == Fraction(-7, 6)
    n = s.normalized()
    assert n.b == 0 and n.fractions == (Fraction(1, 2), Fraction(2, 3))
    assert n.euler == s.euler


def test_zero_vertex_absorption():
    g = absorb_zero_vertices(seifert_plumbing(SeifertData.parse("-2; -1/2, -1/3")))
    assert sorted(w for _, w in g.vertices) == [2, 4]
    assert is_isomorphic(plumbing_gram(g), make("Lambda(2,4)"))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 7])
def test_trefoil_seifert_rows(n):
    L = seifert_lattice(SeifertData.parse(TREFOIL_SEIFERT[n]))
    assert is_isomorphic(L, make(f"T{n}"))


def test_trefoil_lens_summands():
    L = direct_sum(lens_filling(2, 1), lens_filling(3, 1))
    assert is_isomorphic(L, make("T6"))
    assert is_isomorphic(direct_sum(diag(2), make("A2")), make("T6"))


@pytest.mark.parametrize("n", range(1, 10))
def test_cinquefoil_seifert_rows(n):
    assert is_isomorphic(seifert_lattice(cinquefoil_seifert(n)), make(f"C{n}"))


def test_cinquefoil_small_rows():
    assert is_isomorphic(direct_sum(diag(2), lens_filling(5, 3)), make("C10"))
    assert is_isomorphic(lens_filling(11, 7), make("C11"))


# ---------------------------------------------------------------- blow-up classes

def test_blowup_class_norms():
    assert blowup_class("3h-e1-e2-e3-e4-e5-e6-e7-e8").norm == 1
    assert blowup_class("6h" + "".join(f"-2e{i}" for i in range(1, 8)) + "".join(f"-e{i}" for i in range(8, 15))).norm == 1
    v = blowup_class("4h-2e1")
    assert v.norm == 12 and v.parent.rank == 2


def test_blowup_class_parsing():
    v = blowup_class("3h - e1 - e3", 4)
    assert v.coords == (3, -1, 0, -1, 0)
    assert format_class(v.coords) == "3h-e1-e3"
    assert blowup_class((2, [1, 0])).coords == (2, 1, 0)
    for bad in ("3x", "h--e1", "e0", ""):
        with pytest.raises(LatticeError):
            blowup_class(bad)
    with pytest.raises(LatticeError):
        blowup_class("h-e5", 3)
    with pytest.raises(LatticeError):
        blowup_class((1, [1, 1]), 3)


# ---------------------------------------------------------------- identities

def test_t7_identity():
    r = verify_identity("T", 7)
    assert r.vector == "3h-e1-e2" and r.isomorphic
    # spanned by h-2e1-e2 and e1-e2
    C = complement(blowup_class("3h-e1-e2").parent, (3, -1, -1))
    assert is_isomorphic(negate(C), make("Lambda(2,4)"))


def test_c11_identity():
    r = verify_identity("C", 11)
    assert r.vector == "4h-2e1-e2" and r.isomorphic


def test_double21_over_e8():
    r = verify_identity("double21", 1)
    assert r.vector == "6h-2e1-2e2-2e3-2e4-2e5-2e6-2e7-2e8-e9-e10"
    assert r.ambient == "I(1,10)" and r.isomorphic


def test_d_family_root_type():
    r = verify_identity("D", 1)
    assert r.isomorphic and r.details["roots"] == "D8+D8"


@pytest.mark.parametrize("family", sorted(FAMILY_RANGES))
def test_identity_ranges(family):
    lo, hi = FAMILY_RANGES[family]
    with pytest.raises(ValueError):
        verify_identity(family, hi + 1)
    with pytest.raises(ValueError):
        verify_identity(family, lo - 1)


def test_unknown_family():
    with pytest.raises(ValueError):
        verify_identity("Z", 1)


def test_random_unit_classes_have_norm_one():
    rng = random.Random(7)
    for k in range(3, 9):
        for _ in range(5):
            assert random_unit_class(k, rng).norm == 1


def test_doubling_over_random_bases():
    rng = random.Random(2024)
    for trial in range(20):
        v = random_unit_class(rng.randint(3, 8), rng, steps=rng.randint(1, 16))
        lam = negate(complement(v.parent, v.coords))
        assert lam.rank == 0 or lam.is_positive_definite
        for fam in ("double3", "double21"):
            assert verify_identity(fam, 1, vector=v).isomorphic, (trial, v.coords, fam)


def test_doubling_needs_square_one():
    with pytest.raises(ValueError):
        verify_identity("double3", 1, vector=t_class(2))


def test_double_class():
    w = double_class(t_class(1), 2)
    assert w.norm == 4 * 1 - 2


# ---------------------------------------------------------------- constructions inside the pipeline

def _in_row(table, n, L):
    _, red = reduced_part(L)
    return any(is_isomorphic(red, e.lattice) for e in table.rows[n])


def test_constructed_lattices_appear_in_pipeline_rows():
    t23, t25 = pipeline("T23", 9), pipeline("T25", 12)
    for n in range(1, 9):
        T = make(f"T{n}")
        assert delta_lattice(T) <= delta_Y(BUILTIN_KNOTS["T23"], n)
        assert _in_row(t23, n, T)
        if n <= 7:
            assert _in_row(t25, n, T)
    for n in range(1, 12):
        C = make(f"C{n}")
        assert delta_lattice(C) <= delta_Y(BUILTIN_KNOTS["T25"], n)
        assert _in_row(t25, n, C)
    e8 = negate(complement(t_class(1).parent, t_class(1).coords))
    for extra, n in ((1, 3), (2, 2)):
        w = double_class(t_class(1), extra)
        L = negate(complement(w.parent, w.coords))
        assert is_isomorphic(L, direct_sum(e8, diag(3)) if extra == 1 else direct_sum(e8, diag(2), diag(1)))
        assert _in_row(t25, n, L)
