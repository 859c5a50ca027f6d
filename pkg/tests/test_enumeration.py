from fractions import Fraction

import pytest
from hypothesis import given, settings

from latfill.classify import is_isomorphic
from latfill.enumeration import (char_coset, delta_lattice, is_even, min_char_square, norm_counts,
                                 reduced_part, short_vectors, solve_mod2, vectors_of_norm)
from latfill.lattice import Covector, Lattice, LatticeError, complement, diag, direct_sum, unimodular_lattice_I
from latfill.names import from_ambient, make
from oracles import box_bounds, box_vectors, brute_delta, e8_root_count
from strategies import definite_grams


# ---------------------------------------------------------------- vectors of a given norm

E8_ROOT_PAIRS = 120  # DERIVED: e8_root_count() in the even coordinate model, halved


def test_e8_roots():
    assert e8_root_count() == 2 * E8_ROOT_PAIRS
    assert len(vectors_of_norm(make("E8"), 2)) == E8_ROOT_PAIRS


def test_a1_generator():
    assert vectors_of_norm(make("A1"), 2).coords() == [(-1,)]


def test_d5_contains_long_vector():
    v = from_ambient("D5", (2, 2, 2, 2, 2))
    found = set(vectors_of_norm(make("D5"), 20).coords())
    assert v in found or tuple(-c for c in v) in found


def test_representatives_are_sorted_and_canonical():
    sl = vectors_of_norm(make("D4"), 2)
    vs = sl.coords()
    assert vs == sorted(vs)
    for v in vs:
        assert v <= tuple(-c for c in v)
        assert make("D4").norm(v) == 2


def test_vectors_of_norm_rejects_indefinite_and_bad_norm():
    with pytest.raises(LatticeError):
        vectors_of_norm(unimodular_lattice_I(1, 2), 1)
    with pytest.raises(LatticeError):
        vectors_of_norm(make("A2"), 0)


@given(definite_grams(max_rank=3, max_diag=4))
@settings(max_examples=40, deadline=None)
def test_enumeration_matches_box_search(L):
    for N in (1, 2, 3, 5):
        box = 1
        for b in box_bounds(L.gram, N):
            box *= 2 * b + 1
        if box > 40_000:
            continue
        assert vectors_of_norm(L, N).coords() == box_vectors(L.gram, N)


def test_short_vectors_agree_with_exact_slices():
    L = make("D5+A2")
    sv = short_vectors(L, 6)
    for k in range(1, 7):
        assert sv.get(k, []) == vectors_of_norm(L, k).coords()
    assert norm_counts(L, 6) == tuple(len(sv.get(k, [])) for k in range(1, 7))


# ---------------------------------------------------------------- reduced part

def test_reduced_part_examples():
    k, R = reduced_part(diag(1, 1, 1))
    assert k == 3 and R.rank == 0
    k, R = reduced_part(direct_sum(make("E8"), diag(1)))
    assert k == 1 and is_isomorphic(R, make("E8"))
    k, R = reduced_part(complement(diag(1, 1, 1, 1), (1, 1, 0, 0)))
    assert k == 2 and R.gram == ((2,),)


def test_reduced_part_hidden_units():
    # <1> + <2> written in a skew basis
    L = Lattice.from_rows([[3, 1], [1, 1]])
    k, R = reduced_part(L)
    assert k == 1 and R.gram == ((2,),)


@given(definite_grams(max_rank=4))
@settings(max_examples=40, deadline=None)
def test_reduced_part_splits_and_is_idempotent(L):
    k, R = reduced_part(L)
    assert R.rank + k == L.rank
    assert abs(R.det) == abs(L.det)
    if R.rank:
        assert len(vectors_of_norm(R, 1)) == 0
    k2, R2 = reduced_part(R)
    assert k2 == 0 and R2.gram == R.gram


# ---------------------------------------------------------------- characteristic covectors and delta

def test_char_coset_examples():
    I19 = unimodular_lattice_I(1, 9)
    cc = char_coset(I19)
    assert cc.contains(Covector((1,) * 10, I19))
    E8 = make("E8")
    assert char_coset(E8).contains(Covector((0,) * 8, E8))
    one = diag(1)
    assert char_coset(one).contains(Covector((1,), one))
    assert not char_coset(one).contains(Covector((0,), one))


def test_solve_mod2():
    assert solve_mod2([[1, 1], [0, 1]], [1, 1]) == [0, 1]
    assert solve_mod2([[1, 1], [1, 1]], [0, 1]) is None


@pytest.mark.parametrize("name,value", [
    ("E8", Fraction(8)),        # even lattices: delta = rank
    ("Gamma12", Fraction(8)),   # minimal characteristic square 4
    ("diag(2)", Fraction(1)),
    ("diag(3)", Fraction(2, 3)),
    ("diag(4)", Fraction(1)),
])
def test_delta_examples(name, value):
    assert delta_lattice(make(name)) == value


@pytest.mark.parametrize("n", range(1, 13))
def test_delta_of_rank_one(n):
    expected = Fraction(n - 1, n) if n % 2 else Fraction(1)
    assert delta_lattice(diag(n)) == expected == brute_delta([[n]])


def test_delta_rejects_indefinite():
    with pytest.raises(LatticeError):
        delta_lattice(unimodular_lattice_I(1, 1))


def test_minimizer_is_characteristic():
    for name in ("Gamma12", "C3", "D5+diag(3)", "Lambda(3,4)"):
        L = make(name)
        sq, p = min_char_square(L)
        xi = Covector.from_pairings(L, p)
        assert char_coset(L).contains(xi)
        assert xi.square == sq


@given(definite_grams(max_rank=3, max_diag=4))
@settings(max_examples=40, deadline=None)
def test_delta_matches_brute_force(L):
    assert delta_lattice(L) == brute_delta(L.gram)


@given(definite_grams(max_rank=3), definite_grams(max_rank=3))
@settings(max_examples=30, deadline=None)
def test_delta_is_additive(a, b):
    assert delta_lattice(direct_sum(a, b)) == delta_lattice(a) + delta_lattice(b)


def test_is_even():
    assert is_even(make("E8"))
    assert not is_even(diag(1))
    assert not is_even(make("Gamma12"))
