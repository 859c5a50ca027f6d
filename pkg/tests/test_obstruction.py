import pytest

from latfill.classify import is_isomorphic
from latfill.enumeration import delta_lattice, vectors_of_norm
from latfill.floer import BUILTIN_KNOTS, delta_Y
from latfill.lattice import Lattice, pairing_gcd
from latfill.names import make
from latfill.obstruction import (EXCLUDED_BARE, NEEDS_UNIT_PADDING, UNCONSTRAINED, candidate_vectors,
                                 classify_fillings, padding_is_sufficient, rokhlin_flag_applies,
                                 rokhlin_obstruction, step, unit_patterns)
from oracles import pipeline

U, T23, T25 = BUILTIN_KNOTS["U"], BUILTIN_KNOTS["T23"], BUILTIN_KNOTS["T25"]


def same_classes(found, expected):
    if len(found) != len(expected):
        return False
    return all(any(is_isomorphic(f, e) for f in found) for e in expected)


# ---------------------------------------------------------------- candidates

def test_unit_patterns():
    assert unit_patterns(2, 2) == [(0, 0), (1, 0), (1, 1)]
    assert unit_patterns(3, 2) == [(0, 0), (1, 0)]


def test_candidates_from_e8():
    cands = candidate_vectors(make("E8"), 2)
    roots = [v for v in cands if not any(v.coords[8:])]
    units = [v for v in cands if not any(v.coords[:8])]
    assert len(roots) == 120
    assert [v.coords[8:] for v in units] == [(1, 1)]
    for v in cands:
        assert v.norm == 2 and pairing_gcd(v.parent, v.coords) == 1


def test_candidates_from_empty():
    cands = candidate_vectors(Lattice.empty(), 2)
    assert [v.coords for v in cands] == [(1, 1)]


def test_candidates_from_t6_include_the_lambda_vector():
    cands = {v.coords for v in candidate_vectors(make("T6"), 7)}
    # (3,-3) + (2,2,-4) in the A1 + A2 basis, up to sign
    assert (-3, -2, -4, 0, 0) in cands or (3, 2, 4, 0, 0) in cands


def test_candidates_have_the_required_norm_and_gcd():
    for name, n in (("D5", 5), ("C3", 4), ("E7", 3)):
        M = make(name)
        for v in candidate_vectors(M, n):
            assert v.norm == n * (n - 1)
            assert pairing_gcd(v.parent, v.coords) == n - 1


def test_candidates_require_n_at_least_two():
    with pytest.raises(ValueError):
        candidate_vectors(make("E8"), 1)


# ---------------------------------------------------------------- Rokhlin rule

def test_rokhlin_examples():
    assert rokhlin_obstruction(make("E8+diag(2)"), 2) == EXCLUDED_BARE
    assert rokhlin_obstruction(make("E7"), 2) == UNCONSTRAINED
    assert rokhlin_obstruction(make("Gamma12+diag(2)"), 2) == UNCONSTRAINED
    # <2> fills 2-surgery on the unknot bare; its closed signature is 0, so no constraint
    assert rokhlin_obstruction(make("diag(2)"), 2) == UNCONSTRAINED
    assert not rokhlin_flag_applies(make("diag(2)"), 2)
    assert rokhlin_flag_applies(make("E8+diag(2)"), 2)


# ---------------------------------------------------------------- steps

def test_step_trefoil_two():
    row = step(T23, 2, [Lattice.empty(), make("E8")])
    assert same_classes([e.lattice for e in row], [make("diag(2)"), make("E7")])


def test_step_trefoil_discards_e8_plus_two_by_delta():
    assert delta_lattice(make("E8+diag(2)")) == 9 > delta_Y(T23, 2)


def test_step_unknot_three():
    row = step(U, 3, [make("diag(2)")])
    assert same_classes([e.lattice for e in row], [make("diag(3)")])


def test_step_cinquefoil_four():
    prev = pipeline("T25", 12).lattices(3)
    row = [e.lattice for e in step(T25, 4, prev)]
    assert same_classes(row, [make("diag(4)"), make("D5"), make("C4")])
    for excluded in ("E8+diag(4)", "Gamma12+diag(4)", "D9"):
        assert delta_lattice(make(excluded)) > delta_Y(T25, 4)


def test_classify_range():
    with pytest.raises(ValueError):
        classify_fillings(T23, 17)


# ---------------------------------------------------------------- table invariants

@pytest.mark.parametrize("knot,nmax", [("U", 12), ("T23", 9), ("T25", 12)])
def test_rows_are_reduced_with_correct_det_and_delta(knot, nmax):
    table = pipeline(knot, nmax)
    spec = BUILTIN_KNOTS[knot]
    for n, row in table.rows.items():
        for e in row:
            L = e.lattice
            assert abs(L.det) == n
            assert L.rank == 0 or (L.is_positive_definite and len(vectors_of_norm(L, 1)) == 0)
            assert e.delta == delta_lattice(L) <= delta_Y(spec, n)
        for i, a in enumerate(row):
            for b in row[i + 1:]:
                assert not is_isomorphic(a.lattice, b.lattice)


def test_flag_only_on_e8_plus_two():
    table = pipeline("T25", 12)
    flagged = [(n, e.name) for n, row in table.rows.items() for e in row if NEEDS_UNIT_PADDING in e.flags]
    assert flagged == [(2, "E8+diag(2)")]


def test_unknot_rows():
    table = pipeline("U", 12)
    for n, row in table.rows.items():
        assert same_classes([e.lattice for e in row], [make(f"diag({n})") if n > 1 else Lattice.empty()])


@pytest.mark.parametrize("knot,nmax", [("U", 12), ("T23", 9), ("T25", 12)])
def test_padding_is_sufficient(knot, nmax):
    assert padding_is_sufficient(pipeline(knot, nmax))
