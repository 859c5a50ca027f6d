from fractions import Fraction

import pytest

from latfill.floer import (BUILTIN_KNOTS, KnotSpec, VSequence, admissible_v_sequences, custom_knot, d_surgery,
                           d_surgery_rational, d_table, d_unknot, delta_Y, matching_builtin)
from latfill.names import make

U, T23, T25 = BUILTIN_KNOTS["U"], BUILTIN_KNOTS["T23"], BUILTIN_KNOTS["T25"]


def test_v_sequence_validation():
    assert VSequence((2, 1, 1, 0, 0)).values == (2, 1, 1)
    assert VSequence((1,))[5] == 0 and VSequence((1,))[-0] == 1
    with pytest.raises(ValueError):
        VSequence((1, 2))
    with pytest.raises(ValueError):
        VSequence((3, 1))
    with pytest.raises(ValueError):
        VSequence((-1,))


def test_admissible_sequences():
    assert [str(s) for s in admissible_v_sequences(0)] == ["0"]
    assert [str(s) for s in admissible_v_sequences(1)] == ["0", "1"]
    assert [str(s) for s in admissible_v_sequences(2)] == ["0", "1", "1,1"]
    with pytest.raises(ValueError):
        admissible_v_sequences(5)


def _bound_ok(seq, g):
    for i in range(g + 3):
        cap = -((i - g) // 2) if i < g else 0
        if seq[i] > cap:
            return False
    return True


@pytest.mark.parametrize("g", range(0, 5))
def test_admissible_sequences_are_exactly_the_bounded_monotone_ones(g):
    from itertools import product
    expected = set()
    for vals in product(range(3), repeat=max(g, 1)):
        try:
            s = VSequence(vals)
        except ValueError:
            continue
        if _bound_ok(s, g):
            expected.add(s)
    assert set(admissible_v_sequences(g)) == expected


def test_knot_spec_checks_genus_bound():
    with pytest.raises(ValueError):
        KnotSpec("bad", 1, VSequence((1, 1)))


def test_d_unknot_examples():
    assert d_unknot(1, 0) == 0
    assert d_unknot(2, 1) == Fraction(-1, 4)
    assert d_unknot(4, 0) == Fraction(3, 4)
    with pytest.raises(ValueError):
        d_unknot(3, 3)


def test_d_surgery_examples():
    assert d_surgery(T23, 2, 0) == Fraction(-7, 4)
    assert d_surgery(T25, 4, 1) == -2
    for n in range(1, 8):
        for i in range(n):
            assert d_surgery(U, n, i) == d_unknot(n, i)


def test_delta_examples():
    assert delta_Y(T23, 2) == 7
    assert delta_Y(T25, 4) == 8
    assert delta_Y(T23, 4) == 5
    assert delta_Y(U, 1) == 0


def test_dtable_rows_and_denominators():
    t = d_table(T23, 2)
    assert t.rows() == [(0, Fraction(-7, 4)), (1, Fraction(-1, 4))]
    for spec in BUILTIN_KNOTS.values():
        for n in range(1, 13):
            for _, d in d_table(spec, n).rows():
                assert (4 * n) % d.denominator == 0


def test_rational_surgery_is_reserved():
    assert d_surgery_rational(T23, 3, 1, 1) == d_surgery(T23, 3, 1)
    with pytest.raises(NotImplementedError, match="unimplemented"):
        d_surgery_rational(T23, 3, 2, 0)


def test_genus_two_collapse():
    for seq in admissible_v_sequences(2):
        spec = custom_knot(seq.values, 2)
        assert matching_builtin(spec, 12)


def test_custom_knot_defaults():
    spec = custom_knot((1,), 1)
    assert [b.rank for b in spec.base_fillings] == [0, 8]
    assert spec.base_fillings[1].gram == make("E8").gram
