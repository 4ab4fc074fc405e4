from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from intervalgames.arith import (
    Anchor,
    Interval,
    as_rational,
    format_rational,
    gap_components,
    parse_rational,
    place_subinterval,
)
from intervalgames.errors import NotContainedError, PlacementInfeasibleError

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=997)


class TestRationalWire:
    def test_parse_forms(self):
        assert parse_rational("5") == 5
        assert parse_rational("5/1") == 5
        assert parse_rational("-3/7") == F(-3, 7)
        assert parse_rational("+2/4") == F(1, 2)

    @pytest.mark.parametrize("bad", ["", "0.5", "1/0", "1/-2", "a/b", "1 /2", "nan"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_format(self):
        assert format_rational(F(5)) == "5"
        assert format_rational(F(-3, 7)) == "-3/7"

    @given(fractions)
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(TypeError):
            Interval(0.0, 1)


class TestInterval:
    def test_length_unit(self):
        assert Interval(0, 1).length == 1

    def test_length_exact_fraction(self):
        # independent arithmetic: 1/2 - 1/3
        assert Interval(F(1, 3), F(1, 2)).length == F(1, 2) - F(1, 3) == F(1, 6)

    def test_length_degenerate(self):
        assert Interval(2, 2).length == 0

    def test_reversed_endpoints_rejected(self):
        with pytest.raises(ValueError):
            Interval(1, 0)

    def test_contains(self):
        assert Interval(0, 1).contains(Interval(F(1, 4), F(3, 4)))
        assert Interval(0, 1).contains(Interval(0, 1))
        assert not Interval(0, 1).contains(Interval(F(1, 2), F(3, 2)))

    @given(fractions, fractions, fractions, fractions)
    def test_contains_implies_shorter(self, a, b, c, d):
        lo, hi = min(a, b), max(a, b)
        lo2, hi2 = min(c, d), max(c, d)
        outer, inner = Interval(lo, hi), Interval(lo2, hi2)
        if outer.contains(inner):
            assert inner.length <= outer.length


class TestPlacement:
    def test_right_aligned(self):
        assert place_subinterval(Interval(0, 1), F(1, 2), Anchor.right()) == Interval(
            F(1, 2), 1
        )

    def test_centered_exact(self):
        got = place_subinterval(Interval(0, 1), F(2, 5), Anchor.centered(F(1, 2)))
        assert got == Interval(F(3, 10), F(7, 10))

    def test_centered_infeasible(self):
        with pytest.raises(PlacementInfeasibleError):
            place_subinterval(Interval(0, 1), F(1, 2), Anchor.centered(F(1, 10)))

    def test_offset_bounds(self):
        assert place_subinterval(Interval(0, 1), F(1, 4), Anchor.offset(F(3, 4))) == Interval(
            F(3, 4), 1
        )
        with pytest.raises(PlacementInfeasibleError):
            place_subinterval(Interval(0, 1), F(1, 4), Anchor.offset(F(7, 8)))

    def test_zero_length_rejected(self):
        with pytest.raises(PlacementInfeasibleError):
            place_subinterval(Interval(0, 1), F(0), Anchor.left())

    @given(
        fractions,
        st.fractions(min_value=F(1, 50), max_value=5, max_denominator=97),
        st.fractions(min_value=0, max_value=1, max_denominator=101),
        st.fractions(min_value=F(1, 89), max_value=1, max_denominator=89),
    )
    def test_placement_exactness(self, lo, width, offset_frac, len_frac):
        host = Interval(lo, lo + width)
        length = width * len_frac
        anchors = [
            Anchor.left(),
            Anchor.right(),
            Anchor.offset((host.length - length) * offset_frac),
        ]
        for anchor in anchors:
            got = place_subinterval(host, length, anchor)
            assert got.length == length
            assert host.contains(got)


class TestGapComponents:
    def test_middle_removed(self):
        assert gap_components(Interval(0, 1), Interval(F(1, 3), F(2, 3))) == [
            Interval(0, F(1, 3)),
            Interval(F(2, 3), 1),
        ]

    def test_left_aligned_removed(self):
        assert gap_components(Interval(0, 1), Interval(0, F(1, 3))) == [
            Interval(F(1, 3), 1)
        ]

    def test_everything_removed(self):
        assert gap_components(Interval(0, 1), Interval(0, 1)) == []

    def test_degenerate_removed_splits_in_two(self):
        got = gap_components(Interval(0, 1), Interval(F(1, 2), F(1, 2)))
        assert got == [Interval(0, F(1, 2)), Interval(F(1, 2), 1)]

    def test_not_contained(self):
        with pytest.raises(NotContainedError):
            gap_components(Interval(0, 1), Interval(F(1, 2), F(3, 2)))

    @given(
        fractions,
        st.fractions(min_value=F(1, 20), max_value=3, max_denominator=53),
        st.fractions(min_value=0, max_value=1, max_denominator=59),
        st.fractions(min_value=0, max_value=1, max_denominator=61),
    )
    def test_lengths_sum_exactly(self, lo, width, a, b):
        outer = Interval(lo, lo + width)
        cut_lo = lo + width * min(a, b)
        cut_hi = lo + width * max(a, b)
        removed = Interval(cut_lo, cut_hi)
        pieces = gap_components(outer, removed)
        assert sum((p.length for p in pieces), F(0)) == outer.length - removed.length
        for piece in pieces:
            assert outer.contains(piece)
        for left, right in zip(pieces, pieces[1:]):
            assert left.hi <= right.lo


@given(fractions, fractions)
def test_rational_addition_round_trips(a, b):
    assert (a + b) - b == a
