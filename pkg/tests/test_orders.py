from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import outcomes
from negdom.lottery import DimensionMismatch, outcome
from negdom.orders import (
    KVerdict,
    Lines,
    OrderError,
    ParetoBox,
    Verdict,
    compare,
    k_classify,
    parse_order,
)

BOX = ParetoBox()
LINES = Lines(2, F(1, 2))


class TestCompare:
    def test_box_examples(self):
        assert compare(BOX, outcome(1, 1), outcome(0, 0)) is Verdict.ABOVE
        assert compare(BOX, outcome(4, -2), outcome(0, 0)) is Verdict.INCOMPARABLE
        assert compare(BOX, outcome(0, 0), outcome(1, 1)) is Verdict.BELOW

    def test_lines_examples(self):
        assert compare(LINES, outcome(2, -2), outcome(0, 0)) is Verdict.INCOMPARABLE
        assert compare(LINES, outcome(1, 3), outcome(0, 0)) is Verdict.ABOVE

    def test_lines_boundary_is_weak(self):
        # (1,-1/2) sits on the shallow line through the origin
        assert compare(LINES, outcome(1, F(-1, 2)), outcome(0, 0)) is Verdict.ABOVE

    def test_box_any_dimension(self):
        assert compare(BOX, outcome(1, 2, 3), outcome(1, 2, 2)) is Verdict.ABOVE

    def test_lines_needs_two_dimensions(self):
        with pytest.raises((OrderError, DimensionMismatch)):
            LINES.weakly(outcome(1, 2, 3), outcome(0, 0, 0))

    @pytest.mark.parametrize("l,m", [(0, 1), (-1, 2), (2, 2)])
    def test_lines_parameters(self, l, m):
        with pytest.raises(OrderError):
            Lines(l, m)

    def test_dimension_mismatch(self):
        with pytest.raises((OrderError, DimensionMismatch)):
            BOX.weakly(outcome(0, 0), outcome(0, 0, 0))

    @given(outcomes(), outcomes())
    def test_mirror(self, o, p):
        for order in (BOX, LINES):
            assert compare(order, o, p).mirror() is compare(order, p, o)

    @given(outcomes())
    def test_reflexive(self, o):
        assert compare(BOX, o, o) is Verdict.EQUIVALENT
        assert compare(LINES, o, o) is Verdict.EQUIVALENT

    @given(outcomes(), outcomes())
    def test_box_equivalence_is_identity(self, o, p):
        if compare(BOX, o, p) is Verdict.EQUIVALENT:
            assert o == p


class TestParse:
    def test_specs(self):
        assert isinstance(parse_order("pareto"), ParetoBox)
        lines = parse_order("lines:2,1/2")
        assert isinstance(lines, Lines) and lines.spec == "lines:2,1/2"

    @pytest.mark.parametrize("spec", ["", "lines:2", "lines:a,b", "box", "lines:1,1"])
    def test_bad_specs(self, spec):
        with pytest.raises(OrderError):
            parse_order(spec)


class TestKClassify:
    def test_worked_values(self):
        a, b = outcome(0, 4), outcome(0, -4)
        assert k_classify(4, a, b, outcome(0, -1)) is KVerdict.FORCED_PREFERRED
        assert k_classify(4, a, b, outcome(0, 0)) is KVerdict.FORCED_INCOMPARABLE
        assert k_classify(4, a, b, outcome(0, 1)) is KVerdict.FORCED_DISPREFERRED
        assert k_classify(4, outcome(4, 0), outcome(4, -4), outcome(4, -2)) is KVerdict.FORCED_INCOMPARABLE

    def test_short_segment_boundaries(self):
        a, b = outcome(4, 0), outcome(4, -4)
        assert k_classify(4, a, b, outcome(4, F(-3, 2))) is KVerdict.FORCED_DISPREFERRED
        assert k_classify(4, a, b, outcome(4, F(-5, 2))) is KVerdict.FORCED_PREFERRED
        assert k_classify(4, a, b, outcome(4, F(-7, 4))) is KVerdict.FORCED_INCOMPARABLE

    def test_endpoint_order_irrelevant(self):
        a, b, c = outcome(0, 4), outcome(0, -4), outcome(0, F(3, 2))
        assert k_classify(4, a, b, c) is k_classify(4, b, a, c)

    def test_definition_reading(self):
        a, b = outcome(0, 4), outcome(0, -4)
        # n = 8, k = 4: band half-width 1/2, forcing from distance 2
        assert k_classify(4, a, b, outcome(0, -1), "definition") is KVerdict.UNCONSTRAINED
        assert k_classify(4, a, b, outcome(0, -2), "definition") is KVerdict.FORCED_PREFERRED
        assert k_classify(4, a, b, outcome(0, F(1, 4)), "definition") is KVerdict.FORCED_INCOMPARABLE

    @pytest.mark.parametrize(
        "a,b,c",
        [
            ((0, 4), (0, -4), (1, 0)),  # off the segment
            ((0, 4), (0, -4), (0, 5)),  # beyond an endpoint
            ((0, 0), (1, 1), (0, 0)),  # not unidimensional
            ((0, 0), (0, 0), (0, 0)),  # degenerate segment
        ],
    )
    def test_preconditions(self, a, b, c):
        with pytest.raises(OrderError):
            k_classify(4, outcome(*a), outcome(*b), outcome(*c))

    def test_k_positive(self):
        with pytest.raises(OrderError):
            k_classify(0, outcome(0, 4), outcome(0, -4), outcome(0, 0))
