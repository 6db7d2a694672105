import random
from fractions import Fraction as F

import pytest

from conftest import random_lottery, random_outcome
from negdom.axioms import AxiomVerdict
from negdom.lottery import DimensionMismatch, Lottery, delta, expectation, mix, outcome
from negdom.orders import Verdict
from negdom.utility import (
    LinearUtility,
    StepUtility,
    UtilityError,
    UtilityFamily,
    check_pareto_respect,
    eval_utility,
    family_compare,
    positive_linear_family,
    step_pair,
)

FSTAR = Lottery.uniform((4, -2), (-2, 4))
SUM = LinearUtility(1, 1)


class TestEval:
    def test_sum_on_cross(self):
        assert eval_utility(SUM, FSTAR) == 2

    def test_step_at_origin(self):
        assert eval_utility(StepUtility("plus", outcome(0, 0)), delta(1, 1)) == 1
        assert eval_utility(StepUtility("minus", outcome(0, 0)), delta(-1, -1)) == 0
        assert eval_utility(StepUtility("minus", outcome(0, 0)), delta(-1, 1)) == 1

    def test_degenerate(self):
        u = LinearUtility(2, 3, 1)
        assert eval_utility(u, delta(1, 1)) == u.at(outcome(1, 1)) == 6

    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            eval_utility(SUM, delta(1, 1, 1))

    def test_bad_polarity(self):
        with pytest.raises(UtilityError):
            StepUtility("both", outcome(0, 0))


class TestFamily:
    def test_step_family_splits_cross(self):
        fam = UtilityFamily((StepUtility("plus", outcome(0, 0)), StepUtility("minus", outcome(0, 0)), SUM))
        assert family_compare(fam, FSTAR, delta(0, 0)) is Verdict.INCOMPARABLE

    def test_equal_expectations_tie_under_linear(self):
        rng = random.Random(1)
        fam = UtilityFamily(tuple(LinearUtility(rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(4)))
        f = FSTAR
        g = Lottery.uniform((0, 0), (2, 2))
        assert expectation(f) == expectation(g)
        assert family_compare(fam, f, g) is Verdict.EQUIVALENT

    def test_self(self):
        assert family_compare(step_pair(outcome(0, 0)), FSTAR, FSTAR) is Verdict.EQUIVALENT

    def test_empty(self):
        with pytest.raises(UtilityError):
            UtilityFamily(())

    def test_json(self):
        data = [{"kind": "linear", "a": "1", "b": "2", "k": "0"}, {"kind": "step", "polarity": "plus", "threshold": ["0", "0"]}]
        fam = UtilityFamily.from_json(data)
        assert fam.to_json() == data
        assert UtilityFamily.from_json(fam.to_json()) == fam

    def test_positive_linear_rejects_nonpositive(self):
        with pytest.raises(UtilityError):
            positive_linear_family([(1, 0)])


class TestParetoRespect:
    def dominating_pairs(self, n=1000):
        rng = random.Random(2)
        out = []
        while len(out) < n:
            o, p = random_outcome(rng), random_outcome(rng)
            if o[0] >= p[0] and o[1] >= p[1]:
                out.append((o, p))
            elif p[0] >= o[0] and p[1] >= o[1]:
                out.append((p, o))
        return out

    def test_positive_linear(self):
        fam = positive_linear_family([(1, 2), (F(1, 3), 5)])
        r = check_pareto_respect(fam, self.dominating_pairs())
        assert r.verdict is AxiomVerdict.HOLDS and r.details["instances"] == 1000

    def test_steps(self):
        fam = UtilityFamily(step_pair(outcome(1, -1)).members + step_pair(outcome(0, 2)).members)
        assert check_pareto_respect(fam, self.dominating_pairs()).verdict is AxiomVerdict.HOLDS

    def test_decreasing(self):
        r = check_pareto_respect(UtilityFamily((LinearUtility(-1, 1),)), [(outcome(1, 0), outcome(0, 0))])
        assert r.verdict is AxiomVerdict.VIOLATED
        assert r.witnesses[0]["o"] == outcome(1, 0)


def test_mixture_preservation():
    rng = random.Random(4)
    members = [LinearUtility(2, -1, 3), StepUtility("plus", outcome(0, 0)), StepUtility("minus", outcome(1, -1))]
    for _ in range(500):
        f, g = random_lottery(rng), random_lottery(rng)
        a = F(rng.randint(0, 12), 12)
        for u in members:
            assert eval_utility(u, mix(f, g, a)) == a * eval_utility(u, f) + (1 - a) * eval_utility(u, g)
