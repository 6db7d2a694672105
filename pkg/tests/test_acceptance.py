"""The ten acceptance criteria, each checked exactly and against its time budget.

Every criterion prints one PASS/FAIL line to the terminal even under output
capture.  Run ``pytest tests/test_acceptance.py -v`` for just this suite.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from conftest import random_lottery
from negdom.axioms import AxiomVerdict, check_axiom
from negdom.dominance import ORACLE_GUARD, brute_force_dominance_oracle, check_stochastic_dominance, naive_upper_set_dominance
from negdom.lottery import Lottery, delta, expectation, mix, outcome
from negdom.orders import Lines, ParetoBox, Verdict
from negdom.relation import DeclaredPair, GeneratorSet, Universe, build_closure, transitive_closure
from negdom.scenarios import QUADRUPLE, consistency_universe, quadruple_universe, replay, replay_lotteries, reverify
from negdom.search import report_json, reverify_finding, search_conjecture
from negdom.utility import LinearUtility, StepUtility, eval_utility, family_compare, positive_linear_family, step_pair

BOX = ParetoBox()
LINES = Lines(2, F(1, 2))
FSTAR = Lottery.uniform((4, -2), (-2, 4))
ZERO = delta(0, 0)


@pytest.fixture
def criterion(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    @contextmanager
    def run(number, title, budget):
        start = time.perf_counter()
        status = "FAIL"
        try:
            yield
            elapsed = time.perf_counter() - start
            assert elapsed < budget, f"took {elapsed:.2f}s, budget {budget}s"
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            line = f"[{status}] criterion {number:>2}: {title} ({elapsed:.2f}s / {budget}s)"
            if reporter is not None:
                reporter.write_line("")
                reporter.write_line(line)
            else:
                print(line)

    return run


def contradiction(sid, **params):
    r = replay(sid, **params)
    assert r.verdict == "contradiction-reproduced", sid
    assert reverify(r) == [], sid
    return r


def test_criterion_01_prop1(criterion):
    with criterion(1, "cross lottery strictly above the origin violates negative dominance", 1):
        r = contradiction("prop1")
        rel = r.relation
        assert rel.strictly(FSTAR, ZERO)
        assert all(BOX.incomparable(o, outcome(0, 0)) for o in FSTAR.support)
        nd = check_axiom(rel, BOX, "negative-dominance")
        assert nd.verdict is AxiomVerdict.VIOLATED
        assert [(w["f"], w["g"]) for w in nd.witnesses] == [(FSTAR, ZERO)]


def test_criterion_02_prop2(criterion):
    with criterion(2, "good-expectations chain at a=3", 1):
        r = contradiction("prop2", a=3)
        facts = r.step_facts()
        chain = ["f ∼ (0,0)", "f++ ≻ (0,0)", "f++ ∼ (-3/2,3)/(3,-3/2)", "(-3/2,3)/(3,-3/2) ≻ (0,0)"]
        positions = [facts.index(x) for x in chain]
        assert positions == sorted(positions)
        final = Lottery.uniform((F(-3, 2), 3), (3, F(-3, 2)))
        assert r.witnesses[0]["f"] == final and r.witnesses[0]["g"] == ZERO
        nd = check_axiom(r.relation, BOX, "negative-dominance")
        assert any(w["f"] == final and w["g"] == ZERO for w in nd.witnesses)


@pytest.mark.parametrize(
    "sid,params,final,base",
    [
        ("prop3", {}, Lottery.uniform((-1, 1), (1, -1)), delta(F(-1, 2), F(-1, 2))),
        ("prop4", {"l": 2, "m": F(1, 2)}, Lottery.uniform((F(-2, 3), 1), (1, F(-2, 3))), ZERO),
        ("prop5", {"alpha": F(1, 2), "beta": F(1, 2)}, Lottery.uniform((F(-3, 2), 3), (3, F(-3, 2))), ZERO),
        ("initial-fact", {}, Lottery.uniform((F(-3, 2), 3), (3, F(-3, 2))), ZERO),
        ("weak-ue", {}, Lottery.uniform((F(-3, 2), 4), (4, F(-3, 2))), delta(-1, -1)),
        ("kfact", {"k": 4}, Lottery.uniform((F(-3, 2), 4), (4, F(-3, 2))), delta(-1, -1)),
    ],
)
def test_criterion_03_contradiction_replays(criterion, sid, params, final, base):
    with criterion(3, f"{sid} contradiction", 1):
        r = contradiction(sid, **params)
        w = r.witnesses[0]
        assert (w["f"], w["g"]) == (final, base)
        order = LINES if sid == "prop4" else BOX
        assert all(order.incomparable(o, p) for o in final.support for p in base.support)


def test_criterion_04_dominance_divergence(criterion):
    with criterion(4, "upper-set test and coupling test diverge", 1):
        eps = F(1, 12)
        f = Lottery({outcome(2, 2): F(2, 3) + eps, outcome(0, 0): F(1, 3) - eps})
        g = Lottery.uniform((2, 0), (0, 2), (2, 2))
        assert naive_upper_set_dominance(f, g, BOX) is True
        assert check_stochastic_dominance(f, g, BOX).dominates is False
        top = Lottery.uniform(QUADRUPLE["a+"], QUADRUPLE["b+"])
        low = Lottery.uniform(QUADRUPLE["a"], QUADRUPLE["b"])
        v = check_stochastic_dominance(top, low, BOX)
        assert v.dominates and v.witness.violations(top, low, BOX) == []


def test_criterion_05_consistency(criterion):
    with criterion(5, "one relation passes every compatible axiom at once", 10):
        r = replay("prop9")
        assert r.verdict == "consistency-verified"
        assert 50 <= len(r.relation.universe) <= 200
        for f in replay_lotteries():
            assert f in r.relation.universe
            assert Lottery.degenerate(expectation(f)) in r.relation.universe
        verdicts = {rep.axiom.name: rep for rep in r.reports}
        for name in ("negative-dominance", "good-expectations", "stochastic-dominance-respect", "comparable-independence", "preorder"):
            assert verdicts[name].verdict is AxiomVerdict.HOLDS, name
        ci = verdicts["comparable-independence"].details
        assert ci["alphas"] == [F(1, 2)] and ci["closure_depth"] == 2
        assert reverify(r) == []


def test_criterion_06_vst(criterion):
    with criterion(6, "strict betweenness-style transfer fails on the quadruple", 1):
        u = quadruple_universe()
        rel = build_closure(u, GeneratorSet(frozenset({"pareto-lift", "stochastic-dominance"})), BOX)
        top = Lottery.uniform(QUADRUPLE["a+"], QUADRUPLE["b+"])
        low = Lottery.uniform(QUADRUPLE["a"], QUADRUPLE["b"])
        assert rel.strictly(top, low)
        report = check_axiom(rel, BOX, "vst")
        assert report.verdict is AxiomVerdict.VIOLATED
        assert replay("vst").verdict == "contradiction-reproduced"


@pytest.mark.parametrize("sid", ["qual-a1", "qual-a2", "qual-a3"])
def test_criterion_07_qualitative(criterion, sid):
    with criterion(7, f"{sid} contradiction from chain dimensions", 1):
        r = contradiction(sid)
        w = r.witnesses[0]
        assert {c["verdict"] for c in w["support_comparisons"]} == {"incomparable"}
        assert r.manifest["order"].startswith("qual:")


def test_criterion_08_properties(criterion):
    with criterion(8, "randomised invariants", 60):
        rng = random.Random(808)
        # (a) flow against brute force
        checked = 0
        while checked < 500:
            order = BOX if checked % 2 else LINES
            f, g = random_lottery(rng, 3, span=2, den=2), random_lottery(rng, 3, span=2, den=2)
            if len(f.support) * len(g.support) > ORACLE_GUARD:
                continue
            assert check_stochastic_dominance(f, g, order).dominates == brute_force_dominance_oracle(f, g, order).dominates
            checked += 1
        # (b) transitivity of the lines order
        for _ in range(10_000):
            a = outcome(F(rng.randint(-8, 8), 2), F(rng.randint(-8, 8), 2))
            b = outcome(a[0] - F(rng.randint(-2, 4), 2), a[1] - F(rng.randint(-2, 4), 2))
            c = outcome(b[0] - F(rng.randint(-2, 4), 2), b[1] - F(rng.randint(-2, 4), 2))
            if LINES.weakly(a, b) and LINES.weakly(b, c):
                assert LINES.weakly(a, c)
        # (c) sandwich for good lotteries
        for i in range(10_000):
            order = BOX if i % 2 else LINES
            pts = [outcome(F(rng.randint(-8, 8), 2), F(rng.randint(-8, 8), 2))]
            for _ in range(rng.randint(0, 3)):
                x, y = pts[-1]
                dx = F(rng.randint(0 if order is BOX else -4, 4), 2)
                floor = max(-LINES.l * dx, -LINES.m * dx) if order is LINES else 0
                pts.append(outcome(x - dx, y - floor - F(rng.randint(1, 4), 2)))
            f = Lottery.uniform(*pts)
            assert f.is_good(order)
            e = expectation(f)
            assert any(order.weakly(o, e) for o in f.support) and any(order.weakly(e, o) for o in f.support)
        # (d) utilities are mixture-linear
        members = [LinearUtility(2, -3, 1), StepUtility("plus", outcome(0, 0)), StepUtility("minus", outcome(1, -1))]
        for i in range(10_000):
            f, g = random_lottery(rng, 3), random_lottery(rng, 3)
            a = F(rng.randint(0, 8), 8)
            u = members[i % 3]
            assert eval_utility(u, mix(f, g, a)) == a * eval_utility(u, f) + (1 - a) * eval_utility(u, g)
        # (e) closure probes
        for _ in range(50):
            u = Universe([random_lottery(rng, 2, span=2, den=1) for _ in range(8)])
            m = list(u)
            declared = tuple(DeclaredPair(rng.choice(m), rng.choice(m)) for _ in range(2))
            gens = GeneratorSet(frozenset({"pareto-lift", "stochastic-dominance"}), declared)
            rel = build_closure(u, gens, BOX)
            assert (transitive_closure(rel.matrix) == rel.matrix).all()
            more = GeneratorSet(gens.rules, declared + (DeclaredPair(rng.choice(m), rng.choice(m)),))
            assert not (rel.matrix & ~build_closure(u, more, BOX).matrix).any()


def integer_lottery(rng):
    pts = list({outcome(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(rng.randint(1, 3))})
    cuts = sorted(rng.sample(range(1, 12), len(pts) - 1))
    weights = [b - a for a, b in zip([0] + cuts, cuts + [12])]
    return Lottery({p: F(w, 12) for p, w in zip(pts, weights)})


def test_criterion_09_utility_sets(criterion):
    with criterion(9, "utility families match expectations and split incomparable supports", 10):
        rng = random.Random(909)
        # expectations have denominator 12 and span at most 10, so a slope of 1/1000 cannot flip a sign
        eps = F(1, 1000)
        family = positive_linear_family([(1, eps), (eps, 1)])
        for _ in range(1000):
            f, g = integer_lottery(rng), integer_lottery(rng)
            assert family_compare(family, f, g) is BOX.compare(expectation(f), expectation(g))
        hits = 0
        while hits < 1000:
            ref = outcome(rng.randint(-3, 3), rng.randint(-3, 3))
            pts = []
            for _ in range(rng.randint(1, 3)):
                d = rng.randint(1, 4)
                pts.append(outcome(ref[0] + d, ref[1] - rng.randint(1, 4)) if rng.random() < 0.5 else outcome(ref[0] - d, ref[1] + rng.randint(1, 4)))
            f = Lottery.uniform(*set(pts))
            assert all(BOX.incomparable(o, ref) for o in f.support)
            assert family_compare(step_pair(ref), f, Lottery.degenerate(ref)) is Verdict.INCOMPARABLE
            hits += 1


def test_criterion_10_search_determinism(criterion):
    with criterion(10, "seeded open-question search is reproducible and re-verifies", 120):
        first = search_conjecture("open-q3", seed=7)
        second = search_conjecture("open-q3", seed=7)
        assert report_json(first) == report_json(second)
        assert first.witnesses
        for finding in first.witnesses:
            assert reverify_finding(finding)


def test_consistency_universe_is_deterministic():
    assert consistency_universe() == consistency_universe()
