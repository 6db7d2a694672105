import itertools
import random
from fractions import Fraction as F

import numpy as np
import pytest

from negdom.lottery import Lottery, delta, expectation, mix
from negdom.orders import ParetoBox
from negdom.relation import (
    DeclaredPair,
    GeneratorSet,
    Relation,
    Universe,
    UniverseError,
    build_closure,
    derive_incomparable,
    derive_indifferent,
    derive_strict,
    max_universe_size,
    mixture_closure,
    transitive_closure,
)

BOX = ParetoBox()
A, B, C = delta(0, 0), delta(1, 0), delta(5, -5)


def closure_oracle(n, pairs):
    """Reference closure by repeated composition over Python sets."""
    rel = {(i, i) for i in range(n)} | set(pairs)
    while True:
        extra = {(a, d) for (a, b) in rel for (c, d) in rel if b == c} - rel
        if not extra:
            return rel
        rel |= extra


class TestClosure:
    def test_transitivity_example(self):
        u = Universe([A, B, C])
        gens = GeneratorSet(declared=(DeclaredPair(A, B), DeclaredPair(B, C)))
        rel = build_closure(u, gens, BOX)
        assert rel.weakly(A, C) and not rel.weakly(C, A)

    def test_idempotent(self):
        u = Universe([A, B, C, Lottery.uniform((4, -2), (-2, 4))])
        gens = GeneratorSet(frozenset({"pareto-lift", "stochastic-dominance"}))
        one, two = build_closure(u, gens, BOX), build_closure(u, gens, BOX)
        assert one == two
        assert np.array_equal(transitive_closure(one.matrix), one.matrix)

    def test_matches_set_oracle(self):
        rng = random.Random(11)
        for _ in range(200):
            n = rng.randint(1, 7)
            pairs = {(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 10))}
            m = np.eye(n, dtype=bool)
            for i, j in pairs:
                m[i, j] = True
            got = {tuple(map(int, p)) for p in np.argwhere(transitive_closure(m))}
            assert got == closure_oracle(n, pairs)

    def test_monotone_in_generators(self):
        u = Universe([A, B, C, delta(2, 2), delta(-1, 3)])
        small = build_closure(u, GeneratorSet(frozenset({"pareto-lift"})), BOX)
        big = build_closure(u, GeneratorSet(frozenset({"pareto-lift"}), (DeclaredPair(C, A),)), BOX)
        assert not (small.matrix & ~big.matrix).any()

    def test_minimality_probe(self):
        # removing any pair that is not a generator and not on the diagonal breaks transitivity
        u = Universe([A, B, C, delta(2, 0)])
        gens = GeneratorSet(declared=(DeclaredPair(A, B), DeclaredPair(B, C), DeclaredPair(C, delta(2, 0))))
        rel = build_closure(u, gens, BOX)
        generated = {(u.index(d.src), u.index(d.dst)) for d in gens.declared}
        for i, j in np.argwhere(rel.matrix):
            if i == j or (i, j) in generated:
                continue
            m = rel.matrix.copy()
            m[i, j] = False
            assert not np.array_equal(transitive_closure(m), m)

    def test_relation_is_read_only(self):
        rel = build_closure(Universe([A, B]), GeneratorSet(frozenset({"pareto-lift"})), BOX)
        with pytest.raises(ValueError):
            rel.matrix[0, 1] = True


class TestGenerators:
    def test_pareto_lift(self):
        rel = build_closure(Universe([A, delta(1, 1), delta(4, -2)]), GeneratorSet(frozenset({"pareto-lift"})), BOX)
        assert rel.strictly(delta(1, 1), A)
        assert rel.incomparable(delta(4, -2), A)

    def test_good_expectations_needs_expectation(self):
        g = Lottery.uniform((0, 0), (4, 4))
        with pytest.raises(UniverseError, match="expectation"):
            build_closure(Universe([g]), GeneratorSet(frozenset({"good-expectations"})), BOX)

    def test_auto_insert_records_insertions(self):
        g = Lottery.uniform((0, 0), (4, 4))
        rel = build_closure(
            Universe([g]), GeneratorSet(frozenset({"good-expectations"}), auto_insert_expectations=True), BOX
        )
        assert rel.inserted == (delta(2, 2),)
        assert rel.indifferent(g, delta(2, 2))

    def test_dangling_reference(self):
        with pytest.raises(UniverseError):
            build_closure(Universe([A]), GeneratorSet(declared=(DeclaredPair(A, B),)), BOX)

    def test_dangling_json_reference(self):
        with pytest.raises(UniverseError, match="dangling"):
            GeneratorSet.from_json({"rules": [], "declared": [{"from": 0, "to": 5}]}, [A])

    def test_unknown_rule(self):
        with pytest.raises(UniverseError):
            GeneratorSet(frozenset({"magic"}))

    def test_stochastic_dominance_edges_are_strict(self):
        top, low = Lottery.uniform((-2, 4), (4, -2)), Lottery.uniform((-2, 3), (3, -2))
        rel = build_closure(Universe([top, low]), GeneratorSet(frozenset({"stochastic-dominance"})), BOX)
        assert rel.strictly(top, low)

    def test_prop1_strict_pair(self):
        f = Lottery.uniform((4, -2), (-2, 4))
        u = Universe([f, A, delta(1, 1)])
        gens = GeneratorSet(frozenset({"pareto-lift"}), (DeclaredPair(f, delta(1, 1), True),))
        assert (f, A) in derive_strict(build_closure(u, gens, BOX))


class TestDerived:
    def test_reflexive_only(self):
        u = Universe([A, B, C])
        rel = Relation(u, np.eye(3, dtype=bool))
        assert derive_strict(rel) == set()
        assert len(derive_incomparable(rel)) == 6

    def test_indifferent_not_strict(self):
        u = Universe([A, B])
        rel = Relation.from_pairs(u, [(A, B), (B, A)])
        assert (A, B) in derive_indifferent(rel) and (A, B) not in derive_strict(rel)

    def test_partition(self):
        u = Universe([A, B, C, delta(2, 2), Lottery.uniform((4, -2), (-2, 4))])
        rel = build_closure(u, GeneratorSet(frozenset({"pareto-lift", "stochastic-dominance"})), BOX)
        strict, ind, inc = derive_strict(rel), derive_indifferent(rel), derive_incomparable(rel)
        below = {(g, f) for f, g in strict}
        for f, g in itertools.permutations(u, 2):
            classes = [(f, g) in s for s in (strict, ind, inc, below)]
            assert sum(classes) == 1


class TestUniverse:
    def test_canonical_and_deduplicated(self):
        assert list(Universe([C, A, B, A])) == sorted({A, B, C})

    def test_dimension_shared(self):
        with pytest.raises(UniverseError):
            Universe([A, delta(0, 0, 0)])

    def test_json_round_trip(self):
        u = mixture_closure([A, B], [F(1, 2)], 1)
        back, _ = Universe.from_json(u.to_json())
        assert back == u and back.mixture == u.mixture

    def test_plain_list_json(self):
        u = Universe([A, B])
        assert isinstance(u.to_json(), list)
        assert Universe.from_json(u.to_json())[0] == u


class TestMixtureClosure:
    def test_depth_one(self):
        u = mixture_closure([A, delta(1, 1)], [F(1, 2)], 1)
        assert set(u) == {A, delta(1, 1), Lottery.uniform((0, 0), (1, 1))}

    def test_depth_two_contains_nested(self):
        a, b, c = delta(0, 0), delta(1, 0), delta(0, 1)
        u = mixture_closure([a, b, c], [F(1, 2)], 2)
        assert mix(a, mix(b, c, F(1, 2)), F(1, 2)) in u

    def test_depth_zero(self):
        assert set(mixture_closure([A, B], [F(1, 2)], 0)) == {A, B}

    def test_depth_guard(self):
        with pytest.raises(UniverseError):
            mixture_closure([A, B], [F(1, 2)], 4)

    def test_alpha_range(self):
        with pytest.raises(UniverseError):
            mixture_closure([A, B], [F(1)], 1)

    def test_size_cap(self):
        seeds = [delta(i, 0) for i in range(6)]
        with pytest.raises(UniverseError, match="guard"):
            mixture_closure(seeds, [F(1, 2)], 2, cap=50)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("NEGDOM_MAX_UNIVERSE", "12")
        assert max_universe_size() == 12
        with pytest.raises(UniverseError):
            mixture_closure([delta(i, 0) for i in range(5)], [F(1, 2)], 1)

    def test_expectations_are_closed_under_mixing(self):
        u = mixture_closure([A, delta(2, 2), delta(4, -2)], [F(1, 2)], 2)
        for f in u:
            for g in u:
                e = expectation(mix(f, g, F(1, 2)))
                assert e == tuple((x + y) / 2 for x, y in zip(expectation(f), expectation(g)))
