"""Finite universes of lotteries and the least preorder generated over them."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

from .dominance import check_stochastic_dominance
from .lottery import Lottery, Outcome, RationalLike, expectation, format_rational, is_good, is_unidimensional, mix, rational
from .orders import OutcomeOrder

RULES = (
    "pareto-lift",
    "good-expectations",
    "stochastic-dominance",
    "unidimensional-expectations",
    "expectationalism",
)
DEFAULT_MAX_UNIVERSE = 10_000
MAX_MIXTURE_DEPTH = 3


class UniverseError(ValueError):
    pass


def max_universe_size() -> int:
    raw = os.environ.get("NEGDOM_MAX_UNIVERSE")
    return int(raw) if raw else DEFAULT_MAX_UNIVERSE


@dataclass(frozen=True)
class MixtureManifest:
    """Records that a universe contains the mixture closure of ``seeds``."""

    seeds: tuple[Lottery, ...]
    alphas: tuple[Fraction, ...]
    depth: int


class Universe:
    """A deduplicated, canonically ordered collection of lotteries of one dimension."""

    def __init__(self, lotteries: Iterable[Lottery], mixture: MixtureManifest | None = None):
        uniq = sorted(set(lotteries))
        dims = {f.dim for f in uniq}
        if len(dims) > 1:
            raise UniverseError(f"mixed dimensions in universe: {sorted(dims)}")
        self.lotteries: tuple[Lottery, ...] = tuple(uniq)
        self._index = {f: i for i, f in enumerate(self.lotteries)}
        self.mixture = mixture
        self.dim = dims.pop() if dims else None

    def __len__(self) -> int:
        return len(self.lotteries)

    def __iter__(self) -> Iterator[Lottery]:
        return iter(self.lotteries)

    def __getitem__(self, i: int) -> Lottery:
        return self.lotteries[i]

    def __contains__(self, f: object) -> bool:
        return f in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Universe) and self.lotteries == other.lotteries and self.mixture == other.mixture

    def index(self, f: Lottery) -> int:
        try:
            return self._index[f]
        except KeyError:
            raise UniverseError(f"{f} is not in the universe") from None

    def get(self, f: Lottery) -> int | None:
        return self._index.get(f)

    def degenerate(self, o: Outcome) -> int | None:
        return self._index.get(Lottery.degenerate(o))

    def extended(self, more: Iterable[Lottery]) -> "Universe":
        return Universe([*self.lotteries, *more], self.mixture)

    def to_json(self) -> Any:
        items = [f.to_json() for f in self.lotteries]
        if self.mixture is None:
            return items
        return {
            "lotteries": items,
            "mixture_closure": {
                "seeds": [self.index(s) for s in self.mixture.seeds],
                "alphas": [format_rational(a) for a in self.mixture.alphas],
                "depth": self.mixture.depth,
            },
        }

    @classmethod
    def from_json(cls, data: Any) -> tuple["Universe", list[Lottery]]:
        """Parse a universe; also returns the lotteries in file order for index lookups."""
        meta = None
        if isinstance(data, dict):
            meta = data.get("mixture_closure")
            data = data.get("lotteries")
        if not isinstance(data, list):
            raise UniverseError("universe JSON must be a list of lotteries")
        raw = [Lottery.from_json(d) for d in data]
        mixture = None
        if meta is not None:
            mixture = MixtureManifest(
                tuple(raw[i] for i in meta["seeds"]),
                tuple(rational(a) for a in meta["alphas"]),
                int(meta["depth"]),
            )
        return cls(raw, mixture), raw


@dataclass(frozen=True)
class DeclaredPair:
    """An explicitly asserted weak preference ``src ⪰ dst`` (both ways when ``both``)."""

    src: Lottery
    dst: Lottery
    both: bool = False
    tag: str = "declared"


@dataclass(frozen=True)
class GeneratorSet:
    rules: frozenset[str] = frozenset()
    declared: tuple[DeclaredPair, ...] = ()
    auto_insert_expectations: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rules", frozenset(self.rules))
        object.__setattr__(self, "declared", tuple(self.declared))
        unknown = self.rules - set(RULES)
        if unknown:
            raise UniverseError(f"unknown generator rules: {sorted(unknown)}")

    def with_declared(self, *pairs: DeclaredPair) -> "GeneratorSet":
        return GeneratorSet(self.rules, self.declared + pairs, self.auto_insert_expectations)

    def to_json(self, universe: Universe) -> dict[str, Any]:
        return {
            "rules": sorted(self.rules),
            "declared": [
                {"from": universe.index(d.src), "to": universe.index(d.dst), "both": d.both, "tag": d.tag}
                for d in self.declared
            ],
            "auto_insert_expectations": self.auto_insert_expectations,
        }

    @classmethod
    def from_json(cls, data: Any, lotteries: Sequence[Lottery]) -> "GeneratorSet":
        if not isinstance(data, dict):
            raise UniverseError("generator JSON must be an object")
        declared = []
        for d in data.get("declared", []):
            try:
                src, dst = lotteries[d["from"]], lotteries[d["to"]]
            except (IndexError, KeyError, TypeError) as exc:
                raise UniverseError(f"dangling generator reference {d!r}") from exc
            declared.append(DeclaredPair(src, dst, bool(d.get("both", False)), d.get("tag", "declared")))
        return cls(frozenset(data.get("rules", [])), tuple(declared), bool(data.get("auto_insert_expectations", False)))


class CachedOrder(OutcomeOrder):
    """Memoises ``weakly`` for repeated comparisons over a fixed outcome pool."""

    def __init__(self, order: OutcomeOrder):
        self.base = order
        self._cache: dict[tuple[Outcome, Outcome], bool] = {}

    def weakly(self, o: Outcome, p: Outcome) -> bool:
        key = (o, p)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self.base.weakly(o, p)
        return hit

    @property
    def spec(self) -> str:
        return self.base.spec


class Relation:
    """A weak-preference matrix over a universe; ``matrix[i, j]`` means universe[i] ⪰ universe[j]."""

    def __init__(self, universe: Universe, matrix: np.ndarray, inserted: tuple[Lottery, ...] = ()):
        if matrix.shape != (len(universe), len(universe)):
            raise UniverseError("matrix shape does not match the universe")
        self.universe = universe
        self.matrix = np.array(matrix, dtype=bool)
        self.matrix.setflags(write=False)
        self.inserted = inserted

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[Lottery, Lottery]]) -> "Relation":
        """A raw (not closed) relation: the diagonal plus the given pairs."""
        m = np.eye(len(universe), dtype=bool)
        for f, g in pairs:
            m[universe.index(f), universe.index(g)] = True
        return cls(universe, m)

    def weakly(self, f: Lottery, g: Lottery) -> bool:
        return bool(self.matrix[self.universe.index(f), self.universe.index(g)])

    def strictly(self, f: Lottery, g: Lottery) -> bool:
        return self.weakly(f, g) and not self.weakly(g, f)

    def indifferent(self, f: Lottery, g: Lottery) -> bool:
        return self.weakly(f, g) and self.weakly(g, f)

    def incomparable(self, f: Lottery, g: Lottery) -> bool:
        return not self.weakly(f, g) and not self.weakly(g, f)

    @property
    def strict_matrix(self) -> np.ndarray:
        return self.matrix & ~self.matrix.T

    def strict_index_pairs(self) -> list[tuple[int, int]]:
        return [tuple(map(int, p)) for p in np.argwhere(self.strict_matrix)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Relation)
            and self.universe == other.universe
            and np.array_equal(self.matrix, other.matrix)
        )

    def __len__(self) -> int:
        return int(self.matrix.sum())


def transitive_closure(matrix: np.ndarray) -> np.ndarray:
    m = np.array(matrix, dtype=bool)
    np.fill_diagonal(m, True)
    for k in range(m.shape[0]):
        m |= np.outer(m[:, k], m[k, :])
    return m


def derive_strict(rel: Relation) -> set[tuple[Lottery, Lottery]]:
    u = rel.universe
    return {(u[i], u[j]) for i, j in np.argwhere(rel.strict_matrix)}


def derive_indifferent(rel: Relation) -> set[tuple[Lottery, Lottery]]:
    m = rel.matrix & rel.matrix.T
    u = rel.universe
    return {(u[i], u[j]) for i, j in np.argwhere(m) if i != j}


def derive_incomparable(rel: Relation) -> set[tuple[Lottery, Lottery]]:
    m = ~rel.matrix & ~rel.matrix.T
    u = rel.universe
    return {(u[i], u[j]) for i, j in np.argwhere(m)}


def generator_pairs(
    universe: Universe, generators: GeneratorSet, order: OutcomeOrder
) -> list[tuple[int, int, str]]:
    """All directed (i, j, rule) pairs contributed by ``generators``."""
    cached = order if isinstance(order, CachedOrder) else CachedOrder(order)
    pairs: list[tuple[int, int, str]] = []
    lots = universe.lotteries
    if "pareto-lift" in generators.rules:
        degen = [(i, f.support[0]) for i, f in enumerate(lots) if f.is_degenerate()]
        for i, o in degen:
            for j, p in degen:
                if i != j and cached.weakly(o, p):
                    pairs.append((i, j, "pareto-lift"))

    def to_expectation(rule: str, applies) -> None:
        for i, f in enumerate(lots):
            if f.is_degenerate() or not applies(f):
                continue
            e = universe.degenerate(expectation(f))
            if e is None:
                raise UniverseError(f"{rule}: expectation of {f} is missing from the universe")
            pairs.append((i, e, rule))
            pairs.append((e, i, rule))

    if "good-expectations" in generators.rules:
        to_expectation("good-expectations", lambda f: is_good(f, cached))
    if "unidimensional-expectations" in generators.rules:
        to_expectation("unidimensional-expectations", is_unidimensional)
    if "expectationalism" in generators.rules:
        to_expectation("expectationalism", lambda f: True)
    if "stochastic-dominance" in generators.rules:
        for i, j in dominance_pairs(universe, cached):
            pairs.append((i, j, "stochastic-dominance"))
    for d in generators.declared:
        i, j = universe.get(d.src), universe.get(d.dst)
        if i is None or j is None:
            raise UniverseError(f"dangling generator reference {d.src} -> {d.dst}")
        pairs.append((i, j, d.tag))
        if d.both:
            pairs.append((j, i, d.tag))
    return pairs


def dominance_pairs(universe: Universe, order: OutcomeOrder) -> list[tuple[int, int]]:
    cached = order if isinstance(order, CachedOrder) else CachedOrder(order)
    out = []
    lots = universe.lotteries
    for i, f in enumerate(lots):
        for j, g in enumerate(lots):
            if i != j and check_stochastic_dominance(f, g, cached).dominates:
                out.append((i, j))
    return out


def _needed_expectations(universe: Universe, generators: GeneratorSet, order: OutcomeOrder) -> list[Lottery]:
    need = []
    for f in universe:
        if f.is_degenerate():
            continue
        wants = (
            "expectationalism" in generators.rules
            or ("good-expectations" in generators.rules and is_good(f, order))
            or ("unidimensional-expectations" in generators.rules and is_unidimensional(f))
        )
        e = Lottery.degenerate(expectation(f))
        if wants and e not in universe:
            need.append(e)
    return need


def build_closure(universe: Universe, generators: GeneratorSet, order: OutcomeOrder) -> Relation:
    """The least reflexive-transitive relation containing every generated pair."""
    inserted: tuple[Lottery, ...] = ()
    if generators.auto_insert_expectations:
        need = _needed_expectations(universe, generators, order)
        if need:
            inserted = tuple(sorted(set(need)))
            universe = universe.extended(inserted)
    m = np.eye(len(universe), dtype=bool)
    for i, j, _ in generator_pairs(universe, generators, order):
        m[i, j] = True
    return Relation(universe, transitive_closure(m), inserted)


def mixture_closure(
    seeds: Iterable[Lottery], alphas: Iterable[RationalLike], depth: int, cap: int | None = None
) -> Universe:
    """Seeds plus every mixture reachable in ``depth`` rounds of pairwise mixing."""
    seeds = tuple(sorted(set(seeds)))
    alphas = tuple(sorted({rational(a) for a in alphas}))
    cap = max_universe_size() if cap is None else cap
    if depth < 0 or depth > MAX_MIXTURE_DEPTH:
        raise UniverseError(f"mixture depth {depth} outside 0..{MAX_MIXTURE_DEPTH}")
    if any(not 0 < a < 1 for a in alphas):
        raise UniverseError("mixture weights must lie strictly between 0 and 1")
    level = set(seeds)
    for _ in range(depth):
        current = sorted(level)
        nxt = set(level)
        for a in alphas:
            for x in current:
                for y in current:
                    if x == y:
                        continue
                    nxt.add(mix(x, y, a))
                    if len(nxt) > cap:
                        raise UniverseError(f"mixture closure exceeds the size guard of {cap} lotteries")
        level = nxt
    return Universe(level, MixtureManifest(seeds, alphas, depth))

