"""Products of ordinal dimensions with declared dimension-level lottery facts.

A qualitative outcome is a tuple of labels, one per dimension.  Internally it
is encoded as a tuple of label indices (as Fractions) so that lotteries,
relations and checkers from the rest of the package apply unchanged.  The
full product of label sets is always available, so any coordinate swap of
valid outcomes is again valid.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .axioms import AxiomReport, AxiomSpec, AxiomVerdict
from .lottery import Lottery, Outcome, format_rational, mix, rational
from .orders import OrderError, OutcomeOrder, Verdict
from .relation import Relation


class QualitativeError(OrderError):
    pass


@dataclass(frozen=True)
class EquivalenceFact:
    """``mix(a, c, alpha) ∼_i b`` on one dimension."""

    a: str
    c: str
    alpha: Fraction
    b: str

    def mirrored(self) -> "EquivalenceFact":
        return EquivalenceFact(self.c, self.a, 1 - self.alpha, self.b)


@dataclass(frozen=True)
class DominatesFact:
    """``c ⪰_i mix(b, d, beta)`` on one dimension."""

    c: str
    b: str
    beta: Fraction
    d: str


@dataclass(frozen=True)
class DimensionSpec:
    name: str
    elements: tuple[str, ...]
    order_pairs: tuple[tuple[str, str], ...] = ()
    facts: tuple[EquivalenceFact | DominatesFact, ...] = ()
    _weak: frozenset = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self):
        elems = tuple(self.elements)
        if not elems or len(set(elems)) != len(elems):
            raise QualitativeError(f"dimension {self.name!r} needs distinct, non-empty labels")
        object.__setattr__(self, "elements", elems)
        pos = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        m = np.eye(n, dtype=bool)
        for x, y in self.order_pairs:
            self._require(x, y)
            m[pos[x], pos[y]] = True
        for k in range(n):
            m |= np.outer(m[:, k], m[k, :])
        object.__setattr__(self, "_weak", frozenset((elems[i], elems[j]) for i, j in np.argwhere(m)))
        for fact in self.facts:
            if isinstance(fact, EquivalenceFact):
                self._require(fact.a, fact.b, fact.c)
                if not 0 <= fact.alpha <= 1:
                    raise QualitativeError(f"fact weight {fact.alpha} outside [0,1]")
            elif isinstance(fact, DominatesFact):
                self._require(fact.c, fact.b, fact.d)
                if not 0 <= fact.beta <= 1:
                    raise QualitativeError(f"fact weight {fact.beta} outside [0,1]")
            else:
                raise QualitativeError(f"unknown fact {fact!r}")

    def _require(self, *labels: str) -> None:
        for x in labels:
            if x not in self.elements:
                raise QualitativeError(f"unknown label {x!r} in dimension {self.name!r}")

    def index(self, label: str) -> int:
        self._require(label)
        return self.elements.index(label)

    def weakly(self, x: str, y: str) -> bool:
        self._require(x, y)
        return (x, y) in self._weak

    @classmethod
    def chain(cls, name: str, labels: Sequence[str], facts: Iterable = ()) -> "DimensionSpec":
        """Strict chain labels[0] ≻ labels[1] ≻ ..."""
        pairs = tuple((labels[i], labels[i + 1]) for i in range(len(labels) - 1))
        return cls(name, tuple(labels), pairs, tuple(facts))

    def to_json(self) -> dict[str, Any]:
        facts = []
        for f in self.facts:
            if isinstance(f, EquivalenceFact):
                facts.append({"kind": "equivalence", "a": f.a, "c": f.c, "alpha": format_rational(f.alpha), "b": f.b})
            else:
                facts.append({"kind": "dominates", "c": f.c, "b": f.b, "beta": format_rational(f.beta), "d": f.d})
        return {
            "name": self.name,
            "elements": list(self.elements),
            "order": [list(p) for p in self.order_pairs],
            "facts": facts,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "DimensionSpec":
        facts: list = []
        for f in data.get("facts", []):
            if f.get("kind") == "equivalence":
                facts.append(EquivalenceFact(f["a"], f["c"], rational(f["alpha"]), f["b"]))
            elif f.get("kind") == "dominates":
                facts.append(DominatesFact(f["c"], f["b"], rational(f["beta"]), f["d"]))
            else:
                raise QualitativeError(f"unknown fact kind {f.get('kind')!r}")
        if "chain" in data:
            return cls.chain(data.get("name", ""), data["chain"], facts)
        return cls(
            data.get("name", ""),
            tuple(data["elements"]),
            tuple(tuple(p) for p in data.get("order", [])),
            tuple(facts),
        )


class QualOrder(OutcomeOrder):
    """Dimension-wise weak preference in every coordinate (Pareto and its converse)."""

    def __init__(self, dims: Sequence[DimensionSpec], source: str | None = None):
        if not dims:
            raise QualitativeError("at least one dimension is required")
        self.dims = tuple(dims)
        self.source = source

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QualOrder) and self.dims == other.dims

    def __hash__(self) -> int:
        return hash(self.dims)

    def encode(self, labels: Sequence[str]) -> Outcome:
        if len(labels) != len(self.dims):
            raise QualitativeError(f"expected {len(self.dims)} labels, got {len(labels)}")
        return tuple(Fraction(d.index(x)) for d, x in zip(self.dims, labels))

    def decode(self, o: Outcome) -> tuple[str, ...]:
        if len(o) != len(self.dims):
            raise QualitativeError(f"expected {len(self.dims)} coordinates, got {len(o)}")
        out = []
        for d, c in zip(self.dims, o):
            if c.denominator != 1 or not 0 <= c < len(d.elements):
                raise QualitativeError(f"coordinate {c} is not a label index of {d.name!r}")
            out.append(d.elements[int(c)])
        return tuple(out)

    def point(self, *labels: str) -> Lottery:
        return Lottery.degenerate(self.encode(labels))

    def weakly(self, o: Outcome, p: Outcome) -> bool:
        return all(d.weakly(x, y) for d, x, y in zip(self.dims, self.decode(o), self.decode(p)))

    def outcomes(self) -> list[Outcome]:
        return [self.encode(ls) for ls in product(*(d.elements for d in self.dims))]

    def name(self, f: Lottery) -> str:
        parts = []
        for o, p in f.items:
            lbl = "(" + ",".join(self.decode(o)) + ")"
            parts.append(lbl if f.is_degenerate() else f"{lbl}:{format_rational(p)}")
        return parts[0] if f.is_degenerate() else "{" + ", ".join(parts) + "}"

    @property
    def spec(self) -> str:
        return f"qual:{self.source}" if self.source else "qual:<inline>"

    def to_json(self) -> dict[str, Any]:
        return {"dimensions": [d.to_json() for d in self.dims]}

    @classmethod
    def from_json(cls, data: dict[str, Any], source: str | None = None) -> "QualOrder":
        if not isinstance(data, dict) or "dimensions" not in data:
            raise QualitativeError('dimension spec JSON needs a "dimensions" list')
        return cls([DimensionSpec.from_json(d) for d in data["dimensions"]], source)

    @classmethod
    def load(cls, path: str | Path) -> "QualOrder":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise QualitativeError(f"cannot read dimension spec {path}: {exc}") from exc
        return cls.from_json(data, str(path))


def qual_compare(dims: Sequence[DimensionSpec], o: Sequence[str], p: Sequence[str]) -> Verdict:
    order = QualOrder(dims)
    return order.compare(order.encode(o), order.encode(p))


def derive_unanimous_equivalence(
    dims: Sequence[DimensionSpec], facts: Sequence[Sequence[EquivalenceFact]] | None = None
) -> set[tuple[Lottery, Lottery]]:
    """Product-level indifferences forced when every dimension has an equivalence at a common weight.

    ``facts[i]`` defaults to the equivalence facts declared on ``dims[i]``.
    Each fact is also read in its mirrored form (``c`` at ``1-alpha`` against
    ``a``), so a uniform fact can be paired in either orientation.  Returns
    pairs ``(mix(a, c, alpha), δb)``; both directions of weak preference hold.
    """
    order = QualOrder(dims)
    if facts is None:
        facts = [[f for f in d.facts if isinstance(f, EquivalenceFact)] for d in dims]
    if len(facts) != len(dims):
        raise QualitativeError("need one fact list per dimension")
    per_dim = [{g for f in fs for g in (f, f.mirrored())} for fs in facts]
    out: set[tuple[Lottery, Lottery]] = set()
    for combo in product(*(sorted(s, key=lambda f: (f.alpha, f.a, f.c, f.b)) for s in per_dim)):
        alphas = {f.alpha for f in combo}
        if len(alphas) != 1:
            continue
        (alpha,) = alphas
        top = Lottery.degenerate(order.encode([f.a for f in combo]))
        bottom = Lottery.degenerate(order.encode([f.c for f in combo]))
        target = Lottery.degenerate(order.encode([f.b for f in combo]))
        out.add((mix(top, bottom, alpha), target))
    return out


def _dimension_known(dim: DimensionSpec, fi: dict[str, Fraction], gi: dict[str, Fraction]) -> bool | None:
    """What the declared dimension order says about f_i ⪰_i g_i: True, False, or unknown."""

    def single(d):
        return next(iter(d)) if len(d) == 1 else None

    x, y = single(fi), single(gi)
    if x is not None and y is not None:
        return dim.weakly(x, y)

    for f in dim.facts:
        if isinstance(f, EquivalenceFact):
            lot = {f.a: f.alpha, f.c: 1 - f.alpha} if f.a != f.c else {f.a: Fraction(1)}
            lot = {k: v for k, v in lot.items() if v}
            if (fi == lot and y == f.b) or (x == f.b and gi == lot):
                return True
        else:
            lot = {f.b: f.beta, f.d: 1 - f.beta} if f.b != f.d else {f.b: Fraction(1)}
            lot = {k: v for k, v in lot.items() if v}
            if x == f.c and gi == lot:
                return True
    return None


def check_uds(dims: Sequence[DimensionSpec], rel: Relation, order: QualOrder | None = None) -> AxiomReport:
    """The separability biconditional on embedded unidimensional pairs in ``rel``'s universe.

    Only pairs whose dimension-level comparison is settled by the declared
    order or facts are checked.  Single-dimension spaces hold vacuously; a
    universe offering no non-degenerate checkable pair is not-determinable.
    """
    spec = AxiomSpec("dimensional-separability")
    order = order or QualOrder(dims)
    details: dict[str, Any] = {"variant": "unidimensional-dimensional-separability", "universe_size": len(rel.universe)}
    if len(dims) == 1:
        details["diagnostic"] = "single dimension: the biconditional has no other coordinates to vary"
        return AxiomReport(spec, AxiomVerdict.HOLDS, [], details)

    # group embedded lotteries by (dimension, fixed other coordinates)
    groups: dict[tuple, list[tuple[int, dict[str, Fraction]]]] = {}
    for idx, f in enumerate(rel.universe):
        labels = [order.decode(o) for o in f.support]
        # degenerate lotteries embed along every dimension
        for i in range(len(dims)):
            rest = {tuple(l[:i] + l[i + 1:]) for l in labels}
            if len(rest) != 1:
                continue
            proj: dict[str, Fraction] = {}
            for l, (_, p) in zip(labels, f.items):
                proj[l[i]] = proj.get(l[i], Fraction(0)) + p
            groups.setdefault((i, rest.pop()), []).append((idx, proj))

    # the dimension-level claim quantifies over all o_{-i}; gather per (i, f_i, g_i)
    claims: dict[tuple, list[tuple[int, int]]] = {}
    for (i, rest), members in groups.items():
        for fa, pa in members:
            for gb, pb in members:
                if fa == gb:
                    continue
                key = (i, tuple(sorted(pa.items())), tuple(sorted(pb.items())))
                claims.setdefault(key, []).append((fa, gb))

    witnesses, n, informative = [], 0, 0
    m = rel.matrix
    for (i, pa, pb), pairs in sorted(claims.items(), key=lambda kv: repr(kv[0])):
        known = _dimension_known(dims[i], dict(pa), dict(pb))
        if known is None:
            continue
        n += 1
        if len(pa) > 1 or len(pb) > 1:
            informative += 1
        if known:
            for fa, gb in pairs:
                if not m[fa, gb]:
                    witnesses.append({"dimension": i + 1, "f": rel.universe[fa], "g": rel.universe[gb], "expected": "weak"})
        elif all(m[fa, gb] for fa, gb in pairs):
            fa, gb = pairs[0]
            witnesses.append({"dimension": i + 1, "f": rel.universe[fa], "g": rel.universe[gb], "expected": "not-weak"})
    details["instances"] = n
    if witnesses:
        return AxiomReport(spec, AxiomVerdict.VIOLATED, witnesses, details)
    if not informative:
        details["diagnostic"] = "no embedded non-degenerate pair is settled by the declared facts"
        return AxiomReport(spec, AxiomVerdict.NOT_DETERMINABLE, [], details)
    return AxiomReport(spec, AxiomVerdict.HOLDS, [], details)
