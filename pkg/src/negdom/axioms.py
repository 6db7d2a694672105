"""Axiom checkers over a finite relation, with three-valued verdicts.

Universally quantified axioms are checked exhaustively over the universe and
come back ``holds`` or ``violated``.  Existence axioms can only be confirmed
inside a finite universe, so a missing witness yields ``not-determinable``
rather than ``violated``.

Outcome-level comparisons (support outcome against support outcome) always go
through the outcome order; lottery-level comparisons go through the relation.
The two pareto-consistency checkers report where they disagree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable

import numpy as np

from .dominance import check_stochastic_dominance
from .lottery import (
    Lottery,
    expectation,
    format_rational,
    is_good,
    is_unidimensional,
    mix,
    projection,
    rational,
    unidimensional_with,
)
from .orders import OutcomeOrder
from .relation import CachedOrder, Relation, Universe, UniverseError, mixture_closure


class AxiomVerdict(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_DETERMINABLE = "not-determinable"


AXIOM_NAMES = (
    "negative-dominance",
    "outcome-comparability",
    "outcome-dominance",
    "vst",
    "independence",
    "indifferent-independence",
    "comparable-independence",
    "stochastic-dominance-respect",
    "good-expectations",
    "expectationalism",
    "unidimensional-expectations",
    "weak-unidimensional-expectations",
    "dimensional-separability",
    "certainty-equivalents",
    "strict-betweenness",
    "unidimensional-continuity",
    "unidimensional-certainty-equivalents",
    "pareto-consistency",
    "converse-pareto-consistency",
    "preorder",
)
MIXTURE_AXIOMS = {"vst", "independence", "indifferent-independence", "comparable-independence"}
EXISTENCE_AXIOMS = {"certainty-equivalents", "unidimensional-continuity", "unidimensional-certainty-equivalents"}


class AxiomError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomSpec:
    name: str
    alphas: tuple[Fraction, ...] = (Fraction(1, 2),)
    require_mixture_closed: bool = True

    def __post_init__(self):
        if self.name not in AXIOM_NAMES:
            raise AxiomError(f"unknown axiom {self.name!r}")
        alphas = tuple(sorted({rational(a) for a in self.alphas}))
        if not alphas or any(not 0 < a < 1 for a in alphas):
            raise AxiomError("alpha set must be non-empty and inside (0,1)")
        object.__setattr__(self, "alphas", alphas)


@dataclass
class AxiomReport:
    axiom: AxiomSpec
    verdict: AxiomVerdict
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is AxiomVerdict.VIOLATED and not self.witnesses:
            raise AxiomError(f"{self.axiom.name}: a violation needs a witness")

    @property
    def holds(self) -> bool:
        return self.verdict is AxiomVerdict.HOLDS

    def to_json(self) -> dict[str, Any]:
        return {
            "axiom": self.axiom.name,
            "verdict": self.verdict.value,
            "witnesses": [{k: _jsonable(v) for k, v in w.items()} for w in self.witnesses],
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(v: Any) -> Any:
    if isinstance(v, Lottery):
        return v.to_json()
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, tuple) and v and all(isinstance(c, Fraction) for c in v):
        return [format_rational(c) for c in v]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


class _Context:
    def __init__(self, rel: Relation, order: OutcomeOrder):
        self.rel = rel
        self.u: Universe = rel.universe
        self.M = rel.matrix
        self.S = rel.matrix & ~rel.matrix.T
        self.I = rel.matrix & rel.matrix.T
        self.order = order if isinstance(order, CachedOrder) else CachedOrder(order)
        self._mix: dict[Fraction, dict[tuple[int, int], int]] = {}
        self._cross: np.ndarray | None = None

    def lot(self, i: int) -> Lottery:
        return self.u[i]

    def exp_index(self, i: int) -> int | None:
        return self.u.degenerate(expectation(self.u[i]))

    def degenerate_indices(self) -> list[int]:
        return [i for i, f in enumerate(self.u) if f.is_degenerate()]

    def mixtures(self, alpha: Fraction) -> dict[tuple[int, int], int]:
        """(i, h) -> index of ``u[i] alpha u[h]`` for every pair whose mixture is in the universe."""
        if alpha not in self._mix:
            out = {}
            n = len(self.u)
            for i in range(n):
                for h in range(n):
                    k = self.u.get(mix(self.u[i], self.u[h], alpha))
                    if k is not None:
                        out[(i, h)] = k
            self._mix[alpha] = out
        return self._mix[alpha]

    def cross_comparable(self) -> np.ndarray:
        """C[i, j]: every support outcome of i is comparable to every support outcome of j."""
        if self._cross is None:
            n = len(self.u)
            c = np.zeros((n, n), dtype=bool)
            for i in range(n):
                for j in range(i, n):
                    ok = all(self.order.comparable(o, p) for o in self.u[i].support for p in self.u[j].support)
                    c[i, j] = c[j, i] = ok
            self._cross = c
        return self._cross


# ---------------------------------------------------------------------------
# scalar predicates: one per universal axiom, used both for witness re-checks
# and (where cheap) for the exhaustive scan itself


def _nd_violates(ctx: _Context, w: dict) -> bool:
    f, g = w["f"], w["g"]
    strict = ctx.rel.strictly(f, g)
    return strict and not any(ctx.order.strictly(o, p) for o in f.support for p in g.support)


def _oc_violates(ctx: _Context, w: dict) -> bool:
    f, o_star = w["f"], w["o*"]
    d = Lottery.degenerate(o_star)
    if not (ctx.rel.strictly(f, d) or ctx.rel.strictly(d, f)):
        return False
    return not any(ctx.order.comparable(o, o_star) for o in f.support)


def _od_violates(ctx: _Context, w: dict) -> bool:
    f, g = w["f"], w["g"]
    premise = all(ctx.order.strictly(o, p) for o in f.support for p in g.support)
    return premise and not ctx.rel.strictly(f, g)


def _vst_violates(ctx: _Context, w: dict) -> bool:
    r = ctx.rel
    a = w["alpha"]
    if not (r.incomparable(w["f1"], w["g1"]) and r.incomparable(w["f2"], w["g2"])):
        return False
    return not r.incomparable(mix(w["f1"], w["f2"], a), mix(w["g1"], w["g2"], a))


def _indep_violates(ctx: _Context, w: dict) -> bool:
    r, a = ctx.rel, w["alpha"]
    f, g, h = w["f"], w["g"], w["h"]
    if w.get("_comparable") and not all(
        ctx.order.comparable(o, p)
        for o in {*f.support, *g.support, *h.support}
        for p in {*f.support, *g.support, *h.support}
    ):
        return False
    return r.weakly(f, g) != r.weakly(mix(f, h, a), mix(g, h, a))


def _ii_violates(ctx: _Context, w: dict) -> bool:
    r, a = ctx.rel, w["alpha"]
    f, g, h = w["f"], w["g"], w["h"]
    return r.indifferent(f, g) and r.indifferent(g, h) and not r.indifferent(mix(f, h, a), mix(g, h, a))


def _sd_violates(ctx: _Context, w: dict) -> bool:
    f, g = w["f"], w["g"]
    return check_stochastic_dominance(f, g, ctx.order).dominates and not ctx.rel.strictly(f, g)


def _exp_violates(ctx: _Context, w: dict) -> bool:
    f = w["f"]
    return not ctx.rel.indifferent(f, Lottery.degenerate(expectation(f)))


def _wue_violates(ctx: _Context, w: dict) -> bool:
    f, g = w["f"], w["g"]
    e = Lottery.degenerate(expectation(f))
    r = ctx.rel
    return (r.strictly(e, g) and not r.strictly(f, g)) or (r.strictly(g, e) and not r.strictly(g, f))


def _ds_violates(ctx: _Context, w: dict) -> bool:
    f, g, i = w["f"], w["g"], w["dimension"]
    o, p = w["o"], w["o'"]
    r = ctx.rel
    return (
        projection(f, i) == projection(g, i)
        and r.indifferent(f, Lottery.degenerate(o))
        and r.indifferent(g, Lottery.degenerate(p))
        and o[i - 1] != p[i - 1]
    )


def _sb_violates(ctx: _Context, w: dict) -> bool:
    f, o = w["f"], w["o"]
    sup = f.support
    if not ctx.rel.indifferent(f, Lottery.degenerate(o)):
        return False
    if not any(ctx.order.strictly(a, b) for a in sup for b in sup):
        return False
    return not (any(ctx.order.strictly(c, o) for c in sup) and any(ctx.order.strictly(o, d) for d in sup))


def _pc_violates(ctx: _Context, w: dict) -> bool:
    o, p = w["o"], w["o'"]
    return ctx.order.weakly(o, p) and not ctx.rel.weakly(Lottery.degenerate(o), Lottery.degenerate(p))


def _cpc_violates(ctx: _Context, w: dict) -> bool:
    o, p = w["o"], w["o'"]
    return ctx.rel.weakly(Lottery.degenerate(o), Lottery.degenerate(p)) and not ctx.order.weakly(o, p)


_PREDICATES: dict[str, Callable[[_Context, dict], bool]] = {
    "negative-dominance": _nd_violates,
    "outcome-comparability": _oc_violates,
    "outcome-dominance": _od_violates,
    "vst": _vst_violates,
    "independence": _indep_violates,
    "comparable-independence": _indep_violates,
    "indifferent-independence": _ii_violates,
    "stochastic-dominance-respect": _sd_violates,
    "good-expectations": _exp_violates,
    "expectationalism": _exp_violates,
    "unidimensional-expectations": _exp_violates,
    "weak-unidimensional-expectations": _wue_violates,
    "dimensional-separability": _ds_violates,
    "strict-betweenness": _sb_violates,
    "pareto-consistency": _pc_violates,
    "converse-pareto-consistency": _cpc_violates,
}


# ---------------------------------------------------------------------------
# exhaustive scans


def _scan_negative_dominance(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    for i, j in np.argwhere(ctx.S):
        n += 1
        f, g = ctx.lot(i), ctx.lot(j)
        if not any(ctx.order.strictly(o, p) for o in f.support for p in g.support):
            wits.append({"f": f, "g": g})
    return wits, {"instances": n}


def _scan_outcome_comparability(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    for i, j in np.argwhere(ctx.S):
        f, g = ctx.lot(i), ctx.lot(j)
        for lot, point in ((f, g), (g, f)):
            if point.is_degenerate():
                n += 1
                o_star = point.support[0]
                if not any(ctx.order.comparable(o, o_star) for o in lot.support):
                    wits.append({"f": lot, "o*": o_star})
    return wits, {"instances": n}


def _scan_outcome_dominance(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    size = len(ctx.u)
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            f, g = ctx.lot(i), ctx.lot(j)
            if all(ctx.order.strictly(o, p) for o in f.support for p in g.support):
                n += 1
                if not ctx.S[i, j]:
                    wits.append({"f": f, "g": g})
    return wits, {"instances": n}


def _scan_vst(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    inc = ~ctx.M & ~ctx.M.T
    for a in spec.alphas:
        sources: dict[int, list[tuple[int, int]]] = {}
        for (x, y), k in ctx.mixtures(a).items():
            sources.setdefault(k, []).append((x, y))
        keys = sorted(sources)
        for k1 in keys:
            for k2 in keys:
                for f1, f2 in sources[k1]:
                    for g1, g2 in sources[k2]:
                        if inc[f1, g1] and inc[f2, g2]:
                            n += 1
                            if not inc[k1, k2]:
                                wits.append(
                                    {"f1": ctx.lot(f1), "g1": ctx.lot(g1), "f2": ctx.lot(f2), "g2": ctx.lot(g2), "alpha": a}
                                )
    return wits, {"instances": n}


def _scan_independence(ctx: _Context, spec: AxiomSpec, comparable: bool = False):
    wits, n = [], 0
    cross = ctx.cross_comparable() if comparable else None
    for a in spec.alphas:
        by_h: dict[int, list[tuple[int, int]]] = {}
        for (i, h), k in ctx.mixtures(a).items():
            by_h.setdefault(h, []).append((i, k))
        for h in sorted(by_h):
            idx = np.array([i for i, _ in by_h[h]])
            mixed = np.array([k for _, k in by_h[h]])
            before = ctx.M[np.ix_(idx, idx)]
            after = ctx.M[np.ix_(mixed, mixed)]
            mask = np.ones_like(before)
            if comparable:
                mask = cross[np.ix_(idx, idx)] & cross[idx, h][:, None] & cross[idx, h][None, :]
            n += int(mask.sum())
            for p, q in np.argwhere(mask & (before != after)):
                w = {"f": ctx.lot(idx[p]), "g": ctx.lot(idx[q]), "h": ctx.lot(h), "alpha": a}
                if comparable:
                    w["_comparable"] = True
                wits.append(w)
    return wits, {"instances": n}


def _scan_indifferent_independence(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    for a in spec.alphas:
        by_h: dict[int, list[tuple[int, int]]] = {}
        for (i, h), k in ctx.mixtures(a).items():
            by_h.setdefault(h, []).append((i, k))
        for h in sorted(by_h):
            idx = np.array([i for i, _ in by_h[h]])
            mixed = np.array([k for _, k in by_h[h]])
            premise = ctx.I[np.ix_(idx, idx)] & ctx.I[idx, h][None, :]
            concl = ctx.I[np.ix_(mixed, mixed)]
            n += int(premise.sum())
            for p, q in np.argwhere(premise & ~concl):
                wits.append({"f": ctx.lot(idx[p]), "g": ctx.lot(idx[q]), "h": ctx.lot(h), "alpha": a})
    return wits, {"instances": n}


def _scan_sd_respect(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    size = len(ctx.u)
    for i in range(size):
        for j in range(size):
            if i != j and check_stochastic_dominance(ctx.lot(i), ctx.lot(j), ctx.order).dominates:
                n += 1
                if not ctx.S[i, j]:
                    wits.append({"f": ctx.lot(i), "g": ctx.lot(j)})
    return wits, {"instances": n}


def _expectation_scan(applies: Callable[[_Context, Lottery], bool]):
    def scan(ctx: _Context, spec: AxiomSpec):
        wits, n, skipped = [], 0, 0
        for i, f in enumerate(ctx.u):
            if f.is_degenerate() or not applies(ctx, f):
                continue
            e = ctx.exp_index(i)
            if e is None:
                skipped += 1
                continue
            n += 1
            if not ctx.I[i, e]:
                wits.append({"f": f})
        return wits, {"instances": n, "skipped_missing_expectation": skipped}

    return scan


def _scan_wue(ctx: _Context, spec: AxiomSpec):
    wits, n, skipped = [], 0, 0
    for i, f in enumerate(ctx.u):
        if f.is_degenerate() or not is_unidimensional(f):
            continue
        e = ctx.exp_index(i)
        if e is None:
            skipped += 1
            continue
        for j in range(len(ctx.u)):
            if ctx.S[e, j]:
                n += 1
                if not ctx.S[i, j]:
                    wits.append({"f": f, "g": ctx.lot(j)})
            if ctx.S[j, e]:
                n += 1
                if not ctx.S[j, i]:
                    wits.append({"f": f, "g": ctx.lot(j)})
    return wits, {"instances": n, "skipped_missing_expectation": skipped}


def _scan_dimensional_separability(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    degen = ctx.degenerate_indices()
    ces = {i: [ctx.lot(d).support[0] for d in degen if ctx.I[i, d]] for i in range(len(ctx.u))}
    for dim in range(1, (ctx.u.dim or 0) + 1):
        groups: dict[tuple, list[int]] = {}
        for i, f in enumerate(ctx.u):
            if ces[i]:
                groups.setdefault(tuple(projection(f, dim).items()), []).append(i)
        for members in groups.values():
            for a in members:
                for b in members:
                    for o in ces[a]:
                        for p in ces[b]:
                            n += 1
                            if o[dim - 1] != p[dim - 1]:
                                wits.append({"f": ctx.lot(a), "g": ctx.lot(b), "o": o, "o'": p, "dimension": dim})
    return wits, {"instances": n}


def _scan_strict_betweenness(ctx: _Context, spec: AxiomSpec):
    wits, n = [], 0
    degen = ctx.degenerate_indices()
    for i, f in enumerate(ctx.u):
        if f.is_degenerate() or not is_unidimensional(f):
            continue
        sup = f.support
        if not any(ctx.order.strictly(a, b) for a in sup for b in sup):
            continue
        for d in degen:
            if ctx.I[i, d]:
                n += 1
                w = {"f": f, "o": ctx.lot(d).support[0]}
                if _sb_violates(ctx, w):
                    wits.append(w)
    return wits, {"instances": n}


def _scan_pareto(ctx: _Context, spec: AxiomSpec, converse: bool = False):
    wits, n = [], 0
    degen = ctx.degenerate_indices()
    for i in degen:
        for j in degen:
            o, p = ctx.lot(i).support[0], ctx.lot(j).support[0]
            n += 1
            by_order = ctx.order.weakly(o, p)
            by_rel = bool(ctx.M[i, j])
            if (by_rel and not by_order) if converse else (by_order and not by_rel):
                wits.append({"o": o, "o'": p})
    return wits, {"instances": n}


# existence axioms return (missing, checked)


def _exist_certainty_equivalents(ctx: _Context, spec: AxiomSpec):
    degen = ctx.degenerate_indices()
    missing, n = [], 0
    for i, f in enumerate(ctx.u):
        n += 1
        if not any(ctx.I[i, d] for d in degen):
            missing.append({"f": f})
    return missing, n


def _exist_unidimensional_continuity(ctx: _Context, spec: AxiomSpec):
    degen = ctx.degenerate_indices()
    outs = {d: ctx.lot(d).support[0] for d in degen}
    missing, n = [], 0
    for a in degen:
        for b in degen:
            for c in degen:
                oa, ob, oc = outs[a], outs[b], outs[c]
                if not (ctx.order.strictly(oa, ob) and ctx.order.strictly(ob, oc)):
                    continue
                if not (unidimensional_with(oa, ob) and unidimensional_with(ob, oc) and unidimensional_with(oa, oc)):
                    continue
                n += 1
                found = any(
                    set(f.support) <= {oa, oc} and ctx.I[k, b] for k, f in enumerate(ctx.u)
                )
                if not found:
                    missing.append({"a": oa, "b": ob, "c": oc})
    return missing, n


def _exist_ucert(ctx: _Context, spec: AxiomSpec):
    degen = ctx.degenerate_indices()
    missing, n = [], 0
    for i, f in enumerate(ctx.u):
        if f.is_degenerate() or not is_unidimensional(f):
            continue
        n += 1
        sup = f.support
        spread = any(ctx.order.strictly(a, b) for a in sup for b in sup)
        ok = False
        for d in degen:
            o = ctx.lot(d).support[0]
            if not ctx.I[i, d] or not all(unidimensional_with(o, p) for p in sup):
                continue
            if spread and not (any(ctx.order.strictly(c, o) for c in sup) and any(ctx.order.strictly(o, e) for e in sup)):
                continue
            ok = True
            break
        if not ok:
            missing.append({"f": f})
    return missing, n


_UNIVERSAL = {
    "negative-dominance": _scan_negative_dominance,
    "outcome-comparability": _scan_outcome_comparability,
    "outcome-dominance": _scan_outcome_dominance,
    "vst": _scan_vst,
    "independence": _scan_independence,
    "comparable-independence": lambda c, s: _scan_independence(c, s, comparable=True),
    "indifferent-independence": _scan_indifferent_independence,
    "stochastic-dominance-respect": _scan_sd_respect,
    "good-expectations": _expectation_scan(lambda c, f: is_good(f, c.order)),
    "expectationalism": _expectation_scan(lambda c, f: True),
    "unidimensional-expectations": _expectation_scan(lambda c, f: is_unidimensional(f)),
    "weak-unidimensional-expectations": _scan_wue,
    "dimensional-separability": _scan_dimensional_separability,
    "strict-betweenness": _scan_strict_betweenness,
    "pareto-consistency": _scan_pareto,
    "converse-pareto-consistency": lambda c, s: _scan_pareto(c, s, converse=True),
}
_EXISTENCE = {
    "certainty-equivalents": _exist_certainty_equivalents,
    "unidimensional-continuity": _exist_unidimensional_continuity,
    "unidimensional-certainty-equivalents": _exist_ucert,
}


def _mixture_diagnostic(universe: Universe, spec: AxiomSpec) -> str | None:
    m = universe.mixture
    if m is None:
        return "universe carries no mixture-closure manifest"
    if not set(spec.alphas) <= set(m.alphas):
        return f"universe is mixture-closed for {[format_rational(a) for a in m.alphas]}, not the requested alphas"
    closed = mixture_closure(m.seeds, m.alphas, m.depth)
    if not all(f in universe for f in closed):
        return "universe does not contain the mixture closure its manifest claims"
    return None


def check_axiom(
    rel: Relation, order: OutcomeOrder, spec: AxiomSpec | str, universe: Universe | None = None
) -> AxiomReport:
    if isinstance(spec, str):
        spec = AxiomSpec(spec)
    if spec.name == "preorder":
        return check_preorder(rel)
    if universe is not None and universe != rel.universe:
        raise UniverseError("relation was built over a different universe")
    ctx = _Context(rel, order)
    details: dict[str, Any] = {"universe_size": len(rel.universe)}
    if spec.name in MIXTURE_AXIOMS:
        m = rel.universe.mixture
        details["alphas"] = list(spec.alphas)
        details["closure_depth"] = m.depth if m else None
        if spec.require_mixture_closed:
            diag = _mixture_diagnostic(rel.universe, spec)
            if diag is not None:
                details["diagnostic"] = diag
                return AxiomReport(spec, AxiomVerdict.NOT_DETERMINABLE, [], details)

    if spec.name in _EXISTENCE:
        missing, n = _EXISTENCE[spec.name](ctx, spec)
        details["instances"] = n
        if missing:
            details["missing_witnesses"] = missing
            details["diagnostic"] = "witness not present in the finite universe"
            return AxiomReport(spec, AxiomVerdict.NOT_DETERMINABLE, [], details)
        return AxiomReport(spec, AxiomVerdict.HOLDS, [], details)

    wits, extra = _UNIVERSAL[spec.name](ctx, spec)
    details.update(extra)
    if wits:
        return AxiomReport(spec, AxiomVerdict.VIOLATED, wits, details)
    skipped = extra.get("skipped_missing_expectation", 0)
    if skipped and not extra.get("instances"):
        details["diagnostic"] = "every instance lacks its expectation in the universe"
        return AxiomReport(spec, AxiomVerdict.NOT_DETERMINABLE, [], details)
    return AxiomReport(spec, AxiomVerdict.HOLDS, [], details)


def reverify_witness(name: str, witness: dict[str, Any], rel: Relation, order: OutcomeOrder) -> bool:
    """Re-evaluate one reported violation directly against ``rel`` and ``order``."""
    if name not in _PREDICATES:
        raise AxiomError(f"{name} has no re-checkable witnesses")
    return _PREDICATES[name](_Context(rel, order), witness)


def check_preorder(rel: Relation) -> AxiomReport:
    """Reflexivity and transitivity of the stored relation."""
    m = rel.matrix
    u = rel.universe
    wits: list[dict[str, Any]] = []
    for i in np.flatnonzero(~np.diag(m)):
        wits.append({"kind": "reflexivity", "f": u[i]})
    two_step = (m.astype(np.int64) @ m.astype(np.int64)) > 0
    for i, k in np.argwhere(two_step & ~m):
        j = int(np.flatnonzero(m[i] & m[:, k])[0])
        wits.append({"kind": "transitivity", "f": u[i], "g": u[j], "h": u[k]})
    verdict = AxiomVerdict.VIOLATED if wits else AxiomVerdict.HOLDS
    return AxiomReport(AxiomSpec("preorder"), verdict, wits, {"universe_size": len(u)})


def check_all(
    rel: Relation, order: OutcomeOrder, names: Iterable[str], alphas: Iterable = (Fraction(1, 2),)
) -> list[AxiomReport]:
    """Run several checkers; reports come back in the order requested."""
    alphas = tuple(alphas)
    return [check_axiom(rel, order, AxiomSpec(name, alphas)) for name in names]
