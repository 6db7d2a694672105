"""Executable derivations: each impossibility argument as a checked chain of facts.

A :class:`Derivation` accumulates declared premises (weak-preference pairs
with a tag naming the axiom instance) and *forbidden* pairs, i.e. weak
preferences that the premises rule out (the outcome order's non-preferences,
strict premises, and strict preferences carried through mixing).  A strict
fact ``x ≻ y`` is accepted only when ``x ⪰ y`` is in the closure and
``y ⪰ x`` would entail a forbidden pair.  The closure itself is the least
preorder over the declared pairs plus the order's lift onto degenerate
lotteries, so the final relation can be rebuilt from the manifest alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

import numpy as np

from .axioms import AxiomReport, check_all, check_axiom
from .dominance import check_stochastic_dominance
from .lottery import (
    Lottery,
    Outcome,
    RationalLike,
    delta,
    expectation,
    format_outcome,
    format_rational,
    is_unidimensional,
    is_unidimensional_with,
    mix,
    outcome,
    rational,
)
from .orders import KVerdict, Lines, OutcomeOrder, ParetoBox, Verdict, k_classify, parse_order
from .qualitative import DimensionSpec, DominatesFact, EquivalenceFact, QualOrder, derive_unanimous_equivalence
from .relation import (
    CachedOrder,
    DeclaredPair,
    GeneratorSet,
    Relation,
    Universe,
    build_closure,
    mixture_closure,
)

SCHEMA_VERSION = "1.0"
HALF = Fraction(1, 2)


class ScenarioError(ValueError):
    pass


class PreconditionError(ScenarioError):
    """Parameters for which the argument's required comparisons fail."""


KINDS = ("strict", "indifferent", "weak", "incomparable")
_SYMBOL = {"strict": "≻", "indifferent": "∼", "weak": "⪰", "incomparable": "⋈"}


@dataclass(frozen=True)
class Step:
    fact: str
    kind: str
    left: Lottery
    right: Lottery
    justification: str
    level: str = "relation"

    def to_json(self) -> dict[str, Any]:
        return {
            "fact": self.fact,
            "kind": self.kind,
            "level": self.level,
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "justification": self.justification,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "Step":
        return cls(
            data["fact"],
            data["kind"],
            Lottery.from_json(data["left"]),
            Lottery.from_json(data["right"]),
            data["justification"],
            data.get("level", "relation"),
        )


@dataclass
class ScenarioResult:
    scenario_id: str
    verdict: str
    steps: list[Step] = field(default_factory=list)
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    reports: list[AxiomReport] = field(default_factory=list)
    params: dict[str, Any] = field(default_factory=dict)
    manifest: dict[str, Any] = field(default_factory=dict)
    relation: Relation | None = None

    def step_facts(self) -> list[str]:
        return [s.fact for s in self.steps]

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario_id,
            "verdict": self.verdict,
            "params": {k: _param_json(v) for k, v in self.params.items()},
            "steps": [s.to_json() for s in self.steps],
            "witnesses": [{k: _param_json(v) for k, v in w.items()} for w in self.witnesses],
            "checks": [r.to_json() for r in self.reports],
            "manifest": self.manifest,
        }


def _param_json(v: Any) -> Any:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, Lottery):
        return v.to_json()
    if isinstance(v, tuple) and v and all(isinstance(c, Fraction) for c in v):
        return [format_rational(c) for c in v]
    if isinstance(v, (list, tuple)):
        return [_param_json(x) for x in v]
    if isinstance(v, dict):
        return {k: _param_json(x) for k, x in v.items()}
    return v


def _order_tag(order: OutcomeOrder) -> str:
    if isinstance(order, ParetoBox):
        return "pareto"
    if isinstance(order, Lines):
        return "lines"
    if isinstance(order, QualOrder):
        return "qualitative-pareto"
    return "outcome-order"


# ---------------------------------------------------------------------------
# derivation builder


class Derivation:
    def __init__(self, order: OutcomeOrder):
        self.order = order
        self._cached = CachedOrder(order)
        self.tag = _order_tag(order)
        self._lots: list[Lottery] = []
        self._seen: set[Lottery] = set()
        self.declared: list[DeclaredPair] = []
        self.forbidden: list[tuple[Lottery, Lottery, str]] = []
        self.steps: list[Step] = []
        self.names: dict[Lottery, str] = {}
        self._state = None

    # bookkeeping -----------------------------------------------------------

    def add(self, *lots: Lottery) -> None:
        for f in lots:
            if f not in self._seen:
                self._seen.add(f)
                self._lots.append(f)
                self._state = None

    def name(self, f: Lottery, label: str) -> Lottery:
        self.add(f)
        self.names.setdefault(f, label)
        return f

    def label(self, f: Lottery) -> str:
        if f in self.names:
            return self.names[f]
        if isinstance(self.order, QualOrder):
            return self.order.name(f)
        return str(f)

    def _fact(self, f: Lottery, g: Lottery, kind: str) -> str:
        return f"{self.label(f)} {_SYMBOL[kind]} {self.label(g)}"

    def _record(self, f, g, kind, why, level="relation") -> Step:
        step = Step(self._fact(f, g, kind), kind, f, g, why, level)
        self.steps.append(step)
        return step

    @property
    def generators(self) -> GeneratorSet:
        return GeneratorSet(frozenset({"pareto-lift"}), tuple(self.declared))

    def universe(self) -> Universe:
        return Universe(self._lots)

    def _compute(self):
        if self._state is None:
            u = self.universe()
            rel = build_closure(u, self.generators, self._cached)
            n = len(u)
            forb = np.zeros((n, n), dtype=bool)
            degen = [(i, f.support[0]) for i, f in enumerate(u) if f.is_degenerate()]
            for i, o in degen:
                for j, p in degen:
                    if not self._cached.weakly(o, p):
                        forb[i, j] = True
            for f, g, _ in self.forbidden:
                forb[u.index(f), u.index(g)] = True
            r = rel.matrix.astype(np.int64)
            derived = (r.T @ forb.astype(np.int64) @ r.T) > 0
            self._state = (u, rel, forb, derived)
        return self._state

    def relation(self) -> Relation:
        return self._compute()[1]

    def consistent(self) -> bool:
        _, rel, forb, _ = self._compute()
        return not bool((forb & rel.matrix).any())

    def holds(self, f: Lottery, g: Lottery, kind: str) -> bool:
        u, rel, _, derived = self._compute()
        i, j = u.index(f), u.index(g)
        m = rel.matrix
        if kind == "weak":
            return bool(m[i, j])
        if kind == "indifferent":
            return bool(m[i, j] and m[j, i])
        if kind == "strict":
            return bool(m[i, j] and derived[j, i] and not m[j, i])
        if kind == "incomparable":
            return bool(not m[i, j] and not m[j, i])
        raise ScenarioError(f"unknown fact kind {kind!r}")

    # rules -----------------------------------------------------------------

    def declare(self, f: Lottery, g: Lottery, kind: str, tag: str) -> Step:
        """Assert an axiom instance as a premise."""
        if kind not in ("strict", "indifferent", "weak"):
            raise ScenarioError(f"cannot declare a {kind} premise")
        self.add(f, g)
        self.declared.append(DeclaredPair(f, g, kind == "indifferent", tag))
        if kind == "strict":
            self.forbidden.append((g, f, tag))
        self._state = None
        return self._record(f, g, kind, tag)

    def outcome_fact(self, o: Outcome, p: Outcome, expect: Verdict | None = None) -> Verdict:
        """Record the order's verdict on two outcomes; fail if it is not ``expect``."""
        v = self._cached.compare(o, p)
        if expect is not None and v is not expect:
            raise PreconditionError(
                f"{format_outcome(o)} vs {format_outcome(p)} is {v.value} under {self.order.spec}; "
                f"the argument needs {expect.value}"
            )
        kind = {
            Verdict.ABOVE: "strict",
            Verdict.EQUIVALENT: "indifferent",
            Verdict.INCOMPARABLE: "incomparable",
        }.get(v)
        f, g = Lottery.degenerate(o), Lottery.degenerate(p)
        if v is Verdict.BELOW:
            f, g, kind = g, f, "strict"
        self.add(f, g)
        self._record(f, g, kind, self.tag, level="outcome")
        return v

    def independence(
        self, f: Lottery, g: Lottery, h: Lottery, alpha: RationalLike, tag: str = "independence"
    ) -> tuple[Lottery, Lottery]:
        """From f ⪰ g derive fαh ⪰ gαh (both ways if f ∼ g; strict carried if f ≻ g)."""
        alpha = rational(alpha)
        self.add(f, g, h)
        if not self.holds(f, g, "weak"):
            raise ScenarioError(f"independence needs {self._fact(f, g, 'weak')} first")
        fh, gh = mix(f, h, alpha), mix(g, h, alpha)
        both = self.holds(g, f, "weak")
        strict = self.holds(f, g, "strict")
        self.add(fh, gh)
        self.declared.append(DeclaredPair(fh, gh, both, tag))
        if strict:
            self.forbidden.append((gh, fh, tag))
        self._state = None
        kind = "indifferent" if both else "strict" if strict else "weak"
        self._record(fh, gh, kind, tag)
        return fh, gh

    def derive(self, f: Lottery, g: Lottery, kind: str, why: str = "transitivity") -> Step:
        """Record a consequence already present in the closure; refuse if it is not."""
        self.add(f, g)
        if not self.holds(f, g, kind):
            raise ScenarioError(f"{self._fact(f, g, kind)} does not follow from the premises so far")
        return self._record(f, g, kind, why)

    def replace(self, f: Lottery, old: Outcome, new: Outcome, label: str) -> Lottery:
        """Move the mass of ``old`` onto a strictly better ``new`` via the order plus independence."""
        w = f[old]
        if not 0 < w < 1:
            raise ScenarioError(f"{format_outcome(old)} carries mass {w} in {self.label(f)}")
        rest = Lottery({o: p / (1 - w) for o, p in f.items if o != old})
        self.outcome_fact(new, old, Verdict.ABOVE)
        self.name(mix(Lottery.degenerate(new), rest, w), label)
        better, same = self.independence(Lottery.degenerate(new), Lottery.degenerate(old), rest, w)
        assert same == f
        return better

    # output ----------------------------------------------------------------

    def manifest(self, scenario_id: str, params: dict[str, Any]) -> dict[str, Any]:
        u, rel, _, _ = self._compute()
        out = {
            "schema_version": SCHEMA_VERSION,
            "scenario": scenario_id,
            "params": _param_json(params),
            "order": self.order.spec,
            "universe": u.to_json(),
            "generators": self.generators.to_json(u),
            "forbidden": [{"from": u.index(f), "to": u.index(g), "tag": t} for f, g, t in self.forbidden],
        }
        if isinstance(self.order, QualOrder):
            out["dimensions"] = self.order.to_json()
        return out


def order_from_manifest(manifest: dict[str, Any]) -> OutcomeOrder:
    if "dimensions" in manifest:
        return QualOrder.from_json(manifest["dimensions"])
    return parse_order(manifest["order"])


def rebuild(manifest: dict[str, Any]) -> tuple[Relation, OutcomeOrder]:
    """Recompute the closure from a manifest alone."""
    order = order_from_manifest(manifest)
    universe, raw = Universe.from_json(manifest["universe"])
    gens = GeneratorSet.from_json(manifest["generators"], raw)
    return build_closure(universe, gens, order), order


def reverify(result: ScenarioResult) -> list[str]:
    """Re-derive every step and the final verdict from the manifest; returns the problems found."""
    rel, order = rebuild(result.manifest)
    u = rel.universe
    problems = []
    forb = np.zeros(rel.matrix.shape, dtype=bool)
    if "forbidden" in result.manifest:
        raw = Universe.from_json(result.manifest["universe"])[1]
        for d in result.manifest["forbidden"]:
            forb[u.index(raw[d["from"]]), u.index(raw[d["to"]])] = True
        for i, f in enumerate(u):
            for j, g in enumerate(u):
                if f.is_degenerate() and g.is_degenerate() and not order.weakly(f.support[0], g.support[0]):
                    forb[i, j] = True
    r = rel.matrix.astype(np.int64)
    derived = (r.T @ forb.astype(np.int64) @ r.T) > 0
    for s in result.steps:
        if s.level == "outcome":
            want = {"strict": Verdict.ABOVE, "indifferent": Verdict.EQUIVALENT, "incomparable": Verdict.INCOMPARABLE}
            if order.compare(s.left.support[0], s.right.support[0]) is not want[s.kind]:
                problems.append(f"outcome step fails: {s.fact}")
            continue
        i, j = u.index(s.left), u.index(s.right)
        m = rel.matrix
        ok = {
            "weak": m[i, j],
            "indifferent": m[i, j] and m[j, i],
            "strict": m[i, j] and not m[j, i] and ("forbidden" not in result.manifest or derived[j, i]),
            "incomparable": not m[i, j] and not m[j, i],
        }[s.kind]
        if not ok:
            problems.append(f"relation step fails: {s.fact}")
    if result.verdict == "contradiction-reproduced":
        for w in result.witnesses:
            if "f" in w and "g" in w and not rel.strictly(w["f"], w["g"]):
                problems.append(f"witness {w['f']} ≻ {w['g']} not in rebuilt relation")
    return problems


# ---------------------------------------------------------------------------
# shared pieces of the arguments


def _nd_witness(d: Derivation, final: Lottery, base: Lottery) -> dict[str, Any]:
    comps = [
        {"o": o, "o'": p, "verdict": d.order.compare(o, p).value}
        for o in final.support
        for p in base.support
    ]
    return {"f": final, "g": base, "support_comparisons": comps}


def _finish_contradiction(
    scenario_id: str, d: Derivation, final: Lottery, base: Lottery, params: dict[str, Any]
) -> ScenarioResult:
    if not d.consistent():
        raise ScenarioError("declared premises contradict the outcome order directly")
    for o in final.support:
        for p in base.support:
            d.outcome_fact(o, p, Verdict.INCOMPARABLE)
    rel = d.relation()
    report = check_axiom(rel, d.order, "negative-dominance")
    hit = any(w["f"] == final and w["g"] == base for w in report.witnesses)
    verdict = "contradiction-reproduced" if hit else "contradiction-not-reproduced"
    return ScenarioResult(
        scenario_id,
        verdict,
        list(d.steps),
        [_nd_witness(d, final, base)] if hit else [],
        [report],
        params,
        d.manifest(scenario_id, params),
        rel,
    )


def _unidimensional_expectation(tag: str = "unidimensional-expectations"):
    def certify(d: Derivation, f: Lottery, label: str) -> Lottery:
        if not is_unidimensional(f):
            raise PreconditionError(f"{d.label(f)} is not unidimensional")
        e = Lottery.degenerate(expectation(f))
        d.declare(f, e, "indifferent", tag)
        return e

    return certify


def _cross_chain(
    d: Derivation,
    *,
    base: Lottery,
    A: Outcome,
    A_low: Outcome,
    B: Outcome,
    B_low: Outcome,
    A_low_up: Outcome,
    B_low_up: Outcome,
    alpha: Fraction,
    beta: Fraction,
    premise: Callable[[Derivation, Lottery, str], None],
    certainty: Callable[[Derivation, Lottery, str], Lottery],
) -> tuple[Lottery, Lottery]:
    """The four-point argument: X, Y ⪰ base; f = X/Y; improve two points; regroup; certify halves.

    Returns (f++, final) with final ⪰ f++ ≻ ... ⪰ base.
    """
    d.add(delta_o(A), delta_o(B))
    X = d.name(mix(delta_o(A), delta_o(A_low), alpha), "X")
    Y = d.name(mix(delta_o(B), delta_o(B_low), beta), "Y")
    premise(d, X, "X")
    premise(d, Y, "Y")
    indiff = d.holds(X, base, "indifferent") and d.holds(Y, base, "indifferent")
    d.independence(X, base, base, HALF)
    f = d.name(mix(Y, X, HALF), "f")
    d.independence(Y, base, X, HALF)
    d.derive(f, base, "indifferent" if indiff else "strict")

    f1 = d.replace(f, A_low, A_low_up, "f+")
    d.derive(f1, base, "strict")
    f2 = d.replace(f1, B_low, B_low_up, "f++")
    d.derive(f2, base, "strict")

    top = {A, B_low_up}
    lam = sum((p for o, p in f2.items if o in top), Fraction(0))
    T = d.name(Lottery({o: p / lam for o, p in f2.items if o in top}), "T")
    Bl = d.name(Lottery({o: p / (1 - lam) for o, p in f2.items if o not in top}), "B")
    assert mix(T, Bl, lam) == f2
    cT = certainty(d, T, "T")
    cB = certainty(d, Bl, "B")
    d.independence(cT, T, Bl, lam)
    final = mix(cT, cB, lam)
    d.independence(cB, Bl, cT, 1 - lam)
    if d.holds(final, f2, "indifferent"):
        d.derive(f2, final, "indifferent")
    else:
        d.derive(final, f2, "weak")
    d.derive(final, base, "strict")
    return f2, final


def delta_o(o: Outcome) -> Lottery:
    return Lottery.degenerate(o)


def _params(raw: dict[str, Any] | None, defaults: dict[str, Any]) -> dict[str, Any]:
    raw = dict(raw or {})
    unknown = set(raw) - set(defaults)
    if unknown:
        raise ScenarioError(f"unknown parameters {sorted(unknown)}; expected {sorted(defaults)}")
    out = {}
    for k, v in defaults.items():
        val = raw.get(k, v)
        out[k] = rational(val) if isinstance(val, (int, str, Fraction)) and not isinstance(val, bool) and k != "order" else val
    return out


def _positive(params: dict[str, Any], *names: str) -> None:
    for n in names:
        if params[n] is not None and params[n] <= 0:
            raise PreconditionError(f"{n} must be positive, got {format_rational(params[n])}")


# ---------------------------------------------------------------------------
# replays


def _replay_prop1(raw):
    p = _params(raw, {})
    d = Derivation(ParetoBox())
    f = d.name(Lottery.uniform(outcome(4, -2), outcome(-2, 4)), "f*")
    zero = delta(0, 0)
    e = d.name(Lottery.degenerate(expectation(f)), "(1,1)")
    d.declare(f, e, "indifferent", "expectationalism")
    d.outcome_fact(expectation(f), outcome(0, 0), Verdict.ABOVE)
    d.derive(f, zero, "strict")
    return _finish_contradiction("prop1", d, f, zero, p)


def _initial_chain(scenario_id, order, a, b, alpha, params):
    """UE-based chain on (a,0), (x',0), (0,b), (0,y') with mixing weight alpha."""
    x_low = -a * alpha / (1 - alpha)
    y_low = -b * alpha / (1 - alpha)
    zero = outcome(0, 0)
    final_points = (outcome(a, -alpha * b), outcome(-alpha * a, b))
    d = Derivation(order)
    for q in final_points:
        d.outcome_fact(q, zero, Verdict.INCOMPARABLE)
    base = d.name(delta_o(zero), "(0,0)")
    ue = _unidimensional_expectation()

    def premise(dd, X, label):
        e = ue(dd, X, label)
        if e != base:
            raise PreconditionError(f"exp({label}) is {e}, not (0,0)")

    f2, final = _cross_chain(
        d,
        base=base,
        A=outcome(a, 0),
        A_low=outcome(x_low, 0),
        B=outcome(0, b),
        B_low=outcome(0, y_low),
        A_low_up=outcome(x_low, b),
        B_low_up=outcome(a, y_low),
        alpha=alpha,
        beta=alpha,
        premise=premise,
        certainty=ue,
    )
    assert set(final.support) == set(final_points)
    return _finish_contradiction(scenario_id, d, final, base, params)


def _replay_prop2(raw):
    p = _params(raw, {"a": 3})
    _positive(p, "a")
    return _initial_chain("prop2", ParetoBox(), p["a"], p["a"], HALF, p)


def _replay_initial_fact(raw):
    p = _params(raw, {"a": 3, "b": 3, "order": "pareto"})
    _positive(p, "a", "b")
    return _initial_chain("initial-fact", parse_order(p["order"]), p["a"], p["b"], HALF, p)


def prop4_weight(l: Fraction, m: Fraction) -> Fraction:
    """Smallest weight n/(n+1) whose regrouped expectations can both be incomparable to the origin."""
    hi, lo = max(l, m), min(l, m)
    n = 1
    while True:
        alpha = Fraction(n, n + 1)
        if alpha * alpha * hi > lo:
            return alpha
        n += 1


def _prop4_ratio(l: Fraction, m: Fraction, alpha: Fraction) -> Fraction:
    hi, lo = max(l, m), min(l, m)
    low, high = max(lo / alpha, lo * alpha), min(hi / alpha, hi * alpha)
    if low < 1 < high:
        return Fraction(1)
    return (low + high) / 2


def _replay_prop4(raw):
    p = _params(raw, {"l": 2, "m": HALF, "a": 1, "b": None, "alpha": None})
    _positive(p, "l", "m", "a")
    order = Lines(p["l"], p["m"])
    alpha = p["alpha"] if p["alpha"] is not None else prop4_weight(p["l"], p["m"])
    if not 0 < alpha < 1:
        raise PreconditionError("alpha must lie strictly between 0 and 1")
    b = p["b"] if p["b"] is not None else p["a"] * _prop4_ratio(p["l"], p["m"], alpha)
    _positive({"b": b}, "b")
    params = dict(p, alpha=alpha, b=b)
    return _initial_chain("prop4", order, p["a"], b, alpha, params)


def _replay_prop3(raw):
    p = _params(raw, {"a": 1, "b": 1, "x": 0, "y": 0, "eps": HALF})
    _positive(p, "a", "b", "eps")
    a, b, x, y, eps = p["a"], p["b"], p["x"], p["y"], p["eps"]
    if not (-a < x < a and -b < y < b):
        raise PreconditionError("certainty equivalents must lie strictly inside the supports")
    if not (-a < x - eps and -b < y - eps):
        raise PreconditionError("eps too large: need -a < x-eps and -b < y-eps")
    d = Derivation(ParetoBox())
    L1 = d.name(Lottery.uniform(outcome(-a, 0), outcome(a, 0)), "L1")
    L2 = d.name(Lottery.uniform(outcome(0, b), outcome(0, -b)), "L2")
    cx, cy = delta(x, 0), delta(0, y)
    # strict betweenness: the certainty equivalents sit strictly inside
    d.outcome_fact(outcome(a, 0), cx.support[0], Verdict.ABOVE)
    d.outcome_fact(cx.support[0], outcome(-a, 0), Verdict.ABOVE)
    d.outcome_fact(outcome(0, b), cy.support[0], Verdict.ABOVE)
    d.outcome_fact(cy.support[0], outcome(0, -b), Verdict.ABOVE)
    d.declare(L1, cx, "indifferent", "certainty-equivalents+strict-betweenness")
    d.declare(L2, cy, "indifferent", "certainty-equivalents+strict-betweenness")
    F = d.name(Lottery.uniform(outcome(-a, b), outcome(a, -b)), "F")
    target = delta(x, y)
    d.declare(F, target, "indifferent", "certainty-equivalents+dimensional-separability")
    low = d.name(delta(x - eps, y - eps), "(x-eps,y-eps)")
    d.outcome_fact(target.support[0], low.support[0], Verdict.ABOVE)
    d.derive(F, low, "strict")
    return _finish_contradiction("prop3", d, F, low, p)


def _replay_prop5(raw):
    p = _params(raw, {"a": 3, "alpha": HALF, "beta": HALF})
    _positive(p, "a")
    a, alpha, beta = p["a"], p["alpha"], p["beta"]
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise PreconditionError("alpha and beta must lie strictly between 0 and 1")
    d = Derivation(ParetoBox())
    base = d.name(delta(0, 0), "(0,0)")

    def premise(dd, X, label):
        dd.declare(X, base, "indifferent", "unidimensional-continuity")

    def certainty(dd, f, label):
        c = expectation(f)
        # second clause: strictly between two support outcomes, on f's line
        hi = max(f.support, key=lambda o: (o[0] + o[1]))
        lo = min(f.support, key=lambda o: (o[0] + o[1]))
        dd.outcome_fact(hi, c, Verdict.ABOVE)
        dd.outcome_fact(c, lo, Verdict.ABOVE)
        if not is_unidimensional_with(f, delta_o(c)):
            raise PreconditionError(f"{format_outcome(c)} is not unidimensional with {label}")
        ce = dd.name(delta_o(c), "c" if label == "T" else "d")
        dd.declare(f, ce, "indifferent", "unidimensional-certainty-equivalents")
        return ce

    f2, final = _cross_chain(
        d,
        base=base,
        A=outcome(a, 0),
        A_low=outcome(-a, 0),
        B=outcome(0, a),
        B_low=outcome(0, -a),
        A_low_up=outcome(-a, a),
        B_low_up=outcome(a, -a),
        alpha=alpha,
        beta=beta,
        premise=premise,
        certainty=certainty,
    )
    return _finish_contradiction("prop5", d, final, base, p)


def _k_chain(scenario_id, k, premise_tag, params):
    if k <= 3:
        raise PreconditionError(
            f"k={format_rational(k)}: the certified points ({format_rational(-k / 2 + HALF)},{format_rational(k)}) "
            "must be incomparable to (-1,-1), which needs k > 3"
        )
    d = Derivation(ParetoBox())
    base_o = outcome(-1, -1)
    base = d.name(delta_o(base_o), "(-1,-1)")

    def premise(dd, X, label):
        a_, b_ = X.support
        if premise_tag == "k-incomparability":
            # the point one unit below the midpoint is forced below the lottery
            axis = 0 if a_[0] != b_[0] else 1
            c = tuple(Fraction(-1) if i == axis else Fraction(0) for i in range(2))
            v = k_classify(k, a_, b_, c)
            if v is not KVerdict.FORCED_PREFERRED:
                raise PreconditionError(f"{k}-incomparability gives {v.value} for {format_outcome(c)}")
            cd = dd.name(delta_o(c), format_outcome(c))
            dd.declare(X, cd, "strict", "k-incomparability")
            dd.outcome_fact(c, base_o, Verdict.ABOVE)
            dd.derive(X, base, "strict")
        else:
            e = expectation(X)
            dd.outcome_fact(e, base_o, Verdict.ABOVE)
            dd.declare(X, base, "strict", "weak-unidimensional-expectations")

    def certainty(dd, f, label):
        a_, b_ = f.support
        axis = 0 if a_[0] != b_[0] else 1
        lo, hi = min(a_[axis], b_[axis]), max(a_[axis], b_[axis])
        mid = (lo + hi) / 2
        c = tuple(mid + (hi - lo) / (2 * k) if i == axis else a_[i] for i in range(2))
        if premise_tag == "k-incomparability":
            v = k_classify(k, a_, b_, c)
            if v is not KVerdict.FORCED_DISPREFERRED:
                raise PreconditionError(f"{k}-incomparability gives {v.value} for {format_outcome(c)}")
        else:
            dd.outcome_fact(c, expectation(f), Verdict.ABOVE)
        cd = dd.name(delta_o(c), format_outcome(c))
        dd.declare(cd, f, "strict", premise_tag)
        return cd

    f2, final = _cross_chain(
        d,
        base=base,
        A=outcome(k, 0),
        A_low=outcome(-k, 0),
        B=outcome(0, k),
        B_low=outcome(0, -k),
        A_low_up=outcome(-k, k),
        B_low_up=outcome(k, -k),
        alpha=HALF,
        beta=HALF,
        premise=premise,
        certainty=certainty,
    )
    return _finish_contradiction(scenario_id, d, final, base, params)


def _replay_kfact(raw):
    p = _params(raw, {"k": 4})
    _positive(p, "k")
    return _k_chain("kfact", p["k"], "k-incomparability", p)


def _replay_weak_ue(raw):
    p = _params(raw, {"a": 4})
    _positive(p, "a")
    return _k_chain("weak-ue", p["a"], "weak-unidimensional-expectations", p)


# qualitative ---------------------------------------------------------------


def default_dimensions(kind: str) -> QualOrder:
    """Dimension specs used by the qualitative replays when none are supplied."""
    if kind == "qual-a1":
        dims = [
            DimensionSpec.chain(f"D{i}", [f"a{i}", f"b{i}", f"c{i}", f"d{i}"], [EquivalenceFact(f"a{i}", f"d{i}", HALF, f"b{i}")])
            for i in (1, 2)
        ]
    elif kind == "qual-a2":
        dims = [
            DimensionSpec.chain(
                f"D{i}",
                [f"a{i}", f"b{i}", f"c{i}", f"d{i}"],
                [EquivalenceFact(f"a{i}", f"d{i}", HALF, f"b{i}"), DominatesFact(f"c{i}", f"b{i}", HALF, f"d{i}")],
            )
            for i in (1, 2)
        ]
    elif kind == "qual-a3":
        dims = [DimensionSpec.chain(f"D{i}", [f"a{i}", f"b{i}", f"m{i}", f"c{i}"]) for i in (1, 2)]
    else:
        raise ScenarioError(f"no default dimensions for {kind!r}")
    return QualOrder(dims)


def _load_dims(p, kind) -> QualOrder:
    if p.get("dims"):
        order = p["dims"] if isinstance(p["dims"], QualOrder) else QualOrder.load(p["dims"])
    else:
        order = default_dimensions(kind)
    if len(order.dims) != 2:
        raise PreconditionError("the qualitative replays use exactly two dimensions")
    return order


def _replay_qual_a1(raw):
    p = _params(raw, {"dims": None})
    order = _load_dims(p, "qual-a1")
    D1, D2 = order.dims
    d = Derivation(order)
    for o in order.outcomes():
        d.add(delta_o(o))
    forced = derive_unanimous_equivalence(order.dims)
    for f, g in sorted(forced, key=lambda fg: (fg[0].sort_key(), fg[1].sort_key())):
        d.add(f, g)
    eq1 = next((f for f in D1.facts if isinstance(f, EquivalenceFact) and f.alpha == HALF), None)
    eq2 = next((f for f in D2.facts if isinstance(f, EquivalenceFact) and f.alpha == HALF), None)
    if eq1 is None or eq2 is None:
        raise PreconditionError("each dimension needs a uniform equivalence fact a_i/d_i ∼_i b_i")
    a1, d1, b1 = eq1.a, eq1.c, eq1.b
    a2, d2, b2 = eq2.a, eq2.c, eq2.b
    c1 = _between(D1, b1, d1)
    c2 = _between(D2, b2, d2)
    F = d.name(mix(order.point(a1, d2), order.point(d1, a2), HALF), f"({a1},{d2})/({d1},{a2})")
    target = order.point(b1, b2)
    if (F, target) not in forced:
        raise ScenarioError("unanimous equivalence does not force the cross lottery")
    for f, g in sorted(forced, key=lambda fg: (fg[0].sort_key(), fg[1].sort_key())):
        d.declare(f, g, "indifferent", "unanimous-equivalence")
    low = order.point(c1, c2)
    d.outcome_fact(target.support[0], low.support[0], Verdict.ABOVE)
    d.derive(F, low, "strict")
    return _finish_contradiction("qual-a1", d, F, low, {"dims": order.spec})


def _between(dim: DimensionSpec, hi: str, lo: str) -> str:
    for e in dim.elements:
        if e not in (hi, lo) and dim.weakly(hi, e) and not dim.weakly(e, hi) and dim.weakly(e, lo) and not dim.weakly(lo, e):
            return e
    raise PreconditionError(f"dimension {dim.name} has no label strictly between {hi} and {lo}")


def _replay_qual_a2(raw):
    p = _params(raw, {"dims": None})
    order = _load_dims(p, "qual-a2")
    D1, D2 = order.dims  # j = 1, k = 2
    eq1 = next((f for f in D1.facts if isinstance(f, EquivalenceFact)), None)
    eq2 = next((f for f in D2.facts if isinstance(f, EquivalenceFact)), None)
    if eq1 is None or eq2 is None:
        raise PreconditionError("each dimension needs an equivalence fact a α d ∼ b")
    alpha, beta = eq1.alpha, eq2.alpha
    a1, d1, b1 = eq1.a, eq1.c, eq1.b
    a2, d2, b2 = eq2.a, eq2.c, eq2.b
    w1 = beta / (beta + 1 - alpha)
    w2 = alpha / (alpha + 1 - beta)
    dom1 = next((f for f in D1.facts if isinstance(f, DominatesFact) and f.b == b1 and f.d == d1 and f.beta == w1), None)
    dom2 = next((f for f in D2.facts if isinstance(f, DominatesFact) and f.b == b2 and f.d == d2 and f.beta == w2), None)
    if dom1 is None or dom2 is None:
        raise PreconditionError(
            f"need c_1 ⪰ b_1 {format_rational(w1)} d_1 and c_2 ⪰ b_2 {format_rational(w2)} d_2 among the facts"
        )
    c1, c2 = dom1.c, dom2.c
    d = Derivation(order)
    base = d.name(order.point(b1, b2), f"({b1},{b2})")
    tag = "unidimensional-dimensional-separability"

    def premise(dd, X, label):
        dd.declare(X, base, "indifferent", tag)

    def certainty(dd, f, label):
        if label == "T":
            c = dd.name(order.point(a1, c2), f"({a1},{c2})")
        else:
            c = dd.name(order.point(c1, a2), f"({c1},{a2})")
        dd.declare(c, f, "weak", tag)
        return c

    enc = order.encode
    f2, final = _cross_chain(
        d,
        base=base,
        A=enc((a1, b2)),
        A_low=enc((d1, b2)),
        B=enc((b1, a2)),
        B_low=enc((b1, d2)),
        A_low_up=enc((d1, a2)),
        B_low_up=enc((a1, d2)),
        alpha=alpha,
        beta=beta,
        premise=premise,
        certainty=certainty,
    )
    return _finish_contradiction("qual-a2", d, final, base, {"dims": order.spec})


def _replay_qual_a3(raw):
    p = _params(raw, {"dims": None})
    order = _load_dims(p, "qual-a3")
    D1, D2 = order.dims
    # labels: the top three of each chain plus a declared certainty-equivalent label m between b and c
    a1, b1, m1, c1 = _chain_labels(D1)
    a2, b2, m2, c2 = _chain_labels(D2)
    d = Derivation(order)
    base = d.name(order.point(b1, b2), f"({b1},{b2})")

    def premise(dd, X, label):
        hi, lo = X.support[0], X.support[1]
        if not dd.order.strictly(hi, lo):
            hi, lo = lo, hi
        dd.outcome_fact(hi, base.support[0], Verdict.ABOVE)
        dd.outcome_fact(base.support[0], lo, Verdict.ABOVE)
        dd.declare(X, base, "indifferent", "qualitative-unidimensional-continuity")

    def certainty(dd, f, label):
        c = order.point(a1, m2) if label == "T" else order.point(m1, a2)
        dd.name(c, order.name(c))
        hi, lo = f.support[0], f.support[1]
        if not dd.order.strictly(hi, lo):
            hi, lo = lo, hi
        dd.outcome_fact(hi, c.support[0], Verdict.ABOVE)
        dd.outcome_fact(c.support[0], lo, Verdict.ABOVE)
        dd.declare(f, c, "indifferent", "qualitative-unidimensional-certainty-equivalents")
        return c

    enc = order.encode
    f2, final = _cross_chain(
        d,
        base=base,
        A=enc((a1, b2)),
        A_low=enc((c1, b2)),
        B=enc((b1, a2)),
        B_low=enc((b1, c2)),
        A_low_up=enc((c1, a2)),
        B_low_up=enc((a1, c2)),
        alpha=HALF,
        beta=HALF,
        premise=premise,
        certainty=certainty,
    )
    return _finish_contradiction("qual-a3", d, final, base, {"dims": order.spec})


def _chain_labels(dim: DimensionSpec) -> tuple[str, str, str, str]:
    """(a, b, m, c) with a ≻ b ≻ m ≻ c, m being the declared certainty-equivalent label."""
    elems = sorted(dim.elements, key=lambda e: -sum(dim.weakly(e, x) for x in dim.elements))
    if len(elems) != 4 or not all(
        dim.weakly(elems[i], elems[i + 1]) and not dim.weakly(elems[i + 1], elems[i]) for i in range(3)
    ):
        raise PreconditionError(f"dimension {dim.name} must be a strict chain a ≻ b ≻ m ≻ c")
    return tuple(elems)  # type: ignore[return-value]


# consistency ---------------------------------------------------------------

CONSISTENCY_SEEDS = (
    delta(0, 0),
    delta(2, 2),
    delta(4, -2),
    delta(-2, 4),
)
CONSISTENCY_AXIOMS = (
    "negative-dominance",
    "good-expectations",
    "stochastic-dominance-respect",
    "comparable-independence",
    "pareto-consistency",
    "converse-pareto-consistency",
    "preorder",
)
COROLLARY_AXIOMS = (
    "negative-dominance",
    "comparable-independence",
    "stochastic-dominance-respect",
    "pareto-consistency",
    "converse-pareto-consistency",
    "preorder",
)


def replay_lotteries() -> list[Lottery]:
    """Every lottery appearing in the two-dimensional Pareto replays at default parameters."""
    out: set[Lottery] = set()
    for sid in ("prop1", "prop2", "prop3", "kfact"):
        out.update(REPLAYS[sid](None).relation.universe)
    return sorted(out)


def consistency_universe() -> Universe:
    closed = mixture_closure(CONSISTENCY_SEEDS, [HALF], 2)
    extra = [
        Lottery.uniform(outcome(0, 0), outcome(0, 3), outcome(3, 3)),
        Lottery.uniform(outcome(4, 4), outcome(-2, -2)),
        *replay_lotteries(),
    ]
    extra += [Lottery.degenerate(expectation(f)) for f in extra]
    return closed.extended(extra)


def _consistency(scenario_id: str, axioms: tuple[str, ...], raw) -> ScenarioResult:
    p = _params(raw, {})
    order = ParetoBox()
    universe = consistency_universe()
    gens = GeneratorSet(
        frozenset({"pareto-lift", "good-expectations", "stochastic-dominance"}), auto_insert_expectations=True
    )
    rel = build_closure(universe, gens, order)
    reports = check_all(rel, order, axioms, [HALF])
    steps = []
    # the two failures of mixing the minimal theory exhibits
    a = Fraction(3)
    zero = delta(0, 0)
    f = Lottery.uniform(outcome(-a, 0), outcome(a, 0), outcome(0, a), outcome(0, -a))
    for x, y, kind, why in (
        (Lottery.uniform(outcome(-a, 0), outcome(a, 0)), zero, "indifferent", "good-expectations"),
        (f, zero, "incomparable", "minimal-closure"),
        (Lottery.uniform(outcome(-a / 2, a), outcome(a, -a / 2)), zero, "incomparable", "minimal-closure"),
    ):
        if x in rel.universe and y in rel.universe:
            ok = {
                "indifferent": rel.indifferent,
                "incomparable": rel.incomparable,
            }[kind](x, y)
            if ok:
                steps.append(Step(f"{x} {_SYMBOL[kind]} {y}", kind, x, y, why))
    all_hold = all(r.holds for r in reports)
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario_id,
        "params": {},
        "order": order.spec,
        "universe": rel.universe.to_json(),
        "generators": GeneratorSet(gens.rules).to_json(rel.universe),
        "axioms": list(axioms),
        "alphas": ["1/2"],
    }
    return ScenarioResult(
        scenario_id,
        "consistency-verified" if all_hold else "consistency-not-verified",
        steps,
        [],
        reports,
        p,
        manifest,
        rel,
    )


def _replay_prop9(raw):
    return _consistency("prop9", CONSISTENCY_AXIOMS, raw)


def _replay_corollary(raw):
    return _consistency("corollary", COROLLARY_AXIOMS, raw)


QUADRUPLE = {
    "a": outcome(-2, 3),
    "a+": outcome(-2, 4),
    "b": outcome(3, -2),
    "b+": outcome(4, -2),
}


def quadruple_universe() -> Universe:
    return mixture_closure([delta_o(o) for o in QUADRUPLE.values()], [HALF], 1)


def _replay_vst(raw):
    p = _params(raw, {})
    order = ParetoBox()
    q = QUADRUPLE
    universe = quadruple_universe()
    gens = GeneratorSet(frozenset({"pareto-lift", "stochastic-dominance"}))
    rel = build_closure(universe, gens, order)
    top = Lottery.uniform(q["a+"], q["b+"])
    low = Lottery.uniform(q["a"], q["b"])
    sd = check_stochastic_dominance(top, low, order)
    steps = []
    for hi, lo in (("a+", "a"), ("b+", "b")):
        steps.append(Step(f"{format_outcome(q[hi])} ≻ {format_outcome(q[lo])}", "strict", delta_o(q[hi]), delta_o(q[lo]), "pareto", "outcome"))
    for x, y in (("a", "b"), ("a+", "b"), ("a", "b+")):
        steps.append(
            Step(f"{format_outcome(q[x])} ⋈ {format_outcome(q[y])}", "incomparable", delta_o(q[x]), delta_o(q[y]), "pareto", "outcome")
        )
    if rel.strictly(top, low):
        steps.append(Step(f"{top} ≻ {low}", "strict", top, low, "stochastic-dominance"))
    vst = check_axiom(rel, order, "vst")
    nd = check_axiom(rel, order, "negative-dominance")
    reproduced = sd.dominates and vst.verdict.value == "violated" and nd.holds
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "scenario": "vst",
        "params": {},
        "order": order.spec,
        "universe": universe.to_json(),
        "generators": gens.to_json(universe),
    }
    return ScenarioResult(
        "vst",
        "contradiction-reproduced" if reproduced else "contradiction-not-reproduced",
        steps,
        [{"f": top, "g": low, "coupling": sd.witness.to_json() if sd.witness else None}],
        [vst, nd],
        p,
        manifest,
        rel,
    )


REPLAYS: dict[str, Callable[[dict[str, Any] | None], ScenarioResult]] = {
    "prop1": _replay_prop1,
    "prop2": _replay_prop2,
    "prop3": _replay_prop3,
    "initial-fact": _replay_initial_fact,
    "prop4": _replay_prop4,
    "prop5": _replay_prop5,
    "weak-ue": _replay_weak_ue,
    "kfact": _replay_kfact,
    "prop9": _replay_prop9,
    "corollary": _replay_corollary,
    "vst": _replay_vst,
    "qual-a1": _replay_qual_a1,
    "qual-a2": _replay_qual_a2,
    "qual-a3": _replay_qual_a3,
}


def replay(scenario_id: str, params: dict[str, Any] | None = None, **kw: Any) -> ScenarioResult:
    if scenario_id not in REPLAYS:
        raise ScenarioError(f"unknown scenario {scenario_id!r}; known: {', '.join(REPLAYS)}")
    merged = {**(params or {}), **kw}
    merged = {k: v for k, v in merged.items() if v is not None}
    return REPLAYS[scenario_id](merged)


def __getattr__(name: str):
    # search lives in its own module; re-exported here lazily to avoid an import cycle
    if name == "search_conjecture":
        from .search import search_conjecture

        return search_conjecture
    raise AttributeError(name)
