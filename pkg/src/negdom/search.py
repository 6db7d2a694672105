"""Bounded, seeded search over small universes for evidence on the open questions.

Every candidate universe is drawn from its own RNG stream keyed by
(question, seed, index), so results do not depend on worker scheduling.
Reports are evidence only; nothing here settles a conjecture.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any

import numpy as np

from .axioms import check_all
from .lottery import Lottery, expectation, is_unidimensional, mix, outcome
from .orders import ParetoBox
from .relation import (
    DeclaredPair,
    GeneratorSet,
    Relation,
    Universe,
    UniverseError,
    build_closure,
    max_universe_size,
    mixture_closure,
)
from .scenarios import SCHEMA_VERSION, ScenarioError, ScenarioResult

QUESTIONS = ("open-q1", "open-q2-evidence", "open-q3", "conjecture1", "conjecture2")

DEFAULT_BOUNDS: dict[str, Any] = {
    "coord": 3,
    "den": 1,
    "support": 2,
    "seeds": 3,
    "depth": 1,
    "universe": 40,
    "unidimensional": True,
}
GUARDS = {"coord": 20, "den": 8, "support": 4, "seeds": 6, "depth": 2}
MAX_BUDGET = 10_000
DEFAULT_BUDGET = 40
MAX_ROUNDS = 12
HALF = Fraction(1, 2)


class SearchError(ScenarioError):
    pass


def _bounds(raw: dict[str, Any] | None) -> dict[str, Any]:
    b = dict(DEFAULT_BOUNDS)
    for k, v in (raw or {}).items():
        if k not in b:
            raise SearchError(f"unknown bound {k!r}; known: {sorted(b)}")
        b[k] = bool(v) if k == "unidimensional" else int(v)
    for k, cap in GUARDS.items():
        if not 0 <= b[k] <= cap:
            raise SearchError(f"bound {k}={b[k]} outside guard [0, {cap}]")
    if b["support"] < 1 or b["seeds"] < 1 or b["den"] < 1:
        raise SearchError("support, seeds and den must be at least 1")
    if not 1 <= b["universe"] <= max_universe_size():
        raise SearchError(f"universe bound must lie in [1, {max_universe_size()}]")
    return b


# candidates -----------------------------------------------------------------


def _coord(rng: random.Random, b: dict[str, Any]) -> Fraction:
    q = rng.randint(1, b["den"])
    return Fraction(rng.randint(-b["coord"] * q, b["coord"] * q), q)


def candidate_universe(question: str, seed: int, index: int, b: dict[str, Any]) -> Universe | None:
    rng = random.Random(f"{question}/{seed}/{index}")
    seeds = set()
    for _ in range(b["seeds"]):
        k = rng.randint(1, b["support"])
        pts = {outcome(_coord(rng, b), _coord(rng, b)) for _ in range(k)}
        seeds.add(Lottery.uniform(*pts))
    try:
        u = mixture_closure(sorted(seeds), [HALF], max(b["depth"], 1), cap=b["universe"])
    except UniverseError:
        return None
    extra = [Lottery.degenerate(expectation(f)) for f in u]
    u = u.extended(extra)
    if not b["unidimensional"]:
        kept = [f for f in u if f.is_degenerate() or not is_unidimensional(f)]
        u = Universe(kept, u.mixture)
    if len(u) > b["universe"]:
        return None
    return u


# mixing fixpoints -------------------------------------------------------------


def _mix_table(u: Universe, alpha: Fraction) -> list[tuple[int, int, int]]:
    out = []
    for i, f in enumerate(u):
        for h, g in enumerate(u):
            k = u.get(mix(f, g, alpha))
            if k is not None:
                out.append((i, h, k))
    return out


def _close_under(u: Universe, gens: GeneratorSet, mode: str, comparable=None) -> tuple[Relation, GeneratorSet]:
    """Add mixing instances as declared pairs until the closure stops growing."""
    order = ParetoBox()
    table = _mix_table(u, HALF)
    by_h: dict[int, list[tuple[int, int]]] = {}
    for i, h, k in table:
        by_h.setdefault(h, []).append((i, k))
    for _ in range(MAX_ROUNDS):
        rel = build_closure(u, gens, order)
        m = rel.matrix
        ind = m & m.T
        new: list[DeclaredPair] = []
        for h, rows in sorted(by_h.items()):
            for i, k in rows:
                for j, l in rows:
                    if i == j:
                        continue
                    if comparable is not None and not (comparable[i, j] and comparable[i, h] and comparable[j, h]):
                        continue
                    if mode == "indifferent":
                        if ind[i, j] and ind[j, h] and not ind[k, l]:
                            new.append(DeclaredPair(u[k], u[l], True, "indifferent-independence"))
                    else:
                        if m[i, j] and not m[k, l]:
                            new.append(DeclaredPair(u[k], u[l], False, mode))
                        if m[k, l] and not m[i, j]:
                            new.append(DeclaredPair(u[i], u[j], False, mode))
        if not new:
            return rel, gens
        gens = gens.with_declared(*new)
    raise SearchError("mixing fixpoint did not settle within the round limit")


def _cross_comparable(u: Universe) -> np.ndarray:
    order = ParetoBox()
    n = len(u)
    c = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            c[i, j] = all(order.comparable(o, p) for o in u[i].support for p in u[j].support)
    return c


# per-question evaluation ------------------------------------------------------

PLANS: dict[str, dict[str, Any]] = {
    "open-q1": {
        "rules": ("pareto-lift", "stochastic-dominance", "unidimensional-expectations"),
        "mixing": "comparable-independence",
        "premises": ("preorder",),
        "conclusion": "good-expectations",
    },
    "open-q2-evidence": {
        "rules": ("pareto-lift", "good-expectations", "stochastic-dominance"),
        "mixing": None,
        "premises": (),
        "conclusion": None,
        "suite": ("negative-dominance", "comparable-independence", "stochastic-dominance-respect", "preorder"),
    },
    "open-q3": {
        "rules": ("pareto-lift", "good-expectations", "stochastic-dominance"),
        "mixing": "indifferent",
        "premises": (),
        "conclusion": None,
        "suite": (
            "indifferent-independence",
            "negative-dominance",
            "good-expectations",
            "stochastic-dominance-respect",
            "preorder",
        ),
    },
    "conjecture1": {
        "rules": ("pareto-lift", "stochastic-dominance", "unidimensional-expectations"),
        "mixing": None,
        "premises": (
            "negative-dominance",
            "comparable-independence",
            "stochastic-dominance-respect",
            "unidimensional-expectations",
            "pareto-consistency",
            "converse-pareto-consistency",
            "preorder",
        ),
        "conclusion": "good-expectations",
    },
    "conjecture2": {
        "rules": ("pareto-lift", "unidimensional-expectations"),
        "mixing": "independence",
        "premises": (
            "independence",
            "unidimensional-expectations",
            "pareto-consistency",
            "converse-pareto-consistency",
            "preorder",
        ),
        "conclusion": "expectationalism",
    },
}


def _uses_unidimensional(question: str) -> bool:
    return "unidimensional-expectations" in PLANS[question]["rules"]


def _has_unidimensional_instance(u: Universe) -> bool:
    return any(not f.is_degenerate() and is_unidimensional(f) and Lottery.degenerate(expectation(f)) in u for f in u)


def evaluate(question: str, u: Universe) -> dict[str, Any] | None:
    """Build the question's relation on ``u`` and classify it; None when the premises are vacuous."""
    plan = PLANS[question]
    if _uses_unidimensional(question) and not _has_unidimensional_instance(u):
        return None
    gens = GeneratorSet(frozenset(plan["rules"]))
    mode = plan["mixing"]
    if mode is None:
        rel = build_closure(u, gens, ParetoBox())
    elif mode == "comparable-independence":
        rel, gens = _close_under(u, gens, "comparable-independence", _cross_comparable(u))
    else:
        rel, gens = _close_under(u, gens, mode)
    names = list(plan.get("suite", ())) or [*plan["premises"], plan["conclusion"]]
    reports = check_all(rel, ParetoBox(), names, [HALF])
    verdicts = {r.axiom.name: r.verdict.value for r in reports}
    if plan["conclusion"] is None:
        bad = [n for n, v in verdicts.items() if v == "violated"]
        kind = "forced-violation" if bad else "joint-satisfaction"
    else:
        premises_hold = all(verdicts[p] == "holds" for p in plan["premises"])
        concl = verdicts[plan["conclusion"]]
        if premises_hold and concl == "violated":
            kind = "premises-hold-conclusion-fails"
        elif premises_hold:
            kind = "premises-hold-conclusion-" + ("holds" if concl == "holds" else "undetermined")
        else:
            kind = "premises-fail"
    return {
        "classification": kind,
        "verdicts": verdicts,
        "manifest": {
            "order": "pareto",
            "universe": rel.universe.to_json(),
            "generators": gens.to_json(rel.universe),
            "axioms": names,
            "alphas": ["1/2"],
        },
        "size": len(rel.universe),
        "witness_counts": {r.axiom.name: len(r.witnesses) for r in reports},
    }


def _job(args: tuple[str, int, int, dict[str, Any]]) -> dict[str, Any] | None:
    question, seed, index, b = args
    u = candidate_universe(question, seed, index, b)
    if u is None:
        return None
    found = evaluate(question, u)
    if found is not None:
        found["candidate"] = index
    return found


REPORTED = {
    "open-q3": {"joint-satisfaction", "forced-violation"},
    "open-q2-evidence": {"joint-satisfaction", "forced-violation"},
    "open-q1": {"premises-hold-conclusion-fails", "premises-hold-conclusion-holds"},
    "conjecture1": {"premises-hold-conclusion-fails"},
    "conjecture2": {"premises-hold-conclusion-fails"},
}


def search_conjecture(
    question: str,
    bounds: dict[str, Any] | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    workers: int = 1,
) -> ScenarioResult:
    if question not in QUESTIONS:
        raise SearchError(f"unknown question {question!r}; known: {', '.join(QUESTIONS)}")
    if not 1 <= budget <= MAX_BUDGET:
        raise SearchError(f"budget must lie in [1, {MAX_BUDGET}]")
    b = _bounds(bounds)
    jobs = [(question, seed, i, b) for i in range(budget)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job, jobs))
    else:
        results = [_job(j) for j in jobs]
    candidates = [r for r in results if r is not None]
    findings = [r for r in candidates if r["classification"] in REPORTED[question]]
    tally: dict[str, int] = {}
    for r in candidates:
        tally[r["classification"]] = tally.get(r["classification"], 0) + 1
    report = {
        "schema_version": SCHEMA_VERSION,
        "status": "evidence",
        "question": question,
        "seed": seed,
        "budget": budget,
        "bounds": b,
        "candidates": len(candidates),
        "classifications": tally,
        "findings": findings,
    }
    return ScenarioResult(f"search:{question}", "search-report", [], findings, [], {"seed": seed}, report)


def report_json(result: ScenarioResult) -> str:
    return json.dumps(result.manifest, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def reverify_finding(finding: dict[str, Any]) -> bool:
    """Rebuild a finding's relation from its manifest and confirm every verdict."""
    m = finding["manifest"]
    u, raw = Universe.from_json(m["universe"])
    gens = GeneratorSet.from_json(m["generators"], raw)
    rel = build_closure(u, gens, ParetoBox())
    reports = check_all(rel, ParetoBox(), m["axioms"], [Fraction(a) for a in m["alphas"]])
    return {r.axiom.name: r.verdict.value for r in reports} == finding["verdicts"]


__all__ = [
    "QUESTIONS",
    "DEFAULT_BOUNDS",
    "SearchError",
    "search_conjecture",
    "report_json",
    "reverify_finding",
    "candidate_universe",
    "evaluate",
]
