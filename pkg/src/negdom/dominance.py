"""Stochastic dominance between lotteries under an incomplete outcome order.

``f`` dominates ``g`` when some coupling moves all of f's mass onto g's mass
along weakly-preferred pairs and puts positive mass on a strictly-preferred
pair.  Existence is a bipartite transportation problem; we decide it with an
exact max-flow, then maximise strict mass with an exact min-cost flow.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any

from .lottery import DimensionMismatch, Lottery, Outcome, format_outcome, format_rational, outcome, rational
from .orders import OutcomeOrder

ORACLE_GUARD = 12


class OracleGuardError(ValueError):
    pass


@dataclass(frozen=True)
class Coupling:
    entries: tuple[tuple[Outcome, Outcome, Fraction], ...]

    def violations(self, f: Lottery, g: Lottery, order: OutcomeOrder) -> list[str]:
        """Every broken coupling invariant, checked without any solver."""
        problems = []
        src: dict[Outcome, Fraction] = {}
        tgt: dict[Outcome, Fraction] = {}
        for s, t, w in self.entries:
            if w <= 0:
                problems.append(f"non-positive mass {format_rational(w)}")
            if not order.weakly(s, t):
                problems.append(f"{format_outcome(s)} is not weakly above {format_outcome(t)}")
            src[s] = src.get(s, Fraction(0)) + w
            tgt[t] = tgt.get(t, Fraction(0)) + w
        if src != dict(f.items):
            problems.append("source marginal differs from f")
        if tgt != dict(g.items):
            problems.append("target marginal differs from g")
        return problems

    def strict_mass(self, order: OutcomeOrder) -> Fraction:
        return sum((w for s, t, w in self.entries if order.strictly(s, t)), Fraction(0))

    def to_json(self) -> list[dict[str, Any]]:
        return [
            {
                "source": [format_rational(c) for c in s],
                "target": [format_rational(c) for c in t],
                "mass": format_rational(w),
            }
            for s, t, w in self.entries
        ]

    @classmethod
    def from_json(cls, data: list) -> "Coupling":
        return cls(
            tuple(
                (outcome(*e["source"]), outcome(*e["target"]), rational(e["mass"])) for e in data
            )
        )


@dataclass(frozen=True)
class DominanceVerdict:
    dominates: bool
    witness: Coupling | None = None
    strict_mass: Fraction = Fraction(0)
    feasible: bool = False

    def to_json(self) -> dict[str, Any]:
        return {
            "dominates": self.dominates,
            "feasible": self.feasible,
            "strict_mass": format_rational(self.strict_mass),
            "witness": self.witness.to_json() if self.witness else None,
        }


# ---------------------------------------------------------------------------
# exact flow network


class _Network:
    def __init__(self, n: int):
        self.adj: list[list[list]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: Fraction, cost: int = 0) -> list:
        fwd = [v, cap, cost, None]
        back = [u, Fraction(0), -cost, fwd]
        fwd[3] = back
        self.adj[u].append(fwd)
        self.adj[v].append(back)
        return fwd

    def max_flow(self, s: int, t: int) -> Fraction:
        """Edmonds-Karp on exact capacities."""
        total = Fraction(0)
        while True:
            parent: list = [None] * len(self.adj)
            parent[s] = s
            queue = deque([s])
            while queue and parent[t] is None:
                u = queue.popleft()
                for e in self.adj[u]:
                    if e[1] > 0 and parent[e[0]] is None:
                        parent[e[0]] = e
                        queue.append(e[0])
            if parent[t] is None:
                return total
            path, v = [], t
            while v != s:
                e = parent[v]
                path.append(e)
                v = e[3][0]
            push = min(e[1] for e in path)
            for e in path:
                e[1] -= push
                e[3][1] += push
            total += push

    def min_cost_flow(self, s: int, t: int) -> tuple[Fraction, int | Fraction]:
        """Successive shortest paths (Bellman-Ford); returns (max flow, min cost)."""
        n = len(self.adj)
        flow, cost = Fraction(0), Fraction(0)
        while True:
            dist: list = [None] * n
            parent: list = [None] * n
            dist[s] = 0
            for _ in range(n - 1):
                changed = False
                for u in range(n):
                    if dist[u] is None:
                        continue
                    for e in self.adj[u]:
                        if e[1] > 0 and (dist[e[0]] is None or dist[u] + e[2] < dist[e[0]]):
                            dist[e[0]] = dist[u] + e[2]
                            parent[e[0]] = e
                            changed = True
                if not changed:
                    break
            if dist[t] is None:
                return flow, cost
            path, v = [], t
            while v != s:
                e = parent[v]
                path.append(e)
                v = e[3][0]
            push = min(e[1] for e in path)
            for e in path:
                e[1] -= push
                e[3][1] += push
            flow += push
            cost += push * dist[t]


def _edges(f: Lottery, g: Lottery, order: OutcomeOrder) -> list[tuple[int, int, bool]]:
    out = []
    for i, o in enumerate(f.support):
        for j, p in enumerate(g.support):
            if order.weakly(o, p):
                out.append((i, j, not order.weakly(p, o)))
    return out


def _check_dims(f: Lottery, g: Lottery) -> None:
    if f.dim != g.dim:
        raise DimensionMismatch(f"dimension {f.dim} vs {g.dim}")


def check_stochastic_dominance(f: Lottery, g: Lottery, order: OutcomeOrder) -> DominanceVerdict:
    _check_dims(f, g)
    fs, gs = f.items, g.items
    m, n = len(fs), len(gs)
    edges = _edges(f, g, order)
    # every source needs a target and vice versa, otherwise no coupling exists
    if {i for i, _, _ in edges} != set(range(m)) or {j for _, j, _ in edges} != set(range(n)):
        return DominanceVerdict(False, None, Fraction(0), False)

    s, t = m + n, m + n + 1

    def build():
        net = _Network(m + n + 2)
        for i, (_, p) in enumerate(fs):
            net.add_edge(s, i, p)
        for j, (_, p) in enumerate(gs):
            net.add_edge(m + j, t, p)
        arcs = [(i, j, strict, net.add_edge(i, m + j, Fraction(1), -1 if strict else 0)) for i, j, strict in edges]
        return net, arcs

    net, _ = build()
    if net.max_flow(s, t) != 1:
        return DominanceVerdict(False, None, Fraction(0), False)

    net, arcs = build()
    flow, cost = net.min_cost_flow(s, t)
    assert flow == 1
    entries = []
    for i, j, _, arc in arcs:
        w = Fraction(1) - arc[1]
        if w > 0:
            entries.append((fs[i][0], gs[j][0], w))
    strict = Fraction(-cost)
    witness = Coupling(tuple(entries))
    return DominanceVerdict(strict > 0, witness, strict, True)


def stochastically_dominates(f: Lottery, g: Lottery, order: OutcomeOrder) -> bool:
    return check_stochastic_dominance(f, g, order).dominates


def naive_upper_set_dominance(f: Lottery, g: Lottery, order: OutcomeOrder) -> bool:
    """The textbook upper-set definition, which misfires once outcomes can be incomparable."""
    _check_dims(f, g)
    strict = False
    for o in sorted(set(f.support) | set(g.support)):
        mf = sum((p for q, p in f.items if order.weakly(q, o)), Fraction(0))
        mg = sum((p for q, p in g.items if order.weakly(q, o)), Fraction(0))
        if mf < mg:
            return False
        strict = strict or mf > mg
    return strict


def brute_force_dominance_oracle(f: Lottery, g: Lottery, order: OutcomeOrder) -> DominanceVerdict:
    """Decide dominance by enumerating vertices of the transportation polytope.

    Every vertex is carried by a spanning forest of the allowed bipartite
    edges, and is then pinned down by peeling leaves.  Used only as an
    independent check on :func:`check_stochastic_dominance`.
    """
    _check_dims(f, g)
    fs, gs = f.items, g.items
    m, n = len(fs), len(gs)
    if m * n > ORACLE_GUARD:
        raise OracleGuardError(f"support product {m * n} exceeds oracle guard {ORACLE_GUARD}")
    allowed = [(i, j) for i in range(m) for j in range(n) if order.weakly(fs[i][0], gs[j][0])]
    best: tuple[Fraction, dict] | None = None
    for size in range(1, min(len(allowed), m + n - 1) + 1):
        for subset in combinations(allowed, size):
            sol = _solve_forest(subset, [p for _, p in fs], [p for _, p in gs])
            if sol is None:
                continue
            strict = sum(
                (w for (i, j), w in sol.items() if not order.weakly(gs[j][0], fs[i][0])), Fraction(0)
            )
            if best is None or strict > best[0]:
                best = (strict, sol)
    if best is None:
        return DominanceVerdict(False, None, Fraction(0), False)
    strict, sol = best
    witness = Coupling(tuple((fs[i][0], gs[j][0], w) for (i, j), w in sorted(sol.items()) if w > 0))
    return DominanceVerdict(strict > 0, witness, strict, True)


def _solve_forest(edges, supply, demand):
    """Unique edge values on a forest meeting the marginals, or None."""
    nodes = [("f", i) for i in range(len(supply))] + [("g", j) for j in range(len(demand))]
    residual = {("f", i): p for i, p in enumerate(supply)}
    residual.update({("g", j): p for j, p in enumerate(demand)})
    incident: dict = {v: set() for v in nodes}
    for e in edges:
        incident[("f", e[0])].add(e)
        incident[("g", e[1])].add(e)
    # a forest on k nodes has at most k-1 edges; peeling fails on cycles
    values = {}
    remaining = set(edges)
    while remaining:
        leaf = next((v for v in nodes if len(incident[v]) == 1), None)
        if leaf is None:
            return None
        (e,) = incident[leaf]
        w = residual[leaf]
        if w < 0:
            return None
        values[e] = w
        other = ("g", e[1]) if leaf[0] == "f" else ("f", e[0])
        residual[leaf] -= w
        residual[other] -= w
        incident[leaf].discard(e)
        incident[other].discard(e)
        remaining.discard(e)
    if any(r != 0 for r in residual.values()):
        return None
    if any(w < 0 for w in values.values()):
        return None
    return values
