"""Command-line entry point.

Exit codes: 0 success, 1 an axiom is violated, 2 bad input, 3 no dominance,
4 nothing violated but some verdict is not determinable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .axioms import AXIOM_NAMES, AxiomError, check_all
from .dominance import check_stochastic_dominance, naive_upper_set_dominance
from .lottery import Lottery, LotteryError, format_rational, outcome, rational
from .orders import OrderError, OutcomeOrder, parse_order
from .relation import GeneratorSet, Universe, UniverseError, build_closure
from .scenarios import REPLAYS, SCHEMA_VERSION, ScenarioError, replay
from .search import QUESTIONS, report_json, search_conjecture

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_NO_DOMINANCE, EXIT_UNDETERMINED = 0, 1, 2, 3, 4
REPLAY_PARAMS = ("a", "b", "k", "l", "m", "alpha", "beta", "x", "y", "eps")


class InputError(Exception):
    pass


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _write_json(path: str, data: Any) -> None:
    Path(path).write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def _order(spec: str) -> OutcomeOrder:
    return parse_order(spec)


# subcommands ------------------------------------------------------------------


def cmd_replay(ns: argparse.Namespace) -> int:
    params = {k: getattr(ns, k) for k in REPLAY_PARAMS if getattr(ns, k) is not None}
    if ns.order:
        params["order"] = ns.order
    if ns.dims:
        params["dims"] = ns.dims
    result = replay(ns.scenario, params)
    data = result.to_json()
    if ns.json:
        _write_json(ns.json, data)
    if ns.manifest:
        out = Path(ns.manifest)
        out.mkdir(parents=True, exist_ok=True)
        _write_json(str(out / "manifest.json"), result.manifest)
        _write_json(str(out / "universe.json"), result.manifest["universe"])
        _write_json(str(out / "generators.json"), result.manifest["generators"])
    print(f"{result.scenario_id}: {result.verdict}")
    for s in result.steps:
        print(f"  {s.fact}    [{s.justification}]")
    return EXIT_OK if result.verdict in ("contradiction-reproduced", "consistency-verified") else EXIT_VIOLATED


def cmd_check(ns: argparse.Namespace) -> int:
    order = _order(ns.order)
    universe, raw = Universe.from_json(_read_json(ns.universe))
    gens = GeneratorSet.from_json(_read_json(ns.generators), raw) if ns.generators else GeneratorSet(frozenset({"pareto-lift"}))
    names = [a.strip() for a in ns.axioms.split(",") if a.strip()]
    unknown = [a for a in names if a not in AXIOM_NAMES]
    if unknown:
        raise InputError(f"unknown axioms {unknown}; known: {', '.join(AXIOM_NAMES)}")
    alphas = [rational(a) for a in ns.alphas.split(",")]
    rel = build_closure(universe, gens, order)
    reports = check_all(rel, order, names, alphas)
    for r in reports:
        print(f"{r.axiom.name}: {r.verdict.value}")
    if ns.report:
        _write_json(
            ns.report,
            {
                "schema_version": SCHEMA_VERSION,
                "order": order.spec,
                "universe_size": len(rel.universe),
                "reports": [r.to_json() for r in reports],
            },
        )
    verdicts = {r.verdict.value for r in reports}
    if "violated" in verdicts:
        return EXIT_VIOLATED
    if "not-determinable" in verdicts:
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_dominance(ns: argparse.Namespace) -> int:
    order = _order(ns.order)
    f = Lottery.from_json(_read_json(ns.f))
    g = Lottery.from_json(_read_json(ns.g))
    if ns.naive:
        held = naive_upper_set_dominance(f, g, order)
        print("upper-set dominates" if held else "upper-set does not dominate")
        return EXIT_OK if held else EXIT_NO_DOMINANCE
    v = check_stochastic_dominance(f, g, order)
    print("dominates" if v.dominates else "does not dominate")
    if ns.json:
        _write_json(
            ns.json,
            {
                "schema_version": SCHEMA_VERSION,
                "order": order.spec,
                "f": f.to_json(),
                "g": g.to_json(),
                "dominates": v.dominates,
                "coupling": v.witness.to_json() if v.witness else None,
                "strict_mass": format_rational(v.strict_mass) if v.strict_mass is not None else None,
            },
        )
    return EXIT_OK if v.dominates else EXIT_NO_DOMINANCE


def grid_axis(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise InputError("step must be positive")
    if lo >= hi:
        raise InputError(f"degenerate bounds [{format_rational(lo)}, {format_rational(hi)}]")
    out, v = [], lo
    while v <= hi:
        out.append(v)
        v += step
    return out


def emit_region(
    order: OutcomeOrder,
    reference: Sequence[Fraction] = (Fraction(0), Fraction(0)),
    xs: tuple[Fraction, Fraction] = (Fraction(-5), Fraction(5)),
    ys: tuple[Fraction, Fraction] = (Fraction(-5), Fraction(5)),
    step: Fraction = Fraction(1, 4),
) -> str:
    """CSV of ``x,y,verdict`` comparing each grid point to ``reference``; y is the outer loop."""
    ref = outcome(*reference)
    xaxis, yaxis = grid_axis(*xs, step), grid_axis(*ys, step)
    lines = ["x,y,verdict"]
    for y in yaxis:
        for x in xaxis:
            lines.append(f"{format_rational(x)},{format_rational(y)},{order.compare(outcome(x, y), ref).value}")
    return "\n".join(lines) + "\n"


def cmd_region(ns: argparse.Namespace) -> int:
    order = _order(ns.order)
    ref = [rational(c) for c in ns.ref.split(",")]
    if len(ref) != 2:
        raise InputError("--ref takes two coordinates, e.g. 0,0")
    csv = emit_region(
        order,
        ref,
        (rational(ns.xmin), rational(ns.xmax)),
        (rational(ns.ymin), rational(ns.ymax)),
        rational(ns.step),
    )
    if ns.out:
        Path(ns.out).write_text(csv)
    else:
        sys.stdout.write(csv)
    return EXIT_OK


def cmd_search(ns: argparse.Namespace) -> int:
    bounds = {}
    for item in ns.bound or []:
        key, _, value = item.partition("=")
        if not value:
            raise InputError(f"bounds are key=value, got {item!r}")
        bounds[key] = value.lower() not in ("false", "0", "no") if key == "unidimensional" else value
    result = search_conjecture(ns.question, bounds, ns.budget, ns.seed, ns.workers)
    text = report_json(result)
    if ns.json:
        Path(ns.json).write_text(text)
    m = result.manifest
    print(f"{ns.question}: {m['candidates']} candidates, {len(m['findings'])} findings (evidence only)")
    return EXIT_OK


# parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="negdom", description="Exact checks for incomplete preferences over lotteries.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("replay", help="replay a stored argument")
    r.add_argument("scenario", choices=sorted(REPLAYS))
    for name in REPLAY_PARAMS:
        r.add_argument(f"--{name}")
    r.add_argument("--order", help="outcome order (initial-fact only)")
    r.add_argument("--dims", help="dimension spec JSON (qualitative replays)")
    r.add_argument("--json", help="write the full result here")
    r.add_argument("--manifest", help="directory for manifest, universe and generator files")
    r.set_defaults(run=cmd_replay)

    c = sub.add_parser("check", help="run axiom checkers on a closure")
    c.add_argument("--universe", required=True)
    c.add_argument("--order", default="pareto")
    c.add_argument("--generators")
    c.add_argument("--axioms", required=True, help="comma-separated axiom names")
    c.add_argument("--alphas", default="1/2")
    c.add_argument("--report")
    c.set_defaults(run=cmd_check)

    d = sub.add_parser("dominance", help="decide stochastic dominance of f over g")
    d.add_argument("--order", default="pareto")
    d.add_argument("f")
    d.add_argument("g")
    d.add_argument("--naive", action="store_true", help="use the upper-set comparison instead of couplings")
    d.add_argument("--json")
    d.set_defaults(run=cmd_dominance)

    g = sub.add_parser("region", help="classify grid points against a reference outcome")
    g.add_argument("--order", default="lines:2,1/2")
    g.add_argument("--ref", default="0,0")
    g.add_argument("--xmin", default="-5")
    g.add_argument("--xmax", default="5")
    g.add_argument("--ymin", default="-5")
    g.add_argument("--ymax", default="5")
    g.add_argument("--step", default="1/4")
    g.add_argument("--out")
    g.set_defaults(run=cmd_region)

    s = sub.add_parser("search", help="seeded bounded search (evidence only)")
    s.add_argument("question", choices=QUESTIONS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=40)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--bound", action="append", help="key=value, repeatable")
    s.add_argument("--json")
    s.set_defaults(run=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.run(ns)
    except (InputError, LotteryError, OrderError, UniverseError, AxiomError, ScenarioError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
