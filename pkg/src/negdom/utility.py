"""Mixture-preserving utilities on two-dimensional outcomes and the sets-of-utilities rule."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence, Union

from .axioms import AxiomReport, AxiomSpec, AxiomVerdict
from .lottery import DimensionMismatch, Lottery, Outcome, RationalLike, format_rational, outcome, rational
from .orders import Verdict


class UtilityError(ValueError):
    pass


@dataclass(frozen=True)
class LinearUtility:
    """u(x, y) = a*x + b*y + k."""

    a: Fraction
    b: Fraction
    k: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "k"):
            object.__setattr__(self, name, rational(getattr(self, name)))

    def at(self, o: Outcome) -> Fraction:
        _check_dim(o)
        return self.a * o[0] + self.b * o[1] + self.k

    @property
    def pareto_compatible(self) -> bool:
        return self.a > 0 and self.b > 0

    def to_json(self) -> dict[str, Any]:
        return {"kind": "linear", "a": format_rational(self.a), "b": format_rational(self.b), "k": format_rational(self.k)}


@dataclass(frozen=True)
class StepUtility:
    """Indicator utilities anchored at a threshold outcome.

    ``plus``: 1 when both coordinates are at least the threshold's, else 0.
    ``minus``: 0 when both coordinates are at most the threshold's, else 1.
    """

    polarity: str
    threshold: Outcome

    def __post_init__(self):
        if self.polarity not in ("plus", "minus"):
            raise UtilityError(f"polarity must be plus or minus, got {self.polarity!r}")
        object.__setattr__(self, "threshold", outcome(*self.threshold))
        _check_dim(self.threshold)

    def at(self, o: Outcome) -> Fraction:
        _check_dim(o)
        if self.polarity == "plus":
            return Fraction(int(o[0] >= self.threshold[0] and o[1] >= self.threshold[1]))
        return Fraction(int(not (o[0] <= self.threshold[0] and o[1] <= self.threshold[1])))

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "step",
            "polarity": self.polarity,
            "threshold": [format_rational(c) for c in self.threshold],
        }


Utility = Union[LinearUtility, StepUtility]


def _check_dim(o: Outcome) -> None:
    if len(o) != 2:
        raise DimensionMismatch("utilities are defined on two-dimensional outcomes")


def eval_utility(u: Utility, f: Lottery) -> Fraction:
    if f.dim != 2:
        raise DimensionMismatch("utilities are defined on two-dimensional outcomes")
    return sum((p * u.at(o) for o, p in f.items), Fraction(0))


@dataclass(frozen=True)
class UtilityFamily:
    members: tuple[Utility, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise UtilityError("a utility family must be non-empty")

    def to_json(self) -> list[dict[str, Any]]:
        return [m.to_json() for m in self.members]

    @classmethod
    def from_json(cls, data: Sequence[dict[str, Any]]) -> "UtilityFamily":
        members: list[Utility] = []
        for entry in data:
            kind = entry.get("kind")
            if kind == "linear":
                members.append(LinearUtility(entry["a"], entry["b"], entry.get("k", "0")))
            elif kind == "step":
                members.append(StepUtility(entry["polarity"], tuple(entry["threshold"])))
            else:
                raise UtilityError(f"unknown utility kind {kind!r}")
        return cls(tuple(members))


def family_compare(family: UtilityFamily | Iterable[Utility], f: Lottery, g: Lottery) -> Verdict:
    """f ⪰ g iff every member scores f at least as high as g."""
    if not isinstance(family, UtilityFamily):
        family = UtilityFamily(tuple(family))
    fwd = back = True
    for u in family.members:
        uf, ug = eval_utility(u, f), eval_utility(u, g)
        fwd = fwd and uf >= ug
        back = back and ug >= uf
    return Verdict.from_weak(fwd, back)


def check_pareto_respect(family: UtilityFamily, samples: Iterable[tuple[Outcome, Outcome]]) -> AxiomReport:
    """Every member must be monotone on the given dominating pairs (o ≥ p coordinatewise)."""
    witnesses = []
    n = 0
    for o, p in samples:
        if not (o[0] >= p[0] and o[1] >= p[1]):
            continue
        n += 1
        for u in family.members:
            if u.at(o) < u.at(p):
                witnesses.append({"utility": u.to_json(), "o": o, "o'": p})
    verdict = AxiomVerdict.VIOLATED if witnesses else AxiomVerdict.HOLDS
    return AxiomReport(AxiomSpec("pareto-consistency"), verdict, witnesses, {"instances": n, "subject": "utility-family"})


def step_pair(reference: Outcome) -> UtilityFamily:
    """{u⁺, u⁻} anchored at ``reference``: splits any lottery whose support is box-incomparable to it."""
    return UtilityFamily((StepUtility("plus", reference), StepUtility("minus", reference)))


def positive_linear_family(weights: Iterable[tuple[RationalLike, RationalLike]]) -> UtilityFamily:
    members = tuple(LinearUtility(a, b) for a, b in weights)
    if not all(m.pareto_compatible for m in members):
        raise UtilityError("positive-linear members need a > 0 and b > 0")
    return UtilityFamily(members)
