"""Preorders on outcomes: the Pareto box, the two-line family, k-incomparability."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .lottery import (
    DimensionMismatch,
    LotteryError,
    Outcome,
    RationalLike,
    format_outcome,
    format_rational,
    rational,
    unidimensional_with,
)


class OrderError(ValueError):
    pass


class Verdict(enum.Enum):
    EQUIVALENT = "equivalent"
    ABOVE = "strictly-above"
    BELOW = "strictly-below"
    INCOMPARABLE = "incomparable"

    def mirror(self) -> "Verdict":
        return _MIRROR[self]

    @classmethod
    def from_weak(cls, forward: bool, backward: bool) -> "Verdict":
        if forward and backward:
            return cls.EQUIVALENT
        if forward:
            return cls.ABOVE
        if backward:
            return cls.BELOW
        return cls.INCOMPARABLE


_MIRROR = {
    Verdict.EQUIVALENT: Verdict.EQUIVALENT,
    Verdict.ABOVE: Verdict.BELOW,
    Verdict.BELOW: Verdict.ABOVE,
    Verdict.INCOMPARABLE: Verdict.INCOMPARABLE,
}


class OutcomeOrder:
    """Base class for outcome comparators.  Subclasses implement :meth:`weakly`."""

    def weakly(self, o: Outcome, p: Outcome) -> bool:  # o ⪰ p
        raise NotImplementedError

    def compare(self, o: Outcome, p: Outcome) -> Verdict:
        return Verdict.from_weak(self.weakly(o, p), self.weakly(p, o))

    def strictly(self, o: Outcome, p: Outcome) -> bool:
        return self.weakly(o, p) and not self.weakly(p, o)

    def comparable(self, o: Outcome, p: Outcome) -> bool:
        return self.weakly(o, p) or self.weakly(p, o)

    def incomparable(self, o: Outcome, p: Outcome) -> bool:
        return not self.comparable(o, p)

    @property
    def spec(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class ParetoBox(OutcomeOrder):
    """Coordinate-wise dominance (Pareto together with Converse Pareto), any dimension."""

    def weakly(self, o: Outcome, p: Outcome) -> bool:
        if len(o) != len(p):
            raise DimensionMismatch(f"{format_outcome(o)} vs {format_outcome(p)}")
        return all(x >= y for x, y in zip(o, p))

    @property
    def spec(self) -> str:
        return "pareto"


@dataclass(frozen=True)
class Lines(OutcomeOrder):
    """(x,y) ⪰ (x',y') iff (x,y) lies on or above both lines of slope -l and -m through (x',y')."""

    l: Fraction
    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "l", rational(self.l))
        object.__setattr__(self, "m", rational(self.m))
        if self.l <= 0 or self.m <= 0:
            raise OrderError("line slopes must be positive")
        if self.l == self.m:
            raise OrderError("line slopes must differ")

    def weakly(self, o: Outcome, p: Outcome) -> bool:
        if len(o) != 2 or len(p) != 2:
            raise DimensionMismatch("the lines order is only defined on two dimensions")
        (x, y), (x2, y2) = o, p
        return y >= -self.l * x + (self.l * x2 + y2) and y >= -self.m * x + (self.m * x2 + y2)

    @property
    def spec(self) -> str:
        return f"lines:{format_rational(self.l)},{format_rational(self.m)}"


def compare(order: OutcomeOrder, o: Outcome, p: Outcome) -> Verdict:
    return order.compare(o, p)


def parse_order(spec: str) -> OutcomeOrder:
    """Parse ``"pareto"``, ``"lines:L,M"`` or ``"qual:<dimension-spec.json>"``."""
    spec = spec.strip()
    if spec == "pareto":
        return ParetoBox()
    if spec.startswith("lines:"):
        parts = spec[len("lines:"):].split(",")
        if len(parts) != 2:
            raise OrderError(f"expected lines:L,M, got {spec!r}")
        try:
            return Lines(rational(parts[0]), rational(parts[1]))
        except LotteryError as exc:
            raise OrderError(str(exc)) from exc
    if spec.startswith("qual:"):
        from .qualitative import QualOrder

        return QualOrder.load(spec[len("qual:"):])
    raise OrderError(f"unknown order spec {spec!r}")


class KVerdict(enum.Enum):
    FORCED_PREFERRED = "forced-preferred"  # lottery a/b ≻ c
    FORCED_DISPREFERRED = "forced-dispreferred"  # c ≻ a/b
    FORCED_INCOMPARABLE = "forced-incomparable"
    UNCONSTRAINED = "unconstrained"


def k_classify(
    k: RationalLike, a: Outcome, b: Outcome, c: Outcome, interpretation: str = "proof"
) -> KVerdict:
    """What k-incomparability forces between the lottery a/b and a point c on segment [a,b].

    ``interpretation="proof"`` (default) uses a band of half-width n/(2k) around
    the midpoint, with forcing from its boundary outward; this is how the
    worked k=4 argument uses the definition.  ``"definition"`` uses forcing at
    distance n/k or more and an open incomparability interval of total length
    n/(2k).  The side toward the endpoint that is larger in the varying
    coordinate counts as "above".
    """
    k = rational(k)
    if k <= 0:
        raise OrderError("k must be positive")
    if not (len(a) == len(b) == len(c)):
        raise DimensionMismatch("k_classify needs outcomes of one dimension")
    if a == b:
        raise OrderError("segment endpoints must be distinct")
    if not unidimensional_with(a, b):
        raise OrderError(f"{format_outcome(a)} and {format_outcome(b)} are not unidimensional")
    i = next(j for j in range(len(a)) if a[j] != b[j])
    if any(c[j] != a[j] for j in range(len(a)) if j != i):
        raise OrderError(f"{format_outcome(c)} is off the segment")
    lo, hi = min(a[i], b[i]), max(a[i], b[i])
    if not lo <= c[i] <= hi:
        raise OrderError(f"{format_outcome(c)} is off the segment")
    n = hi - lo
    d = c[i] - (lo + hi) / 2
    if interpretation == "proof":
        band, force = n / (2 * k), n / (2 * k)
    elif interpretation == "definition":
        band, force = n / (4 * k), n / k
    else:
        raise OrderError(f"unknown interpretation {interpretation!r}")
    if abs(d) < band:
        return KVerdict.FORCED_INCOMPARABLE
    if d <= -force:
        return KVerdict.FORCED_PREFERRED
    if d >= force:
        return KVerdict.FORCED_DISPREFERRED
    return KVerdict.UNCONSTRAINED


__all__ = [
    "KVerdict",
    "Lines",
    "OrderError",
    "OutcomeOrder",
    "ParetoBox",
    "Verdict",
    "compare",
    "format_rational",
    "k_classify",
    "parse_order",
]
