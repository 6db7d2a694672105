"""Exact-rational outcomes and finite-support lotteries.

Outcomes are plain tuples of :class:`fractions.Fraction`.  A :class:`Lottery`
is an immutable mapping from outcomes to strictly positive probabilities that
sum to exactly one.  Nothing in this package touches binary floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Any, Iterable, Iterator, Mapping, Sequence, Union

if TYPE_CHECKING:
    from .orders import OutcomeOrder

Outcome = tuple  # tuple[Fraction, ...]
RationalLike = Union[Fraction, int, str]


class LotteryError(ValueError):
    """Malformed lottery, outcome or rational literal."""


class DimensionMismatch(LotteryError):
    pass


def rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or "p/q" / integer / decimal string to a Fraction.

    Floats are rejected: their binary expansion would silently break ties.
    """
    if isinstance(value, bool):
        raise LotteryError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise LotteryError(f"not a rational literal: {value!r}") from exc
    raise LotteryError(f"not a rational (floats are not accepted): {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def outcome(*coords: RationalLike) -> Outcome:
    if not coords:
        raise LotteryError("an outcome needs at least one coordinate")
    return tuple(rational(c) for c in coords)


def format_outcome(o: Outcome) -> str:
    return "(" + ",".join(format_rational(c) for c in o) + ")"


def unidimensional_with(o: Outcome, p: Outcome) -> bool:
    """True iff the two outcomes differ in at most one coordinate."""
    if len(o) != len(p):
        raise DimensionMismatch(f"{format_outcome(o)} vs {format_outcome(p)}")
    return sum(1 for x, y in zip(o, p) if x != y) <= 1


class Lottery:
    """A finite-support probability distribution over outcomes.

    Zero-mass entries are dropped on construction, so two lotteries are equal
    exactly when their support maps are equal.  Support is kept in
    lexicographic outcome order.
    """

    __slots__ = ("_items", "_mass", "_hash", "dim")

    def __init__(self, mass: Mapping[Sequence[RationalLike], RationalLike] | Iterable[tuple]):
        pairs = mass.items() if isinstance(mass, Mapping) else mass
        acc: dict[Outcome, Fraction] = {}
        dim = None
        for raw_o, raw_p in pairs:
            o = raw_o if _is_outcome(raw_o) else outcome(*raw_o)
            if dim is None:
                dim = len(o)
            elif len(o) != dim:
                raise DimensionMismatch(f"outcome {format_outcome(o)} does not have dimension {dim}")
            p = rational(raw_p)
            if p < 0:
                raise LotteryError(f"negative probability {format_rational(p)} at {format_outcome(o)}")
            acc[o] = acc.get(o, Fraction(0)) + p
        acc = {o: p for o, p in acc.items() if p != 0}
        if not acc:
            raise LotteryError("a lottery needs a non-empty support")
        total = sum(acc.values(), Fraction(0))
        if total != 1:
            raise LotteryError(
                f"probabilities sum to {format_rational(total)}, deficit {format_rational(1 - total)}"
            )
        self._items = tuple(sorted(acc.items()))
        self._mass = dict(self._items)
        self._hash = hash(self._items)
        self.dim = dim

    # construction helpers -------------------------------------------------

    @classmethod
    def degenerate(cls, o: Sequence[RationalLike]) -> "Lottery":
        return cls({tuple(o) if _is_outcome(o) else outcome(*o): 1})

    @classmethod
    def uniform(cls, *outcomes: Sequence[RationalLike]) -> "Lottery":
        """The lottery written ``a/b/c`` in the text: equal mass on each listed outcome."""
        if not outcomes:
            raise LotteryError("uniform lottery over no outcomes")
        w = Fraction(1, len(outcomes))
        return cls([(o, w) for o in outcomes])

    # mapping-ish interface -----------------------------------------------

    @property
    def items(self) -> tuple[tuple[Outcome, Fraction], ...]:
        return self._items

    @property
    def support(self) -> tuple[Outcome, ...]:
        return tuple(o for o, _ in self._items)

    def __getitem__(self, o: Outcome) -> Fraction:
        return self._mass.get(tuple(o), Fraction(0))

    def __contains__(self, o: object) -> bool:
        return o in self._mass

    def __iter__(self) -> Iterator[Outcome]:
        return iter(self.support)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Lottery) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return (len(self._items), self._items)

    def __lt__(self, other: "Lottery") -> bool:
        return self.sort_key() < other.sort_key()

    def is_degenerate(self) -> bool:
        return len(self._items) == 1

    def __repr__(self) -> str:
        return f"Lottery({self})"

    def __str__(self) -> str:
        if self.is_degenerate():
            return format_outcome(self._items[0][0])
        ps = {p for _, p in self._items}
        if len(ps) == 1:
            return "/".join(format_outcome(o) for o, _ in self._items)
        return "{" + ", ".join(f"{format_outcome(o)}:{format_rational(p)}" for o, p in self._items) + "}"

    # operations -----------------------------------------------------------

    def mix(self, other: "Lottery", alpha: RationalLike) -> "Lottery":
        return mix(self, other, alpha)

    def expectation(self) -> Outcome:
        return expectation(self)

    def projection(self, dim_index: int) -> dict[Fraction, Fraction]:
        return projection(self, dim_index)

    def is_unidimensional(self) -> bool:
        return is_unidimensional(self)

    def is_good(self, order: "OutcomeOrder") -> bool:
        return is_good(self, order)

    # JSON -----------------------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {
            "outcomes": [
                {"coords": [format_rational(c) for c in o], "prob": format_rational(p)}
                for o, p in self._items
            ]
        }

    @classmethod
    def from_json(cls, data: Any) -> "Lottery":
        if not isinstance(data, dict) or not isinstance(data.get("outcomes"), list):
            raise LotteryError('lottery JSON must be an object with an "outcomes" list')
        pairs = []
        for entry in data["outcomes"]:
            try:
                coords, prob = entry["coords"], entry["prob"]
            except (KeyError, TypeError) as exc:
                raise LotteryError(f"bad outcome entry {entry!r}") from exc
            if not isinstance(coords, list):
                raise LotteryError(f"coords must be a list: {coords!r}")
            pairs.append((outcome(*coords), rational(prob)))
        return cls(pairs)


def _is_outcome(o: object) -> bool:
    return isinstance(o, tuple) and bool(o) and all(type(c) is Fraction for c in o)


def delta(*coords: RationalLike) -> Lottery:
    """Degenerate lottery on a single outcome, e.g. ``delta(0, 0)``."""
    return Lottery.degenerate(outcome(*coords))


def mix(f: Lottery, g: Lottery, alpha: RationalLike) -> Lottery:
    """Pointwise mixture ``alpha*f + (1-alpha)*g``."""
    a = rational(alpha)
    if not 0 <= a <= 1:
        raise LotteryError(f"mixture weight {format_rational(a)} outside [0,1]")
    if f.dim != g.dim:
        raise DimensionMismatch(f"cannot mix dimension {f.dim} with dimension {g.dim}")
    if a == 1:
        return f
    if a == 0:
        return g
    acc: dict[Outcome, Fraction] = {}
    for o, p in f.items:
        acc[o] = a * p
    b = 1 - a
    for o, p in g.items:
        acc[o] = acc.get(o, Fraction(0)) + b * p
    return Lottery(acc)


def expectation(f: Lottery) -> Outcome:
    return tuple(sum((p * o[i] for o, p in f.items), Fraction(0)) for i in range(f.dim))


def projection(f: Lottery, dim_index: int) -> dict[Fraction, Fraction]:
    """Marginal distribution of coordinate ``dim_index`` (1-based)."""
    if not 1 <= dim_index <= f.dim:
        raise LotteryError(f"dimension index {dim_index} out of range 1..{f.dim}")
    out: dict[Fraction, Fraction] = {}
    for o, p in f.items:
        x = o[dim_index - 1]
        out[x] = out.get(x, Fraction(0)) + p
    return dict(sorted(out.items()))


def is_unidimensional(f: Lottery) -> bool:
    sup = f.support
    return all(unidimensional_with(sup[i], sup[j]) for i in range(len(sup)) for j in range(i + 1, len(sup)))


def is_unidimensional_with(f: Lottery, g: Lottery) -> bool:
    return all(unidimensional_with(o, p) for o in f.support for p in g.support)


def is_good(f: Lottery, order: "OutcomeOrder") -> bool:
    """Every pair of support outcomes is comparable under ``order``."""
    sup = f.support
    return all(order.comparable(sup[i], sup[j]) for i in range(len(sup)) for j in range(i + 1, len(sup)))
