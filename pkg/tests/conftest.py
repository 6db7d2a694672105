import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from negdom.lottery import Lottery, outcome

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def rationals(max_abs=5, max_den=6):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(-max_abs * max_den, max_abs * max_den),
        st.integers(1, max_den),
    ).filter(lambda q: abs(q) <= max_abs)


def outcomes(max_abs=5, max_den=6):
    return st.tuples(rationals(max_abs, max_den), rationals(max_abs, max_den)).map(lambda t: outcome(*t))


@st.composite
def lotteries(draw, max_support=3, max_abs=5, max_den=6):
    pts = draw(st.lists(outcomes(max_abs, max_den), min_size=1, max_size=max_support, unique=True))
    weights = draw(st.lists(st.integers(1, max_den), min_size=len(pts), max_size=len(pts)))
    total = sum(weights)
    return Lottery({p: Fraction(w, total) for p, w in zip(pts, weights)})


def random_outcome(rng: random.Random, span=5, den=4):
    return outcome(*(Fraction(rng.randint(-span * den, span * den), rng.randint(1, den)) for _ in range(2)))


def random_lottery(rng: random.Random, max_support=3, span=5, den=4):
    k = rng.randint(1, max_support)
    pts = list({random_outcome(rng, span, den) for _ in range(k)})
    weights = [rng.randint(1, 6) for _ in pts]
    total = sum(weights)
    return Lottery({p: Fraction(w, total) for p, w in zip(pts, weights)})


@pytest.fixture
def rng():
    return random.Random(20240601)
