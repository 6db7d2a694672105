"""Exact decision-theoretic checks for incomplete preferences over multi-dimensional lotteries."""

__version__ = "0.1.0"

from .lottery import Lottery, delta, expectation, is_good, is_unidimensional, mix, outcome, projection
from .orders import KVerdict, Lines, ParetoBox, Verdict, compare, k_classify, parse_order
from .dominance import brute_force_dominance_oracle, check_stochastic_dominance, naive_upper_set_dominance
from .relation import GeneratorSet, Relation, Universe, build_closure, mixture_closure
from .axioms import AxiomSpec, AxiomVerdict, check_axiom, check_all
from .utility import LinearUtility, StepUtility, UtilityFamily, eval_utility, family_compare
from .qualitative import DimensionSpec, QualOrder, check_uds, derive_unanimous_equivalence
from .scenarios import ScenarioResult, replay

__all__ = [
    "Lottery", "delta", "expectation", "is_good", "is_unidimensional", "mix", "outcome", "projection",
    "KVerdict", "Lines", "ParetoBox", "Verdict", "compare", "k_classify", "parse_order",
    "brute_force_dominance_oracle", "check_stochastic_dominance", "naive_upper_set_dominance",
    "GeneratorSet", "Relation", "Universe", "build_closure", "mixture_closure",
    "AxiomSpec", "AxiomVerdict", "check_axiom", "check_all",
    "LinearUtility", "StepUtility", "UtilityFamily", "eval_utility", "family_compare",
    "DimensionSpec", "QualOrder", "check_uds", "derive_unanimous_equivalence",
    "ScenarioResult", "replay",
]
