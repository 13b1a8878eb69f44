"""Verification of subnormal possibilistic categorical forecasts."""

from .core import (
    SPC_UNIVERSE,
    NormalisedForecast,
    PossibilityForecast,
    Universe,
    conditional_necessity,
    ignorance,
    necessity,
    normalise,
    possibility,
    validate,
)
from .scorecard import ScorecardRow, VerificationPair, aggregate, joint_skill, score_pair
from .bridge import (
    ProbabilityVector,
    climatology_vector,
    convert,
    decompose,
    information_gain,
    naive_normalise,
    surprise,
)
from .categorical import binary_scores, confusion, contingency, hss_multicategory, peak_category

__version__ = "0.1.0"
