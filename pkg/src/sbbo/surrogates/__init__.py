from .base import PredictiveSampler
from .tanimoto_gp import TanimotoGP, tanimoto_kernel, tanimoto_gram
from .horseshoe import FeatureMap, HorseshoeState, PosteriorDraws, gibbs_fit

__all__ = [
    "PredictiveSampler",
    "TanimotoGP",
    "tanimoto_kernel",
    "tanimoto_gram",
    "FeatureMap",
    "HorseshoeState",
    "PosteriorDraws",
    "gibbs_fit",
]
