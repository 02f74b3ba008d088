"""The surrogate-facing contract used by the simulation samplers."""
from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np


@runtime_checkable
class PredictiveSampler(Protocol):
    """Anything that can draw posterior predictive samples of f at a point.

    The samplers only ever need draws, never densities; that is the whole
    point of the simulation-based acquisition search.
    """

    def sample_f(self, x, count: int, rng: np.random.Generator) -> np.ndarray:
        """Return ``count`` draws of f(x) given the training data."""
        ...
