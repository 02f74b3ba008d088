"""Pointwise utility functions whose posterior expectation is the acquisition.

The simulation sampler needs utilities that are strictly positive, so both
improvement utilities carry an additive offset ``epsilon``.  Minimization is
handled by negating values before applying the maximization formulas, so a
single code path serves both senses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

MAXIMIZE = "maximize"
MINIMIZE = "minimize"
_SENSES = (MAXIMIZE, MINIMIZE)


@dataclass(frozen=True)
class UtilitySpec:
    """Configuration of the pointwise utility.

    kind: "ei" (improvement over the incumbent) or "pi" (indicator of strict
    improvement).  f_star is the incumbent value on the original scale of y.
    """

    kind: str = "ei"
    f_star: float = 0.0
    epsilon: float = 1e-8
    sense: str = MAXIMIZE

    def __post_init__(self):
        if self.kind not in ("ei", "pi"):
            raise ValueError(f"unknown utility kind {self.kind!r}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.sense not in _SENSES:
            raise ValueError(f"sense must be one of {_SENSES}, got {self.sense!r}")


def _signed(spec, values):
    return values if spec.sense == MAXIMIZE else -values


def utility(spec, f_draw):
    """Positive utility of one or more predictive draws.

    ei: max(f - f_star, 0) + epsilon; pi: 1{f > f_star} + epsilon, both after
    sense adjustment.  Ties count as no improvement.
    """
    f = np.asarray(f_draw, dtype=float)
    if not np.all(np.isfinite(f)):
        raise ValueError("utility requires finite predictive draws")
    g = _signed(spec, f)
    g_star = float(_signed(spec, np.float64(spec.f_star)))
    if spec.kind == "ei":
        u = np.maximum(g - g_star, 0.0) + spec.epsilon
    else:
        u = (g > g_star).astype(float) + spec.epsilon
    return float(u) if np.isscalar(f_draw) or f.ndim == 0 else u


def log_utility(spec, f_draws):
    return np.log(utility(spec, np.atleast_1d(np.asarray(f_draws, dtype=float))))


def mean_log_utility(spec, f_draws):
    """Arithmetic mean of log utility over the given draws.

    Finite for any finite input because utility is bounded below by epsilon.
    """
    values = log_utility(spec, f_draws)
    if values.size == 0:
        raise ValueError("mean_log_utility needs at least one draw")
    return float(values.mean())


def incumbent(data, sense):
    """Best observed response under the optimization sense."""
    if len(data) == 0:
        raise ValueError("incumbent of an empty dataset is undefined")
    if sense not in _SENSES:
        raise ValueError(f"sense must be one of {_SENSES}, got {sense!r}")
    y = data.y_array()
    return float(y.max() if sense == MAXIMIZE else y.min())


def is_improvement(sense, candidate, reference):
    """True when candidate is strictly better than reference under sense."""
    return candidate > reference if sense == MAXIMIZE else candidate < reference


def better(sense, a, b):
    return a if is_improvement(sense, a, b) else b


def gaussian_expected_utility(spec, mean, var):
    """Closed-form posterior expectation of the utility under a Gaussian.

    Available only when the predictive distribution is Normal(mean, var);
    used as an oracle against the sampling path and for convergence studies.
    """
    mu = float(_signed(spec, np.float64(mean)))
    mu_star = float(_signed(spec, np.float64(spec.f_star)))
    sd = math.sqrt(max(var, 0.0))
    diff = mu - mu_star
    if sd == 0.0:
        if spec.kind == "ei":
            return max(diff, 0.0) + spec.epsilon
        return float(diff > 0) + spec.epsilon
    z = diff / sd
    phi = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
    big_phi = 0.5 * math.erfc(-z / math.sqrt(2.0))
    if spec.kind == "ei":
        return diff * big_phi + sd * phi + spec.epsilon
    return big_phi + spec.epsilon
