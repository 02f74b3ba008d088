"""Sparse Bayesian linear regression with pairwise interactions.

The model regresses y on an intercept, every binary-encoded column, and all
cross-column products, with a horseshoe prior on the coefficients:

    y = X a + e,  e ~ N(0, sigma2 I)
    a_k | b_k, tau, sigma ~ N(0, b_k^2 tau^2 sigma2)
    b_k, tau ~ half-Cauchy(1),  p(sigma2) ~ 1/sigma2

Posterior inference is Gibbs sampling.  Each half-Cauchy scale is written
as a scale mixture with one inverse-gamma auxiliary variable, which makes
every full conditional a named closed-form distribution (no rejection
steps).  The coefficient block is drawn either from the m x m Gaussian
conditional (Cholesky) or, when the feature count dwarfs the sample size,
with the exact data-augmentation sampler that works in the n x n dual
space; both draw from the same conditional.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.linalg import cho_factor, cho_solve, solve_triangular, LinAlgError

from ..errors import NotFittedError, NumericalError
from ..space import binary_features, binary_feature_width

# Above this feature count, design matrices are stored sparse and the
# coefficient draw always goes through the dual-space sampler.
SPARSE_THRESHOLD = 2000

_JITTERS = (0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4)
_SCALE_FLOOR = 1e-12
_SCALE_CEIL = 1e12


class FeatureMap:
    """Deterministic feature expansion: intercept, columns, cross products.

    Binary dims contribute one raw column, wider categorical dims a one-hot
    block.  Pair features run over column pairs (i, j) with i < j in
    lexicographic order, skipping pairs inside the same one-hot block
    (those are identically zero or duplicate a linear column).
    """

    def __init__(self, spec):
        self.spec = spec
        self.n_cols = binary_feature_width(spec)
        blocks = []
        for s, d in enumerate(spec.dims):
            width = 1 if d.cardinality == 2 else d.cardinality
            blocks.extend([s] * width)
        blocks = np.array(blocks)
        pair_i, pair_j = [], []
        for i in range(self.n_cols):
            for j in range(i + 1, self.n_cols):
                if blocks[i] != blocks[j]:
                    pair_i.append(i)
                    pair_j.append(j)
        self.pair_i = np.array(pair_i, dtype=np.intp)
        self.pair_j = np.array(pair_j, dtype=np.intp)
        self.m = 1 + self.n_cols + len(self.pair_i)

    def transform(self, x):
        """Feature vector (1, columns..., pair products...) of a point."""
        z = binary_features(x, self.spec)
        out = np.empty(self.m)
        out[0] = 1.0
        out[1:1 + self.n_cols] = z
        out[1 + self.n_cols:] = z[self.pair_i] * z[self.pair_j]
        return out

    def design_matrix(self, points):
        """Stacked feature rows; sparse CSR when m is large."""
        dense = np.array([self.transform(x) for x in points])
        if self.m > SPARSE_THRESHOLD:
            return sp.csr_matrix(dense)
        return dense

    def __repr__(self):
        return f"FeatureMap(p={self.spec.p}, cols={self.n_cols}, m={self.m})"


@dataclass
class HorseshoeState:
    """One Gibbs snapshot: coefficients plus every scale and auxiliary."""

    alpha: np.ndarray
    beta2: np.ndarray  # squared local scales
    tau2: float
    sigma2: float
    nu: np.ndarray  # auxiliaries of the local scales
    xi: float  # auxiliary of the global scale

    def copy(self):
        return HorseshoeState(self.alpha.copy(), self.beta2.copy(), self.tau2, self.sigma2, self.nu.copy(), self.xi)


def _inv_gamma(rng, shape, rate):
    """Inverse-gamma draw(s) with the given shape and rate."""
    g = rng.gamma(shape, 1.0 / np.asarray(rate, dtype=float))
    return 1.0 / g


def _clip_scale(v):
    return np.clip(v, _SCALE_FLOOR, _SCALE_CEIL)


def _chol_jittered(mat):
    for jitter in _JITTERS:
        try:
            shifted = mat if jitter == 0.0 else mat + jitter * np.eye(mat.shape[0])
            return cho_factor(shifted, lower=True), jitter
        except LinAlgError:
            continue
    raise NumericalError(
        f"coefficient-block solve failed even with jitter {_JITTERS[-1]:g}", jitter=_JITTERS[-1]
    )


def sample_alpha(X, y, sigma2, lam2, rng):
    """Draw the coefficient block from its Gaussian full conditional.

    lam2 is the vector of prior variances divided by sigma2, i.e.
    beta_k^2 * tau^2.  Dispatches between the direct m x m solve and the
    dual-space sampler; sparse designs always take the dual route.
    """
    n = y.shape[0]
    m = X.shape[1]
    sigma = np.sqrt(sigma2)
    if sp.issparse(X) or n < 0.6 * m:
        # Dual-space exact sampler: O(n^2 m) instead of O(m^3).
        u = np.sqrt(lam2 * sigma2) * rng.standard_normal(m)
        v = _matvec(X, u) / sigma + rng.standard_normal(n)
        M = _gram_dual(X, lam2) + np.eye(n)
        chol, _ = _chol_jittered(M)
        w = cho_solve(chol, y / sigma - v)
        return u + sigma * lam2 * _rmatvec(X, w)
    B = X.T @ X + np.diag(1.0 / lam2)
    chol, _ = _chol_jittered(B)
    mean = cho_solve(chol, X.T @ y)
    z = rng.standard_normal(m)
    return mean + sigma * solve_triangular(chol[0], z, lower=True, trans="T")


def _matvec(X, v):
    out = X @ v
    return np.asarray(out).ravel()


def _rmatvec(X, w):
    out = X.T @ w
    return np.asarray(out).ravel()


def _gram_dual(X, lam2):
    """X diag(lam2) X^T as a dense n x n matrix."""
    if sp.issparse(X):
        return np.asarray((X.multiply(lam2) @ X.T).todense())
    return (X * lam2) @ X.T


def sample_local_scales(alpha, nu, tau2, sigma2, rng):
    """beta_k^2 and nu_k from their inverse-gamma conditionals."""
    rate_b = 1.0 / nu + alpha**2 / (2.0 * tau2 * sigma2)
    beta2 = _clip_scale(_inv_gamma(rng, 1.0, rate_b))
    nu_new = _clip_scale(_inv_gamma(rng, 1.0, 1.0 + 1.0 / beta2))
    return beta2, nu_new


def sample_global_scale(alpha, beta2, xi, sigma2, rng):
    """tau^2 and xi from their inverse-gamma conditionals."""
    m = alpha.shape[0]
    rate_t = 1.0 / xi + float(np.sum(alpha**2 / beta2)) / (2.0 * sigma2)
    tau2 = float(_clip_scale(_inv_gamma(rng, (m + 1) / 2.0, rate_t)))
    xi_new = float(_clip_scale(_inv_gamma(rng, 1.0, 1.0 + 1.0 / tau2)))
    return tau2, xi_new


def sample_noise(X, y, alpha, beta2, tau2, rng):
    """sigma2 from its inverse-gamma conditional (Jeffreys prior)."""
    n, m = y.shape[0], alpha.shape[0]
    resid = y - _matvec(X, alpha)
    rate = 0.5 * (float(resid @ resid) + float(np.sum(alpha**2 / (beta2 * tau2))))
    return float(_clip_scale(_inv_gamma(rng, (n + m) / 2.0, max(rate, _SCALE_FLOOR))))


def _check_state(state, iteration):
    ok = (
        np.all(np.isfinite(state.alpha))
        and np.all(state.beta2 > 0)
        and np.all(state.nu > 0)
        and state.tau2 > 0
        and state.sigma2 > 0
        and state.xi > 0
        and np.isfinite(state.tau2)
        and np.isfinite(state.sigma2)
    )
    if not ok:
        raise NumericalError(f"non-finite Gibbs state at iteration {iteration}: {state!r}")


def gibbs_fit(data, fmap, n_iter=1000, burn_in=500, thin=5, rng=None, init=None):
    """Run the horseshoe Gibbs sampler and keep thinned post-burn-in states.

    Keeps floor((n_iter - burn_in) / thin) snapshots.  An ``init`` state
    warm-starts the chain (useful when refitting after one new observation).
    """
    if len(data) < 1:
        raise ValueError("gibbs_fit needs at least one observation")
    if not n_iter > burn_in >= 0:
        raise ValueError(f"need n_iter > burn_in >= 0, got {n_iter}, {burn_in}")
    if thin < 1:
        raise ValueError("thin must be >= 1")
    rng = np.random.default_rng() if rng is None else rng

    X = fmap.design_matrix(data.points)
    y = data.y_array()
    m = fmap.m

    if init is not None:
        state = init.copy()
    else:
        y_var = float(np.var(y))
        state = HorseshoeState(
            alpha=np.zeros(m),
            beta2=np.ones(m),
            tau2=1.0,
            sigma2=y_var if y_var > 0 else 1.0,
            nu=np.ones(m),
            xi=1.0,
        )

    kept = []
    for t in range(n_iter):
        lam2 = state.beta2 * state.tau2
        state.alpha = sample_alpha(X, y, state.sigma2, lam2, rng)
        state.beta2, state.nu = sample_local_scales(state.alpha, state.nu, state.tau2, state.sigma2, rng)
        state.tau2, state.xi = sample_global_scale(state.alpha, state.beta2, state.xi, state.sigma2, rng)
        state.sigma2 = sample_noise(X, y, state.alpha, state.beta2, state.tau2, rng)
        _check_state(state, t)
        if t >= burn_in and (t - burn_in + 1) % thin == 0:
            kept.append(state.copy())
    return PosteriorDraws(kept, fmap)


class PosteriorDraws:
    """Retained Gibbs snapshots exposed through the predictive contract."""

    def __init__(self, states, fmap):
        self.states = list(states)
        self.fmap = fmap
        if self.states:
            self.alpha_matrix = np.array([s.alpha for s in self.states])
            self.sigma2s = np.array([s.sigma2 for s in self.states])
        else:
            self.alpha_matrix = np.empty((0, fmap.m))
            self.sigma2s = np.empty(0)

    def __len__(self):
        return len(self.states)

    @property
    def last_state(self):
        return self.states[-1] if self.states else None

    def f_values(self, x):
        """f_a(x) under every retained coefficient draw."""
        if not self.states:
            raise NotFittedError("no retained posterior draws")
        return self.alpha_matrix @ self.fmap.transform(x)

    def sample_f(self, x, count, rng):
        """count draws of f(x): retained states picked uniformly with replacement."""
        values = self.f_values(x)
        idx = rng.integers(0, len(values), size=count)
        return values[idx]

    def posterior_mean_alpha(self):
        if not self.states:
            raise NotFittedError("no retained posterior draws")
        return self.alpha_matrix.mean(axis=0)
