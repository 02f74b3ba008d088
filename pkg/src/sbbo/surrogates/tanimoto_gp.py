"""Gaussian process surrogate with a Tanimoto kernel on binary encodings.

Hyperparameters (kernel amplitude and noise variance) are picked by
maximizing the log marginal likelihood over a fixed log-spaced grid, which
keeps fitting deterministic.  The grid search reuses one eigendecomposition
of the unit-amplitude similarity matrix, so scoring a (phi, noise) pair is
O(n) instead of a fresh O(n^3) factorization.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.linalg import cho_factor, cho_solve, eigh, LinAlgError

from ..errors import NumericalError
from ..space import binary_design, binary_features

PHI_GRID = np.logspace(-2.0, 2.0, 25)
NOISE_GRID = np.logspace(-6.0, 1.0, 25)

_JITTERS = (0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4)

_LOG_2PI = math.log(2.0 * math.pi)


def tanimoto_kernel(x, x2, phi=1.0):
    """phi * (x . x2) / (|x|^2 + |x2|^2 - x . x2) for binary vectors.

    The 0/0 case of two all-zero vectors is defined as phi (two identical
    empty sets are perfectly similar).
    """
    x = np.asarray(x, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if x.shape != x2.shape:
        raise ValueError(f"shape mismatch {x.shape} vs {x2.shape}")
    num = float(x @ x2)
    den = float(x @ x + x2 @ x2 - num)
    if den == 0.0:
        return float(phi)
    return phi * num / den


def tanimoto_gram(X, X2=None, phi=1.0):
    """Pairwise Tanimoto kernel matrix between rows of X and X2."""
    X = np.asarray(X, dtype=float)
    X2 = X if X2 is None else np.asarray(X2, dtype=float)
    cross = X @ X2.T
    sq1 = np.einsum("ij,ij->i", X, X)
    sq2 = np.einsum("ij,ij->i", X2, X2)
    den = sq1[:, None] + sq2[None, :] - cross
    out = np.where(den > 0, np.divide(cross, den, out=np.ones_like(cross), where=den > 0), 1.0)
    return phi * out


def _chol_with_jitter(mat):
    """Cholesky factorization with escalating diagonal jitter."""
    for jitter in _JITTERS:
        try:
            shifted = mat if jitter == 0.0 else mat + jitter * np.eye(mat.shape[0])
            return cho_factor(shifted, lower=True), jitter
        except LinAlgError:
            continue
    raise NumericalError(
        f"Cholesky failed for a {mat.shape[0]}x{mat.shape[0]} matrix even with jitter {_JITTERS[-1]:g}",
        jitter=_JITTERS[-1],
    )


class TanimotoGP:
    """Fitted GP with analytic posterior over a categorical space."""

    def __init__(self, phi, noise_var, train_X, train_y, spec, chol, alpha, jitter):
        self.phi = float(phi)
        self.noise_var = float(noise_var)
        self.train_X = train_X
        self.train_y = train_y
        self.spec = spec
        self.chol = chol
        self.alpha = alpha  # (K + noise I)^{-1} y
        self.jitter = jitter

    @classmethod
    def fit(cls, data, spec, phi_grid=None, noise_grid=None):
        """Empirical-Bayes fit over a (phi, noise) grid.

        The selected pair maximizes the log marginal likelihood; ties break
        toward the first grid entry, keeping the fit deterministic.
        """
        if len(data) < 1:
            raise ValueError("fit needs at least one observation")
        phi_grid = PHI_GRID if phi_grid is None else np.atleast_1d(np.asarray(phi_grid, dtype=float))
        noise_grid = NOISE_GRID if noise_grid is None else np.atleast_1d(np.asarray(noise_grid, dtype=float))
        X = binary_design(data.points, spec)
        y = data.y_array()
        n = len(y)

        S = tanimoto_gram(X)
        # One symmetric eigendecomposition serves every grid point.
        evals, evecs = eigh(S)
        evals = np.clip(evals, 0.0, None)
        q2 = (evecs.T @ y) ** 2

        best = (-np.inf, phi_grid[0], noise_grid[0])
        for phi in phi_grid:
            lam = phi * evals
            for noise in noise_grid:
                d = lam + noise
                lml = -0.5 * float(np.sum(q2 / d) + np.sum(np.log(d)) + n * _LOG_2PI)
                if lml > best[0]:
                    best = (lml, phi, noise)
        _, phi, noise = best

        chol, jitter = _chol_with_jitter(phi * S + noise * np.eye(n))
        alpha = cho_solve(chol, y)
        return cls(phi, noise, X, y, spec, chol, alpha, jitter)

    def log_marginal_likelihood(self, phi, noise_var):
        """Log marginal likelihood of the training data at given hypers."""
        n = len(self.train_y)
        K = tanimoto_gram(self.train_X, phi=phi) + noise_var * np.eye(n)
        chol, _ = _chol_with_jitter(K)
        a = cho_solve(chol, self.train_y)
        logdet = 2.0 * np.sum(np.log(np.diag(chol[0])))
        return -0.5 * float(self.train_y @ a + logdet + n * _LOG_2PI)

    def _features(self, x):
        return binary_features(x, self.spec)

    def posterior(self, x):
        """Posterior mean and variance of the latent f at x.

        Variance is clamped to [0, k(x, x)]; k(x, x) = phi for every point.
        """
        k_x = tanimoto_gram(self._features(x)[None, :], self.train_X, phi=self.phi)[0]
        mean = float(k_x @ self.alpha)
        w = cho_solve(self.chol, k_x)
        var = self.phi - float(k_x @ w)
        var = min(max(var, 0.0), self.phi)
        return mean, var

    def sample_f(self, x, count, rng):
        """count independent draws of the latent f(x) (no observation noise)."""
        mean, var = self.posterior(x)
        return rng.normal(mean, math.sqrt(var), size=count)

    def predictive_logpdf(self, x, values):
        """Log density of latent-f values at x under the Gaussian posterior."""
        mean, var = self.posterior(x)
        v = np.asarray(values, dtype=float)
        return -0.5 * ((v - mean) ** 2 / var + math.log(var) + _LOG_2PI)

    def __repr__(self):
        return f"TanimotoGP(n={len(self.train_y)}, phi={self.phi:g}, noise_var={self.noise_var:g})"
