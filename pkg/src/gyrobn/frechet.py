"""Fréchet mean and variance through a generic Karcher flow.

The solver only needs ``exp``, ``log`` and ``metric`` from the geometry, so
one implementation serves every family.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class FrechetError(ValueError):
    """Empty batch, bad weights, or a non-finite iterate."""


@dataclass(frozen=True)
class KarcherConfig:
    """Karcher-flow settings.

    Parameters
    ----------
    max_iters : int
        Gradient evaluations allowed.
    step : float
        Step size in ``(0, 1]``.
    tol : float
        Stop once the Riemannian gradient norm drops below this.
    init : {"first", "provided"}
        Start from the first sample, or from the ``init_point`` argument of
        :func:`frechet_mean`.
    """

    max_iters: int = 50
    step: float = 1.0
    tol: float = 1e-9
    init: str = "first"

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not 0 < self.step <= 1:
            raise ValueError("step must lie in (0, 1]")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.init not in ("first", "provided"):
            raise ValueError("init must be 'first' or 'provided'")


class FrechetResult(NamedTuple):
    mean: np.ndarray
    iterations: int
    grad_norm: float


def _as_batch(points, ops):
    points = np.asarray(points, dtype=float)
    ndim = len(ops.point_shape)
    if points.ndim != ndim + 1:
        raise FrechetError(f"expected a batch of shape (N, *{tuple(ops.point_shape)}), got {points.shape}")
    if points.shape[0] == 0:
        raise FrechetError("empty batch")
    return points


def _weights(weights, size):
    if weights is None:
        return np.full(size, 1.0 / size)
    w = np.asarray(weights, dtype=float)
    if w.shape != (size,):
        raise FrechetError(f"weights must have shape ({size},)")
    if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
        raise FrechetError("weights must be nonnegative and sum to one")
    return w


def karcher_gradient(points, mu, ops, weights=None):
    """Weighted mean of ``log_mu(x_i)``, the negative half-gradient of the Fréchet cost."""
    points = _as_batch(points, ops)
    w = _weights(weights, points.shape[0])
    return np.tensordot(w, ops.log(mu, points), axes=(0, 0))


def frechet_mean(points, ops, weights=None, cfg=None, init_point=None):
    """Weighted Fréchet mean by the Karcher iteration ``mu <- exp_mu(step * sum w_i log_mu x_i)``.

    Parameters
    ----------
    points : ndarray, shape (N, *point_shape)
    ops : GyroOps
    weights : ndarray, shape (N,), optional
        Defaults to uniform.
    cfg : KarcherConfig, optional
    init_point : ndarray, optional
        Required when ``cfg.init == "provided"``.

    Returns
    -------
    FrechetResult
        ``(mean, iterations, grad_norm)``. ``iterations`` counts gradient
        evaluations; the flow converged iff ``grad_norm < cfg.tol``.
    """
    cfg = cfg or KarcherConfig()
    points = _as_batch(points, ops)
    w = _weights(weights, points.shape[0])
    if cfg.init == "provided":
        if init_point is None:
            raise FrechetError("init='provided' needs init_point")
        mu = np.asarray(init_point, dtype=float)
    else:
        mu = points[0]

    grad_norm = np.inf
    for it in range(1, cfg.max_iters + 1):
        grad = np.tensordot(w, ops.log(mu, points), axes=(0, 0))
        grad_norm = float(ops.norm(mu, grad))
        if not np.isfinite(grad_norm):
            raise FrechetError(f"non-finite gradient at iteration {it}")
        if grad_norm < cfg.tol:
            return FrechetResult(mu, it, grad_norm)
        mu = ops.exp(mu, cfg.step * grad)
        if not np.all(np.isfinite(mu)):
            raise FrechetError(f"non-finite iterate at iteration {it}")
    grad = np.tensordot(w, ops.log(mu, points), axes=(0, 0))
    return FrechetResult(mu, cfg.max_iters, float(ops.norm(mu, grad)))


def frechet_variance(points, mean, ops):
    """Biased Fréchet variance ``(1/N) sum d^2(x_i, mean)``."""
    points = _as_batch(points, ops)
    return float(np.mean(ops.dist(points, mean) ** 2))


def binary_barycenter(x1, x2, eta, ops):
    """Minimizer of ``eta d^2(x1, y) + (1 - eta) d^2(x2, y)``.

    ``eta`` is the weight of ``x1``; the point is ``exp_{x2}(eta log_{x2} x1)``.
    """
    if not 0 <= eta <= 1:
        raise ValueError("eta must lie in [0, 1]")
    if eta == 0:
        return np.array(x2, dtype=float)
    if eta == 1:
        return np.array(x1, dtype=float)
    return ops.exp(x2, eta * ops.log(x2, x1))
