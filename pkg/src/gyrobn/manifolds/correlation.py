"""Full-rank correlation matrices through the row-wise Cholesky identification.

Row ``k`` (``k = 1 .. n-1``) of the Cholesky factor of ``C`` is a unit vector
in R^{k+1} with positive last entry, i.e. a point of the open hemisphere,
which maps to the unit Poincaré ball of dimension ``k`` by
``[x; x_last] -> x / (1 + x_last)``. Stacking the ``n - 1`` ball vectors
gives a flat coordinate vector of length ``n (n - 1) / 2`` on which all gyro
and Riemannian operations act segment by segment.
"""

import numpy as np

from ..base import GyroOps
from ..descriptor import ManifoldDescriptor
from ..linalg import cholesky, sym, transpose
from ._curvature import sqnorm
from .stereographic import StereographicOps


def _segments(n):
    bounds = np.cumsum([0] + list(range(1, n)))
    return [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]


def cor_to_poly(c):
    """Map correlation matrices to stacked Poincaré coordinates.

    Returns
    -------
    ndarray, shape (..., n (n - 1) / 2)
        Row ``k`` of the Cholesky factor contributes a ``k``-vector.
    """
    chol = cholesky(c)
    n = chol.shape[-1]
    rows = []
    for k in range(1, n):
        rows.append(chol[..., k, :k] / (1 + chol[..., k, k : k + 1]))
    return np.concatenate(rows, axis=-1)


def poly_to_cor(x, n):
    """Inverse of :func:`cor_to_poly` with exact unit-diagonal normalization."""
    x = np.asarray(x, float)
    chol = np.zeros(x.shape[:-1] + (n, n))
    chol[..., 0, 0] = 1.0
    for k, seg in enumerate(_segments(n), start=1):
        v = x[..., seg]
        r2 = sqnorm(v)
        chol[..., k, :k] = 2 * v / (1 + r2)
        chol[..., k, k] = ((1 - r2) / (1 + r2))[..., 0]
    c = chol @ transpose(chol)
    d = 1.0 / np.sqrt(np.diagonal(c, axis1=-2, axis2=-1))
    c = sym(c * d[..., :, None] * d[..., None, :])
    idx = np.arange(n)
    c[..., idx, idx] = 1.0
    return c


def correlation_from_covariance(sigma):
    """D^-1/2 Sigma D^-1/2 with D the diagonal of Sigma."""
    sigma = np.asarray(sigma, float)
    d = 1.0 / np.sqrt(np.diagonal(sigma, axis1=-2, axis2=-1))
    c = sym(sigma * d[..., :, None] * d[..., None, :])
    idx = np.arange(sigma.shape[-1])
    c[..., idx, idx] = 1.0
    return c


class CorrelationOps(GyroOps):
    """Product of unit Poincaré balls PB^1 x ... x PB^{n-1}, seen on Cor(n).

    Tangent vectors are the stacked ball tangents (flat, length
    ``n (n - 1) / 2``).
    """

    def __init__(self, descriptor):
        super().__init__(descriptor)
        self.n = descriptor.n
        self.m = self.n * (self.n - 1) // 2
        self.point_shape = (self.n, self.n)
        self.tangent_shape = (self.m,)
        self.segments = _segments(self.n)
        self.balls = [
            StereographicOps(ManifoldDescriptor("stereo", k, K=-1.0)) for k in range(1, self.n)
        ]

    # -- coordinates ----------------------------------------------------------

    def to_poly(self, c):
        return cor_to_poly(c)

    def from_poly(self, x):
        return poly_to_cor(x, self.n)

    def _map(self, fn, *flats):
        parts = [fn(ball, *(f[..., s] for f in flats)) for ball, s in zip(self.balls, self.segments)]
        return np.concatenate(parts, axis=-1)

    # -- gyro operations -------------------------------------------------------

    def identity(self):
        return np.eye(self.n)

    def oplus(self, x, y):
        return self.from_poly(self._map(lambda b, u, v: b.oplus(u, v), self.to_poly(x), self.to_poly(y)))

    def ominus(self, x):
        return self.from_poly(-self.to_poly(x))

    def odot(self, t, x):
        t = np.asarray(t, float)
        return self.from_poly(self._map(lambda b, u: b.odot(t, u), self.to_poly(x)))

    def gyr(self, x, y, z):
        px, py, pz = self.to_poly(x), self.to_poly(y), self.to_poly(z)
        return self.from_poly(self._map(lambda b, u, v, w: b.gyr(u, v, w), px, py, pz))

    def log_e(self, x):
        return self._map(lambda b, u: b.log_e(u), self.to_poly(x))

    def exp_e(self, v):
        return self.from_poly(self._map(lambda b, w: b.exp_e(w), np.asarray(v, float)))

    def metric_e(self, v, w):
        return 4.0 * np.sum(np.asarray(v) * w, axis=-1)

    def exp(self, x, v):
        return self.from_poly(self._map(lambda b, u, w: b.exp(u, w), self.to_poly(x), np.asarray(v, float)))

    def log(self, x, y):
        return self._map(lambda b, u, w: b.log(u, w), self.to_poly(x), self.to_poly(y))

    def metric(self, x, v, w):
        px = self.to_poly(x)
        v = np.asarray(v, float)
        w = np.asarray(w, float)
        return sum(b.metric(px[..., s], v[..., s], w[..., s]) for b, s in zip(self.balls, self.segments))

    def dist(self, x, y):
        px, py = self.to_poly(x), self.to_poly(y)
        sq = sum(b.dist(px[..., s], py[..., s]) ** 2 for b, s in zip(self.balls, self.segments))
        return np.sqrt(sq)

    def belongs(self, x, atol=1e-9):
        x = np.asarray(x, float)
        finite = np.all(np.isfinite(x), axis=(-2, -1))
        xx = np.where(finite[..., None, None], x, 0.0)
        tol = max(atol, 1e-10)
        symm = np.max(np.abs(xx - transpose(xx)), axis=(-2, -1)) <= tol
        diag = np.max(np.abs(np.diagonal(xx, axis1=-2, axis2=-1) - 1), axis=-1) <= tol
        pos = np.linalg.eigvalsh(sym(xx))[..., 0] > 0
        return finite & symm & diag & pos

    def random_tangent_e(self, rng, size):
        return rng.standard_normal((size, self.m)) / (2 * np.sqrt(self.m))

