"""SPD manifold gyrogroups under the affine-invariant (AIM), log-Euclidean
(LEM) and log-Cholesky (LCM) metrics.

Tangent conventions:

* AIM: symmetric matrices, metric ``tr(P^-1 V P^-1 W)``.
* LEM: tangents are expressed in the flat chart ``mlog`` (a symmetric matrix
  ``W`` at ``P`` stands for ``d exp_{mlog P}(W)``), so the metric is
  Frobenius everywhere.
* LCM: tangents are expressed in the flat chart ``clog`` (lower-triangular
  matrices), Frobenius metric.

At the identity the LEM chart coincides with the Riemannian logarithm.
"""

import numpy as np

from .._tolerances import TOL
from ..base import GyroOps, expand_scalar
from ..linalg import (
    cholesky,
    frob_inner,
    mexp_sym,
    minvsqrt_sym,
    mlog_sym,
    mpow_sym,
    msqrt_sym,
    sym,
    transpose,
)


def clog(x):
    """Log-Cholesky chart: strictly lower part of L plus log of its diagonal."""
    chol = cholesky(x)
    diag = np.diagonal(chol, axis1=-2, axis2=-1)
    out = np.tril(chol, -1)
    idx = np.arange(chol.shape[-1])
    out[..., idx, idx] = np.log(diag)
    return out


def clog_inverse(m):
    """Inverse of :func:`clog`; exponentiated diagonal entries are clipped at +-700."""
    m = np.asarray(m, float)
    chol = np.tril(m, -1)
    idx = np.arange(m.shape[-1])
    diag = np.diagonal(m, axis1=-2, axis2=-1)
    chol[..., idx, idx] = np.exp(np.clip(diag, -TOL.exp_overflow, TOL.exp_overflow))
    return chol @ transpose(chol)


class SpdOps(GyroOps):
    def __init__(self, descriptor):
        super().__init__(descriptor)
        self.metric_name = descriptor.family.split("-", 1)[1]
        self.n = descriptor.n
        self.point_shape = (self.n, self.n)
        self.tangent_shape = (self.n, self.n)
        self.commutative_group = self.metric_name in ("lem", "lcm")

    def identity(self):
        return np.eye(self.n)

    # -- charts --------------------------------------------------------------

    def _chart(self, x):
        return clog(x) if self.metric_name == "lcm" else mlog_sym(x)

    def _chart_inv(self, m):
        return clog_inverse(m) if self.metric_name == "lcm" else mexp_sym(sym(m))

    # -- gyro operations -------------------------------------------------------

    def oplus(self, x, y):
        if self.metric_name == "aim":
            r = msqrt_sym(x)
            return sym(r @ np.asarray(y, float) @ r)
        return self._chart_inv(self._chart(x) + self._chart(y))

    def ominus(self, x):
        if self.metric_name == "lcm":
            return clog_inverse(-clog(x))
        return sym(np.linalg.inv(np.asarray(x, float)))

    def odot(self, t, x):
        if self.metric_name == "aim":
            return sym(mpow_sym(x, t))
        return self._chart_inv(expand_scalar(t, 2) * self._chart(x))

    def gyr(self, x, y, z):
        if self.commutative_group:
            shape = np.broadcast_shapes(np.shape(x), np.shape(y), np.shape(z))
            return np.broadcast_to(np.asarray(z, float), shape).copy()
        return self.gyr_definitional(x, y, z)

    def log_e(self, x):
        return self._chart(x)

    def exp_e(self, v):
        return self._chart_inv(v)

    def metric_e(self, v, w):
        return frob_inner(v, w)

    # -- Riemannian structure ------------------------------------------------

    def exp(self, x, v):
        if self.metric_name == "aim":
            r = msqrt_sym(x)
            ri = minvsqrt_sym(x)
            return sym(r @ mexp_sym(sym(ri @ v @ ri)) @ r)
        return self._chart_inv(self._chart(x) + v)

    def log(self, x, y):
        if self.metric_name == "aim":
            r = msqrt_sym(x)
            ri = minvsqrt_sym(x)
            return sym(r @ mlog_sym(sym(ri @ np.asarray(y, float) @ ri)) @ r)
        return self._chart(y) - self._chart(x)

    def metric(self, x, v, w):
        if self.metric_name == "aim":
            xi = np.linalg.inv(x)
            return frob_inner(xi @ v, transpose(xi @ w))
        return frob_inner(v, w)

    def dist(self, x, y):
        if self.metric_name == "aim":
            ri = minvsqrt_sym(x)
            w = np.linalg.eigvalsh(sym(ri @ np.asarray(y, float) @ ri))
            return np.sqrt(np.sum(np.log(w) ** 2, axis=-1))
        diff = self._chart(y) - self._chart(x)
        return np.sqrt(frob_inner(diff, diff))

    def belongs(self, x, atol=1e-9):
        x = np.asarray(x, float)
        finite = np.all(np.isfinite(x), axis=(-2, -1))
        xx = np.where(finite[..., None, None], x, 0.0)
        symm = np.max(np.abs(xx - transpose(xx)), axis=(-2, -1)) <= max(atol, 1e-10) * np.maximum(
            1.0, np.max(np.abs(xx), axis=(-2, -1))
        )
        pos = np.linalg.eigvalsh(sym(xx))[..., 0] > 0
        return finite & symm & pos

    def random_tangent_e(self, rng, size):
        g = rng.standard_normal((size, self.n, self.n))
        if self.metric_name == "lcm":
            return np.tril(g) / np.sqrt(self.n * (self.n + 1) / 2)
        v = sym(g) * np.sqrt(2.0)
        idx = np.arange(self.n)
        v[:, idx, idx] /= np.sqrt(2.0)
        return v / self.n


def spdbn_aim_reference(batch, mean, var, bias, scale, eps=1e-5):
    """Direct AIM normalization B^1/2 (M^-1/2 P M^-1/2)^(s / sqrt(v^2 + eps)) B^1/2."""
    mi = minvsqrt_sym(mean)
    rb = msqrt_sym(bias)
    centered = sym(mi @ np.asarray(batch, float) @ mi)
    return sym(rb @ mpow_sym(centered, scale / np.sqrt(var + eps)) @ rb)
