"""Beltrami-Klein model with Einstein gyro operations, K < 0.

Includes the Riemannian isometries to and from the Poincaré ball and their
differentials.
"""

import numpy as np

from .._tolerances import TOL
from ..base import GyroOps
from ._curvature import artan_k, dot, safe_div, sqnorm, tan_k, vnorm
from .stereographic import mobius_scalar


def gamma(x, k):
    """Gamma factor 1 / sqrt(1 + K |x|^2), keepdims."""
    return 1.0 / np.sqrt(1.0 + k * sqnorm(x))


def einstein_add(x, y, k):
    gx = gamma(x, k)
    xy = dot(x, y)
    return (x + y / gx - k * gx / (1 + gx) * xy * x) / (1 - k * xy)


def einstein_gyr(x, y, z, k):
    gx = gamma(x, k)
    gy = gamma(y, k)
    xy = dot(x, y)
    xz = dot(x, z)
    yz = dot(y, z)
    a = (
        k * gx**2 / (gx + 1) * (gy - 1) * xz
        - k * gx * gy * yz
        + 2 * k**2 * gx**2 * gy**2 / ((gx + 1) * (gy + 1)) * xy * yz
    )
    b = k * gy / (gy + 1) * (gx * (gy + 1) * xz + (gx - 1) * gy * yz)
    d = 1 + gx * gy * (1 - k * xy)
    return z + (a * x + b * y) / d


def klein_to_poincare(x, k):
    return np.asarray(x, float) / (1 + np.sqrt(1 + k * sqnorm(x)))


def poincare_to_klein(x, k):
    return 2 * np.asarray(x, float) / (1 - k * sqnorm(x))


def klein_to_poincare_diff(x, v, k):
    """Differential of :func:`klein_to_poincare` at ``x`` applied to ``v``."""
    root = np.sqrt(1 + k * sqnorm(x))
    return v / (1 + root) - k * dot(x, v) / ((1 + root) ** 2 * root) * x


def poincare_to_klein_diff(x, v, k):
    q = 1 - k * sqnorm(x)
    return 2 * v / q + 4 * k * dot(x, v) / q**2 * x


class KleinOps(GyroOps):
    gyrovector_space = True

    def __init__(self, descriptor):
        super().__init__(descriptor)
        self.k = float(descriptor.K)
        self.sk = np.sqrt(-self.k)
        self.n = descriptor.n
        self.point_shape = (self.n,)
        self.tangent_shape = (self.n,)

    @property
    def natural_scale(self):
        return 1.0 / self.sk

    def identity(self):
        return np.zeros(self.n)

    def oplus(self, x, y):
        return einstein_add(np.asarray(x, float), np.asarray(y, float), self.k)

    def ominus(self, x):
        return -np.asarray(x, float)

    def odot(self, t, x):
        return mobius_scalar(t, np.asarray(x, float), self.k)

    def gyr(self, x, y, z):
        return einstein_gyr(*(np.asarray(a, float) for a in (x, y, z)), self.k)

    def log_e(self, x):
        x = np.asarray(x, float)
        r = vnorm(x)
        scale = safe_div(artan_k(self.sk * r, self.k), self.sk * r)
        return np.where(r < TOL.small_norm, 1.0, scale) * x

    def exp_e(self, v):
        v = np.asarray(v, float)
        r = vnorm(v)
        scale = safe_div(tan_k(self.sk * r, self.k), self.sk * r)
        return np.where(r < TOL.small_norm, 1.0, scale) * v

    def metric(self, x, v, w):
        q = 1 + self.k * sqnorm(x)
        return (dot(v, w) / q - self.k * dot(x, v) * dot(x, w) / q**2)[..., 0]

    def metric_e(self, v, w):
        return dot(v, w)[..., 0]

    def exp(self, x, v):
        x = np.asarray(x, float)
        v = np.asarray(v, float)
        q = 1 + self.k * sqnorm(x)
        root = np.sqrt(q)
        u = v / root - self.k * dot(x, v) / ((1 + root) * q) * x
        return self.oplus(x, self.exp_e(u))

    def log(self, x, y):
        x = np.asarray(x, float)
        w = self.oplus(-x, y)
        xp = klein_to_poincare(x, self.k)
        lam = 2.0 / (1 + self.k * sqnorm(xp))
        return poincare_to_klein_diff(xp, self.log_e(w), self.k) / lam

    def dist(self, x, y):
        w = self.oplus(-np.asarray(x, float), y)
        r = vnorm(w)
        arg = self.sk * r / (1 + np.sqrt(1 + self.k * r * r))
        return (2 / self.sk * artan_k(arg, self.k))[..., 0]

    def belongs(self, x, atol=1e-9):
        x = np.asarray(x, float)
        finite = np.all(np.isfinite(x), axis=-1)
        with np.errstate(invalid="ignore"):
            return finite & (1 + self.k * sqnorm(x)[..., 0] > atol)

    def random_tangent_e(self, rng, size):
        return rng.standard_normal((size, self.n)) / np.sqrt(self.n)
