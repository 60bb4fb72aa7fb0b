"""K-stereographic model: Poincaré ball (K < 0) and projected hypersphere (K > 0).

For K > 0 the model is compactified with a point at infinity, the image of
the sphere's south pole. It is represented by a vector whose entries are all
``+inf``; see :data:`INFINITY` and :func:`is_infinity`. Only the isometries
to and from the radius model accept it.
"""

import numpy as np

from .._tolerances import TOL
from ..base import GyroError, GyroOps, expand_scalar
from ._curvature import arcsin_k, artan_k, dot, safe_div, sqnorm, tan_k, vnorm


class InfinityError(GyroError):
    """Arithmetic was attempted on the compactification point."""


INFINITY = np.inf


def infinity(n):
    """The compactification point of the n-dimensional projected hypersphere."""
    return np.full(n, INFINITY)


def is_infinity(x):
    return np.all(np.isposinf(x), axis=-1)


def _reject_infinity(*points):
    for x in points:
        if np.any(is_infinity(np.asarray(x))):
            raise InfinityError("operand is the point at infinity")


def mobius_add(x, y, k):
    """Gyroaddition of the stereographic model.

    Returns rows of ``+inf`` where the denominator vanishes (only possible
    for ``k > 0``).
    """
    xy = dot(x, y)
    x2 = sqnorm(x)
    y2 = sqnorm(y)
    num = (1 - 2 * k * xy - k * y2) * x + (1 + k * x2) * y
    den = 1 - 2 * k * xy + k * k * x2 * y2
    singular = np.abs(den) < TOL.singular_denominator
    out = num / np.where(singular, 1.0, den)
    return np.where(singular, INFINITY, out)


def mobius_scalar(t, x, k):
    """Scalar gyromultiplication; ``+inf`` rows in the singular K > 0 case."""
    sk = np.sqrt(abs(k))
    r = vnorm(x)
    angle = expand_scalar(t, 1) * artan_k(sk * r, k)
    if k > 0:
        singular = np.abs(np.cos(angle)) < TOL.singular_denominator
        angle = np.where(singular, 0.0, angle)
    scale = safe_div(tan_k(angle, k), sk * r)
    small = r < TOL.small_norm
    out = np.where(small, expand_scalar(t, 1) * x, scale * x)
    if k > 0:
        out = np.where(singular & ~small, INFINITY, out)
    return out


def mobius_gyr(x, y, z, k):
    """Closed-form gyration ``gyr[x, y] z`` (linear in ``z``)."""
    xy = dot(x, y)
    xz = dot(x, z)
    yz = dot(y, z)
    x2 = sqnorm(x)
    y2 = sqnorm(y)
    a = -k * k * xz * y2 - k * yz + 2 * k * k * xy * yz
    b = -k * k * yz * x2 + k * xz
    d = 1 - 2 * k * xy + k * k * x2 * y2
    return z + 2 * (a * x + b * y) / d


class StereographicOps(GyroOps):
    gyrovector_space = True

    def __init__(self, descriptor):
        super().__init__(descriptor)
        if descriptor.K == 0:
            raise ValueError("use EuclideanOps for K = 0")
        self.k = float(descriptor.K)
        self.sk = np.sqrt(abs(self.k))
        self.n = descriptor.n
        self.point_shape = (self.n,)
        self.tangent_shape = (self.n,)

    @property
    def natural_scale(self):
        return 1.0 / self.sk

    def identity(self):
        return np.zeros(self.n)

    def lambda_x(self, x):
        """Conformal factor 2 / (1 + K |x|^2), keepdims."""
        return 2.0 / (1.0 + self.k * sqnorm(x))

    def oplus(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        _reject_infinity(x, y)
        return mobius_add(x, y, self.k)

    def ominus(self, x):
        x = np.asarray(x, float)
        _reject_infinity(x)
        return -x

    def odot(self, t, x):
        x = np.asarray(x, float)
        _reject_infinity(x)
        return mobius_scalar(t, x, self.k)

    def gyr(self, x, y, z):
        x, y, z = (np.asarray(a, float) for a in (x, y, z))
        _reject_infinity(x, y, z)
        return mobius_gyr(x, y, z, self.k)

    def log_e(self, x):
        x = np.asarray(x, float)
        _reject_infinity(x)
        r = vnorm(x)
        scale = safe_div(artan_k(self.sk * r, self.k), self.sk * r)
        return np.where(r < TOL.small_norm, 1.0, scale) * x

    def exp_e(self, v):
        v = np.asarray(v, float)
        r = vnorm(v)
        scale = safe_div(tan_k(self.sk * r, self.k), self.sk * r)
        return np.where(r < TOL.small_norm, 1.0, scale) * v

    def metric(self, x, v, w):
        return (self.lambda_x(x) ** 2 * dot(v, w))[..., 0]

    def metric_e(self, v, w):
        return 4.0 * dot(v, w)[..., 0]

    def exp(self, x, v):
        x = np.asarray(x, float)
        v = np.asarray(v, float)
        r = vnorm(v)
        arg = self.sk * self.lambda_x(x) * r / 2
        scale = safe_div(tan_k(arg, self.k), self.sk * r)
        step = np.where(r < TOL.small_norm, self.lambda_x(x) / 2, scale) * v
        return self.oplus(x, step)

    def log(self, x, y):
        x = np.asarray(x, float)
        w = self.oplus(-x, y)
        r = vnorm(w)
        scale = safe_div(2 * artan_k(self.sk * r, self.k), self.sk * self.lambda_x(x) * r)
        return np.where(r < TOL.small_norm, 2 / self.lambda_x(x), scale) * w

    def transp(self, x, y, v):
        """Parallel transport of ``v`` from ``x`` to ``y``."""
        return self.lambda_x(x) / self.lambda_x(y) * self.gyr(y, -np.asarray(x, float), v)

    def transp_e(self, x, v):
        return self.transp(self.identity(), x, v)

    def dist(self, x, y):
        """Geodesic distance from the conformal chordal formula.

        Independent of the gyroaddition; used to check that the gyrodistance
        is the Riemannian distance.
        """
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        _reject_infinity(x, y)
        chord = vnorm(x - y) / np.sqrt((1 + self.k * sqnorm(x)) * (1 + self.k * sqnorm(y)))
        return (2 / self.sk * arcsin_k(self.sk * chord, self.k))[..., 0]

    def belongs(self, x, atol=1e-9):
        x = np.asarray(x, float)
        finite = np.all(np.isfinite(x), axis=-1)
        if self.k > 0:
            return finite
        with np.errstate(invalid="ignore"):
            return finite & (1 + self.k * sqnorm(x)[..., 0] > atol)

    def random_tangent_e(self, rng, size):
        # metric at the origin is 4 <.,.>, so halve to get unit RMS norm
        return rng.standard_normal((size, self.n)) / (2 * np.sqrt(self.n))
