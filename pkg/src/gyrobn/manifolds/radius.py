"""K-radius model: hyperboloid (K < 0) and sphere (K > 0) in R^{n+1}.

Points are ``[x_t, x_s]`` with the time coordinate first. The gyroaddition
and scalar gyromultiplication are evaluated in closed form; the
exp/transport/log compositions that define them are kept as
:meth:`RadiusOps.oplus_composition` and :meth:`RadiusOps.odot_composition`
for cross-checking and benchmarking.
"""

import numpy as np

from .._tolerances import TOL
from ..base import GyroError, GyroOps, expand_scalar
from ._curvature import cos_k, dot, join_time_space, safe_div, sin_k, sqnorm, vnorm
from .stereographic import INFINITY, is_infinity


class RadiusOps(GyroOps):
    gyrovector_space = True

    def __init__(self, descriptor):
        super().__init__(descriptor)
        if descriptor.K == 0:
            raise ValueError("use EuclideanOps for K = 0")
        self.k = float(descriptor.K)
        self.sk = np.sqrt(abs(self.k))
        self.n = descriptor.n
        self.point_shape = (self.n + 1,)
        self.tangent_shape = (self.n + 1,)

    @property
    def natural_scale(self):
        return 1.0 / self.sk

    # -- helpers -------------------------------------------------------------

    def kinner(self, x, y):
        """Euclidean (K > 0) or Lorentz (K < 0) inner product, keepdims."""
        e = dot(x[..., 1:], y[..., 1:])
        tt = x[..., :1] * y[..., :1]
        return e + tt if self.k > 0 else e - tt

    def _knorm(self, v):
        return np.sqrt(np.maximum(self.kinner(v, v), 0.0))

    def _angle(self, x_t, r_s):
        """Distance-from-origin angle, stable near the origin."""
        if self.k > 0:
            return np.arctan2(self.sk * r_s, self.sk * x_t)
        return np.arcsinh(self.sk * r_s)

    def identity(self):
        e = np.zeros(self.n + 1)
        e[0] = 1.0 / self.sk
        return e

    def south_pole(self):
        return -self.identity()

    def _check_south_pole(self, *points):
        if self.k <= 0:
            return
        for x in points:
            x = np.asarray(x)
            pole = (vnorm(x[..., 1:])[..., 0] < TOL.small_norm) & (x[..., 0] < 0)
            if np.any(pole):
                raise GyroError("operation undefined at the south pole -mu0")

    # -- gyro operations -----------------------------------------------------

    def oplus(self, x, y):
        """Closed-form gyroaddition.

        Returns exactly ``-mu0`` in the K > 0 mirrored configuration
        ``x_s = y_s, x_t = -y_t`` where the stereographic sum is infinite.
        """
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        self._check_south_pole(x, y)
        k, sk = self.k, self.sk
        xs, ys = x[..., 1:], y[..., 1:]
        a = 1 + sk * x[..., :1]
        b = 1 + sk * y[..., :1]
        nx = sqnorm(xs)
        ny = sqnorm(ys)
        sxy = dot(xs, ys)
        d = a * a * b * b - 2 * k * a * b * sxy + k * k * nx * ny
        nn = a * a * ny + 2 * a * b * sxy + b * b * nx
        a_s = a * b * b - 2 * k * b * sxy - k * a * ny
        a_y = b * (a * a + k * nx)
        den = d + k * nn
        shape = np.broadcast_shapes(x.shape, y.shape)
        out = np.empty(shape)
        out[..., :1] = (d - k * nn) / (sk * den)
        np.multiply(xs, 2 * a_s / den, out=out[..., 1:])
        out[..., 1:] += ys * (2 * a_y / den)
        if k > 0:
            singular = np.abs(d[..., 0]) < TOL.singular_denominator
            if np.any(singular):
                out = np.where(singular[..., None], self.south_pole(), out)
        return out

    def odot(self, t, x):
        """Closed-form scalar gyromultiplication.

        In the K > 0 singular case ``t * theta = (2k + 1) pi`` the result is
        exactly ``-mu0``.
        """
        x = np.asarray(x, float)
        self._check_south_pole(x)
        t = expand_scalar(t, 1)
        xs = x[..., 1:]
        r = vnorm(xs)
        theta = self._angle(x[..., :1], r)
        angle = t * theta
        c = cos_k(angle, self.k)
        s = sin_k(angle, self.k)
        time = c / self.sk
        space = safe_div(s, self.sk * r) * xs
        out = join_time_space(time, space)
        origin = (r < TOL.small_norm) | (t == 0)
        out = np.where(origin, self.identity(), out)
        if self.k > 0:
            singular = (np.abs(s) < TOL.singular_denominator) & (c < 0) & ~origin
            out = np.where(singular, self.south_pole(), out)
        return out

    def ominus(self, x):
        x = np.array(x, dtype=float)
        self._check_south_pole(x)
        x[..., 1:] *= -1
        return x

    # -- Riemannian structure -------------------------------------------------

    def log_e(self, x):
        x = np.asarray(x, float)
        self._check_south_pole(x)
        xs = x[..., 1:]
        r = vnorm(xs)
        theta = self._angle(x[..., :1], r)
        scale = np.where(r < TOL.small_norm, 1.0, safe_div(theta, self.sk * r))
        return join_time_space(np.zeros_like(r), scale * xs)

    def exp_e(self, v):
        v = np.asarray(v, float)
        vs = v[..., 1:]
        r = vnorm(vs)
        time = cos_k(self.sk * r, self.k) / self.sk
        scale = np.where(r < TOL.small_norm, 1.0, safe_div(sin_k(self.sk * r, self.k), self.sk * r))
        return join_time_space(time, scale * vs)

    def transp_e(self, x, v):
        """Parallel transport from ``mu0`` to ``x``."""
        x = np.asarray(x, float)
        v = np.asarray(v, float)
        coef = self.k * dot(x[..., 1:], v[..., 1:]) / (1 + self.sk * x[..., :1])
        shift = join_time_space(x[..., :1] + 1 / self.sk, x[..., 1:])
        return v - coef * shift

    def transp(self, x, y, v):
        coef = self.k * self.kinner(y, v) / (1 + self.k * self.kinner(x, y))
        return v - coef * (x + y)

    def exp(self, x, v):
        x = np.asarray(x, float)
        v = np.asarray(v, float)
        alpha = self.sk * self._knorm(v)
        scale = np.where(alpha < TOL.small_norm, 1.0, safe_div(sin_k(alpha, self.k), alpha))
        return cos_k(alpha, self.k) * x + scale * v

    def log(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        beta = self.k * self.kinner(x, y)
        u = y - beta * x
        r = self._knorm(u)
        if self.k > 0:
            theta = np.arctan2(self.sk * r, beta)
        else:
            theta = np.arcsinh(self.sk * r)
        scale = np.where(r < TOL.small_norm, 1.0, safe_div(theta, self.sk * r))
        return scale * u

    def metric(self, x, v, w):
        return self.kinner(v, w)[..., 0]

    def metric_e(self, v, w):
        return self.kinner(v, w)[..., 0]

    def dist(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        if self.k > 0:
            theta = 2 * np.arctan2(vnorm(x - y), vnorm(x + y))
        else:
            theta = 2 * np.arcsinh(self.sk * self._knorm(x - y) / 2)
        return (theta / self.sk)[..., 0]

    def oplus_composition(self, x, y):
        """Gyroaddition as exp_x(PT_{mu0 -> x}(log_mu0 y))."""
        return self.exp(x, self.transp_e(x, self.log_e(y)))

    def odot_composition(self, t, x):
        return self.exp_e(expand_scalar(t, 1) * self.log_e(x))

    def belongs(self, x, atol=1e-9):
        x = np.asarray(x, float)
        finite = np.all(np.isfinite(x), axis=-1)
        with np.errstate(invalid="ignore"):
            on = np.abs(self.k * self.kinner(x, x)[..., 0] - 1) <= atol * np.maximum(
                1.0, self.k * sqnorm(x)[..., 0]
            )
            if self.k < 0:
                on &= x[..., 0] > 0
        return finite & on

    def random_tangent_e(self, rng, size):
        v = np.zeros((size, self.n + 1))
        v[:, 1:] = rng.standard_normal((size, self.n)) / np.sqrt(self.n)
        return v


def radius_to_stereo(x, k):
    """Stereographic projection fixing the south pole; ``-mu0`` maps to infinity."""
    x = np.asarray(x, float)
    sk = np.sqrt(abs(k))
    den = 1 + sk * x[..., :1]
    pole = np.abs(den) < TOL.singular_denominator
    out = x[..., 1:] / np.where(pole, 1.0, den)
    return np.where(pole, INFINITY, out)


def stereo_to_radius(y, k):
    """Inverse projection; the point at infinity maps to ``-mu0``."""
    y = np.asarray(y, float)
    sk = np.sqrt(abs(k))
    inf = is_infinity(y)[..., None]
    yy = np.where(inf, 0.0, y)
    q = k * sqnorm(yy)
    time = (1 - q) / (sk * (1 + q))
    space = 2 * yy / (1 + q)
    out = join_time_space(time, space)
    pole = np.zeros(out.shape[-1])
    pole[0] = -1 / sk
    return np.where(inf, pole, out)
