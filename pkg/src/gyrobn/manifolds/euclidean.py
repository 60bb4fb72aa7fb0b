"""Flat K=0 limit: plain vector arithmetic, the exact-arithmetic control."""

import numpy as np

from ..base import GyroOps, expand_scalar
from ._curvature import dot, vnorm


class EuclideanOps(GyroOps):
    gyrovector_space = True
    commutative_group = True

    def __init__(self, descriptor):
        super().__init__(descriptor)
        self.n = descriptor.n
        self.point_shape = (self.n,)
        self.tangent_shape = (self.n,)

    def identity(self):
        return np.zeros(self.n)

    def oplus(self, x, y):
        return np.asarray(x, float) + np.asarray(y, float)

    def ominus(self, x):
        return -np.asarray(x, float)

    def odot(self, t, x):
        return expand_scalar(t, 1) * np.asarray(x, float)

    def gyr(self, x, y, z):
        return np.broadcast_to(z, np.broadcast_shapes(np.shape(x), np.shape(y), np.shape(z))).copy()

    def log_e(self, x):
        return np.asarray(x, float).copy()

    def exp_e(self, v):
        return np.asarray(v, float).copy()

    def exp(self, x, v):
        return np.asarray(x, float) + v

    def log(self, x, y):
        return np.asarray(y, float) - x

    def metric(self, x, v, w):
        return dot(v, w)[..., 0]

    def metric_e(self, v, w):
        return dot(v, w)[..., 0]

    def dist(self, x, y):
        return vnorm(np.asarray(y, float) - x)[..., 0]

    def belongs(self, x, atol=1e-9):
        return np.all(np.isfinite(x), axis=-1)

    def random_tangent_e(self, rng, size):
        return rng.standard_normal((size, self.n)) / np.sqrt(self.n)
