"""Geometry-agnostic gyro operations.

A concrete geometry subclasses :class:`GyroOps` and supplies the Riemannian
primitives (``exp``/``log``/``metric``/``dist``) together with the gyro
operations. Everything else (gyration, gyronorm, gyrodistance, sampling) is
derived here from

    x (+) y  = exp_x(PT_{e->x}(log_e y))
    t (.) x  = exp_e(t log_e x)
    (-) x    = exp_e(-log_e x)
    gyr[x, y] z = (-)(x (+) y) (+) (x (+) (y (+) z))

All methods broadcast over leading batch axes: a point array has shape
``batch_shape + point_shape``.
"""

import numpy as np


class GyroError(ValueError):
    """Invalid gyro operation (off-manifold operand, singular configuration)."""


def expand_scalar(t, point_ndim):
    """Reshape a scalar or batch of scalars to broadcast against points."""
    t = np.asarray(t, dtype=float)
    return t.reshape(t.shape + (1,) * point_ndim)


class GyroOps:
    """Operation bundle of a pseudo-reductive gyrogroup over a manifold.

    Class attributes describe which laws the geometry is known to satisfy
    and are consumed by :func:`gyrobn.axioms.axiom_suite`.
    """

    #: x (+) y = gyr[x, y](y (+) x)
    gyrocommutative = True
    #: left reduction law gyr[x, y] = gyr[x (+) y, y]
    reductive = True
    #: scalar gyromultiplication satisfies the gyrovector axioms V1-V5
    gyrovector_space = False
    #: gyr[x, y] is the identity map (Lie group case)
    commutative_group = False

    point_shape = ()
    tangent_shape = ()

    def __init__(self, descriptor):
        self.descriptor = descriptor

    def __repr__(self):
        return f"{type(self).__name__}({self.descriptor})"

    # -- primitives supplied by subclasses ---------------------------------

    def identity(self):
        raise NotImplementedError

    def oplus(self, x, y):
        raise NotImplementedError

    def ominus(self, x):
        return self.odot(-1.0, x)

    def odot(self, t, x):
        return self.exp_e(expand_scalar(t, len(self.tangent_shape)) * self.log_e(x))

    def log_e(self, x):
        return self.log(self.identity(), x)

    def exp_e(self, v):
        return self.exp(self.identity(), v)

    def metric_e(self, v, w):
        return self.metric(self.identity(), v, w)

    def exp(self, x, v):
        raise NotImplementedError

    def log(self, x, y):
        raise NotImplementedError

    def metric(self, x, v, w):
        raise NotImplementedError

    def dist(self, x, y):
        """Geodesic distance computed from the Riemannian structure."""
        raise NotImplementedError

    def belongs(self, x, atol=1e-9):
        raise NotImplementedError

    def random_tangent_e(self, rng, size):
        """Isotropic Gaussian tangent vectors at the identity, unit RMS norm."""
        raise NotImplementedError

    @property
    def natural_scale(self):
        return 1.0

    # -- derived quantities -------------------------------------------------

    def gyr_definitional(self, x, y, z):
        """Gyration from its defining composition of gyroadditions."""
        return self.oplus(self.ominus(self.oplus(x, y)), self.oplus(x, self.oplus(y, z)))

    def gyr(self, x, y, z):
        return self.gyr_definitional(x, y, z)

    def gyrinner(self, x, y):
        return self.metric_e(self.log_e(x), self.log_e(y))

    def gyronorm(self, x):
        v = self.log_e(x)
        return np.sqrt(np.maximum(self.metric_e(v, v), 0.0))

    def gyrodist(self, x, y):
        return self.gyronorm(self.oplus(self.ominus(x), y))

    def norm(self, x, v):
        return np.sqrt(np.maximum(self.metric(x, v, v), 0.0))

    def sample(self, rng, size, sigma=0.5):
        """Wrapped Gaussian samples around the identity.

        Parameters
        ----------
        rng : numpy.random.Generator
        size : int
            Number of points.
        sigma : float
            Tangent RMS norm, in units of :attr:`natural_scale`.
        """
        v = self.random_tangent_e(rng, size)
        return self.exp_e(sigma * self.natural_scale * v)

    def validate(self, x, atol=1e-9):
        """Return ``x`` as a float array, raising if any point is off-manifold."""
        x = np.asarray(x, dtype=float)
        if x.shape[x.ndim - len(self.point_shape):] != tuple(self.point_shape):
            raise GyroError(
                f"expected trailing shape {tuple(self.point_shape)}, got {x.shape}"
            )
        if not np.all(self.belongs(x, atol=atol)):
            raise GyroError(f"point(s) not on {self.descriptor}")
        return x
