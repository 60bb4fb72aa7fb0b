"""Curvature-aware scalar functions and small vector helpers."""

import numpy as np

from .._tolerances import TOL


def tan_k(x, k):
    return np.tanh(x) if k < 0 else np.tan(x)


def artan_k(x, k):
    if k < 0:
        lim = 1.0 - TOL.artanh_clip
        return np.arctanh(np.clip(x, -lim, lim))
    return np.arctan(x)


def sin_k(x, k):
    return np.sinh(x) if k < 0 else np.sin(x)


def cos_k(x, k):
    return np.cosh(x) if k < 0 else np.cos(x)


def arcsin_k(x, k):
    if k < 0:
        return np.arcsinh(x)
    return np.arcsin(np.clip(x, -1.0, 1.0))


def dot(x, y):
    return np.einsum("...i,...i->...", x, y)[..., None]


def sqnorm(x):
    return dot(x, x)


def vnorm(x):
    return np.sqrt(sqnorm(x))


def safe_div(num, den):
    """``num / den`` with zero where ``den`` vanishes."""
    den = np.asarray(den, dtype=float)
    small = den < TOL.small_norm
    return np.where(small, 0.0, num / np.where(small, 1.0, den))


def join_time_space(time, space):
    """Concatenate ``time[..., :1]`` and ``space[..., :]`` broadcasting batch axes only."""
    batch = np.broadcast_shapes(np.shape(time)[:-1], np.shape(space)[:-1])
    time = np.broadcast_to(time, batch + (1,))
    space = np.broadcast_to(space, batch + (np.shape(space)[-1],))
    return np.concatenate([time, space], axis=-1)
