"""Small dense real linear algebra used by the matrix manifolds.

Every function accepts a single matrix or a stack of matrices with leading
batch axes, following the numpy ``np.linalg`` convention.
"""

from typing import NamedTuple

import numpy as np
import scipy.linalg

from ._tolerances import TOL


class LinalgError(ValueError):
    """Raised when an input violates a precondition (non-finite, not SPD, ...)."""


class SvdResult(NamedTuple):
    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray


def _check_finite(m, name="input"):
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise LinalgError(f"{name} contains non-finite entries")
    return m


def sym(m):
    """Symmetric part of ``m``."""
    return 0.5 * (m + np.swapaxes(m, -1, -2))


def skew(m):
    """Skew-symmetric part of ``m``."""
    return 0.5 * (m - np.swapaxes(m, -1, -2))


def transpose(m):
    return np.swapaxes(m, -1, -2)


def svd(m, order="descending"):
    """Thin SVD with a deterministic sign convention.

    Parameters
    ----------
    m : array_like, shape (..., r, c)
    order : {"descending", "ascending"}
        Ordering of the singular values.

    Returns
    -------
    SvdResult
        ``left @ diag(singulars) @ right.T`` reconstructs ``m``. The first
        entry of each left column whose magnitude exceeds 1e-12 is made
        nonnegative, with the matching right column flipped alongside.
    """
    m = _check_finite(m)
    if order not in ("descending", "ascending"):
        raise ValueError(f"unknown order {order!r}")
    u, s, vt = np.linalg.svd(m, full_matrices=False)
    v = transpose(vt)
    if order == "ascending":
        u = u[..., ::-1]
        s = s[..., ::-1]
        v = v[..., ::-1]
    significant = np.abs(u) > 1e-12
    first = np.argmax(significant, axis=-2)
    pivot = np.take_along_axis(u, first[..., None, :], axis=-2)
    signs = np.where(pivot < 0, -1.0, 1.0)
    return SvdResult(u * signs, s, v * signs)


def mexp_skew(omega):
    """Exact matrix exponential of a skew-symmetric matrix.

    Uses scaling and squaring with Padé approximants, so the result is the
    true exponential rather than the Cayley retraction.
    """
    omega = _check_finite(omega)
    if np.max(np.abs(omega + transpose(omega)), initial=0.0) > TOL.skew * max(
        1.0, np.max(np.abs(omega), initial=0.0)
    ):
        raise LinalgError("mexp_skew requires a skew-symmetric matrix")
    q = scipy.linalg.expm(skew(omega))
    return q


def _eigh_sym(m):
    m = _check_finite(m)
    if np.max(np.abs(m - transpose(m)), initial=0.0) > 1e-8 * max(
        1.0, np.max(np.abs(m), initial=0.0)
    ):
        raise LinalgError("matrix is not symmetric")
    return np.linalg.eigh(sym(m))


def _from_eig(w, v, fn):
    return (v * fn(w)[..., None, :]) @ transpose(v)


def sym_func(m, fn, spd=False):
    """Apply a scalar function spectrally to a symmetric matrix."""
    w, v = _eigh_sym(m)
    if spd:
        if np.any(w <= 0):
            raise LinalgError("matrix is not positive-definite")
        w = np.maximum(w, TOL.eig_floor)
    return _from_eig(w, v, fn)


def mexp_sym(m):
    """Matrix exponential of a symmetric matrix."""
    return sym_func(m, np.exp)


def mlog_sym(m):
    """Principal matrix logarithm of an SPD matrix."""
    return sym_func(m, np.log, spd=True)


def msqrt_sym(m):
    return sym_func(m, np.sqrt, spd=True)


def minvsqrt_sym(m):
    return sym_func(m, lambda w: 1.0 / np.sqrt(w), spd=True)


def mpow_sym(m, t):
    """``m ** t`` for SPD ``m`` and real (possibly array-valued) ``t``."""
    t = np.asarray(t, dtype=float)
    w, v = _eigh_sym(m)
    if np.any(w <= 0):
        raise LinalgError("matrix is not positive-definite")
    w = np.maximum(w, TOL.eig_floor)
    return _from_eig(w, v, lambda x: x ** t[..., None])


def cholesky(m):
    """Lower Cholesky factor with positive diagonal."""
    m = _check_finite(m)
    try:
        return np.linalg.cholesky(sym(m))
    except np.linalg.LinAlgError as exc:
        raise LinalgError("matrix is not positive-definite") from exc


def frob_inner(a, b):
    return np.sum(a * b, axis=(-2, -1))


def frob_norm(a):
    return np.sqrt(frob_inner(a, a))
