"""Grassmannian Gr(p, n) in the orthonormal-basis (ONB) and projector (PP) views.

ONB points are ``n x p`` matrices with orthonormal columns standing for their
column space; two representatives ``U`` and ``U R`` (``R`` orthogonal) are the
same point, so equality is always tested through the distance. PP points are
the rank-``p`` orthogonal projectors ``U U^T``.

The gyro operations are driven by the skew matrix

    Omega(U) = [log_{I_PP}(U U^T), I_PP]

which :func:`fast_bracket` evaluates from a ``p x p`` SVD only.
"""

import numpy as np
import scipy.linalg

from .._tolerances import TOL
from ..base import GyroOps, expand_scalar
from ..linalg import frob_inner, mexp_skew, svd, sym, transpose


def _arcsin_ratio(s_hat):
    """arcsin(s) / s with the series limit 1 near zero."""
    small = s_hat < TOL.arcsin_series
    safe = np.where(small, 1.0, s_hat)
    return np.where(small, 1.0 + s_hat**2 / 6.0, np.arcsin(np.clip(safe, 0.0, 1.0)) / safe)


def orthonormalize(u):
    """Re-orthonormalize columns with QR, keeping R's diagonal positive."""
    q, r = np.linalg.qr(u)
    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    signs = np.where(signs == 0, 1.0, signs)
    return q * signs[..., None, :]


def onb_identity(n, p):
    e = np.zeros((n, p))
    e[:p, :p] = np.eye(p)
    return e


def onb_log(u, y):
    """Riemannian logarithm log_U(Y) on the ONB Grassmannian.

    Uses only a ``p x p`` SVD and stays well defined on the cut locus,
    where it returns one of the minimizing tangent vectors.

    Parameters
    ----------
    u, y : ndarray, shape (..., n, p)
        Orthonormal representatives.

    Returns
    -------
    ndarray, shape (..., n, p)
        Horizontal tangent vector at ``u``.
    """
    u = np.asarray(u, float)
    y = np.asarray(y, float)
    q, s, r = svd(transpose(y) @ u, order="ascending")
    s_hat = np.sqrt(np.clip(1.0 - s**2, 0.0, None))
    proj = y - u @ (transpose(u) @ y)
    return (proj @ q) * _arcsin_ratio(s_hat)[..., None, :] @ transpose(r)


def onb_log_closed_form(u, y):
    """Textbook logarithm O arctan(S) R^T of (I - U U^T) Y (U^T Y)^{-1}.

    Undefined when ``U^T Y`` is singular; kept as a reference for
    :func:`onb_log` away from the cut locus.
    """
    u = np.asarray(u, float)
    y = np.asarray(y, float)
    m = (y - u @ (transpose(u) @ y)) @ np.linalg.inv(transpose(u) @ y)
    o, s, r = svd(m)
    return (o * np.arctan(s)[..., None, :]) @ transpose(r)


def onb_exp(u, delta, atol=1e-8):
    """Riemannian exponential U R cos(S) R^T + O sin(S) R^T, S from SVD of delta."""
    u = np.asarray(u, float)
    delta = np.asarray(delta, float)
    if np.max(np.abs(transpose(u) @ delta), initial=0.0) > atol * max(
        1.0, np.max(np.abs(delta), initial=0.0)
    ):
        raise ValueError("onb_exp requires a horizontal tangent (U^T delta = 0)")
    o, s, r = svd(delta)
    rt = transpose(r)
    out = (u @ r) * np.cos(s)[..., None, :] @ rt + o * np.sin(s)[..., None, :] @ rt
    return orthonormalize(out)


def principal_angles(u, v):
    """Principal angles between column spans, stable for small and large angles."""
    u = np.asarray(u, float)
    v = np.asarray(v, float)
    cos = np.linalg.svd(transpose(u) @ v, compute_uv=False)
    sin = np.linalg.svd(v - u @ (transpose(u) @ v), compute_uv=False)
    cos = np.sort(np.clip(cos, 0.0, 1.0), axis=-1)[..., ::-1]
    sin = np.sort(np.clip(sin, 0.0, 1.0), axis=-1)
    return np.arctan2(sin, cos)


def block_skew(a, p):
    """The skew matrix [[0, -a^T], [a, 0]] with a zero p x p top-left block."""
    a = np.asarray(a, float)
    n = p + a.shape[-2]
    out = np.zeros(a.shape[:-2] + (n, n))
    out[..., p:, :p] = a
    out[..., :p, p:] = -transpose(a)
    return out


def fast_bracket(u):
    """The commutator [log_{I_PP}(U U^T), I_PP] from a p x p SVD.

    With ``U = [U1; U2]`` and ``U1^T = Q S R^T`` (``S`` ascending) the result
    is ``[[0, -A^T], [A, 0]]`` with ``A = U2 Q (arcsin(S')/S') R^T`` and
    ``S' = sqrt(1 - S^2)``.
    """
    u = np.asarray(u, float)
    p = u.shape[-1]
    q, s, r = svd(transpose(u[..., :p, :]), order="ascending")
    s_hat = np.sqrt(np.clip(1.0 - s**2, 0.0, None))
    a = (u[..., p:, :] @ q) * _arcsin_ratio(s_hat)[..., None, :] @ transpose(r)
    return block_skew(a, p)


def pp_identity(n, p):
    e = np.zeros((n, n))
    e[:p, :p] = np.eye(p)
    return e


def pp_log_identity(x):
    """log_{I_PP}(P) computed directly in the projector view.

    For ``P = exp(Z) I_PP exp(-Z)`` with ``Z = [[0, -B^T], [B, 0]]``,
    ``log_{I_PP}(P) = [Z, I_PP]``; ``Z`` is recovered as the principal
    logarithm of the reflection product ``(I - 2P)(I - 2 I_PP)``, whose
    square root is ``exp(2 Z)``. Independent of :func:`fast_bracket`, used
    as its oracle.
    """
    x = np.asarray(x, float)
    n = x.shape[-1]
    p = int(round(np.trace(x)))
    refl = (np.eye(n) - 2 * x) @ (np.eye(n) - 2 * pp_identity(n, p))
    z = np.real(scipy.linalg.logm(refl)) / 2.0
    z = 0.5 * (z - z.T)
    ipp = pp_identity(n, p)
    return z @ ipp - ipp @ z


def pi(u):
    """ONB -> PP map U -> U U^T."""
    u = np.asarray(u, float)
    return u @ transpose(u)


def pi_inverse(x, p):
    """PP -> ONB: the top-p eigenvectors, descending order, sign-normalized."""
    x = sym(np.asarray(x, float))
    w, v = np.linalg.eigh(x)
    u = v[..., ::-1][..., :p]
    significant = np.abs(u) > 1e-12
    first = np.argmax(significant, axis=-2)
    pivot = np.take_along_axis(u, first[..., None, :], axis=-2)
    return u * np.where(pivot < 0, -1.0, 1.0)


def pi_differential(u, delta):
    """Differential of pi at U: delta U^T + U delta^T."""
    return delta @ transpose(u) + u @ transpose(delta)


class GrassmannOnbOps(GyroOps):
    reductive = False

    def __init__(self, descriptor):
        super().__init__(descriptor)
        self.n = descriptor.n
        self.p = descriptor.p
        self.point_shape = (self.n, self.p)
        self.tangent_shape = (self.n, self.p)

    def identity(self):
        return onb_identity(self.n, self.p)

    def bracket(self, u):
        return fast_bracket(u)

    def _rotate_identity(self, omega):
        return orthonormalize(mexp_skew(omega)[..., :, : self.p])

    def oplus(self, u, v):
        return orthonormalize(mexp_skew(self.bracket(u)) @ np.asarray(v, float))

    def ominus(self, u):
        return self._rotate_identity(-self.bracket(u))

    def odot(self, t, u):
        return self._rotate_identity(expand_scalar(t, 2) * self.bracket(u))

    def log_e(self, u):
        u = np.asarray(u, float)
        a = fast_bracket(u)[..., self.p :, : self.p]
        out = np.zeros(a.shape[:-2] + (self.n, self.p))
        out[..., self.p :, :] = a
        return out

    def exp_e(self, v):
        v = np.asarray(v, float)
        return self._rotate_identity(block_skew(v[..., self.p :, :], self.p))

    def exp(self, u, delta):
        return onb_exp(u, delta)

    def log(self, u, y):
        return onb_log(u, y)

    def metric(self, u, v, w):
        return frob_inner(v, w)

    def metric_e(self, v, w):
        return frob_inner(v, w)

    def dist(self, u, v):
        return np.linalg.norm(principal_angles(u, v), axis=-1)

    def belongs(self, u, atol=1e-9):
        u = np.asarray(u, float)
        gram = transpose(u) @ u
        err = np.max(np.abs(gram - np.eye(self.p)), axis=(-2, -1))
        return np.all(np.isfinite(u), axis=(-2, -1)) & (err <= max(atol, 1e-10))

    def random_tangent_e(self, rng, size):
        v = np.zeros((size, self.n, self.p))
        dim = self.p * (self.n - self.p)
        v[:, self.p :, :] = rng.standard_normal((size, self.n - self.p, self.p)) / np.sqrt(dim)
        return v


class GrassmannPpOps(GyroOps):
    """Projector view, transported from the ONB view through ``pi``."""

    reductive = False

    def __init__(self, descriptor):
        super().__init__(descriptor)
        self.n = descriptor.n
        self.p = descriptor.p
        self.point_shape = (self.n, self.n)
        self.tangent_shape = (self.n, self.n)
        from ..descriptor import ManifoldDescriptor

        self.onb = GrassmannOnbOps(ManifoldDescriptor("grass-onb", self.n, p=self.p))

    def to_onb(self, x):
        return pi_inverse(x, self.p)

    def identity(self):
        return pp_identity(self.n, self.p)

    def _conj(self, omega, x):
        g = mexp_skew(omega)
        return sym(g @ np.asarray(x, float) @ transpose(g))

    def bracket(self, x):
        return fast_bracket(self.to_onb(x))

    def oplus(self, x, y):
        return self._conj(self.bracket(x), y)

    def ominus(self, x):
        return self._conj(-self.bracket(x), self.identity())

    def odot(self, t, x):
        return self._conj(expand_scalar(t, 2) * self.bracket(x), self.identity())

    def log_e(self, x):
        return pi_differential(self.onb.identity(), self.onb.log_e(self.to_onb(x)))

    def exp_e(self, v):
        v = np.asarray(v, float)
        return self._conj(block_skew(v[..., self.p :, : self.p], self.p), self.identity())

    def exp(self, x, v):
        u = self.to_onb(x)
        return pi(onb_exp(u, np.asarray(v, float) @ u))

    def log(self, x, y):
        u = self.to_onb(x)
        return pi_differential(u, onb_log(u, self.to_onb(y)))

    def metric(self, x, v, w):
        return 0.5 * frob_inner(v, w)

    def metric_e(self, v, w):
        return 0.5 * frob_inner(v, w)

    def dist(self, x, y):
        return self.onb.dist(self.to_onb(x), self.to_onb(y))

    def belongs(self, x, atol=1e-9):
        x = np.asarray(x, float)
        tol = max(atol, 1e-9)
        symm = np.max(np.abs(x - transpose(x)), axis=(-2, -1)) <= tol
        idem = np.max(np.abs(x @ x - x), axis=(-2, -1)) <= tol
        rank = np.abs(np.trace(x, axis1=-2, axis2=-1) - self.p) <= tol * self.n
        return np.all(np.isfinite(x), axis=(-2, -1)) & symm & idem & rank

    def random_tangent_e(self, rng, size):
        return pi_differential(self.onb.identity(), self.onb.random_tangent_e(rng, size))
