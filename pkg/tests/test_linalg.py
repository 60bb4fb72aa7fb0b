import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gyrobn.linalg import (
    LinalgError,
    cholesky,
    mexp_skew,
    mexp_sym,
    minvsqrt_sym,
    mlog_sym,
    mpow_sym,
    msqrt_sym,
    svd,
    sym,
    transpose,
)


def _taylor_exp(a, terms=60):
    out = np.eye(a.shape[-1])
    term = np.eye(a.shape[-1])
    for k in range(1, terms):
        term = term @ a / k
        out = out + term
    return out


def _random_spd(rng, n, batch=()):
    g = rng.standard_normal(batch + (n, n))
    return g @ transpose(g) + n * np.eye(n)


def test_svd_reconstructs_and_orders(rng):
    m = rng.standard_normal((5, 7, 3))
    for order in ("descending", "ascending"):
        u, s, v = svd(m, order)
        assert np.allclose((u * s[..., None, :]) @ transpose(v), m, atol=1e-12)
        step = np.diff(s, axis=-1)
        assert np.all(step <= 1e-15) if order == "descending" else np.all(step >= -1e-15)


def test_svd_sign_convention(rng):
    u, _, _ = svd(rng.standard_normal((20, 6, 4)))
    first = np.take_along_axis(u, np.argmax(np.abs(u) > 1e-12, axis=-2)[..., None, :], axis=-2)
    assert np.all(first >= 0)
    u2, _, _ = svd(-rng.standard_normal((6, 4)))
    assert np.all(u2[0] >= 0)


def test_svd_rejects_nan():
    with pytest.raises(LinalgError):
        svd(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_mexp_skew_matches_taylor_series(rng):
    g = rng.standard_normal((6, 6))
    omega = 0.7 * (g - g.T)
    q = mexp_skew(omega)
    assert np.allclose(q, _taylor_exp(omega), atol=1e-12)
    assert np.allclose(q.T @ q, np.eye(6), atol=1e-13)
    assert np.isclose(np.linalg.det(q), 1.0)


def test_mexp_skew_rotation_closed_form():
    a = 0.83
    q = mexp_skew(np.array([[0.0, -a], [a, 0.0]]))
    assert np.allclose(q, [[np.cos(a), -np.sin(a)], [np.sin(a), np.cos(a)]], atol=1e-15)


def test_mexp_skew_rejects_non_skew():
    with pytest.raises(LinalgError):
        mexp_skew(np.eye(3))


def test_spd_functions_round_trip(rng):
    p = _random_spd(rng, 4, (8,))
    assert np.allclose(mexp_sym(mlog_sym(p)), p, rtol=1e-12, atol=1e-12)
    r = msqrt_sym(p)
    assert np.allclose(r @ r, p, rtol=1e-12)
    ri = minvsqrt_sym(p)
    assert np.allclose(ri @ p @ ri, np.eye(4), atol=1e-12)
    assert np.allclose(mpow_sym(p, -1.0), np.linalg.inv(p), atol=1e-12)


def test_mpow_accepts_per_matrix_exponent(rng):
    p = _random_spd(rng, 3, (5,))
    t = np.linspace(-1, 2, 5)
    out = mpow_sym(p, t)
    for i in range(5):
        assert np.allclose(out[i], mpow_sym(p[i], t[i]), atol=1e-12)


def test_spd_functions_reject_bad_input():
    with pytest.raises(LinalgError):
        mlog_sym(np.diag([1.0, -1.0]))
    with pytest.raises(LinalgError):
        mlog_sym(np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(LinalgError):
        cholesky(np.diag([1.0, 0.0, -2.0]))


@settings(max_examples=50, deadline=None)
@given(arrays(np.float64, (4, 4), elements=st.floats(-2, 2)))
def test_mexp_mlog_inverse_on_symmetric_matrices(m):
    s = sym(m)
    assert np.allclose(mlog_sym(mexp_sym(s)), s, atol=1e-10)
