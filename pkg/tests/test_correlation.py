import mpmath
import numpy as np
import pytest

from gyrobn import make_ops
from gyrobn.batchnorm import cor_gyrobn, cor_row_states
from gyrobn.frechet import frechet_mean
from gyrobn.manifolds.correlation import _segments, cor_to_poly, correlation_from_covariance, poly_to_cor


def test_identity_maps_to_zero_rows():
    assert np.allclose(cor_to_poly(np.eye(5)), 0.0)
    assert np.array_equal(poly_to_cor(np.zeros(10), 5), np.eye(5))


def test_two_by_two_high_precision():
    mpmath.mp.dps = 40
    rho = mpmath.mpf("0.6")
    expected = rho / (1 + mpmath.sqrt(1 - rho * rho))
    c = np.array([[1.0, 0.6], [0.6, 1.0]])
    assert abs(cor_to_poly(c)[0] - float(expected)) < 1e-15


@pytest.mark.parametrize("n", range(2, 9))
def test_round_trip(n, rng):
    ops = make_ops(f"correlation:n={n}")
    c = ops.sample(rng, 20)
    assert np.all(ops.belongs(c))
    assert np.max(np.abs(poly_to_cor(cor_to_poly(c), n) - c)) < 1e-9
    x = cor_to_poly(c)
    assert np.max(np.abs(cor_to_poly(poly_to_cor(x, n)) - x)) < 1e-9
    diag = np.diagonal(poly_to_cor(x, n), axis1=-2, axis2=-1)
    assert np.max(np.abs(diag - 1)) < 1e-12


def test_rows_lie_in_unit_balls(rng):
    x = cor_to_poly(make_ops("correlation:n=6").sample(rng, 50, sigma=1.5))
    for seg in _segments(6):
        assert np.all(np.linalg.norm(x[:, seg], axis=-1) < 1)


def test_covariance_sampling_route(rng):
    spd = make_ops("spd-aim:n=4")
    c = correlation_from_covariance(spd.sample(rng, 10))
    assert np.all(make_ops("correlation:n=4").belongs(c))


def test_distance_decomposes_over_rows(rng):
    ops = make_ops("correlation:n=5")
    ball = make_ops("stereo:K=-1:n=4")
    x, y = ops.sample(rng, 10), ops.sample(rng, 10)
    px, py = cor_to_poly(x), cor_to_poly(y)
    seg = _segments(5)[-1]
    # the last row alone is a 4-dimensional ball point
    assert np.all(ops.gyrodist(x, y) >= ball.gyrodist(px[:, seg], py[:, seg]) - 1e-12)
    assert np.allclose(ops.gyrodist(x, y), ops.dist(x, y), atol=1e-12)


def test_cor_gyrobn_identical_batch_gives_identity():
    c = make_ops("correlation:n=4").sample(np.random.default_rng(0), 1)
    out, _, _ = cor_gyrobn(np.repeat(c, 8, axis=0), cor_row_states(4))
    assert np.allclose(out, np.eye(4), atol=1e-12)


def test_cor_gyrobn_controls_each_row_mean(rng):
    n = 5
    c = make_ops("correlation:n=5").sample(rng, 32)
    out, reports, states = cor_gyrobn(c, cor_row_states(n), report=True)
    assert len(states) == n - 1
    x = cor_to_poly(out)
    for k, seg in enumerate(_segments(n), start=1):
        ball = make_ops(f"stereo:K=-1:n={k}")
        mean, _, _ = frechet_mean(x[:, seg], ball)
        assert ball.dist(mean, ball.identity()) < 1e-8
        assert reports[k - 1].residual_to_bias < 1e-8


def test_product_mean_decomposes_over_rows(rng):
    ops = make_ops("correlation:n=4")
    c = ops.sample(rng, 24)
    mean, _, _ = frechet_mean(c, ops)
    x, m = cor_to_poly(c), cor_to_poly(mean)
    for k, seg in enumerate(_segments(4), start=1):
        ball = make_ops(f"stereo:K=-1:n={k}")
        row_mean, _, _ = frechet_mean(x[:, seg], ball)
        assert ball.dist(row_mean, m[seg]) < 1e-8


def test_cor_gyrobn_rejects_wrong_state_count(rng):
    c = make_ops("correlation:n=4").sample(rng, 4)
    with pytest.raises(ValueError):
        cor_gyrobn(c, cor_row_states(3))
