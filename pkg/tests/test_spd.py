import numpy as np
import pytest
import scipy.linalg

from gyrobn import make_ops
from gyrobn.batchnorm import normalize
from gyrobn.linalg import transpose
from gyrobn.manifolds.spd import clog, clog_inverse, spdbn_aim_reference

METRICS = ["aim", "lem", "lcm"]


@pytest.mark.parametrize("metric", METRICS)
def test_exp_log_and_distance(metric, rng):
    ops = make_ops(f"spd-{metric}:n=4")
    x, y = ops.sample(rng, 20), ops.sample(rng, 20)
    v = ops.log(x, y)
    assert np.max(ops.dist(ops.exp(x, v), y)) < 1e-10
    assert np.allclose(ops.norm(x, v), ops.dist(x, y), atol=1e-10)


def test_aim_distance_against_generalized_eigenvalues(rng):
    ops = make_ops("spd-aim:n=4")
    x, y = ops.sample(rng, 2)
    w = scipy.linalg.eigh(y, x, eigvals_only=True)
    assert np.isclose(ops.dist(x, y), np.sqrt(np.sum(np.log(w) ** 2)), rtol=1e-12)


def test_aim_gyro_operations_closed_forms(rng):
    ops = make_ops("spd-aim:n=3")
    p, q = ops.sample(rng, 2)
    r = scipy.linalg.sqrtm(p).real
    assert np.allclose(ops.oplus(p, q), r @ q @ r, atol=1e-12)
    assert np.allclose(ops.ominus(p), np.linalg.inv(p), atol=1e-12)
    assert np.allclose(ops.odot(0.5, p), r, atol=1e-12)


@pytest.mark.parametrize("metric", ["lem", "lcm"])
def test_log_flat_metrics_are_commutative_groups(metric, rng):
    ops = make_ops(f"spd-{metric}:n=4")
    x, y, z = (ops.sample(rng, 10) for _ in range(3))
    assert np.max(ops.dist(ops.oplus(x, y), ops.oplus(y, x))) < 1e-10
    assert np.max(ops.dist(ops.gyr_definitional(x, y, z), z)) < 1e-10


def test_log_cholesky_chart_round_trip(rng):
    p = make_ops("spd-lcm:n=5").sample(rng, 10)
    m = clog(p)
    assert np.allclose(np.triu(m, 1), 0.0)
    assert np.allclose(clog_inverse(m), p, rtol=1e-12)
    low = np.linalg.cholesky(p)
    assert np.allclose(np.diagonal(m, axis1=-2, axis2=-1), np.log(np.diagonal(low, axis1=-2, axis2=-1)))


def test_lem_matches_matrix_log_exp(rng):
    ops = make_ops("spd-lem:n=3")
    p, q = ops.sample(rng, 2)
    expected = scipy.linalg.expm(scipy.linalg.logm(p).real + scipy.linalg.logm(q).real)
    assert np.allclose(ops.oplus(p, q), expected, atol=1e-10)


def test_reference_normalization_equals_generic(rng):
    ops = make_ops("spd-aim:n=4")
    for _ in range(5):
        batch = ops.sample(rng, 16)
        mean, bias = ops.sample(rng, 2)
        var, scale = rng.uniform(0.1, 2.0), rng.uniform(-2.0, 2.0)
        ref = spdbn_aim_reference(batch, mean, var, bias, scale)
        assert np.max(np.abs(ref - normalize(batch, mean, var, bias, scale, 1e-5, ops))) < 1e-8


@pytest.mark.parametrize("metric", METRICS)
def test_membership(metric, rng):
    ops = make_ops(f"spd-{metric}:n=3")
    assert np.all(ops.belongs(ops.sample(rng, 10)))
    assert not ops.belongs(np.diag([1.0, -1.0, 1.0]))
    g = rng.standard_normal((3, 3))
    assert not ops.belongs(g @ transpose(g) + np.triu(np.ones((3, 3)), 1))


def test_random_tangent_unit_rms(rng):
    for metric in METRICS:
        ops = make_ops(f"spd-{metric}:n=4")
        v = ops.random_tangent_e(rng, 20000)
        assert np.isclose(np.mean(ops.metric_e(v, v)), 1.0, rtol=0.03)
