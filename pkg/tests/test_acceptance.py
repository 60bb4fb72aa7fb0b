"""Acceptance criteria 1-11, one test per criterion.

Each test records a one-line PASS/FAIL summary; the lines are printed in the
pytest terminal summary, or directly when this file is run as a script.
"""

import sys
import time

import numpy as np
import pytest

from gyrobn import axiom_suite, forward, frechet_mean, frechet_variance, init_state, make_ops
from gyrobn.batchnorm import normalize
from gyrobn.bench import bench_radius
from gyrobn.frechet import KarcherConfig
from gyrobn.manifolds import radius_to_stereo, stereo_to_radius
from gyrobn.manifolds.grassmannian import fast_bracket, pi, pp_identity, pp_log_identity
from gyrobn.manifolds.klein import klein_to_poincare, poincare_to_klein
from gyrobn.manifolds.spd import spdbn_aim_reference

RESULTS = {}

ACCEPTANCE_DESCRIPTORS = [
    "stereo:K=-1:n=8",
    "stereo:K=1:n=8",
    "radius:K=-1:n=8",
    "radius:K=1:n=8",
    "klein:K=-1:n=8",
    "grass-onb:n=10:p=3",
    "grass-pp:n=10:p=3",
    "spd-aim:n=4",
    "spd-lem:n=4",
    "spd-lcm:n=4",
    "correlation:n=5",
]
KARCHER = KarcherConfig()
MEAN_TOL = 10 * KARCHER.tol


def record(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_criterion_01_axiom_suites():
    required = {
        "G1 left identity",
        "G2 left inverse",
        "G3 left gyroassociativity",
        "pseudo-reduction gyr[(-)x, x] = id",
        "general left cancellation",
        "gyration preserves gyronorm",
        "left gyrotranslation isometry",
    }
    start = time.perf_counter()
    worst, failures = 0.0, []
    for desc in ACCEPTANCE_DESCRIPTORS:
        report = axiom_suite(make_ops(desc), samples=200, seed=1)
        laws = {law["name"]: law for law in report["laws"]}
        missing = required - laws.keys()
        if missing:
            failures.append(f"{desc} lacks {sorted(missing)}")
        for law in report["laws"]:
            if law.get("expected_fail"):
                continue
            worst = max(worst, law["max_residual"])
            if not law["pass"]:
                failures.append(f"{desc}: {law['name']} {law['max_residual']:.2e}")
    elapsed = time.perf_counter() - start
    ok = not failures and worst < 1e-8 and elapsed < 60
    record(1, ok, f"{len(ACCEPTANCE_DESCRIPTORS)} descriptors x 200 samples, max residual {worst:.2e}, {elapsed:.1f}s {failures or ''}")


def test_criterion_02_gyrovector_axioms():
    worst, ok = 0.0, True
    for desc in ["stereo:K=-1:n=8", "stereo:K=1:n=8", "radius:K=-1:n=8", "radius:K=1:n=8"]:
        laws = [law for law in axiom_suite(make_ops(desc), samples=200, seed=2)["laws"] if law["name"][:2] in ("V1", "V2", "V3", "V4", "V5")]
        ok &= len(laws) == 5 and all(law["pass"] for law in laws)
        worst = max([worst] + [law["max_residual"] for law in laws])
    record(2, ok and worst < 1e-8, f"V1-V5 on stereographic and radius, both signs, max residual {worst:.2e}")


def test_criterion_03_radius_closed_forms():
    worst, exact = 0.0, True
    for k in (-1.0, 1.0):
        ops = make_ops(f"radius:K={k}:n=8")
        rng = np.random.default_rng(3)
        x, y = ops.sample(rng, 500), ops.sample(rng, 500)
        t = rng.uniform(-2, 2, 500)
        worst = max(worst, np.max(np.abs(ops.oplus(x, y) - ops.oplus_composition(x, y))))
        worst = max(worst, np.max(np.abs(ops.odot(t, x) - ops.odot_composition(t, x))))
        if k > 0:
            pole = np.broadcast_to(ops.south_pole(), y.shape)
            mirrored = np.concatenate([-y[:, :1], y[:, 1:]], axis=-1)
            theta = ops.dist(ops.identity(), y) * ops.sk
            exact = np.array_equal(ops.oplus(mirrored, y), pole) and np.array_equal(ops.odot(np.pi / theta, y), pole)
    record(3, worst < 1e-9 and exact, f"500 pairs per sign, max |closed - composition| {worst:.2e}, singular cases exactly -mu0: {exact}")


def test_criterion_04_isometry_homomorphisms():
    rng = np.random.default_rng(4)
    hom, trip = 0.0, 0.0
    for k in (-1.0, 1.0):
        r, s = make_ops(f"radius:K={k}:n=8"), make_ops(f"stereo:K={k}:n=8")
        x, y = r.sample(rng, 200), r.sample(rng, 200)
        t = rng.uniform(-2, 2, 200)
        phi = lambda p: radius_to_stereo(p, k)
        hom = max(hom, np.max(s.dist(phi(r.oplus(x, y)), s.oplus(phi(x), phi(y)))))
        hom = max(hom, np.max(s.dist(phi(r.odot(t, x)), s.odot(t, phi(x)))))
        trip = max(trip, np.max(np.abs(stereo_to_radius(phi(x), k) - x)))
        u = s.sample(rng, 200)
        trip = max(trip, np.max(np.abs(phi(stereo_to_radius(u, k)) - u)))
    k = -1.0
    pb, kl = make_ops("stereo:K=-1:n=8"), make_ops("klein:K=-1:n=8")
    x, y = pb.sample(rng, 200), pb.sample(rng, 200)
    t = rng.uniform(-2, 2, 200)
    pk = lambda p: poincare_to_klein(p, k)
    hom = max(hom, np.max(kl.dist(pk(pb.oplus(x, y)), kl.oplus(pk(x), pk(y)))))
    hom = max(hom, np.max(kl.dist(pk(pb.odot(t, x)), kl.odot(t, pk(x)))))
    trip = max(trip, np.max(np.abs(klein_to_poincare(pk(x), k) - x)))
    v = kl.sample(rng, 200)
    trip = max(trip, np.max(np.abs(pk(klein_to_poincare(v, k)) - v)))
    record(4, hom < 1e-9 and trip < 1e-10, f"radius<->stereo and Poincare<->Klein: homomorphism {hom:.2e}, round trip {trip:.2e}")


def test_criterion_05_fast_bracket():
    worst, count = 0.0, 0
    for n, p in [(5, 2), (10, 3), (8, 4)]:
        ops = make_ops(f"grass-onb:n={n}:p={p}")
        ipp = pp_identity(n, p)
        for u in ops.sample(np.random.default_rng(n), 67 if n != 8 else 66):
            log = pp_log_identity(pi(u))
            worst = max(worst, np.max(np.abs(fast_bracket(u) - (log @ ipp - ipp @ log))))
            count += 1
    record(5, count == 200 and worst < 1e-8, f"{count} points over 3 sizes, max |fast - direct| {worst:.2e}")


def test_criterion_06_statistics_control():
    worst_a, worst_disp, worst_b, notes = 0.0, 0.0, 0.0, []
    for desc in ACCEPTANCE_DESCRIPTORS:
        ops = make_ops(desc)
        e = ops.identity()
        x = ops.sample(np.random.default_rng(6), 64)
        out, rep, state = forward(x, init_state(desc, ops=ops), ops=ops)
        mu, iters, grad = frechet_mean(x, ops, cfg=KARCHER)
        var = frechet_variance(x, mu, ops)
        y = ops.oplus(ops.ominus(mu), x)
        t = 1.0 / np.sqrt(var + state.eps)
        lhs = np.mean(ops.dist(ops.odot(t, y), e) ** 2)
        rhs = t**2 * np.mean(ops.dist(y, e) ** 2)
        worst_a = max(worst_a, abs(lhs - rhs))
        disp = np.mean(ops.dist(out, e) ** 2)
        worst_disp = max(worst_disp, abs(disp - var / (var + state.eps)))
        if rep.converged and rep.mean_iters <= 50:
            worst_b = max(worst_b, rep.residual_to_bias)
        else:
            notes.append(f"{desc} did not converge")
    ok = worst_a < 1e-10 and worst_disp < 1e-10 and worst_b < MEAN_TOL and not notes
    record(6, ok, f"(a) t^2 identity {worst_a:.2e}, dispersion vs v2/(v2+eps) {worst_disp:.2e}; (b) mean residual {worst_b:.2e} < {MEAN_TOL:.0e} {notes or ''}")


def test_criterion_07_gyromean_homogeneity():
    worst = 0.0
    for desc in ACCEPTANCE_DESCRIPTORS:
        ops = make_ops(desc)
        rng = np.random.default_rng(7)
        x = ops.sample(rng, 64)
        beta = ops.sample(rng, 1)[0]
        m, _, _ = frechet_mean(x, ops, cfg=KARCHER)
        mb, _, _ = frechet_mean(ops.oplus(beta, x), ops, cfg=KARCHER)
        worst = max(worst, float(ops.dist(mb, ops.oplus(beta, m))))
    record(7, worst < MEAN_TOL, f"FM(beta (+) x) vs beta (+) FM(x) on {len(ACCEPTANCE_DESCRIPTORS)} descriptors, max {worst:.2e}")


def test_criterion_08_euclidean_reduction():
    ops = make_ops("stereo:K=0:n=6")
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(1000):
        x = rng.standard_normal((32, 6)) * rng.uniform(0.1, 3) + rng.standard_normal(6)
        bias, scale = rng.standard_normal(6), rng.uniform(-2, 2)
        out, _, _ = forward(x, init_state(ops.descriptor, bias=bias, scale=scale, ops=ops), ops=ops, report=False)
        mu = x.mean(axis=0)
        var = np.mean(np.sum((x - mu) ** 2, axis=1))
        ref = scale * (x - mu) / np.sqrt(var + 1e-5) + bias
        worst = max(worst, np.max(np.abs(out - ref)) / max(1.0, np.max(np.abs(ref))))
    record(8, worst < 1e-13, f"1000 batches, max relative deviation from s(x-mu)/sqrt(v2+eps)+beta {worst:.2e}")


def test_criterion_09_spd_special_case():
    ops = make_ops("spd-aim:n=4")
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(50):
        x = ops.sample(rng, 16)
        bias = ops.sample(rng, 1)[0]
        scale = rng.uniform(0.2, 2.0)
        out, _, _ = forward(x, init_state(ops.descriptor, bias=bias, scale=scale, ops=ops), ops=ops, report=False)
        mu, _, _ = frechet_mean(x, ops, cfg=KARCHER)
        var = frechet_variance(x, mu, ops)
        ref = spdbn_aim_reference(x, mu, var, bias, scale, eps=1e-5)
        worst = max(worst, np.max(np.abs(out - ref)))
    record(9, worst < 1e-8, f"50 batches n=4 N=16, max |GyroBN - SPDBN reference| {worst:.2e}")


def test_criterion_10_benchmark():
    rows = bench_radius(dims=(16, 64, 256, 1024), batch=10000, repeats=7, seed=10)
    faster = all(r["closed_median_s"] < r["composition_median_s"] for r in rows)
    agree = max(r["max_abs_diff"] for r in rows)
    speed = ", ".join(f"K={r['K']:+g} d={r['dim']}: {r['speedup_median']:.2f}x" for r in rows)
    record(10, faster and agree < 1e-9, f"closed form faster at every dim ({speed}); agreement {agree:.2e}")


def test_criterion_11_negative_control():
    report = axiom_suite(make_ops("stereo:K=-1:n=8"), samples=200, seed=11)
    controls = [law for law in report["laws"] if law.get("expected_fail")]
    least = min(law["max_residual"] for law in controls)
    ok = len(controls) == 3 and least > 1e-3
    names = ", ".join(f"{law['name'].split(' is ')[0]} {law['max_residual']:.2e}" for law in controls)
    record(11, ok, f"non-isometries on the Poincare ball: {names}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
