"""Numerical axiom and invariant suites for gyro-structures.

Every law is checked on random samples; points are compared through the
geodesic distance (ONB Grassmannian points are equivalence classes, so
entrywise comparison is meaningless). A law entry records the largest
residual seen and whether it is below the tolerance. Expected-fail entries
(negative controls) pass when the residual is *above* their threshold.
"""

import numpy as np

from .descriptor import ManifoldDescriptor, make_ops

LAW_TOL = 1e-8
NEGATIVE_THRESHOLD = 1e-3


def _entry(name, residuals, tol=LAW_TOL, expected_fail=False):
    res = np.asarray(residuals, dtype=float).ravel()
    worst = float(np.max(res)) if res.size else 0.0
    if not np.isfinite(worst):
        worst = float("inf")
    passed = worst > NEGATIVE_THRESHOLD if expected_fail else worst < tol
    out = {"name": name, "samples": int(res.size), "max_residual": worst, "pass": bool(passed)}
    if expected_fail:
        out["expected_fail"] = True
    return out


def _streams(seed, count):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _coadd(ops, x, y):
    """Gyrogroup coaddition x [+] y = x (+) gyr[x, (-)y] y."""
    return ops.oplus(x, ops.gyr(x, ops.ominus(y), y))


def axiom_suite(ops, samples=200, seed=0, sigma=0.5):
    """Run the gyrogroup laws on random samples.

    Parameters
    ----------
    ops : GyroOps
    samples : int
    seed : int
    sigma : float
        Sampling spread in units of the family's natural scale.

    Returns
    -------
    dict
        JSON-serializable report with ``laws`` (list of
        ``{name, samples, max_residual, pass}``) and an overall ``pass``.
    """
    rng_a, rng_b, rng_c, rng_d, rng_t = _streams(seed, 5)
    a = ops.sample(rng_a, samples, sigma)
    b = ops.sample(rng_b, samples, sigma)
    c = ops.sample(rng_c, samples, sigma)
    d = ops.sample(rng_d, samples, sigma)
    s, t = rng_t.uniform(-1.5, 1.5, size=(2, samples))
    e = ops.identity()
    dist = ops.dist
    gd = ops.gyrodist
    oplus, ominus, gyr = ops.oplus, ops.ominus, ops.gyr

    laws = []
    add = laws.append
    ab = oplus(a, b)

    # defining axioms
    add(_entry("G1 left identity", dist(oplus(e, a), a)))
    add(_entry("G2 left inverse", dist(oplus(ominus(a), a), e)))
    add(_entry("G3 left gyroassociativity", dist(oplus(a, oplus(b, c)), oplus(ab, gyr(a, b, c)))))
    if ops.reductive:
        add(_entry("G4 left reduction", dist(gyr(a, b, c), gyr(ab, b, c))))
    add(_entry("pseudo-reduction gyr[(-)x, x] = id", dist(gyr(ominus(a), a, c), c)))

    # consequences shared by pseudo-reductive gyrogroups
    add(_entry("general left cancellation", dist(oplus(ominus(a), oplus(a, b)), b)))
    add(_entry("gyr[e, x] = id", dist(gyr(e, a, c), c)))
    add(_entry("right identity", dist(oplus(a, e), a)))
    add(_entry("right inverse", dist(oplus(a, ominus(a)), e)))
    add(_entry("double inverse", dist(ominus(ominus(a)), a)))
    add(_entry("gyrator identity", dist(gyr(a, b, c), ops.gyr_definitional(a, b, c))))
    add(_entry("gyr[x, y] e = e", dist(gyr(a, b, e), e)))
    add(_entry("gyr[x, y] commutes with inverse", dist(gyr(a, b, ominus(c)), ominus(gyr(a, b, c)))))
    add(_entry("gyr[x, e] = id", dist(gyr(a, e, c), c)))
    add(_entry("gyrosum inversion", dist(ominus(ab), gyr(a, b, oplus(ominus(b), ominus(a))))))
    if ops.gyrocommutative:
        add(_entry("gyrocommutativity", dist(ab, gyr(a, b, oplus(b, a)))))

    # metric structure
    add(_entry("gyrodistance equals geodesic distance", np.abs(gd(a, b) - dist(a, b))))
    add(_entry("exp_e inverts log_e", dist(ops.exp_e(ops.log_e(a)), a)))
    add(_entry("gyration preserves gyronorm", np.abs(ops.gyronorm(gyr(a, b, c)) - ops.gyronorm(c))))
    add(_entry("left gyrotranslation isometry", np.abs(gd(oplus(c, a), oplus(c, b)) - gd(a, b))))
    if ops.gyrocommutative:
        add(_entry("gyroinverse isometry", np.abs(gd(ominus(a), ominus(b)) - gd(a, b))))
    add(_entry("gyration isometry", np.abs(gd(gyr(c, d, a), gyr(c, d, b)) - gd(a, b))))

    if ops.gyrovector_space:
        add(_entry("V1 identity scalar multiplication", dist(ops.odot(1.0, a), a)))
        add(_entry("V2 scalar distributive law", dist(ops.odot(s + t, a), oplus(ops.odot(s, a), ops.odot(t, a)))))
        add(_entry("V3 scalar associative law", dist(ops.odot(s * t, a), ops.odot(s, ops.odot(t, a)))))
        add(_entry("V4 gyroautomorphism", dist(gyr(b, c, ops.odot(t, a)), ops.odot(t, gyr(b, c, a)))))
        add(_entry("V5 identity gyroautomorphism", dist(gyr(ops.odot(s, a), ops.odot(t, a), c), c)))
        add(_entry("scalar homogeneity of gyronorm", np.abs(ops.gyronorm(ops.odot(t, a)) - np.abs(t) * ops.gyronorm(a))))

    if _is_poincare(ops):
        laws.extend(negative_controls(ops, a, b, c))

    return {
        "descriptor": str(ops.descriptor),
        "samples": int(samples),
        "seed": int(seed),
        "laws": laws,
        "pass": all(law["pass"] for law in laws),
    }


def _is_poincare(ops):
    desc = ops.descriptor
    return desc.family == "stereo" and desc.K is not None and desc.K < 0


def negative_controls(ops, x, y, a):
    """Translations that must NOT be isometries on the Poincaré ball."""
    gd = ops.gyrodist
    base = gd(x, y)
    right = gd(ops.oplus(x, a), ops.oplus(y, a))
    left_co = gd(_coadd(ops, a, x), _coadd(ops, a, y))
    right_co = gd(_coadd(ops, x, a), _coadd(ops, y, a))
    return [
        _entry("right gyrotranslation is not an isometry", np.abs(right - base), expected_fail=True),
        _entry("left coaddition is not an isometry", np.abs(left_co - base), expected_fail=True),
        _entry("right coaddition is not an isometry", np.abs(right_co - base), expected_fail=True),
    ]


def family_suite(ops, samples=200, seed=0, sigma=0.5):
    """Family-specific invariants: closed forms against their defining
    compositions, and the gyro-homomorphism property of model isometries.

    Returns a report shaped like :func:`axiom_suite`.
    """
    from .manifolds import correlation, grassmannian, klein, radius, spd, stereographic

    rng_a, rng_b, rng_t = _streams(seed + 7919, 3)
    x = ops.sample(rng_a, samples, sigma)
    y = ops.sample(rng_b, samples, sigma)
    t = rng_t.uniform(-1.5, 1.5, size=samples)
    desc = ops.descriptor
    laws = []
    add = laws.append

    if isinstance(ops, radius.RadiusOps):
        k = ops.k
        add(_entry("closed-form oplus equals composition", ops.dist(ops.oplus(x, y), ops.oplus_composition(x, y)), 1e-9))
        add(_entry("closed-form odot equals composition", ops.dist(ops.odot(t, x), ops.odot_composition(t, x)), 1e-9))
        st = stereographic.StereographicOps(ManifoldDescriptor("stereo", desc.n, K=k))
        phi = lambda p: radius.radius_to_stereo(p, k)
        add(_entry("radius to stereo preserves oplus", st.dist(phi(ops.oplus(x, y)), st.oplus(phi(x), phi(y))), 1e-9))
        add(_entry("radius to stereo preserves odot", st.dist(phi(ops.odot(t, x)), st.odot(t, phi(x))), 1e-9))
        add(_entry("radius-stereo round trip", np.abs(radius.stereo_to_radius(phi(x), k) - x), 1e-10))
        if k > 0:
            mirrored = np.concatenate([-y[:, :1], y[:, 1:]], axis=-1)
            pole = ops.south_pole()
            add(_entry("mirrored oplus returns exactly -mu0", np.any(ops.oplus(mirrored, y) != pole, axis=-1).astype(float), 0.5))
            theta = ops.dist(ops.identity(), x) * ops.sk
            add(_entry("odot at angle pi returns exactly -mu0", np.any(ops.odot(np.pi / theta, x) != pole, axis=-1).astype(float), 0.5))

    if isinstance(ops, stereographic.StereographicOps):
        k = ops.k
        to_r = lambda p: radius.stereo_to_radius(p, k)
        add(_entry("stereo-radius round trip", np.abs(radius.radius_to_stereo(to_r(x), k) - x), 1e-10))
        if k < 0:
            kl = klein.KleinOps(ManifoldDescriptor("klein", desc.n, K=k))
            pk = lambda p: klein.poincare_to_klein(p, k)
            add(_entry("Poincare to Klein preserves oplus", kl.dist(pk(ops.oplus(x, y)), kl.oplus(pk(x), pk(y))), 1e-9))
            add(_entry("Poincare to Klein preserves odot", kl.dist(pk(ops.odot(t, x)), kl.odot(t, pk(x))), 1e-9))
            add(_entry("Poincare-Klein round trip", np.abs(klein.klein_to_poincare(pk(x), k) - x), 1e-10))
            add(_entry("Poincare-Klein isometry", np.abs(kl.dist(pk(x), pk(y)) - ops.dist(x, y)), 1e-9))

    if isinstance(ops, klein.KleinOps):
        k = ops.k
        add(_entry("Klein-Poincare round trip", np.abs(klein.poincare_to_klein(klein.klein_to_poincare(x, k), k) - x), 1e-10))

    if isinstance(ops, (grassmannian.GrassmannOnbOps, grassmannian.GrassmannPpOps)):
        u = x if isinstance(ops, grassmannian.GrassmannOnbOps) else grassmannian.pi_inverse(x, desc.p)
        v = y if isinstance(ops, grassmannian.GrassmannOnbOps) else grassmannian.pi_inverse(y, desc.p)
        ipp = grassmannian.pp_identity(desc.n, desc.p)
        residuals = []
        for ui in u:
            log = grassmannian.pp_log_identity(grassmannian.pi(ui))
            residuals.append(np.max(np.abs(grassmannian.fast_bracket(ui) - (log @ ipp - ipp @ log))))
        add(_entry("fast bracket equals direct commutator", residuals, 1e-8))
        onb = grassmannian.GrassmannOnbOps(ManifoldDescriptor("grass-onb", desc.n, p=desc.p))
        pp = grassmannian.GrassmannPpOps(ManifoldDescriptor("grass-pp", desc.n, p=desc.p))
        pi = grassmannian.pi
        add(_entry("ONB to PP preserves oplus", pp.dist(pi(onb.oplus(u, v)), pp.oplus(pi(u), pi(v))), 1e-9))
        add(_entry("ONB to PP preserves odot", pp.dist(pi(onb.odot(t, u)), pp.odot(t, pi(u))), 1e-9))

    if isinstance(ops, spd.SpdOps) and ops.metric_name == "aim":
        from .batchnorm import normalize

        rng = np.random.default_rng(seed)
        residuals = []
        for _ in range(max(1, samples // 20)):
            batch = ops.sample(rng, 16, sigma)
            mean, var = ops.sample(rng, 1, sigma)[0], float(rng.uniform(0.1, 2.0))
            bias, scale = ops.sample(rng, 1, sigma)[0], float(rng.uniform(0.5, 2.0))
            ref = spd.spdbn_aim_reference(batch, mean, var, bias, scale)
            gen = normalize(batch, mean, var, bias, scale, 1e-5, ops)
            residuals.append(np.max(np.abs(ref - gen)))
        add(_entry("AIM normalization equals SPDBN reference", residuals, 1e-8))

    if isinstance(ops, correlation.CorrelationOps):
        poly = correlation.cor_to_poly(x)
        add(_entry("correlation-poly round trip", np.abs(correlation.poly_to_cor(poly, desc.n) - x), 1e-9))

    return {
        "descriptor": str(desc),
        "samples": int(samples),
        "seed": int(seed),
        "laws": laws,
        "pass": all(law["pass"] for law in laws),
    }


def full_suite(descriptor, samples=200, seed=0):
    """Axiom suite plus family checks for one descriptor."""
    ops = make_ops(descriptor)
    a = axiom_suite(ops, samples, seed)
    f = family_suite(ops, samples, seed)
    a["laws"].extend(f["laws"])
    a["pass"] = a["pass"] and f["pass"]
    return a
