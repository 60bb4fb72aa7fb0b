"""Wall-clock comparison of closed-form radius gyroaddition against the
exp / parallel-transport / log composition that defines it."""

import csv
import time

import numpy as np

from .descriptor import ManifoldDescriptor
from .manifolds.radius import RadiusOps

FIELDS = ["K", "dim", "batch", "repeats", "closed_mean_s", "closed_median_s", "composition_mean_s", "composition_median_s", "speedup_median", "max_abs_diff"]


def _time(fn, x, y, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(x, y)
        times.append(time.perf_counter() - start)
    return float(np.mean(times)), float(np.median(times))


def bench_radius(dims=(16, 64, 256, 1024), batch=10000, repeats=10, curvatures=(-1.0, 1.0), seed=0, sigma=0.5):
    """Time both gyroaddition paths for every (curvature, dim).

    Points are wrapped Gaussians around the identity with tangent RMS
    ``sigma / sqrt(|K|)``, so the workload does not change character with
    dimension.

    Returns
    -------
    list of dict
        One row per (K, dim) with mean and median seconds per call and the
        largest entrywise disagreement between the two paths.
    """
    rows = []
    for k in curvatures:
        for dim in dims:
            ops = RadiusOps(ManifoldDescriptor("radius", int(dim), K=float(k)))
            rng = np.random.default_rng(seed)
            x = ops.sample(rng, batch, sigma)
            y = ops.sample(rng, batch, sigma)
            # warm-up, and the agreement check on the timed data
            diff = float(np.max(np.abs(ops.oplus(x, y) - ops.oplus_composition(x, y))))
            c_mean, c_med = _time(ops.oplus, x, y, repeats)
            p_mean, p_med = _time(ops.oplus_composition, x, y, repeats)
            rows.append(
                {
                    "K": float(k),
                    "dim": int(dim),
                    "batch": int(batch),
                    "repeats": int(repeats),
                    "closed_mean_s": c_mean,
                    "closed_median_s": c_med,
                    "composition_mean_s": p_mean,
                    "composition_median_s": p_med,
                    "speedup_median": p_med / c_med,
                    "max_abs_diff": diff,
                }
            )
    return rows


def write_csv(rows, fh):
    writer = csv.DictWriter(fh, fieldnames=FIELDS)
    writer.writeheader()
    writer.writerows(rows)
