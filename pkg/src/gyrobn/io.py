"""JSON-lines batch files.

The first line is a header ``{"descriptor", "count", "seed"}``; every other
line is one point as a flat list of floats. Floats are written with Python's
shortest round-trip representation, so save/load is bit-exact.
"""

import json

import numpy as np

from .descriptor import make_ops, parse_descriptor


class BatchFileError(ValueError):
    pass


def save_batch(path, points, descriptor, seed=None):
    points = np.asarray(points, dtype=float)
    header = {"descriptor": str(parse_descriptor(descriptor)), "count": int(points.shape[0]), "seed": seed}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header) + "\n")
        for p in points.reshape(points.shape[0], -1):
            fh.write(json.dumps([float(v) for v in p]) + "\n")


def load_batch(path, atol=1e-9):
    """Read a batch file and validate every point.

    Returns
    -------
    points : ndarray, shape (N, *point_shape)
    header : dict
    """
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise BatchFileError(f"{path}: empty file")
    try:
        header = json.loads(lines[0])
        ops = make_ops(header["descriptor"])
        rows = [json.loads(ln) for ln in lines[1:]]
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise BatchFileError(f"{path}: malformed batch file") from exc
    if header.get("count") != len(rows):
        raise BatchFileError(f"{path}: header count {header.get('count')} but {len(rows)} records")
    size = int(np.prod(ops.point_shape))
    if any(len(r) != size for r in rows):
        raise BatchFileError(f"{path}: records must have {size} entries")
    points = np.asarray(rows, dtype=float).reshape((len(rows),) + tuple(ops.point_shape))
    try:
        ops.validate(points, atol=atol)
    except ValueError as exc:
        raise BatchFileError(f"{path}: {exc}") from exc
    return points, header
