"""Command-line front end: ``gen``, ``bn``, ``check`` and ``bench``.

Exit codes: 0 success, 1 validation failure, 2 suite failure.
"""

import argparse
import json
import sys

import numpy as np

from .axioms import full_suite
from .base import GyroError
from .batchnorm import forward, init_state
from .bench import bench_radius, write_csv
from .descriptor import DescriptorError, make_ops, parse_descriptor
from .frechet import KarcherConfig, FrechetError
from .io import BatchFileError, load_batch, save_batch

EXIT_OK, EXIT_INVALID, EXIT_SUITE = 0, 1, 2


def _write_json(obj, path):
    text = json.dumps(obj, indent=2)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def cmd_gen(args):
    ops = make_ops(args.manifold)
    rng = np.random.default_rng(args.seed)
    points = ops.sample(rng, args.n, args.sigma)
    ops.validate(points)
    save_batch(args.out, points, ops.descriptor, seed=args.seed)
    return EXIT_OK


def _load_point(spec, ops):
    if spec in (None, "identity", "e"):
        return None
    with open(spec, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        if "descriptor" in data and parse_descriptor(data["descriptor"]) != ops.descriptor:
            raise GyroError(f"bias descriptor {data['descriptor']} does not match batch {ops.descriptor}")
        data = data["point"]
    return np.asarray(data, dtype=float).reshape(ops.point_shape)


def cmd_bn(args):
    points, header = load_batch(args.input)
    ops = make_ops(header["descriptor"])
    cfg = KarcherConfig(max_iters=args.mean_iters)
    state = init_state(
        ops.descriptor, _load_point(args.bias, ops), args.scale, args.momentum, args.eps, cfg, ops=ops
    )
    out, rep, state = forward(points, state, ops=ops)
    if args.out:
        save_batch(args.out, out, ops.descriptor, seed=header.get("seed"))
    report = rep.to_dict()
    report.update(
        descriptor=str(ops.descriptor),
        count=int(points.shape[0]),
        scale=args.scale,
        eps=args.eps,
        var_ratio=rep.post_var / rep.pre_var if rep.pre_var > 0 else None,
        expected_var_ratio=args.scale**2 / (rep.pre_var + args.eps),
        running_var=state.running_var,
    )
    _write_json(report, args.report)
    return EXIT_OK


def cmd_check(args):
    report = full_suite(args.manifold, samples=args.n, seed=args.seed)
    _write_json(report, args.report)
    return EXIT_OK if report["pass"] else EXIT_SUITE


def cmd_bench(args):
    dims = [int(d) for d in args.dims.split(",") if d.strip()]
    rows = bench_radius(dims, batch=args.n, repeats=args.repeats, seed=args.seed)
    if args.out not in (None, "-"):
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    agree = all(r["max_abs_diff"] < 1e-9 for r in rows)
    return EXIT_OK if agree else EXIT_SUITE


def build_parser():
    parser = argparse.ArgumentParser(prog="gyrobn", description="Gyro batch normalization toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="sample a batch around the identity")
    gen.add_argument("--manifold", required=True, help='descriptor, e.g. "stereo:K=-1:n=8"')
    gen.add_argument("--n", type=int, default=64, help="number of points")
    gen.add_argument("--sigma", type=float, default=0.5)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    bn = sub.add_parser("bn", help="normalize a batch file")
    bn.add_argument("input")
    bn.add_argument("--bias", default="identity", help='"identity" or a JSON file with the point')
    bn.add_argument("--scale", type=float, default=1.0)
    bn.add_argument("--eps", type=float, default=1e-5)
    bn.add_argument("--momentum", type=float, default=0.1)
    bn.add_argument("--mean-iters", type=int, default=50)
    bn.add_argument("--out")
    bn.add_argument("--report", default="-")
    bn.set_defaults(func=cmd_bn)

    check = sub.add_parser("check", help="run the axiom and family suites")
    check.add_argument("--manifold", required=True)
    check.add_argument("--n", type=int, default=200, help="samples per law")
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--report", default="-")
    check.set_defaults(func=cmd_check)

    bench = sub.add_parser("bench", help="closed-form vs composition radius gyroaddition")
    bench.add_argument("--dims", default="16,64,256,1024")
    bench.add_argument("--n", type=int, default=10000, help="batch size")
    bench.add_argument("--repeats", type=int, default=10)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--out")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DescriptorError, GyroError, BatchFileError, FrechetError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
