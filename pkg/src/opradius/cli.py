"""Command line entry point: ``opradius verify | radius | norm | wmax | check``."""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import eigen
from .harness import CampaignConfig, run_campaign
from .inequalities import ANGLE, BUDGET, CHECK_IDS, OP, SCALAR, SIGN, UNITARY, get_check
from .matcore import Rng, load_matrix
from .radius import DEFAULT_EPS, numerical_radius
from .wmax import wmax_bracket


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _bracket_json(b) -> dict:
    return {"lo": b.lo, "hi": b.hi, "width": b.width, "method": b.method,
            "evals": b.evals, "certified": b.certified}


def _cmd_verify(args) -> int:
    config = CampaignConfig(
        suites=tuple(args.suite), d=args.dim, n=args.block, trials=args.trials,
        seed=args.seed, eps=args.eps, wmax_budget=args.wmax_budget, out_path=args.out,
        distribution=args.distribution)
    report = run_campaign(config)
    if args.csv:
        report.write_csv(args.csv)
    for cid, agg in report.checks.items():
        status = "FAIL" if agg.violations else "ok"
        print(f"{cid:4s} {agg.mode:11s} trials={agg.trials} min_margin={agg.min_margin} "
              f"violations={agg.violations} witnesses={agg.equality_witnesses} "
              f"uncertified={agg.uncertified} errors={agg.errors} {status}")
    print(f"total violations: {report.total_violations}  wall time: {report.wall_time:.2f}s")
    return 2 if report.total_violations else 0


def _cmd_radius(args) -> int:
    a = load_matrix(args.input)
    print(json.dumps(_bracket_json(numerical_radius(a, eps=args.eps))))
    return 0


def _cmd_norm(args) -> int:
    a = load_matrix(args.input)
    lo, hi = eigen.spectral_norm_bounds(a)
    print(json.dumps({"norm": eigen.spectral_norm(a), "lo": lo, "hi": hi}))
    return 0


def _cmd_wmax(args) -> int:
    a = np.asarray(load_matrix(args.input))
    if a.shape != (args.block * args.dim, args.block * args.dim):
        raise UsageError(f"matrix is {a.shape[0]}x{a.shape[1]}, expected "
                         f"{args.block * args.dim} for --block {args.block} --dim {args.dim}")
    b = wmax_bracket(a, args.block, args.dim, args.budget, Rng(args.seed))
    print(json.dumps(_bracket_json(b)))
    return 0


def _cmd_check(args) -> int:
    spec = get_check(args.id)
    names = spec.matrix_params
    if len(args.inputs) != len(names):
        raise UsageError(f"{args.id} takes {len(names)} matrices ({', '.join(names)}), "
                         f"got {len(args.inputs)}")
    inputs = {name: np.asarray(load_matrix(path)) for name, path in zip(names, args.inputs)}
    n = args.block
    for name, kind in spec.params:
        if kind in (SCALAR, UNITARY):
            n = inputs[name].shape[0]
        elif kind == ANGLE:
            inputs[name] = args.theta
        elif kind == SIGN:
            inputs[name] = args.sign
        elif kind == BUDGET:
            inputs[name] = args.budget
    ops = [inputs[name] for name, kind in spec.params if kind == OP]
    if ops and ops[0].shape[0] % n:
        raise UsageError(f"operator size {ops[0].shape[0]} is not a multiple of n={n}")
    results = spec.run(inputs, eps=args.eps, n=n, rng=Rng(args.seed).generator())
    out = [r.to_dict() for r in results]
    print(json.dumps(out, indent=1))
    return 2 if any(r.verdict == "violated" for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opradius", description="Certified numerical radius and block-matrix "
                "inequality verification.")
    p.add_argument("--eigen-backend", choices=eigen.BACKENDS, default=None,
                   help="Hermitian eigensolver (default: $OPRADIUS_EIGEN_BACKEND or lapack)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a seeded randomized campaign")
    v.add_argument("--suite", nargs="+", default=["all"], help="check ids or 'all'")
    v.add_argument("--dim", type=int, default=2, help="block size d")
    v.add_argument("--block", type=int, default=1, help="scalar level n")
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--eps", type=float, default=DEFAULT_EPS)
    v.add_argument("--wmax-budget", type=int, default=100)
    v.add_argument("--distribution", choices=("mixed", "ginibre"), default="mixed")
    v.add_argument("--out", default=None, help="report JSON path")
    v.add_argument("--csv", default=None, help="margin CSV path")
    v.set_defaults(func=_cmd_verify)

    r = sub.add_parser("radius", help="certified numerical radius bracket")
    r.add_argument("--input", required=True)
    r.add_argument("--eps", type=float, default=DEFAULT_EPS)
    r.set_defaults(func=_cmd_radius)

    nm = sub.add_parser("norm", help="spectral norm")
    nm.add_argument("--input", required=True)
    nm.set_defaults(func=_cmd_norm)

    w = sub.add_parser("wmax", help="W_max bracket")
    w.add_argument("--input", required=True)
    w.add_argument("--block", type=int, required=True, help="scalar level n")
    w.add_argument("--dim", type=int, required=True, help="block size d")
    w.add_argument("--budget", type=int, default=100)
    w.add_argument("--seed", type=int, default=0)
    w.set_defaults(func=_cmd_wmax)

    c = sub.add_parser("check", help="run one catalog check on given matrices")
    c.add_argument("--id", required=True, help=f"one of {', '.join(CHECK_IDS)}")
    c.add_argument("--inputs", nargs="+", required=True, help="matrix JSON files in order")
    c.add_argument("--eps", type=float, default=DEFAULT_EPS)
    c.add_argument("--block", type=int, default=1, help="scalar level n when no scalar inputs")
    c.add_argument("--theta", type=float, default=0.0)
    c.add_argument("--sign", type=int, choices=(1, -1), default=1)
    c.add_argument("--budget", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=_cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.eigen_backend:
            eigen.set_backend(args.eigen_backend)
        return args.func(args)
    except UsageError as exc:
        print(f"opradius: error: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        print(f"opradius: error: {exc.args[0]}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"opradius: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
