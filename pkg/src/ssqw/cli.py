"""Command-line front end.

Subcommands: validate, spectrum, eigvec, resonance, evolve, verify.  All
outputs are plot-ready CSV or JSON with 17-significant-digit floats, so
identical configurations produce byte-identical files.  Exit codes: 0 on
success, 1 on domain/precondition errors (one machine-parsable line on
stderr), 2 on malformed configuration.
"""

from __future__ import annotations

import argparse
import os
import sys

# honor the thread cap before any numerical work (0 or unset = auto)
_threads = os.environ.get("SSQW_THREADS")
if _threads and _threads != "0":
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import numpy as np

from . import acceptance
from .dynamics import column_region, evolve
from .errors import ConfigError, SsqwError
from .lattice import VectorState, Window
from .operators import WalkOperator
from .params import (
    essential_interval,
    load_parameters,
    params_to_dict,
    require_strong_shift,
    validate_parameters,
)
from .resonance import ThresholdPoint, build_generalized_eigenfunction, resonance_report
from .serialize import fmt, load_state, save_state, write_csv, write_json
from .spectral import (
    QuadratureSpec,
    build_eigenvector,
    eigen_residual,
    eval_f,
    spectral_report,
    unitary_eigenvalues,
)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--params", required=True, help="preset name (pset_a/b/c) or JSON file")
    sub.add_argument("--output", default=None, help="output file path (default: stdout summary only)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def _quad(args) -> QuadratureSpec:
    return QuadratureSpec(nodes=args.quad_nodes)


def cmd_validate(args) -> int:
    params = load_parameters(args.params)
    report = validate_parameters(params, mode=args.mode)
    for name, ok in report.checks.items():
        print(f"{name}: {'pass' if ok else 'fail'}")
    for issue in report.issues:
        print(f"issue: {issue}")
    if report.strong is not None:
        print(f"band_half_width: {fmt(report.strong.lam)}")
        print(f"note: {report.note()}")
    lo, hi = essential_interval(params)
    print(f"essential_interval: [{fmt(lo)}, {fmt(hi)}]")
    if args.output:
        data = {
            "parameters": params_to_dict(params),
            "mode": report.mode,
            "checks": report.checks,
            "issues": report.issues,
            "essential_interval": [lo, hi],
        }
        if report.strong is not None:
            data["band_half_width"] = report.strong.lam
            data["note"] = report.note()
        write_json(args.output, data)
    return 0 if report.ok else 1


def cmd_spectrum(args) -> int:
    params = load_parameters(args.params)
    sp = require_strong_shift(params)
    quad = _quad(args)
    report = spectral_report(sp, quad=quad, grid=args.grid)
    print(f"band_half_width: {fmt(sp.lam)}")
    print(f"zeros: {[fmt(z) for z in report.zeros]}")
    for mu, res in zip(report.eigenvalues, report.residuals):
        print(f"eigenvalue: {fmt(mu.real)} {fmt(mu.imag)}  residual: {res:.3e}")
    if args.output:
        if args.format == "json":
            data = {"parameters": params_to_dict(params), **report.to_dict()}
            data["f_samples"] = _f_sample_rows(sp, quad, args.grid)
            write_json(args.output, data)
        else:
            rows = _f_sample_rows(sp, quad, args.grid)
            write_csv(args.output, ["lambda", "f_closed", "f_quad1d"], rows)
    return 0


def _f_sample_rows(sp, quad, grid):
    per_side = max(8, grid // 10)
    pos = np.linspace(sp.lam + 1e-3, 1.0, per_side)
    lams = np.concatenate([-pos[::-1], pos])
    return [
        [lam, eval_f(lam, sp, "closed"), eval_f(lam, sp, "quad1d", quad)]
        for lam in lams
    ]


def cmd_eigvec(args) -> int:
    params = load_parameters(args.params)
    sp = require_strong_shift(params)
    report = spectral_report(sp, quad=_quad(args), grid=args.grid)
    if not report.zeros:
        print("no zeros of f: no inherited eigenvectors for these parameters")
        return 0
    window = Window(n=args.window, margin=1)
    op = WalkOperator(params, window)
    lam0 = report.zeros[args.zero_index]
    mu = unitary_eigenvalues(lam0)[1 if args.conjugate else 0]
    vec = build_eigenvector(mu, sp, window, _quad(args))
    res = eigen_residual(vec, mu, op)
    print(f"lambda0: {fmt(lam0)}")
    print(f"mu: {fmt(mu.real)} {fmt(mu.imag)}")
    print(f"l2_norm: {fmt(float(np.linalg.norm(vec.values)))}")
    print(f"residual: {res:.3e}")
    if args.output:
        save_state(vec, args.output)
    return 0


def cmd_resonance(args) -> int:
    params = load_parameters(args.params)
    sp = require_strong_shift(params)
    window = Window(n=args.window, margin=1)
    report = resonance_report(sp, window, quad=_quad(args))
    print(f"m_plus: {fmt(report.m_plus.real)} {fmt(report.m_plus.imag)}")
    print(f"m_minus: {fmt(report.m_minus.real)} {fmt(report.m_minus.imag)}")
    print(f"sup_norm: {fmt(report.sup_norm)}")
    print(f"max_pointwise_residual: {report.max_pointwise_residual:.3e}")
    for n, v in report.l2_growth:
        print(f"l2_norm[N={n}]: {fmt(v)}")
    for d, v in report.epsilon_table:
        print(f"|eps(Lam+{d:g})-1|: {fmt(v)}")
    if args.output:
        if args.format == "json":
            write_json(args.output, {"parameters": params_to_dict(params), **report.to_dict()})
        else:
            point = ThresholdPoint.make(sp, +1, args.conjugate)
            gen = build_generalized_eigenfunction(point, sp, window)
            save_state(gen.state, args.output)
    return 0


def cmd_evolve(args) -> int:
    params = load_parameters(args.params)
    window = Window(n=args.window, margin=1)
    op = WalkOperator(params, window)
    enforce = not args.no_light_cone_check

    if args.initial == "point":
        psi0 = VectorState.point_mass(window, (args.x1, args.x2), args.component)
    elif args.initial == "eigenvector":
        sp = require_strong_shift(params)
        report = spectral_report(sp, quad=_quad(args))
        if not report.zeros:
            print("error: E_PRECONDITION no zeros of f, no eigenvector initial state", file=sys.stderr)
            return 1
        mu = unitary_eigenvalues(report.zeros[0])[0]
        psi0 = build_eigenvector(mu, sp, window, _quad(args)).normalized()
        enforce = False  # full-column support; norm conservation is the guard
    elif args.initial == "generalized":
        sp = require_strong_shift(params)
        point = ThresholdPoint.make(sp, +1)
        psi0 = build_generalized_eigenfunction(point, sp, window).state.normalized()
        enforce = False
    else:  # state file
        psi0 = load_state(args.initial, window).normalized()

    probes = []
    if args.probe:
        for probe in args.probe:
            x1, x2 = (int(v) for v in probe.split(","))
            probes.append((x1, x2))
    region = column_region(window, x1_values=(0, 1), x2_halfwidth=args.region_halfwidth)
    run = evolve(op, psi0, args.steps, probes=probes, region=region, enforce_light_cone=enforce)
    print(f"steps: {run.steps}")
    print(f"final_region_probability: {fmt(run.region_series[-1])}")
    print(f"second_half_average: {fmt(run.second_half_average())}")
    print(f"max_norm_drift: {float(np.max(np.abs(run.total_norm - 1.0))):.3e}")
    if args.output:
        header = ["t"] + [f"p({x1},{x2})" for x1, x2 in run.site_probes] + ["region", "norm"]
        rows = [
            [str(t), *run.site_series[t], run.region_series[t], run.total_norm[t]]
            for t in range(run.steps + 1)
        ]
        if args.format == "json":
            write_json(
                args.output,
                {
                    "parameters": params_to_dict(params),
                    "columns": header,
                    "rows": [[float(c) if not isinstance(c, str) else c for c in row] for row in rows],
                },
            )
        else:
            write_csv(args.output, header, rows)
    return 0


def cmd_verify(args) -> int:
    names = {name for name, _ in acceptance.CRITERIA}
    if args.suite != "all" and args.suite not in names:
        raise ConfigError(f"unknown suite {args.suite!r}; choose 'all' or one of {sorted(names)}")
    ok = True
    for name, func in acceptance.CRITERIA:
        if args.suite != "all" and name != args.suite:
            continue
        passed, detail = func()
        ok = ok and passed
        print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssqw", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("validate", help="check parameter constraints")
    _add_common(p)
    p.add_argument("--mode", choices=("general", "strong_shift"), default="strong_shift")
    p.set_defaults(func=cmd_validate)

    p = subs.add_parser("spectrum", help="zeros of f and lifted eigenvalues")
    _add_common(p)
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--quad-nodes", type=int, default=4096)
    p.set_defaults(func=cmd_spectrum)

    p = subs.add_parser("eigvec", help="build an explicit eigenvector")
    _add_common(p)
    p.add_argument("--grid", type=int, default=2001)
    p.add_argument("--quad-nodes", type=int, default=4096)
    p.add_argument("--window", type=int, default=96)
    p.add_argument("--zero-index", type=int, default=0)
    p.add_argument("--conjugate", action="store_true")
    p.set_defaults(func=cmd_eigvec)

    p = subs.add_parser("resonance", help="threshold resonance diagnostics")
    _add_common(p)
    p.add_argument("--quad-nodes", type=int, default=4096)
    p.add_argument("--window", type=int, default=128)
    p.add_argument("--conjugate", action="store_true")
    p.set_defaults(func=cmd_resonance)

    p = subs.add_parser("evolve", help="run the walk and record probabilities")
    _add_common(p)
    p.add_argument("--quad-nodes", type=int, default=4096)
    p.add_argument("--window", type=int, default=130)
    p.add_argument("--steps", type=int, default=128)
    p.add_argument(
        "--initial",
        default="point",
        help="'point', 'eigenvector', 'generalized', or a state CSV path",
    )
    p.add_argument("--x1", type=int, default=0)
    p.add_argument("--x2", type=int, default=0)
    p.add_argument("--component", type=int, default=0, choices=(0, 1, 2, 3))
    p.add_argument("--probe", action="append", help="site to record, as 'x1,x2' (repeatable)")
    p.add_argument("--region-halfwidth", type=int, default=8)
    p.add_argument("--no-light-cone-check", action="store_true")
    p.set_defaults(func=cmd_evolve)

    p = subs.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--suite", default="all")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc.code} {exc}", file=sys.stderr)
        return 2
    except SsqwError as exc:
        print(f"error: {exc.code} {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
