"""Command-line front end: verify / evolve / transform.

Exit codes: 0 on success, 1 on assertion or integrator-guard failure,
2 on configuration errors.  All numeric output is deterministic (17
significant digits, no timestamps), so identical configurations produce
byte-identical files.  The environment variable QREL_THREADS caps the
parallelism of battery sweeps.
"""

import argparse
import os
import sys

from . import functionals as fn
from . import group as gr
from .config import SUITE_NAMES, load_config
from .dynamics import run_trajectory
from .errors import ConfigurationError, QrelError, ResolutionGuardError
from .report import dumps17, format17, table_csv, trajectory_csv
from .states import from_wave
from .suites import ORIENTATION_NOTE, run_suites


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrel",
                                     description="uncertainty-relativity verification laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario JSON file (defaults are built in)")
    common.add_argument("--out", default="qrel-out", help="output directory")
    common.add_argument("--convention", choices=("consistent", "paper-literal"),
                        help="delta_x2 factor convention override")

    verify = sub.add_parser("verify", parents=[common], help="run verification suites")
    verify.add_argument("--suite", help=f"comma-separated suites (default: all of {','.join(SUITE_NAMES)})")

    sub.add_parser("evolve", parents=[common], help="integrate a flow and write the trajectory table")
    sub.add_parser("transform", parents=[common], help="dilatation sweep against the arithmetic laws")
    return parser


def _prepare(args):
    cfg = load_config(args.config)
    if args.convention:
        cfg.convention = args.convention
    if getattr(args, "suite", None):
        names = tuple(s.strip() for s in args.suite.split(",") if s.strip())
        for name in names:
            if name not in SUITE_NAMES:
                raise ConfigurationError(f"--suite: unknown suite {name!r} (known: {', '.join(SUITE_NAMES)})")
        cfg.suites = names
    os.makedirs(args.out, exist_ok=True)
    return cfg


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_verify(args) -> int:
    cfg = _prepare(args)
    report = run_suites(cfg)
    path = os.path.join(args.out, "report.json")
    _write(path, dumps17(report.to_obj()) + "\n")
    failed = [c for c in report.checks if c.asserted and not c.passed]
    for check in report.checks:
        marker = "PASS" if check.passed else "FAIL"
        if not check.asserted:
            marker = "INFO"
        print(f"[{marker}] {check.name}: measured={format17(check.measured)}"
              + (f" tol={format17(check.tolerance)}" if check.asserted else ""))
    print(f"report: {path} status={report.status}")
    return 0 if not failed else 1


def cmd_evolve(args) -> int:
    cfg = _prepare(args)
    grid = cfg.make_grid()
    wave = cfg.make_wave(grid)
    try:
        traj = run_trajectory(wave, cfg.flow, cfg.step, cfg.steps, cfg.convention)
    except ResolutionGuardError as err:
        print(f"evolve: {err} (no certifiable records)", file=sys.stderr)
        return 1
    csv_path = os.path.join(args.out, "trajectory.csv")
    _write(csv_path, trajectory_csv(traj))
    summary = {
        "flow": traj.flow,
        "step": traj.step,
        "requested_steps": traj.requested_steps,
        "records": len(traj.records),
        "last_valid_step": traj.last_valid_step,
        "guard_tripped": traj.guard_tripped,
        "guard_reason": traj.guard_reason,
        "potential_clamp_events": traj.clamp_events,
        "convention": cfg.convention,
    }
    _write(os.path.join(args.out, "evolve_summary.json"), dumps17(summary) + "\n")
    print(f"trajectory: {csv_path} records={len(traj.records)}")
    if traj.guard_tripped:
        print(f"evolve: integrator guard tripped; last valid record index {traj.last_valid_step} "
              f"({traj.guard_reason})", file=sys.stderr)
        return 1
    return 0


def cmd_transform(args) -> int:
    cfg = _prepare(args)
    if not cfg.alphas:
        raise ConfigurationError("alphas: list must be nonempty for the transform command")
    grid = cfg.make_grid()
    state = cfg.make_state(grid) if cfg.state_kind == "gaussian" else from_wave(cfg.make_wave(grid))
    pair = fn.uncertainty_pair(state, cfg.convention)
    h0, k0 = fn.h_q(state), fn.k_q(state)
    rows = []
    worst = 0.0
    for alpha in cfg.alphas:
        dil = gr.dilate(state, alpha)
        predicted = gr.transform_uncertainty(pair, alpha, cfg.hbar)
        mix_h, mix_k = gr.mix_hk(h0, k0, alpha)
        dx2 = fn.delta_x2(dil, cfg.convention)
        dp2 = fn.delta_p2_q(dil)
        hq, kq = fn.h_q(dil), fn.k_q(dil)
        residual = max(abs(dx2 - predicted.dx2), abs(dp2 - predicted.dp2),
                       abs(hq - mix_h), abs(kq - mix_k))
        worst = max(worst, residual)
        rows.append([alpha, dx2, dp2, hq, kq, predicted.dx2, predicted.dp2, mix_h, mix_k, residual])
    header = ["alpha", "delta_x2", "delta_p2_q", "h_q", "k_q",
              "predicted_dx2", "predicted_dp2", "predicted_h_q", "predicted_k_q", "residual"]
    csv_path = os.path.join(args.out, "transform.csv")
    _write(csv_path, table_csv(header, rows))
    summary = {
        "alphas": list(cfg.alphas),
        "max_residual": worst,
        "convention": cfg.convention,
        "notes": [ORIENTATION_NOTE],
    }
    _write(os.path.join(args.out, "transform_summary.json"), dumps17(summary) + "\n")
    print(f"transform table: {csv_path} max_residual={format17(worst)}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"verify": cmd_verify, "evolve": cmd_evolve, "transform": cmd_transform}
    try:
        return handlers[args.command](args)
    except ConfigurationError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except QrelError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
