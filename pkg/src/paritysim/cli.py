"""Command-line front end that regenerates the data behind every figure.

Each subcommand writes a deterministic CSV (full-precision decimals, fixed
header) plus a JSON manifest carrying the exact invocation, seed and package
versions, so any output can be reproduced byte for byte with ``replay``.
Angles accept either plain radians or a ``0.9pi`` literal.

Exit codes: 0 success, 1 validation failure, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import re
import sys
import time

import numpy as np

from . import __version__, analytics
from .audit import run_oracle_audit
from .kraus import NoiseModel
from .simulate import (
    ProtocolConfig,
    avg_channel_fidelity,
    gaussian_avg_fidelity,
    naive_avg_fidelity,
)

_NOISE_CHOICES = ("none", "imbalanced", "gaussian", "pz", "px", "py")


def parse_angle(text: str) -> float:
    """Angle in radians from '0.9pi', 'pi', '-0.25pi' or a plain number."""
    s = text.strip().lower()
    match = re.fullmatch(r"([+-]?(?:\d+\.?\d*|\.\d+)?)\s*pi", s)
    if match:
        coeff = match.group(1)
        if coeff in ("", "+"):
            coeff = "1"
        elif coeff == "-":
            coeff = "-1"
        return float(coeff) * math.pi
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def parse_angle_range(text: str):
    """'start:stop:steps' with pi-literal endpoints, e.g. '0.6pi:0.8pi:41'."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"range must be start:stop:steps, got {text!r}")
    start, stop = parse_angle(parts[0]), parse_angle(parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"step count must be an integer, got {parts[2]!r}") from None
    if steps < 2:
        raise argparse.ArgumentTypeError("range needs at least 2 steps")
    return start, stop, steps


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return f"{float(value):.17g}"


def _write_csv(path: str, header, rows):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    os.replace(tmp, path)


def _manifest_path(out: str) -> str:
    root, _ = os.path.splitext(out)
    return root + ".manifest.json"


def _write_manifest(command: str, argv, seed, outputs, elapsed: float):
    manifest = {
        "command": command,
        "args": list(argv),
        "seed": seed,
        "versions": {
            "paritysim": __version__,
            "numpy": np.__version__,
            "python": sys.version.split()[0],
        },
        "outputs": [os.path.abspath(p) for p in outputs],
        "elapsed_seconds": elapsed,
    }
    path = _manifest_path(outputs[0])
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path


def _noise_from_name(name: str, param: float) -> NoiseModel:
    if name == "none":
        return NoiseModel.none()
    if name == "imbalanced":
        return NoiseModel.imbalanced(0.5 * param, -0.5 * param)
    if name == "gaussian":
        return NoiseModel.gaussian(param)
    if name == "pz":
        return NoiseModel.pauli_z(param)
    if name == "px":
        return NoiseModel.pauli_x(param)
    if name == "py":
        return NoiseModel.pauli_y(param)
    raise ValueError(f"unknown noise model {name!r}")


# ---------------------------------------------------------------------------
# fidelity-sweep
# ---------------------------------------------------------------------------

FIDELITY_HEADER = (
    "series",
    "n",
    "phi",
    "delta_phi",
    "w",
    "mean_fidelity",
    "mean_infidelity",
    "std_dev",
    "n_states",
    "n_noise_samples",
    "seed",
)

FIDELITY_GRID_HEADER = ("phi1", "phi2", "best_n", "best_fidelity", "n_states", "seed")


def cmd_fidelity_sweep(args) -> int:
    started = time.time()
    rows = []
    if args.phi_grid is not None:
        start, stop, steps = args.phi_grid
        axis = np.linspace(start, stop, steps)
        n_best = min(args.n_max, 5)
        for phi1 in axis:
            for phi2 in axis:
                mean = 0.5 * (phi1 + phi2)
                noise = NoiseModel.imbalanced(phi1 - mean, phi2 - mean)
                best_n, best_f = 0, -1.0
                for n in range(1, n_best + 1):
                    cfg = ProtocolConfig(n=n, phi=mean, noise=noise, correction="aligned")
                    est = avg_channel_fidelity(cfg, args.samples, seed=args.seed)
                    if est.mean > best_f:
                        best_n, best_f = n, est.mean
                rows.append((phi1, phi2, best_n, best_f, args.samples, args.seed))
        _write_csv(args.out, FIDELITY_GRID_HEADER, rows)
    else:
        deltas = args.delta_phi if args.delta_phi else [None]
        for phi in args.phi:
            for delta in deltas:
                for n in range(1, args.n_max + 1):
                    if args.w is not None:
                        cfg = ProtocolConfig(
                            n=n,
                            phi=phi,
                            noise=NoiseModel.gaussian(args.w),
                            correction="paper" if args.correction == "auto" else args.correction,
                        )
                        est = gaussian_avg_fidelity(cfg, args.samples, args.noise_samples, seed=args.seed)
                        rows.append(
                            ("protocol", n, phi, None, args.w, est.mean, est.infidelity,
                             est.std_dev, est.n_states, est.n_noise_samples, args.seed)
                        )
                    elif delta is not None:
                        noise = NoiseModel.imbalanced(0.5 * delta, -0.5 * delta)
                        corr = "aligned" if args.correction == "auto" else args.correction
                        cfg = ProtocolConfig(n=n, phi=phi, noise=noise, correction=corr)
                        est = avg_channel_fidelity(cfg, args.samples, seed=args.seed)
                        rows.append(
                            ("protocol", n, phi, delta, None, est.mean, est.infidelity,
                             est.std_dev, est.n_states, 1, args.seed)
                        )
                    else:
                        corr = "paper" if args.correction == "auto" else args.correction
                        cfg = ProtocolConfig(n=n, phi=phi, correction=corr)
                        est = avg_channel_fidelity(cfg, args.samples, seed=args.seed)
                        rows.append(
                            ("protocol", n, phi, None, None, est.mean, est.infidelity,
                             est.std_dev, est.n_states, 1, args.seed)
                        )
                if delta is None and args.w is None and not args.skip_naive:
                    for n in range(1, args.n_max + 1):
                        est = naive_avg_fidelity(phi, n, args.samples, seed=args.seed)
                        rows.append(
                            ("naive", n, phi, None, None, est.mean, est.infidelity,
                             est.std_dev, est.n_states, 1, args.seed)
                        )
        _write_csv(args.out, FIDELITY_HEADER, rows)
    _write_manifest("fidelity-sweep", args._argv, args.seed, [args.out], time.time() - started)
    return 0


# ---------------------------------------------------------------------------
# errp-sweep
# ---------------------------------------------------------------------------

ERRP_HEADER = (
    "n",
    "model",
    "phi",
    "param",
    "max_errp",
    "avg_errp_analytic",
    "avg_errp_sampled",
    "avg_errp_sampled_std",
    "avg_samples",
    "seed",
)


def cmd_errp_sweep(args) -> int:
    started = time.time()
    params = args.param if args.param else [0.0]
    rows = []
    for phi in args.phi:
        for param in params:
            noise = _noise_from_name(args.noise, param)
            for n in range(1, args.n_max + 1):
                report = analytics.error_probability_report(n, phi, noise)
                sampled, sampled_std = analytics.haar_average_sampled(
                    n, phi, noise, args.avg_samples, seed=args.seed
                )
                rows.append(
                    (n, args.noise, phi, param, report.max_over_states,
                     report.haar_average, sampled, sampled_std, args.avg_samples, args.seed)
                )
    _write_csv(args.out, ERRP_HEADER, rows)
    _write_manifest("errp-sweep", args._argv, args.seed, [args.out], time.time() - started)
    return 0


# ---------------------------------------------------------------------------
# basis-sweep
# ---------------------------------------------------------------------------

BASIS_HEADER = ("phi_mean", "delta_phi", "phi_meas", "avg_errp", "max_errp")


def cmd_basis_sweep(args) -> int:
    started = time.time()
    rows = []
    for phi_mean in args.phi_mean:
        if args.phi_meas_range is not None:
            start, stop, steps = args.phi_meas_range
        else:
            start, stop, steps = phi_mean - 0.15 * math.pi, phi_mean + 0.15 * math.pi, 61
        axis = np.linspace(start, stop, steps)
        for delta in args.delta_phi:
            phi1 = phi_mean + 0.5 * delta
            phi2 = phi_mean - 0.5 * delta
            for phi_meas in axis:
                report = analytics.errp_imbalanced(1, phi_meas, phi1 - phi_meas, phi2 - phi_meas)
                rows.append((phi_mean, delta, phi_meas, report.haar_average, report.max_over_states))
    _write_csv(args.out, BASIS_HEADER, rows)
    _write_manifest("basis-sweep", args._argv, None, [args.out], time.time() - started)
    return 0


# ---------------------------------------------------------------------------
# oracle-audit
# ---------------------------------------------------------------------------

AUDIT_HEADER = ("check", "detail", "cases", "value", "reference", "tolerance", "status")


def cmd_oracle_audit(args) -> int:
    started = time.time()
    report = run_oracle_audit(grid_size=args.grid_size, seed=args.seed)
    rows = [
        (r.check, r.detail, r.cases, r.value, r.reference, r.tolerance, r.status)
        for r in report.rows
    ]
    _write_csv(args.out, AUDIT_HEADER, rows)
    _write_manifest("oracle-audit", args._argv, args.seed, [args.out], time.time() - started)
    for r in report.rows:
        print(f"[{r.status:4s}] {r.check}: value={r.value:.12g} reference={r.reference:.12g} tol={r.tolerance:g}")
    print(
        f"oracle-audit: worst equivalence deviation {report.worst_equivalence_deviation:.3e} "
        f"({'PASS' if report.passed else 'FAIL'})"
    )
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# replay
# ---------------------------------------------------------------------------

def cmd_replay(args) -> int:
    with open(args.manifest, "r", encoding="utf-8") as handle:
        manifest = json.load(handle)
    argv = list(manifest["args"])
    if args.out is not None:
        if "--out" not in argv:
            print("manifest arguments carry no --out flag to override", file=sys.stderr)
            return 2
        argv[argv.index("--out") + 1] = args.out
    return main(argv)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paritysim",
        description="Regenerate the parity-projection protocol's figure data as CSV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fid = sub.add_parser("fidelity-sweep", help="averaged channel fidelity vs cycle count")
    fid.add_argument("--phi", type=parse_angle, action="append",
                     help="nominal gate angle; repeatable (e.g. 0.9pi)")
    group = fid.add_mutually_exclusive_group()
    group.add_argument("--delta-phi", type=parse_angle, action="append",
                       help="gate-angle difference for imbalanced gates; repeatable")
    group.add_argument("--w", type=parse_angle, help="Gaussian angle spread")
    group.add_argument("--phi-grid", type=parse_angle_range,
                       help="start:stop:steps grid over both gate angles (best fidelity, n<=5)")
    fid.add_argument("--n-max", type=int, default=6)
    fid.add_argument("--samples", type=int, default=5000)
    fid.add_argument("--noise-samples", type=int, default=1000)
    fid.add_argument("--correction", choices=("auto", "none", "paper", "aligned"), default="auto")
    fid.add_argument("--skip-naive", action="store_true",
                     help="omit the nested textbook-circuit comparison series")
    fid.add_argument("--seed", type=int, required=True)
    fid.add_argument("--out", required=True)
    fid.set_defaults(func=cmd_fidelity_sweep)

    errp = sub.add_parser("errp-sweep", help="maximum and average error probability vs cycle count")
    errp.add_argument("--phi", type=parse_angle, action="append")
    errp.add_argument("--noise", choices=_NOISE_CHOICES, default="none")
    errp.add_argument("--param", type=parse_angle, action="append",
                      help="noise parameter: delta-phi, w (angles) or error probability; repeatable")
    errp.add_argument("--n-max", type=int, default=10)
    errp.add_argument("--avg-samples", type=int, default=4000)
    errp.add_argument("--seed", type=int, required=True)
    errp.add_argument("--out", required=True)
    errp.set_defaults(func=cmd_errp_sweep)

    basis = sub.add_parser("basis-sweep", help="average error probability vs measurement basis angle")
    basis.add_argument("--phi-mean", type=parse_angle, action="append")
    basis.add_argument("--delta-phi", type=parse_angle, action="append")
    basis.add_argument("--phi-meas-range", type=parse_angle_range,
                       help="start:stop:steps; default phi_mean +- 0.15pi, 61 steps")
    basis.add_argument("--out", required=True)
    basis.set_defaults(func=cmd_basis_sweep)

    aud = sub.add_parser("oracle-audit", help="closed forms vs brute-force channel equivalence suite")
    aud.add_argument("--grid-size", type=int, default=500)
    aud.add_argument("--seed", type=int, required=True)
    aud.add_argument("--out", required=True)
    aud.set_defaults(func=cmd_oracle_audit)

    rep = sub.add_parser("replay", help="re-run a command from its manifest")
    rep.add_argument("manifest")
    rep.add_argument("--out", help="override the output path")
    rep.set_defaults(func=cmd_replay)

    return parser


def _validate(args) -> str | None:
    if args.command in ("fidelity-sweep", "errp-sweep") and not args.phi:
        return "at least one --phi is required"
    if args.command == "basis-sweep":
        if not args.phi_mean:
            return "at least one --phi-mean is required"
        if not args.delta_phi:
            return "at least one --delta-phi is required"
    if args.command == "fidelity-sweep":
        if args.n_max < 1 or args.samples < 2:
            return "--n-max must be >= 1 and --samples >= 2"
        if args.w is not None and (args.w < 0 or args.noise_samples < 2):
            return "--w must be >= 0 and --noise-samples >= 2"
    if args.command == "errp-sweep":
        if args.n_max < 1 or args.avg_samples < 2:
            return "--n-max must be >= 1 and --avg-samples >= 2"
        if args.noise != "none" and not args.param:
            return f"--param is required for noise model {args.noise!r}"
        if args.noise in ("pz", "px", "py") and any(not 0 <= p <= 1 for p in args.param or []):
            return "error probabilities must lie in [0, 1]"
    if args.command == "oracle-audit" and args.grid_size < 1:
        return "--grid-size must be >= 1"
    return None


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = list(argv)
    problem = _validate(args)
    if problem is not None:
        print(f"error: {problem}", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
