#!/usr/bin/env python3
"""Render publication-style figures from the CLI's CSV outputs.

Consumes only the delimited files (plus their manifests for provenance); no
physics is recomputed here.  Figure ids follow the simulation families:

  fig2   averaged channel infidelity vs cycles, protocol (solid) and nested
         textbook circuit (dashed), log y      <- fidelity-sweep (plain)
  fig3   max (solid) / average (dashed) error probability, no noise, log y
                                               <- errp-sweep --noise none
  fig4   average error probability vs measurement-basis angle
                                               <- basis-sweep
  fig5   error probability, imbalanced gates   <- errp-sweep --noise imbalanced
  fig6a  averaged fidelity vs cycles, imbalanced gates
                                               <- fidelity-sweep --delta-phi
  fig6b  best fidelity heatmap over both gate angles
                                               <- fidelity-sweep --phi-grid
  fig7a  error probability, Gaussian angle noise
                                               <- errp-sweep --noise gaussian
  fig7b  averaged fidelity vs cycles, Gaussian angle noise
                                               <- fidelity-sweep --w
  fig8   error probability, dephasing before the gates
                                               <- errp-sweep --noise pz
  fig9a  error probability, X errors between the gates
                                               <- errp-sweep --noise px
  fig9b  error probability, Y errors between the gates
                                               <- errp-sweep --noise py

Rendering is deterministic: the same CSV bytes produce the same image bytes
(PNG; fixed style, no timestamps).  Multiple --csv flags concatenate rows, so
families swept one parameter per run (e.g. several Gaussian widths) can be
combined into one figure.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

PI = math.pi

_STYLE = {
    "figure.figsize": (5.2, 3.6),
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.markersize": 4,
}

_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2")


class RenderError(Exception):
    pass


@dataclass
class FigureSpec:
    """What one figure family needs: its columns, scales and series styling."""

    figure_id: str
    required_columns: tuple
    builder: "callable"
    log_y: bool = False
    csv_paths: list = field(default_factory=list)
    out_path: str = ""


def load_rows(paths, required_columns):
    rows = []
    for path in paths:
        if not os.path.exists(path):
            raise RenderError(f"input CSV not found: {path}")
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            header = reader.fieldnames or []
            missing = [c for c in required_columns if c not in header]
            if missing:
                raise RenderError(f"{path}: missing columns {missing}")
            rows.extend(list(reader))
    if not rows:
        raise RenderError("no data rows in the given CSV file(s)")
    return rows


def _f(row, key):
    text = row[key]
    return float(text) if text != "" else math.nan


def _pi_label(value: float) -> str:
    return f"{value / PI:.3g}pi"


def _grouped(rows, keys):
    groups = {}
    for row in rows:
        groups.setdefault(tuple(row[k] for k in keys), []).append(row)
    return [groups[k] for k in sorted(groups)]


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def build_fig2(ax, rows):
    for idx, group in enumerate(_grouped(rows, ("phi", "series"))):
        series = group[0]["series"]
        phi = _f(group[0], "phi")
        group = sorted(group, key=lambda r: int(r["n"]))
        n = [int(r["n"]) for r in group]
        infid = [_f(r, "mean_infidelity") for r in group]
        err = [_f(r, "std_dev") for r in group]
        style = "-o" if series == "protocol" else "--s"
        ax.errorbar(n, infid, yerr=err, fmt=style, color=_COLORS[idx % len(_COLORS)],
                    label=f"{series}, phi={_pi_label(phi)}", capsize=2)
    ax.set_xlabel("operation cycles n")
    ax.set_ylabel("average channel infidelity")


def _build_errp(ax, rows):
    for idx, group in enumerate(_grouped(rows, ("phi", "param"))):
        phi = _f(group[0], "phi")
        param = _f(group[0], "param")
        model = group[0]["model"]
        group = sorted(group, key=lambda r: int(r["n"]))
        n = [int(r["n"]) for r in group]
        color = _COLORS[idx % len(_COLORS)]
        if model == "none":
            label = f"phi={_pi_label(phi)}"
        elif model in ("imbalanced", "gaussian"):
            label = f"phi={_pi_label(phi)}, {_pi_label(param)}"
        else:
            label = f"phi={_pi_label(phi)}, p={param:g}"
        ax.plot(n, [_f(r, "max_errp") for r in group], "-o", color=color, label=f"max, {label}")
        ax.plot(n, [_f(r, "avg_errp_analytic") for r in group], "--s", color=color,
                label=f"avg, {label}")
    ax.set_xlabel("operation cycles n")
    ax.set_ylabel("error probability")


def build_fig4(ax, rows):
    for idx, group in enumerate(_grouped(rows, ("phi_mean", "delta_phi"))):
        mean = _f(group[0], "phi_mean")
        delta = _f(group[0], "delta_phi")
        group = sorted(group, key=lambda r: _f(r, "phi_meas"))
        x = [_f(r, "phi_meas") / PI for r in group]
        y = [_f(r, "avg_errp") for r in group]
        ax.plot(x, y, "-", color=_COLORS[idx % len(_COLORS)],
                label=f"mean={_pi_label(mean)}, diff={_pi_label(delta)}")
    ax.set_xlabel("measurement basis angle [pi]")
    ax.set_ylabel("average error probability")


def build_fig6a(ax, rows):
    rows = [r for r in rows if r["series"] == "protocol"]
    if not rows:
        raise RenderError("no protocol-series rows for fig6a")
    for idx, group in enumerate(_grouped(rows, ("delta_phi",))):
        delta = _f(group[0], "delta_phi")
        group = sorted(group, key=lambda r: int(r["n"]))
        n = [int(r["n"]) for r in group]
        y = [_f(r, "mean_fidelity") for r in group]
        label = f"diff={_pi_label(delta)}" if not math.isnan(delta) else "balanced"
        ax.plot(n, y, "-o", color=_COLORS[idx % len(_COLORS)], label=label)
    ax.set_xlabel("operation cycles n")
    ax.set_ylabel("average channel fidelity")


def build_fig6b(ax, rows):
    phi1 = sorted({_f(r, "phi1") for r in rows})
    phi2 = sorted({_f(r, "phi2") for r in rows})
    grid = np.full((len(phi2), len(phi1)), np.nan)
    index1 = {v: i for i, v in enumerate(phi1)}
    index2 = {v: i for i, v in enumerate(phi2)}
    for row in rows:
        grid[index2[_f(row, "phi2")], index1[_f(row, "phi1")]] = _f(row, "best_fidelity")
    if np.any(np.isnan(grid)):
        raise RenderError("fig6b needs a complete rectangular (phi1, phi2) grid")
    mesh = ax.pcolormesh(
        np.asarray(phi1) / PI, np.asarray(phi2) / PI, grid, shading="nearest", cmap="viridis"
    )
    ax.figure.colorbar(mesh, ax=ax, label="best average channel fidelity (n <= 5)")
    ax.set_xlabel("gate angle 1 [pi]")
    ax.set_ylabel("gate angle 2 [pi]")


def build_fig7b(ax, rows):
    rows = [r for r in rows if r["series"] == "protocol"]
    for idx, group in enumerate(_grouped(rows, ("w",))):
        width = _f(group[0], "w")
        group = sorted(group, key=lambda r: int(r["n"]))
        n = [int(r["n"]) for r in group]
        y = [_f(r, "mean_fidelity") for r in group]
        label = f"w={_pi_label(width)}" if not math.isnan(width) else "w=0"
        ax.plot(n, y, "-o", color=_COLORS[idx % len(_COLORS)], label=label)
    ax.set_xlabel("operation cycles n")
    ax.set_ylabel("average channel fidelity")


ERRP_COLUMNS = ("n", "model", "phi", "param", "max_errp", "avg_errp_analytic")
FIDELITY_COLUMNS = ("series", "n", "phi", "delta_phi", "w", "mean_fidelity",
                    "mean_infidelity", "std_dev")

FIGURES = {
    "fig2": FigureSpec("fig2", FIDELITY_COLUMNS, build_fig2, log_y=True),
    "fig3": FigureSpec("fig3", ERRP_COLUMNS, _build_errp, log_y=True),
    "fig4": FigureSpec("fig4", ("phi_mean", "delta_phi", "phi_meas", "avg_errp"), build_fig4),
    "fig5": FigureSpec("fig5", ERRP_COLUMNS, _build_errp, log_y=True),
    "fig6a": FigureSpec("fig6a", FIDELITY_COLUMNS, build_fig6a),
    "fig6b": FigureSpec("fig6b", ("phi1", "phi2", "best_n", "best_fidelity"), build_fig6b),
    "fig7a": FigureSpec("fig7a", ERRP_COLUMNS, _build_errp, log_y=True),
    "fig7b": FigureSpec("fig7b", FIDELITY_COLUMNS, build_fig7b),
    "fig8": FigureSpec("fig8", ERRP_COLUMNS, _build_errp, log_y=True),
    "fig9a": FigureSpec("fig9a", ERRP_COLUMNS, _build_errp, log_y=True),
    "fig9b": FigureSpec("fig9b", ERRP_COLUMNS, _build_errp, log_y=True),
}


def render(spec: FigureSpec) -> str:
    """Render one figure family to ``spec.out_path`` and return the path.

    Fails before any output is written, so an error never leaves a partial
    image behind.
    """
    rows = load_rows(spec.csv_paths, spec.required_columns)
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        try:
            spec.builder(ax, rows)
            if spec.log_y:
                # log axes only carry strictly positive values; matplotlib
                # masks the rest
                ax.set_yscale("log")
            if ax.get_legend_handles_labels()[0]:
                ax.legend(fontsize=7)
            ax.set_title(spec.figure_id)
            fig.tight_layout()
            out_dir = os.path.dirname(os.path.abspath(spec.out_path))
            os.makedirs(out_dir, exist_ok=True)
            tmp = spec.out_path + ".tmp.png"
            fig.savefig(tmp, format="png", metadata={"Software": "paritysim-plots"})
            os.replace(tmp, spec.out_path)
        finally:
            plt.close(fig)
    return spec.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render.py", description="Render a figure family from simulation CSV output."
    )
    parser.add_argument("--fig", required=True, choices=sorted(FIGURES))
    parser.add_argument("--csv", action="append", required=True,
                        help="input CSV from the simulation CLI; repeatable")
    parser.add_argument("--out", required=True, help="output image path (PNG)")
    args = parser.parse_args(argv)
    spec = FIGURES[args.fig]
    spec = FigureSpec(
        spec.figure_id, spec.required_columns, spec.builder, spec.log_y,
        csv_paths=list(args.csv), out_path=args.out,
    )
    try:
        render(spec)
    except RenderError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
