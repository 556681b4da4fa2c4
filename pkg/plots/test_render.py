"""Secondary-component tests: every figure family renders from CLI-made CSVs.

The fixtures produce golden CSVs by invoking the simulation CLI (the primary
component's external interface) with small sample counts, then each family is
rendered and checked for byte stability.
"""

import subprocess
import sys
from pathlib import Path

import pytest

RENDER = Path(__file__).resolve().parent / "render.py"


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "paritysim.cli", *argv], capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    return proc


def run_render(*argv):
    return subprocess.run(
        [sys.executable, str(RENDER), *argv], capture_output=True, text=True
    )


@pytest.fixture(scope="module")
def golden(tmp_path_factory):
    """Small golden CSVs for every figure family, generated through the CLI."""
    root = tmp_path_factory.mktemp("golden")
    paths = {}

    paths["fidelity_plain"] = root / "fidelity_plain.csv"
    run_cli("fidelity-sweep", "--phi", "0.8pi", "--phi", "0.9pi", "--n-max", "3",
            "--samples", "120", "--seed", "1", "--out", str(paths["fidelity_plain"]))

    paths["fidelity_imbalanced"] = root / "fidelity_imbalanced.csv"
    run_cli("fidelity-sweep", "--phi", "0.9pi", "--delta-phi", "0.02pi", "--delta-phi", "0.06pi",
            "--n-max", "3", "--samples", "100", "--seed", "2",
            "--out", str(paths["fidelity_imbalanced"]))

    paths["fidelity_grid"] = root / "fidelity_grid.csv"
    run_cli("fidelity-sweep", "--phi", "0.9pi", "--phi-grid", "0.85pi:0.95pi:3",
            "--samples", "60", "--seed", "3", "--out", str(paths["fidelity_grid"]))

    paths["fidelity_w1"] = root / "fidelity_w1.csv"
    run_cli("fidelity-sweep", "--phi", "0.9pi", "--w", "0.02pi", "--n-max", "3",
            "--samples", "50", "--noise-samples", "20", "--seed", "4",
            "--out", str(paths["fidelity_w1"]))
    paths["fidelity_w2"] = root / "fidelity_w2.csv"
    run_cli("fidelity-sweep", "--phi", "0.9pi", "--w", "0.04pi", "--n-max", "3",
            "--samples", "50", "--noise-samples", "20", "--seed", "4",
            "--out", str(paths["fidelity_w2"]))

    for name, noise, params in (
        ("errp_none", "none", []),
        ("errp_imbalanced", "imbalanced", ["--param", "0.04pi", "--param", "0.08pi"]),
        ("errp_gaussian", "gaussian", ["--param", "0.02pi", "--param", "0.04pi"]),
        ("errp_pz", "pz", ["--param", "0.01", "--param", "0.02"]),
        ("errp_px", "px", ["--param", "0.04", "--param", "0.08"]),
        ("errp_py", "py", ["--param", "0.02", "--param", "0.05"]),
    ):
        paths[name] = root / f"{name}.csv"
        run_cli("errp-sweep", "--phi", "0.9pi", "--noise", noise, *params,
                "--n-max", "4", "--avg-samples", "50", "--seed", "5",
                "--out", str(paths[name]))

    paths["basis"] = root / "basis.csv"
    run_cli("basis-sweep", "--phi-mean", "0.7pi", "--delta-phi", "0.02pi",
            "--delta-phi", "0.08pi", "--phi-meas-range", "0.6pi:0.8pi:31",
            "--out", str(paths["basis"]))

    return paths


FIGURE_INPUTS = {
    "fig2": ["fidelity_plain"],
    "fig3": ["errp_none"],
    "fig4": ["basis"],
    "fig5": ["errp_imbalanced"],
    "fig6a": ["fidelity_imbalanced"],
    "fig6b": ["fidelity_grid"],
    "fig7a": ["errp_gaussian"],
    "fig7b": ["fidelity_w1", "fidelity_w2"],
    "fig8": ["errp_pz"],
    "fig9a": ["errp_px"],
    "fig9b": ["errp_py"],
}


@pytest.mark.parametrize("figure_id", sorted(FIGURE_INPUTS))
def test_every_family_renders_and_is_byte_stable(figure_id, golden, tmp_path):
    csv_flags = []
    for key in FIGURE_INPUTS[figure_id]:
        csv_flags += ["--csv", str(golden[key])]
    first = tmp_path / f"{figure_id}_a.png"
    second = tmp_path / f"{figure_id}_b.png"
    for out in (first, second):
        proc = run_render("--fig", figure_id, *csv_flags, "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        assert out.exists() and out.stat().st_size > 0
    assert first.read_bytes() == second.read_bytes()


def test_missing_column_is_clean_error(golden, tmp_path):
    out = tmp_path / "bad.png"
    proc = run_render("--fig", "fig2", "--csv", str(golden["errp_none"]), "--out", str(out))
    assert proc.returncode == 2
    assert "missing columns" in proc.stderr
    assert not out.exists()


def test_empty_csv_is_clean_error(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("series,n,phi,delta_phi,w,mean_fidelity,mean_infidelity,std_dev\n")
    out = tmp_path / "empty.png"
    proc = run_render("--fig", "fig2", "--csv", str(empty), "--out", str(out))
    assert proc.returncode == 2
    assert "no data rows" in proc.stderr
    assert not out.exists()


def test_missing_file_is_clean_error(tmp_path):
    out = tmp_path / "x.png"
    proc = run_render("--fig", "fig3", "--csv", str(tmp_path / "nope.csv"), "--out", str(out))
    assert proc.returncode == 2
    assert not out.exists()
