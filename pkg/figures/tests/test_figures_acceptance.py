"""Acceptance: render every figure kind from real simulator outputs.

Prints one verdict line, matching the simulator suite's convention:

    [criterion 11] PASS|FAIL -- detail
"""

from __future__ import annotations

import shutil
import subprocess

import pytest


def render_cli(args):
    exe = shutil.which("fluxjump-figures")
    assert exe is not None, "fluxjump-figures CLI not on PATH"
    return subprocess.run([exe, "render", *args], capture_output=True, text=True)


def test_criterion_11_all_figure_kinds_render(artifacts, tmp_path, capsys):
    prod = artifacts / "production"
    cong = artifacts / "traffic-congested"
    jobs = {
        # four figures covering all three kinds, built from scenario outputs
        "flux-families.png": [
            "--kind", "flux_curves",
            "--in", str(artifacts / "production-curves.csv"),
        ],
        "production-scatter.png": [
            "--kind", "scatter",
            "--in", str(prod / "scatter.csv"), str(prod / "fluxcurves.csv"),
            "--probe", "0", "--ref-alpha", "0",
        ],
        "congested-scatter.png": [
            "--kind", "scatter",
            "--in", str(cong / "scatter.csv"), str(cong / "fluxcurves.csv"),
            "--probe", "0", "--ref-alpha", "0.4",
        ],
        "production-timeseries.png": [
            "--kind", "time_series",
            "--in", str(prod / "paths.csv"), "--probe", "0",
        ],
    }

    failures = []
    sizes = {}
    for name, args in jobs.items():
        out = tmp_path / name
        proc = render_cli([*args, "--out", str(out)])
        if proc.returncode != 0:
            failures.append(f"{name}: exit {proc.returncode}: {proc.stderr.strip()}")
            continue
        size = out.stat().st_size if out.exists() else 0
        sizes[name] = size
        if size <= 0:
            failures.append(f"{name}: empty image file")

    ok = not failures
    detail = (
        f"4 figures over {len(set(j[1] for j in jobs.values()))} kinds, sizes "
        + ", ".join(f"{n}={s}B" for n, s in sizes.items())
        if ok
        else "; ".join(failures)
    )
    with capsys.disabled():
        print(f"[criterion 11] {'PASS' if ok else 'FAIL'} -- {detail}")
    assert ok, detail
