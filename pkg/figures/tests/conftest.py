"""Shared fixtures: simulator artifacts produced through its CLI only."""

from __future__ import annotations

import shutil
import subprocess

import pytest

try:
    import fluxjump_figures  # noqa: F401
except ImportError:
    # The figure package is optional; without it, skip collecting this suite
    # so the simulator's own tests still run standalone.
    collect_ignore_glob = ["test_*.py"]

SCENARIOS = ("production", "traffic-free", "traffic-congested")


def run_cli(args, **kw):
    exe = shutil.which("fluxjump")
    if exe is None:
        pytest.skip("fluxjump CLI not on PATH")
    return subprocess.run([exe, *args], capture_output=True, text=True, **kw)


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """CSV outputs of the built-in scenarios, two sample paths each.

    Generated through the simulator's command-line interface; this package
    never imports the simulator.
    """
    root = tmp_path_factory.mktemp("artifacts")
    for name in SCENARIOS:
        proc = run_cli([
            "run", "--scenario", name, "--seed", "808", "--samples", "2",
            "--out", str(root / name),
        ])
        assert proc.returncode == 0, proc.stderr
    proc = run_cli([
        "flux-curves", "--scenario", "production",
        "--alphas=-0.15,0,0.15", "--out", str(root / "production-curves.csv"),
    ])
    assert proc.returncode == 0, proc.stderr
    return root
