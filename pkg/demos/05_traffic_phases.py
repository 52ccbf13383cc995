#!/usr/bin/env python3
"""Free versus congested traffic: where the randomness shows up.

The two built-in traffic scenarios share the same gamma-shaped fundamental
diagram and the same jump kernel; only the initial density differs. In light
traffic the density sits on the rising, nearly parameter-insensitive branch
of the flux curves, so parameter jumps barely move the observed flux. In
congestion the operating point sits past the peak, where the curves fan out,
and the same jumps produce visibly scattered flux values.

Run:  python3 demos/05_traffic_phases.py
"""

from __future__ import annotations

import dataclasses

import fluxjump as fj

N_SAMPLES = 8
BASE_SEED = 77


def reduced(name: str) -> fj.ScenarioConfig:
    cfg = fj.builtin_scenario(name)
    return dataclasses.replace(cfg, n_cells=1000, horizon=10.0, snapshot_interval=0.5)


def main() -> None:
    results = {}
    for name in ("traffic-free", "traffic-congested"):
        cfg = reduced(name)
        scenario = fj.build(cfg)
        paths = fj.run_ensemble(scenario, base_seed=BASE_SEED, n_samples=N_SAMPLES)
        results[name] = (cfg, scenario, paths)

        jumps = [p.n_jumps for p in paths]
        print(f"{name}: {N_SAMPLES} paths, jumps per path "
              f"{min(jumps)}..{max(jumps)}")
        for probe in cfg.probes:
            records = [
                r
                for p in paths
                for r in fj.extract_scatter(p, scenario.family, probes=[probe])
            ]
            stats = fj.phase_statistics(records)
            print(f"  probe x = {probe}: mean density {stats.mean_density:.3f}, "
                  f"mean flux {stats.mean_flux:.4f}, "
                  f"flux variance {stats.var_flux:.2e}")
        print()

    # Head-to-head at the origin probe.
    def var_at_origin(name: str) -> float:
        cfg, scenario, paths = results[name]
        records = [
            r for p in paths for r in fj.extract_scatter(p, scenario.family, probes=[0.0])
        ]
        return fj.phase_statistics(records).var_flux

    free, congested = var_at_origin("traffic-free"), var_at_origin("traffic-congested")
    print(f"flux variance at x = 0: congested {congested:.2e} "
          f"vs free {free:.2e}  (ratio {congested / free:.1f}x)")
    print("The congested phase amplifies parameter noise into flux noise;")
    print("the free phase absorbs it.")


if __name__ == "__main__":
    main()
