"""Hellinger infidelity under depolarizing CNOT noise at t = 1, r = 1.

    python scripts/noise_grid.py --instances 10 --width 4 --terms 8
    python scripts/noise_grid.py --input data/ising3.ham --noise-model independent
"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from hsim.bench import DEFAULT_NOISE_RATES, EvaluationReport, NoiseConfig, noise_run, report_emit
from hsim.hamiltonian import load_hamiltonian, random_hamiltonian


@dataclass(frozen=True)
class NoiseGrid:
    instances: int = 10
    width: int = 4
    terms: int = 8
    p_values: tuple[float, ...] = DEFAULT_NOISE_RATES
    strategies: tuple[str, ...] = ("lex", "mag", "mctsp")
    noise_model: str = "pair"
    inputs: list[Path] = field(default_factory=list)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--instances", type=int, default=NoiseGrid.instances)
    ap.add_argument("--width", type=int, default=NoiseGrid.width)
    ap.add_argument("--terms", type=int, default=NoiseGrid.terms)
    ap.add_argument("--input", type=Path, action="append", default=[], help="use .ham files instead of random instances")
    ap.add_argument("--noise-model", default="pair", choices=["pair", "independent"])
    ap.add_argument("--out", type=Path, help="write the per-cell CSV here")
    a = ap.parse_args()
    grid = NoiseGrid(a.instances, a.width, a.terms, noise_model=a.noise_model, inputs=a.input)

    if grid.inputs:
        hams = [(str(p), load_hamiltonian(p)) for p in grid.inputs]
    else:
        hams = [(f"seed{s}", random_hamiltonian(grid.width, grid.terms, s)) for s in range(grid.instances)]
    cfg = NoiseConfig(grid.p_values, grid.strategies, noise_model=grid.noise_model)
    report = EvaluationReport()
    for name, h in hams:
        report.extend(noise_run(h, cfg, name))

    print(f"{'strategy':<10}" + "".join(f"{f'p={p:g}':>12}" for p in grid.p_values) + f"{'CNOTs':>8}")
    for s in grid.strategies:
        cells = [c for c in report.noise if c.strategy == s and not c.error]
        means = [np.mean([c.hellinger_infidelity for c in cells if c.p == p]) for p in grid.p_values]
        cnots = np.mean([c.cnot_count for c in cells])
        print(f"{s:<10}" + "".join(f"{m:>12.5f}" for m in means) + f"{cnots:>8.1f}")
    if a.out:
        a.out.parent.mkdir(parents=True, exist_ok=True)
        a.out.write_bytes(report_emit(report, "csv"))


if __name__ == "__main__":
    main()
