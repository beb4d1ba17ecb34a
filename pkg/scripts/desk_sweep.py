"""Trotter-number sweep over seeded random Hamiltonians, one summary row per strategy.

    python scripts/desk_sweep.py --instances 20 --width 4 --terms 12 --t 0.5 --out results/desk_sweep.csv
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from hsim.bench import SweepConfig, report_emit, sweep_files
from hsim.hamiltonian import random_hamiltonian
from hsim.ordering import STRATEGIES


@dataclass(frozen=True)
class DeskSweep:
    instances: int = 20
    width: int = 4
    terms: int = 12
    t: float = 0.5
    epsilon: float = 0.1
    r_max: int = 64
    first_seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--instances", type=int, default=DeskSweep.instances)
    ap.add_argument("--width", type=int, default=DeskSweep.width)
    ap.add_argument("--terms", type=int, default=DeskSweep.terms)
    ap.add_argument("--t", type=float, default=DeskSweep.t)
    ap.add_argument("--epsilon", type=float, default=DeskSweep.epsilon)
    ap.add_argument("--r-max", type=int, default=DeskSweep.r_max)
    ap.add_argument("--first-seed", type=int, default=DeskSweep.first_seed)
    ap.add_argument("--out", type=Path, help="write the per-cell CSV here")
    a = ap.parse_args()
    run = DeskSweep(a.instances, a.width, a.terms, a.t, a.epsilon, a.r_max, a.first_seed)

    seeds = range(run.first_seed, run.first_seed + run.instances)
    hams = [(f"random-{run.width}q-{run.terms}t-seed{s}", random_hamiltonian(run.width, run.terms, s)) for s in seeds]
    report = sweep_files(SweepConfig((run.t,), run.epsilon, run.r_max, STRATEGIES), hams)

    print(f"{'strategy':<10}{'mean CNOT':>12}{'geo mean':>12}{'mean r':>10}{'unmet':>8}")
    for s, row in report.summary().items():
        print(f"{s:<10}{row['mean_cnot']:>12.1f}{row['geometric_mean_cnot']:>12.1f}{row['mean_r']:>10.2f}{row['threshold_not_met']:>8}")
    lex = np.array([c.cnot_count for c in report.sweep if c.strategy == "lex"])
    tsp = np.array([c.cnot_count for c in report.sweep if c.strategy == "mctsp"])
    print(f"mctsp vs lex per instance: {np.sum(tsp < lex)} fewer, {np.sum(tsp == lex)} equal, {np.sum(tsp > lex)} more")
    if a.out:
        a.out.parent.mkdir(parents=True, exist_ok=True)
        a.out.write_bytes(report_emit(report, "csv"))


if __name__ == "__main__":
    main()
