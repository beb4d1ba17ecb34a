"""Strategy tournaments: Trotter-number sweeps and noisy runs, plus report output.

Reports are versioned (``"schema": 1``). JSON reports embed the full
configuration and tool version. The only field that varies between identical
runs is ``timestamp``. CSV reports have one row per cell with the columns in
``CSV_COLUMNS``; columns that do not apply to a row are left empty.

``HSIM_THREADS`` (default 1) caps the worker threads used to evaluate cells.
Results are assembled in cell order, independent of completion order.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Optional, Sequence

import numpy as np

from hsim.circuit import cnot_count, trotterize
from hsim.errors import CapabilityError, InputError
from hsim.hamiltonian import Hamiltonian
from hsim.ordering import STRATEGIES, order_by_name
from hsim.simulation import (
    circuit_unitary,
    diamond_distance_unitary,
    exact_evolution,
    hellinger_distance,
    hellinger_infidelity,
    ideal_distribution,
    initial_state,
    noisy_distribution,
)

SCHEMA_VERSION = 1
DEFAULT_NOISE_RATES = (0.001, 0.005, 0.01, 0.02)

CSV_COLUMNS = (
    "kind",
    "source",
    "strategy",
    "t",
    "r",
    "diamond_distance",
    "cnot_count",
    "threshold_met",
    "p",
    "hellinger_distance",
    "hellinger_infidelity",
    "hellinger_infidelity_literal",
    "hellinger_infidelity_vs_exact",
    "error",
)


def _check_strategies(strategies):
    unknown = [s for s in strategies if s not in STRATEGIES]
    if unknown:
        raise InputError(f"unknown strategies {unknown}; choose from {', '.join(STRATEGIES)}")


@dataclass(frozen=True)
class SweepConfig:
    t_values: tuple[float, ...]
    epsilon: float = 0.1
    r_max: int = 64
    strategies: tuple[str, ...] = STRATEGIES
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "t_values", tuple(float(t) for t in self.t_values))
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if not self.t_values:
            raise InputError("t_values must be non-empty")
        if not self.epsilon > 0:
            raise InputError("epsilon must be positive")
        if self.r_max < 1:
            raise InputError("r_max must be >= 1")
        _check_strategies(self.strategies)


@dataclass(frozen=True)
class NoiseConfig:
    p_values: tuple[float, ...] = DEFAULT_NOISE_RATES
    strategies: tuple[str, ...] = ("lex", "mag", "mctsp")
    init: str = "ghz-like"
    t: float = 1.0
    r: int = 1
    noise_model: str = "pair"
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "p_values", tuple(float(p) for p in self.p_values))
        object.__setattr__(self, "strategies", tuple(self.strategies))
        if any(not 0.0 <= p <= 1.0 for p in self.p_values):
            raise InputError("noise probabilities must lie in [0, 1]")
        _check_strategies(self.strategies)


@dataclass
class SweepCell:
    source: str
    strategy: str
    t: float
    r: int
    diamond_distance: Optional[float]
    cnot_count: Optional[int]
    threshold_met: bool
    error: Optional[str] = None


@dataclass
class NoiseCell:
    source: str
    strategy: str
    p: float
    t: float
    r: int
    cnot_count: Optional[int]
    hellinger_distance: Optional[float]
    hellinger_infidelity: Optional[float]
    hellinger_infidelity_literal: Optional[float]
    hellinger_infidelity_vs_exact: Optional[float]
    error: Optional[str] = None


@dataclass
class EvaluationReport:
    config: dict = field(default_factory=dict)
    sweep: list[SweepCell] = field(default_factory=list)
    noise: list[NoiseCell] = field(default_factory=list)

    @property
    def has_errors(self) -> bool:
        return any(c.error for c in self.sweep) or any(c.error for c in self.noise)

    @property
    def unmet(self) -> list[SweepCell]:
        return [c for c in self.sweep if not c.threshold_met and not c.error]

    def extend(self, other: EvaluationReport):
        self.sweep.extend(other.sweep)
        self.noise.extend(other.noise)

    def summary(self) -> dict:
        """Per-strategy CNOT statistics over accepted sweep cells.

        Both the arithmetic and the geometric mean are reported; the latter is
        the headline number for relative comparisons across instances.
        """
        out = {}
        for s in dict.fromkeys(c.strategy for c in self.sweep):
            counts = [c.cnot_count for c in self.sweep if c.strategy == s and c.cnot_count is not None]
            rs = [c.r for c in self.sweep if c.strategy == s and not c.error]
            if not counts:
                continue
            out[s] = {
                "cells": len(counts),
                "mean_cnot": float(np.mean(counts)),
                "geometric_mean_cnot": float(np.exp(np.mean(np.log(np.maximum(counts, 1))))),
                "mean_r": float(np.mean(rs)),
                "threshold_not_met": sum(1 for c in self.sweep if c.strategy == s and not c.threshold_met),
            }
        return out


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("HSIM_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    n = _threads()
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def accepted_trotter_number(h: Hamiltonian, order, t: float, epsilon: float, r_max: int, exact=None):
    """Smallest r in 1..r_max with diamond distance < epsilon, by linear scan.

    Returns (r, distance, cnot_count, met). When no r qualifies the r_max
    circuit is reported with ``met=False``.
    """
    exact = exact_evolution(h, t) if exact is None else exact
    for r in range(1, r_max + 1):
        c = trotterize(h, order, t, r)
        eps = diamond_distance_unitary(circuit_unitary(c), exact)
        if eps < epsilon:
            return r, eps, cnot_count(c), True
    return r_max, eps, cnot_count(c), False


def sweep(config: SweepConfig, h: Hamiltonian, source: str = "") -> EvaluationReport:
    orders = {s: order_by_name(h, s, config.seed) for s in config.strategies}
    cells = [(s, t) for s in config.strategies for t in config.t_values]
    exact = {}

    def run(cell):
        s, t = cell
        try:
            if t not in exact:
                exact[t] = exact_evolution(h, t)
            r, eps, cnots, met = accepted_trotter_number(h, orders[s], t, config.epsilon, config.r_max, exact[t])
            return SweepCell(source, s, t, r, eps, cnots, met)
        except CapabilityError as e:
            return SweepCell(source, s, t, 0, None, None, False, error=str(e))

    report = EvaluationReport(config={"sweep": asdict(config)})
    report.sweep = _map(run, cells)
    return report


def noise_run(h: Hamiltonian, config: NoiseConfig, source: str = "") -> EvaluationReport:
    report = EvaluationReport(config={"noise": asdict(config)})
    try:
        psi = initial_state(config.init, h.width)
        exact_probs = ideal_distribution(exact_evolution(h, config.t), psi)
    except CapabilityError as e:
        report.noise = [
            NoiseCell(source, s, p, config.t, config.r, None, None, None, None, None, error=str(e))
            for s in config.strategies
            for p in config.p_values
        ]
        return report

    def run(cell):
        s, p = cell
        try:
            c = trotterize(h, order_by_name(h, s, config.seed), config.t, config.r)
            ref = ideal_distribution(circuit_unitary(c), psi)
            probs = noisy_distribution(c, psi, p, config.noise_model)
            return NoiseCell(
                source,
                s,
                p,
                config.t,
                config.r,
                cnot_count(c),
                hellinger_distance(probs, ref),
                hellinger_infidelity(probs, ref),
                hellinger_infidelity(probs, ref, convention="literal"),
                hellinger_infidelity(probs, exact_probs),
            )
        except CapabilityError as e:
            return NoiseCell(source, s, p, config.t, config.r, None, None, None, None, None, error=str(e))

    report.noise = _map(run, [(s, p) for s in config.strategies for p in config.p_values])
    return report


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def report_to_dict(report: EvaluationReport, timestamp: str | None = None) -> dict:
    from hsim import __version__

    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return {
        "schema": SCHEMA_VERSION,
        "tool": "hsim",
        "version": __version__,
        "timestamp": timestamp,
        "config": report.config,
        "sweep": [{k: _clean(v) for k, v in asdict(c).items()} for c in report.sweep],
        "noise": [{k: _clean(v) for k, v in asdict(c).items()} for c in report.noise],
        "summary": report.summary(),
    }


def report_emit(report: EvaluationReport, fmt: str = "json", timestamp: str | None = None) -> bytes:
    if fmt == "json":
        return (json.dumps(report_to_dict(report, timestamp), indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for c in report.sweep:
            w.writerow({"kind": "sweep", **{k: _fmt(v) for k, v in asdict(c).items()}})
        for c in report.noise:
            w.writerow({"kind": "noise", **{k: _fmt(v) for k, v in asdict(c).items()}})
        return buf.getvalue().encode("utf-8")
    raise InputError(f"unknown report format {fmt!r}")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return v


def sweep_files(config: SweepConfig, hamiltonians: Sequence[tuple[str, Hamiltonian]]) -> EvaluationReport:
    report = EvaluationReport(config={"sweep": asdict(config), "inputs": [name for name, _ in hamiltonians]})
    for name, h in hamiltonians:
        report.extend(sweep(config, h, name))
    return report
