import csv
import io
import json

import numpy as np
import pytest

from hsim.bench import (
    CSV_COLUMNS,
    DEFAULT_NOISE_RATES,
    EvaluationReport,
    NoiseConfig,
    SweepConfig,
    accepted_trotter_number,
    noise_run,
    report_emit,
    report_to_dict,
    sweep,
    sweep_files,
)
from hsim.circuit import cnot_count, trotterize
from hsim.errors import InputError
from hsim.hamiltonian import Hamiltonian, random_hamiltonian
from hsim.ordering import STRATEGIES, order_by_name
from hsim.simulation import trotter_error

ISING = Hamiltonian.from_pairs([(-1.0, "ZZI"), (-1.0, "IZZ"), (0.7, "XII"), (0.7, "IXI"), (0.7, "IIX")])


class TestConfig:
    def test_defaults(self):
        cfg = SweepConfig((0.5,))
        assert cfg.epsilon == 0.1 and cfg.r_max == 64 and cfg.strategies == STRATEGIES

    @pytest.mark.parametrize(
        "kwargs", [dict(t_values=()), dict(t_values=(1,), epsilon=0), dict(t_values=(1,), r_max=0),
                   dict(t_values=(1,), strategies=("best",))]
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InputError):
            SweepConfig(**kwargs)

    def test_noise_config(self):
        assert NoiseConfig().p_values == DEFAULT_NOISE_RATES
        with pytest.raises(InputError):
            NoiseConfig(p_values=(1.5,))


class TestSweep:
    def test_commuting_accepts_r1(self, jw8):
        rep = sweep(SweepConfig((0.25, 0.5, 1.0)), jw8)
        assert len(rep.sweep) == 3 * len(STRATEGIES)
        assert all(c.r == 1 and c.threshold_met for c in rep.sweep)
        assert all(c.diamond_distance <= 1e-9 for c in rep.sweep)

    def test_mctsp_beats_magnitude_on_jw8(self, jw8):
        rep = sweep(SweepConfig((1.0,), strategies=("mag", "mctsp")), jw8)
        counts = {c.strategy: c.cnot_count for c in rep.sweep}
        assert counts["mctsp"] <= counts["mag"]
        assert counts["mctsp"] == 36

    def test_minimal_r_and_consistency(self):
        cfg = SweepConfig((0.5, 1.0), epsilon=0.05, strategies=("lex", "mctsp"))
        for cell in sweep(cfg, ISING).sweep:
            o = order_by_name(ISING, cell.strategy)
            assert cell.threshold_met and cell.diamond_distance < cfg.epsilon
            assert cell.cnot_count == cnot_count(trotterize(ISING, o, cell.t, cell.r))
            assert cell.diamond_distance == pytest.approx(trotter_error(ISING, o, cell.t, cell.r), abs=1e-12)
            if cell.r > 1:
                assert trotter_error(ISING, o, cell.t, cell.r - 1) >= cfg.epsilon

    def test_r_non_decreasing_in_t(self):
        h = random_hamiltonian(3, 6, 4)
        rep = sweep(SweepConfig((0.25, 0.5, 1.0), strategies=("lex",)), h)
        rs = [c.r for c in rep.sweep]
        assert rs == sorted(rs)

    def test_threshold_not_met_is_flagged(self):
        rep = sweep(SweepConfig((2.0,), epsilon=1e-6, r_max=3, strategies=("lex",)), ISING)
        (cell,) = rep.sweep
        assert cell.r == 3 and not cell.threshold_met and cell.error is None
        assert rep.unmet == [cell] and not rep.has_errors

    def test_capability_error_is_per_cell(self):
        big = Hamiltonian.from_pairs([(1.0, "Z" * 13), (0.5, "X" * 13)])
        rep = sweep_files(SweepConfig((1.0,), strategies=("lex",)), [("big", big), ("ising", ISING)])
        assert rep.has_errors
        assert rep.sweep[0].error and rep.sweep[0].cnot_count is None
        assert rep.sweep[1].error is None and rep.sweep[1].threshold_met

    def test_accepted_trotter_number(self):
        o = order_by_name(ISING, "lex")
        r, eps, cnots, met = accepted_trotter_number(ISING, o, 1.0, 0.1, 64)
        assert met and eps < 0.1 and r > 1

    def test_threads_do_not_change_results(self, monkeypatch):
        cfg = SweepConfig((0.5, 1.0), strategies=("lex", "mag", "mctsp"))
        monkeypatch.setenv("HSIM_THREADS", "1")
        a = report_emit(sweep(cfg, ISING), "json", "T")
        monkeypatch.setenv("HSIM_THREADS", "4")
        b = report_emit(sweep(cfg, ISING), "json", "T")
        assert a == b


class TestNoiseRun:
    def test_zero_noise(self):
        rep = noise_run(ISING, NoiseConfig(p_values=(0.0,), strategies=STRATEGIES))
        assert all(c.hellinger_infidelity <= 1e-10 for c in rep.noise)

    def test_default_grid_monotone_and_echoed(self):
        rep = noise_run(random_hamiltonian(4, 8, 2), NoiseConfig())
        assert rep.config["noise"]["p_values"] == DEFAULT_NOISE_RATES
        for s in ("lex", "mag", "mctsp"):
            inf = [c.hellinger_infidelity for c in rep.noise if c.strategy == s]
            assert len(inf) == 4 and all(a <= b + 1e-12 for a, b in zip(inf, inf[1:]))

    def test_width_cap_is_per_cell_error(self):
        h = Hamiltonian.from_pairs([(1.0, "ZZZZZZZ")])
        rep = noise_run(h, NoiseConfig(p_values=(0.01,), strategies=("lex",)))
        assert rep.has_errors and rep.noise[0].hellinger_distance is None


class TestReport:
    def _report(self):
        rep = sweep(SweepConfig((0.5, 1.0), strategies=("lex", "mctsp")), ISING, "ising")
        rep.extend(noise_run(ISING, NoiseConfig(p_values=(0.0, 0.01), strategies=("lex",)), "ising"))
        return rep

    def test_empty_json(self):
        d = json.loads(report_emit(EvaluationReport(), "json", "T"))
        assert d["schema"] == 1 and d["sweep"] == [] and d["noise"] == [] and d["timestamp"] == "T"
        assert d["tool"] == "hsim" and "version" in d

    def test_empty_csv_has_header(self):
        rows = list(csv.reader(io.StringIO(report_emit(EvaluationReport(), "csv").decode())))
        assert rows == [list(CSV_COLUMNS)]

    def test_json_round_trip_exact(self):
        rep = self._report()
        d = json.loads(report_emit(rep, "json", "T"))
        for cell, row in zip(rep.sweep, d["sweep"]):
            assert row["diamond_distance"] == cell.diamond_distance
            assert row["cnot_count"] == cell.cnot_count and row["r"] == cell.r
        for cell, row in zip(rep.noise, d["noise"]):
            assert row["hellinger_infidelity"] == cell.hellinger_infidelity

    def test_csv_rows(self):
        rep = self._report()
        rows = list(csv.DictReader(io.StringIO(report_emit(rep, "csv").decode())))
        assert len([r for r in rows if r["kind"] == "sweep"]) == 2 * 2
        assert len([r for r in rows if r["kind"] == "noise"]) == 2
        assert float(rows[0]["diamond_distance"]) == rep.sweep[0].diamond_distance
        assert rows[-1]["diamond_distance"] == ""

    def test_unknown_format(self):
        with pytest.raises(InputError):
            report_emit(EvaluationReport(), "xml")

    def test_deterministic_modulo_timestamp(self):
        a = report_to_dict(self._report(), "one")
        b = report_to_dict(self._report(), "two")
        a.pop("timestamp"), b.pop("timestamp")
        assert a == b

    def test_summary(self):
        s = self._report().summary()
        assert set(s) == {"lex", "mctsp"}
        lex = s["lex"]
        assert lex["cells"] == 2 and lex["geometric_mean_cnot"] <= lex["mean_cnot"]
        assert np.isfinite(lex["mean_r"])
