import itertools
import json
from fractions import Fraction

import pytest

from maskquery import (
    BitString,
    ExperimentSpec,
    FigureSeries,
    MaskVariant,
    emit_figure1,
    emit_figure3,
    make_oracle,
    montecarlo_expected_queries,
    t_cs,
    t_q,
)
from maskquery.algorithms import classical_sequential_search
from maskquery.harness import read_figure_csv, read_figure_exact


class TestExperimentSpec:
    def test_roundtrip(self):
        spec = ExperimentSpec(n=8, m=2, strategy="quantum", runs=100, seed=7,
                              variant="and", trial_source="fast")
        assert ExperimentSpec.from_json(spec.to_json()) == spec

    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentSpec(n=8, m=8, strategy="quantum", runs=10, seed=0)
        with pytest.raises(ValueError):
            ExperimentSpec(n=8, m=2, strategy="quantum", runs=0, seed=0)


class TestMonteCarlo:
    def test_quantum_m1_mean(self):
        spec = ExperimentSpec(n=6, m=1, strategy="quantum", runs=30000, seed=1)
        stats = montecarlo_expected_queries(spec)
        assert abs(stats.mean - 2.0) < 3 * stats.std_error + 1e-9
        assert stats.runs == 30000
        assert stats.mean == stats.total_queries / stats.runs

    def test_quantum_m3_mean(self):
        spec = ExperimentSpec(n=6, m=3, strategy="quantum", runs=30000, seed=2)
        stats = montecarlo_expected_queries(spec)
        assert abs(stats.mean - float(t_q(3))) < 3 * stats.std_error + 1e-9

    def test_sequential_exhaustive_matches_formula(self):
        # all 10 weight-9 masks at n=10: deterministic counts, exact mean 6.4
        n, m = 10, 9
        total = 0
        for positions in itertools.combinations(range(1, n + 1), m):
            s = BitString.from_positions(n, positions)
            oracle = make_oracle(n, s, MaskVariant.AND_MASK, "canonical")
            total += classical_sequential_search(oracle, n, m).queries
        assert Fraction(total, n) == t_cs(n, m) == Fraction(-1, 10) + Fraction(3, 2) + 5

    def test_deterministic_given_seed(self):
        spec = ExperimentSpec(n=6, m=2, strategy="quantum", runs=500, seed=42)
        first = montecarlo_expected_queries(spec)
        second = montecarlo_expected_queries(spec)
        assert first == second

    def test_std_error_scaling(self):
        # doubling runs shrinks the standard error by about sqrt(2)
        base = ExperimentSpec(n=6, m=2, strategy="quantum", runs=40000, seed=3)
        double = ExperimentSpec(n=6, m=2, strategy="quantum", runs=80000, seed=3)
        ratio = montecarlo_expected_queries(base).std_error / \
            montecarlo_expected_queries(double).std_error
        assert abs(ratio - 2**0.5) < 0.1 * 2**0.5

    def test_fixed_mask(self):
        spec = ExperimentSpec(n=5, m=1, strategy="binary", runs=50, seed=4,
                              s="01000")
        stats = montecarlo_expected_queries(spec)
        assert stats.mean == 4.0  # 1 + ceil(log2 5), deterministic
        assert stats.std_error == 0.0


class TestFigures:
    def test_figure1_rows(self, tmp_path):
        path = str(tmp_path / "fig1.csv")
        series = emit_figure1(m_max=40, path=path)
        points = dict(series.curves["t_q"])
        assert points[1] == 2.0
        assert points[2] == pytest.approx(2.666667)
        approx = dict(series.curves["t_q_approx"])
        assert approx[1] == 2.0
        assert approx[2] == 3.0
        for m in range(2, 41):
            assert approx[m] - points[m] <= 1.0 + 1e-9

    def test_figure1_exact_column(self, tmp_path):
        path = str(tmp_path / "fig1.csv")
        emit_figure1(m_max=20, path=path)
        exact = read_figure_exact(path, "t_q_exact")
        assert exact[:3] == [Fraction(2), Fraction(8, 3), Fraction(22, 7)]
        assert exact == [t_q(m) for m in range(1, 21)]

    def test_figure3_dominance_and_endpoints(self, tmp_path):
        path = str(tmp_path / "fig3.csv")
        series = emit_figure3(n=200, path=path)
        cb = dict(series.curves["t_cb"])
        cs = dict(series.curves["t_cs"])
        q = dict(series.curves["t_q"])
        assert cb[1] == 9.0  # 1 + ceil(log2 200)
        assert cs[199] == pytest.approx(float(-Fraction(1, 200) + Fraction(3, 2) + 100))
        assert set(q) == set(range(1, 200))
        for m in range(1, 200):
            assert q[m] < cb[m] and q[m] < cs[m]

    def test_csv_roundtrip_and_determinism(self, tmp_path):
        first_path = str(tmp_path / "a.csv")
        second_path = str(tmp_path / "b.csv")
        series = emit_figure1(m_max=25, path=first_path)
        again = emit_figure1(m_max=25, path=second_path)
        assert read_figure_csv(first_path) == series == again
        with open(first_path, "rb") as fa, open(second_path, "rb") as fb:
            assert fa.read() == fb.read()

    def test_manifest_written(self, tmp_path):
        path = str(tmp_path / "fig3.csv")
        emit_figure3(n=24, path=path)
        with open(path + ".manifest.json") as handle:
            manifest = json.load(handle)
        assert manifest["spec"] == {"figure": 3, "n": 24}
        assert "version" in manifest

    def test_series_validation(self):
        with pytest.raises(ValueError):
            FigureSeries({"bad": [(2, 1.0), (1, 2.0)]})
        with pytest.raises(ValueError):
            FigureSeries({"bad": [(1, -3.0)]})
