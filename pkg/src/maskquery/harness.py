"""Experiment driver: seeded Monte Carlo runs and figure-data CSV emitters.

Every CSV gets a JSON manifest written alongside it (same path plus
`.manifest.json`) recording the generating spec, the seed, and the library
version, so any data file can be regenerated byte for byte.
"""
from __future__ import annotations

import csv
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .algorithms import recover_with_budget
from .analytics import t_cb, t_cs, t_q, t_q_approx
from .bitstring import BitString
from .oracle import MaskVariant, MaskedOracle, QueryStats, StatsAccumulator


@dataclass
class ExperimentSpec:
    """Complete, reproducible description of one Monte Carlo experiment."""

    n: int
    m: int
    strategy: str
    runs: int
    seed: int
    variant: str = "and"
    trial_source: str = "fast"
    s: Optional[str] = None  # fixed mask text; None = draw a fresh mask per run
    output: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentSpec":
        return cls(**json.loads(text))

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if not 1 <= self.m <= self.n - 1:
            raise ValueError(f"need 1 <= m <= n-1, got n={self.n}, m={self.m}")


def _mask_weight(spec: ExperimentSpec) -> int:
    # spec.m counts the bits the oracle actually reads; for the OR variant
    # those are the zero-bits of the mask.
    if spec.variant == "or":
        return spec.n - spec.m
    return spec.m


def _draw_mask(n: int, weight: int, rng: np.random.Generator) -> BitString:
    positions = rng.choice(n, size=weight, replace=False)
    return BitString.from_positions(n, (int(p) + 1 for p in positions))


def montecarlo_expected_queries(spec: ExperimentSpec) -> QueryStats:
    """Mean and standard error of the query count over `spec.runs` runs.

    Each run draws a fresh uniform mask of the requested weight and a fresh
    labeling seed, so the estimate averages over the whole problem ensemble.
    Deterministic for a fixed spec (seed included).
    """
    rng = np.random.default_rng(spec.seed)
    variant = MaskVariant(spec.variant)
    weight = _mask_weight(spec)
    fixed_mask = BitString.parse(spec.s) if spec.s is not None else None
    acc = StatsAccumulator()
    for _ in range(spec.runs):
        mask = fixed_mask if fixed_mask is not None else _draw_mask(spec.n, weight, rng)
        labeling_seed = int(rng.integers(0, 2**63))
        oracle = MaskedOracle(spec.n, mask, variant, "seeded", labeling_seed)
        result = recover_with_budget(oracle, spec.n, spec.m, spec.strategy,
                                     rng=rng, trial_source=spec.trial_source,
                                     record_transcript=False)
        acc.add(result.queries)
    return acc.to_stats()


@dataclass
class FigureSeries:
    """Labeled curves of (m, value) points, as plotted in the figure data."""

    curves: Dict[str, List[Tuple[int, float]]] = field(default_factory=dict)

    def __post_init__(self):
        for label, points in self.curves.items():
            ms = [m for m, _ in points]
            if any(b <= a for a, b in zip(ms, ms[1:])):
                raise ValueError(f"curve {label!r}: m values must strictly increase")
            for m, value in points:
                if not math.isfinite(value) or value <= 0:
                    raise ValueError(f"curve {label!r}: bad value {value} at m={m}")


def _format_float(value: float) -> str:
    return f"{value:.6f}"


def _allow_big_int_text() -> None:
    # Reduced rationals of the expected-trials recurrence run to tens of
    # thousands of digits; raise the int<->str guard enough to serialize them.
    if sys.get_int_max_str_digits() < 1_000_000:
        sys.set_int_max_str_digits(1_000_000)


def _format_exact(value: Fraction) -> str:
    _allow_big_int_text()
    return f"{value.numerator}/{value.denominator}"


def _write_manifest(path: str, spec: dict) -> None:
    manifest = {"spec": spec, "version": __version__}
    with open(path + ".manifest.json", "w") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _write_figure_csv(path: str, header: List[str], rows: List[List[str]],
                      manifest_spec: dict) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    _write_manifest(path, manifest_spec)


def emit_figure1(m_max: int = 500, path: str = "figure1.csv") -> FigureSeries:
    """Expected quantum queries and the 2 + log2(m) approximation, m = 1..m_max.

    Columns: m, t_q (6 decimals), t_q_exact (num/den), t_q_approx.
    """
    exact_curve = []
    approx_curve = []
    rows = []
    for m in range(1, m_max + 1):
        exact = t_q(m)
        approx = t_q_approx(m)
        t_text = _format_float(float(exact))
        a_text = _format_float(approx)
        exact_curve.append((m, float(t_text)))
        approx_curve.append((m, float(a_text)))
        rows.append([str(m), t_text, _format_exact(exact), a_text])
    series = FigureSeries({"t_q": exact_curve, "t_q_approx": approx_curve})
    _write_figure_csv(path, ["m", "t_q", "t_q_exact", "t_q_approx"], rows,
                      {"figure": 1, "m_max": m_max})
    return series


def emit_figure3(n: int = 200, path: str = "figure3.csv") -> FigureSeries:
    """Quantum vs the two adapted classical searches for m = 1..n-1.

    Columns: m, t_q, t_cb, t_cs plus exact num/den columns for the rationals.
    """
    q_curve, cb_curve, cs_curve = [], [], []
    rows = []
    for m in range(1, n):
        q = t_q(m)
        cb = t_cb(n, m)
        cs = t_cs(n, m)
        q_text, cs_text = _format_float(float(q)), _format_float(float(cs))
        q_curve.append((m, float(q_text)))
        cb_curve.append((m, float(cb)))
        cs_curve.append((m, float(cs_text)))
        rows.append([str(m), q_text, str(cb), cs_text,
                     _format_exact(q), _format_exact(cs)])
    series = FigureSeries({"t_q": q_curve, "t_cb": cb_curve, "t_cs": cs_curve})
    _write_figure_csv(path, ["m", "t_q", "t_cb", "t_cs", "t_q_exact", "t_cs_exact"],
                      rows, {"figure": 3, "n": n})
    return series


def read_figure_csv(path: str) -> FigureSeries:
    """Parse an emitted figure CSV back into its FigureSeries."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        value_columns = [name for name in header[1:] if not name.endswith("_exact")]
        curves: Dict[str, List[Tuple[int, float]]] = {name: [] for name in value_columns}
        for row in reader:
            m = int(row[0])
            for name in value_columns:
                curves[name].append((m, float(row[header.index(name)])))
    return FigureSeries(curves)


def read_figure_exact(path: str, column: str) -> List[Fraction]:
    """Exact rational column of an emitted figure CSV, in row order."""
    _allow_big_int_text()
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        idx = header.index(column)
        return [Fraction(*map(int, row[idx].split("/"))) for row in reader]
