"""Mechanism sweeps and significance-filtered correlation analysis.

A sweep synthesizes one record per grid mechanism, scores it against the
reference with both frameworks, and correlates each fault angle with each
score metric over all runs. With only three distinct values per angle the
correlations are qualitative trends, and every report marks them as such.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy import stats as _stats

from .gof_anderson import (IMS, AndersonConfig, AndersonScores, aggregate,
                           score_pair)
from .gof_tf import TfConfig, TfGof, record_tf_gof
from .signal import COMPONENTS, Record3C, align_records
from .source import (FocalMechanism, PointSourceScenario, SourceTimeFunction,
                     synth_fullspace)

PARAMETERS = ("strike", "dip", "rake")
METRICS = ("EG", "PG") + IMS

QUALITATIVE_TRENDS_NOTE = (
    "Each fault angle takes only three discrete values; correlations are "
    "qualitative trends, not effect-size estimates.")


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian product of per-angle value lists."""

    strikes: tuple[float, ...]
    dips: tuple[float, ...]
    rakes: tuple[float, ...]

    def __post_init__(self):
        for name in ("strikes", "dips", "rakes"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not vals:
                raise ValueError(f"{name} must not be empty")
            object.__setattr__(self, name, vals)
        for dip in self.dips:
            if not 0.0 <= dip <= 90.0:
                raise ValueError(f"dip {dip} outside [0, 90]")

    @property
    def size(self) -> int:
        return len(self.strikes) * len(self.dips) * len(self.rakes)

    def angles(self) -> list[tuple[float, float, float]]:
        """All (strike, dip, rake) triples in deterministic sorted order."""
        return list(product(sorted(self.strikes), sorted(self.dips),
                            sorted(self.rakes)))


def build_grid(center: FocalMechanism,
               deltas: tuple[float, float, float] = (5.0, 5.0, 10.0)) -> SweepGrid:
    """3 values per angle: center - delta, center, center + delta.

    A zero delta degenerates that angle to a single value. Strike and rake
    are periodic; a dip leaving [0, 90] is an error (raised on construction).
    """
    def around(c, d):
        return (c,) if d == 0 else (c - d, c, c + d)

    ds, dd, dr = deltas
    return SweepGrid(strikes=around(center.strike, ds),
                     dips=around(center.dip, dd),
                     rakes=around(center.rake, dr))


@dataclass
class RunResult:
    """One sweep run: the swept angles plus both score sets per component."""

    angles: tuple[float, float, float]
    fm: FocalMechanism | None = None
    synthetic: Record3C | None = None
    tf: dict[str, TfGof] | None = None
    anderson: dict[str, AndersonScores] | None = None
    error: str | None = None


def _execute_run(args) -> RunResult:
    (angles, scenario, reference, stf, a_cfg, t_cfg) = args
    try:
        fm = FocalMechanism(*angles)
        synthetic = synth_fullspace(scenario, fm, stf)
        rec_al, sim_al = align_records(reference, synthetic)
        anderson = score_pair(rec_al, sim_al, config=a_cfg)
        tf = record_tf_gof(rec_al, sim_al, t_cfg)
        return RunResult(angles=angles, fm=fm, synthetic=synthetic,
                         anderson=anderson, tf=tf)
    except Exception as exc:  # per-run failures are recorded, not fatal
        return RunResult(angles=angles, error=f"{type(exc).__name__}: {exc}")


def run_sweep(scenario: PointSourceScenario, grid: SweepGrid,
              reference: Record3C, *,
              stf: SourceTimeFunction | None = None,
              anderson_config: AndersonConfig | None = None,
              tf_config: TfConfig | None = None,
              workers: int = 1) -> list[RunResult]:
    """Execute every grid mechanism against the reference record.

    Results come back in grid order regardless of worker count, so repeated
    sweeps are bit-identical.
    """
    a_cfg = anderson_config if anderson_config is not None else AndersonConfig()
    t_cfg = tf_config if tf_config is not None else TfConfig()
    tasks = [(angles, scenario, reference, stf, a_cfg, t_cfg)
             for angles in grid.angles()]
    if workers <= 1:
        return [_execute_run(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_execute_run, tasks))


def pearson(x, y) -> float:
    """Pearson correlation coefficient; constant input is an error."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-D arrays of equal length")
    if x.size < 3:
        raise ValueError("need at least 3 samples")
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.dot(dx, dx))
    sy = float(np.dot(dy, dy))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("constant input: correlation undefined")
    r = float(np.dot(dx, dy) / math.sqrt(sx * sy))
    return min(1.0, max(-1.0, r))


def p_value(r: float, n: int) -> float:
    """Two-sided p from the t statistic t = r * sqrt((n-2)/(1-r^2))."""
    if n < 3:
        raise ValueError("need at least 3 samples")
    if not -1.0 <= r <= 1.0:
        raise ValueError(f"r={r} outside [-1, 1]")
    if abs(r) == 1.0:
        return 0.0
    t = r * math.sqrt((n - 2) / (1.0 - r * r))
    return float(2.0 * _stats.t.sf(abs(t), n - 2))


def metric_values(result: RunResult, component: str) -> dict[str, float]:
    """EG, PG and the ten mean-over-bands measure scores for one run."""
    out = {"EG": result.tf[component].eg, "PG": result.tf[component].pg}
    agg = aggregate(result.anderson[component])
    for im in IMS:
        out[im] = agg[im][1]
    return out


@dataclass(frozen=True)
class CorrelationTable:
    """Pearson r and p for each (fault angle x metric) cell, one component.

    NaN in ``r`` marks an undefined (constant-input) or blanked cell; the
    ``defined`` mask separates the two when masking is applied.
    """

    component: str
    parameters: tuple[str, ...]
    metrics: tuple[str, ...]
    r: np.ndarray
    p: np.ndarray
    n: int
    note: str = QUALITATIVE_TRENDS_NOTE

    def __post_init__(self):
        r = np.asarray(self.r, dtype=float)
        p = np.asarray(self.p, dtype=float)
        shape = (len(self.parameters), len(self.metrics))
        if r.shape != shape or p.shape != shape:
            raise ValueError("r/p shape must be (parameters, metrics)")
        finite = r[np.isfinite(r)]
        if finite.size and np.abs(finite).max() > 1.0:
            raise ValueError("|r| must not exceed 1")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "p", p)


def correlation_tables(results: list[RunResult]) -> dict[str, CorrelationTable]:
    """One table per component over the successful runs."""
    ok = [res for res in results if res.error is None]
    n = len(ok)
    angles = {param: np.array([res.angles[i] for res in ok])
              for i, param in enumerate(PARAMETERS)}
    tables = {}
    for comp in COMPONENTS:
        r = np.full((len(PARAMETERS), len(METRICS)), np.nan)
        p = np.full_like(r, np.nan)
        values = [metric_values(res, comp) for res in ok]
        for j, metric in enumerate(METRICS):
            y = np.array([v[metric] for v in values])
            for i, param in enumerate(PARAMETERS):
                try:
                    rij = pearson(angles[param], y)
                except ValueError:
                    continue  # undefined cell stays NaN
                r[i, j] = rij
                p[i, j] = p_value(rij, n)
        tables[comp] = CorrelationTable(component=comp, parameters=PARAMETERS,
                                        metrics=METRICS, r=r, p=p, n=n)
    return tables


def significant(table: CorrelationTable, alpha: float = 0.05) -> CorrelationTable:
    """Blank (NaN, not zero) every cell with p > alpha."""
    keep = np.isfinite(table.p) & (table.p <= alpha)
    r = np.where(keep, table.r, np.nan)
    return CorrelationTable(component=table.component,
                            parameters=table.parameters, metrics=table.metrics,
                            r=r, p=table.p, n=table.n, note=table.note)


@dataclass(frozen=True)
class GroupedScores:
    """Distribution of one metric across the runs sharing one angle value."""

    component: str
    parameter: str
    value: float
    metric: str
    scores: tuple[float, ...]

    @property
    def mean(self) -> float:
        return float(np.mean(self.scores))

    @property
    def min(self) -> float:
        return float(np.min(self.scores))

    @property
    def max(self) -> float:
        return float(np.max(self.scores))


def group_report(results: list[RunResult]) -> list[GroupedScores]:
    """Scores grouped by fault parameter value, per component and metric."""
    ok = [res for res in results if res.error is None]
    rows = []
    for comp in COMPONENTS:
        values = [(res.angles, metric_values(res, comp)) for res in ok]
        for i, param in enumerate(PARAMETERS):
            levels = sorted({angles[i] for angles, _ in values})
            for level in levels:
                group = [vals for angles, vals in values if angles[i] == level]
                for metric in METRICS:
                    rows.append(GroupedScores(
                        component=comp, parameter=param, value=level,
                        metric=metric,
                        scores=tuple(v[metric] for v in group)))
    return rows
