"""Seeded Monte-Carlo harness: stretch matrices, coverage curves, crossing rates.

The harness repeats the discovery protocol from random starts inside the
giant component, tabulates (true shortest-path length, discovered route
length) for every ordered walker pair into a stretch matrix with an INF
bucket for undiscovered routes, and writes plot-ready CSV/JSON reports.
Every run draws its own RNG streams from (master seed, run index), so runs
can execute in a worker pool and still merge to byte-identical results.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .coverage import (
    CrossingBoundParams,
    crossing_probability_bound,
    expected_edge_fraction,
)
from .graph import Graph, UNREACHABLE, bfs_distances, degree_moments, giant_component
from .rwsp import routing_tree, run_rwsp
from .walker import crossing_time, run_walk, walker_seed

# Stream tag for start-node sampling; must not collide with walker ids.
_START_STREAM = 0xBEEF


class InvariantViolation(RuntimeError):
    """A recorded result contradicts a structural guarantee (routing bug)."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: h walkers, budget fraction beta, repeated ``runs`` times.

    The walk budget is ``floor(beta * n)`` steps, or ``floor(beta * n / h)``
    with ``rescale_budget`` (total crawl effort held constant across h
    sweeps).  Start nodes are drawn uniformly without replacement from the
    giant component unless ``fixed_starts`` pins them.
    """

    seed: int
    h: int = 4
    beta: float = 0.025
    runs: int = 200
    rescale_budget: bool = False
    fixed_starts: tuple[int, ...] | None = None
    workers: int = 1
    graph_source: str | None = None

    def __post_init__(self):
        if self.h < 2:
            raise ConfigError("h must be at least 2")
        if not 0 < self.beta < 1:
            raise ConfigError("beta must lie in (0, 1)")
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.fixed_starts is not None:
            object.__setattr__(self, "fixed_starts", tuple(int(s) for s in self.fixed_starts))
            if len(self.fixed_starts) != self.h:
                raise ConfigError("fixed_starts must list exactly h nodes")

    def budget(self, n: int) -> int:
        b = int(self.beta * n / self.h) if self.rescale_budget else int(self.beta * n)
        if b < 1:
            raise ConfigError(f"budget fraction beta={self.beta} yields zero steps on n={n}")
        return b


class StretchMatrix:
    """Joint counts of (true distance, discovered distance) over walker pairs.

    Rows index the true shortest-path length, columns the discovered route
    length; both axes run 1..D plus a trailing INF bucket (row: endpoints
    disconnected in the graph, column: no route discovered).  For finite
    cells the column can never be below the row: a discovered route is a
    path in the real graph.
    """

    def __init__(self, counts: np.ndarray):
        counts = np.asarray(counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1] or counts.shape[0] < 1:
            raise ValueError("counts must be a square matrix with an INF bucket")
        self.counts = counts
        self._check()

    def _check(self) -> None:
        d = self.finite_limit
        finite = self.counts[:d, :d]
        bad = np.argwhere(np.tril(finite, k=-1) > 0)
        if bad.size:
            r, c = bad[0]
            raise InvariantViolation(
                f"discovered distance {c + 1} beats true distance {r + 1}"
            )
        if self.counts[d, :d].sum() > 0:
            raise InvariantViolation("finite route recorded for unreachable endpoints")

    @classmethod
    def from_pairs(cls, pairs) -> "StretchMatrix":
        """Build from (d_true, d_discovered) records; UNREACHABLE marks INF."""
        tally = Counter()
        limit = 0
        for dt, dd in pairs:
            dt, dd = int(dt), int(dd)
            for v in (dt, dd):
                if v != UNREACHABLE and v < 1:
                    raise InvariantViolation(f"invalid recorded distance {v}")
            limit = max(limit, dt if dt != UNREACHABLE else 0, dd if dd != UNREACHABLE else 0)
            tally[(dt, dd)] += 1
        counts = np.zeros((limit + 1, limit + 1), dtype=np.int64)
        for (dt, dd), k in tally.items():
            r = limit if dt == UNREACHABLE else dt - 1
            c = limit if dd == UNREACHABLE else dd - 1
            counts[r, c] = k
        return cls(counts)

    @property
    def finite_limit(self) -> int:
        """Largest finite distance on either axis (0 when only INF exists)."""
        return self.counts.shape[0] - 1

    @property
    def labels(self) -> list[str]:
        return [str(d) for d in range(1, self.finite_limit + 1)] + ["INF"]

    @property
    def total_pairs(self) -> int:
        return int(self.counts.sum())

    @property
    def marginal_true_histogram(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    def row_normalized(self) -> np.ndarray:
        sums = self.counts.sum(axis=1, keepdims=True)
        out = np.zeros(self.counts.shape, dtype=np.float64)
        np.divide(self.counts, sums, out=out, where=sums > 0)
        return out

    def summary(self) -> dict:
        """Optimality fractions overall and per true-distance row.

        ``fraction_optimal`` / ``fraction_within_one`` are taken over finite
        pairs; ``inf_fraction`` over all recorded pairs.
        """
        d = self.finite_limit
        finite = self.counts[:d, :d]
        total = self.total_pairs
        finite_total = int(finite.sum())
        optimal = int(np.trace(finite))
        within = optimal + sum(
            int(finite[r, r + 1]) for r in range(d - 1)
        )
        per_row = {}
        for r in range(d):
            row_total = int(self.counts[r].sum())
            row_finite = int(finite[r].sum())
            if row_total == 0:
                continue
            row_opt = int(finite[r, r])
            row_within = row_opt + (int(finite[r, r + 1]) if r + 1 < d else 0)
            per_row[r + 1] = {
                "pairs": row_total,
                "finite": row_finite,
                "fraction_optimal": row_opt / row_finite if row_finite else 0.0,
                "fraction_within_one": row_within / row_finite if row_finite else 0.0,
                "inf_fraction": (row_total - row_finite) / row_total,
            }
        return {
            "total_pairs": total,
            "finite_pairs": finite_total,
            "inf_fraction": (total - finite_total) / total if total else 0.0,
            "unreachable_true_pairs": int(self.counts[d].sum()),
            "fraction_optimal": optimal / finite_total if finite_total else 0.0,
            "fraction_within_one": within / finite_total if finite_total else 0.0,
            "per_row": per_row,
        }


@dataclass(frozen=True)
class CoverageValidationRow:
    """Empirical vs predicted covered-edge fraction at one tau grid point."""

    tau: float
    empirical_mean: float
    empirical_std: float
    predicted: float


@dataclass(frozen=True)
class CrossingRateResult:
    """Measured non-crossing rate for walker pairs plus the analytic bound.

    ``gamma_bar`` is the closed-form covered-edge fraction the bound is
    evaluated at; ``empirical_gamma`` is the measured mean of the first
    walker's realized fraction, kept alongside for diagnosing gaps between
    the idealized curve and real walks.
    """

    runs: int
    budget: int
    non_crossing_rate: float
    gamma_bar: float
    empirical_gamma: float
    c: float
    delta: int
    exponent: int
    bound: float
    conditional_hit_rate: float
    conditional_samples: int


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    budget: int
    graph_n: int
    graph_m: int
    stretch: StretchMatrix
    summary: dict
    coverage: list[CoverageValidationRow] | None = None
    crossing: CrossingRateResult | None = None
    wall_time_s: float = 0.0


def _seed_tuple(seed) -> tuple[int, ...]:
    if isinstance(seed, (int, np.integer)):
        return (int(seed),)
    return tuple(int(s) for s in seed)


def _start_pool(g: Graph, cfg: ExperimentConfig) -> np.ndarray:
    """Node ids eligible as starts: the giant component of ``g``."""
    if cfg.fixed_starts is not None:
        for s in cfg.fixed_starts:
            if not 0 <= s < g.n or g.degree(s) < 1:
                raise ConfigError(f"fixed start {s} is invalid or isolated")
        return np.asarray(cfg.fixed_starts, dtype=np.int64)
    _, mapping = giant_component(g)
    members = np.flatnonzero(mapping >= 0)
    if members.size < cfg.h:
        raise ConfigError(
            f"giant component has {members.size} nodes; need at least h={cfg.h}"
        )
    return members


def _draw_starts(cfg: ExperimentConfig, members: np.ndarray, run_index: int) -> list[int]:
    if cfg.fixed_starts is not None:
        return list(cfg.fixed_starts)
    rng = np.random.default_rng(_seed_tuple(cfg.seed) + (run_index, _START_STREAM))
    return [int(s) for s in rng.choice(members, size=cfg.h, replace=False)]


def _one_run_records(g: Graph, cfg: ExperimentConfig, budget: int, members: np.ndarray, run_index: int):
    """Ordered-pair (d_true, d_discovered) records for one protocol run."""
    starts = _draw_starts(cfg, members, run_index)
    run = run_rwsp(g, starts, budget, seed=_seed_tuple(cfg.seed) + (run_index,))
    records = []
    for i in range(cfg.h):
        true_dist = bfs_distances(g, starts[i])
        tree = routing_tree(run.unions[i], starts[i])
        for j in range(cfg.h):
            if j == i:
                continue
            dt = int(true_dist[starts[j]])
            if j in run.states[i].known_peers:
                dd = int(tree.depth[starts[j]])
            else:
                dd = UNREACHABLE
            if dd != UNREACHABLE and (dt == UNREACHABLE or dd < dt):
                raise InvariantViolation(
                    f"run {run_index}: discovered {dd} hops vs true {dt} for pair ({i},{j})"
                )
            records.append((dt, dd))
    return records


_POOL_CTX: tuple | None = None


def _pool_init(g, cfg, budget, members):
    global _POOL_CTX
    _POOL_CTX = (g, cfg, budget, members)


def _pool_run(run_index: int):
    g, cfg, budget, members = _POOL_CTX
    return _one_run_records(g, cfg, budget, members, run_index)


def run_experiment(g: Graph, cfg: ExperimentConfig) -> ExperimentResult:
    """Monte-Carlo stretch evaluation of the discovery protocol.

    Each run samples ``h`` distinct starts (giant component, or
    ``cfg.fixed_starts``), executes the protocol, and records
    (true shortest-path length, discovered route length) for every ordered
    walker pair; undiscovered routes land in the INF column.  Results are
    identical for any ``workers`` count: runs depend only on
    (seed, run index) and merge commutatively.
    """
    t0 = time.perf_counter()
    members = _start_pool(g, cfg)
    budget = cfg.budget(g.n)
    if cfg.workers > 1:
        with ProcessPoolExecutor(
            max_workers=cfg.workers, initializer=_pool_init, initargs=(g, cfg, budget, members)
        ) as pool:
            per_run = list(pool.map(_pool_run, range(cfg.runs), chunksize=8))
    else:
        per_run = [
            _one_run_records(g, cfg, budget, members, r) for r in range(cfg.runs)
        ]
    pairs = [rec for records in per_run for rec in records]
    stretch = StretchMatrix.from_pairs(pairs)
    return ExperimentResult(
        config=cfg,
        budget=budget,
        graph_n=g.n,
        graph_m=g.m,
        stretch=stretch,
        summary=stretch.summary(),
        wall_time_s=time.perf_counter() - t0,
    )


def coverage_validation(g: Graph, cfg: ExperimentConfig, taus) -> list[CoverageValidationRow]:
    """Single-walker covered-edge fractions versus the closed-form curve.

    Runs ``cfg.runs`` independent walks from giant-component starts, reads
    ``|E(t, i)| / 2m`` off each trace at ``t = round(tau * n)`` for every grid
    point, and pairs the sample mean/std with the prediction.  ``tau = 0``
    rows are the boundary case: zero edges before the walk exists.
    """
    taus = [float(t) for t in taus]
    if not taus:
        raise ConfigError("tau grid must be non-empty")
    if any(t < 0 or t >= 1 for t in taus):
        raise ConfigError("tau grid values must lie in [0, 1)")
    members = _start_pool(g, cfg)
    steps_at = [int(round(t * g.n)) for t in taus]
    budget = max(1, max(steps_at))
    moments = degree_moments(g)
    two_m = 2.0 * g.m
    samples = np.zeros((cfg.runs, len(taus)), dtype=np.float64)
    for r in range(cfg.runs):
        if cfg.fixed_starts is not None:
            start = cfg.fixed_starts[0]
        else:
            rng = np.random.default_rng(_seed_tuple(cfg.seed) + (r, _START_STREAM))
            start = int(rng.choice(members))
        trace, _ = run_walk(g, start, budget, seed=_seed_tuple(cfg.seed) + (r,))
        for k, t in enumerate(steps_at):
            samples[r, k] = 0.0 if t == 0 else trace.edge_count_per_step[t - 1] / two_m
    rows = []
    for k, tau in enumerate(taus):
        col = samples[:, k]
        rows.append(
            CoverageValidationRow(
                tau=tau,
                empirical_mean=float(col.mean()),
                empirical_std=float(col.std(ddof=1)) if cfg.runs > 1 else 0.0,
                predicted=float(expected_edge_fraction(moments, tau)),
            )
        )
    return rows


def crossing_rate(
    g: Graph, cfg: ExperimentConfig, c: float = 1.0, delta: int | None = None
) -> CrossingRateResult:
    """Empirical non-crossing probability for walker pairs, with the bound.

    Requires ``cfg.h == 2``.  For each run, walker 0 finishes first and
    walker 1's trace is checked against its visited set; the fraction of
    runs with no crossing is compared against the geometric bound evaluated
    at the predicted covered-edge fraction.  Also measures the conditional
    hit rate P[in set at w+delta | outside at w] that the bound presumes to
    be at least ``c * gamma_bar``.
    """
    if cfg.h != 2:
        raise ConfigError("crossing rate is defined for h=2 walker pairs")
    members = _start_pool(g, cfg)
    budget = cfg.budget(g.n)
    if delta is None:
        delta = max(1, math.ceil(g.n / 100))
    if delta < 1:
        raise ConfigError("delta must be at least 1")
    never = 0
    cond_num = 0
    cond_den = 0
    gamma_sum = 0.0
    for r in range(cfg.runs):
        starts = _draw_starts(cfg, members, r)
        trace_i, _ = run_walk(g, starts[0], budget, walker_seed(_seed_tuple(cfg.seed) + (r,), 0))
        trace_j, _ = run_walk(g, starts[1], budget, walker_seed(_seed_tuple(cfg.seed) + (r,), 1))
        if crossing_time(trace_j, trace_i.visited) is None:
            never += 1
        gamma_sum += trace_i.covered_edge_count / (2.0 * g.m)
        in_set = trace_i.visited[trace_j.steps]
        if budget > delta:
            before = in_set[:-delta]
            after = in_set[delta:]
            cond_den += int(np.count_nonzero(~before))
            cond_num += int(np.count_nonzero(~before & after))
    gamma_bar = expected_edge_fraction(degree_moments(g), budget / g.n)
    params = CrossingBoundParams(
        beta=budget / g.n, n=g.n, delta=delta, c=c, gamma_bar=gamma_bar
    )
    bound, exponent = crossing_probability_bound(params)
    return CrossingRateResult(
        runs=cfg.runs,
        budget=budget,
        non_crossing_rate=never / cfg.runs,
        gamma_bar=gamma_bar,
        empirical_gamma=gamma_sum / cfg.runs,
        c=c,
        delta=delta,
        exponent=exponent,
        bound=bound,
        conditional_hit_rate=cond_num / cond_den if cond_den else math.nan,
        conditional_samples=cond_den,
    )


# -- report emission -----------------------------------------------------------


def _fmt(x: float) -> str:
    return repr(float(x))


def _stretch_csv(matrix: StretchMatrix) -> str:
    labels = matrix.labels
    rows = matrix.row_normalized()
    lines = ["d_true," + ",".join(labels)]
    for label, row in zip(labels, rows):
        lines.append(label + "," + ",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _histogram_csv(matrix: StretchMatrix) -> str:
    hist = matrix.marginal_true_histogram
    total = matrix.total_pairs
    lines = ["d_true,count,fraction"]
    for label, count in zip(matrix.labels, hist):
        lines.append(f"{label},{int(count)},{_fmt(count / total)}")
    return "\n".join(lines) + "\n"


def _coverage_csv(rows: list[CoverageValidationRow]) -> str:
    lines = ["tau,empirical_mean,empirical_std,predicted"]
    for row in rows:
        lines.append(
            f"{_fmt(row.tau)},{_fmt(row.empirical_mean)},{_fmt(row.empirical_std)},{_fmt(row.predicted)}"
        )
    return "\n".join(lines) + "\n"


def _json_dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _config_dict(cfg: ExperimentConfig) -> dict:
    return {
        "seed": cfg.seed,
        "h": cfg.h,
        "beta": cfg.beta,
        "runs": cfg.runs,
        "rescale_budget": cfg.rescale_budget,
        "fixed_starts": list(cfg.fixed_starts) if cfg.fixed_starts else None,
        "workers": cfg.workers,
        "graph_source": cfg.graph_source,
    }


def emit_reports(result: ExperimentResult, fmt: str = "csv", destination=None) -> list[Path]:
    """Write plot-ready experiment reports into ``destination``.

    csv format: stretch_matrix.csv (row-normalized fractions with INF
    row/column), true_distance_histogram.csv, coverage.csv and crossing.json
    when present, and metadata.json.  json format: a single results.json.
    Either way a timing.json sidecar carries the wall time, so every other
    file is byte-deterministic for a fixed config and seed.
    """
    if destination is None:
        raise ValueError("destination directory is required")
    if result.stretch.total_pairs == 0:
        raise ValueError("refusing to emit an empty stretch matrix")
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown report format {fmt!r}")
    dest = Path(destination)
    dest.mkdir(parents=True, exist_ok=True)

    crossing_dict = None
    if result.crossing is not None:
        cr = result.crossing
        crossing_dict = {
            "runs": cr.runs,
            "budget": cr.budget,
            "non_crossing_rate": cr.non_crossing_rate,
            "gamma_bar": cr.gamma_bar,
            "empirical_gamma": cr.empirical_gamma,
            "c": cr.c,
            "delta": cr.delta,
            "exponent": cr.exponent,
            "bound": cr.bound,
            "conditional_hit_rate": None
            if math.isnan(cr.conditional_hit_rate)
            else cr.conditional_hit_rate,
            "conditional_samples": cr.conditional_samples,
        }

    written: list[Path] = []

    def put(name: str, text: str) -> None:
        path = dest / name
        path.write_text(text, encoding="utf-8", newline="\n")
        written.append(path)

    metadata = {
        "version": f"rwtopo {__version__}",
        "config": _config_dict(result.config),
        "budget": result.budget,
        "graph": {"n": result.graph_n, "m": result.graph_m},
        "summary": result.summary,
    }
    if fmt == "csv":
        put("stretch_matrix.csv", _stretch_csv(result.stretch))
        put("true_distance_histogram.csv", _histogram_csv(result.stretch))
        if result.coverage is not None:
            put("coverage.csv", _coverage_csv(result.coverage))
        if crossing_dict is not None:
            put("crossing.json", _json_dump(crossing_dict))
        metadata["outputs"] = sorted(p.name for p in written)
        put("metadata.json", _json_dump(metadata))
    else:
        payload = {
            "metadata": metadata,
            "stretch": {
                "labels": result.stretch.labels,
                "counts": result.stretch.counts.tolist(),
                "row_normalized": result.stretch.row_normalized().tolist(),
            },
            "coverage": None
            if result.coverage is None
            else [
                {
                    "tau": r.tau,
                    "empirical_mean": r.empirical_mean,
                    "empirical_std": r.empirical_std,
                    "predicted": r.predicted,
                }
                for r in result.coverage
            ],
            "crossing": crossing_dict,
        }
        put("results.json", _json_dump(payload))
    put("timing.json", _json_dump({"wall_time_s": result.wall_time_s}))
    return written
