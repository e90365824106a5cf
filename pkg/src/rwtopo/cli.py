"""Command-line interface.

Subcommands::

    stats    <graph>                 summary statistics as JSON
    synth    <spec> -o FILE          generate a graph, write an edge list
    walk     --graph ... --start N   one budgeted walk, JSON trace summary
    predict  --graph ...             closed-form coverage curve as CSV
    rwsp     --graph ... --h N       one protocol run, per-pair JSON report
    eval     [config] [flags] -o DIR full Monte-Carlo evaluation

Exit codes: 0 success, 1 input error, 2 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coverage import coverage_points
from .experiments import (
    ConfigError,
    ExperimentConfig,
    InvariantViolation,
    coverage_validation,
    crossing_rate,
    emit_reports,
    run_experiment,
)
from .generators import from_spec
from .graph import (
    UNREACHABLE,
    DegreeMoments,
    Graph,
    bfs_distances,
    degree_moments,
    giant_component,
    load_edge_list,
    stats_report,
    write_edge_list,
)
from .rwsp import naive_vs_rwsp, run_rwsp, rwsp_path_length
from .walker import run_walk


class _Parser(argparse.ArgumentParser):
    # Usage problems are input errors: exit 1, reserving 2 for invariants.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _json_out(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _load_graph(path: str) -> Graph:
    return load_edge_list(path)


# -- subcommand handlers -------------------------------------------------------


def _cmd_stats(args) -> int:
    _json_out(stats_report(_load_graph(args.graph)))
    return 0


def _cmd_synth(args) -> int:
    g = from_spec(args.spec, args.seed)
    write_edge_list(g, args.output)
    print(f"wrote {g.n} nodes / {g.m} edges to {args.output}")
    return 0


def _cmd_walk(args) -> int:
    g = _load_graph(args.graph)
    trace, _ = run_walk(g, args.start, args.budget, args.seed)
    _json_out(
        {
            "start": trace.start,
            "steps_taken": trace.budget,
            "unique_nodes": trace.unique_nodes,
            "covered_edges": trace.covered_edge_count,
            "covered_edge_fraction": trace.covered_edge_count / (2.0 * g.m),
        }
    )
    return 0


def _parse_taus(args) -> list[float]:
    if args.taus:
        return [float(t) for t in args.taus.split(",") if t.strip()]
    lo, hi, count = args.tau_grid
    return [float(t) for t in np.linspace(lo, hi, int(count))]


def _cmd_predict(args) -> int:
    if args.graph:
        g = _load_graph(args.graph)
        moments = degree_moments(g)
        m = g.m
    else:
        needed = (args.mean_degree, args.second_moment, args.num_edges)
        if any(v is None for v in needed):
            raise ConfigError(
                "predict needs --graph or all of --mean-degree, --second-moment, --num-edges"
            )
        moments = DegreeMoments(args.mean_degree, args.second_moment)
        m = args.num_edges
    taus = _parse_taus(args)
    lines = ["tau,n_e_pred,n_nodes_pred,gamma_bar,warning_flag"]
    for point in coverage_points(moments, m, taus):
        gamma = point.expected_edges / (2.0 * m)
        lines.append(
            f"{point.tau!r},{point.expected_edges!r},{point.expected_nodes!r},"
            f"{gamma!r},{0 if point.in_regime else 1}"
        )
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_rwsp(args) -> int:
    g = _load_graph(args.graph)
    if args.starts:
        starts = [int(s) for s in args.starts.split(",")]
        if len(starts) != args.h:
            raise ConfigError(f"--starts must list exactly h={args.h} nodes")
    elif args.random_starts:
        _, mapping = giant_component(g)
        members = np.flatnonzero(mapping >= 0)
        if members.size < args.h:
            raise ConfigError("giant component smaller than h")
        rng = np.random.default_rng((args.seed, 0xBEEF))
        starts = [int(s) for s in rng.choice(members, size=args.h, replace=False)]
    else:
        raise ConfigError("rwsp needs --starts or --random-starts")
    budget = max(1, int(args.beta * g.n))
    run = run_rwsp(g, starts, budget, args.seed)

    pairs = []
    for i in range(args.h):
        true_dist = bfs_distances(g, starts[i])
        for j in range(args.h):
            if j == i:
                continue
            met = j in run.direct_peers[i]
            spl = rwsp_path_length(run, i, j)
            naive_len = naive_vs_rwsp(run, i, j)[0] if met else None
            dt = int(true_dist[starts[j]])
            pairs.append(
                {
                    "i": i,
                    "j": j,
                    "true_spl": None if dt == UNREACHABLE else dt,
                    "rwsp_spl": None if spl == UNREACHABLE else int(spl),
                    "naive_spl": naive_len,
                    "met": met,
                    "linked": j in run.states[i].known_peers,
                    "advertise_hops": run.pair_advertise_hops.get((i, j), 0)
                    + run.pair_advertise_hops.get((j, i), 0),
                    "transfer_hops": run.pair_transfer_hops.get((i, j), 0)
                    + run.pair_transfer_hops.get((j, i), 0),
                }
            )
    walkers = [
        {
            "walker": i,
            "start": starts[i],
            "unique_nodes": run.states[i].trace.unique_nodes,
            "covered_edges": run.states[i].trace.covered_edge_count,
            "known_peers": sorted(run.states[i].known_peers),
            "contact_points": sorted(run.states[i].contact_points),
            "advertise_hops": run.costs[i].advertise_hops,
            "transfer_hops": run.costs[i].transfer_hops,
        }
        for i in range(args.h)
    ]
    _json_out({"budget": budget, "pairs": pairs, "walkers": walkers})
    return 0


_EVAL_KEYS = {
    "graph": str,
    "synth": str,
    "synth_seed": int,
    "h": int,
    "beta": float,
    "runs": int,
    "rescale_budget": lambda s: s.lower() in ("1", "true", "yes"),
    "workers": int,
    "starts": str,
    "coverage_taus": str,
    "crossing": lambda s: s.lower() in ("1", "true", "yes"),
    "c": float,
    "delta": int,
}


def _read_eval_config(path: str) -> dict:
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        if key == "seed":
            raise ConfigError(f"{path}:{lineno}: seed must be passed as --seed")
        if key not in _EVAL_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = _EVAL_KEYS[key](value.strip())
    return values


def _cmd_eval(args) -> int:
    settings: dict = {}
    if args.config:
        settings = _read_eval_config(args.config)
    # Flags override file values; boolean flags can only switch things on.
    for key in _EVAL_KEYS:
        if key in ("rescale_budget", "crossing"):
            continue
        flag = getattr(args, key, None)
        if flag is not None:
            settings[key] = flag
    if args.rescale_budget:
        settings["rescale_budget"] = True
    if args.crossing:
        settings["crossing"] = True

    if "graph" in settings and "synth" in settings:
        raise ConfigError("give either graph= or synth=, not both")
    if "graph" in settings:
        g = _load_graph(settings["graph"])
        source = settings["graph"]
    elif "synth" in settings:
        g = from_spec(settings["synth"], settings.get("synth_seed", 0))
        source = settings["synth"]
    else:
        raise ConfigError("eval needs a graph= path or a synth= generator spec")

    fixed = None
    if "starts" in settings:
        fixed = tuple(int(s) for s in str(settings["starts"]).split(","))
    cfg = ExperimentConfig(
        seed=args.seed,
        h=settings.get("h", 4),
        beta=settings.get("beta", 0.025),
        runs=settings.get("runs", 200),
        rescale_budget=bool(settings.get("rescale_budget", False)),
        fixed_starts=fixed,
        workers=settings.get("workers", 1),
        graph_source=source,
    )
    result = run_experiment(g, cfg)
    if "coverage_taus" in settings:
        taus = [float(t) for t in str(settings["coverage_taus"]).split(",") if t.strip()]
        result.coverage = coverage_validation(g, cfg, taus)
    if settings.get("crossing"):
        cross_cfg = cfg if cfg.h == 2 else ExperimentConfig(
            seed=cfg.seed,
            h=2,
            beta=cfg.beta,
            runs=cfg.runs,
            rescale_budget=cfg.rescale_budget,
            workers=1,
            graph_source=cfg.graph_source,
        )
        result.crossing = crossing_rate(
            g, cross_cfg, c=settings.get("c", 1.0), delta=settings.get("delta")
        )
    written = emit_reports(result, fmt=args.format, destination=args.out)
    summary = result.summary
    print(
        f"runs={cfg.runs} pairs={summary['total_pairs']} "
        f"optimal={summary['fraction_optimal']:.3f} "
        f"within_one={summary['fraction_within_one']:.3f} "
        f"inf={summary['inf_fraction']:.3f}"
    )
    for path in written:
        print(f"wrote {path}")
    return 0


# -- parser wiring ---------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="rwtopo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"rwtopo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="graph summary statistics as JSON")
    p.add_argument("graph", help="edge-list file")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("synth", help="generate a synthetic graph")
    p.add_argument("spec", help="generator spec, e.g. pa:n=5000,m0=3")
    p.add_argument("-o", "--output", required=True, help="edge-list file to write")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("walk", help="run one budgeted random walk")
    p.add_argument("--graph", required=True)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_walk)

    p = sub.add_parser("predict", help="closed-form coverage curve as CSV")
    p.add_argument("--graph")
    p.add_argument("--mean-degree", type=float)
    p.add_argument("--second-moment", type=float)
    p.add_argument("--num-edges", type=int)
    p.add_argument("--taus", help="comma-separated tau values")
    p.add_argument(
        "--tau-grid",
        nargs=3,
        type=float,
        default=(0.01, 0.10, 10),
        metavar=("LO", "HI", "COUNT"),
        help="linspace grid when --taus is absent (default 0.01 0.10 10)",
    )
    p.add_argument("-o", "--output", help="CSV file (default stdout)")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("rwsp", help="one protocol run with a per-pair report")
    p.add_argument("--graph", required=True)
    p.add_argument("--h", type=int, default=4)
    p.add_argument("--starts", help="comma-separated start nodes")
    p.add_argument("--random-starts", action="store_true")
    p.add_argument("--beta", type=float, default=0.025)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_rwsp)

    p = sub.add_parser("eval", help="full Monte-Carlo evaluation")
    p.add_argument("config", nargs="?", help="key=value config file")
    p.add_argument("--seed", type=int, required=True, help="master seed (mandatory)")
    p.add_argument("-o", "--out", required=True, help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--graph")
    p.add_argument("--synth")
    p.add_argument("--synth-seed", type=int, dest="synth_seed")
    p.add_argument("--h", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--runs", type=int)
    p.add_argument("--rescale-budget", action="store_true", dest="rescale_budget")
    p.add_argument("--workers", type=int)
    p.add_argument("--starts")
    p.add_argument("--coverage-taus", dest="coverage_taus")
    p.add_argument("--crossing", action="store_true")
    p.add_argument("--c", type=float)
    p.add_argument("--delta", type=int)
    p.set_defaults(func=_cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
