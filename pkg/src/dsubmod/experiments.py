"""Random-graph experiments: greedy coverage vs. the colouring bound, and bound sweeps
over preferential-attachment and small-world DAGs.

Every random draw is derived from ``master_seed`` (see :mod:`dsubmod.rng`), and
records are written sorted by trial index, so re-running a config reproduces
its CSV files byte for byte.
"""

from __future__ import annotations

import csv
import io
import logging
import statistics
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.stats import rankdata

from .bounds import lower_bound_special
from .core import BRUTE_FORCE_GUARD, brute_force_opt
from .dag import InfoDag, chromatic_number, clique_number, greedy_topological_coloring
from .errors import InvalidInputError, SizeGuardError
from .graphgen import gen_ba_dag, gen_er_dag, gen_ws_dag
from .greedy import run_sequential
from .objectives import CoverageGrid, make_coverage, random_disks
from .rng import derive_seed, make_rng

log = logging.getLogger(__name__)

EXPERIMENTS = ("correlation", "ba-sweep", "ws-sweep")


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks for ties."""
    if len(xs) != len(ys):
        raise InvalidInputError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise InvalidInputError("rank correlation needs at least two points")
    rx = rankdata(np.asarray(xs, dtype=float), method="average")
    ry = rankdata(np.asarray(ys, dtype=float), method="average")
    if np.ptp(rx) == 0 or np.ptp(ry) == 0:
        raise InvalidInputError("rank correlation is undefined for a constant sequence")
    dx, dy = rx - rx.mean(), ry - ry.mean()
    rho = float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))
    return max(-1.0, min(1.0, rho))


def _parse_sweep(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ":" in text:
        parts = [int(t) for t in text.split(":")]
        if len(parts) == 2:
            parts.append(1)
        start, stop, step = parts
        if step < 1:
            raise InvalidInputError(f"sweep step must be positive in {text!r}")
        return tuple(range(start, stop + 1, step))
    return tuple(int(t) for t in text.split(",") if t.strip())


@dataclass(frozen=True)
class ExperimentConfig:
    """Parameters for one experiment; defaults follow the published set-up.

    ``n_agents`` defaults to 50 for the correlation experiment and 25 for the
    small-world sweep. ``sweep`` is the list of ``n`` values (preferential
    attachment) or ``K`` values (small world); empty means the default range.
    """

    experiment: str = "correlation"
    n_agents: int | None = None
    disks_per_agent: int = 3
    disk_radius: float = 0.07
    grid_resolution: int = 100
    n_graphs: int = 100
    sweep: tuple[int, ...] = ()
    trials_per_point: int = 20
    beta: float = 0.25
    master_seed: int = 0
    output_dir: str = "results"
    optimum_guard: int = BRUTE_FORCE_GUARD

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise InvalidInputError(f"unknown experiment {self.experiment!r}; choose from {EXPERIMENTS}")
        for name in ("disks_per_agent", "grid_resolution", "n_graphs", "trials_per_point"):
            if getattr(self, name) < 1:
                raise InvalidInputError(f"{name} must be positive")
        if self.n_agents is not None and self.n_agents < 1:
            raise InvalidInputError("n_agents must be positive")
        if not 0 < self.disk_radius < 1:
            raise InvalidInputError(f"disk_radius must lie in (0, 1), got {self.disk_radius}")
        if not 0 <= self.beta <= 1:
            raise InvalidInputError(f"beta must lie in [0, 1], got {self.beta}")
        object.__setattr__(self, "sweep", tuple(int(v) for v in self.sweep))

    @property
    def agents(self) -> int:
        if self.n_agents is not None:
            return self.n_agents
        return 25 if self.experiment == "ws-sweep" else 50

    def sweep_values(self) -> tuple[int, ...]:
        if self.sweep:
            return self.sweep
        if self.experiment == "ba-sweep":
            return tuple(range(5, 41, 5))
        if self.experiment == "ws-sweep":
            return tuple(range(1, (self.agents - 1) // 2 + 1))
        return ()

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        """Parse ``key = value`` lines; ``#`` starts a comment."""
        types = {f.name: f.type for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidInputError(f"config line {lineno}: expected key=value")
            key, val = (t.strip() for t in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in types:
                raise InvalidInputError(f"config line {lineno}: unknown key {key!r}")
            try:
                values[key] = _coerce(key, val)
            except ValueError:
                raise InvalidInputError(f"config line {lineno}: bad value for {key}: {val!r}") from None
        return cls(**values)

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_text(Path(path).read_text())


_INT_KEYS = {"n_agents", "disks_per_agent", "grid_resolution", "n_graphs",
             "trials_per_point", "master_seed", "optimum_guard"}
_FLOAT_KEYS = {"disk_radius", "beta"}


def _coerce(key: str, val: str):
    if key in _INT_KEYS:
        return int(val)
    if key in _FLOAT_KEYS:
        return float(val)
    if key == "sweep":
        return _parse_sweep(val)
    return val


def _num(x) -> str:
    """Stable CSV rendering: blank for missing, ints as ints, everything else via ``repr(float)``."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return str(x.numerator)
    return repr(float(x))


def to_csv(columns: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_num(r.get(c)) if not isinstance(r.get(c), str) else r[c] for c in columns])
    return buf.getvalue()


def _guarded(fn: Callable, *args):
    try:
        return fn(*args)
    except SizeGuardError as exc:
        log.info("guard hit: %s", exc)
        return None


@dataclass
class ExperimentResult:
    name: str
    columns: tuple[str, ...]
    records: list[dict]
    summary_columns: tuple[str, ...] = ()
    summary: list[dict] = field(default_factory=list)

    def records_csv(self) -> str:
        return to_csv(self.columns, self.records)

    def summary_csv(self) -> str:
        return to_csv(self.summary_columns, self.summary)

    def write(self, output_dir: str | Path) -> list[Path]:
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = self.name.replace("-", "_")
        paths = [out / f"{stem}_trials.csv", out / f"{stem}.csv"]
        paths[0].write_text(self.records_csv())
        paths[1].write_text(self.summary_csv())
        return paths


def _graph_bounds(g: InfoDag) -> dict:
    omega = _guarded(lambda: clique_number(g)[0])
    chi = _guarded(lambda: chromatic_number(g)[0])
    _, k = greedy_topological_coloring(g)
    lower = None if omega is None else Fraction(1, g.n - omega + 2)
    special = lower_bound_special(g)
    return {
        "edges": g.n_edges,
        "omega": omega,
        "chi": chi,
        "greedy_colors": k,
        "lower_clique": lower,
        "lower_special": None if special is None else special[1],
        "upper_chi": None if chi is None else Fraction(chi, g.n),
        "upper_alg1": Fraction(k, g.n),
    }


CORRELATION_COLUMNS = ("graph_id", "seed", "p", "edges", "omega", "chi", "greedy_colors",
                       "greedy_value", "optimum", "ratio", "lower_clique", "upper_chi",
                       "upper_alg1")


def run_correlation_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Greedy coverage on random ER-DAGs against the topological-colouring bound.

    One shared disk instance; per graph, ``p`` is uniform on [0, 1]. The covered
    fraction is recorded always, the true ratio only when brute force fits
    under ``optimum_guard``.
    """
    n = config.agents
    disk_rng = make_rng(config.master_seed, "disks")
    disks = random_disks(disk_rng, n, config.disks_per_agent, config.disk_radius)
    instance = make_coverage(disks, CoverageGrid(config.grid_resolution))
    optimum = None
    if instance.search_space() <= config.optimum_guard:
        optimum = brute_force_opt(instance, config.optimum_guard)[1]
    records = []
    for gid in range(config.n_graphs):
        seed = derive_seed(config.master_seed, "correlation-graph", gid)
        p = make_rng(seed, "p").random()
        g = gen_er_dag(n, p, seed)
        sol = run_sequential(instance, g)
        rec = {"graph_id": gid, "seed": seed, "p": p, "greedy_value": sol.value,
               "optimum": optimum}
        rec.update(_graph_bounds(g))
        rec["ratio"] = None if optimum is None else (Fraction(sol.value) / optimum if optimum else 1)
        records.append(rec)
    rho = spearman([float(r["greedy_value"]) for r in records],
                   [float(r["upper_alg1"]) for r in records])
    summary = [{"n_agents": n, "n_graphs": config.n_graphs, "disks_per_agent": config.disks_per_agent,
                "disk_radius": config.disk_radius, "grid_resolution": config.grid_resolution,
                "master_seed": config.master_seed, "spearman_rho": rho}]
    return ExperimentResult("correlation", CORRELATION_COLUMNS, records,
                            ("n_agents", "n_graphs", "disks_per_agent", "disk_radius",
                             "grid_resolution", "master_seed", "spearman_rho"), summary)


SWEEP_TRIAL_COLUMNS = ("point", "trial", "seed", "edges", "omega", "chi", "greedy_colors",
                       "lower_clique", "lower_special", "upper_chi", "upper_alg1",
                       "ratio_chi", "ratio_alg1")
_AGGREGATED = ("lower_clique", "upper_chi", "upper_alg1", "ratio_chi", "ratio_alg1")


def _mean_sd(values: list) -> tuple[float | None, float | None]:
    vals = [float(v) for v in values if v is not None]
    if not vals:
        return None, None
    sd = statistics.stdev(vals) if len(vals) > 1 else 0.0
    return statistics.fmean(vals), sd


def _sweep(config: ExperimentConfig, point_name: str, make_graph: Callable[[int, int], InfoDag]
           ) -> tuple[list[dict], list[dict]]:
    trials, points = [], []
    for x in config.sweep_values():
        rows = []
        for t in range(config.trials_per_point):
            seed = derive_seed(config.master_seed, point_name, x, t)
            g = make_graph(x, seed)
            rec = {"point": x, "trial": t, "seed": seed}
            rec.update(_graph_bounds(g))
            low = rec["lower_clique"]
            rec["ratio_chi"] = None if low is None or rec["upper_chi"] is None else rec["upper_chi"] / low
            rec["ratio_alg1"] = None if low is None else rec["upper_alg1"] / low
            rows.append(rec)
        trials += rows
        point = {point_name: x, "trials": len(rows),
                 "complete_trials": sum(all(r[c] is not None for c in _AGGREGATED) for r in rows)}
        for c in _AGGREGATED:
            point[f"{c}_mean"], point[f"{c}_sd"] = _mean_sd([r[c] for r in rows])
        points.append(point)
    return trials, points


def _summary_columns(point_name: str) -> tuple[str, ...]:
    cols = [point_name, "trials", "complete_trials"]
    for c in _AGGREGATED:
        cols += [f"{c}_mean", f"{c}_sd"]
    return tuple(cols)


def run_ba_sweep(config: ExperimentConfig) -> ExperimentResult:
    values = config.sweep_values()
    if any(v < 5 for v in values):
        raise InvalidInputError("preferential-attachment sweep needs n >= 5")
    trials, points = _sweep(config, "n", lambda n, seed: gen_ba_dag(n, seed))
    return ExperimentResult("ba-sweep", SWEEP_TRIAL_COLUMNS, trials, _summary_columns("n"), points)


def run_ws_sweep(config: ExperimentConfig) -> ExperimentResult:
    n = config.agents
    kmax = (n - 1) // 2
    if any(not 1 <= k <= kmax for k in config.sweep_values()):
        raise InvalidInputError(f"small-world sweep needs 1 <= K <= {kmax} for n={n}")
    trials, points = _sweep(config, "K", lambda k, seed: gen_ws_dag(n, k, config.beta, seed))
    return ExperimentResult("ws-sweep", SWEEP_TRIAL_COLUMNS, trials, _summary_columns("K"), points)


RUNNERS = {
    "correlation": run_correlation_experiment,
    "ba-sweep": run_ba_sweep,
    "ws-sweep": run_ws_sweep,
}


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    return RUNNERS[config.experiment](config)


def desk_config(**overrides) -> ExperimentConfig:
    """Small correlation set-up that runs in seconds."""
    base = ExperimentConfig(experiment="correlation", n_agents=20, disks_per_agent=3,
                            disk_radius=0.1, grid_resolution=100, n_graphs=50)
    return replace(base, **overrides)
