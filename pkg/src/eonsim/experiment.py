"""Sweep execution: expand grids into runs, execute them, emit CSV.

Every run is identified by (topology, slot width, load, distribution, seed);
rows appear in sorted identity order no matter how execution was scheduled,
and a run's random stream depends only on (master_seed, seed), so the same
seed replays the same traffic at every grid point.  Failures become
status="error: ..." rows and the sweep continues.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .config import ConfigError, FixedParams, SweepSpec, arithmetic_grid, itu_grid
from .engine import SimConfig, run
from .topology import BUILTIN_NAMES, Topology, TopologyError, builtin_topology, load_topology
from .traffic import Constant, DistributionSpec, PoissonBW, TrafficParams, Uniform, derive_seed

__all__ = [
    "CSV_COLUMNS",
    "RunPlan",
    "aggregate_csv",
    "arithmetic_grid",
    "derive_seed",
    "expand_runs",
    "itu_grid",
    "run_one",
    "run_sweep",
]

CSV_COLUMNS = [
    "topology",
    "slot_width_ghz",
    "load_erlang_per_node",
    "dist",
    "dist_param1",
    "dist_param2",
    "guard_ghz",
    "link_bandwidth_ghz",
    "total_requests",
    "seed",
    "arrived_measured",
    "blocked",
    "bp",
    "bbp",
    "spectrum_efficiency",
    "sim_seconds_modeled",
    "wall_ms",
    "status",
]

IDENTITY_COLUMNS = CSV_COLUMNS[:10]

AGGREGATE_COLUMNS = IDENTITY_COLUMNS[:9] + [
    "n_seeds",
    "bp_mean",
    "bp_stderr",
    "bbp_mean",
    "bbp_stderr",
    "spectrum_efficiency_mean",
    "spectrum_efficiency_stderr",
]


def dist_fields(dist: DistributionSpec) -> tuple[str, float, float | None]:
    """CSV encoding of a distribution: (name, param1, param2)."""
    if isinstance(dist, Uniform):
        return "uniform", dist.b_min_gbps, dist.b_max_gbps
    if isinstance(dist, PoissonBW):
        return "poisson", dist.b_avg_gbps, dist.granule_ghz
    if isinstance(dist, Constant):
        return "constant", dist.b_gbps, None
    raise TypeError(f"unknown distribution {dist!r}")


@dataclass(frozen=True)
class RunPlan:
    """One fully resolved simulation run within a sweep."""

    topology_name: str
    topology: Topology
    slot_width_ghz: float
    load_erlang: float
    dist: DistributionSpec
    seed: int
    fixed: FixedParams

    def identity(self) -> tuple:
        name, p1, p2 = dist_fields(self.dist)
        return (
            self.topology_name,
            self.slot_width_ghz,
            self.load_erlang,
            name,
            p1,
            -1.0 if p2 is None else p2,
            self.seed,
        )

    def sim_config(self) -> SimConfig:
        f = self.fixed
        return SimConfig(
            topology=self.topology,
            slot_width_ghz=self.slot_width_ghz,
            dist=self.dist,
            traffic=TrafficParams(
                lambda_per_node=self.load_erlang * f.mu,
                mu=f.mu,
                node_count=self.topology.node_count,
            ),
            link_bandwidth_ghz=f.link_bandwidth_ghz,
            guard_ghz=f.guard_ghz,
            total_requests=f.total_requests,
            warmup_multiplier=f.warmup_multiplier,
            master_seed=f.master_seed,
            run_index=self.seed,
            routing_metric=f.routing_metric,
        )


def _resolve_topology(name: str, cache: dict[str, Topology]) -> Topology:
    topo = cache.get(name)
    if topo is None:
        if name in BUILTIN_NAMES:
            topo = builtin_topology(name)
        else:
            try:
                with open(name, encoding="utf-8") as fh:
                    topo = load_topology(fh.read(), name=name)
            except OSError as exc:
                raise ConfigError(
                    f"unknown topology {name!r}: not a builtin "
                    f"({', '.join(BUILTIN_NAMES)}) and not a readable "
                    f"file ({exc})"
                ) from None
            except TopologyError as exc:
                raise ConfigError(f"topology file {name!r}: {exc}") from None
        cache[name] = topo
    return topo


def expand_runs(specs: SweepSpec | list[SweepSpec]) -> list[RunPlan]:
    """Cartesian products of all specs, deduplicated and identity-sorted."""
    if isinstance(specs, SweepSpec):
        specs = [specs]
    if not specs:
        raise ConfigError("no sweep specs given")
    cache: dict[str, Topology] = {}
    plans: dict[tuple, RunPlan] = {}
    for spec in specs:
        for name in spec.topologies:
            topo = _resolve_topology(name, cache)
            for width in spec.slot_widths_ghz:
                for load in spec.loads_erlang:
                    for dist in spec.dist_variants:
                        for seed in spec.seeds:
                            plan = RunPlan(
                                topology_name=name,
                                topology=topo,
                                slot_width_ghz=width,
                                load_erlang=load,
                                dist=dist,
                                seed=seed,
                                fixed=spec.fixed,
                            )
                            plans.setdefault(plan.identity(), plan)
    return [plans[key] for key in sorted(plans)]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def run_one(plan: RunPlan, trace=None) -> dict[str, str]:
    """Execute one run and return its CSV row; failures become error rows."""
    name, p1, p2 = dist_fields(plan.dist)
    f = plan.fixed
    row = dict.fromkeys(CSV_COLUMNS, "")
    row.update(
        topology=plan.topology_name,
        slot_width_ghz=_fmt(plan.slot_width_ghz),
        load_erlang_per_node=_fmt(plan.load_erlang),
        dist=name,
        dist_param1=_fmt(p1),
        dist_param2=_fmt(p2),
        guard_ghz=_fmt(f.guard_ghz),
        link_bandwidth_ghz=_fmt(f.link_bandwidth_ghz),
        total_requests=str(f.total_requests),
        seed=str(plan.seed),
    )
    start = time.perf_counter()
    try:
        report = run(plan.sim_config(), trace=trace)
    except Exception as exc:  # noqa: BLE001 - any run failure becomes a row
        row["wall_ms"] = str(int((time.perf_counter() - start) * 1000))
        message = " ".join(str(exc).split()) or type(exc).__name__
        row["status"] = f"error: {message}"
        return row
    row.update(
        arrived_measured=str(report.arrived),
        blocked=str(report.blocked),
        bp=_fmt(report.bp),
        bbp=_fmt(report.bbp),
        spectrum_efficiency=_fmt(report.spectrum_efficiency),
        sim_seconds_modeled=_fmt(report.sim_seconds_modeled),
        wall_ms=str(int((time.perf_counter() - start) * 1000)),
        status="ok",
    )
    return row


def rows_to_csv(rows: list[dict[str, str]], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def run_sweep(
    specs: SweepSpec | list[SweepSpec],
    parallelism: int = 1,
    progress=None,
) -> str:
    """Execute every expanded run and return the result CSV.

    Output bytes do not depend on `parallelism` (rows are ordered by run
    identity; only wall_ms varies between invocations).  `progress`, if
    given, receives (completed_count, total_count) after each run.
    """
    if parallelism < 1:
        raise ConfigError("parallelism must be >= 1")
    plans = expand_runs(specs)
    rows: list[dict[str, str] | None] = [None] * len(plans)
    if parallelism == 1:
        for i, plan in enumerate(plans):
            rows[i] = run_one(plan)
            if progress is not None:
                progress(i + 1, len(plans))
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            for i, row in enumerate(pool.map(run_one, plans)):
                rows[i] = row
                if progress is not None:
                    progress(i + 1, len(plans))
    return rows_to_csv(rows, CSV_COLUMNS)


def sweep_failed(csv_text: str) -> bool:
    """True if any row carries an error status."""
    reader = csv.DictReader(io.StringIO(csv_text))
    return any(r.get("status", "").startswith("error") for r in reader)


def _mean_stderr(values: list[float]) -> tuple[str, str]:
    if not values:
        return "", ""
    mean = statistics.fmean(values)
    if len(values) < 2:
        return repr(mean), ""
    stderr = statistics.stdev(values) / len(values) ** 0.5
    return repr(mean), repr(stderr)


def aggregate_csv(csv_text: str) -> str:
    """Collapse seed replicates: mean and standard error per grid point."""
    reader = csv.DictReader(io.StringIO(csv_text))
    if reader.fieldnames is None or set(CSV_COLUMNS) - set(reader.fieldnames):
        raise ConfigError("input is not a sweep result CSV (missing columns)")
    groups: dict[tuple, dict[str, list[float]]] = {}
    for row in reader:
        if row["status"] != "ok":
            continue
        key = tuple(row[c] for c in IDENTITY_COLUMNS[:9])
        bucket = groups.setdefault(key, {"bp": [], "bbp": [], "spectrum_efficiency": [], "n": []})
        bucket["n"].append(1.0)
        for metric in ("bp", "bbp", "spectrum_efficiency"):
            if row[metric] != "":
                bucket[metric].append(float(row[metric]))

    def sort_key(key: tuple) -> tuple:
        topology, width, load, dist, p1, p2, guard, linkbw, total = key
        return (
            topology,
            float(width),
            float(load),
            dist,
            float(p1),
            float(p2) if p2 else -1.0,
            float(guard),
            float(linkbw),
            int(total),
        )

    out_rows = []
    for key in sorted(groups, key=sort_key):
        bucket = groups[key]
        row = dict(zip(IDENTITY_COLUMNS[:9], key))
        row["n_seeds"] = str(len(bucket["n"]))
        for metric, col in (
            ("bp", "bp"),
            ("bbp", "bbp"),
            ("spectrum_efficiency", "spectrum_efficiency"),
        ):
            mean, stderr = _mean_stderr(bucket[metric])
            row[f"{col}_mean"] = mean
            row[f"{col}_stderr"] = stderr
        out_rows.append(row)
    return rows_to_csv(out_rows, AGGREGATE_COLUMNS)
