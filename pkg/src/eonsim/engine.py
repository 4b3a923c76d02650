"""Discrete-event simulation loop.

Generates the full arrival stream up front (keeping random draws in a fixed
order for reproducibility), then merges it with a departure heap.  Arrivals
before the warmup boundary occupy spectrum and schedule departures but touch
no counters; all departures run to completion so the efficiency integrals
close.  Equal-time events resolve by creation order (departures were
scheduled earlier than any later arrival is materialized, so they go first).

The admission hot path is inlined here for speed; a property test holds it
equivalent to the public admission function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Callable

from .metrics import (
    bandwidth_blocking_probability,
    blocking_probability,
    spectrum_efficiency,
)
from .spectrum import SlotDemand, SlotGrid, SpectrumError, render_raster
from .topology import Topology, all_pairs_shortest_paths
from .traffic import (
    DistributionSpec,
    RngStream,
    TrafficParams,
    generate_requests,
)

DEBUG_CHECK_INTERVAL = 10_000


@dataclass(frozen=True)
class SimConfig:
    topology: Topology
    slot_width_ghz: float
    dist: DistributionSpec
    traffic: TrafficParams
    link_bandwidth_ghz: float = 4000.0
    guard_ghz: float = 10.0
    total_requests: int = 200_000
    warmup_multiplier: float = 3.0
    master_seed: int = 0
    run_index: int = 0
    routing_metric: str = "hops"

    def __post_init__(self) -> None:
        if self.slot_width_ghz <= 0:
            raise ValueError("slot width must be positive")
        if self.slot_width_ghz > self.link_bandwidth_ghz:
            raise ValueError(
                f"slot width {self.slot_width_ghz} GHz exceeds link bandwidth "
                f"{self.link_bandwidth_ghz} GHz"
            )
        if self.total_requests < 1:
            raise ValueError("total_requests must be >= 1")
        if self.warmup_multiplier < 0:
            raise ValueError("warmup_multiplier must be >= 0")
        if self.routing_metric not in ("hops", "km"):
            raise ValueError(f"unknown routing metric {self.routing_metric!r}")
        if self.traffic.node_count != self.topology.node_count:
            raise ValueError(
                f"traffic node_count {self.traffic.node_count} does not match "
                f"topology {self.topology.name!r} ({self.topology.node_count} nodes)"
            )


ARRIVAL = 0
DEPARTURE = 1


@dataclass(frozen=True)
class Event:
    """Queue entry; pops in (time_s, sequence) order, sequence unique."""

    time_s: float
    sequence: int
    kind: int  # ARRIVAL or DEPARTURE
    conn_id: int


@dataclass(frozen=True)
class MetricsReport:
    arrived: int
    blocked: int
    requested_gbps_sum: float
    blocked_gbps_sum: float
    used_bw_time_integral: float
    allocated_data_bw_time_integral: float
    bp: float | None
    bbp: float | None
    spectrum_efficiency: float | None
    measured_window: tuple[float, float]
    sim_seconds_modeled: float


def erlang_b(servers: int, load_erlang: float) -> float:
    """Loss probability of an M/M/c/c system via the standard recursion."""
    if servers < 1:
        raise ValueError("servers must be >= 1")
    if load_erlang <= 0:
        raise ValueError("load must be positive")
    e = 1.0
    for c in range(1, servers + 1):
        e = load_erlang * e / (c + load_erlang * e)
    return e


def _dump_state(grids, clock: float, event_count: int) -> str:
    lines = [f"at t={clock:.6f} after {event_count} events:"]
    lines.append(render_raster(grids))
    return "\n".join(lines)


def run(
    config: SimConfig,
    trace: Callable[[str], None] | None = None,
    debug_checks: bool = False,
) -> MetricsReport:
    """Simulate total_requests arrivals and report the three metrics.

    `trace` receives one formatted line per event.  `debug_checks` verifies
    slot conservation against the active-connection set every 10^4 events
    (off by default; it is pure overhead in benchmark runs).
    """
    topo = config.topology
    width = config.slot_width_ghz
    guard = config.guard_ghz
    rng = RngStream(config.master_seed, config.run_index)
    batch = generate_requests(rng, config.traffic, config.dist, config.total_requests)
    # plain lists index faster than numpy scalars in the event loop
    arr_t = batch.arrival_s.tolist()
    arr_src = batch.src.tolist()
    arr_dst = batch.dst.tolist()
    arr_b = batch.b_req_gbps.tolist()
    arr_hold = batch.holding_s.tolist()

    grids = [SlotGrid.for_link(config.link_bandwidth_ghz, width) for _ in topo.links]
    paths = all_pairs_shortest_paths(topo, config.routing_metric)
    path_links = {key: p.links for key, p in paths.items()}
    demands: dict[int, SlotDemand] = {}  # data_slots -> demand (guard fixed)

    t_w = config.warmup_multiplier / config.traffic.mu
    n = config.total_requests
    heap: list[tuple[float, int, int]] = []  # (time, sequence, conn_id)
    # conn_id -> (links, start, total, src, dst, b_gbps)
    active: dict[int, tuple] = {}

    arrived = 0
    blocked = 0
    requested_sum = 0.0
    blocked_sum = 0.0
    used_integral = 0.0
    alloc_integral = 0.0
    last_measured_arrival = t_w
    last_measured_departure = 0.0
    clock = 0.0
    seq = 0
    event_count = 0
    i = 0

    while i < n or heap:
        if heap and (i >= n or heap[0][0] <= arr_t[i]):
            t, _, conn_id = heappop(heap)
            clock = t
            links, start, total, src, dst, b = active.pop(conn_id)
            try:
                for link_id in links:
                    grids[link_id].vacate(start, conn_id)
            except SpectrumError as exc:
                raise AssertionError(
                    f"{exc}\n{_dump_state(grids, clock, event_count)}"
                ) from exc
            if trace is not None:
                trace(
                    f"t={t:.6f} DEP id={conn_id} src={src} dst={dst} "
                    f"bw={b:g} start={start} n={total}"
                )
        else:
            t = arr_t[i]
            clock = t
            src = arr_src[i]
            dst = arr_dst[i]
            b = arr_b[i]
            hold = arr_hold[i]
            conn_id = i
            i += 1
            seq += 1
            measured = t >= t_w
            if measured:
                arrived += 1
                requested_sum += b
                last_measured_arrival = t

            data = math.ceil(round(b / width, 9))
            if data < 1:
                data = 1
            demand = demands.get(data)
            if demand is None:
                demand = SlotDemand(data, math.ceil(round(guard / width, 9)))
                demands[data] = demand
            total = demand.total

            links = path_links[src, dst]
            mask = grids[links[0]].free_mask
            for link_id in links[1:]:
                mask &= grids[link_id].free_mask
            # first-fit by shift-AND folding, same as spectrum.first_fit
            m = mask
            remaining = total - 1
            shift = 1
            while remaining and m:
                step = min(shift, remaining)
                m &= m >> step
                remaining -= step
                shift <<= 1

            if not m:
                if measured:
                    blocked += 1
                    blocked_sum += b
                if trace is not None:
                    trace(
                        f"t={t:.6f} BLK id={conn_id} src={src} dst={dst} "
                        f"bw={b:g} start=- n={total}"
                    )
            else:
                start = (m & -m).bit_length() - 1
                try:
                    for link_id in links:
                        grids[link_id].occupy(start, total, conn_id)
                except SpectrumError as exc:
                    raise AssertionError(
                        f"{exc}\n{_dump_state(grids, clock, event_count)}"
                    ) from exc
                departure = t + hold
                seq += 1
                heappush(heap, (departure, seq, conn_id))
                active[conn_id] = (links, start, total, src, dst, b)
                if measured:
                    used_integral += b * hold
                    alloc_integral += data * width * hold
                    if departure > last_measured_departure:
                        last_measured_departure = departure
                if trace is not None:
                    trace(
                        f"t={t:.6f} ARR id={conn_id} src={src} dst={dst} "
                        f"bw={b:g} start={start} n={total}"
                    )

        event_count += 1
        if debug_checks and event_count % DEBUG_CHECK_INTERVAL == 0:
            _check_conservation(grids, active, clock, event_count)

    if debug_checks:
        _check_conservation(grids, active, clock, event_count)
        assert not active and all(g.occupied == 0 for g in grids)

    t_end = max(last_measured_departure, last_measured_arrival)
    return MetricsReport(
        arrived=arrived,
        blocked=blocked,
        requested_gbps_sum=requested_sum,
        blocked_gbps_sum=blocked_sum,
        used_bw_time_integral=used_integral,
        allocated_data_bw_time_integral=alloc_integral,
        bp=blocking_probability(blocked, arrived) if arrived else None,
        bbp=(
            bandwidth_blocking_probability(blocked_sum, requested_sum)
            if requested_sum > 0
            else None
        ),
        spectrum_efficiency=(
            spectrum_efficiency(used_integral, alloc_integral)
            if alloc_integral > 0
            else None
        ),
        measured_window=(t_w, t_end),
        sim_seconds_modeled=clock,
    )


def _check_conservation(grids, active, clock, event_count) -> None:
    expected = [0] * len(grids)
    for links, _, total, *_ in active.values():
        for link_id in links:
            expected[link_id] += total
    for link_id, g in enumerate(grids):
        if g.occupied_count() != expected[link_id]:
            raise AssertionError(
                f"conservation violated on link {link_id}: "
                f"{g.occupied_count()} occupied vs {expected[link_id]} held\n"
                f"{_dump_state(grids, clock, event_count)}"
            )
