"""Admission control: route, size the slot demand, and first-fit assign.

Pure compute-then-allocate over run-owned grids; a blocked decision never
touches state, and an accepted one allocates atomically on every path link.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .spectrum import (
    SlotDemand,
    allocate,
    first_fit,
    path_free_mask,
    slots_required,
)
from .topology import Path, Topology, shortest_path
from .traffic import Request

NO_CONTIGUOUS_RUN = "no_contiguous_run"


@dataclass(frozen=True)
class Accepted:
    path: Path
    start_slot: int
    demand: SlotDemand


@dataclass(frozen=True)
class Blocked:
    reason: str = NO_CONTIGUOUS_RUN


AdmissionResult = Accepted | Blocked


def admit(
    topology: Topology,
    grids,
    request: Request,
    slot_width_ghz: float,
    guard_ghz: float,
    routing_metric: str = "hops",
    path: Path | None = None,
) -> AdmissionResult:
    """Accept the request on the lowest free run, or block it.

    Routing ignores load: the path depends only on the static topology, so
    callers running many requests may pass a precomputed ``path``.  Blocked
    requests are dropped — no retry, no queueing.
    """
    if path is None:
        path = shortest_path(topology, request.src, request.dst, routing_metric)
    demand = slots_required(request.b_req_gbps, slot_width_ghz, guard_ghz)
    mask = path_free_mask(grids[link_id] for link_id in path.links)
    start = first_fit(mask, demand.total)
    if start is None:
        return Blocked()
    allocate(grids, path, start, demand, conn_id=request.id)
    return Accepted(path=path, start_slot=start, demand=demand)
