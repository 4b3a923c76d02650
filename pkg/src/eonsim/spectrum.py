"""Per-link slot occupancy: contiguity queries, allocation, release.

A link's spectrum is divided into ``total_slots`` slots of ``slot_width_ghz``
each; any remainder narrower than one slot is permanently unusable and never
counted.  Occupancy is a bitmask (bit i = slot i occupied) plus a run table
mapping each connection's start slot to its length, so ownership queries and
conservation checks stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .topology import Path
from .traffic import Request


class SpectrumError(Exception):
    """State-corruption signal: the run must abort, not continue."""


class OccupancyConflictError(SpectrumError):
    pass


class OwnershipError(SpectrumError):
    pass


def _exact(quotient: float) -> float:
    # Inputs are short decimals; 1e-9 rounding removes binary noise before
    # floor/ceil so e.g. 4000/12.5 can never land on 319.999... or 320.000...1.
    return round(quotient, 9)


def slot_count(bandwidth_ghz: float, slot_width_ghz: float) -> int:
    """Number of whole slots of the given width that fit in the link band."""
    if bandwidth_ghz <= 0 or slot_width_ghz <= 0:
        raise ValueError("bandwidth and slot width must be positive")
    if slot_width_ghz > bandwidth_ghz:
        raise ValueError(
            f"slot width {slot_width_ghz} GHz exceeds link bandwidth "
            f"{bandwidth_ghz} GHz (zero slots)"
        )
    return math.floor(_exact(bandwidth_ghz / slot_width_ghz))


@dataclass(frozen=True)
class SlotDemand:
    data_slots: int
    guard_slots: int

    def __post_init__(self) -> None:
        if self.data_slots < 1:
            raise ValueError("data_slots must be >= 1")
        if self.guard_slots < 0:
            raise ValueError("guard_slots must be >= 0")

    @property
    def total(self) -> int:
        return self.data_slots + self.guard_slots


def slots_required(
    b_req_gbps: float, slot_width_ghz: float, guard_ghz: float
) -> SlotDemand:
    """Slot demand for a request: data slots plus appended guard slots.

    Demand in Gbps converts 1:1 to GHz of spectrum.  The guard band is
    rounded up to whole slots because slots are the allocation unit.
    """
    if b_req_gbps <= 0 or slot_width_ghz <= 0:
        raise ValueError("bandwidth and slot width must be positive")
    if guard_ghz < 0:
        raise ValueError("guard band must be >= 0")
    data = max(1, math.ceil(_exact(b_req_gbps / slot_width_ghz)))
    guard = math.ceil(_exact(guard_ghz / slot_width_ghz))
    return SlotDemand(data_slots=data, guard_slots=guard)


def first_fit(free_mask: int, need: int) -> int | None:
    """Lowest start index of a free run of length ``need``, or None.

    Folds the mask with shift-ANDs (doubling the shift each pass) so bit i
    survives iff slots [i, i+need) are all free — O(log need) big-int ops.
    """
    if need < 1:
        raise ValueError("need must be >= 1")
    m = free_mask
    remaining = need - 1
    shift = 1
    while remaining and m:
        step = min(shift, remaining)
        m &= m >> step
        remaining -= step
        shift <<= 1
    if not m:
        return None
    return (m & -m).bit_length() - 1


class SlotGrid:
    """Occupancy of one link: a free/occupied bitmask plus run ownership."""

    __slots__ = ("slot_width_ghz", "total_slots", "_full", "_occ", "_runs")

    def __init__(self, slot_width_ghz: float, total_slots: int) -> None:
        if slot_width_ghz <= 0:
            raise ValueError("slot width must be positive")
        if total_slots < 1:
            raise ValueError("total_slots must be >= 1")
        self.slot_width_ghz = slot_width_ghz
        self.total_slots = total_slots
        self._full = (1 << total_slots) - 1
        self._occ = 0
        self._runs: dict[int, tuple[int, int]] = {}  # start -> (conn_id, length)

    @classmethod
    def for_link(cls, bandwidth_ghz: float, slot_width_ghz: float) -> "SlotGrid":
        return cls(slot_width_ghz, slot_count(bandwidth_ghz, slot_width_ghz))

    @property
    def occupied(self) -> int:
        return self._occ

    @property
    def free_mask(self) -> int:
        return self._full ^ self._occ

    @property
    def owner(self) -> dict[int, int]:
        """Slot index -> connection id, materialized from the run table."""
        out: dict[int, int] = {}
        for start, (conn_id, length) in self._runs.items():
            for slot in range(start, start + length):
                out[slot] = conn_id
        return out

    def occupied_count(self) -> int:
        return self._occ.bit_count()

    def occupy(self, start: int, length: int, conn_id: int) -> None:
        if length < 1 or start < 0 or start + length > self.total_slots:
            raise ValueError(
                f"run [{start}, {start + length}) outside grid of "
                f"{self.total_slots} slots"
            )
        mask = ((1 << length) - 1) << start
        if mask & self._occ:
            raise OccupancyConflictError(
                f"slots in [{start}, {start + length}) already occupied"
            )
        self._occ |= mask
        self._runs[start] = (conn_id, length)

    def vacate(self, start: int, conn_id: int) -> None:
        run = self._runs.get(start)
        if run is None or run[0] != conn_id:
            raise OwnershipError(
                f"connection {conn_id} does not own a run starting at {start}"
            )
        length = run[1]
        self._occ ^= ((1 << length) - 1) << start
        del self._runs[start]

    def render(self) -> str:
        """One char per slot: 'X' occupied, '.' free."""
        occ = self._occ
        return "".join("X" if occ >> i & 1 else "." for i in range(self.total_slots))


def path_free_mask(grids) -> int:
    """Bitmask of slots simultaneously free on every grid (continuity)."""
    grids = list(grids)
    if not grids:
        raise ValueError("path must have at least one link")
    first = grids[0]
    mask = first.free_mask
    for g in grids[1:]:
        if (
            g.total_slots != first.total_slots
            or g.slot_width_ghz != first.slot_width_ghz
        ):
            raise ValueError("mismatched grid dimensions along path")
        mask &= g.free_mask
    return mask


def allocate(
    grids, path: Path, start: int, demand: SlotDemand, conn_id: int
) -> None:
    """Occupy [start, start+demand.total) on every link of the path.

    ``grids`` is the per-link grid list indexed by link id.  Raises
    OccupancyConflictError if any slot is taken; since admission checks the
    intersection first, a conflict here means corrupted state.
    """
    done = []
    try:
        for link_id in path.links:
            grids[link_id].occupy(start, demand.total, conn_id)
            done.append(link_id)
    except OccupancyConflictError:
        for link_id in done:  # no partial allocation may persist
            grids[link_id].vacate(start, conn_id)
        raise


def release(grids, conn: "ActiveConnection") -> None:
    """Free the connection's slots on all its path links."""
    for link_id in conn.path.links:
        grids[link_id].vacate(conn.start_slot, conn.request.id)


@dataclass(frozen=True)
class ActiveConnection:
    """An admitted request holding the same slot run on all its path links."""

    request: Request
    path: Path
    start_slot: int
    demand: SlotDemand
    departure_s: float


def render_raster(grids) -> str:
    """Debug snapshot: one line per link, 'X' occupied, '.' free."""
    return "\n".join(g.render() for g in grids)
