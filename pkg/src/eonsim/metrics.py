"""The three performance ratios, as pure functions over run counters.

Each is undefined on an empty denominator; callers report that case as
absent (None), never as 0.  Zero numerators are legitimate exact zeros —
log-scale display is a plotting concern, not a metrics one.
"""

from __future__ import annotations


def blocking_probability(blocked: int, arrived: int) -> float:
    """Fraction of arrived connection requests that were blocked."""
    if arrived < 1:
        raise ValueError("blocking probability undefined with no arrivals")
    if not 0 <= blocked <= arrived:
        raise ValueError("blocked count must lie in [0, arrived]")
    return blocked / arrived


def bandwidth_blocking_probability(
    blocked_gbps_sum: float, requested_gbps_sum: float
) -> float:
    """Fraction of requested Gbps that was blocked.

    With equal-size requests this cancels to the plain blocking
    probability; with mixed sizes it weights each request by its demand.
    """
    if requested_gbps_sum <= 0:
        raise ValueError("bandwidth blocking undefined with no requested bandwidth")
    if blocked_gbps_sum < 0 or blocked_gbps_sum > requested_gbps_sum:
        raise ValueError("blocked bandwidth must lie in [0, requested]")
    return blocked_gbps_sum / requested_gbps_sum


def spectrum_efficiency(
    used_bw_time_integral: float, allocated_data_bw_time_integral: float
) -> float:
    """Time-weighted carried bandwidth over allocated data-slot bandwidth.

    Numerator: sum of b·holding over accepted connections (Gbps·s).
    Denominator: sum of data_slots·slot_width·holding (GHz·s).  Guard
    slots appear in neither — they carry nothing and are overhead of the
    grid, not of the payload.  Equals 1 exactly when every accepted
    request fills a whole number of slots.
    """
    if allocated_data_bw_time_integral <= 0:
        raise ValueError("spectrum efficiency undefined with nothing allocated")
    if used_bw_time_integral < 0:
        raise ValueError("carried bandwidth integral must be nonnegative")
    return used_bw_time_integral / allocated_data_bw_time_integral
