"""Request-stream generation: arrivals, holding times, endpoints, bandwidths.

Each node offers an independent Poisson arrival stream of rate lambda; the
simulation advances one merged process of rate N*lambda and samples the
endpoints per arrival. Bandwidth comes from one of three distributions:
uniform over [b_min, b_max], Poisson over fine granules, or constant.

Demand and spectrum use the same unit scale: 1 Gbps of demand occupies
1 GHz of spectrum.
"""

import math
from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, run_index: int) -> int:
    """Mix (master_seed, run_index) into one 64-bit stream seed.

    splitmix64-style avalanche so that neighbouring run indices give
    unrelated streams; pure integer math, identical on every platform.
    """
    z = ((master_seed & _MASK64) * 0x9E3779B97F4A7C15 + (run_index & _MASK64)) & _MASK64
    for _ in range(2):
        z = (z + 0x9E3779B97F4A7C15) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z = z ^ (z >> 31)
    return z


class RngStream:
    """Deterministic per-run random stream (PCG64 under the hood).

    The same (master_seed, run_index) pair always reproduces the same
    sample sequence. One stream belongs to exactly one run.
    """

    def __init__(self, master_seed: int, run_index: int = 0):
        self.master_seed = master_seed
        self.run_index = run_index
        self.generator = np.random.Generator(
            np.random.PCG64(derive_seed(master_seed, run_index))
        )


@dataclass(frozen=True)
class Uniform:
    """Bandwidth uniform over [b_min_gbps, b_max_gbps] (continuous)."""

    b_max_gbps: float
    b_min_gbps: float = 1.0

    def __post_init__(self):
        if not 0 < self.b_min_gbps <= self.b_max_gbps:
            raise ValueError(
                f"need 0 < b_min <= b_max, got [{self.b_min_gbps}, {self.b_max_gbps}]"
            )


@dataclass(frozen=True)
class PoissonBW:
    """Bandwidth = k * granule with k Poisson-distributed.

    The Poisson mean is the average bandwidth expressed in granules,
    b_avg_gbps / granule_ghz; zero draws are rejected so demands stay
    positive.
    """

    b_avg_gbps: float
    granule_ghz: float = 0.001  # 1 MHz

    def __post_init__(self):
        if self.b_avg_gbps <= 0 or self.granule_ghz <= 0:
            raise ValueError("b_avg_gbps and granule_ghz must be positive")


@dataclass(frozen=True)
class Constant:
    """Every request asks for exactly b_gbps."""

    b_gbps: float

    def __post_init__(self):
        if self.b_gbps <= 0:
            raise ValueError("b_gbps must be positive")


# tagged union of the three bandwidth models
DistributionSpec = Uniform | PoissonBW | Constant


@dataclass(frozen=True)
class TrafficParams:
    """Per-node arrival rate, holding-time rate and node count."""

    lambda_per_node: float
    mu: float
    node_count: int

    def __post_init__(self):
        if self.lambda_per_node <= 0 or self.mu <= 0:
            raise ValueError("lambda_per_node and mu must be positive")
        if self.node_count < 2:
            raise ValueError("node_count must be >= 2")


@dataclass(slots=True)
class Request:
    id: int
    src: int
    dst: int
    b_req_gbps: float
    arrival_s: float
    holding_s: float


def offered_load(params: TrafficParams) -> float:
    """Offered load per node in Erlangs: lambda/mu."""
    return params.lambda_per_node / params.mu


def exponential_inverse_cdf(u: float, rate: float) -> float:
    """-ln(u)/rate for u in (0, 1]."""
    return -math.log(u) / rate


def next_interarrival(rng: RngStream, total_rate: float) -> float:
    """Strictly positive exponential sample with mean 1/total_rate."""
    while True:
        u = 1.0 - rng.generator.random()  # (0, 1]
        x = exponential_inverse_cdf(u, total_rate)
        if x > 0.0:
            return x


def sample_holding(rng: RngStream, mu: float) -> float:
    """Exponential holding time with mean 1/mu."""
    return next_interarrival(rng, mu)


def sample_endpoints(rng: RngStream, node_count: int) -> tuple:
    """Uniform src, then uniform dst over the remaining nodes."""
    gen = rng.generator
    src = int(gen.integers(node_count))
    dst = (src + 1 + int(gen.integers(node_count - 1))) % node_count
    return src, dst


def granules(b_avg_gbps: float, granule_ghz: float) -> int:
    """Average bandwidth expressed as a whole number of granules."""
    if b_avg_gbps <= 0 or granule_ghz <= 0:
        raise ValueError("arguments must be positive")
    n = round(b_avg_gbps / granule_ghz)
    if n < 1:
        raise ValueError(
            f"average bandwidth {b_avg_gbps} Gbps is below one granule of {granule_ghz} GHz"
        )
    return n


def sample_bandwidth(rng: RngStream, spec: DistributionSpec) -> float:
    """One bandwidth draw in Gbps under the given distribution."""
    gen = rng.generator
    if isinstance(spec, Constant):
        return spec.b_gbps
    if isinstance(spec, Uniform):
        return spec.b_min_gbps + (spec.b_max_gbps - spec.b_min_gbps) * gen.random()
    if isinstance(spec, PoissonBW):
        mean = granules(spec.b_avg_gbps, spec.granule_ghz)
        k = 0
        while k == 0:
            k = int(gen.poisson(mean))
        return k * spec.granule_ghz
    raise TypeError(f"unknown distribution spec {spec!r}")


@dataclass
class RequestBatch:
    """Column-wise request stream (numpy arrays share one index)."""

    arrival_s: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    b_req_gbps: np.ndarray
    holding_s: np.ndarray

    def __len__(self):
        return len(self.arrival_s)

    def request(self, i: int) -> Request:
        return Request(
            id=i,
            src=int(self.src[i]),
            dst=int(self.dst[i]),
            b_req_gbps=float(self.b_req_gbps[i]),
            arrival_s=float(self.arrival_s[i]),
            holding_s=float(self.holding_s[i]),
        )


def generate_requests(
    rng: RngStream, params: TrafficParams, spec: DistributionSpec, count: int
) -> RequestBatch:
    """Draw a whole request stream at once.

    Field order is fixed (interarrivals, endpoints, bandwidths, holdings) so
    a given stream always yields the same batch.
    """
    gen = rng.generator
    n = params.node_count
    total_rate = n * params.lambda_per_node
    arrival = np.cumsum(gen.exponential(1.0 / total_rate, size=count))
    src = gen.integers(0, n, size=count)
    dst = (src + 1 + gen.integers(0, n - 1, size=count)) % n
    if isinstance(spec, Constant):
        b = np.full(count, spec.b_gbps)
    elif isinstance(spec, Uniform):
        b = spec.b_min_gbps + (spec.b_max_gbps - spec.b_min_gbps) * gen.random(count)
    elif isinstance(spec, PoissonBW):
        mean = granules(spec.b_avg_gbps, spec.granule_ghz)
        k = gen.poisson(mean, size=count)
        while True:  # zero demands are redrawn (vanishingly rare at real means)
            zeros = k == 0
            if not zeros.any():
                break
            k[zeros] = gen.poisson(mean, size=int(zeros.sum()))
        b = k * spec.granule_ghz
    else:
        raise TypeError(f"unknown distribution spec {spec!r}")
    holding = gen.exponential(1.0 / params.mu, size=count)
    return RequestBatch(arrival, src, dst, b, holding)
