import math
import random

import pytest

from eonsim.metrics import (
    bandwidth_blocking_probability,
    blocking_probability,
    spectrum_efficiency,
)


class TestBlockingProbability:
    def test_basic_ratio(self):
        assert blocking_probability(5, 100) == 0.05

    def test_zero_blocks_is_exact_zero(self):
        assert blocking_probability(0, 100) == 0.0

    def test_all_blocked(self):
        assert blocking_probability(100, 100) == 1.0

    def test_no_arrivals_undefined(self):
        with pytest.raises(ValueError, match="no arrivals"):
            blocking_probability(0, 0)

    def test_blocked_exceeding_arrived(self):
        with pytest.raises(ValueError):
            blocking_probability(5, 4)


class TestBandwidthBlockingProbability:
    def test_weighted_ratio(self):
        assert bandwidth_blocking_probability(100.0, 100.0 + 50.0 + 50.0) == 0.5

    def test_no_blocks(self):
        assert bandwidth_blocking_probability(0.0, 500.0) == 0.0

    def test_constant_requests_reduce_to_bp(self):
        # equal sizes: the common factor cancels exactly
        b = 100.0
        assert bandwidth_blocking_probability(7 * b, 200 * b) == blocking_probability(7, 200)

    def test_zero_denominator_undefined(self):
        with pytest.raises(ValueError):
            bandwidth_blocking_probability(0.0, 0.0)

    def test_blocked_exceeding_requested(self):
        with pytest.raises(ValueError):
            bandwidth_blocking_probability(10.0, 5.0)


class TestSpectrumEfficiency:
    def test_exact_fit(self):
        # 100 Gbps on one 100 GHz slot, any duration
        tau = 123.0
        assert spectrum_efficiency(100.0 * tau, 100.0 * tau) == 1.0

    def test_ceiling_wastage(self):
        # 50 Gbps forced into 2 slots of 37.5 GHz = 75 GHz allocated
        assert spectrum_efficiency(50.0, 75.0) == pytest.approx(0.6667, abs=1e-4)

    def test_time_weighted_mix(self):
        # equal durations: 100 Gbps and 90 Gbps both on 8 x 12.5 GHz
        used = 100.0 + 90.0
        alloc = 100.0 + 100.0
        assert spectrum_efficiency(used, alloc) == pytest.approx(0.95)

    def test_unequal_durations_weighted(self):
        # 100 Gbps for 3 s, 50 Gbps (on 100 GHz) for 1 s
        used = 100.0 * 3 + 50.0 * 1
        alloc = 100.0 * 3 + 100.0 * 1
        assert spectrum_efficiency(used, alloc) == pytest.approx(350.0 / 400.0)

    def test_nothing_allocated_undefined(self):
        with pytest.raises(ValueError):
            spectrum_efficiency(0.0, 0.0)

    def test_negative_numerator(self):
        with pytest.raises(ValueError):
            spectrum_efficiency(-1.0, 10.0)

    def test_ceiling_wastage_bound(self):
        # per-connection efficiency always beats b/(b+W): wastage < one slot
        rng = random.Random(555)
        for _ in range(2000):
            w = rng.choice([6.25, 12.5, 25.0, 37.5, 50.0, 100.0])
            b = rng.uniform(0.5, 400.0)
            alloc = math.ceil(b / w) * w
            eff = spectrum_efficiency(b, alloc)
            assert eff > b / (b + w)
            assert eff <= 1.0 + 1e-12
