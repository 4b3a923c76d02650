"""End-to-end acceptance gate.

Each test prints one ``ACCEPTANCE n: PASS/FAIL`` line (visible under
``pytest -s``) and then asserts.  The heavy multi-seed simulations are
cached at module scope and shared between criteria, so the whole gate
runs in a few minutes on one core.
"""

import csv
import io
import math
import random
import time

from eonsim.config import FixedParams, SweepSpec
from eonsim.engine import SimConfig, erlang_b, run
from eonsim.experiment import CSV_COLUMNS, rows_to_csv, run_sweep
from eonsim.rsa import Blocked, admit
from eonsim.spectrum import (
    SlotGrid,
    first_fit,
    slot_count,
    slots_required,
)
from eonsim.topology import builtin_topology
from eonsim.traffic import (
    Constant,
    PoissonBW,
    Request,
    RngStream,
    TrafficParams,
    Uniform,
    generate_requests,
)

SEEDS = (0, 1, 2, 3, 4)
MU = 0.001
REQUESTS = 200_000

_cache: dict = {}


def verdict(n: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {n}: {detail}"


def single_link_reports(load_link: float) -> list:
    """Five 200k-request runs of Constant{100} on the single link, W=12.5."""
    key = ("single", load_link)
    if key not in _cache:
        topo = builtin_topology("single_link")
        reports = []
        for seed in SEEDS:
            cfg = SimConfig(
                topology=topo,
                slot_width_ghz=12.5,
                dist=Constant(100.0),
                traffic=TrafficParams(
                    lambda_per_node=(load_link / 2) * MU, mu=MU, node_count=2
                ),
                total_requests=REQUESTS,
                master_seed=77001,
                run_index=seed,
            )
            t0 = time.perf_counter()
            reports.append(run(cfg))
            assert time.perf_counter() - t0 < 30.0
        _cache[key] = reports
    return _cache[key]


def nsfnet_reports(dist, width: float, load: float, master_seed: int) -> list:
    key = (type(dist).__name__, width, load, master_seed)
    if key not in _cache:
        topo = builtin_topology("nsfnet")
        _cache[key] = [
            run(
                SimConfig(
                    topology=topo,
                    slot_width_ghz=width,
                    dist=dist,
                    traffic=TrafficParams(
                        lambda_per_node=load * MU, mu=MU, node_count=14
                    ),
                    total_requests=REQUESTS,
                    master_seed=master_seed,
                    run_index=seed,
                )
            )
            for seed in SEEDS
        ]
    return _cache[key]


def mean_bp(reports) -> float:
    return sum(r.bp for r in reports) / len(reports)


def mean_se(reports) -> float:
    return sum(r.spectrum_efficiency for r in reports) / len(reports)


class TestAcceptance:
    def test_1_erlang_b_oracle(self):
        # constant 100 Gbps at W=12.5 occupies 8 data + 1 guard = 9 slots;
        # 320 slots / 9 = 35 independent servers, so the single link is an
        # exact M/M/35/35 system
        demand = slots_required(100.0, 12.5, 10.0)
        servers = slot_count(4000.0, 12.5) // demand.total
        assert demand.total == 9 and servers == 35
        details = []
        ok = True
        for load in (20.0, 25.0):
            reports = single_link_reports(load)
            bps = [r.bp for r in reports]
            mean = sum(bps) / len(bps)
            sem = (
                math.sqrt(sum((b - mean) ** 2 for b in bps) / (len(bps) - 1))
                / math.sqrt(len(bps))
            )
            if sem == 0.0:  # degenerate fallback: pooled binomial error
                n = sum(r.arrived for r in reports)
                sem = math.sqrt(max(mean * (1 - mean), 1e-12) / n)
            target = erlang_b(servers, load)
            dev = abs(mean - target) / sem
            ok = ok and dev <= 3.0
            details.append(f"load {load:g}: bp {mean:.6f} vs B(35)={target:.6f}, {dev:.2f} SE")
        verdict(1, ok, "; ".join(details))

    def test_2_efficiency_anchors(self):
        # low link load (2 E), constant 100 Gbps: efficiency is set purely by
        # how 100 Gbps fits the slot grid
        topo = builtin_topology("single_link")
        results = {}
        for width in (6.25, 12.5, 25.0, 50.0, 100.0, 37.5):
            cfg = SimConfig(
                topology=topo,
                slot_width_ghz=width,
                dist=Constant(100.0),
                traffic=TrafficParams(lambda_per_node=1.0 * MU, mu=MU, node_count=2),
                total_requests=20_000,
                master_seed=77002,
            )
            results[width] = run(cfg).spectrum_efficiency
        ok = all(abs(results[w] - 1.0) <= 1e-9 for w in (6.25, 12.5, 25.0, 50.0, 100.0))
        ok = ok and abs(results[37.5] - 100.0 / 112.5) <= 1e-6
        verdict(
            2,
            ok,
            "se=1 at divisor widths, "
            f"se({37.5})={results[37.5]:.6f} vs {100/112.5:.6f}",
        )

    def test_3_constant_bbp_equals_bp(self):
        reports = single_link_reports(20.0) + single_link_reports(25.0)
        ok = all(r.bbp == r.bp for r in reports)
        verdict(3, ok, f"bbp bit-equal to bp on {len(reports)} constant-traffic runs")

    def test_4_uniform_width_ordering(self):
        dist = Uniform(b_min_gbps=1.0, b_max_gbps=100.0)
        wide = [50.0, 56.25, 62.5, 68.75, 75.0, 81.25, 87.5, 93.75, 100.0]
        bp_at = {
            w: mean_bp(nsfnet_reports(dist, w, 20.0, 77003))
            for w in (6.25, 12.5, *wide)
        }
        se_at = {
            w: mean_se(nsfnet_reports(dist, w, 20.0, 77003)) for w in (12.5, *wide)
        }
        ok = all(bp_at[6.25] <= bp_at[w] and bp_at[12.5] <= bp_at[w] for w in wide)
        ok = ok and all(se_at[12.5] >= se_at[w] for w in wide)
        verdict(
            4,
            ok,
            f"bp(6.25)={bp_at[6.25]:.5f}, bp(12.5)={bp_at[12.5]:.5f} vs "
            f"min wide bp={min(bp_at[w] for w in wide):.5f}; "
            f"se(12.5)={se_at[12.5]:.4f} vs max wide se={max(se_at[w] for w in wide):.4f}",
        )

    def test_5_load_monotonicity(self):
        dist = Uniform(b_min_gbps=1.0, b_max_gbps=100.0)
        bps = [mean_bp(nsfnet_reports(dist, 12.5, load, 77003)) for load in (15.0, 20.0, 25.0)]
        ok = bps[0] <= bps[1] <= bps[2]
        verdict(5, ok, f"bp at 15/20/25 E: {bps[0]:.5f} <= {bps[1]:.5f} <= {bps[2]:.5f}")

    def test_6_constant_width_minima(self):
        dist = Constant(100.0)
        widths = [18.75, 25.0, 31.25, 43.75, 50.0, 56.25, 93.75, 100.0, 106.25]
        bp_at = {w: mean_bp(nsfnet_reports(dist, w, 20.0, 77004)) for w in widths}
        checks = []
        ok = True
        for center in (25.0, 50.0, 100.0):
            below, above = center - 6.25, center + 6.25
            good = bp_at[center] <= bp_at[below] and bp_at[center] <= bp_at[above]
            ok = ok and good
            checks.append(
                f"bp({center:g})={bp_at[center]:.4f} vs "
                f"{bp_at[below]:.4f}/{bp_at[above]:.4f}"
            )
        verdict(6, ok, "; ".join(checks))

    def test_7_property_suites(self):
        ok = True
        notes = []

        # first-fit against a string-scan oracle on random masks
        rng = random.Random(20240707)
        for _ in range(10**5):
            total = rng.randint(1, 64)
            free = rng.getrandbits(total)
            need = rng.randint(1, total)
            want = format(free, f"0{total}b")[::-1].find("1" * need)
            got = first_fit(free, need)
            if got != (want if want >= 0 else None):
                ok = False
                break
        notes.append("first-fit oracle 1e5 masks")

        # allocate/release round-trip and conservation on a random trace
        grid = SlotGrid(12.5, 64)
        held = {}
        for step in range(3000):
            if held and rng.random() < 0.45:
                start, (cid, n) = sorted(held.items())[rng.randrange(len(held))]
                grid.vacate(start, cid)
                del held[start]
            else:
                n = rng.randint(1, 6)
                start = first_fit(grid.free_mask, n)
                if start is None:
                    continue
                grid.occupy(start, n, step)
                held[start] = (step, n)
            if grid.occupied_count() != sum(n for _, n in held.values()):
                ok = False
            owner = grid.owner
            for start, (cid, n) in held.items():
                if any(owner.get(s) != cid for s in range(start, start + n)):
                    ok = False
        for start, (cid, _) in sorted(held.items()):
            grid.vacate(start, cid)
        ok = ok and grid.occupied == 0
        notes.append("conservation+ownership trace")

        # blocked admission leaves no footprint
        topo = builtin_topology("single_link")
        grids = [SlotGrid.for_link(4000.0, 100.0)]
        grids[0].occupy(0, 39, 1)
        snapshot = (grids[0].occupied, tuple(sorted(grids[0].owner.items())))
        res = admit(
            topo,
            grids,
            Request(id=2, src=0, dst=1, b_req_gbps=100.0, arrival_s=0.0, holding_s=1.0),
            100.0,
            10.0,
        )
        ok = ok and isinstance(res, Blocked)
        ok = ok and snapshot == (grids[0].occupied, tuple(sorted(grids[0].owner.items())))
        notes.append("blocked-state immutability")

        # sweep determinism: byte-identical CSV, parallelism-independent
        spec = SweepSpec(
            topologies=("single_link", "nsfnet"),
            slot_widths_ghz=(12.5, 25.0),
            loads_erlang=(20.0,),
            dist_variants=(Uniform(b_max_gbps=100.0),),
            seeds=(0, 1),
            fixed=FixedParams(total_requests=400, master_seed=9),
        )

        def canonical(text: str) -> str:
            rows = list(csv.DictReader(io.StringIO(text)))
            for row in rows:
                row["wall_ms"] = "0"
            return rows_to_csv(rows, CSV_COLUMNS)

        a = canonical(run_sweep(spec, parallelism=1))
        b = canonical(run_sweep(spec, parallelism=1))
        c = canonical(run_sweep(spec, parallelism=2))
        ok = ok and a == b == c
        notes.append("deterministic parallel CSV")

        verdict(7, ok, ", ".join(notes))

    def test_8_distribution_moments(self):
        n = 10**6
        params = TrafficParams(lambda_per_node=1.0, mu=1.0, node_count=2)

        uni = generate_requests(
            RngStream(77005, 0), params, Uniform(b_min_gbps=1.0, b_max_gbps=100.0), n
        ).b_req_gbps
        sigma_u = math.sqrt(99.0**2 / 12.0) / math.sqrt(n)
        ok = abs(uni.mean() - 50.5) <= 5 * sigma_u
        ok = ok and uni.min() >= 1.0 and uni.max() <= 100.0

        poi = generate_requests(
            RngStream(77005, 1), params, PoissonBW(b_avg_gbps=100.0), n
        ).b_req_gbps
        lam = 100.0 / 0.001
        sigma_mean = 0.001 * math.sqrt(lam / n)
        sigma_var = 0.001**2 * math.sqrt(lam * (1 + 2 * lam) / n)
        ok = ok and abs(poi.mean() - 100.0) <= 5 * sigma_mean
        ok = ok and abs(poi.var(ddof=1) - 0.1) <= 5 * sigma_var
        verdict(
            8,
            ok,
            f"uniform mean {uni.mean():.4f} (target 50.5), "
            f"poisson mean {poi.mean():.5f} var {poi.var(ddof=1):.6f} (targets 100, 0.1)",
        )
