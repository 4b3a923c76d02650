#!/usr/bin/env python3
"""Regenerate the CSV fixtures used by the frontend figure tests.

Runs the three bundled distribution presets with the request count cut
down (4,000 instead of 200,000) so the whole set simulates in about a
minute, then writes both the raw per-seed CSVs and their seed-aggregated
counterparts to frontend/tests/fixtures/.

Usage:  python3 scripts/make_frontend_fixtures.py
"""

import configparser
import io
import pathlib
import sys
import time

from eonsim.config import load_preset, parse_config
from eonsim.experiment import aggregate_csv, run_sweep

REQUESTS = 4_000
OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def shrink(preset_text: str) -> str:
    cp = configparser.ConfigParser(interpolation=None)
    cp.read_string(preset_text)
    cp.set("fixed", "total_requests", str(REQUESTS))
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def main() -> int:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name in ("uniform", "poisson", "constant"):
        specs = parse_config(shrink(load_preset(name)))
        t0 = time.perf_counter()
        csv_text = run_sweep(specs)
        print(f"{name}: {csv_text.count(chr(10)) - 1} rows in "
              f"{time.perf_counter() - t0:.1f}s", file=sys.stderr)
        (OUT_DIR / f"{name}.csv").write_text(csv_text)
        (OUT_DIR / f"{name}_agg.csv").write_text(aggregate_csv(csv_text))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
