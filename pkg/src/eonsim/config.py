"""Sweep configuration files: INI sections with comma-separated lists.

A config holds an optional [sweep] section (replication seeds), an optional
[fixed] section (per-run constants), and one or more [grid*] sections, each
a cartesian product of topologies x slot widths x loads x distribution
variants.  Slot-width entries may be plain numbers or the expanders
``itu:MAX`` (multiples of 6.25 up to MAX) and ``arith:START:STOP:STEP``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from importlib import resources

from .traffic import Constant, DistributionSpec, PoissonBW, Uniform


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class FixedParams:
    """Per-run constants shared by every grid in the file."""

    link_bandwidth_ghz: float = 4000.0
    guard_ghz: float = 10.0
    total_requests: int = 200_000
    warmup_multiplier: float = 3.0
    mu: float = 0.001
    master_seed: int = 0
    routing_metric: str = "hops"


@dataclass(frozen=True)
class SweepSpec:
    """One parameter grid; the runs are its full cartesian product."""

    topologies: tuple[str, ...]
    slot_widths_ghz: tuple[float, ...]
    loads_erlang: tuple[float, ...]
    dist_variants: tuple[DistributionSpec, ...]
    seeds: tuple[int, ...]
    fixed: FixedParams = field(default_factory=FixedParams)

    def __post_init__(self) -> None:
        for name in ("topologies", "slot_widths_ghz", "loads_erlang", "dist_variants", "seeds"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be nonempty")
        if any(w <= 0 for w in self.slot_widths_ghz):
            raise ValueError("slot widths must be positive")
        if any(l <= 0 for l in self.loads_erlang):
            raise ValueError("loads must be positive")

    def run_count(self) -> int:
        return (
            len(self.topologies)
            * len(self.slot_widths_ghz)
            * len(self.loads_erlang)
            * len(self.dist_variants)
            * len(self.seeds)
        )


def itu_grid(max_ghz: float) -> list[float]:
    """Slot widths 6.25*y GHz for positive integers y, up to max_ghz."""
    if max_ghz < 6.25:
        raise ValueError("itu grid needs max_ghz >= 6.25")
    out = []
    y = 1
    while 6.25 * y <= max_ghz + 1e-9:
        out.append(6.25 * y)
        y += 1
    return out


def arithmetic_grid(start: float, stop: float, step: float) -> list[float]:
    """Slot widths start, start+step, ... up to stop inclusive."""
    if start <= 0 or step <= 0 or stop < start:
        raise ValueError("need start > 0, step > 0, stop >= start")
    count = int((stop - start) / step + 1e-9) + 1
    return [round(start + k * step, 9) for k in range(count)]


def _parse_floats(value: str, where: str) -> list[float]:
    out = []
    for token in value.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(float(token))
        except ValueError:
            raise ConfigError(f"{where}: {token!r} is not a number") from None
    if not out:
        raise ConfigError(f"{where}: empty list")
    return out


def _parse_ints(value: str, where: str) -> list[int]:
    out = []
    for token in value.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            out.append(int(token))
        except ValueError:
            raise ConfigError(f"{where}: {token!r} is not an integer") from None
    if not out:
        raise ConfigError(f"{where}: empty list")
    return out


def _parse_widths(value: str, where: str) -> tuple[float, ...]:
    widths: list[float] = []
    for token in value.split(","):
        token = token.strip()
        if not token:
            continue
        if token.startswith("itu:"):
            try:
                widths.extend(itu_grid(float(token[4:])))
            except ValueError as exc:
                raise ConfigError(f"{where}: bad itu token {token!r}: {exc}") from None
        elif token.startswith("arith:"):
            parts = token[6:].split(":")
            if len(parts) != 3:
                raise ConfigError(f"{where}: expected arith:START:STOP:STEP, got {token!r}")
            try:
                widths.extend(arithmetic_grid(*(float(p) for p in parts)))
            except ValueError as exc:
                raise ConfigError(f"{where}: bad arith token {token!r}: {exc}") from None
        else:
            try:
                widths.append(float(token))
            except ValueError:
                raise ConfigError(f"{where}: {token!r} is not a slot width") from None
    if not widths:
        raise ConfigError(f"{where}: empty slot width list")
    return tuple(dict.fromkeys(widths))


_GRID_KEYS = {
    "topologies",
    "slot_widths_ghz",
    "loads_erlang",
    "dist",
    "b_min_gbps",
    "b_max_gbps",
    "b_avg_gbps",
    "b_gbps",
    "granule_ghz",
}

_FIXED_KEYS = {
    "link_bandwidth_ghz": float,
    "guard_ghz": float,
    "total_requests": int,
    "warmup_multiplier": float,
    "mu": float,
    "master_seed": int,
    "routing_metric": str,
}


def _scalar(section, key, where: str) -> float:
    raw = section[key]
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{where}: {key} expects a single number, got {raw!r}") from None


def _dist_variants(section, where: str) -> tuple[DistributionSpec, ...]:
    kind = section.get("dist", "").strip().lower()
    present = {k for k in ("b_min_gbps", "b_max_gbps", "b_avg_gbps", "b_gbps", "granule_ghz") if k in section}
    if kind == "uniform":
        allowed = {"b_max_gbps", "b_min_gbps"}
        if "b_max_gbps" not in present:
            raise ConfigError(f"{where}: dist=uniform requires b_max_gbps")
        b_min = _scalar(section, "b_min_gbps", where) if "b_min_gbps" in section else 1.0
        variants = [
            Uniform(b_min_gbps=b_min, b_max_gbps=b)
            for b in _parse_floats(section["b_max_gbps"], f"{where}.b_max_gbps")
        ]
    elif kind == "poisson":
        allowed = {"b_avg_gbps", "granule_ghz"}
        if "b_avg_gbps" not in present:
            raise ConfigError(f"{where}: dist=poisson requires b_avg_gbps")
        granule = _scalar(section, "granule_ghz", where) if "granule_ghz" in section else 0.001
        variants = [
            PoissonBW(b_avg_gbps=b, granule_ghz=granule)
            for b in _parse_floats(section["b_avg_gbps"], f"{where}.b_avg_gbps")
        ]
    elif kind == "constant":
        allowed = {"b_gbps"}
        if "b_gbps" not in present:
            raise ConfigError(f"{where}: dist=constant requires b_gbps")
        variants = [
            Constant(b_gbps=b) for b in _parse_floats(section["b_gbps"], f"{where}.b_gbps")
        ]
    else:
        raise ConfigError(
            f"{where}: dist must be one of uniform, poisson, constant (got {kind!r})"
        )
    stray = present - allowed
    if stray:
        raise ConfigError(f"{where}: keys {sorted(stray)} do not apply to dist={kind}")
    try:
        return tuple(variants)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def parse_config(text: str) -> list[SweepSpec]:
    """Parse a config file's content into one SweepSpec per [grid*] section."""
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None

    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)
    fixed_kwargs = {}
    grid_sections = []
    for name in cp.sections():
        if name == "sweep":
            for key in cp[name]:
                if key != "seeds":
                    raise ConfigError(f"[sweep]: unknown key {key!r}")
            if "seeds" in cp[name]:
                seeds = tuple(_parse_ints(cp[name]["seeds"], "[sweep].seeds"))
        elif name == "fixed":
            for key, raw in cp[name].items():
                conv = _FIXED_KEYS.get(key)
                if conv is None:
                    raise ConfigError(f"[fixed]: unknown key {key!r}")
                try:
                    fixed_kwargs[key] = conv(raw)
                except ValueError:
                    raise ConfigError(f"[fixed]: bad value for {key}: {raw!r}") from None
        elif name == "grid" or name.startswith("grid.") or name.startswith("grid "):
            grid_sections.append(name)
        else:
            raise ConfigError(
                f"unknown section [{name}] (expected [sweep], [fixed], or [grid*])"
            )
    if not grid_sections:
        raise ConfigError("config defines no [grid*] section")

    try:
        fixed = FixedParams(**fixed_kwargs)
    except ValueError as exc:
        raise ConfigError(f"[fixed]: {exc}") from None
    if fixed.routing_metric not in ("hops", "km"):
        raise ConfigError("[fixed]: routing_metric must be hops or km")

    specs = []
    for name in grid_sections:
        section = cp[name]
        where = f"[{name}]"
        stray = set(section) - _GRID_KEYS
        if stray:
            raise ConfigError(f"{where}: unknown keys {sorted(stray)}")
        for key in ("topologies", "slot_widths_ghz", "loads_erlang", "dist"):
            if key not in section:
                raise ConfigError(f"{where}: missing required key {key!r}")
        topologies = tuple(
            t.strip() for t in section["topologies"].split(",") if t.strip()
        )
        if not topologies:
            raise ConfigError(f"{where}: empty topology list")
        try:
            spec = SweepSpec(
                topologies=topologies,
                slot_widths_ghz=_parse_widths(
                    section["slot_widths_ghz"], f"{where}.slot_widths_ghz"
                ),
                loads_erlang=tuple(
                    _parse_floats(section["loads_erlang"], f"{where}.loads_erlang")
                ),
                dist_variants=_dist_variants(section, where),
                seeds=seeds,
                fixed=fixed,
            )
        except ValueError as exc:
            raise ConfigError(f"{where}: {exc}") from None
        specs.append(spec)
    return specs


def preset_names() -> list[str]:
    """Bundled config names, without the .cfg suffix."""
    root = resources.files("eonsim.data") / "presets"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def load_preset(name: str) -> str:
    """Content of a bundled config; raises ConfigError if absent."""
    path = resources.files("eonsim.data") / "presets" / f"{name}.cfg"
    if not path.is_file():
        raise ConfigError(
            f"unknown preset {name!r} (available: {', '.join(preset_names())})"
        )
    return path.read_text(encoding="utf-8")
