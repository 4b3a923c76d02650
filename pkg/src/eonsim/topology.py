"""Optical network graphs: loading, validation and shortest-path queries.

A topology is an undirected weighted graph of optical nodes and fiber
links. Link ids equal their position in the link list so per-link spectrum
state can be kept in plain lists elsewhere.
"""

import heapq
from dataclasses import dataclass
from importlib import resources

BUILTIN_NAMES = ("nsfnet", "usnet", "single_link")


class TopologyError(ValueError):
    """Invalid topology (bad index, self-loop, duplicate edge, disconnected...)."""


class TopologyParseError(TopologyError):
    """Malformed topology file; message carries the 1-based line number."""


class NoPathError(TopologyError):
    """No route between the requested endpoints."""


@dataclass(frozen=True)
class Link:
    """One fiber span. `id` equals the link's index in Topology.links."""

    id: int
    u: int
    v: int
    length_km: float


@dataclass(frozen=True)
class Path:
    """A simple path: node sequence plus the link ids joining consecutive nodes."""

    nodes: tuple
    links: tuple

    def hop_count(self):
        return len(self.links)


class Topology:
    """Validated immutable network graph.

    Construction checks every structural invariant: endpoint indices in
    range, positive lengths, no self-loops or duplicate undirected edges,
    and connectivity.
    """

    def __init__(self, name, node_count, edges):
        if node_count < 1:
            raise TopologyError(f"node_count must be >= 1, got {node_count}")
        links = []
        seen = set()
        for u, v, length_km in edges:
            i = len(links)
            if not (0 <= u < node_count) or not (0 <= v < node_count):
                raise TopologyError(
                    f"link {i}: endpoint out of range (nodes are 0..{node_count - 1})"
                )
            if u == v:
                raise TopologyError(f"link {i}: self-loop at node {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise TopologyError(f"link {i}: duplicate edge {key}")
            if not length_km > 0:
                raise TopologyError(f"link {i}: nonpositive length {length_km}")
            seen.add(key)
            links.append(Link(i, u, v, float(length_km)))
        self.name = name
        self.node_count = node_count
        self.links = tuple(links)
        adj = [[] for _ in range(node_count)]
        for ln in links:
            adj[ln.u].append((ln.v, ln.id, ln.length_km))
            adj[ln.v].append((ln.u, ln.id, ln.length_km))
        # sorted by neighbor so Dijkstra expansion order is reproducible
        self._adj = [sorted(neigh) for neigh in adj]
        self._check_connected()

    def _check_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            for nbr, _, _ in self._adj[stack.pop()]:
                if nbr not in seen:
                    seen.add(nbr)
                    stack.append(nbr)
        if len(seen) != self.node_count:
            missing = sorted(set(range(self.node_count)) - seen)
            raise TopologyError(f"graph is disconnected; unreachable nodes {missing}")

    @property
    def link_count(self):
        return len(self.links)

    def __repr__(self):
        return f"Topology({self.name!r}, N={self.node_count}, L={self.link_count})"


def load_topology(source: str, name: str = "custom") -> Topology:
    """Parse topology file content.

    Format: '#' starts a comment, blank lines are ignored; the first data
    line is the node count, every following data line is "u v length_km"
    with 0-based node indices.
    """
    node_count = None
    edges = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if node_count is None:
            try:
                node_count = int(line)
            except ValueError:
                raise TopologyParseError(
                    f"line {lineno}: expected node count, got {line!r}"
                ) from None
            continue
        parts = line.split()
        if len(parts) != 3:
            raise TopologyParseError(
                f"line {lineno}: expected 'u v length_km', got {line!r}"
            )
        try:
            u, v = int(parts[0]), int(parts[1])
            length = float(parts[2])
        except ValueError:
            raise TopologyParseError(
                f"line {lineno}: expected 'u v length_km', got {line!r}"
            ) from None
        edges.append((u, v, length))
    if node_count is None:
        raise TopologyParseError("empty topology file")
    return Topology(name, node_count, edges)


def builtin_topology(name: str) -> Topology:
    """Load one of the bundled topologies: nsfnet, usnet or single_link."""
    if name not in BUILTIN_NAMES:
        raise TopologyError(f"unknown topology {name!r}; expected one of {BUILTIN_NAMES}")
    text = resources.files("eonsim.data").joinpath(f"{name}.txt").read_text()
    return load_topology(text, name=name)


def average_nodal_degree(t: Topology) -> float:
    """2E/V: twice the link count over the node count."""
    return 2.0 * t.link_count / t.node_count


def shortest_path(t: Topology, src: int, dst: int, metric: str = "hops") -> Path:
    """Minimum-cost simple path from src to dst.

    `metric` is "hops" (unit cost per link) or "km" (link length). Ties are
    broken by the lexicographically smallest node sequence, so results are
    stable across runs and platforms.
    """
    if metric not in ("hops", "km"):
        raise ValueError(f"unknown metric {metric!r}")
    n = t.node_count
    if not (0 <= src < n) or not (0 <= dst < n):
        raise TopologyError(f"node index out of range: src={src} dst={dst}")
    if src == dst:
        raise TopologyError("src and dst must differ")
    # Dijkstra keyed on (cost, node sequence): among equal-cost candidates
    # the heap yields the lexicographically smallest path first.
    heap = [(0.0, (src,), ())]
    done = set()
    while heap:
        cost, nodes, links = heapq.heappop(heap)
        node = nodes[-1]
        if node in done:
            continue
        done.add(node)
        if node == dst:
            return Path(nodes, links)
        for nbr, link_id, length in t._adj[node]:
            if nbr in done:
                continue
            w = 1.0 if metric == "hops" else length
            heapq.heappush(heap, (cost + w, nodes + (nbr,), links + (link_id,)))
    raise NoPathError(f"no path from {src} to {dst}")


def all_pairs_shortest_paths(t: Topology, metric: str = "hops") -> dict:
    """Path for every ordered node pair, keyed by (src, dst)."""
    return {
        (s, d): shortest_path(t, s, d, metric)
        for s in range(t.node_count)
        for d in range(t.node_count)
        if s != d
    }


def path_cost(t: Topology, path: Path, metric: str = "hops") -> float:
    if metric == "hops":
        return float(len(path.links))
    return sum(t.links[l].length_km for l in path.links)
