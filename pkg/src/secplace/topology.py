"""Directed weighted graphs, demand sets and the experiment topology generators."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

from .errors import ParameterError, TopologyError


class Edge(NamedTuple):
    src: int
    dst: int
    weight: float


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class Topology:
    """Directed graph on nodes ``0..node_count-1``.

    ``eligible[i]`` says whether node ``i`` may host an appliance; it defaults
    to all-true. Construction does not validate, call :func:`validate`.
    """

    node_count: int
    edges: tuple[Edge, ...]
    eligible: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if not self.eligible:
            object.__setattr__(self, "eligible", (True,) * self.node_count)
        else:
            object.__setattr__(self, "eligible", tuple(bool(e) for e in self.eligible))

    @cached_property
    def successors(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        """Out-neighbours of every node as ``(node, weight)`` sorted by node."""
        out = [[] for _ in range(self.node_count)]
        for u, v, w in self.edges:
            out[u].append((v, w))
        return tuple(tuple(sorted(row)) for row in out)

    @cached_property
    def predecessors(self) -> tuple[tuple[tuple[int, float], ...], ...]:
        inc = [[] for _ in range(self.node_count)]
        for u, v, w in self.edges:
            inc[v].append((u, w))
        return tuple(tuple(sorted(row)) for row in inc)

    @cached_property
    def weights(self) -> dict[tuple[int, int], float]:
        return {(u, v): w for u, v, w in self.edges}

    @property
    def eligible_nodes(self) -> list[int]:
        return [i for i, ok in enumerate(self.eligible) if ok]

    def with_eligibility(self, eligible: Sequence[bool]) -> "Topology":
        return Topology(self.node_count, self.edges, tuple(eligible))


@dataclass(frozen=True)
class DemandSet:
    """Flows are the cross product of sources and destinations."""

    sources: tuple[int, ...]
    destinations: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(int(s) for s in self.sources))
        object.__setattr__(self, "destinations", tuple(int(d) for d in self.destinations))
        for name, nodes in (("sources", self.sources), ("destinations", self.destinations)):
            if not nodes:
                raise ParameterError(f"{name} must be non-empty")
            if len(set(nodes)) != len(nodes):
                raise ParameterError(f"duplicate node in {name}")

    @property
    def flows(self) -> list[tuple[int, int]]:
        return sorted(itertools.product(self.sources, self.destinations))

    def __len__(self):
        return len(self.sources) * len(self.destinations)


def validate(topology: Topology) -> list[Violation]:
    """Return every violated topology invariant; an empty list means valid."""
    report = []
    n = topology.node_count
    if n < 1:
        report.append(Violation("node count", f"{n} is not positive"))
    if len(topology.eligible) != n:
        report.append(Violation("eligibility", f"{len(topology.eligible)} flags for {n} nodes"))
    seen = set()
    for u, v, w in topology.edges:
        if not (0 <= u < n and 0 <= v < n):
            report.append(Violation("endpoint out of range", f"({u},{v})"))
        if u == v:
            report.append(Violation("self-loop", f"({u},{v})"))
        if w < 0:
            report.append(Violation("negative weight", f"({u},{v}) weight {w}"))
        if (u, v) in seen:
            report.append(Violation("duplicate edge", f"({u},{v})"))
        seen.add((u, v))
    return report


def require_valid(topology: Topology) -> Topology:
    report = validate(topology)
    if report:
        raise TopologyError(report)
    return topology


def check_demands(topology: Topology, demands: DemandSet) -> None:
    for node in demands.sources + demands.destinations:
        if not 0 <= node < topology.node_count:
            raise ParameterError(f"demand endpoint {node} out of range")
    both = sorted(set(demands.sources) & set(demands.destinations))
    if both:
        raise ParameterError(f"node {both[0]} is both a source and a destination")


def _is_integral(x) -> bool:
    return float(x).is_integer()


def generate_random(n: int, edge_probability: float, weight_range=(1, 10), seed: int = 0) -> Topology:
    """Directed Erdos-Renyi graph.

    Every ordered pair ``(u, v)``, ``u != v``, gets an edge with probability
    ``edge_probability``. Weights are uniform integers when both bounds are
    integral, uniform reals otherwise.
    """
    lo, hi = weight_range
    if n < 2:
        raise ParameterError("n must be at least 2")
    if not 0 < edge_probability <= 1:
        raise ParameterError("edge_probability must lie in (0, 1]")
    if lo < 0 or hi < lo:
        raise ParameterError(f"bad weight range [{lo}, {hi}]")
    rng = random.Random(seed)
    integral = _is_integral(lo) and _is_integral(hi)
    edges = []
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            # draw the weight unconditionally so the stream does not depend on p
            keep = rng.random() < edge_probability
            w = rng.randint(int(lo), int(hi)) if integral else rng.uniform(lo, hi)
            if keep:
                edges.append(Edge(u, v, w))
    return Topology(n, tuple(edges))


def default_random_demands(n: int) -> DemandSet:
    """First and last ``ceil(n/10)`` nodes as sources and destinations."""
    m = max(1, -(-n // 10))
    return DemandSet(tuple(range(m)), tuple(range(n - m, n)))


@dataclass(frozen=True)
class FatTreeLayout:
    k: int

    @property
    def hosts(self) -> range:
        return range(self.k ** 3 // 4)

    @property
    def edge_switches(self) -> range:
        base = self.k ** 3 // 4
        return range(base, base + self.k ** 2 // 2)

    @property
    def aggregation_switches(self) -> range:
        base = self.k ** 3 // 4 + self.k ** 2 // 2
        return range(base, base + self.k ** 2 // 2)

    @property
    def core_switches(self) -> range:
        base = self.k ** 3 // 4 + self.k ** 2
        return range(base, base + (self.k // 2) ** 2)

    @property
    def node_count(self) -> int:
        return self.k ** 3 // 4 + self.k ** 2 + (self.k // 2) ** 2

    def pod_of_host(self, h: int) -> int:
        return h // (self.k ** 2 // 4)


def generate_fat_tree(k: int, weight: float = 1, reverse: bool = False) -> tuple[Topology, DemandSet]:
    """k-ary fat tree with hosts, then edge, aggregation and core switches.

    Pods ``0..k/2-1`` hold the source hosts and the remaining pods the
    destination hosts. Each physical link becomes a single directed edge
    pointing from the source side towards the destination side: upward inside
    source pods, downward inside destination pods. ``reverse`` flips every
    edge and swaps sources with destinations.
    """
    if k < 2 or k % 2:
        raise ParameterError(f"fat-tree arity must be even and >= 2, got {k}")
    if weight <= 0:
        raise ParameterError("weight must be positive")
    lay = FatTreeLayout(k)
    half = k // 2
    hosts_per_pod = k * k // 4
    links = []  # (lower layer, upper layer, pod)
    for pod in range(k):
        edges_of_pod = [lay.edge_switches.start + pod * half + e for e in range(half)]
        aggs_of_pod = [lay.aggregation_switches.start + pod * half + a for a in range(half)]
        for e, esw in enumerate(edges_of_pod):
            for j in range(half):
                links.append((pod * hosts_per_pod + e * half + j, esw, pod))
            for asw in aggs_of_pod:
                links.append((esw, asw, pod))
        for a, asw in enumerate(aggs_of_pod):
            for j in range(half):
                links.append((asw, lay.core_switches.start + a * half + j, pod))
    edges = []
    for lower, upper, pod in links:
        upward = pod < half
        u, v = (lower, upper) if upward else (upper, lower)
        if reverse:
            u, v = v, u
        edges.append(Edge(u, v, weight))
    edges.sort()
    n_hosts = len(lay.hosts)
    src = tuple(range(n_hosts // 2))
    dst = tuple(range(n_hosts // 2, n_hosts))
    if reverse:
        src, dst = dst, src
    return Topology(lay.node_count, tuple(edges)), DemandSet(src, dst)


def generate_chain(n: int, weight: float = 1, endpoints_eligible: bool = True,
                   eligible: Optional[Sequence[bool]] = None) -> tuple[Topology, DemandSet]:
    """Directed path ``0 -> 1 -> ... -> n-1`` with a single flow end to end."""
    if n < 2:
        raise ParameterError("chain needs at least two nodes")
    edges = tuple(Edge(i, i + 1, weight) for i in range(n - 1))
    if eligible is None:
        eligible = [True] * n
        if not endpoints_eligible:
            eligible[0] = eligible[-1] = False
    return Topology(n, edges, tuple(eligible)), DemandSet((0,), (n - 1,))
