"""Minimum-duration paths that visit appliance types ``1..T`` in order.

The search runs over ``(node, level)`` states, where ``level`` is the length of
the type prefix ``1..level`` already visited in order. Entering a node whose
gene equals ``level + 1`` (the source node included) advances the level by one.
A flow is served when it reaches its destination at level ``T``.

With ``strict_order`` a node carrying a type beyond ``level + 1`` cannot be
entered at that level; otherwise such nodes are transited without effect.

Among equal-duration paths the lexicographically smallest node sequence is
returned. This tie rule is exact for integer weights; with non-integer float
weights, rounding may hide a tie.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ParameterError
from .topology import DemandSet, Topology


@dataclass(frozen=True)
class OrderedPath:
    nodes: tuple[int, ...]
    duration: float
    level_trace: tuple[int, ...]


Flow = tuple[int, int]
FlowResult = tuple[Flow, Optional[OrderedPath]]


def advance(level: int, gene: int, strict: bool) -> Optional[int]:
    """Level after entering a node carrying ``gene``; ``None`` if forbidden."""
    if gene == level + 1:
        return level + 1
    if strict and gene > level + 1:
        return None
    return level


def check_placement(topology: Topology, genes: Sequence[int], num_types: int) -> None:
    if num_types < 0:
        raise ParameterError("number of types must be non-negative")
    if len(genes) != topology.node_count:
        raise ParameterError(f"placement has {len(genes)} genes for {topology.node_count} nodes")
    for i, g in enumerate(genes):
        if not 0 <= g <= num_types:
            raise ParameterError(f"gene {g} at node {i} outside [0, {num_types}]")
        if g and not topology.eligible[i]:
            raise ParameterError(f"node {i} is not eligible for an appliance")


def _cost_to_go(topology: Topology, genes: Sequence[int], destination: int, num_types: int,
                strict: bool, starts: Sequence[tuple[int, int]]) -> dict[tuple[int, int], float]:
    """Reverse Dijkstra from ``(destination, T)`` over the layered graph.

    The search stops once every state no farther than the farthest of
    ``starts`` is settled, which is all the path trace needs.
    """
    if not starts:
        return {}
    width = num_types + 1
    dist = [math.inf] * (topology.node_count * width)
    target = destination * width + num_types
    dist[target] = 0
    heap = [(0, target)]
    preds = topology.predecessors
    pending = {v * width + level for v, level in starts}
    horizon = math.inf
    while heap:
        d, sid = heapq.heappop(heap)
        if d > dist[sid]:
            continue
        if d > horizon:
            break
        if sid in pending:
            pending.discard(sid)
            if not pending:
                horizon = d
        v, level = divmod(sid, width)
        g = genes[v]
        # forward moves (u, l) -> (v, level) exist for these l
        for l in _entry_levels(level, g, strict):
            for u, w in preds[v]:
                prev = u * width + l
                nd = d + w
                if nd < dist[prev]:
                    dist[prev] = nd
                    heapq.heappush(heap, (nd, prev))
    return {divmod(sid, width): x for sid, x in enumerate(dist) if x <= horizon and x < math.inf}


def _entry_levels(level: int, gene: int, strict: bool) -> tuple[int, ...]:
    stay = gene != level + 1 and not (strict and gene > level + 1)
    rise = level >= 1 and gene == level
    if stay and rise:
        return (level, level - 1)
    if stay:
        return (level,)
    if rise:
        return (level - 1,)
    return ()


def _start_state(genes, source, strict) -> Optional[tuple[int, int]]:
    level = advance(0, genes[source], strict)
    return None if level is None else (source, level)


def _trace(topology: Topology, genes: Sequence[int], source: int, destination: int,
           num_types: int, strict: bool, h: dict) -> Optional[OrderedPath]:
    start = _start_state(genes, source, strict)
    if start is None or start not in h:
        return None
    target = (destination, num_types)
    succ = topology.successors

    def tight_moves(state):
        u, level = state
        for v, w in succ[u]:
            nl = advance(level, genes[v], strict)
            if nl is None:
                continue
            nxt = (v, nl)
            if nxt in h and h[state] == w + h[nxt]:
                yield nxt

    # depth-first over tight moves in node order; the first complete walk is the
    # lexicographically smallest shortest one. Positive weights never backtrack.
    path = [start]
    on_path = {start}
    stack = [tight_moves(start)]
    while stack:
        if path[-1] == target:
            break
        for nxt in stack[-1]:
            if nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                stack.append(tight_moves(nxt))
                break
        else:
            stack.pop()
            on_path.discard(path.pop())
    else:
        return None
    nodes = tuple(s[0] for s in path)
    weight = topology.weights
    duration = sum(weight[a, b] for a, b in zip(nodes, nodes[1:]))
    return OrderedPath(nodes, duration, tuple(s[1] for s in path))


def _check_endpoints(topology, source, destination):
    n = topology.node_count
    if not (0 <= source < n and 0 <= destination < n):
        raise ParameterError(f"flow ({source}, {destination}) has an endpoint out of range")
    if source == destination:
        raise ParameterError("source and destination must differ")


def ordered_shortest_path(topology: Topology, genes: Sequence[int], source: int,
                          destination: int, num_types: int,
                          strict_order: bool = False) -> Optional[OrderedPath]:
    """Shortest qualifying path from ``source`` to ``destination``, or ``None``."""
    check_placement(topology, genes, num_types)
    _check_endpoints(topology, source, destination)
    start = _start_state(genes, source, strict_order)
    h = _cost_to_go(topology, genes, destination, num_types, strict_order, [start] if start else [])
    return _trace(topology, genes, source, destination, num_types, strict_order, h)


def all_flow_paths(topology: Topology, genes: Sequence[int], demands: DemandSet,
                   num_types: int, strict_order: bool = False) -> list[FlowResult]:
    """One result per flow, in demand order; ``None`` marks an unallocated flow."""
    check_placement(topology, genes, num_types)
    flows = demands.flows
    for s, d in flows:
        _check_endpoints(topology, s, d)
    by_destination = {}
    results = []
    for s, d in flows:
        if d not in by_destination:
            starts = [st for st in (_start_state(genes, x, strict_order) for x in demands.sources if x != d) if st]
            by_destination[d] = _cost_to_go(topology, genes, d, num_types, strict_order, starts)
        path = _trace(topology, genes, s, d, num_types, strict_order, by_destination[d])
        results.append(((s, d), path))
    return results
