"""Problem-file grammar and the placement-plan artifact.

Problem file (ASCII, line oriented, ``#`` starts a comment)::

    n T evolutions
    sources: s1 s2 ...
    destinations: d1 d2 ...
    ineligible: i1 i2 ...        (optional)
    u v w                        (one directed edge per line)

Blank and comment-only lines are skipped but keep their line numbers for
error messages.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cost import Evaluation
from .errors import ProblemFormatError
from .topology import DemandSet, Edge, Topology

UNALLOCATED = "UNALLOCATED"


def format_number(x) -> str:
    """Integral values print without a decimal point; others use ``repr``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if x.is_integer():
        return str(int(x))
    return repr(x)


def parse_number(token: str):
    try:
        return int(token)
    except ValueError:
        return float(token)


@dataclass(frozen=True)
class ProblemFile:
    node_count: int
    num_types: int
    evolutions: int
    sources: tuple[int, ...]
    destinations: tuple[int, ...]
    edges: tuple[tuple[int, int, float], ...]
    ineligible: tuple[int, ...] = ()

    def topology(self) -> Topology:
        banned = set(self.ineligible)
        eligible = tuple(i not in banned for i in range(self.node_count))
        return Topology(self.node_count, tuple(Edge(*e) for e in self.edges), eligible)

    def demands(self) -> DemandSet:
        return DemandSet(self.sources, self.destinations)

    @classmethod
    def from_instance(cls, topology: Topology, demands: DemandSet, num_types: int,
                      evolutions: int) -> "ProblemFile":
        return cls(
            node_count=topology.node_count,
            num_types=num_types,
            evolutions=evolutions,
            sources=demands.sources,
            destinations=demands.destinations,
            edges=tuple(tuple(e) for e in topology.edges),
            ineligible=tuple(i for i, ok in enumerate(topology.eligible) if not ok),
        )


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _ints(tokens, number, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ProblemFormatError(number, f"{what} must be integers") from None


def _node_list(line, number, key, node_count, required=True):
    prefix = key + ":"
    if not line.startswith(prefix):
        raise ProblemFormatError(number, f"expected '{prefix}' line")
    nodes = _ints(line[len(prefix):].split(), number, key)
    if required and not nodes:
        raise ProblemFormatError(number, f"{key} list is empty")
    if len(set(nodes)) != len(nodes):
        raise ProblemFormatError(number, f"duplicate node in {key}")
    for v in nodes:
        if not 0 <= v < node_count:
            raise ProblemFormatError(number, f"{key} node {v} out of range")
    return tuple(nodes)


def parse_problem(text: str) -> ProblemFile:
    lines = list(_content_lines(text))

    def need(index, what):
        if index >= len(lines):
            prev = lines[index - 1][0] if index else 0
            raise ProblemFormatError(prev + 1, f"missing {what} line")
        return lines[index]

    number, header = need(0, "header")
    parts = header.split()
    if len(parts) != 3:
        raise ProblemFormatError(number, "header must be 'n T evolutions'")
    n, num_types, evolutions = _ints(parts, number, "header fields")
    if n < 1:
        raise ProblemFormatError(number, "node count must be positive")
    if num_types < 0:
        raise ProblemFormatError(number, "number of types must be non-negative")
    if evolutions < 1:
        raise ProblemFormatError(number, "evolutions must be positive")

    number, line = need(1, "sources")
    sources = _node_list(line, number, "sources", n)
    number, line = need(2, "destinations")
    destinations = _node_list(line, number, "destinations", n)

    rest = lines[3:]
    ineligible = ()
    if rest and rest[0][1].startswith("ineligible:"):
        number, line = rest.pop(0)
        ineligible = _node_list(line, number, "ineligible", n, required=False)

    edges = []
    seen = set()
    for number, line in rest:
        parts = line.split()
        if len(parts) != 3:
            raise ProblemFormatError(number, "edge must be 'u v w'")
        u, v = _ints(parts[:2], number, "edge endpoints")
        try:
            w = parse_number(parts[2])
        except ValueError:
            raise ProblemFormatError(number, f"bad weight {parts[2]!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ProblemFormatError(number, f"endpoint out of range in ({u},{v})")
        if u == v:
            raise ProblemFormatError(number, f"self-loop at {u}")
        if not math.isfinite(w):
            raise ProblemFormatError(number, "weight must be finite")
        if w < 0:
            raise ProblemFormatError(number, "negative weight")
        if (u, v) in seen:
            raise ProblemFormatError(number, f"duplicate edge ({u},{v})")
        seen.add((u, v))
        edges.append((u, v, w))
    return ProblemFile(n, num_types, evolutions, sources, destinations, tuple(edges), ineligible)


def write_problem(problem: ProblemFile) -> str:
    out = [
        f"{problem.node_count} {problem.num_types} {problem.evolutions}",
        "sources: " + " ".join(map(str, problem.sources)),
        "destinations: " + " ".join(map(str, problem.destinations)),
    ]
    if problem.ineligible:
        out.append("ineligible: " + " ".join(map(str, problem.ineligible)))
    out.extend(f"{u} {v} {format_number(w)}" for u, v, w in problem.edges)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class PlacementPlan:
    """Deployment handed to a downstream scheduler."""

    status: str
    placements: tuple[tuple[int, int], ...]
    global_cost: float
    breakdown: tuple[float, float, float]
    flows: tuple[tuple[int, int, Optional[tuple[int, ...]]], ...]
    metadata: dict = field(default_factory=dict)

    def genes(self, node_count: int) -> list[int]:
        g = [0] * node_count
        for node, t in self.placements:
            g[node] = t
        return g


def plan_from_evaluation(status: str, genes: Sequence[int], evaluation: Evaluation,
                         metadata: Optional[dict] = None) -> PlacementPlan:
    return PlacementPlan(
        status=status,
        placements=tuple((i, g) for i, g in enumerate(genes) if g),
        global_cost=evaluation.fitness,
        breakdown=(evaluation.f_sm, evaluation.f_path, evaluation.f_unalloc),
        flows=tuple((s, d, None if p is None else p.nodes) for (s, d), p in evaluation.flow_results),
        metadata=dict(metadata or {}),
    )


def write_plan(plan: PlacementPlan, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(plan_to_dict(plan), indent=2, sort_keys=True) + "\n").encode("ascii")
    if fmt != "text":
        raise ValueError(f"unknown plan format {fmt!r}")
    out = []
    if plan.status != "SOLVED":
        out.append(f"STATUS {plan.status}")
    out.extend(f"SM {node} {t}" for node, t in plan.placements)
    out.append(f"COST {format_number(plan.global_cost)}")
    out.append("BREAKDOWN " + " ".join(format_number(x) for x in plan.breakdown))
    for s, d, path in plan.flows:
        route = UNALLOCATED if path is None else "-".join(map(str, path))
        out.append(f"FLOW {s} {d} {route}")
    return ("\n".join(out) + "\n").encode("ascii")


def plan_to_dict(plan: PlacementPlan) -> dict:
    f_sm, f_path, f_unalloc = plan.breakdown
    return {
        "status": plan.status,
        "placements": [{"node": n, "type": t} for n, t in plan.placements],
        "global_cost": plan.global_cost,
        "breakdown": {"f_sm": f_sm, "f_path": f_path, "f_unalloc": f_unalloc},
        "flows": [{"source": s, "destination": d, "path": None if p is None else list(p)}
                  for s, d, p in plan.flows],
        "metadata": plan.metadata,
    }


def parse_plan_json(data) -> PlacementPlan:
    doc = json.loads(data)
    b = doc["breakdown"]
    return PlacementPlan(
        status=doc["status"],
        placements=tuple((p["node"], p["type"]) for p in doc["placements"]),
        global_cost=doc["global_cost"],
        breakdown=(b["f_sm"], b["f_path"], b["f_unalloc"]),
        flows=tuple((f["source"], f["destination"], None if f["path"] is None else tuple(f["path"]))
                    for f in doc["flows"]),
        metadata=doc.get("metadata", {}),
    )


def parse_plan_text(data) -> PlacementPlan:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    status = "SOLVED"
    placements, flows = [], []
    cost = breakdown = None
    for line in data.splitlines():
        parts = line.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "STATUS":
            status = parts[1]
        elif tag == "SM":
            placements.append((int(parts[1]), int(parts[2])))
        elif tag == "COST":
            cost = parse_number(parts[1])
        elif tag == "BREAKDOWN":
            breakdown = tuple(parse_number(x) for x in parts[1:4])
        elif tag == "FLOW":
            route = None if parts[3] == UNALLOCATED else tuple(int(x) for x in parts[3].split("-"))
            flows.append((int(parts[1]), int(parts[2]), route))
        else:
            raise ValueError(f"unknown plan line {line!r}")
    return PlacementPlan(status, tuple(placements), cost, breakdown, tuple(flows))
