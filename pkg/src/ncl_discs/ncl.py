"""Constraint-logic machines: graphs, orientation states, flip reachability.

A machine is a simple planar 3-regular graph whose nodes are AND or
protected-OR, with edge weights 1 or 2 and a minimum in-flow of 2 at every
node. A state orients every edge; a flip reverses one edge while keeping
every node's incoming weight at least 2 and never pointing both designated
inputs of a protected-OR node inward at once.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx

MIN_INFLOW = 2


class NodeKind(Enum):
    AND = "AND"
    PROTECTED_OR = "POR"


@dataclass(frozen=True)
class Edge:
    eid: str
    a: str
    b: str
    weight: int

    def other(self, node: str) -> str:
        return self.b if node == self.a else self.a


@dataclass(frozen=True)
class ConstraintGraph:
    nodes: dict[str, NodeKind]
    edges: dict[str, Edge]
    por_inputs: dict[str, tuple[str, str]]
    node_order: tuple[str, ...] = field(default=())
    edge_order: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.node_order:
            object.__setattr__(self, "node_order", tuple(self.nodes))
        if not self.edge_order:
            object.__setattr__(self, "edge_order", tuple(self.edges))

    def incident(self, node: str) -> list[Edge]:
        return [e for e in self.edges.values() if node in (e.a, e.b)]

    def neighbors(self, node: str) -> list[str]:
        return [e.other(node) for e in self.incident(node)]


@dataclass(frozen=True)
class NCLState:
    """Orientation assignment: edge id -> node id the edge points toward."""

    toward: tuple[tuple[str, str], ...]

    @staticmethod
    def from_dict(d: dict[str, str]) -> "NCLState":
        return NCLState(tuple(sorted(d.items())))

    def as_dict(self) -> dict[str, str]:
        return dict(self.toward)

    def head(self, eid: str) -> str:
        for k, v in self.toward:
            if k == eid:
                return v
        raise KeyError(eid)

    def flip(self, g: ConstraintGraph, eid: str) -> "NCLState":
        d = self.as_dict()
        d[eid] = g.edges[eid].other(d[eid])
        return NCLState.from_dict(d)


class QueryKind(Enum):
    STATE_TO_STATE = "state-to-state"
    STATE_TO_EDGE = "state-to-edge"
    EDGE_TO_EDGE = "edge-to-edge"
    EDGE_TO_STATE = "edge-to-state"


@dataclass(frozen=True)
class EdgeGoal:
    """An edge pinned to a required orientation (edge id, toward-node)."""

    eid: str
    toward: str


@dataclass(frozen=True)
class NCLQuery:
    kind: QueryKind
    state_from: NCLState | None = None
    state_to: NCLState | None = None
    edge_from: EdgeGoal | None = None
    edge_to: EdgeGoal | None = None

    @staticmethod
    def state_to_state(s1: NCLState, s2: NCLState) -> "NCLQuery":
        return NCLQuery(QueryKind.STATE_TO_STATE, state_from=s1, state_to=s2)

    @staticmethod
    def state_to_edge(s1: NCLState, g: ConstraintGraph, eid: str) -> "NCLQuery":
        # goal: the edge ends up opposite to its orientation in s1
        goal = EdgeGoal(eid, g.edges[eid].other(s1.head(eid)))
        return NCLQuery(QueryKind.STATE_TO_EDGE, state_from=s1, edge_to=goal)

    @staticmethod
    def edge_to_state(g: ConstraintGraph, eid: str, s2: NCLState) -> "NCLQuery":
        start = EdgeGoal(eid, g.edges[eid].other(s2.head(eid)))
        return NCLQuery(QueryKind.EDGE_TO_STATE, edge_from=start, state_to=s2)

    @staticmethod
    def edge_to_edge(e1: EdgeGoal, e2: EdgeGoal) -> "NCLQuery":
        return NCLQuery(QueryKind.EDGE_TO_EDGE, edge_from=e1, edge_to=e2)


@dataclass(frozen=True)
class FlipWitness:
    """Edge ids flipped in order; replaying from the start state stays legal."""

    start: NCLState
    flips: tuple[str, ...]

    def replay(self, g: ConstraintGraph) -> list[NCLState]:
        states = [self.start]
        for eid in self.flips:
            states.append(states[-1].flip(g, eid))
        return states


def validate_graph(g: ConstraintGraph) -> list[str]:
    """Return human-readable invariant violations; empty means well-formed."""
    errs: list[str] = []
    seen_pairs: set[frozenset[str]] = set()
    for e in g.edges.values():
        if e.a == e.b:
            errs.append(f"edge {e.eid}: self-loop at {e.a}")
            continue
        if e.a not in g.nodes or e.b not in g.nodes:
            errs.append(f"edge {e.eid}: unknown endpoint")
            continue
        pair = frozenset((e.a, e.b))
        if pair in seen_pairs:
            errs.append(f"edge {e.eid}: parallel edge between {e.a} and {e.b}")
        seen_pairs.add(pair)
        if e.weight not in (1, 2):
            errs.append(f"edge {e.eid}: weight {e.weight} not in {{1,2}}")
    for nid, kind in g.nodes.items():
        inc = g.incident(nid)
        if len(inc) != 3:
            errs.append(f"node {nid}: degree {len(inc)} != 3")
            continue
        weights = sorted(e.weight for e in inc)
        if kind is NodeKind.AND and weights != [1, 1, 2]:
            errs.append(f"node {nid}: AND requires weights 1,1,2 but has {weights}")
        if kind is NodeKind.PROTECTED_OR:
            if weights != [2, 2, 2]:
                errs.append(f"node {nid}: protected-OR requires weights 2,2,2 but has {weights}")
            inputs = g.por_inputs.get(nid)
            if inputs is None:
                errs.append(f"node {nid}: protected-OR lacks input designation")
            else:
                ids = {e.eid for e in inc}
                if len(set(inputs)) != 2 or not set(inputs) <= ids:
                    errs.append(f"node {nid}: input designation {inputs} not two incident edges")
    for nid in g.por_inputs:
        if g.nodes.get(nid) is not NodeKind.PROTECTED_OR:
            errs.append(f"node {nid}: input designation on non protected-OR node")
    if not errs:
        gx = nx.Graph()
        gx.add_nodes_from(g.nodes)
        gx.add_edges_from((e.a, e.b) for e in g.edges.values())
        planar, _ = nx.check_planarity(gx)
        if not planar:
            errs.append("graph is not planar")
    return errs


def in_flow(g: ConstraintGraph, s: NCLState, node: str) -> int:
    if node not in g.nodes:
        raise KeyError(f"unknown node {node}")
    return sum(e.weight for e in g.incident(node) if s.head(e.eid) == node)


def is_valid_state(g: ConstraintGraph, s: NCLState) -> bool:
    return all(in_flow(g, s, n) >= MIN_INFLOW for n in g.nodes)


def is_protected_safe(g: ConstraintGraph, s: NCLState) -> bool:
    for nid, (i1, i2) in g.por_inputs.items():
        if s.head(i1) == nid and s.head(i2) == nid:
            return False
    return True


def _legal(g: ConstraintGraph, s: NCLState) -> bool:
    return is_valid_state(g, s) and is_protected_safe(g, s)


def legal_flips(g: ConstraintGraph, s: NCLState) -> set[str]:
    """Edges whose flip keeps the state valid and protected-safe."""
    return {eid for eid in g.edges if _legal(g, s.flip(g, eid))}


def all_states(g: ConstraintGraph):
    """Iterate every orientation assignment (2^|E| of them)."""
    eids = sorted(g.edges)
    for choice in itertools.product((0, 1), repeat=len(eids)):
        d = {}
        for eid, c in zip(eids, choice):
            e = g.edges[eid]
            d[eid] = e.a if c == 0 else e.b
        yield NCLState.from_dict(d)


def all_legal_states(g: ConstraintGraph) -> list[NCLState]:
    return [s for s in all_states(g) if _legal(g, s)]


class StateSpaceBudgetError(RuntimeError):
    """Raised when a search would enumerate more states than allowed."""


def _check_budget(g: ConstraintGraph, budget: int) -> None:
    if 2 ** len(g.edges) > budget:
        raise StateSpaceBudgetError(
            f"state space 2^{len(g.edges)} exceeds budget {budget}"
        )


def _bfs(
    g: ConstraintGraph,
    sources: list[NCLState],
    goal,
) -> tuple[bool, FlipWitness | None]:
    """Deterministic BFS over legal states, expanding flips in sorted order."""
    parents: dict[NCLState, tuple[NCLState, str] | None] = {}
    queue: deque[NCLState] = deque()
    for s in sources:
        if s not in parents:
            parents[s] = None
            queue.append(s)
    eids = sorted(g.edges)
    while queue:
        cur = queue.popleft()
        if goal(cur):
            flips: list[str] = []
            node = cur
            while parents[node] is not None:
                node, eid = parents[node]
                flips.append(eid)
            flips.reverse()
            start = node
            return True, FlipWitness(start, tuple(flips))
        for eid in eids:
            nxt = cur.flip(g, eid)
            if nxt in parents or not _legal(g, nxt):
                continue
            parents[nxt] = (cur, eid)
            queue.append(nxt)
    return False, None


def decide(
    g: ConstraintGraph, q: NCLQuery, budget: int = 1 << 22
) -> tuple[bool, FlipWitness | None]:
    """Answer a reachability query with a minimal-length witness when true."""

    def require_legal(s: NCLState, label: str) -> None:
        for k, _ in s.toward:
            if k not in g.edges:
                raise KeyError(f"{label} references unknown edge {k}")
        if set(k for k, _ in s.toward) != set(g.edges):
            raise KeyError(f"{label} does not cover all edges")
        if not _legal(g, s):
            raise ValueError(f"{label} is not a valid protected-safe state")

    if q.kind is QueryKind.STATE_TO_STATE:
        assert q.state_from is not None and q.state_to is not None
        require_legal(q.state_from, "start state")
        require_legal(q.state_to, "goal state")
        return _bfs(g, [q.state_from], lambda s: s == q.state_to)

    if q.kind is QueryKind.STATE_TO_EDGE:
        assert q.state_from is not None and q.edge_to is not None
        require_legal(q.state_from, "start state")
        goal = q.edge_to
        if goal.eid not in g.edges:
            raise KeyError(f"unknown edge {goal.eid}")
        return _bfs(g, [q.state_from], lambda s: s.head(goal.eid) == goal.toward)

    if q.kind is QueryKind.EDGE_TO_STATE:
        assert q.edge_from is not None and q.state_to is not None
        require_legal(q.state_to, "goal state")
        start = q.edge_from
        if start.eid not in g.edges:
            raise KeyError(f"unknown edge {start.eid}")
        # flips are involutive, so search backward from the goal state
        ok, wit = _bfs(g, [q.state_to], lambda s: s.head(start.eid) == start.toward)
        if not ok or wit is None:
            return False, None
        forward_start = wit.replay(g)[-1]
        return True, FlipWitness(forward_start, tuple(reversed(wit.flips)))

    if q.kind is QueryKind.EDGE_TO_EDGE:
        assert q.edge_from is not None and q.edge_to is not None
        for goal in (q.edge_from, q.edge_to):
            if goal.eid not in g.edges:
                raise KeyError(f"unknown edge {goal.eid}")
        _check_budget(g, budget)
        start, end = q.edge_from, q.edge_to
        sources = [s for s in all_legal_states(g) if s.head(start.eid) == start.toward]
        return _bfs(g, sources, lambda s: s.head(end.eid) == end.toward)

    raise ValueError(f"unknown query kind {q.kind}")


# ---------------------------------------------------------------------------
# text format:
#   node <id> AND|POR
#   edge <id> <a> <b> <1|2>
#   por-inputs <node> <edge> <edge>
#   orient <edge> <toward-node>        (state lines, optional)


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_graph(text: str) -> tuple[ConstraintGraph, NCLState | None]:
    nodes: dict[str, NodeKind] = {}
    edges: dict[str, Edge] = {}
    por_inputs: dict[str, tuple[str, str]] = {}
    orient: dict[str, str] = {}
    node_order: list[str] = []
    edge_order: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "node":
            if len(parts) != 3 or parts[2] not in ("AND", "POR"):
                raise ParseError(lineno, f"bad node declaration: {raw!r}")
            if parts[1] in nodes:
                raise ParseError(lineno, f"duplicate node {parts[1]}")
            nodes[parts[1]] = NodeKind.AND if parts[2] == "AND" else NodeKind.PROTECTED_OR
            node_order.append(parts[1])
        elif kw == "edge":
            if len(parts) != 5 or parts[4] not in ("1", "2"):
                raise ParseError(lineno, f"bad edge declaration: {raw!r}")
            if parts[1] in edges:
                raise ParseError(lineno, f"duplicate edge {parts[1]}")
            edges[parts[1]] = Edge(parts[1], parts[2], parts[3], int(parts[4]))
            edge_order.append(parts[1])
        elif kw == "por-inputs":
            if len(parts) != 4:
                raise ParseError(lineno, f"bad por-inputs declaration: {raw!r}")
            por_inputs[parts[1]] = (parts[2], parts[3])
        elif kw == "orient":
            if len(parts) != 3:
                raise ParseError(lineno, f"bad orient declaration: {raw!r}")
            orient[parts[1]] = parts[2]
        else:
            raise ParseError(lineno, f"unknown keyword {kw!r}")
    g = ConstraintGraph(nodes, edges, por_inputs, tuple(node_order), tuple(edge_order))
    state = NCLState.from_dict(orient) if orient else None
    return g, state


def write_graph(g: ConstraintGraph, state: NCLState | None = None) -> str:
    lines = []
    for nid in g.node_order:
        lines.append(f"node {nid} {g.nodes[nid].value}")
    for eid in g.edge_order:
        e = g.edges[eid]
        lines.append(f"edge {e.eid} {e.a} {e.b} {e.weight}")
    for nid in g.node_order:
        if nid in g.por_inputs:
            i1, i2 = g.por_inputs[nid]
            lines.append(f"por-inputs {nid} {i1} {i2}")
    if state is not None:
        for eid in g.edge_order:
            lines.append(f"orient {eid} {state.head(eid)}")
    return "\n".join(lines) + "\n"
