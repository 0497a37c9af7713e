"""Ready-made constraint-logic machines used by tests and the CLI demos."""

from __future__ import annotations

import itertools

from .ncl import ConstraintGraph, Edge, NodeKind

K4_NODES = ("a", "b", "c", "d")
K4_PAIRS = (("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"))


def _k4_edges(weights: dict[tuple[str, str], int]) -> dict[str, Edge]:
    edges = {}
    for u, v in K4_PAIRS:
        eid = f"{u}{v}"
        edges[eid] = Edge(eid, u, v, weights[(u, v)])
    return edges


def k4_all_por(designation: dict[str, tuple[str, str]] | None = None) -> ConstraintGraph:
    """K4 with all protected-OR nodes and weight-2 edges."""
    edges = _k4_edges({p: 2 for p in K4_PAIRS})
    if designation is None:
        designation = {}
        for n in K4_NODES:
            inc = sorted(e.eid for e in edges.values() if n in (e.a, e.b))
            designation[n] = (inc[0], inc[1])
    nodes = {n: NodeKind.PROTECTED_OR for n in K4_NODES}
    return ConstraintGraph(nodes, edges, designation)


def k4_all_por_designations():
    """All 81 input-designation choices for the all-protected-OR K4."""
    per_node = {}
    edges = _k4_edges({p: 2 for p in K4_PAIRS})
    for n in K4_NODES:
        inc = sorted(e.eid for e in edges.values() if n in (e.a, e.b))
        per_node[n] = list(itertools.combinations(inc, 2))
    for combo in itertools.product(*(per_node[n] for n in K4_NODES)):
        yield k4_all_por(dict(zip(K4_NODES, combo)))


def k4_one_por(por_node: str = "a") -> ConstraintGraph:
    """K4 with one protected-OR node; weights are then forced."""
    weights = {}
    for u, v in K4_PAIRS:
        weights[(u, v)] = 2 if por_node in (u, v) else 1
    edges = _k4_edges(weights)
    nodes = {n: (NodeKind.PROTECTED_OR if n == por_node else NodeKind.AND) for n in K4_NODES}
    inc = sorted(e.eid for e in edges.values() if por_node in (e.a, e.b))
    return ConstraintGraph(nodes, edges, {por_node: (inc[0], inc[1])})


def k4_all_and(matching: tuple[tuple[str, str], tuple[str, str]] = (("a", "b"), ("c", "d"))) -> ConstraintGraph:
    """K4 with all AND nodes; the weight-2 edges form a perfect matching."""
    m = {frozenset(p) for p in matching}
    weights = {p: (2 if frozenset(p) in m else 1) for p in K4_PAIRS}
    edges = _k4_edges(weights)
    nodes = {n: NodeKind.AND for n in K4_NODES}
    return ConstraintGraph(nodes, edges, {})


K4_MATCHINGS = (
    (("a", "b"), ("c", "d")),
    (("a", "c"), ("b", "d")),
    (("a", "d"), ("b", "c")),
)


def k4_zoo() -> list[ConstraintGraph]:
    """Every well-formed typed K4 machine (the only 3-regular graphs with <=6 edges)."""
    zoo: list[ConstraintGraph] = list(k4_all_por_designations())
    zoo.extend(k4_one_por(n) for n in K4_NODES)
    zoo.extend(k4_all_and(m) for m in K4_MATCHINGS)
    return zoo


def example_eight() -> ConstraintGraph:
    """An 8-node machine with three AND and five protected-OR nodes.

    The weight profile forces the weight-1 edges to form a triangle on the
    AND nodes; each AND node sends its weight-2 edge to a protected-OR node.
    """
    nodes = {
        "v1": NodeKind.PROTECTED_OR,
        "v2": NodeKind.PROTECTED_OR,
        "v3": NodeKind.PROTECTED_OR,
        "v4": NodeKind.PROTECTED_OR,
        "v5": NodeKind.AND,
        "v6": NodeKind.AND,
        "v7": NodeKind.PROTECTED_OR,
        "v8": NodeKind.AND,
    }
    spec = [
        ("e56", "v5", "v6", 1),
        ("e68", "v6", "v8", 1),
        ("e58", "v5", "v8", 1),
        ("e15", "v1", "v5", 2),
        ("e26", "v2", "v6", 2),
        ("e38", "v3", "v8", 2),
        ("e47", "v4", "v7", 2),
        ("e14", "v1", "v4", 2),
        ("e24", "v2", "v4", 2),
        ("e17", "v1", "v7", 2),
        ("e37", "v3", "v7", 2),
        ("e23", "v2", "v3", 2),
    ]
    edges = {eid: Edge(eid, a, b, w) for eid, a, b, w in spec}
    por_inputs = {
        "v1": ("e14", "e17"),
        "v2": ("e24", "e23"),
        "v3": ("e37", "e23"),
        "v4": ("e14", "e24"),
        "v7": ("e17", "e37"),
    }
    return ConstraintGraph(nodes, edges, por_inputs)
