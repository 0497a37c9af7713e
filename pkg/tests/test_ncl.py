"""Machine-model tests, including exhaustive brute-force oracles on K4."""

import itertools
from collections import deque

import pytest

from ncl_discs import machines
from ncl_discs.ncl import (
    ConstraintGraph,
    Edge,
    EdgeGoal,
    NCLQuery,
    NCLState,
    NodeKind,
    QueryKind,
    all_legal_states,
    all_states,
    decide,
    in_flow,
    is_protected_safe,
    is_valid_state,
    legal_flips,
    parse_graph,
    validate_graph,
    write_graph,
)


# ---------------------------------------------------------------------------
# independent oracles


def oracle_legal(g, s):
    ok_flow = all(
        sum(e.weight for e in g.incident(n) if s.head(e.eid) == n) >= 2 for n in g.nodes
    )
    ok_prot = all(
        not (s.head(i1) == n and s.head(i2) == n) for n, (i1, i2) in g.por_inputs.items()
    )
    return ok_flow and ok_prot


def oracle_flips(g, s):
    return {e for e in g.edges if oracle_legal(g, s.flip(g, e))}


def oracle_reachable_sets(g):
    """Map each legal state to the set of legal states reachable from it."""
    legal = [s for s in all_states(g) if oracle_legal(g, s)]
    adj = {s: [s.flip(g, e) for e in oracle_flips(g, s)] for s in legal}
    reach = {}
    for s in legal:
        seen = {s}
        dq = deque([s])
        while dq:
            cur = dq.popleft()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    dq.append(nxt)
        reach[s] = seen
    return reach


# ---------------------------------------------------------------------------


def test_k4_all_por_is_well_formed():
    assert validate_graph(machines.k4_all_por()) == []


def test_degree_violation_reported():
    nodes = {"a": NodeKind.PROTECTED_OR, "b": NodeKind.PROTECTED_OR}
    edges = {"e": Edge("e", "a", "b", 2)}
    g = ConstraintGraph(nodes, edges, {})
    errs = validate_graph(g)
    assert any("degree" in e for e in errs)


def test_and_weight_profile_violation_reported():
    g0 = machines.k4_all_por()
    nodes = dict(g0.nodes)
    nodes["a"] = NodeKind.AND
    g = ConstraintGraph(nodes, g0.edges, {k: v for k, v in g0.por_inputs.items() if k != "a"})
    errs = validate_graph(g)
    assert any("AND requires weights" in e for e in errs)


def test_in_flow_examples():
    g = machines.k4_one_por("a")
    # node b is AND with weight-1 edges bc, bd and weight-2 edge ab
    s = NCLState.from_dict(
        {"ab": "a", "ac": "a", "ad": "a", "bc": "b", "bd": "b", "cd": "c"}
    )
    assert in_flow(g, s, "b") == 2  # both weight-1 edges inward
    s2 = NCLState.from_dict(
        {"ab": "b", "ac": "a", "ad": "a", "bc": "c", "bd": "d", "cd": "c"}
    )
    assert in_flow(g, s2, "b") == 2  # weight-2 edge inward only
    s3 = NCLState.from_dict(
        {"ab": "a", "ac": "c", "ad": "d", "bc": "c", "bd": "d", "cd": "d"}
    )
    assert in_flow(g, s3, "a") == 2  # ab weight 2 toward a
    with pytest.raises(KeyError):
        in_flow(g, s, "zz")


def test_hamiltonian_cycle_orientation_is_valid_on_k4():
    g = machines.k4_all_por()
    # directed cycle a->b->c->d->a, diagonals arbitrary
    s = NCLState.from_dict(
        {"ab": "b", "bc": "c", "cd": "d", "ad": "a", "ac": "a", "bd": "b"}
    )
    assert is_valid_state(g, s)


def test_all_outward_node_is_invalid():
    g = machines.k4_all_por()
    s = NCLState.from_dict(
        {"ab": "b", "ac": "c", "ad": "d", "bc": "c", "bd": "d", "cd": "d"}
    )
    assert in_flow(g, s, "a") == 0
    assert not is_valid_state(g, s)


def test_protected_safety_definition():
    g = machines.k4_all_por()
    i1, i2 = g.por_inputs["a"]
    d = {e.eid: e.a for e in g.edges.values()}
    d[i1] = "a"
    d[i2] = "a"
    s = NCLState.from_dict(d)
    assert not is_protected_safe(g, s)


@pytest.mark.parametrize("g", machines.k4_zoo()[:12] + machines.k4_zoo()[-7:])
def test_validity_and_safety_agree_with_oracle(g):
    assert validate_graph(g) == []
    for s in all_states(g):
        assert (is_valid_state(g, s) and is_protected_safe(g, s)) == oracle_legal(g, s)


@pytest.mark.parametrize("g", machines.k4_zoo()[:12] + machines.k4_zoo()[-7:])
def test_legal_flips_agree_with_oracle(g):
    for s in all_legal_states(g):
        assert legal_flips(g, s) == oracle_flips(g, s)


def test_flip_into_node_never_starves_that_node():
    g = machines.k4_one_por("a")
    for s in all_legal_states(g):
        for eid in g.edges:
            flipped = s.flip(g, eid)
            new_head = flipped.head(eid)
            assert in_flow(g, flipped, new_head) >= in_flow(g, s, new_head)


def test_and_weight2_edge_flippable_outward_only_with_both_inputs_in():
    g = machines.k4_all_and()
    for s in all_legal_states(g):
        for e in g.edges.values():
            if e.weight != 2:
                continue
            for node in (e.a, e.b):
                if s.head(e.eid) == node and e.eid in legal_flips(g, s):
                    # flipping away from `node`: its weight-1 edges must both point in
                    w1 = [x for x in g.incident(node) if x.weight == 1]
                    assert all(s.head(x.eid) == node for x in w1)


def test_state_to_state_identity():
    g = machines.k4_all_por()
    s = all_legal_states(g)[0]
    ok, wit = decide(g, NCLQuery.state_to_state(s, s))
    assert ok and wit is not None and wit.flips == ()


def test_state_to_state_symmetric():
    g = machines.k4_one_por("a")
    legal = all_legal_states(g)
    for s1 in legal[::5]:
        for s2 in legal[::7]:
            f, _ = decide(g, NCLQuery.state_to_state(s1, s2))
            b, _ = decide(g, NCLQuery.state_to_state(s2, s1))
            assert f == b


def test_witness_replay_stays_legal_and_reaches_goal():
    g = machines.k4_all_por()
    legal = all_legal_states(g)
    s1, s2 = legal[0], legal[-1]
    ok, wit = decide(g, NCLQuery.state_to_state(s1, s2))
    if ok:
        states = wit.replay(g)
        assert states[0] == s1 and states[-1] == s2
        assert all(oracle_legal(g, s) for s in states)


@pytest.mark.parametrize("g", [machines.k4_all_por(), machines.k4_one_por("b"), machines.k4_all_and()])
def test_decide_matches_oracle_for_all_query_kinds(g):
    reach = oracle_reachable_sets(g)
    legal = list(reach)
    for s1 in legal:
        for eid in g.edges:
            want = any(t.head(eid) != s1.head(eid) for t in reach[s1])
            got, wit = decide(g, NCLQuery.state_to_edge(s1, g, eid))
            assert got == want
            if got:
                end = wit.replay(g)[-1]
                assert end.head(eid) != s1.head(eid)
    # edge-to-state mirrors state-to-edge through reversal
    for s2 in legal[:: max(1, len(legal) // 10)]:
        for eid in g.edges:
            want = any(s2 in reach[s1] for s1 in legal if s1.head(eid) != s2.head(eid))
            got, wit = decide(g, NCLQuery.edge_to_state(g, eid, s2))
            assert got == want
            if got:
                states = wit.replay(g)
                assert states[-1] == s2 and states[0].head(eid) != s2.head(eid)
    # edge-to-edge over all orientation pairs of two chosen edges
    eids = sorted(g.edges)[:3]
    for e1, e2 in itertools.product(eids, repeat=2):
        for t1, t2 in itertools.product(
            (g.edges[e1].a, g.edges[e1].b), (g.edges[e2].a, g.edges[e2].b)
        ):
            want = any(
                s1.head(e1) == t1 and any(t.head(e2) == t2 for t in reach[s1])
                for s1 in legal
            )
            got, _ = decide(g, NCLQuery.edge_to_edge(EdgeGoal(e1, t1), EdgeGoal(e2, t2)))
            assert got == want


def test_frozen_state_is_unreachable_from_elsewhere():
    g = machines.k4_all_por()
    legal = all_legal_states(g)
    frozen = [s for s in legal if not legal_flips(g, s)]
    for s in frozen[:3]:
        other = next(t for t in legal if t != s)
        ok, _ = decide(g, NCLQuery.state_to_state(s, other))
        assert not ok


def test_total_inflow_equals_total_weight():
    g = machines.example_eight()
    total = sum(e.weight for e in g.edges.values())
    for s in itertools.islice(all_states(g), 50):
        assert sum(in_flow(g, s, n) for n in g.nodes) == total


def test_example_eight_well_formed():
    assert validate_graph(machines.example_eight()) == []


def test_graph_text_roundtrip_bit_exact():
    g = machines.example_eight()
    s = all_legal_states(machines.k4_all_por())[0]
    text = write_graph(g)
    g2, _ = parse_graph(text)
    assert write_graph(g2) == text

    gk = machines.k4_all_por()
    text2 = write_graph(gk, s)
    gk2, s2 = parse_graph(text2)
    assert s2 == s
    assert write_graph(gk2, s2) == text2


def test_parse_error_names_line():
    try:
        parse_graph("node a AND\nbogus line here\n")
    except Exception as e:
        assert "line 2" in str(e)
    else:
        raise AssertionError("expected parse error")
