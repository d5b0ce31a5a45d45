"""Orientation solver, brute oracle, and Z3-connectivity decisions.

The layering here matters: naive_beta_reachable (pure python, no shared
code) validates brute_force_beta, and the validated oracle then judges
find_beta_orientation. Each layer only trusts the one below it.
"""

import itertools
import random

import pytest

from flowcrit.constructions import wheel
from flowcrit.errors import CapExceeded
from flowcrit.flows import (
    BRUTE_EDGE_CAP,
    SOLVER_VERTEX_CAP,
    Z3_VERTEX_CAP,
    Orientation,
    brute_force_beta,
    check_boundary,
    find_beta_orientation,
    has_mod3_orientation,
    is_z3_connected,
    special_bipartite_orientation,
    zero_boundary,
)
from flowcrit.multigraph import MultiGraph

from helpers import (
    all_boundaries,
    cycle,
    doubled,
    k4,
    multigraphs_up_to_iso,
    naive_beta_reachable,
    path,
    random_connected_multigraph,
)


def two_k2():
    return MultiGraph.from_pairs(2, [(0, 1), (0, 1)])


# ---------------------------------------------------------------------------
# boundary plumbing

def test_check_boundary_accepts_and_normalizes():
    assert check_boundary(k4(), [1, 2, 0, 0]) == (1, 2, 0, 0)
    assert zero_boundary(k4()) == (0, 0, 0, 0)


@pytest.mark.parametrize("beta", [[0, 0, 0], [0, 0, 0, 3], [1, 0, 0, 0], [-1, 1, 0, 0]])
def test_check_boundary_rejects(beta):
    with pytest.raises(ValueError):
        check_boundary(k4(), beta)


def test_orientation_witness_shape():
    ok, ori = has_mod3_orientation(two_k2())
    assert ok
    assert ori.satisfies(two_k2(), (0, 0))
    assert ori.to_json() == [list(a) for a in ori.arcs]
    assert Orientation.from_arcs(ori.to_json()) == ori
    with pytest.raises(ValueError):
        ori.imbalances(k4())


# ---------------------------------------------------------------------------
# the brute oracle against the naive reachability check

def test_brute_oracle_matches_naive_enumeration():
    for n in (2, 3, 4):
        for g in multigraphs_up_to_iso(n, max_edges=5):
            for beta in all_boundaries(g.n):
                got = brute_force_beta(g, beta)
                assert (got is not None) == naive_beta_reachable(g, beta)
                if got is not None:
                    assert got.satisfies(g, beta)


def test_brute_oracle_fixtures():
    for beta in all_boundaries(2):
        assert brute_force_beta(two_k2(), beta) is not None
    assert brute_force_beta(MultiGraph.from_pairs(2, [(0, 1)]), (0, 0)) is None
    assert brute_force_beta(k4(), (0, 0, 0, 0)) is None
    # empty edge set satisfies only the zero boundary
    assert brute_force_beta(MultiGraph(3, []), (0, 0, 0)) is not None
    assert brute_force_beta(MultiGraph(3, []), (1, 2, 0)) is None


def test_brute_oracle_prefers_stored_directions():
    # enumeration code ascends and bit j flips edge j, so flipping only the
    # first edge (code 1) beats flipping only the second (code 2)
    got = brute_force_beta(two_k2(), (0, 0))
    assert got.arcs == ((0, 1, 0), (1, 0, 1))


# ---------------------------------------------------------------------------
# solver against the oracle

def test_solver_agrees_with_oracle_small_sweep():
    # the full depth (5 vertices, 8 edges) runs in the acceptance suite
    for n in (2, 3, 4):
        for g in multigraphs_up_to_iso(n, max_edges=6):
            for beta in all_boundaries(g.n):
                mine = find_beta_orientation(g, beta)
                ref = brute_force_beta(g, beta)
                assert (mine is None) == (ref is None), (g.to_json(), beta)
                if mine is not None:
                    assert mine.satisfies(g, beta)


def test_solver_is_deterministic():
    g = doubled(cycle(4))
    a = find_beta_orientation(g, (1, 2, 0, 0))
    b = find_beta_orientation(g, (1, 2, 0, 0))
    assert a == b


def test_bridge_short_circuit():
    # bridged but locally rich: two doubled triangles joined by one edge
    halves = [doubled(cycle(3)), doubled(cycle(3))]
    edges = [(e.u, e.v) for e in halves[0].edges]
    edges += [(e.u + 3, e.v + 3) for e in halves[1].edges]
    edges.append((0, 3))
    g = MultiGraph.from_pairs(6, edges)
    assert has_mod3_orientation(g) == (False, None)
    assert has_mod3_orientation(path(3)) == (False, None)


def test_trivial_graphs_have_flows():
    assert has_mod3_orientation(MultiGraph(1, []))[0]
    assert has_mod3_orientation(MultiGraph(3, []))[0]


# ---------------------------------------------------------------------------
# wheels and Z3-connectivity

def test_odd_wheels_have_no_flow():
    for k in (3, 5, 7):
        ok, ori = has_mod3_orientation(wheel(k))
        assert not ok and ori is None


def test_even_wheels_are_z3_connected():
    for k in (4, 6):
        ok, failing = is_z3_connected(wheel(k))
        assert ok and failing is None


def test_odd_wheel_failing_boundary_is_genuine():
    ok, failing = is_z3_connected(wheel(5))
    assert not ok
    # certificate must be independently unsatisfiable
    assert brute_force_beta(wheel(5), failing) is None
    # and lexicographically first: the zero boundary already fails on W5
    assert failing == zero_boundary(wheel(5))


def test_z3_connected_implies_flow():
    rng = random.Random(23)
    hits = 0
    for _ in range(40):
        g = random_connected_multigraph(rng, rng.randint(2, 6), rng.randint(0, 6))
        ok, _ = is_z3_connected(g)
        if ok:
            hits += 1
            assert has_mod3_orientation(g)[0]
    assert hits >= 5


def test_adding_an_edge_preserves_z3_connectivity():
    for n in (2, 3, 4, 5):
        for g in multigraphs_up_to_iso(n, max_edges=8, connected_only=True):
            if not is_z3_connected(g)[0]:
                continue
            for u, v in itertools.combinations(range(n), 2):
                bigger = g.add_edge(u, v)
                assert is_z3_connected(bigger)[0], (g.to_json(), (u, v))


def test_reversal_symmetry():
    rng = random.Random(31)
    for _ in range(60):
        g = random_connected_multigraph(rng, rng.randint(2, 6), rng.randint(0, 6))
        prefix = [rng.randint(0, 2) for _ in range(g.n - 1)]
        beta = tuple(prefix) + ((-sum(prefix)) % 3,)
        neg = tuple((-x) % 3 for x in beta)
        fwd = find_beta_orientation(g, beta)
        bwd = find_beta_orientation(g, neg)
        assert (fwd is None) == (bwd is None)
        if fwd is not None:
            assert fwd.reversed_copy().satisfies(g, neg)


def test_contracting_edges_preserves_flows():
    for n in (2, 3, 4, 5):
        for g in multigraphs_up_to_iso(n, max_edges=7, connected_only=True):
            if not has_mod3_orientation(g)[0]:
                continue
            for e in g.edges:
                smaller, _, _ = g.contract_edge(e.id)
                assert has_mod3_orientation(smaller)[0], (g.to_json(), e.id)


def test_contracting_edges_preserves_flows_larger_fixtures():
    for g in (cycle(6), cycle(7), doubled(path(4)),
              MultiGraph.from_pairs(2, [(0, 1)] * 3)):
        if not has_mod3_orientation(g)[0]:
            continue
        for e in g.edges:
            smaller, _, _ = g.contract_edge(e.id)
            assert has_mod3_orientation(smaller)[0]


def test_contracting_z3_connected_subgraph_lifts_flows():
    # if an induced subgraph H is Z3-connected and g/H has a flow, g does
    rng = random.Random(47)
    fired = 0
    for _ in range(60):
        g = random_connected_multigraph(rng, rng.randint(4, 7), rng.randint(2, 8))
        for size in (2, 3):
            for block in itertools.combinations(range(g.n), size):
                sub = g.induced(block).graph
                if sub.m == 0 or not is_z3_connected(sub)[0]:
                    continue
                blocks = [block] + [(v,) for v in range(g.n) if v not in block]
                q = g.quotient(blocks).graph
                if has_mod3_orientation(q)[0]:
                    fired += 1
                    assert has_mod3_orientation(g)[0], (g.to_json(), block)
    assert fired >= 20


# ---------------------------------------------------------------------------
# the special bipartite construction

def test_special_bipartite_orientation_grid():
    for t in range(5, 10):
        for k in (0, 1, 2):
            built = special_bipartite_orientation(t, k)
            g = built.graph
            assert built.constructed
            assert (g.n, g.m) == (t, 3 * (t - 3))
            assert sorted(g.degrees) == sorted([3] * (t - 3) + [t - 3] * 3)
            assert built.orientation.satisfies(g, [k, k, k] + [0] * (t - 3))


def test_special_bipartite_orientation_rejects_bad_parameters():
    with pytest.raises(ValueError):
        special_bipartite_orientation(4, 0)
    with pytest.raises(ValueError):
        special_bipartite_orientation(6, 3)


# ---------------------------------------------------------------------------
# caps

def test_caps_are_reported_not_truncated():
    big = cycle(SOLVER_VERTEX_CAP + 1)
    with pytest.raises(CapExceeded):
        find_beta_orientation(big, zero_boundary(big))
    mid = cycle(Z3_VERTEX_CAP + 1)
    with pytest.raises(CapExceeded):
        is_z3_connected(mid)
    wide = doubled(doubled(cycle(7)))  # 28 edges
    assert wide.m > BRUTE_EDGE_CAP
    with pytest.raises(CapExceeded):
        brute_force_beta(wide, zero_boundary(wide))
