import pytest
from hypothesis import given, settings, strategies as st

from linkcomb.comb import (GridRoutingProblem, bridge_bound, comb, grid_audit, grid_distance,
                           reroute_few_bridges, route_confined, route_grid, size_conditions)
from linkcomb.errors import Infeasible, NoValidAssignment, PipelineInfeasible, TooManyBridges
from linkcomb.instances import fewbridges_instance, planted_instance
from linkcomb.linkage import ConfinementSpec, Linkage, equivalent, is_confined
from linkcomb.structures import build_annular_grid, gen_annular_grid
from oracles import (brute_grid_routing, confined_by_arithmetic, endpoint_pairs, outside_part,
                     scattered_by_networkx)


def cells_ok(path, k, kp):
    return all(1 <= i <= kp and 1 <= j <= k for i, j in path) and all(
        abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(path, path[1:]))


# grid routing -----------------------------------------------------------------------

def test_single_path_routing():
    prob = GridRoutingProblem(5, 4, 1, 0, [2], [5])
    (path,) = route_grid(prob)
    assert path[0] == (1, 2) and path[-1] == (4, 5)
    assert cells_ok(path, 5, 4)


def test_four_by_four_two_paths():
    prob = GridRoutingProblem(4, 4, 2, 0, [1, 3], [1, 3])
    paths = route_grid(prob)
    assert len(paths) == 2 and not set(paths[0]) & set(paths[1])
    assert brute_grid_routing(4, 4, [1, 3], [1, 3], 0)


def test_spaced_paths_in_nine_by_six():
    prob = GridRoutingProblem(9, 6, 2, 2, [1, 5], [4, 9])
    paths = route_grid(prob)
    assert grid_audit(paths, 2) is None
    assert grid_distance(paths[0], paths[1]) >= 3
    for path, u, t in zip(paths, [1, 5], [4, 9]):
        assert path[0] == (1, u) and path[-1] == (6, t) and cells_ok(path, 9, 6)


def test_precondition_failures():
    assert GridRoutingProblem(4, 1, 2, 0, [1, 3], [1, 3]).problem()
    assert GridRoutingProblem(6, 4, 2, 1, [1, 2], [3, 5]).problem()
    with pytest.raises(Infeasible):
        route_grid(GridRoutingProblem(4, 1, 2, 0, [1, 3], [1, 3]))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 3), st.integers(0, 2), st.data())
def test_route_grid_outputs_pass_audit(k, kp, d, r, data):
    kp = min(kp, k)
    if d * (r + 1) > kp:
        return
    cols = list(range(1, k + 1))
    pick = data.draw(st.lists(st.sampled_from(cols), min_size=d, max_size=d, unique=True))
    pick2 = data.draw(st.lists(st.sampled_from(cols), min_size=d, max_size=d, unique=True))
    up, down = sorted(pick), sorted(pick2)
    prob = GridRoutingProblem(k, kp, d, r, up, down)
    if prob.problem():
        with pytest.raises(Infeasible):
            route_grid(prob)
        return
    paths = route_grid(prob)
    assert grid_audit(paths, r) is None
    for path, u, t in zip(paths, up, down):
        assert path[0] == (1, u) and path[-1] == (kp, t) and cells_ok(path, k, kp)
    for a in range(d):
        for b in range(a + 1, d):
            assert min(abs(x[0] - y[0]) + abs(x[1] - y[1]) for x in paths[a] for y in paths[b]) > r


# confined routing -----------------------------------------------------------------------

def test_confined_routing_example():
    g, a = gen_annular_grid(9, 6)
    out = route_confined(a, 1, 1, 2, 0, [2, 4])
    assert tuple(out.rails) == (2, 4)
    L = out.linkage
    assert L.problem() is None and len(L) == 2
    assert is_confined(L, a, ConfinementSpec(1, [2, 4]))
    assert confined_by_arithmetic(L.paths, 9, 6, 1, [2, 4])


def test_confined_routing_single_path():
    g, a = gen_annular_grid(7, 6)
    out = route_confined(a, 1, 1, 1, 0, [5])
    (path,) = out.linkage.paths
    assert confined_by_arithmetic([path], 7, 6, 1, [5])
    assert a.rail_of_vertex[path[len(path) // 2]] == 5


def test_confined_routing_needs_enough_rails():
    g, a = gen_annular_grid(9, 6)
    with pytest.raises(Infeasible):
        route_confined(a, 1, 1, 2, 1, [3])


# the pipeline -----------------------------------------------------------------------

def independent_audit(inst, out, r, s, I):
    p, q = inst.annulus.p, inst.annulus.q
    assert out.problem() is None
    assert endpoint_pairs(out.paths) == endpoint_pairs(inst.linkage.paths)
    assert scattered_by_networkx(inst.graph, out.paths, r)
    assert confined_by_arithmetic(out.paths, p, q, s, I)
    ov, oe = outside_part(out.paths, p, q)
    lv, le = outside_part(inst.linkage.paths, p, q)
    assert ov <= lv and oe <= le


def test_already_confined_returns_input():
    layout = build_annular_grid(9, 6, pads=[("in", 3), ("out", 3)])
    path = list(reversed(layout.pads[("in", 3)][1:])) + list(layout.rails()[2]) + list(layout.pads[("out", 3)][1:])
    L = Linkage(layout.graph, [path])
    res = comb(layout.graph, layout.annulus, L, 0, 1, [3])
    assert res.combed == L.canonical()


def test_outer_terminals_on_p19():
    inst = planted_instance(19, 8, 2, 0, 2, kinds=["outer", "outer"])
    res = comb(inst.graph, inst.annulus, inst.linkage, 0, 1, [2, 6], m=2)
    assert equivalent(res.combed, inst.linkage)
    independent_audit(inst, res.combed, 0, 1, [2, 6])
    assert res.outside_guarantee


def test_rivers_rerouted_through_chosen_rails():
    inst = planted_instance(29, 10, 2, 0, 1, kinds=["cross", "cross"])
    res = comb(inst.graph, inst.annulus, inst.linkage, 0, 3, [2, 4])
    independent_audit(inst, res.combed, 0, 3, [2, 4])
    assert set(res.rails_used) <= {2, 4} and res.rails_used
    assert len(res.trace["rivers"]) >= 2 and all(res.trace["audit"].values())


def test_pipeline_rejects_bad_input():
    inst = planted_instance(9, 6, 1, 0, 0)
    with pytest.raises(Exception):
        comb(inst.graph, inst.annulus, inst.linkage, 0, 2, [1])
    small = planted_instance(9, 6, 2, 0, 1, kinds=["cross", "cross"])
    with pytest.raises(PipelineInfeasible):
        comb(small.graph, small.annulus, small.linkage, 0, 1, [3], m=2)


def test_size_conditions():
    conds = size_conditions(27, 8, 2, 0, 1, list(range(1, 9)))
    assert all(conds.values())
    assert not all(size_conditions(19, 8, 2, 0, 1, [2, 6]).values())


# few bridges -----------------------------------------------------------------------

def agrees_outside(inst, out):
    disk = inst.nested.disk(1).open

    def outside(l):
        verts = {v for v in l.vertices if v not in disk.vertices}
        edges = {e for e in l.edges if e not in disk.edges}
        return verts, edges

    return outside(inst.linkage) == outside(out)


def test_reroute_single_hub_path():
    inst = fewbridges_instance(3, 6, [1], 0, 1)
    v = inst.params["v"]
    res = reroute_few_bridges(inst.graph, inst.nested, v, inst.linkage, 0)
    out = res.linkage
    assert v not in out.vertices
    assert equivalent(out, inst.linkage)
    assert agrees_outside(inst, out)
    assert out.edges <= inst.linkage.edges | inst.nested.union_edges
    assert res.bound == bridge_bound(inst.nested, inst.linkage) == 3 - 1 - 1


def test_reroute_leaves_linkage_missing_v():
    inst = fewbridges_instance(4, 8, [1, 1], 0, 3)
    L = inst.linkage
    others = [p for p in L.paths if inst.params["v"] not in p]
    L2 = Linkage(inst.graph, others)
    res = reroute_few_bridges(inst.graph, inst.nested, inst.params["v"], L2, 0)
    assert res.linkage is L2


def test_too_many_bridges():
    inst = fewbridges_instance(3, 8, [1, 1, 1], 0, 6)
    with pytest.raises(TooManyBridges):
        reroute_few_bridges(inst.graph, inst.nested, inst.params["v"], inst.linkage, 0)


def test_reroute_needs_nested_sequence():
    inst = planted_instance(9, 6, 1, 0, 0)
    with pytest.raises(NoValidAssignment):
        reroute_few_bridges(inst.graph, inst.annulus.seq, 0, inst.linkage, 0)
