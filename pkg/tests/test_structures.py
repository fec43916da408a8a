import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from linkcomb.errors import BadParams, IndexOutOfRange, TooSmall
from linkcomb.structures import (NESTED, PARALLEL, CycleSequence, RailedAnnulus, annulus_region,
                                 derive_disks, gen_annular_grid,
                                 validate_railed_annulus)


def test_generated_annulus_validates():
    g, a = gen_annular_grid(5, 5)
    assert validate_railed_annulus(g, a).ok


def test_truncated_rail_reports_first_cycle():
    g, a = gen_annular_grid(5, 5)
    rails = [list(r) for r in a.rails]
    rails[2] = rails[2][1:]
    report = validate_railed_annulus(g, RailedAnnulus(a.seq, rails))
    assert not report.ok
    assert report.where == (1, 3)


def test_rails_sharing_a_vertex():
    g, a = gen_annular_grid(5, 5)
    rails = [list(r) for r in a.rails]
    rails[1] = rails[1][:2] + [rails[0][2]]
    report = validate_railed_annulus(g, RailedAnnulus(a.seq, rails))
    assert not report.ok


def test_rails_out_of_order():
    g, a = gen_annular_grid(5, 5)
    rails = list(a.rails)
    rails[1], rails[2] = rails[2], rails[1]
    report = validate_railed_annulus(g, RailedAnnulus(a.seq, rails))
    assert not report.ok and "order" in report.violation


def test_even_p_rejected_by_generator():
    with pytest.raises(BadParams):
        gen_annular_grid(4, 5)


def test_trivial_three_by_three():
    g, a = gen_annular_grid(3, 3, 0.0)
    assert len(a.seq.delta.vertices) == 9
    assert a.p == 3 and a.q == 3


def test_annulus_region_single_cycle():
    g, a = gen_annular_grid(5, 4)
    reg = annulus_region(a, 2, 2)
    assert reg.vertices == set(a.cycle(2))
    assert reg.edges == set(a.seq.cycle_edge_sets[1])


def test_annulus_region_full_and_window():
    g, a = gen_annular_grid(5, 4)
    assert annulus_region(a, 1, 5).vertices == set(range(20))
    reg = annulus_region(a, 2, 3)
    assert reg.vertices == set(a.cycle(2)) | set(a.cycle(3))
    rail_edges = {g.edge_index(a.vertex(2, j), a.vertex(3, j)) for j in range(1, 5)}
    assert reg.edges == set(a.seq.cycle_edge_sets[1]) | set(a.seq.cycle_edge_sets[2]) | rail_edges
    with pytest.raises(IndexOutOfRange):
        annulus_region(a, 3, 2)


def test_derived_sequence_on_nine_by_nine():
    g, a = gen_annular_grid(9, 9)
    dd = derive_disks(a)
    assert dd.z == 4
    CA = dd.CA
    assert CA.kind == NESTED and len(CA) == 4
    assert CA.validate() is None
    # each cycle of C_A lies strictly inside the previous one
    for i in range(1, 4):
        assert set(CA.cycle(i + 1)) <= CA.disk(i).interior_vertices


def test_R_path_trivial_and_L_path_shortest():
    g, a = gen_annular_grid(5, 8)
    dd = derive_disks(a)
    assert dd.R_path(3, 3, 2) == a.cross(3, 2)
    path = dd.L_path(3, 2, 4)
    assert len(path) == 3
    assert path[0] == a.vertex(3, 2) and path[-1] == a.vertex(3, 4)
    # shortest-path oracle on C_3 with the F_A edges removed
    h = nx.Graph()
    cyc = a.cycle(3)
    for k in range(len(cyc)):
        e = g.edge_index(cyc[k], cyc[(k + 1) % len(cyc)])
        if e not in dd.F_A:
            h.add_edge(cyc[k], cyc[(k + 1) % len(cyc)])
    assert len(path) - 1 == nx.shortest_path_length(h, path[0], path[-1])
    assert not any(g.edge_index(x, y) in dd.F_A for x, y in zip(path, path[1:]))


def test_derived_disks_need_room():
    g, a = gen_annular_grid(3, 5)
    with pytest.raises(TooSmall):
        derive_disks(a)


def test_sequence_kind_checked():
    g, a = gen_annular_grid(5, 5)
    with pytest.raises(BadParams):
        CycleSequence(g, a.seq.cycles, "spiral")
    with pytest.raises(BadParams):
        RailedAnnulus(CycleSequence(g, a.seq.cycles, NESTED), a.rails)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 5, 7, 9]), st.integers(3, 10), st.floats(0, 1), st.integers(0, 10 ** 6))
def test_generator_always_validates(p, q, chords, seed):
    g, a = gen_annular_grid(p, q, chords, seed)
    assert validate_railed_annulus(g, a).ok
    assert a.seq.kind == PARALLEL


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(3, 8))
def test_annuli_are_monotone(p, q):
    g, a = gen_annular_grid(p, q)
    for i in range(1, p):
        assert annulus_region(a, 1, i).region.vertices < annulus_region(a, 1, i + 1).region.vertices
