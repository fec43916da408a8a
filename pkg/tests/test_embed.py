import math

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from helpers import nested_triangles, plane_from_positions, single_edge, square_grid, triangle
from linkcomb.embed import (PlaneGraph, disk_region, distance, faces, r_neighborhood)
from linkcomb.errors import GraphError, NonPlanarEmbedding, NotACycle, UnknownVertex
from linkcomb.structures import build_annular_grid


def test_triangle_has_two_faces():
    assert len(faces(triangle())) == 2


def test_single_edge_has_one_face():
    assert len(faces(single_edge())) == 1


def test_three_by_three_grid_faces():
    g, _ = square_grid(3, 3)
    fl = faces(g)
    assert len(fl) == 5
    outer = fl[g.outer_face]
    assert len(outer.darts) == 8
    assert sorted(len(f.darts) for f in fl) == [4, 4, 4, 4, 8]


def test_every_dart_in_exactly_one_face():
    g, _ = square_grid(4, 3)
    darts = [d for f in faces(g) for d in f.darts]
    assert sorted(darts) == list(range(2 * len(g.edges)))


def test_scrambled_rotation_is_rejected():
    g, _ = square_grid(3, 3)
    rotation = {v: list(r) for v, r in g.rotation.items()}
    centre = 4
    rotation[centre] = [rotation[centre][0], rotation[centre][2], rotation[centre][1], rotation[centre][3]]
    with pytest.raises(NonPlanarEmbedding):
        PlaneGraph(g.vertices, g.edges, rotation, g.outer_face_edge).face_list


def test_loops_and_multi_edges_rejected():
    with pytest.raises(GraphError):
        PlaneGraph([0, 1], [(0, 0)], {0: [0, 0], 1: []}, (0, 0, "left"))
    with pytest.raises(GraphError):
        PlaneGraph([0, 1], [(0, 1), (1, 0)], {0: [0, 1], 1: [0, 1]}, (0, 1, "left"))


def test_nested_triangles_disks():
    g = nested_triangles()
    outer = disk_region(g, [0, 1, 2])
    assert outer.interior_vertices == {3, 4, 5}
    inner = disk_region(g, [3, 4, 5])
    assert inner.interior_vertices == frozenset()
    assert len(inner.interior_faces) == 1


def test_annular_grid_disk_of_third_cycle():
    layout = build_annular_grid(5, 5)
    disk = disk_region(layout.graph, layout.cycles()[2])
    expected = set(layout.cycles()[0]) | set(layout.cycles()[1])
    assert disk.interior_vertices == expected
    # BFS oracle: remove the cycle, the side without the outermost cycle is the interior
    h = nx.Graph(layout.graph.edges)
    h.remove_nodes_from(layout.cycles()[2])
    comp = nx.node_connected_component(h, layout.cycles()[0][0])
    assert comp == expected


def test_disk_region_errors():
    g, ids = square_grid(3, 3)
    with pytest.raises(NotACycle):
        disk_region(g, [0, 1, 2])
    with pytest.raises(UnknownVertex):
        disk_region(g, [0, 1, 99])
    # a "cycle" whose disk would hold the outer face: the graph is a single cycle with both sides bounded
    t = triangle()
    d = disk_region(t, [0, 1, 2])
    assert d.interior_vertices == frozenset()


def test_distance_examples():
    g, ids = square_grid(3, 3)
    assert distance(g, 0, 0) == 0
    assert distance(g, 0, 1) == 1
    assert distance(g, ids[(0, 0)], ids[(2, 2)]) == 4
    lone = plane_from_positions({0: (0, 0), 1: (1, 0), 2: (5, 5), 3: (6, 5)}, [(0, 1), (2, 3)])
    assert distance(lone, 0, 2) == math.inf


def test_neighbourhood_examples():
    g, ids = square_grid(3, 3)
    c = ids[(1, 1)]
    assert r_neighborhood(g, [c], 0) == {c}
    assert r_neighborhood(g, [c], 1) == {c, ids[(0, 1)], ids[(2, 1)], ids[(1, 0)], ids[(1, 2)]}
    iso = plane_from_positions({0: (0, 0), 1: (3, 3), 2: (4, 3)}, [(1, 2)])
    assert r_neighborhood(iso, [0], 1) == {0}
    with pytest.raises(ValueError):
        r_neighborhood(g, [c], -1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(2, 6), st.integers(0, 35), st.integers(0, 35))
def test_bfs_matches_networkx(n, m, a, b):
    g, _ = square_grid(n, m)
    a, b = a % (n * m), b % (n * m)
    ref = nx.shortest_path_length(nx.Graph(g.edges), a, b)
    assert distance(g, a, b) == ref


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(3, 9), st.floats(0, 1), st.integers(0, 1000))
def test_annular_grid_euler(p, q, chords, seed):
    layout = build_annular_grid(p, q, chords, seed, require_odd=False)
    g = layout.graph
    assert len(g.vertices) - len(g.edges) + len(faces(g)) == 2


def test_json_round_trip_graph():
    g, _ = square_grid(3, 4)
    h = PlaneGraph.from_json(g.to_json())
    assert h.to_json() == g.to_json()
    assert len(faces(h)) == len(faces(g))
