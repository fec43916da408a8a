from hypothesis import given, settings, strategies as st

from helpers import cells_path
from linkcomb.decomp import (MOUNTAIN, bridges, components_inside, crossings, d_ordering,
                             decompose, is_tight, mountains_valleys, rivers, streams)
from linkcomb.embed import Region
from linkcomb.errors import BadParams
from linkcomb.instances import fewbridges_instance, planted_instance
from linkcomb.linkage import Linkage
from linkcomb.structures import build_annular_grid


def rail_cells(p, j, up=True):
    rows = range(1, p + 1) if up else range(p, 0, -1)
    return [(i, j) for i in rows]


def test_linkage_away_from_annulus_has_no_streams():
    layout = build_annular_grid(5, 6, pads=[("out", 1)])
    mid, leaf = layout.pads[("out", 1)][1:]
    L = Linkage(layout.graph, [[mid, leaf]])
    assert streams(L, layout.annulus.seq) == []


def test_straight_rail_path_is_one_river():
    layout = build_annular_grid(5, 6, pads=[("in", 2), ("out", 2)])
    L = Linkage(layout.graph, [cells_path(layout, rail_cells(5, 2), ("in", 2), ("out", 2))])
    found = rivers(L, layout.annulus.seq)
    assert len(found) == 1
    assert found[0].low_end == layout.grid_vertex[(1, 2)]
    assert found[0].high_end == layout.grid_vertex[(5, 2)]
    assert mountains_valleys(L, layout.annulus.seq) == []


def test_dip_gives_two_streams_and_no_river():
    layout = build_annular_grid(5, 6, pads=[("out", 1), ("out", 3)])
    cells = rail_cells(5, 1, up=False) + [(1, 2)] + rail_cells(5, 3)
    L = Linkage(layout.graph, [cells_path(layout, cells, ("out", 1), ("out", 3))])
    st_ = streams(L, layout.annulus.seq)
    assert len(st_) == 2 and not any(s.is_river for s in st_)


def bump_layout():
    layout = build_annular_grid(5, 8, pads=[("in", 1), ("in", 6)])
    cells = [(1, 1), (1, 2), (2, 2), (2, 3), (1, 3), (1, 4), (2, 4), (2, 5), (1, 5), (1, 6)]
    return layout, Linkage(layout.graph, [cells_path(layout, cells, ("in", 1), ("in", 6))])


def test_two_bumps_over_first_cycle():
    layout, L = bump_layout()
    seq = layout.annulus.seq
    found = [m for m in mountains_valleys(L, seq) if m.kind == MOUNTAIN and m.base_index == 1]
    assert len(found) == 2
    assert all(m.dehe == 2 for m in found)
    # each disk holds the bump and nothing above level 2
    for m in found:
        assert set(m.core) <= m.disk.vertices
        assert not (m.disk.vertices & set(seq.cycle(3)))


def test_dehe_two_mountain_is_tight():
    layout, L = bump_layout()
    seq = layout.annulus.seq
    m = next(x for x in mountains_valleys(L, seq) if x.kind == MOUNTAIN and x.base_index == 1)
    assert is_tight(m, L, seq, 0)
    # with r = 1, height 2 is still the base of the tower
    assert is_tight(m, L, seq, 1)


def tower(inner: bool):
    layout = build_annular_grid(7, 10, pads=[("in", 2), ("in", 5), ("in", 3), ("in", 4)])
    outer_cells = [(1, 2), (2, 2), (3, 2), (3, 3), (3, 4), (3, 5), (2, 5), (1, 5)]
    paths = [cells_path(layout, outer_cells, ("in", 2), ("in", 5))]
    if inner:
        paths.append(cells_path(layout, [(1, 3), (2, 3), (2, 4), (1, 4)], ("in", 3), ("in", 4)))
    return layout, Linkage(layout.graph, paths)


def test_dehe_three_without_inner_mountain_is_not_tight():
    layout, L = tower(inner=False)
    seq = layout.annulus.seq
    m = next(x for x in mountains_valleys(L, seq) if x.kind == MOUNTAIN and x.base_index == 1)
    assert m.dehe == 3
    assert not is_tight(m, L, seq, 0)


def test_dehe_three_with_inner_mountain_is_tight():
    layout, L = tower(inner=True)
    seq = layout.annulus.seq
    ms = [x for x in mountains_valleys(L, seq) if x.kind == MOUNTAIN and x.base_index == 1]
    big = next(x for x in ms if x.dehe == 3)
    assert is_tight(big, L, seq, 0)
    # with r = 1 the next height is 4, so the same mountain is not a tower top
    assert not is_tight(big, L, seq, 1)


def test_terminal_inside_excursion_disk_blocks_mountain():
    layout = build_annular_grid(5, 8, pads=[("in", 1), ("in", 4), ("out", 2), ("out", 3)])
    seq = layout.annulus.seq
    # a valley over C_5 whose disk would reach down to C_4 with an outer pad path above it is fine,
    # but a mountain over C_1 containing the pad of another path is not a mountain
    low = cells_path(layout, [(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (3, 4), (2, 4), (1, 4)], ("in", 1), ("in", 4))
    L = Linkage(layout.graph, [low])
    assert any(x.kind == MOUNTAIN and x.base_index == 1 for x in mountains_valleys(L, seq))


def test_crossings_along_rail_and_tangent():
    layout = build_annular_grid(5, 6, pads=[("in", 2), ("out", 2), ("out", 4), ("out", 5)])
    seq = layout.annulus.seq
    through = Linkage(layout.graph, [cells_path(layout, rail_cells(5, 2), ("in", 2), ("out", 2))])
    assert sorted(c.cycle_index for c in crossings(through, seq)) == [1, 2, 3, 4, 5]
    cells = [(5, 4), (4, 4), (3, 4), (2, 4), (2, 5), (3, 5), (4, 5), (5, 5)]
    touch = Linkage(layout.graph, [cells_path(layout, cells, ("out", 4), ("out", 5))])
    crossed = sorted(c.cycle_index for c in crossings(touch, seq))
    assert 2 not in crossed
    assert crossed == [3, 3, 4, 4, 5, 5]


def test_d_ordering_starts_after_reference():
    q = 9
    pads = [(side, j) for j in (1, 4, 7) for side in ("in", "out")]
    layout = build_annular_grid(5, q, pads=pads)
    seq = layout.annulus.seq
    paths = [cells_path(layout, rail_cells(5, j), ("in", j), ("out", j)) for j in (1, 4, 7)]
    L = Linkage(layout.graph, paths)
    rv = rivers(L, seq)
    D = Region(frozenset({layout.grid_vertex[(3, 2)]}))
    order = d_ordering(rv, D, seq)
    assert [layout.annulus.rail_of_vertex[z.low_end] for z in order] == [4, 7, 1]
    D2 = Region(frozenset({layout.grid_vertex[(3, 8)]}))
    assert [layout.annulus.rail_of_vertex[z.low_end] for z in d_ordering(rv, D2, seq)] == [1, 4, 7]
    assert d_ordering(rv[:1], D, seq) == rv[:1]


def test_bridges_on_nested_instances():
    inst = fewbridges_instance(4, 8, [2], 0, 2)
    disk = inst.nested.disk(1)
    assert len(bridges(inst.linkage, disk)) == 1
    assert len([c for c in components_inside(inst.linkage, disk)]) == 2
    single = fewbridges_instance(4, 8, [1], 0, 3)
    assert bridges(single.linkage, single.nested.disk(1)) == []


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7, 9]), st.integers(5, 10), st.integers(1, 3), st.integers(0, 10 ** 5))
def test_streams_are_disjoint_annulus_crossings(p, q, k, seed):
    try:
        inst = planted_instance(p, q, k, 0, seed)
    except BadParams:
        return
    seq = inst.annulus.seq
    first, last = set(seq.cycle(1)), set(seq.cycle(p))
    seen = set()
    dec = decompose(inst.linkage, seq)
    for s in dec.streams:
        assert s.low_end in first and s.high_end in last
        assert not (set(s.path) & seen)
        seen |= set(s.path)
    # every river is a stream
    assert all(s in dec.streams for s in dec.rivers)
    for mv in dec.mountains + dec.valleys:
        assert mv.dehe >= 2
        assert not (mv.disk.vertices & inst.linkage.terminals)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([5, 7, 9]), st.integers(5, 10), st.integers(1, 3), st.integers(0, 10 ** 5))
def test_crossing_parity_matches_sides(p, q, k, seed):
    try:
        inst = planted_instance(p, q, k, 0, seed)
    except BadParams:
        return
    seq = inst.annulus.seq
    found = crossings(inst.linkage, seq)
    for i in range(1, p + 1):
        inside = seq.disk(i).open.vertices
        for n, path in enumerate(inst.linkage.paths):
            count = sum(1 for c in found if c.path_index == n and c.cycle_index == i)
            same_side = (path[0] in inside) == (path[-1] in inside)
            assert (count % 2 == 0) == same_side
