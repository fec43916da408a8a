import pytest
from hypothesis import given, settings, strategies as st

from helpers import square_grid
from linkcomb.errors import BadSpec, GraphError
from linkcomb.instances import planted_instance
from linkcomb.linkage import (ConfinementSpec, Linkage, equivalent, is_confined, is_r_scattered,
                              is_region_avoiding, is_region_free, pattern)
from linkcomb.structures import gen_annular_grid
from oracles import confined_by_arithmetic, scattered_by_networkx


@pytest.fixture
def grid():
    return square_grid(5, 5)


def test_patterns(grid):
    g, ids = grid
    a = [ids[(0, 0)], ids[(1, 0)], ids[(2, 0)]]
    b = [ids[(0, 2)], ids[(1, 2)]]
    assert pattern(Linkage(g, [a])) == {frozenset((a[0], a[-1]))}
    assert pattern(Linkage(g, [a, b])) == {frozenset((a[0], a[-1])), frozenset((b[0], b[-1]))}
    assert pattern(Linkage(g, [list(reversed(a))])) == pattern(Linkage(g, [a]))


def test_equivalence(grid):
    g, ids = grid
    straight = [ids[(0, 0)], ids[(1, 0)], ids[(2, 0)]]
    detour = [ids[(0, 0)], ids[(0, 1)], ids[(1, 1)], ids[(2, 1)], ids[(2, 0)]]
    other = [ids[(0, 3)], ids[(1, 3)], ids[(2, 3)]]
    L = Linkage(g, [straight, other])
    assert equivalent(L, L)
    assert equivalent(L, Linkage(g, [detour, other]))
    swapped = Linkage(g, [[ids[(0, 0)], ids[(0, 1)], ids[(0, 2)], ids[(0, 3)]],
                          [ids[(2, 0)], ids[(2, 1)], ids[(2, 2)], ids[(2, 3)]]])
    assert not equivalent(L, swapped)


def test_linkage_invariants(grid):
    g, ids = grid
    with pytest.raises(GraphError):
        Linkage(g, [[ids[(0, 0)]]])
    with pytest.raises(GraphError):
        Linkage(g, [[ids[(0, 0)], ids[(1, 0)]], [ids[(1, 0)], ids[(2, 0)]]])
    with pytest.raises(GraphError):
        Linkage(g, [[ids[(0, 0)], ids[(2, 0)]]])


def test_scattering_examples(grid):
    g, ids = grid
    a = [ids[(0, 0)], ids[(0, 1)]]
    b = [ids[(1, 0)], ids[(1, 1)]]
    assert is_r_scattered(Linkage(g, [a, b]), 0)
    assert not is_r_scattered(Linkage(g, [a, b]), 1)
    far = [ids[(3, 0)], ids[(3, 1)]]
    assert is_r_scattered(Linkage(g, [a, far]), 2)
    assert not is_r_scattered(Linkage(g, [a, far]), 3)


def test_avoiding_and_free():
    g, a = gen_annular_grid(5, 4)
    empty = Linkage(g, [])
    assert is_region_avoiding(empty, a.seq.delta_interior) and is_region_free(empty, a.seq.delta_interior)
    outer = a.cycle(5)
    on_boundary = Linkage(g, [[outer[0], outer[1]]])
    assert is_region_avoiding(on_boundary, a.seq.delta_interior)
    rail = a.rail(1)
    crossing = Linkage(g, [list(rail)])
    assert is_region_avoiding(crossing, a.seq.delta_interior)
    assert not is_region_free(crossing, a.seq.delta_interior)


def test_confinement_examples():
    g, a = gen_annular_grid(5, 4)
    spec = ConfinementSpec(1, [2])
    assert is_confined(Linkage(g, [[a.vertex(1, 1), a.vertex(1, 2)]]), a, spec)
    assert is_confined(Linkage(g, [list(a.rail(2))]), a, spec)
    middle = a.cycle(3)
    along = Linkage(g, [[middle[1], middle[2]]])
    assert not is_confined(along, a, ConfinementSpec(1, [2, 3]))
    with pytest.raises(BadSpec):
        ConfinementSpec(2, [1]).check(a)
    with pytest.raises(BadSpec):
        ConfinementSpec(1, [9]).check(a)
    with pytest.raises(BadSpec):
        ConfinementSpec(1, []).check(a)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 9, 11]), st.integers(4, 10), st.integers(1, 3), st.integers(0, 2),
       st.integers(0, 10 ** 5))
def test_planted_linkages_match_oracles(p, q, k, r, seed):
    from linkcomb.errors import BadParams

    try:
        inst = planted_instance(p, q, k, r, seed)
    except BadParams:
        return
    L = inst.linkage
    assert L.problem() is None
    assert is_r_scattered(L, r)
    assert scattered_by_networkx(inst.graph, L.paths, r)
    assert not (L.terminals & inst.annulus.seq.delta.vertices)
    for s in (1, 3):
        if s <= p:
            I = [1, q // 2]
            assert is_confined(L, inst.annulus, ConfinementSpec(s, I)) == \
                confined_by_arithmetic(L.paths, p, q, s, I)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 10 ** 4))
def test_scattering_is_monotone(r, seed):
    from linkcomb.errors import BadParams

    try:
        inst = planted_instance(7, 9, 2, 0, seed)
    except BadParams:
        return
    if is_r_scattered(inst.linkage, r + 1):
        assert is_r_scattered(inst.linkage, r)
    assert is_r_scattered(inst.linkage, r) == scattered_by_networkx(inst.graph, inst.linkage.paths, r)
