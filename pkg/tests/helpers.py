"""Small hand-built plane graphs for unit tests."""
from __future__ import annotations

import math
from typing import Dict, List, Sequence, Tuple

from linkcomb.embed import PlaneGraph


def plane_from_positions(pos: Dict[int, Tuple[float, float]], edges: Sequence[Tuple[int, int]]) -> PlaneGraph:
    """Straight-line drawing to rotation system; the outer face hangs below the lowest vertex."""
    rot: Dict[int, List[Tuple[float, int]]] = {v: [] for v in pos}
    for e, (u, v) in enumerate(edges):
        for a, b in ((u, v), (v, u)):
            ang = math.atan2(pos[b][1] - pos[a][1], pos[b][0] - pos[a][0])
            rot[a].append((ang, e))
    rotation = {v: [e for _, e in sorted(lst)] for v, lst in rot.items()}
    touched = {v for e in edges for v in e}
    low = min(touched, key=lambda v: (pos[v][1], pos[v][0]))
    nbrs = [b if a == low else a for a, b in edges if low in (a, b)]

    def hull_angle(w):
        return math.atan2(pos[w][1] - pos[low][1], pos[w][0] - pos[low][0])

    first = min(nbrs, key=hull_angle)
    return PlaneGraph(list(pos), list(edges), rotation, (low, first, "right"))


def square_grid(n: int, m: int) -> Tuple[PlaneGraph, Dict[Tuple[int, int], int]]:
    ids = {(x, y): y * n + x for y in range(m) for x in range(n)}
    pos = {v: (float(x), float(y)) for (x, y), v in ids.items()}
    edges = []
    for (x, y), v in ids.items():
        if x + 1 < n:
            edges.append((v, ids[(x + 1, y)]))
        if y + 1 < m:
            edges.append((v, ids[(x, y + 1)]))
    return plane_from_positions(pos, edges), ids


def triangle() -> PlaneGraph:
    return plane_from_positions({0: (0, 0), 1: (2, 0), 2: (1, 2)}, [(0, 1), (1, 2), (2, 0)])


def single_edge() -> PlaneGraph:
    return plane_from_positions({0: (0, 0), 1: (1, 0)}, [(0, 1)])


def nested_triangles() -> PlaneGraph:
    """Outer triangle 0,1,2 and inner triangle 3,4,5 joined by spokes."""
    pos = {0: (0, 0), 1: (6, 0), 2: (3, 6), 3: (2, 1.5), 4: (4, 1.5), 5: (3, 3.5)}
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return plane_from_positions(pos, edges)


def cells_path(layout, cells, head=None, tail=None) -> List[int]:
    """Vertex path through grid cells ``(cycle, rail)``, optionally starting and ending on pads."""
    body = [layout.grid_vertex[c] for c in cells]
    out = []
    if head is not None:
        out += list(reversed(layout.pads[head][1:]))
    out += body
    if tail is not None:
        out += list(layout.pads[tail][1:])
    return out
