"""Plane graphs given by rotation systems.

A dart is ``2 * e`` for edge ``e = (u, v)`` read from ``u`` to ``v`` and
``2 * e + 1`` for the reverse direction.  Faces are traced so that each
face lies on the left of its darts, which with counter-clockwise rotations
makes bounded faces counter-clockwise walks.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    CycleBoundsOuterFace,
    GraphError,
    NonPlanarEmbedding,
    NotACycle,
    UnknownVertex,
)

INF = math.inf


@dataclass(frozen=True)
class Face:
    """A face as its closed boundary walk of darts."""

    index: int
    darts: Tuple[int, ...]

    def vertices(self, g: "PlaneGraph") -> Tuple[int, ...]:
        return tuple(g.dart_tail(d) for d in self.darts)


@dataclass(frozen=True)
class Region:
    """A point set described combinatorially.

    ``edges`` holds edge indices whose open segment lies in the set and
    ``faces`` holds face indices whose open cell lies in the set.
    """

    vertices: FrozenSet[int] = frozenset()
    edges: FrozenSet[int] = frozenset()
    faces: FrozenSet[int] = frozenset()

    def __or__(self, other: "Region") -> "Region":
        return Region(self.vertices | other.vertices, self.edges | other.edges,
                      self.faces | other.faces)

    def __sub__(self, other: "Region") -> "Region":
        return Region(self.vertices - other.vertices, self.edges - other.edges,
                      self.faces - other.faces)

    def __and__(self, other: "Region") -> "Region":
        return Region(self.vertices & other.vertices, self.edges & other.edges,
                      self.faces & other.faces)

    def is_empty(self) -> bool:
        return not (self.vertices or self.edges or self.faces)

    def meets(self, other: "Region") -> bool:
        return not (self & other).is_empty()

    def contains(self, other: "Region") -> bool:
        return (other.vertices <= self.vertices and other.edges <= self.edges
                and other.faces <= self.faces)


EMPTY = Region()


@dataclass(frozen=True)
class DiskRegion:
    """The closed disk bounded by a cycle, on the side away from the outer face."""

    bounding_cycle: Tuple[int, ...]
    cycle_edges: FrozenSet[int]
    interior_vertices: FrozenSet[int]
    interior_edges: FrozenSet[int]
    interior_faces: FrozenSet[int]

    @property
    def open(self) -> Region:
        return Region(self.interior_vertices, self.interior_edges, self.interior_faces)

    @property
    def boundary(self) -> Region:
        return Region(frozenset(self.bounding_cycle), self.cycle_edges, frozenset())

    @property
    def closed(self) -> Region:
        return self.open | self.boundary


class PlaneGraph:
    """Simple graph with a counter-clockwise rotation system and an outer face.

    Treat instances as immutable; derived data is cached on first use.
    """

    def __init__(self, vertices: Iterable[int], edges: Sequence[Sequence[int]],
                 rotation: Dict[int, Sequence[int]], outer_face_edge: Sequence):
        self.vertices: Tuple[int, ...] = tuple(sorted(int(v) for v in vertices))
        self.edges: Tuple[Tuple[int, int], ...] = tuple((int(u), int(v)) for u, v in edges)
        self.rotation: Dict[int, Tuple[int, ...]] = {
            int(v): tuple(int(e) for e in rot) for v, rot in rotation.items()}
        u, v, side = outer_face_edge
        if side not in ("left", "right"):
            raise GraphError(f"outer face side must be 'left' or 'right', got {side!r}")
        self.outer_face_edge: Tuple[int, int, str] = (int(u), int(v), side)
        self._validate()

    # construction -------------------------------------------------------
    def _validate(self) -> None:
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        seen = {}
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {i} uses an unknown vertex")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"multi-edge between {u} and {v}")
            seen[key] = i
        self._edge_lookup: Dict[Tuple[int, int], int] = seen
        incident: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for i, (u, v) in enumerate(self.edges):
            incident[u].append(i)
            incident[v].append(i)
        for v in self.vertices:
            rot = self.rotation.get(v, ())
            if sorted(rot) != sorted(incident[v]):
                raise GraphError(f"rotation at {v} must list each incident edge once")
        for v in self.rotation:
            if v not in vset:
                raise GraphError(f"rotation given for unknown vertex {v}")
        u, v, _ = self.outer_face_edge
        if (min(u, v), max(u, v)) not in seen:
            raise GraphError("outer_face_edge is not an edge")

    # basic queries ------------------------------------------------------
    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._edge_lookup[(min(u, v), max(u, v))]
        except KeyError:
            raise KeyError(f"no edge {u}-{v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_lookup

    def other_end(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        """Neighbours of each vertex in ascending id order."""
        adj: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def dart(self, u: int, v: int) -> int:
        e = self.edge_index(u, v)
        return 2 * e if self.edges[e][0] == u else 2 * e + 1

    def dart_tail(self, d: int) -> int:
        a, b = self.edges[d >> 1]
        return a if d % 2 == 0 else b

    def dart_head(self, d: int) -> int:
        a, b = self.edges[d >> 1]
        return b if d % 2 == 0 else a

    def _next_dart(self, d: int) -> int:
        # continue from the head along the edge just clockwise of the reverse dart
        v = self.dart_head(d)
        rot = self.rotation[v]
        pos = rot.index(d >> 1)
        e = rot[pos - 1]
        return 2 * e if self.edges[e][0] == v else 2 * e + 1

    # faces ----------------------------------------------------------------
    @cached_property
    def _face_data(self) -> Tuple[Tuple[Face, ...], Tuple[int, ...]]:
        ndarts = 2 * len(self.edges)
        face_of = [-1] * ndarts
        found: List[Face] = []
        for start in range(ndarts):
            if face_of[start] != -1:
                continue
            walk = []
            d = start
            while face_of[d] == -1:
                face_of[d] = len(found)
                walk.append(d)
                d = self._next_dart(d)
            if d != start:
                raise NonPlanarEmbedding("face trace did not close")
            found.append(Face(len(found), tuple(walk)))
        faces_t = tuple(found)
        self._check_euler(faces_t, face_of)
        return faces_t, tuple(face_of)

    def _check_euler(self, faces_t, face_of) -> None:
        comp = self.component_ids
        counts: Dict[int, List[int]] = {}
        for v in self.vertices:
            counts.setdefault(comp[v], [0, 0, 0])[0] += 1
        for u, _ in self.edges:
            counts[comp[u]][1] += 1
        for f in faces_t:
            counts[comp[self.dart_tail(f.darts[0])]][2] += 1
        for c, (nv, ne, nf) in counts.items():
            if ne == 0:
                nf = 1
            if nv - ne + nf != 2:
                raise NonPlanarEmbedding(
                    f"Euler check failed on component {c}: V-E+F={nv - ne + nf}")

    @property
    def face_list(self) -> Tuple[Face, ...]:
        return self._face_data[0]

    def face_of_dart(self, d: int) -> int:
        return self._face_data[1][d]

    @cached_property
    def outer_face(self) -> int:
        u, v, side = self.outer_face_edge
        d = self.dart(u, v)
        return self.face_of_dart(d if side == "left" else d ^ 1)

    @cached_property
    def component_ids(self) -> Dict[int, int]:
        comp: Dict[int, int] = {}
        adj = self.adjacency
        for s in self.vertices:
            if s in comp:
                continue
            comp[s] = s
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in comp:
                        comp[y] = s
                        queue.append(y)
        return comp

    def edge_faces(self, e: int) -> Tuple[int, int]:
        return self.face_of_dart(2 * e), self.face_of_dart(2 * e + 1)

    def vertex_faces(self, v: int) -> FrozenSet[int]:
        out = set()
        for e in self.rotation[v]:
            d = 2 * e if self.edges[e][0] == v else 2 * e + 1
            out.add(self.face_of_dart(d))
        return frozenset(out)

    def edge_region(self, pairs: Iterable[Tuple[int, int]]) -> FrozenSet[int]:
        return frozenset(self.edge_index(u, v) for u, v in pairs)

    def graph_region(self, vertices: Iterable[int], edges: Iterable[int] = ()) -> Region:
        return Region(frozenset(vertices), frozenset(edges), frozenset())

    def __repr__(self) -> str:
        return f"PlaneGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    # serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "rotation": {str(v): list(self.rotation[v]) for v in self.vertices},
            "outer_face_edge": list(self.outer_face_edge),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PlaneGraph":
        rotation = {int(k): v for k, v in data["rotation"].items()}
        return cls(data["vertices"], data["edges"], rotation, data["outer_face_edge"])


def faces(g: PlaneGraph) -> Tuple[Face, ...]:
    """All faces of ``g``; raises NonPlanarEmbedding if Euler's formula fails."""
    return g.face_list


def cycle_edges(g: PlaneGraph, cycle: Sequence[int]) -> Tuple[int, ...]:
    """Edge indices of a cyclic vertex sequence; raises NotACycle."""
    n = len(cycle)
    if n < 3 or len(set(cycle)) != n:
        raise NotACycle("a cycle needs at least three distinct vertices")
    out = []
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if not g.has_edge(a, b):
            raise NotACycle(f"{a}-{b} is not an edge")
        out.append(g.edge_index(a, b))
    return tuple(out)


def split_faces(g: PlaneGraph, cut_edges: FrozenSet[int],
                seeds: Iterable[int], allowed: Optional[FrozenSet[int]] = None) -> FrozenSet[int]:
    """Faces reachable from ``seeds`` through the dual, never crossing ``cut_edges``."""
    seen = set()
    queue = deque()
    for f in seeds:
        if f not in seen and (allowed is None or f in allowed):
            seen.add(f)
            queue.append(f)
    flist = g.face_list
    while queue:
        f = queue.popleft()
        for d in flist[f].darts:
            e = d >> 1
            if e in cut_edges:
                continue
            h = g.face_of_dart(d ^ 1)
            if h not in seen and (allowed is None or h in allowed):
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


def region_from_faces(g: PlaneGraph, face_set: FrozenSet[int],
                      boundary_vertices: FrozenSet[int], boundary_edges: FrozenSet[int]) -> Region:
    """Open region made of ``face_set`` plus the vertices and edges they enclose."""
    verts = set()
    edges = set()
    flist = g.face_list
    for f in face_set:
        for d in flist[f].darts:
            e = d >> 1
            if e not in boundary_edges:
                f1, f2 = g.edge_faces(e)
                if f1 in face_set and f2 in face_set:
                    edges.add(e)
            v = g.dart_tail(d)
            if v not in boundary_vertices:
                verts.add(v)
    return Region(frozenset(verts), frozenset(edges), frozenset(face_set))


def disk_region(g: PlaneGraph, cycle: Sequence[int]) -> DiskRegion:
    """The disk bounded by ``cycle`` on the side that does not hold the outer face."""
    cyc = tuple(int(v) for v in cycle)
    for v in cyc:
        if v not in g.adjacency:
            raise UnknownVertex(v)
    cedges = frozenset(cycle_edges(g, cyc))
    left_seeds, right_seeds = [], []
    for i in range(len(cyc)):
        d = g.dart(cyc[i], cyc[(i + 1) % len(cyc)])
        left_seeds.append(g.face_of_dart(d))
        right_seeds.append(g.face_of_dart(d ^ 1))
    left = split_faces(g, cedges, left_seeds)
    right = split_faces(g, cedges, right_seeds)
    if left & right:
        raise NonPlanarEmbedding("cycle does not separate its two sides")
    outer = g.outer_face
    if (outer in left) == (outer in right):
        raise CycleBoundsOuterFace("outer face is not on exactly one side of the cycle")
    inside = right if outer in left else left
    reg = region_from_faces(g, inside, frozenset(cyc), cedges)
    return DiskRegion(cyc, cedges, reg.vertices, reg.edges, reg.faces)


def bfs_distances(g: PlaneGraph, sources: Iterable[int], limit: Optional[int] = None) -> Dict[int, int]:
    dist: Dict[int, int] = {}
    queue = deque()
    for s in sources:
        if s not in g.adjacency:
            raise UnknownVertex(s)
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    adj = g.adjacency
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if limit is not None and dx >= limit:
            continue
        for y in adj[x]:
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def distance(g: PlaneGraph, u: int, v: int) -> float:
    """Hop distance between ``u`` and ``v``; ``math.inf`` when disconnected."""
    if v not in g.adjacency:
        raise UnknownVertex(v)
    return bfs_distances(g, [u]).get(v, INF)


def r_neighborhood(g: PlaneGraph, s: Iterable[int], r: int) -> FrozenSet[int]:
    """Vertices within distance ``r`` of some vertex of ``s``."""
    if r < 0:
        raise ValueError("radius must be non-negative")
    return frozenset(bfs_distances(g, s, limit=r))
