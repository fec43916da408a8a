"""Linkages and the predicates on them: pattern, scattering, avoidance, confinement."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, Sequence, Tuple, Union

from .embed import PlaneGraph, Region, bfs_distances
from .errors import BadSpec, GraphError
from .structures import RailedAnnulus

Pattern = FrozenSet[FrozenSet[int]]


def canonical_path(path: Sequence[int]) -> Tuple[int, ...]:
    """Orient a path so that it starts at its smaller endpoint."""
    path = tuple(path)
    return path if path[0] <= path[-1] else tuple(reversed(path))


class Linkage:
    """Vertex-disjoint non-trivial paths of a host plane graph."""

    def __init__(self, host: PlaneGraph, paths: Iterable[Sequence[int]], check: bool = True):
        self.host = host
        self.paths: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(v) for v in p) for p in paths)
        if check:
            problem = self.problem()
            if problem:
                raise GraphError(problem)

    def problem(self) -> str | None:
        """Name of the first violated linkage invariant, or None."""
        seen = {}
        for k, path in enumerate(self.paths):
            if len(path) < 2:
                return f"nontrivial: path {k} has fewer than two vertices"
            for v in path:
                if v not in self.host.adjacency:
                    return f"vertices: path {k} uses unknown vertex {v}"
                if v in seen:
                    return f"disjointness: vertex {v} is on paths {seen[v]} and {k}"
                seen[v] = k
            for a, b in zip(path, path[1:]):
                if not self.host.has_edge(a, b):
                    return f"edges: {a}-{b} on path {k} is not a host edge"
        return None

    def __len__(self) -> int:
        return len(self.paths)

    @property
    def size(self) -> int:
        return len(self.paths)

    @cached_property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(v for p in self.paths for v in p)

    @cached_property
    def edges(self) -> FrozenSet[int]:
        g = self.host
        return frozenset(g.edge_index(a, b) for p in self.paths for a, b in zip(p, p[1:]))

    @cached_property
    def terminals(self) -> FrozenSet[int]:
        return frozenset(v for p in self.paths for v in (p[0], p[-1]))

    @cached_property
    def path_of_vertex(self):
        return {v: k for k, p in enumerate(self.paths) for v in p}

    def region(self) -> Region:
        return Region(self.vertices, self.edges, frozenset())

    def canonical(self) -> "Linkage":
        paths = sorted((canonical_path(p) for p in self.paths), key=lambda p: (p[0], p[-1], p))
        return Linkage(self.host, paths, check=False)

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return self.canonical().paths

    def __eq__(self, other) -> bool:
        return isinstance(other, Linkage) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Linkage({list(self.paths)})"

    def to_json(self) -> list:
        return [list(p) for p in self.paths]


def pattern(l: Linkage) -> Pattern:
    return frozenset(frozenset((p[0], p[-1])) for p in l.paths)


def equivalent(l1: Linkage, l2: Linkage) -> bool:
    return pattern(l1) == pattern(l2)


def scatter_violation(l: Linkage, r: int):
    """First pair of paths within host distance ``r``, or None."""
    owner = l.path_of_vertex
    for k, path in enumerate(l.paths):
        near = bfs_distances(l.host, path, limit=r)
        for v in near:
            other = owner.get(v)
            if other is not None and other != k:
                return (k, other, v)
    return None


def is_r_scattered(l: Linkage, r: int) -> bool:
    if r < 0:
        raise ValueError("radius must be non-negative")
    return scatter_violation(l, r) is None


RegionLike = Union[Region, Iterable[int]]


def _as_region(region: RegionLike) -> Region:
    if isinstance(region, Region):
        return region
    return Region(frozenset(region), frozenset(), frozenset())


def is_region_avoiding(l: Linkage, region: RegionLike) -> bool:
    """No terminal of ``l`` lies in ``region``."""
    return not (l.terminals & _as_region(region).vertices)


def is_region_free(l: Linkage, region: RegionLike) -> bool:
    """No vertex or edge of ``l`` lies in ``region``."""
    reg = _as_region(region)
    return not (l.vertices & reg.vertices) and not (l.edges & reg.edges)


@dataclass(frozen=True)
class ConfinementSpec:
    s: int
    I: FrozenSet[int]

    def __init__(self, s: int, I: Iterable[int]):
        object.__setattr__(self, "s", int(s))
        object.__setattr__(self, "I", frozenset(int(i) for i in I))

    def check(self, a: RailedAnnulus) -> None:
        if self.s < 1 or self.s % 2 == 0:
            raise BadSpec(f"s must be a positive odd integer, got {self.s}")
        if self.s > a.p:
            raise BadSpec(f"s={self.s} exceeds p={a.p}")
        if not self.I:
            raise BadSpec("I must be non-empty")
        if not self.I <= set(range(1, a.q + 1)):
            raise BadSpec(f"I must be a subset of [1, {a.q}]")

    def window_indices(self, a: RailedAnnulus) -> Tuple[int, int]:
        t, t2 = a.p // 2, self.s // 2
        return t + 1 - t2, t + 1 + t2


def confinement_window(a: RailedAnnulus, spec: ConfinementSpec) -> Region:
    spec.check(a)
    lo, hi = spec.window_indices(a)
    return a.seq.ann(lo, hi)


def confinement_violations(l: Linkage, a: RailedAnnulus, spec: ConfinementSpec):
    """Vertices and edges of ``l`` in the central window that are off the rails of ``I``."""
    window = confinement_window(a, spec)
    allowed_v = set()
    allowed_e = set()
    for j in spec.I:
        allowed_v.update(a.rail(j))
        allowed_e.update(a.rail_edge_sets[j - 1])
    bad_v = sorted(v for v in l.vertices & window.vertices if v not in allowed_v)
    bad_e = sorted(e for e in l.edges & window.edges if e not in allowed_e)
    return bad_v, bad_e


def is_confined(l: Linkage, a: RailedAnnulus, spec: ConfinementSpec) -> bool:
    bad_v, bad_e = confinement_violations(l, a, spec)
    return not bad_v and not bad_e
