"""Cycle sequences, railed annuli and the derived rectangle disks.

Index conventions used throughout the package:

* parallel sequence: ``C_1`` is the innermost cycle and ``C_p`` the outermost.
  ``D_i`` is the closed annulus between ``C_i`` and ``C_p``; moving "up" means
  moving toward higher indices, i.e. outward.
* nested sequence: ``C_1`` is the outermost cycle and ``D_i`` is the closed disk
  bounded by ``C_i``; moving "up" again means toward higher indices, here inward.

Rails are stored as vertex lists running from ``C_1`` to ``C_p``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .embed import DiskRegion, PlaneGraph, Region, cycle_edges, disk_region
from .errors import BadParams, IndexOutOfRange, LinkcombError, TooSmall

PARALLEL = "parallel"
NESTED = "nested"


def is_ccw(g: PlaneGraph, cycle: Sequence[int]) -> bool:
    """True when the disk of ``cycle`` lies on the left of its listed direction."""
    disk = disk_region(g, cycle)
    return g.face_of_dart(g.dart(cycle[0], cycle[1])) in disk.interior_faces


def orient_ccw(g: PlaneGraph, cycle: Sequence[int]) -> Tuple[int, ...]:
    cyc = tuple(cycle)
    if is_ccw(g, cyc):
        return cyc
    return (cyc[0],) + tuple(reversed(cyc[1:]))


class CycleSequence:
    """An ordered list of pairwise disjoint cycles, parallel or nested."""

    def __init__(self, graph: PlaneGraph, cycles: Sequence[Sequence[int]], kind: str = PARALLEL):
        if kind not in (PARALLEL, NESTED):
            raise BadParams(f"unknown sequence kind {kind!r}")
        self.graph = graph
        self.cycles: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(v) for v in c) for c in cycles)
        self.kind = kind
        if len(self.cycles) < 1:
            raise BadParams("a cycle sequence needs at least one cycle")
        self._disks: Dict[int, DiskRegion] = {}

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def size(self) -> int:
        return len(self.cycles)

    def cycle(self, i: int) -> Tuple[int, ...]:
        self._check(i)
        return self.cycles[i - 1]

    def _check(self, i: int) -> None:
        if not 1 <= i <= len(self.cycles):
            raise IndexOutOfRange(f"cycle index {i} outside [1, {len(self.cycles)}]")

    def disk(self, i: int) -> DiskRegion:
        self._check(i)
        if i not in self._disks:
            self._disks[i] = disk_region(self.graph, self.cycles[i - 1])
        return self._disks[i]

    @cached_property
    def cycle_of_vertex(self) -> Dict[int, int]:
        out = {}
        for i, c in enumerate(self.cycles, start=1):
            for v in c:
                if v in out:
                    raise LinkcombError(f"cycles {out[v]} and {i} share vertex {v}")
                out[v] = i
        return out

    @cached_property
    def cycle_edge_sets(self) -> Tuple[FrozenSet[int], ...]:
        return tuple(frozenset(cycle_edges(self.graph, c)) for c in self.cycles)

    @cached_property
    def cycle_of_edge(self) -> Dict[int, int]:
        out = {}
        for i, es in enumerate(self.cycle_edge_sets, start=1):
            for e in es:
                out[e] = i
        return out

    @cached_property
    def union_vertices(self) -> FrozenSet[int]:
        return frozenset(self.cycle_of_vertex)

    @cached_property
    def union_edges(self) -> FrozenSet[int]:
        return frozenset(self.cycle_of_edge)

    def union_region(self) -> Region:
        return Region(self.union_vertices, self.union_edges, frozenset())

    # regions ------------------------------------------------------------
    def region_D(self, i: int) -> Region:
        """The closed region ``D_i``."""
        if self.kind == PARALLEL:
            return self.disk(len(self)).closed - self.disk(i).open
        return self.disk(i).closed

    def ann(self, i: int, j: int) -> Region:
        """Closed region between ``C_i`` and ``C_j`` (both included)."""
        self._check(i)
        self._check(j)
        if i > j:
            raise IndexOutOfRange(f"annulus needs i <= j, got ({i}, {j})")
        if self.kind == PARALLEL:
            return self.disk(j).closed - self.disk(i).open
        return self.disk(i).closed - self.disk(j).open

    @cached_property
    def delta(self) -> Region:
        return self.ann(1, len(self)) if self.kind == PARALLEL else self.disk(1).closed

    @cached_property
    def delta_interior(self) -> Region:
        if self.kind == PARALLEL:
            return self.disk(len(self)).open - self.disk(1).closed
        return self.disk(1).open

    def up_faces(self, i: int) -> FrozenSet[int]:
        """Faces strictly on the side of ``C_i`` toward higher indices."""
        inside = self.disk(i).interior_faces
        if self.kind == PARALLEL:
            return frozenset(range(len(self.graph.face_list))) - inside
        return inside

    def down_faces(self, i: int) -> FrozenSet[int]:
        return frozenset(range(len(self.graph.face_list))) - self.up_faces(i)

    def up_region(self, i: int) -> Region:
        """Open region strictly above ``C_i``."""
        d = self.disk(i)
        if self.kind == NESTED:
            return d.open
        everything = Region(frozenset(self.graph.vertices), frozenset(range(len(self.graph.edges))),
                            frozenset(range(len(self.graph.face_list))))
        return everything - d.closed

    def down_region(self, i: int) -> Region:
        d = self.disk(i)
        if self.kind == PARALLEL:
            return d.open
        everything = Region(frozenset(self.graph.vertices), frozenset(range(len(self.graph.edges))),
                            frozenset(range(len(self.graph.face_list))))
        return everything - d.closed

    def validate(self) -> Optional[str]:
        """Return a description of the first violated invariant, or None."""
        try:
            self.cycle_of_vertex
            for c in self.cycles:
                cycle_edges(self.graph, c)
            for i in range(1, len(self)):
                inner, outer = (i, i + 1) if self.kind == PARALLEL else (i + 1, i)
                if not set(self.cycles[inner - 1]) <= self.disk(outer).interior_vertices:
                    return f"cycle {inner} is not strictly inside cycle {outer}"
        except LinkcombError as exc:
            return str(exc)
        return None

    def to_json(self) -> dict:
        return {"kind": self.kind, "cycles": [list(c) for c in self.cycles]}


@dataclass(frozen=True)
class AnnulusRegion:
    lo: int
    hi: int
    region: Region

    @property
    def vertices(self) -> FrozenSet[int]:
        return self.region.vertices

    @property
    def edges(self) -> FrozenSet[int]:
        return self.region.edges


def _subpath_on(rail: Sequence[int], members: Iterable[int]) -> Tuple[int, ...]:
    mem = set(members)
    return tuple(v for v in rail if v in mem)


@dataclass
class ValidationReport:
    ok: bool
    violation: Optional[str] = None
    where: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


class RailedAnnulus:
    """A parallel cycle sequence crossed by ``q`` disjoint rails."""

    def __init__(self, seq: CycleSequence, rails: Sequence[Sequence[int]]):
        if seq.kind != PARALLEL:
            raise BadParams("a railed annulus needs a parallel cycle sequence")
        self.seq = seq
        self.graph = seq.graph
        self.rails: Tuple[Tuple[int, ...], ...] = tuple(tuple(int(v) for v in r) for r in rails)

    @property
    def p(self) -> int:
        return len(self.seq)

    @property
    def q(self) -> int:
        return len(self.rails)

    def cycle(self, i: int) -> Tuple[int, ...]:
        return self.seq.cycle(i)

    def rail(self, j: int) -> Tuple[int, ...]:
        if not 1 <= j <= self.q:
            raise IndexOutOfRange(f"rail index {j} outside [1, {self.q}]")
        return self.rails[j - 1]

    @cached_property
    def _cross(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        table = {}
        for i, c in enumerate(self.seq.cycles, start=1):
            cs = set(c)
            for j, rail in enumerate(self.rails, start=1):
                table[(i, j)] = tuple(v for v in rail if v in cs)
        return table

    def cross(self, i: int, j: int) -> Tuple[int, ...]:
        """``P_{i,j}``, the intersection of ``C_i`` and ``P_j`` in rail order."""
        self.seq._check(i)
        self.rail(j)
        return self._cross[(i, j)]

    @cached_property
    def rail_of_vertex(self) -> Dict[int, int]:
        return {v: j for j, r in enumerate(self.rails, start=1) for v in r}

    @cached_property
    def rail_edge_sets(self) -> Tuple[FrozenSet[int], ...]:
        g = self.graph
        return tuple(frozenset(g.edge_index(r[k], r[k + 1]) for k in range(len(r) - 1))
                     for r in self.rails)

    @cached_property
    def rail_of_edge(self) -> Dict[int, int]:
        return {e: j for j, es in enumerate(self.rail_edge_sets, start=1) for e in es}

    def vertex(self, i: int, j: int) -> int:
        """A representative vertex of ``P_{i,j}`` (its first vertex)."""
        return self.cross(i, j)[0]

    def to_json(self) -> dict:
        return {"cycles": [list(c) for c in self.seq.cycles], "rails": [list(r) for r in self.rails]}

    @classmethod
    def from_json(cls, g: PlaneGraph, data: dict) -> "RailedAnnulus":
        return cls(CycleSequence(g, data["cycles"], PARALLEL), data["rails"])


def validate_railed_annulus(g: PlaneGraph, a: RailedAnnulus) -> ValidationReport:
    """Check every railed-annulus invariant, reporting the first violation."""
    seq = a.seq
    if seq.graph is not g:
        seq = CycleSequence(g, seq.cycles, PARALLEL)
        a = RailedAnnulus(seq, a.rails)
    if a.p < 3 or a.p % 2 == 0:
        return ValidationReport(False, "p must be odd and at least 3", (a.p,))
    if a.q < 3:
        return ValidationReport(False, "q must be at least 3", (a.q,))
    problem = seq.validate()
    if problem:
        return ValidationReport(False, f"cycle sequence: {problem}")
    owner: Dict[int, int] = {}
    for j, rail in enumerate(a.rails, start=1):
        if len(set(rail)) != len(rail):
            return ValidationReport(False, f"rail {j} repeats a vertex", (j,))
        for k in range(len(rail) - 1):
            if not g.has_edge(rail[k], rail[k + 1]):
                return ValidationReport(False, f"rail {j} is not a path of the graph", (j,))
        for v in rail:
            if v in owner:
                return ValidationReport(False, f"rails {owner[v]} and {j} are not disjoint (vertex {v})",
                                        (owner[v], j))
            owner[v] = j
    annulus = seq.delta
    for j, rail in enumerate(a.rails, start=1):
        for v in rail:
            if v not in annulus.vertices:
                return ValidationReport(False, f"rail {j} leaves the annulus at vertex {v}", (j,))
    for i, c in enumerate(seq.cycles, start=1):
        cs = set(c)
        for j, rail in enumerate(a.rails, start=1):
            hits = [k for k, v in enumerate(rail) if v in cs]
            if not hits:
                return ValidationReport(False, f"P_{i},{j} is empty", (i, j))
            if hits != list(range(hits[0], hits[-1] + 1)):
                return ValidationReport(False, f"P_{i},{j} is not a path", (i, j))
            if len(hits) > 1:
                for k in range(hits[0], hits[-1]):
                    if g.edge_index(rail[k], rail[k + 1]) not in seq.cycle_edge_sets[i - 1]:
                        return ValidationReport(False, f"P_{i},{j} is not a subpath of C_{i}", (i, j))
    # rails must meet C_1 in counter-clockwise order
    inner = orient_ccw(g, seq.cycles[0])
    pos = {v: k for k, v in enumerate(inner)}
    order = [pos[a.cross(1, j)[0]] for j in range(1, a.q + 1)]
    start = order.index(min(order))
    rotated = order[start:] + order[:start]
    if rotated != sorted(rotated):
        return ValidationReport(False, "rails do not meet C_1 in counter-clockwise order", (1,))
    return ValidationReport(True)


def annulus_region(a: RailedAnnulus, i: int, j: int) -> AnnulusRegion:
    """``ann(C, i, j)``: the closed region between ``C_i`` and ``C_j``."""
    if not (1 <= i <= j <= a.p):
        raise IndexOutOfRange(f"need 1 <= i <= j <= {a.p}, got ({i}, {j})")
    return AnnulusRegion(i, j, a.seq.ann(i, j))


# derived disks ---------------------------------------------------------------

class DerivedDisks:
    """The sets ``F_A``, the L/R paths, rectangle disks and the nested sequence ``C_A``."""

    def __init__(self, a: RailedAnnulus):
        if a.p < 5 or a.q < 5:
            raise TooSmall(f"derived disks need p, q >= 5 (got p={a.p}, q={a.q})")
        self.annulus = a
        self.graph = a.graph
        self.z = min(a.p, a.q) // 2
        self._F_parts = tuple(self._f_arc(i) for i in range(1, a.p + 1))
        self.F_A: FrozenSet[int] = frozenset().union(*[set(arc_edges) for _, arc_edges in self._F_parts])
        self._rect_cache: Dict[Tuple[int, int, int, int], DiskRegion] = {}

    def _f_arc(self, i: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        a = self.annulus
        g = self.graph
        cyc = a.cycle(i)
        n = len(cyc)
        last, first, second = set(a.cross(i, a.q)), set(a.cross(i, 1)), set(a.rail(2))
        for start in range(n):
            if cyc[start] not in last or cyc[(start + 1) % n] in last:
                continue
            for step in (1, -1):
                walk = [cyc[start]]
                k = start
                while True:
                    k = (k + step) % n
                    walk.append(cyc[k])
                    if cyc[k] in first or cyc[k] in last or cyc[k] in second:
                        break
                if walk[-1] in first and not (set(walk) & second):
                    edges = tuple(g.edge_index(walk[t], walk[t + 1]) for t in range(len(walk) - 1))
                    return tuple(walk), edges
        raise LinkcombError(f"no F_A arc found on cycle {i}")

    def f_arc(self, i: int) -> Tuple[int, ...]:
        """Vertices of ``F^(i)_A`` from ``P_{i,q}`` to ``P_{i,1}``."""
        return self._F_parts[i - 1][0]

    @cached_property
    def _cut_cycles(self) -> Tuple[Tuple[int, ...], ...]:
        # each C_i with the F_A arc removed, listed from P_{i,1} around to P_{i,q}
        out = []
        for i in range(1, self.annulus.p + 1):
            cyc = self.annulus.cycle(i)
            arc = self.f_arc(i)
            n = len(cyc)
            k = cyc.index(arc[-1])
            nxt = cyc[(k + 1) % n]
            step = 1 if (len(arc) < 2 or nxt != arc[-2]) else -1
            line = []
            while True:
                line.append(cyc[k])
                if cyc[k] == arc[0]:
                    break
                k = (k + step) % n
            out.append(tuple(line))
        return tuple(out)

    def L_path(self, i: int, j: int, j2: int) -> Tuple[int, ...]:
        """``L_{i,j->j2}``: shortest arc of ``C_i`` from ``P_{i,j}`` to ``P_{i,j2}`` off ``F_A``."""
        if j == j2:
            raise IndexOutOfRange("L paths need distinct rails")
        a = self.annulus
        line = self._cut_cycles[i - 1]
        src, dst = set(a.cross(i, j)), set(a.cross(i, j2))
        best = None
        for x, v in enumerate(line):
            if v not in src:
                continue
            for y, w in enumerate(line):
                if w not in dst:
                    continue
                seg = line[x:y + 1] if x <= y else tuple(reversed(line[y:x + 1]))
                key = (len(seg), seg)
                if best is None or key < best:
                    best = key
        return best[1]

    def R_path(self, i: int, i2: int, j: int) -> Tuple[int, ...]:
        """``R_{i->i2,j}``: shortest subpath of rail ``j`` from ``P_{i,j}`` to ``P_{i2,j}``."""
        a = self.annulus
        if i == i2:
            return a.cross(i, j)
        rail = a.rail(j)
        src, dst = set(a.cross(i, j)), set(a.cross(i2, j))
        best = None
        for x, v in enumerate(rail):
            if v not in src:
                continue
            for y, w in enumerate(rail):
                if w not in dst:
                    continue
                seg = rail[x:y + 1] if x <= y else tuple(reversed(rail[y:x + 1]))
                key = (len(seg), seg)
                if best is None or key < best:
                    best = key
        return best[1]

    def rect_boundary_edges(self, i: int, i2: int, j: int, j2: int) -> FrozenSet[int]:
        """Edge set of the eight-piece boundary of ``Delta_{i,i2,j,j2}``."""
        a = self.annulus
        if not (1 <= i < i2 <= a.p and 1 <= j < j2 <= a.q):
            raise IndexOutOfRange(f"bad rectangle indices {(i, i2, j, j2)}")
        g = self.graph
        pieces = [a.cross(i, j), self.L_path(i, j, j2), a.cross(i, j2), self.R_path(i, i2, j2),
                  a.cross(i2, j2), self.L_path(i2, j2, j), a.cross(i2, j), self.R_path(i2, i, j)]
        edges = set()
        for piece in pieces:
            for t in range(len(piece) - 1):
                edges.add(g.edge_index(piece[t], piece[t + 1]))
        return frozenset(edges)

    def rect_cycle(self, i: int, i2: int, j: int, j2: int) -> Tuple[int, ...]:
        """Boundary cycle of ``Delta_{i,i2,j,j2}`` as a counter-clockwise vertex list."""
        edges = self.rect_boundary_edges(i, i2, j, j2)
        g = self.graph
        adj: Dict[int, List[int]] = {}
        for e in edges:
            u, v = g.edges[e]
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        if any(len(ns) != 2 for ns in adj.values()):
            raise LinkcombError("rectangle boundary is not a cycle")
        start = min(adj)
        cyc = [start]
        prev, cur = None, start
        while True:
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        if len(cyc) != len(adj):
            raise LinkcombError("rectangle boundary is not a single cycle")
        return orient_ccw(g, cyc)

    def rect_disk(self, i: int, i2: int, j: int, j2: int) -> DiskRegion:
        key = (i, i2, j, j2)
        if key not in self._rect_cache:
            self._rect_cache[key] = disk_region(self.graph, self.rect_cycle(*key))
        return self._rect_cache[key]

    def CA_cycle(self, i: int) -> Tuple[int, ...]:
        a = self.annulus
        if not 1 <= i <= self.z:
            raise IndexOutOfRange(f"C_A index {i} outside [1, {self.z}]")
        return self.rect_cycle(i, a.p - i + 1, i, a.q - i + 1)

    @cached_property
    def CA(self) -> CycleSequence:
        """The nested sequence ``C_A``; its ``D_i`` is ``Delta_{i,p-i+1,i,q-i+1}``."""
        seq = CycleSequence(self.graph, [self.CA_cycle(i) for i in range(1, self.z + 1)], NESTED)
        for i in range(1, self.z + 1):
            a = self.annulus
            seq._disks[i] = self.rect_disk(i, a.p - i + 1, i, a.q - i + 1)
        return seq


def derive_disks(a: RailedAnnulus) -> DerivedDisks:
    return DerivedDisks(a)


# generators -----------------------------------------------------------------

@dataclass
class GridLayout:
    """A generated annular grid with the bookkeeping the generators need."""

    graph: PlaneGraph
    annulus: Optional[RailedAnnulus]
    p: int
    q: int
    polar: Dict[int, Tuple[float, float]]
    grid_vertex: Dict[Tuple[int, int], int]
    pads: Dict[Tuple[str, int], Tuple[int, ...]] = field(default_factory=dict)
    hub: Optional[int] = None
    chord_edges: Tuple[Tuple[int, int], ...] = ()

    def cycles(self) -> List[Tuple[int, ...]]:
        return [tuple(self.grid_vertex[(i, j)] for j in range(1, self.q + 1)) for i in range(1, self.p + 1)]

    def rails(self) -> List[Tuple[int, ...]]:
        return [tuple(self.grid_vertex[(i, j)] for i in range(1, self.p + 1)) for j in range(1, self.q + 1)]

    def pad_terminal(self, side: str, rail: int) -> int:
        return self.pads[(side, rail)][-1]


def _wrap(angle: float) -> float:
    return (angle + math.pi) % (2 * math.pi) - math.pi


def rotation_from_polar(vertices: Sequence[int], edges: Sequence[Tuple[int, int]],
                        polar: Dict[int, Tuple[float, float]]) -> Dict[int, List[int]]:
    """Rotation system for edges drawn as polar-linear curves around the origin."""
    rot: Dict[int, List[Tuple[float, int]]] = {v: [] for v in vertices}
    for e, (u, v) in enumerate(edges):
        for a, b in ((u, v), (v, u)):
            ra, ta = polar[a]
            rb, tb = polar[b]
            if ra == 0:
                direction = tb
            else:
                dt = _wrap(tb - ta) if rb != 0 else 0.0
                dr = rb - ra
                # tangent = dr * e_r + ra * dt * e_theta
                x = dr * math.cos(ta) - ra * dt * math.sin(ta)
                y = dr * math.sin(ta) + ra * dt * math.cos(ta)
                direction = math.atan2(y, x)
            rot[a].append((direction, e))
    return {v: [e for _, e in sorted(lst)] for v, lst in rot.items()}


def build_annular_grid(p: int, q: int, chords: float = 0.0, seed: int = 0,
                       pads: Optional[Iterable[Tuple[str, int]]] = None,
                       hub: bool = False, require_odd: bool = True) -> GridLayout:
    """Concentric ``p`` cycles crossed by ``q`` rails, plus optional chords, pads and hub.

    Vertex ``(i-1)*q + (j-1)`` sits on cycle ``i`` (innermost first) and rail ``j``.
    Pads are two-edge paths hanging off rail ends: ``("in", j)`` goes toward the
    centre from ``C_1`` and ``("out", j)`` goes away from ``C_p``.
    """
    if q < 3 or p < 2 or (require_odd and (p < 3 or p % 2 == 0)):
        raise BadParams(f"need p odd >= 3 and q >= 3 (got p={p}, q={q})")
    if not 0.0 <= chords <= 1.0:
        raise BadParams("chord density must lie in [0, 1]")
    rng = random.Random(seed)
    gv = {}
    polar = {}
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            v = (i - 1) * q + (j - 1)
            gv[(i, j)] = v
            polar[v] = (float(i + 1), 2 * math.pi * (j - 1) / q)
    edges: List[Tuple[int, int]] = []
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            edges.append((gv[(i, j)], gv[(i, j % q + 1)]))
    for j in range(1, q + 1):
        for i in range(1, p):
            edges.append((gv[(i, j)], gv[(i + 1, j)]))
    chord_list = []
    if chords > 0:
        for i in range(1, p):
            for j in range(1, q + 1):
                if rng.random() < chords:
                    j2 = j % q + 1
                    if rng.random() < 0.5:
                        chord = (gv[(i, j)], gv[(i + 1, j2)])
                    else:
                        chord = (gv[(i + 1, j)], gv[(i, j2)])
                    chord_list.append(chord)
        edges.extend(chord_list)
    nxt = p * q
    pad_map: Dict[Tuple[str, int], Tuple[int, ...]] = {}
    for side, j in sorted(set(pads or ())):
        if side not in ("in", "out") or not 1 <= j <= q:
            raise BadParams(f"bad pad {(side, j)}")
        theta = 2 * math.pi * (j - 1) / q
        if side == "in":
            if hub:
                raise BadParams("inner pads cannot be combined with a hub")
            base, radii = gv[(1, j)], (1.2, 0.6)
        else:
            base, radii = gv[(p, j)], (p + 2.0, p + 3.0)
        mid, leaf = nxt, nxt + 1
        nxt += 2
        polar[mid] = (radii[0], theta)
        polar[leaf] = (radii[1], theta)
        edges.append((base, mid))
        edges.append((mid, leaf))
        pad_map[(side, j)] = (base, mid, leaf)
    hub_vertex = None
    if hub:
        hub_vertex = nxt
        nxt += 1
        polar[hub_vertex] = (0.0, 0.0)
        for j in range(1, q + 1):
            edges.append((hub_vertex, gv[(1, j)]))
    vertices = list(range(nxt))
    rotation = rotation_from_polar(vertices, edges, polar)
    g = PlaneGraph(vertices, edges, rotation, (gv[(p, 1)], gv[(p, 2)], "right"))
    layout = GridLayout(g, None, p, q, polar, gv, pad_map, hub_vertex, tuple(chord_list))
    if p % 2 == 1 and p >= 3:
        layout.annulus = RailedAnnulus(CycleSequence(g, layout.cycles(), PARALLEL), layout.rails())
    return layout


def gen_annular_grid(p: int, q: int, chords: float = 0.0, seed: int = 0,
                     pads: Optional[Iterable[Tuple[str, int]]] = None) -> Tuple[PlaneGraph, RailedAnnulus]:
    """Generate a ``(p, q)`` annular grid; deterministic in ``seed``."""
    layout = build_annular_grid(p, q, chords, seed, pads)
    return layout.graph, layout.annulus
