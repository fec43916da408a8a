"""Decomposition of a linkage relative to a cycle sequence.

Streams and rivers cross an annulus, mountains and valleys are excursions
above or below a base cycle, and crossings and bridges count how a linkage
traverses a nested sequence.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .embed import EMPTY, DiskRegion, PlaneGraph, Region, split_faces
from .errors import StreamsNotDisjoint
from .linkage import Linkage
from .structures import NESTED, CycleSequence, orient_ccw

MOUNTAIN = "mountain"
VALLEY = "valley"


@dataclass(frozen=True)
class Stream:
    path: Tuple[int, ...]
    is_river: bool
    path_index: int
    span: Tuple[int, int]

    @property
    def low_end(self) -> int:
        return self.path[0]

    @property
    def high_end(self) -> int:
        return self.path[-1]


@dataclass(frozen=True)
class MountainValley:
    path: Tuple[int, ...]
    kind: str
    base_index: int
    disk: Region
    dehe: int
    path_index: int
    span: Tuple[int, int]
    core: Tuple[int, ...]

    def summary(self) -> dict:
        return {"kind": self.kind, "base": self.base_index, "dehe": self.dehe,
                "path_index": self.path_index, "span": list(self.span)}


@dataclass(frozen=True)
class CrossRecord:
    path_index: int
    cycle_index: int
    subpath: Tuple[int, ...]
    span: Tuple[int, int]


@dataclass(frozen=True)
class BridgeRecord:
    path: Tuple[int, ...]
    path_index: int
    endpoints: Tuple[int, int]


def _edges_of(g: PlaneGraph, path: Sequence[int]) -> List[int]:
    return [g.edge_index(a, b) for a, b in zip(path, path[1:])]


# streams and rivers --------------------------------------------------------------

def delta_components(l: Linkage, seq: CycleSequence) -> List[Tuple[int, int, int]]:
    """Components of ``L`` inside the closed annulus as ``(path, start, end)`` index spans."""
    g = l.host
    delta = seq.delta
    out = []
    for k, path in enumerate(l.paths):
        start = None
        for x, v in enumerate(path):
            inside = v in delta.vertices
            if inside and start is not None and g.edge_index(path[x - 1], v) not in delta.edges:
                out.append((k, start, x - 1))
                start = None
            if inside and start is None:
                start = x
            if not inside and start is not None:
                out.append((k, start, x - 1))
                start = None
        if start is not None:
            out.append((k, start, len(path) - 1))
    return out


def streams(l: Linkage, seq: CycleSequence) -> List[Stream]:
    """Canonical disjoint streams: one per annulus traversal, first touch to first touch."""
    g = l.host
    first, last = set(seq.cycles[0]), set(seq.cycles[-1])
    delta = seq.delta
    river_spans = []
    for k, a, b in delta_components(l, seq):
        path = l.paths[k]
        if (path[a] in first and path[b] in last) or (path[a] in last and path[b] in first):
            river_spans.append((k, a, b))
    found = []
    for k, path in enumerate(l.paths):
        touches = [(x, 1 if v in first else 2) for x, v in enumerate(path) if v in first or v in last]
        prev_end = None
        for (x, sx), (y, sy) in zip(touches, touches[1:]):
            if sx == sy or x == prev_end:
                continue
            sub = path[x:y + 1]
            if any(v not in delta.vertices for v in sub):
                continue
            if any(e not in delta.edges for e in _edges_of(g, sub)):
                continue
            river = any(k == rk and ra <= x and y <= rb for rk, ra, rb in river_spans)
            oriented = sub if sx == 1 else tuple(reversed(sub))
            found.append(Stream(oriented, river, k, (x, y)))
            prev_end = y
    return found


def rivers(l: Linkage, seq: CycleSequence) -> List[Stream]:
    return [s for s in streams(l, seq) if s.is_river]


def _check_disjoint(items: Sequence[Stream]) -> None:
    seen = {}
    for n, z in enumerate(items):
        for v in z.path:
            if v in seen:
                raise StreamsNotDisjoint(f"streams {seen[v]} and {n} share vertex {v}")
            seen[v] = n


def stream_gaps(items: Sequence[Stream], seq: CycleSequence) -> Tuple[List[Stream], List[FrozenSet[int]]]:
    """Streams sorted counter-clockwise by their ``C_1`` end, and the face set of each gap.

    Gap ``k`` is the part of the annulus between stream ``k`` and stream ``k+1``.
    """
    _check_disjoint(items)
    g = seq.graph
    inner = orient_ccw(g, seq.cycles[0])
    pos = {v: n for n, v in enumerate(inner)}
    ordered = sorted(items, key=lambda z: pos[z.low_end])
    if not ordered:
        return [], []
    delta_faces = seq.delta.faces
    cut = frozenset(e for z in ordered for e in _edges_of(g, z.path))
    gaps = []
    n = len(inner)
    for k, z in enumerate(ordered):
        nxt = ordered[(k + 1) % len(ordered)]
        a, b = pos[z.low_end], pos[nxt.low_end]
        seeds = []
        x = a
        while True:
            y = (x + 1) % n
            d = g.dart(inner[x], inner[y])
            for f in (g.face_of_dart(d), g.face_of_dart(d ^ 1)):
                if f in delta_faces:
                    seeds.append(f)
            x = y
            if x == b:
                break
        gaps.append(split_faces(g, cut, seeds, allowed=delta_faces))
    return ordered, gaps


def d_ordering(items: Sequence[Stream], D: Region, seq: CycleSequence) -> List[Stream]:
    """Counter-clockwise order of disjoint streams, starting right after the gap holding ``D``."""
    ordered, gaps = stream_gaps(items, seq)
    if len(ordered) <= 1:
        return list(ordered)
    g = seq.graph
    probe = set(D.faces)
    for v in D.vertices:
        probe |= g.vertex_faces(v)
    for e in D.edges:
        probe |= set(g.edge_faces(e))
    for k, gap in enumerate(gaps):
        if probe & gap:
            start = (k + 1) % len(ordered)
            return ordered[start:] + ordered[:start]
    return ordered


# mountains and valleys ------------------------------------------------------------

def _runs_on(path: Sequence[int], cycle_vertices: FrozenSet[int], cycle_edges: FrozenSet[int],
             g: PlaneGraph) -> List[Tuple[int, int]]:
    runs = []
    x = 0
    n = len(path)
    while x < n:
        if path[x] not in cycle_vertices:
            x += 1
            continue
        y = x
        while y + 1 < n and path[y + 1] in cycle_vertices and g.edge_index(path[y], path[y + 1]) in cycle_edges:
            y += 1
        runs.append((x, y))
        x = y + 1
    return runs


def _closure(g: PlaneGraph, face_set: FrozenSet[int]) -> Region:
    verts, edges = set(), set()
    flist = g.face_list
    for f in face_set:
        for d in flist[f].darts:
            edges.add(d >> 1)
            verts.add(g.dart_tail(d))
    return Region(frozenset(verts), frozenset(edges), face_set)


def excursion_disk(g: PlaneGraph, seq: CycleSequence, base: int, kind: str,
                   core: Sequence[int]) -> Region:
    """Closed disk cut off from the far side by an excursion ``core`` over ``C_base``."""
    if kind == MOUNTAIN:
        side = seq.up_faces(base)
        far = seq.up_faces(len(seq))
    else:
        side = seq.down_faces(base)
        far = seq.down_faces(1)
    cut = frozenset(_edges_of(g, core))
    reached = split_faces(g, cut, far & side, allowed=side)
    return _closure(g, side - reached)


def _dehe(seq: CycleSequence, base: int, kind: str, sub: Sequence[int]) -> int:
    idx = [seq.cycle_of_vertex[v] for v in sub if v in seq.cycle_of_vertex]
    if kind == MOUNTAIN:
        return 1 + max(k - base for k in idx)
    return 1 + max(base - k for k in idx)


def mountains_valleys(l: Linkage, seq: CycleSequence, D: Region = EMPTY,
                      kinds: Sequence[str] = (MOUNTAIN, VALLEY)) -> List[MountainValley]:
    """All inclusion-maximal mountains and valleys of ``l``."""
    g = l.host
    out = []
    terminals = l.terminals
    p = len(seq)
    for base in range(1, p + 1):
        cverts = frozenset(seq.cycles[base - 1])
        cedges = seq.cycle_edge_sets[base - 1]
        for kind in kinds:
            if kind == MOUNTAIN and base == p or kind == VALLEY and base == 1:
                continue
            region = seq.up_region(base) if kind == MOUNTAIN else seq.down_region(base)
            forbidden = frozenset(seq.cycles[-1] if kind == MOUNTAIN else seq.cycles[0])
            for k, path in enumerate(l.paths):
                runs = _runs_on(path, cverts, cedges, g)
                for (a0, a1), (b0, b1) in zip(runs, runs[1:]):
                    core = path[a1:b0 + 1]
                    inner = core[1:-1]
                    if any(v not in region.vertices or v in forbidden for v in inner):
                        continue
                    if any(e not in region.edges for e in _edges_of(g, core)):
                        continue
                    disk = excursion_disk(g, seq, base, kind, core)
                    if disk.vertices & terminals:
                        continue
                    if disk.meets(D):
                        continue
                    sub = path[a0:b1 + 1]
                    out.append(MountainValley(tuple(sub), kind, base, disk,
                                              _dehe(seq, base, kind, sub), k, (a0, b1), tuple(core)))
    return out


def is_tight(m: MountainValley, l: Linkage, seq: CycleSequence, r: int, D: Region = EMPTY,
             pool: Optional[Sequence[MountainValley]] = None) -> bool:
    """Whether a laminar tower of excursions with heights ``j(r+1)+2`` ends at ``m``."""
    if pool is None:
        pool = mountains_valleys(l, seq, D, kinds=(m.kind,))
    same = [x for x in pool if x.kind == m.kind and x.base_index == m.base_index]
    memo: Dict[Tuple[int, Tuple[int, int]], bool] = {}

    def chain(x: MountainValley) -> bool:
        key = (x.path_index, x.span)
        if key in memo:
            return memo[key]
        level, rem = divmod(x.dehe - 2, r + 1)
        if x.dehe < 2 or rem:
            ok = False
        elif level == 0:
            ok = True
        else:
            target = (level - 1) * (r + 1) + 2
            ok = False
            for y in same:
                if y.dehe != target or (y.path_index, y.span) == key:
                    continue
                if _inside(l.host, y.core, x.disk) and chain(y):
                    ok = True
                    break
        memo[key] = ok
        return ok

    return chain(m)


def _inside(g: PlaneGraph, path: Sequence[int], region: Region) -> bool:
    return set(path) <= region.vertices and set(_edges_of(g, path)) <= region.edges


# crossings and bridges ------------------------------------------------------------

def crossings(l: Linkage, seq: CycleSequence) -> List[CrossRecord]:
    """Every place where a path of ``l`` traverses a cycle of ``seq`` from one side to the other."""
    g = l.host
    out = []
    for i in range(1, len(seq) + 1):
        cverts = frozenset(seq.cycles[i - 1])
        cedges = seq.cycle_edge_sets[i - 1]
        # sides of C_i are told apart by its disk, which also works for C_p of a parallel sequence
        inside = seq.disk(i).open.edges
        for k, path in enumerate(l.paths):
            last = len(path) - 1
            for a, b in _runs_on(path, cverts, cedges, g):
                if a == 0 or b == last:
                    continue
                e_in = g.edge_index(path[a - 1], path[a])
                e_out = g.edge_index(path[b], path[b + 1])
                if (e_in in inside) != (e_out in inside):
                    out.append(CrossRecord(k, i, tuple(path[a:b + 1]), (a, b)))
    return out


def bridges(l: Linkage, disk: DiskRegion) -> List[BridgeRecord]:
    """Terminal-free components of ``l`` outside the open disk that leave its boundary."""
    g = l.host
    open_region = disk.open
    bor_v, bor_e = frozenset(disk.bounding_cycle), disk.cycle_edges
    out = []
    for k, path in enumerate(l.paths):
        pieces = []
        cur: List[int] = []
        for x, v in enumerate(path):
            if v in open_region.vertices:
                if cur:
                    pieces.append((cur, x - len(cur)))
                cur = []
                continue
            if cur and g.edge_index(cur[-1], v) in open_region.edges:
                pieces.append((cur, x - len(cur)))
                cur = []
            cur.append(v)
        if cur:
            pieces.append((cur, len(path) - len(cur)))
        for piece, start in pieces:
            if start == 0 or start + len(piece) == len(path):
                continue
            on_border = set(piece) <= bor_v and set(_edges_of(g, piece)) <= bor_e
            if on_border:
                continue
            out.append(BridgeRecord(tuple(piece), k, (piece[0], piece[-1])))
    return out


def components_inside(l: Linkage, disk: DiskRegion) -> List[Tuple[int, int, int]]:
    """Components of ``l`` within the open disk as ``(path, start, end)`` spans."""
    g = l.host
    open_region = disk.open
    out = []
    for k, path in enumerate(l.paths):
        start = None
        for x, v in enumerate(path):
            if v in open_region.vertices:
                if start is None:
                    start = x
                continue
            if start is not None:
                out.append((k, start, x - 1))
                start = None
        if start is not None:
            out.append((k, start, len(path) - 1))
    # open chords with both ends on the boundary are components without vertices
    for k, path in enumerate(l.paths):
        for x in range(len(path) - 1):
            a, b = path[x], path[x + 1]
            if a not in open_region.vertices and b not in open_region.vertices \
                    and g.edge_index(a, b) in open_region.edges:
                out.append((k, x, x + 1))
    return sorted(out)


@dataclass
class Decomposition:
    streams: List[Stream]
    rivers: List[Stream]
    mountains: List[MountainValley]
    valleys: List[MountainValley]
    tight: Dict[Tuple[int, Tuple[int, int], str], bool]
    crossings: List[CrossRecord]


def decompose(l: Linkage, seq: CycleSequence, D: Region = EMPTY, r: int = 0) -> Decomposition:
    mv = mountains_valleys(l, seq, D)
    tight = {}
    for x in mv:
        tight[(x.path_index, x.span, x.kind)] = is_tight(x, l, seq, r, D, pool=mv)
    st = streams(l, seq) if seq.kind != NESTED else []
    return Decomposition(st, [s for s in st if s.is_river],
                         [x for x in mv if x.kind == MOUNTAIN], [x for x in mv if x.kind == VALLEY],
                         tight, crossings(l, seq))
