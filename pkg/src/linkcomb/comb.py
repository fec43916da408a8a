"""Routing through railed annuli and the combing pipeline.

``route_grid`` links terminals on the top and bottom rows of a grid with
pairwise scattered paths, ``route_confined`` lifts that to a railed annulus,
``comb`` rewrites a linkage so its central window runs on chosen rails, and
``reroute_few_bridges`` moves a linkage off a vertex that lies deep inside a
nested cycle sequence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .embed import EMPTY, PlaneGraph, bfs_distances
from .errors import Infeasible, LinkcombError, NoValidAssignment, PipelineInfeasible, TooManyBridges
from .linkage import (ConfinementSpec, Linkage, equivalent, is_confined, is_r_scattered,
                      scatter_violation)
from .structures import NESTED, PARALLEL, CycleSequence, RailedAnnulus, derive_disks

Cell = Tuple[int, int]


# grid routing ----------------------------------------------------------------------

@dataclass(frozen=True)
class GridRoutingProblem:
    """``k`` columns by ``kp`` rows; terminals are column numbers on row 1 (up) and row ``kp`` (down)."""

    k: int
    kp: int
    d: int
    r: int
    up_terminals: Tuple[int, ...]
    down_terminals: Tuple[int, ...]

    def __init__(self, k: int, kp: int, d: int, r: int, up_terminals: Sequence[int],
                 down_terminals: Sequence[int]):
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "kp", int(kp))
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "r", int(r))
        object.__setattr__(self, "up_terminals", tuple(int(c) for c in up_terminals))
        object.__setattr__(self, "down_terminals", tuple(int(c) for c in down_terminals))

    def problem(self) -> Optional[str]:
        """The first violated precondition, or None."""
        k, kp, d, r = self.k, self.kp, self.d, self.r
        if r < 0:
            return "r must be non-negative"
        if not 1 <= d * (r + 1) <= kp <= k:
            return f"need 1 <= d(r+1) <= k' <= k, got d={d} r={r} k'={kp} k={k}"
        for name, cols in (("up", self.up_terminals), ("down", self.down_terminals)):
            if len(cols) != d:
                return f"{name} terminals: expected {d}, got {len(cols)}"
            if any(not 1 <= c <= k for c in cols):
                return f"{name} terminals must lie in columns 1..{k}"
            for a, b in zip(cols, cols[1:]):
                if b - a <= r:
                    return f"{name} terminals {a} and {b} are within distance {r}"
        return None

    def to_json(self) -> dict:
        return {"k": self.k, "kp": self.kp, "d": self.d, "r": self.r,
                "up": list(self.up_terminals), "down": list(self.down_terminals)}


def _segment(a: Cell, b: Cell) -> List[Cell]:
    (r1, c1), (r2, c2) = a, b
    if r1 == r2:
        step = 1 if c2 >= c1 else -1
        return [(r1, c) for c in range(c1, c2 + step, step)]
    step = 1 if r2 >= r1 else -1
    return [(r, c1) for r in range(r1, r2 + step, step)]


def _band_path(u: int, t: int, row: int, kp: int) -> List[Cell]:
    cells = _segment((1, u), (row, u))
    cells += _segment((row, u), (row, t))[1:]
    cells += _segment((row, t), (kp, t))[1:]
    return cells


def grid_distance(path_a: Sequence[Cell], path_b: Sequence[Cell]) -> int:
    """Minimum Manhattan distance between two cell sets (the grid metric)."""
    return min(abs(a[0] - b[0]) + abs(a[1] - b[1]) for a in path_a for b in path_b)


def grid_audit(paths: Sequence[Sequence[Cell]], r: int) -> Optional[Tuple[int, int]]:
    """First pair of paths closer than ``r + 1``, or None."""
    for i, j in itertools.combinations(range(len(paths)), 2):
        if grid_distance(paths[i], paths[j]) <= r:
            return (i, j)
    return None


def band_layout(k: int, kp: int, up: Sequence[int], down: Sequence[int], r: int,
                limit: int = 50000) -> Optional[List[List[Cell]]]:
    """First audited band layout, or None.

    Evenly spaced band blocks (every band order, every offset) come first; after
    that every assignment of rows to paths is tried, up to ``limit`` layouts.
    """
    d = len(up)
    span = (d - 1) * (r + 1)
    tried = 0
    for order in itertools.permutations(range(d)):
        for offset in range(1, kp - span + 1):
            rows = [offset + order[h] * (r + 1) for h in range(d)]
            paths = [_band_path(up[h], down[h], rows[h], kp) for h in range(d)]
            tried += 1
            if grid_audit(paths, r) is None:
                return paths
    for rows in itertools.product(range(1, kp + 1), repeat=d):
        tried += 1
        if tried > limit:
            break
        paths = [_band_path(up[h], down[h], rows[h], kp) for h in range(d)]
        if grid_audit(paths, r) is None:
            return paths
    return None


def route_grid(prob: GridRoutingProblem) -> List[List[Cell]]:
    """Band routing: path ``h`` drops to a private row, jogs sideways, then drops again.

    Band rows are ``r + 1`` apart, so once the preconditions hold some band
    order passes the pairwise scattering audit.
    """
    problem = prob.problem()
    if problem:
        raise Infeasible(problem)
    paths = band_layout(prob.k, prob.kp, prob.up_terminals, prob.down_terminals, prob.r)
    if paths is None:
        raise Infeasible(f"band routing found no scattered layout for {prob.to_json()}")
    return paths


# confined routing --------------------------------------------------------------------

def _rail_walk(rail: Sequence[int], a: int, b: int) -> List[int]:
    x, y = rail.index(a), rail.index(b)
    return list(rail[x:y + 1]) if x <= y else list(reversed(rail[y:x + 1]))


def _cycle_arc(a: RailedAnnulus, i: int, j: int, j2: int) -> List[int]:
    """Arc of ``C_i`` from ``P_{i,j}`` to ``P_{i,j2}`` for adjacent rails, free of other rails."""
    cyc = list(a.cycle(i))
    n = len(cyc)
    src, dst = set(a.cross(i, j)), set(a.cross(i, j2))
    rails = a.rail_of_vertex
    best = None
    for x in range(n):
        if cyc[x] not in src:
            continue
        for step in (1, -1):
            arc = [cyc[x]]
            y = x
            while True:
                y = (y + step) % n
                v = cyc[y]
                if v in src:
                    arc = [v]
                    continue
                arc.append(v)
                if v in dst or (v in rails and rails[v] not in (j, j2)) or len(arc) > n:
                    break
            if arc[-1] in dst and (best is None or len(arc) < len(best)):
                best = arc
    if best is None:
        raise Infeasible(f"no arc of C_{i} joins rails {j} and {j2}")
    return best


def expand_cells(a: RailedAnnulus, cells: Sequence[Cell]) -> List[int]:
    """Host path through ``P_{i,j}`` for each cell ``(i, j)``, covering the end pieces fully."""
    if len(cells) == 1:
        return list(a.cross(*cells[0]))
    joins = []
    for (i1, j1), (i2, j2) in zip(cells, cells[1:]):
        if i1 == i2:
            joins.append(_cycle_arc(a, i1, j1, j2))
        else:
            rail = a.rail(j1)
            src, dst = a.cross(i1, j1), a.cross(i2, j1)
            xs = [rail.index(v) for v in src]
            ys = [rail.index(v) for v in dst]
            if min(ys) > max(xs):
                joins.append(list(rail[max(xs):min(ys) + 1]))
            else:
                joins.append(list(reversed(rail[max(ys):min(xs) + 1])))
    first = a.cross(*cells[0])
    path = _rail_walk(a.rail(cells[0][1]), first[0], first[-1])
    if path[-1] != joins[0][0]:
        path = list(reversed(path))
        if path[-1] != joins[0][0]:
            path = _rail_walk(a.rail(cells[0][1]), path[0], joins[0][0])
    for n, join in enumerate(joins):
        if path[-1] != join[0]:
            path += _rail_walk(a.rail(cells[n][1]), path[-1], join[0])[1:]
        path += join[1:]
    last = a.cross(*cells[-1])
    far = last[0] if path[-1] == last[-1] else last[-1]
    if path[-1] != far:
        path += _rail_walk(a.rail(cells[-1][1]), path[-1], far)[1:]
    return path


@dataclass
class ConfinedRouting:
    linkage: Linkage
    rails: Tuple[int, ...]
    cells: List[List[Cell]]


def route_confined(a: RailedAnnulus, s: int, b: int, d: int, r: int, I: Sequence[int]) -> ConfinedRouting:
    """``d`` scattered paths from ``P_{1,c_h}`` to ``P_{p,c_h}`` with ``c_h = b+(h-1)(r+1)+1``.

    The outer ``b`` cycles on each side are contracted to a grid and routed with
    ``route_grid``; in between, path ``h`` follows rail ``i_{h(r+1)}`` of ``I``.
    """
    p, q = a.p, a.q
    if s < 1 or s % 2 == 0 or p % 2 == 0:
        raise Infeasible("p and s must be odd")
    if b < 1 or d < 1:
        raise Infeasible("need b >= 1 and d >= 1")
    if p < s + 2 * b:
        raise Infeasible(f"need p >= s + 2b, got p={p} s={s} b={b}")
    if q < b + d * (r + 1):
        raise Infeasible(f"need q >= b + d(r+1), got q={q} b={b} d={d} r={r}")
    chosen = sorted(set(int(j) for j in I))
    if len(chosen) < d * (r + 1) or any(not 1 <= j <= q for j in chosen):
        raise Infeasible(f"need at least d(r+1)={d * (r + 1)} rails of I inside [1, {q}]")
    picks = chosen[:d * (r + 1)]
    rails = tuple(picks[h * (r + 1) - 1] for h in range(1, d + 1))
    starts = [b + (h - 1) * (r + 1) + 1 for h in range(1, d + 1)]
    low = band_layout(q, b, starts, rails, r)
    high = band_layout(q, b, rails, starts, r)
    if low is None or high is None:
        raise Infeasible(f"no scattered band layout on {b} rows for {d} paths at r={r}")
    all_cells = []
    paths = []
    for h in range(d):
        cells = [(i, j) for i, j in low[h]]
        cells += [(i, rails[h]) for i in range(b + 1, p - b + 1)]
        cells += [(p - b + i, j) for i, j in high[h]]
        all_cells.append(cells)
        paths.append(expand_cells(a, cells))
    try:
        K = Linkage(a.graph, paths)
    except LinkcombError as exc:
        raise Infeasible(f"expanded routing is not a linkage: {exc}") from exc
    bad = scatter_violation(K, r)
    if bad is not None:
        raise Infeasible(f"expanded paths {bad[0]} and {bad[1]} are within distance {r} in the host")
    spec = ConfinementSpec(s, rails)
    if not is_confined(K, a, spec):
        raise Infeasible("expanded routing leaves the rails inside the central window")
    return ConfinedRouting(K, rails, all_cells)


# combing pipeline --------------------------------------------------------------------

@dataclass
class CombResult:
    combed: Linkage
    rails_used: Tuple[int, ...]
    trace: Dict[str, object]
    outside_guarantee: bool
    m: int
    b: int

    def to_json(self) -> dict:
        return {"combed": self.combed.to_json(), "rails_used": list(self.rails_used),
                "outside_guarantee": self.outside_guarantee, "m": self.m, "b": self.b,
                "trace": self.trace}


def _paths_json(l: Linkage) -> List[List[int]]:
    return [list(p) for p in l.paths]


def sub_annulus(a: RailedAnnulus, lo: int, hi: int) -> RailedAnnulus:
    """Cycles ``C_lo..C_hi`` with every rail cut down to the part between them."""
    keep = a.seq.cycles[lo - 1:hi]
    members = set().union(*[set(c) for c in keep])
    rails = []
    for j in range(1, a.q + 1):
        rail = a.rail(j)
        ends = [x for x, v in enumerate(rail) if v in set(a.cross(lo, j)) | set(a.cross(hi, j))]
        hits = [x for x, v in enumerate(rail) if v in members]
        rails.append(rail[min(ends + hits):max(ends + hits) + 1])
    return RailedAnnulus(CycleSequence(a.graph, keep, PARALLEL), rails)


def _join(a: RailedAnnulus, pieces: Sequence[Sequence[int]]) -> List[int]:
    """Concatenate vertex sequences; consecutive pieces meet in a vertex or a shared ``P_{i,j}``."""
    out: List[int] = list(pieces[0])
    rail_of = a.rail_of_vertex
    for piece in pieces[1:]:
        piece = list(piece)
        if not piece:
            continue
        if out[-1] != piece[0]:
            u, v = out[-1], piece[0]
            j = rail_of.get(u)
            if j is None or rail_of.get(v) != j:
                raise PipelineInfeasible("stitch", f"pieces end at {u} and restart at {v}")
            out += _rail_walk(a.rail(j), u, v)[1:]
        out += piece[1:]
    return out


def _outside_arc(a: RailedAnnulus, i: int, interior: FrozenSet[int], j_from: int, j_to: int) -> List[int]:
    """``C_i`` minus the open disk, from ``P_{i,j_from}`` counter-clockwise to ``P_{i,j_to}``."""
    cyc = list(a.cycle(i))
    n = len(cyc)
    src, dst = set(a.cross(i, j_from)), set(a.cross(i, j_to))
    starts = [x for x in range(n) if cyc[x] in src and cyc[(x + 1) % n] not in src]
    if len(starts) != 1:
        raise PipelineInfeasible("claim", f"P_{i},{j_from} is not an arc of C_{i}")
    x = starts[0]
    arc = [cyc[x]]
    while cyc[x] not in dst:
        x = (x + 1) % n
        if cyc[x] in interior:
            raise PipelineInfeasible("claim", f"C_{i} enters the open disk D between rails {j_from} and {j_to}")
        arc.append(cyc[x])
        if len(arc) > n:
            raise PipelineInfeasible("claim", f"walk around C_{i} did not reach rail {j_to}")
    return arc


def _default_m(L: Linkage) -> int:
    # the union of C_A minus its own disk is empty, so the estimate is the width of L itself
    from .witness import treewidth_upper, union_graph, _adjacency
    return treewidth_upper(_adjacency(union_graph(L.host, L, ())))


def size_conditions(p: int, q: int, m: int, r: int, s: int, I: Sequence[int]) -> Dict[str, bool]:
    return {"p": p >= 3 * m * m + 6 * m + 2 * r * m + 2 * r + 2 + s,
            "q": 2 * q >= (2 * r + 5) * m,
            "I": len(set(I)) > m * (r + 1)}


def audit_comb(L: Linkage, combed: Linkage, a: RailedAnnulus, r: int, spec: ConfinementSpec) -> Dict[str, bool]:
    """The four guarantees of a combed linkage, each as a boolean."""
    delta = a.seq.delta
    outside_v = {v for v in combed.vertices if v not in delta.vertices}
    outside_e = {e for e in combed.edges if e not in delta.edges}
    return {
        "equivalent": equivalent(combed, L),
        "scattered": is_r_scattered(combed, r),
        "outside": outside_v <= L.vertices and outside_e <= L.edges,
        "confined": is_confined(combed, a, spec),
    }


def comb(g: PlaneGraph, a: RailedAnnulus, L: Linkage, r: int, s: int, I: Sequence[int],
         m: Optional[int] = None, budget: Optional[int] = None) -> CombResult:
    """Reroute ``L`` so that its central ``s``-window runs on rails of ``I``.

    Raises PipelineInfeasible tagged with the failing stage; a returned result
    has passed the full audit.
    """
    from .decomp import d_ordering, rivers
    from .witness import minimal_linkage

    spec = ConfinementSpec(s, I)
    spec.check(a)
    problem = L.problem()
    if problem:
        raise PipelineInfeasible("input", problem)
    if L.terminals & a.seq.delta.vertices:
        raise PipelineInfeasible("input", "a terminal of L lies in the annulus")
    if not is_r_scattered(L, r):
        raise PipelineInfeasible("input", f"L is not {r}-scattered")
    p, q = a.p, a.q
    estimated = m is None
    if m is None:
        m = _default_m(L)
    m = max(0, int(m))
    if m % 2:
        m += 1
    b = 3 * m // 2
    conditions = size_conditions(p, q, m, r, s, I)
    outside = not all(conditions.values())
    trace: Dict[str, object] = {"m": m, "m_estimated": estimated, "b": b, "conditions": conditions}

    if is_confined(L, a, spec):
        trace["stages"] = ["confined-input"]
        trace["audit"] = audit_comb(L, L, a, r, spec)
        return CombResult(L.canonical(), (), trace, outside, m, b)

    try:
        dd = derive_disks(a)
    except LinkcombError as exc:
        raise PipelineInfeasible("disks", str(exc)) from exc
    if not (b + 1 <= dd.z and b + 1 < p - b and b + 1 < q - b):
        raise PipelineInfeasible("disks", f"D = Delta_{b + 1},{p - b},{b + 1},{q - b} is degenerate")
    D = dd.rect_disk(b + 1, p - b, b + 1, q - b)
    trace["D"] = [b + 1, p - b, b + 1, q - b]

    first = minimal_linkage(g, dd.CA, EMPTY, L, r, budget)
    if not first.optimal:
        raise PipelineInfeasible("minimize", "search budget exhausted minimizing over C_A")
    L1 = first.linkage
    trace["L1"] = _paths_json(L1)
    closed_D = D.closed
    if L1.vertices & closed_D.vertices or L1.edges & closed_D.edges:
        raise PipelineInfeasible("claim", "the C_A-minimal linkage meets D")
    second = minimal_linkage(g, a.seq, closed_D, L1, r, budget)
    if not second.optimal:
        raise PipelineInfeasible("minimize", "search budget exhausted minimizing over C")
    L2 = second.linkage
    trace["L2"] = _paths_json(L2)
    trace["cae"] = [first.cae_value, second.cae_value]

    Z = d_ordering(rivers(L2, a.seq), closed_D, a.seq)
    d = len(Z)
    trace["Z"] = [list(z.path) for z in Z]
    if d > m:
        raise PipelineInfeasible("rivers", f"{d} rivers exceed m = {m}")
    if d == 0:
        combed = L2
        rails_used: Tuple[int, ...] = ()
    else:
        combed, rails_used = _comb_rivers(a, dd, L2, Z, r, s, I, m, b, trace)
    checks = audit_comb(L, combed, a, r, spec)
    trace["audit"] = checks
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise PipelineInfeasible("verify", f"combed linkage fails: {', '.join(failed)}")
    return CombResult(combed.canonical(), rails_used, trace, outside, m, b)


def _level_path(dd, i: int, j: int, j2: int) -> Tuple[int, ...]:
    return dd.L_path(i, j, j2) if j != j2 else dd.annulus.cross(i, j)


def _comb_rivers(a, dd, L2: Linkage, Z, r: int, s: int, I, m: int, b: int, trace):
    p, q = a.p, a.q
    g = a.graph
    d = len(Z)
    w = (m + 1) * (b + r) + 2
    w2 = p - (m + 1) * (b + r) - 1
    trace["w"] = [w, w2]
    if w2 - w + 1 < s + 2 * b or w2 < w:
        raise PipelineInfeasible("routing", f"middle annulus C_{w}..C_{w2} is shorter than s + 2b = {s + 2 * b}")
    if q < b + d * (r + 1):
        raise PipelineInfeasible("routing", f"q = {q} is below b + d(r+1) = {b + d * (r + 1)}")
    interior = dd.rect_disk(b + 1, p - b, b + 1, q - b).interior_vertices
    records = []
    for i in range(1, d + 1):
        z = Z[i - 1].path
        lam, mu = i * (b + r) + 1, p - i * (b + r)
        c = b + (i - 1) * (r + 1) + 1
        ends = {}
        for side, level in (("down", lam), ("up", mu)):
            arc = _outside_arc(a, level, interior, q - b, b + 1)
            on_z = set(z)
            hit = next((pos for pos, v in enumerate(arc) if v in on_z), None)
            if hit is None:
                raise PipelineInfeasible("claim", f"river {i} misses C_{level} outside D")
            ends[side] = (arc[hit], list(reversed(arc[:hit + 1])), level)
        x_down, Q_down, _ = ends["down"]
        x_up, Q_up, _ = ends["up"]
        i_down, i_up = z.index(x_down), z.index(x_up)
        if i_down >= i_up:
            raise PipelineInfeasible("claim", f"river {i} meets C_{mu} before C_{lam}")
        Y_down = _join(a, [_level_path(dd, lam, q - b, c), a.cross(lam, c), dd.R_path(lam, w, c)])
        Y_up = _join(a, [_level_path(dd, mu, q - b, c), a.cross(mu, c), dd.R_path(mu, w2, c)])
        X_down = _join(a, [z[:i_down + 1], Q_down, Y_down])
        X_up = _join(a, [list(reversed(z[i_up:])), Q_up, Y_up])
        records.append({"i": i, "c": c, "levels": [lam, mu], "x_down": x_down, "x_up": x_up,
                        "Z_down": list(z[:i_down + 1]), "Z_up": list(z[i_up:]),
                        "Q_down": Q_down, "Q_up": Q_up, "Y_down": Y_down, "Y_up": Y_up,
                        "X_down": X_down, "X_up": X_up})
    if d >= 2:
        for i in range(d):
            prev = records[i - 1]
            for side in ("down", "up"):
                near = bfs_distances(g, records[i]["Q_" + side], limit=r)
                if any(v in near for v in prev["Z_" + side]):
                    raise PipelineInfeasible(
                        "claim", f"Z_{prev['i']} {side} part is within {r} of Q_{i + 1} {side}")
    try:
        routed = route_confined(sub_annulus(a, w, w2), s, b, d, r, I)
    except Infeasible as exc:
        raise PipelineInfeasible("routing", str(exc)) from exc
    new_paths = [list(path) for path in L2.paths]
    # replace each river by X_down + K_i + reversed X_up, last spans first so indices stay valid
    order = sorted(range(d), key=lambda n: (Z[n].path_index, Z[n].span), reverse=True)
    for n in order:
        rec = records[n]
        K_i = list(routed.linkage.paths[n])
        route = _join(a, [rec["X_down"], K_i, list(reversed(rec["X_up"]))])
        rec["K"] = K_i
        stream = Z[n]
        x, y = stream.span
        host = new_paths[stream.path_index]
        if tuple(host[x:y + 1]) != stream.path:
            route = list(reversed(route))
        new_paths[stream.path_index] = host[:x] + route + host[y + 1:]
    trace["rivers"] = records
    trace["K"] = [list(pth) for pth in routed.linkage.paths]
    trace["rails"] = list(routed.rails)
    try:
        combed = Linkage(g, new_paths)
    except LinkcombError as exc:
        raise PipelineInfeasible("verify", f"combed paths do not form a linkage: {exc}") from exc
    return combed, routed.rails


# rerouting with few bridges ------------------------------------------------------------

@dataclass
class RerouteResult:
    linkage: Linkage
    assignment: Dict[int, Optional[int]]
    bridges: int
    bound: int
    nodes: int = 0


def bridge_bound(seq: CycleSequence, l: Linkage) -> int:
    # k counts terminals, two per path, so floor(k/2) is the number of paths
    return len(seq) - l.size - 1


def _shortcut(piece: Sequence[int], cycle: Sequence[int], forward: bool) -> Optional[List[int]]:
    """``piece`` with its stretch between the first and last visit of ``cycle`` replaced by an arc."""
    on = set(cycle)
    hits = [x for x, v in enumerate(piece) if v in on]
    if not hits:
        return None
    x, y = hits[0], hits[-1]
    if x == y:
        return list(piece)
    n = len(cycle)
    pos = {v: t for t, v in enumerate(cycle)}
    step = 1 if forward else -1
    arc = [piece[x]]
    t = pos[piece[x]]
    while arc[-1] != piece[y]:
        t = (t + step) % n
        arc.append(cycle[t])
    return list(piece[:x]) + arc + list(piece[y + 1:])


def reroute_few_bridges(g: PlaneGraph, seq: CycleSequence, v: int, L: Linkage, r: int,
                        budget: int = 200000) -> RerouteResult:
    """An equivalent linkage avoiding ``v`` that agrees with ``L`` outside the disk of ``C_1``.

    Each component of ``L`` inside the open disk is either kept (when it misses
    ``v``) or shortcut along an arc of its own cycle ``C_j``, ``j >= 2``; the
    assignment is found by depth-first search and every candidate is audited.
    """
    from .decomp import bridges, components_inside

    if seq.kind != NESTED:
        raise NoValidAssignment("reroute_few_bridges needs a nested sequence")
    outer = seq.disk(1)
    count = len(bridges(L, outer))
    bound = bridge_bound(seq, L)
    if v not in L.vertices:
        return RerouteResult(L, {}, count, bound)
    if L.terminals & outer.closed.vertices:
        raise NoValidAssignment("L has a terminal inside the disk of C_1")
    if v not in seq.disk(len(seq)).interior_vertices:
        raise NoValidAssignment(f"vertex {v} is not inside the innermost cycle")
    if count > bound:
        raise TooManyBridges(f"{count} bridges exceed the bound {bound}")
    pieces = [(k, x, y) for k, x, y in components_inside(L, outer)
              if any(w in outer.interior_vertices for w in L.paths[k][x:y + 1])]
    # each option replaces the closed piece path[x-1 .. y+1], which starts and ends on C_1
    options = []
    for k, x, y in pieces:
        closed = L.paths[k][x - 1:y + 2]
        opts: List[Tuple[Optional[int], List[int]]] = []
        if v not in closed:
            opts.append((None, list(closed)))
        for j in range(2, len(seq) + 1):
            for forward in (True, False):
                new = _shortcut(closed, seq.cycle(j), forward)
                if new is None or v in new or len(set(new)) != len(new):
                    continue
                if all(new != old for _, old in opts):
                    opts.append((j, new))
        options.append(opts)
    allowed_edges = L.edges | seq.union_edges
    nodes = 0
    chosen: List[Tuple[Optional[int], List[int]]] = []

    def assemble() -> List[List[int]]:
        paths = [list(p) for p in L.paths]
        for (k, x, y), (_, new) in sorted(zip(pieces, chosen), key=lambda t: t[0], reverse=True):
            paths[k] = paths[k][:x - 1] + new + paths[k][y + 2:]
        return paths

    def consistent() -> bool:
        used_cycles = [j for j, _ in chosen if j is not None]
        if len(used_cycles) != len(set(used_cycles)):
            return False
        seen: Dict[int, int] = {}
        for (k, _, _), (_, new) in zip(pieces, chosen):
            for w in new[1:-1]:
                if w in seen:
                    return False
                seen[w] = k
        return True

    def valid(paths: List[List[int]]) -> Optional[Linkage]:
        cand = Linkage(g, paths, check=False)
        if cand.problem() or v in cand.vertices:
            return None
        if not cand.edges <= allowed_edges or not is_r_scattered(cand, r):
            return None
        return cand

    def dfs(n: int) -> Optional[Linkage]:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise NoValidAssignment(f"no valid assignment within {budget} search nodes")
        if n == len(pieces):
            return valid(assemble())
        for opt in options[n]:
            chosen.append(opt)
            if consistent():
                got = dfs(n + 1)
                if got is not None:
                    return got
            chosen.pop()
        return None

    found = dfs(0)
    if found is None:
        raise NoValidAssignment("no assignment of components to cycles yields a valid linkage")
    assignment = {n: j for n, (j, _) in enumerate(chosen)}
    return RerouteResult(found, assignment, count, bound, nodes)
