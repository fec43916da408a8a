"""Seeded instance generators.

``planted_instance`` builds an annular grid with terminal pads and plants a
pad-to-pad linkage that is r-scattered and avoids the closed annulus with its
terminals.  Paths live in private sectors of rails separated by ``r`` spare
rails and wander inside their sector with level changes, sideways runs and
small bumps, so the planted linkages carry rivers, mountains and valleys.
"""
from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .errors import BadParams, LinkcombError
from .io import Instance
from .linkage import Linkage, is_r_scattered
from .structures import NESTED, CycleSequence, build_annular_grid

CROSS, OUTER, INNER = "cross", "outer", "inner"

Cell = Tuple[int, int]


def _line(a: Cell, b: Cell) -> List[Cell]:
    (i1, j1), (i2, j2) = a, b
    if i1 == i2:
        step = 1 if j2 > j1 else -1
        return [(i1, j) for j in range(j1 + step, j2 + step, step)]
    step = 1 if i2 > i1 else -1
    return [(i, j1) for i in range(i1 + step, i2 + step, step)]


def _walk(points: Sequence[Cell]) -> List[Cell]:
    cells = [points[0]]
    for a, b in zip(points, points[1:]):
        if a != b:
            cells.extend(_line(a, b))
    return cells


def _sideways(rng: random.Random, level: int, c0: int, c1: int, p: int, bumps: bool) -> List[Cell]:
    """Waypoints of a sideways run at ``level`` from column ``c0`` to ``c1`` with optional bumps."""
    pts = [(level, c0)]
    step = 1 if c1 > c0 else -1
    c = c0
    rested = True
    while c != c1:
        room = abs(c1 - c)
        if bumps and rested and room >= 1 and rng.random() < 0.35:
            up_ok, down_ok = level <= p - 1, level >= 2
            choices = [d for d, ok in ((1, up_ok), (-1, down_ok)) if ok]
            if choices:
                direction = rng.choice(choices)
                limit = (p - level) if direction == 1 else (level - 1)
                height = rng.randint(1, min(3, limit))
                span = rng.randint(1, room)
                top = level + direction * height
                pts += [(level, c), (top, c), (top, c + step * span), (level, c + step * span)]
                c += step * span
                rested = False
                continue
        rested = True
        c += step
        pts.append((level, c))
    return pts


def _cross_path(rng: random.Random, p: int, width: int, bumps: bool) -> List[Cell]:
    c = rng.randrange(width)
    pts: List[Cell] = [(1, c)]
    t = 1
    while t < p:
        t = min(p, t + rng.randint(1, max(1, p // 3)))
        pts.append((t, c))
        if width > 1 and rng.random() < 0.6:
            nc = rng.choice([x for x in range(width) if x != c])
            pts += _sideways(rng, t, c, nc, p, bumps and 1 < t < p)[1:]
            c = nc
    return _walk(pts)


def _dip_path(rng: random.Random, p: int, width: int, bumps: bool) -> List[Cell]:
    a, b = sorted(rng.sample(range(width), 2))
    if rng.random() < 0.5:
        a, b = b, a
    depth = rng.randint(1, p - 1)
    pts = [(p, a), (depth, a)]
    pts += _sideways(rng, depth, a, b, p, bumps and depth < p - 1)[1:]
    pts.append((p, b))
    return _walk(pts)


def _flip(cells: List[Cell], p: int) -> List[Cell]:
    return [(p + 1 - i, j) for i, j in cells]


def plant_paths(rng: random.Random, p: int, q: int, k: int, r: int,
                kinds: Optional[Sequence[str]] = None, bumps: bool = True):
    """Sector layout and cell paths for ``k`` planted paths; raises BadParams if they cannot fit."""
    if kinds is None:
        kinds = [rng.choice([CROSS, CROSS, OUTER, INNER]) for _ in range(k)]
    kinds = list(kinds)
    need = [1 if kind == CROSS else 2 for kind in kinds]
    spare = q - sum(need) - r * len(kinds)
    if spare < 0:
        raise BadParams(f"{k} paths with r={r} do not fit on {q} rails")
    widths = list(need)
    for _ in range(spare):
        widths[rng.randrange(len(widths))] += 1
    gaps = [r] * len(kinds)
    offset = rng.randrange(q)
    sectors = []
    pos = offset
    for w, gp in zip(widths, gaps):
        sectors.append([(pos + x) % q + 1 for x in range(w)])
        pos += w + gp
    plans = []
    for kind, sector in zip(kinds, sectors):
        w = len(sector)
        if kind == CROSS:
            cells = _cross_path(rng, p, w, bumps)
            if rng.random() < 0.5:
                cells = list(reversed(cells))
        elif kind == OUTER:
            cells = _dip_path(rng, p, w, bumps)
        else:
            cells = _flip(_dip_path(rng, p, w, bumps), p)
        plans.append((kind, [(i, sector[c]) for i, c in cells]))
    return plans


def _end_sides(kind: str, cells: List[Cell]) -> Tuple[str, str]:
    if kind == OUTER:
        return "out", "out"
    if kind == INNER:
        return "in", "in"
    return ("in", "out") if cells[0][0] == 1 else ("out", "in")


def planted_instance(p: int, q: int, k: int, r: int, seed: int, chords: float = 0.0,
                     s: int = 1, I: Optional[Sequence[int]] = None, m: Optional[int] = None,
                     kinds: Optional[Sequence[str]] = None, attempts: int = 200,
                     bumps: bool = True) -> Instance:
    """Deterministic planted instance; raises BadParams when no layout is found."""
    if p < 3 or p % 2 == 0:
        raise BadParams(f"p must be odd and at least 3, got {p}")
    if q < 3 or k < 1 or r < 0:
        raise BadParams("need q >= 3, k >= 1 and r >= 0")
    rng = random.Random(seed)
    last_error = None
    for attempt in range(attempts):
        try:
            plans = plant_paths(rng, p, q, k, r, kinds, bumps)
        except BadParams:
            if kinds is not None:
                raise
            continue
        pads = []
        ok = True
        for kind, cells in plans:
            if len(set(cells)) != len(cells):
                ok = False
                break
            sa, sb = _end_sides(kind, cells)
            pads += [(sa, cells[0][1]), (sb, cells[-1][1])]
        if not ok or len(set(pads)) != len(pads):
            continue
        layout = build_annular_grid(p, q, chords, seed, pads)
        paths = []
        for kind, cells in plans:
            sa, sb = _end_sides(kind, cells)
            head = list(reversed(layout.pads[(sa, cells[0][1])][1:]))
            tail = list(layout.pads[(sb, cells[-1][1])][1:])
            body = [layout.grid_vertex[c] for c in cells]
            paths.append(head + body + tail)
        try:
            L = Linkage(layout.graph, paths)
        except LinkcombError as exc:
            last_error = exc
            continue
        if not is_r_scattered(L, r):
            continue
        params = {"r": r, "s": s, "I": sorted(I) if I is not None else list(range(1, q + 1)), "m": m}
        meta = {"generator": "planted", "p": p, "q": q, "k": k, "seed": seed, "chords": chords,
                "kinds": [kind for kind, _ in plans], "attempt": attempt}
        return Instance(layout.graph, layout.annulus, L, params, None, meta)
    raise BadParams(f"no planted layout found for p={p} q={q} k={k} r={r} seed={seed}"
                    + (f" ({last_error})" if last_error else ""))


def fewbridges_instance(ell: int, q: int, dives: Sequence[int], r: int, seed: int,
                        attempts: int = 200) -> Instance:
    """Nested cycles around a hub ``v`` with paths that dive into the disk and back.

    The layout has ``ell + 1`` concentric cycles around a hub; the inner ``ell``
    form the nested sequence (outermost first) and the last one is a ring
    outside the disk where paths travel between dives, creating bridges.  Path 0
    passes through the hub on one of its dives.  ``dives[h]`` is the number of
    dives of path ``h``, so the linkage has ``sum(dives) - len(dives)`` bridges.
    """
    if ell < 2 or q < 3 or not dives or min(dives) < 1:
        raise BadParams("need ell >= 2, q >= 3 and at least one dive per path")
    rng = random.Random(seed)
    ring = ell + 1
    k = len(dives)
    for attempt in range(attempts):
        need = [2 * n for n in dives]
        spare = q - sum(need) - r * k
        if spare < 0:
            raise BadParams(f"dives {list(dives)} with r={r} do not fit on {q} rails")
        widths = list(need)
        for _ in range(spare):
            widths[rng.randrange(k)] += 1
        offset = rng.randrange(q)
        pos = offset
        plans = []
        hub_dive = rng.randrange(dives[0])
        for h, (w, n) in enumerate(zip(widths, dives)):
            sector = [(pos + x) % q + 1 for x in range(w)]
            pos += w + r
            cols = sorted(rng.sample(range(w), 2 * n))
            if rng.random() < 0.5:
                cols = list(reversed(cols))
            cells = []
            for t in range(n):
                a, b = sector[cols[2 * t]], sector[cols[2 * t + 1]]
                if h == 0 and t == hub_dive:
                    depth = 1
                else:
                    depth = rng.randint(min(ell - 1, 2 + r), ell - 1)
                if cells:
                    cells += [(ring, j) for j in _ring_walk(cells[-1][1], a, sector)][1:]
                else:
                    cells.append((ring, a))
                cells += [(i, a) for i in range(ring - 1, depth - 1, -1)]
                if depth == 1 and h == 0 and t == hub_dive:
                    cells.append(("hub", 0))
                    cells.append((1, b))
                else:
                    cells += [(depth, j) for j in _ring_walk(a, b, sector)][1:]
                cells += [(i, b) for i in range(depth + 1, ring + 1)]
            plans.append(cells)
        pads = [("out", cells[0][1]) for cells in plans] + [("out", cells[-1][1]) for cells in plans]
        if len(set(pads)) != len(pads):
            continue
        layout = build_annular_grid(ring, q, 0.0, seed, pads, hub=True, require_odd=False)
        paths = []
        for cells in plans:
            body = [layout.hub if c[0] == "hub" else layout.grid_vertex[c] for c in cells]
            head = list(reversed(layout.pads[("out", cells[0][1])][1:]))
            tail = list(layout.pads[("out", cells[-1][1])][1:])
            paths.append(head + body + tail)
        try:
            L = Linkage(layout.graph, paths)
        except LinkcombError:
            continue
        if not is_r_scattered(L, r):
            continue
        nested = CycleSequence(layout.graph, list(reversed(layout.cycles()[:ell])), NESTED)
        params = {"r": r, "v": layout.hub}
        meta = {"generator": "fewbridges", "ell": ell, "q": q, "dives": list(dives), "seed": seed,
                "attempt": attempt}
        return Instance(layout.graph, None, L, params, None, meta, nested)
    raise BadParams(f"no fewbridges layout for ell={ell} q={q} dives={list(dives)} r={r} seed={seed}")


def _ring_walk(a: int, b: int, sector: Sequence[int]) -> List[int]:
    """Rails from ``a`` to ``b`` walking inside ``sector`` (a run of consecutive rails)."""
    x, y = sector.index(a), sector.index(b)
    step = 1 if y >= x else -1
    return [sector[t] for t in range(x, y + step, step)]


def corpus_specs() -> List[dict]:
    """Parameters of the committed fixture corpus, spread over sizes, radii and chord densities."""
    rng = random.Random(20240611)
    specs = []
    small = [(3, 4), (3, 6), (5, 3), (5, 4), (5, 5), (5, 6), (7, 4), (7, 5), (3, 8), (5, 8)]
    for n, (p, q) in enumerate(small * 2):
        k = 1 + n % 2 if q < 6 else 1 + n % 3
        r = 0 if n < 12 else (n % 2)
        specs.append({"kind": "planted", "p": p, "q": q, "k": k, "r": r, "seed": 100 + n,
                      "chords": 0.0 if n % 3 else 0.3})
    while len(specs) < 42:
        p = rng.choice(range(9, 32, 2))
        q = rng.randint(6, 12)
        k = rng.randint(1, 3)
        r = rng.choice([0, 0, 1, 2])
        specs.append({"kind": "planted", "p": p, "q": q, "k": k, "r": r, "seed": 500 + len(specs),
                      "chords": rng.choice([0.0, 0.0, 0.2, 0.5])})
    for n, (ell, q, dives, r) in enumerate([(3, 6, [1], 0), (4, 8, [2], 0), (5, 10, [2, 1], 0),
                                            (5, 12, [1, 1], 1), (4, 8, [3], 0), (6, 8, [1], 0),
                                            (7, 8, [2], 0), (3, 8, [1, 1, 1], 0)]):
        specs.append({"kind": "fewbridges", "ell": ell, "q": q, "dives": dives, "r": r, "seed": 900 + n})
    return specs


def corpus_instance(spec: dict) -> Instance:
    if spec["kind"] == "fewbridges":
        return fewbridges_instance(spec["ell"], spec["q"], spec["dives"], spec["r"], spec["seed"])
    return planted_instance(spec["p"], spec["q"], spec["k"], spec["r"], spec["seed"], spec["chords"])


def corpus_name(spec: dict) -> str:
    if spec["kind"] == "fewbridges":
        return f"nested_l{spec['ell']}_q{spec['q']}_d{''.join(map(str, spec['dives']))}_r{spec['r']}_s{spec['seed']}"
    chord = "c" if spec["chords"] else "n"
    return f"annulus_p{spec['p']}_q{spec['q']}_k{spec['k']}_r{spec['r']}_{chord}_s{spec['seed']}"


def mountain_instance(base: int, height: int, r: int, seed: int = 0,
                      inner_height: Optional[int] = None) -> Instance:
    """A mountain over ``C_base`` of the given height with an optional inner mountain beneath it.

    Path 0 climbs from an inner pad to ``C_base``, runs one edge along it,
    rises to ``C_{base+height-1}``, crosses over and comes back down.  The inner
    mountain (path 1) sits on the same base between the legs, ``r + 1`` rails
    away from them; its top is at least ``r + 1`` levels below the outer top,
    so the linkage is r-scattered.  ``meta["blocking"]`` records whether the
    inner mountain reaches the flattening threshold.
    """
    if height < 2 or base < 1:
        raise BadParams("need height >= 2 and base >= 1")
    gap = r + 1
    if inner_height is not None and not 2 <= inner_height <= height - gap:
        raise BadParams("inner mountain must have height in [2, height - r - 1]")
    rng = random.Random(seed)
    top = base + height - 1
    p = top + 1 if (top + 1) % 2 == 1 else top + 2
    width = rng.randint(1, 3)
    inner_span = (2 * gap + 3 + width) if inner_height is not None else 0
    c_off = max(2, inner_span) + rng.randint(0, 2)
    q = c_off + 2 + gap + rng.randint(0, 2)
    q = max(q, 5)
    shift = rng.randrange(q)

    def col(x: int) -> int:
        return (x + shift) % q + 1

    a, c = 0, c_off

    def climb(x0: int, x1: int, x2: int, x3: int, h: int) -> List[Cell]:
        cells = [(i, col(x0)) for i in range(1, base + 1)]
        cells += [(base, col(x1))]
        cells += [(i, col(x1)) for i in range(base + 1, base + h)]
        cells += [(base + h - 1, col(x)) for x in range(x1 + 1, x2 + 1)]
        cells += [(i, col(x2)) for i in range(base + h - 2, base - 1, -1)]
        cells += [(base, col(x3))]
        cells += [(i, col(x3)) for i in range(base - 1, 0, -1)]
        return cells

    plans = [climb(a, a + 1, c, c + 1, height)]
    if inner_height is not None:
        i0 = a + 1 + gap
        i3 = c - gap
        plans.append(climb(i0, i0 + 1, i3 - 1, i3, inner_height))
    pads = [("in", cells[0][1]) for cells in plans] + [("in", cells[-1][1]) for cells in plans]
    layout = build_annular_grid(p, q, 0.0, seed, pads)
    paths = []
    for cells in plans:
        head = list(reversed(layout.pads[("in", cells[0][1])][1:]))
        tail = list(layout.pads[("in", cells[-1][1])][1:])
        paths.append(head + [layout.grid_vertex[x] for x in cells] + tail)
    L = Linkage(layout.graph, paths)
    if not is_r_scattered(L, r):
        raise BadParams("constructed mountain instance is not r-scattered")
    blocking = inner_height is not None and inner_height >= height - 1 - r
    meta = {"generator": "mountain", "base": base, "height": height, "inner_height": inner_height,
            "seed": seed, "blocking": blocking}
    return Instance(layout.graph, layout.annulus, L, {"r": r}, None, meta)
