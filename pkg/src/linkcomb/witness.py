"""Treewidth witnesses and cae-minimal linkages.

``treewidth_exact`` runs safe reductions followed by a level-by-level subset
dynamic program over elimination orderings.  Brambles are checked directly
and their order is computed by an exact hitting-set search.  The minimal
linkage search is a depth-first branch and bound with iterative deepening on
the number of linkage edges that leave the background subgraph.
"""
from __future__ import annotations

import os
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_fill_in

from .decomp import MOUNTAIN, MountainValley, mountains_valleys
from .embed import EMPTY, PlaneGraph, Region, bfs_distances
from .errors import (
    DegreeViolation,
    MalformedInput,
    PreconditionViolated,
    SearchBudgetExceeded,
    TooLarge,
)
from .linkage import Linkage
from .structures import CycleSequence, orient_ccw

DEFAULT_CAP = 20
DEFAULT_BUDGET = 10 ** 6

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


def default_budget() -> int:
    value = os.environ.get("LINKCOMB_BUDGET")
    return int(value) if value else DEFAULT_BUDGET


# graph plumbing -------------------------------------------------------------

def _adjacency(graph) -> Dict[Hashable, Set[Hashable]]:
    if isinstance(graph, nx.Graph):
        return {v: set(graph.neighbors(v)) - {v} for v in graph.nodes}
    if isinstance(graph, PlaneGraph):
        return {v: set(ns) for v, ns in graph.adjacency.items()}
    return {v: set(ns) - {v} for v, ns in graph.items()}


def subgraph_from_edges(g: PlaneGraph, edges: Iterable[int], vertices: Iterable[int] = ()) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(vertices)
    for e in edges:
        h.add_edge(*g.edges[e])
    return h


def union_graph(g: PlaneGraph, linkage: Linkage, background: Iterable[int]) -> nx.Graph:
    """``L ∪ B`` as a networkx graph, background given by edge indices."""
    return subgraph_from_edges(g, set(linkage.edges) | set(background), linkage.vertices)


# treewidth -----------------------------------------------------------------

def elimination_width(adj: Dict[Hashable, Set[Hashable]], order: Sequence[Hashable]) -> int:
    """Width of the elimination ordering ``order`` (max neighbourhood size at elimination)."""
    work = {v: set(ns) for v, ns in adj.items()}
    width = 0
    for v in order:
        ns = work.pop(v)
        width = max(width, len(ns))
        for a in ns:
            work[a].discard(v)
            work[a] |= ns - {a}
    return width


def _mmd_plus(adj: Dict[Hashable, Set[Hashable]]) -> int:
    """Minor-min-width lower bound: contract a min-degree vertex into its min-degree neighbour."""
    work = {v: set(ns) for v, ns in adj.items()}
    best = 0
    while len(work) > 1:
        v = min(work, key=lambda x: (len(work[x]), str(x)))
        best = max(best, len(work[v]))
        ns = work.pop(v)
        if not ns:
            continue
        u = min(ns, key=lambda x: (len(work[x]), str(x)))
        for a in ns:
            work[a].discard(v)
        for a in ns - {u}:
            work[a].add(u)
            work[u].add(a)
        work[u].discard(u)
    return best


def treewidth_upper(adj: Dict[Hashable, Set[Hashable]]) -> int:
    if not adj:
        return -1
    h = nx.Graph()
    h.add_nodes_from(adj)
    for v, ns in adj.items():
        for u in ns:
            h.add_edge(v, u)
    width, _ = treewidth_min_fill_in(h)
    return width


def _is_forest(adj: Dict[Hashable, Set[Hashable]]) -> bool:
    edges = sum(len(ns) for ns in adj.values()) // 2
    seen: Set[Hashable] = set()
    comps = 0
    for s in adj:
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return edges == len(adj) - comps


def reduce_graph(adj: Dict[Hashable, Set[Hashable]]) -> Tuple[Dict[Hashable, Set[Hashable]], int]:
    """Apply safe treewidth reductions; returns the kernel and a lower bound ``low``.

    ``tw(G) = max(low, tw(kernel))`` holds for the returned pair.
    """
    work = {v: set(ns) for v, ns in adj.items()}
    low = 0 if work else -1
    if any(work.values()):
        low = 1
    if not _is_forest(work):
        low = max(low, 2)
    else:
        return {}, low

    def eliminate(v):
        ns = work.pop(v)
        for a in ns:
            work[a].discard(v)
            work[a] |= ns - {a}

    changed = True
    while changed:
        changed = False
        for v in sorted(work, key=str):
            if v not in work:
                continue
            ns = work[v]
            deg = len(ns)
            if deg <= 1 or (deg == 2 and low >= 2):
                eliminate(v)
                changed = True
                continue
            if all(b in work[a] for a in ns for b in ns if a != b):
                low = max(low, deg)
                eliminate(v)
                changed = True
                continue
            if deg <= low:
                for w in ns:
                    rest = ns - {w}
                    if all(b in work[a] for a in rest for b in rest if a != b):
                        eliminate(v)
                        changed = True
                        break
        if not changed and work:
            lb = _mmd_plus(work)
            if lb > low:
                low = lb
                changed = True
    return work, low


def _dp_decide(nbr: List[int], n: int, k: int, budget: List[int]) -> bool:
    """Is there an elimination ordering of width at most ``k``?  Bitmask level DP."""
    full = (1 << n) - 1
    if n <= k + 1:
        return True
    level = {0}
    target = n - k - 1
    for _ in range(target):
        nxt = set()
        for s in level:
            budget[0] -= 1
            if budget[0] < 0:
                raise SearchBudgetExceeded("treewidth DP exceeded its state budget")
            rest = full & ~s
            avail = rest
            while avail:
                low_bit = avail & -avail
                avail ^= low_bit
                ns = s | low_bit
                if ns in nxt:
                    continue
                # component of v inside s + v, then its boundary outside
                comp = low_bit
                frontier = low_bit
                while frontier:
                    fb = frontier & -frontier
                    frontier ^= fb
                    grow = nbr[fb.bit_length() - 1] & s & ~comp
                    comp |= grow
                    frontier |= grow
                boundary = 0
                c = comp
                while c:
                    cb = c & -c
                    c ^= cb
                    boundary |= nbr[cb.bit_length() - 1]
                boundary &= rest & ~low_bit
                if bin(boundary).count("1") <= k:
                    nxt.add(ns)
        if not nxt:
            return False
        level = nxt
    return True


def treewidth_exact(graph, cap: int = DEFAULT_CAP, budget: Optional[int] = None) -> int:
    """Exact treewidth; the cap applies to the kernel left after safe reductions."""
    adj = _adjacency(graph)
    kernel, low = reduce_graph(adj)
    if not kernel:
        return max(low, -1) if adj else -1
    if len(kernel) > cap:
        raise TooLarge(f"kernel has {len(kernel)} vertices, cap is {cap}")
    nodes = sorted(kernel, key=str)
    index = {v: i for i, v in enumerate(nodes)}
    nbr = [0] * len(nodes)
    for v, ns in kernel.items():
        for u in ns:
            nbr[index[v]] |= 1 << index[u]
    upper = treewidth_upper(kernel)
    k = max(low, _mmd_plus(kernel))
    counter = [budget if budget is not None else 50 * default_budget()]
    while k < upper:
        if _dp_decide(nbr, len(nodes), k, counter):
            return max(low, k)
        k += 1
    return max(low, upper)


def treewidth_bounds(graph) -> Tuple[int, int]:
    """Lower bound from reductions plus contraction degeneracy, upper bound from min-fill."""
    adj = _adjacency(graph)
    kernel, low = reduce_graph(adj)
    if not kernel:
        return low, low
    return max(low, _mmd_plus(kernel)), max(low, treewidth_upper(kernel))


def treewidth(graph, cap: int = DEFAULT_CAP) -> Tuple[int, int, bool]:
    """``(lower, upper, exact)``: exact when the kernel fits the DP cap."""
    try:
        tw = treewidth_exact(graph, cap)
        return tw, tw, True
    except (TooLarge, SearchBudgetExceeded):
        lo, hi = treewidth_bounds(graph)
        return lo, hi, lo == hi


# brambles ------------------------------------------------------------------

@dataclass
class BrambleWitness:
    elements: List[FrozenSet[int]]
    order: int
    hitting_set: FrozenSet[int]
    labels: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"elements": [sorted(e) for e in self.elements], "labels": list(self.labels),
                "order": self.order, "hitting_set": sorted(self.hitting_set)}


def _connected(adj, vertices: FrozenSet) -> bool:
    if not vertices:
        return False
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj.get(x, ()):
            if y in vertices and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vertices)


def _touch(adj, a: FrozenSet, b: FrozenSet) -> bool:
    if a & b:
        return True
    return any(y in b for x in a for y in adj.get(x, ()))


def check_bramble(graph, elements: Sequence[FrozenSet]) -> Optional[str]:
    """None when ``elements`` is a bramble of ``graph``, else a reason."""
    adj = _adjacency(graph)
    for n, x in enumerate(elements):
        if not _connected(adj, x):
            return f"element {n} is empty or disconnected"
    for a in range(len(elements)):
        for b in range(a + 1, len(elements)):
            if not _touch(adj, elements[a], elements[b]):
                return f"elements {a} and {b} do not touch"
    return None


def min_hitting_set(elements: Sequence[FrozenSet], budget: Optional[int] = None) -> FrozenSet:
    """Exact minimum hitting set by branching on a smallest unhit element."""
    if not elements:
        return frozenset()
    sig: Dict[Hashable, FrozenSet[int]] = {}
    for n, x in enumerate(elements):
        for v in x:
            sig[v] = sig.get(v, frozenset()) | {n}
    # drop vertices dominated by another vertex hitting a superset of elements
    reps: Dict[FrozenSet[int], Hashable] = {}
    for v in sorted(sig, key=str):
        reps.setdefault(sig[v], v)
    cands = []
    for s, v in reps.items():
        if not any(s < t for t in reps):
            cands.append((v, s))
    cover = {v: s for v, s in cands}
    m = len(elements)
    best: List = [None]
    counter = [budget if budget is not None else default_budget()]

    def packing_bound(unhit: FrozenSet[int]) -> int:
        # pairwise disjoint unhit elements each need their own vertex
        count, used = 0, set()
        for n in sorted(unhit, key=lambda t: len(elements[t])):
            if not (elements[n] & used):
                used |= elements[n]
                count += 1
        return count

    def rec(chosen: List, unhit: FrozenSet[int]):
        counter[0] -= 1
        if counter[0] < 0:
            raise SearchBudgetExceeded("hitting-set search exceeded its budget")
        if not unhit:
            if best[0] is None or len(chosen) < len(best[0]):
                best[0] = list(chosen)
            return
        if best[0] is not None and len(chosen) + packing_bound(unhit) >= len(best[0]):
            return
        pick = min(unhit, key=lambda t: (len([v for v in cover if t in cover[v]]), t))
        options = sorted((v for v in cover if pick in cover[v]), key=lambda v: (-len(cover[v] & unhit), str(v)))
        for v in options:
            chosen.append(v)
            rec(chosen, unhit - cover[v])
            chosen.pop()

    rec([], frozenset(range(m)))
    return frozenset(best[0])


def bramble_witness(graph, elements: Sequence[FrozenSet], labels: Sequence[str] = ()) -> BrambleWitness:
    problem = check_bramble(graph, elements)
    if problem:
        raise MalformedInput(f"not a bramble: {problem}")
    hit = min_hitting_set(elements)
    return BrambleWitness(list(elements), len(hit), hit, list(labels))


def stream_bramble(B: Sequence[Sequence[int]], Z: Sequence[Sequence[int]], graph=None) -> BrambleWitness:
    """Bramble on the union of truncated cycles ``B`` and truncated streams ``Z``.

    ``B[i]`` runs from its meeting point with ``Z[0]`` to its meeting point
    with ``Z[-1]``; ``Z[j]`` runs from ``B[0]`` to ``B[-1]``.  When ``graph``
    is omitted the union of the given paths is used.
    """
    r = len(B)
    if r != len(Z):
        raise MalformedInput("need as many truncated cycles as truncated streams")
    if r < 2:
        raise MalformedInput("the construction needs at least two cycles and two streams")
    if graph is None:
        graph = nx.Graph()
        for path in list(B) + list(Z):
            nx.add_path(graph, path)
            graph.add_nodes_from(path)
    Bs = [frozenset(b) for b in B]
    Zs = [frozenset(z) for z in Z]
    frame = Bs[0] | Zs[0] | Bs[-1] | Zs[-1]
    elements, labels = [], []
    for i in range(1, r - 1):
        for j in range(1, r - 1):
            elements.append((Bs[i] | Zs[j]) - frame)
            labels.append(f"X({i + 1},{j + 1})")
    # the three frame elements split the frame cycle into three disjoint arcs
    elements.append(Zs[0] - Bs[0])
    labels.append("X1")
    elements.append(Bs[0])
    labels.append("X2")
    elements.append((Zs[-1] | Bs[-1]) - Bs[0] - Zs[0])
    labels.append("X3")
    return bramble_witness(graph, elements, labels)


def bramble_inputs(seq: CycleSequence, streams_in_order: Sequence, r: Optional[int] = None):
    """Truncated cycles and streams for the first ``r`` cycles and streams.

    ``streams_in_order`` is a D-ordering; each cycle is cut to its arc from the
    first stream to the ``r``-th stream that passes the streams in between.
    """
    g = seq.graph
    r = min(len(seq), len(streams_in_order)) if r is None else r
    cyc_sets = [set(seq.cycles[i]) for i in range(r)]
    Zp = []
    for z in streams_in_order[:r]:
        path = z.path
        cut = next(x for x, v in enumerate(path) if v in cyc_sets[r - 1])
        Zp.append(tuple(path[:cut + 1]))
    Bs = []
    for i in range(r):
        cyc = orient_ccw(g, seq.cycles[i])
        n = len(cyc)
        hits = [[x for x, v in enumerate(cyc) if v in set(zp)] for zp in Zp]
        start = hits[0][0]
        # walk counter-clockwise from the first stream until reaching the r-th
        x = start
        arc = [cyc[x]]
        while x not in hits[-1]:
            x = (x + 1) % n
            arc.append(cyc[x])
            if len(arc) > n:
                raise MalformedInput("could not trace a cycle arc between the streams")
        # trim the arc so it starts at the last meeting point with the first stream
        first = set(Zp[0])
        k = max(y for y, v in enumerate(arc) if v in first)
        Bs.append(tuple(arc[k:]))
    return Bs, Zp


# LB-pairs and cae ---------------------------------------------------------------

@dataclass
class LBPair:
    L: Linkage
    B: FrozenSet[int]

    def __init__(self, L: Linkage, B: Iterable[int]):
        self.L = L
        self.B = frozenset(B)


def check_degree(g: PlaneGraph, edges: Iterable[int]) -> None:
    deg: Dict[int, int] = {}
    for e in edges:
        for v in g.edges[e]:
            deg[v] = deg.get(v, 0) + 1
            if deg[v] > 2:
                raise DegreeViolation(f"vertex {v} has degree above 2 in the background")


def cae(pair: LBPair) -> int:
    check_degree(pair.L.host, pair.B)
    return len(pair.L.edges - pair.B)


def background_edges(seq: CycleSequence, D: Region = EMPTY) -> FrozenSet[int]:
    """Edges of the union of the cycles with the open region ``D`` removed."""
    g = seq.graph
    out = set()
    for e in seq.union_edges:
        a, b = g.edges[e]
        if e in D.edges or a in D.vertices or b in D.vertices:
            continue
        out.add(e)
    return frozenset(out)


# minimal linkage search ------------------------------------------------------------

@dataclass
class MinimalLinkageResult:
    linkage: Linkage
    cae_value: int
    optimal: bool
    nodes: int = 0


class _Search:
    """Depth-first search over paths in pair order with admissible cost pruning.

    Every pending pair keeps one cheapest witness route; when the current path
    blocks a witness vertex, only that pair's bound is recomputed.
    """

    def __init__(self, g: PlaneGraph, allowed_edges: FrozenSet[int], background: FrozenSet[int],
                 pairs: List[Tuple[int, int]], r: int, budget: int):
        self.g = g
        self.background = background
        self.pairs = pairs
        self.r = r
        self.budget = budget
        self.nodes = 0
        adj: Dict[int, List[Tuple[int, int]]] = {}
        for e in sorted(allowed_edges):
            a, b = g.edges[e]
            w = 0 if e in background else 1
            adj.setdefault(a, []).append((b, w))
            adj.setdefault(b, []).append((a, w))
        self.adj = {v: sorted(ns) for v, ns in adj.items()}
        self.terminals = {v for pr in pairs for v in pr}
        hosts = set(self.adj) | self.terminals
        self.near = {v: frozenset(x for x in bfs_distances(g, [v], limit=r) if x in hosts) for v in hosts}

    def _dist_to(self, target: int, blocked) -> Dict[int, int]:
        dist, _ = self._bfs(target, blocked)
        return dist

    def _bfs(self, target: int, blocked):
        dist = {target: 0}
        pred = {target: None}
        dq = deque([target])
        while dq:
            x = dq.popleft()
            dx = dist[x]
            for y, w in self.adj.get(x, ()):
                if y in blocked:
                    continue
                nd = dx + w
                if nd < dist.get(y, 1 << 30):
                    dist[y] = nd
                    pred[y] = x
                    if w == 0:
                        dq.appendleft(y)
                    else:
                        dq.append(y)
        return dist, pred

    def _witness(self, j: int, blocked):
        """(cost, route vertices) of a cheapest route for pair ``j``, or (None, ())."""
        s, t = self.pairs[j]
        if s in blocked or t in blocked:
            return None, frozenset()
        dist, pred = self._bfs(t, blocked)
        if s not in dist:
            return None, frozenset()
        route = []
        x = s
        while x is not None:
            route.append(x)
            x = pred[x]
        return dist[s], frozenset(route)

    def run(self, bound: int):
        """Lexicographically first linkage of cost at most ``bound``, or None."""
        return self._paths(0, [], set(), bound)

    def _future_bound(self, k: int, blocked) -> Optional[int]:
        total = 0
        for j in range(k, len(self.pairs)):
            d, _ = self._witness(j, blocked)
            if d is None:
                return None
            total += d
        return total

    def _paths(self, k: int, done: List[Tuple[int, ...]], blocked: Set[int], bound: int):
        if k == len(self.pairs):
            return list(done)
        s, t = self.pairs[k]
        if s in blocked or t in blocked:
            return None
        forbid = set(blocked)
        for x in self.terminals - {s, t}:
            forbid |= self.near[x]
        if s in forbid or t in forbid:
            return None
        dist = self._dist_to(t, forbid)
        if s not in dist or dist[s] > bound:
            return None
        future = list(range(k + 1, len(self.pairs)))
        # blocked vertices for the pending pairs: earlier paths plus the current prefix
        count: Dict[int, int] = {}
        blocked_now = set(blocked)
        costs: Dict[int, int] = {}
        routes: Dict[int, FrozenSet[int]] = {}
        for j in future:
            c, route = self._witness(j, blocked_now)
            if c is None:
                return None
            costs[j], routes[j] = c, route
        if dist[s] + sum(costs.values()) > bound:
            return None
        path = [s]
        on_path = {s}
        undo: List[Tuple[int, int, FrozenSet[int]]] = []

        def push(v: int) -> bool:
            """Block ``v``'s neighbourhood for the pending pairs; False if one becomes infeasible."""
            fresh = []
            for x in self.near[v]:
                n = count.get(x, 0)
                count[x] = n + 1
                if n == 0 and x not in blocked:
                    blocked_now.add(x)
                    fresh.append(x)
            ok = True
            if fresh:
                for j in future:
                    if ok and not routes[j].isdisjoint(fresh):
                        undo.append((j, costs[j], routes[j]))
                        c, route = self._witness(j, blocked_now)
                        if c is None:
                            ok = False
                            c = 1 << 20
                        costs[j], routes[j] = c, route
            return ok

        def pop(v: int, mark: int) -> None:
            while len(undo) > mark:
                j, c, route = undo.pop()
                costs[j], routes[j] = c, route
            for x in self.near[v]:
                n = count[x] - 1
                count[x] = n
                if n == 0 and x not in blocked:
                    blocked_now.discard(x)

        def dfs(v: int, spent: int):
            self.nodes += 1
            if self.nodes > self.budget:
                raise SearchBudgetExceeded("minimal linkage search exceeded its node budget")
            rest = sum(costs.values())
            if v == t:
                if spent + rest > bound:
                    return None
                done.append(tuple(path))
                found = self._paths(k + 1, done, set(blocked_now), bound - spent)
                if found is not None:
                    return found
                done.pop()
                return None
            for y, w in self.adj.get(v, ()):
                if y in on_path or y in forbid:
                    continue
                dy = dist.get(y)
                if dy is None or spent + w + dy + rest > bound:
                    continue
                mark = len(undo)
                path.append(y)
                on_path.add(y)
                if push(y) and spent + w + dy + sum(costs.values()) <= bound:
                    got = dfs(y, spent + w)
                    if got is not None:
                        return got
                pop(y, mark)
                path.pop()
                on_path.discard(y)
            return None

        mark0 = len(undo)
        if not push(s) or dist[s] + sum(costs.values()) > bound:
            return None
        found = dfs(s, 0)
        pop(s, mark0)
        return found


def ordered_pairs(l: Linkage) -> List[Tuple[int, int]]:
    pairs = [tuple(sorted((p[0], p[-1]))) for p in l.paths]
    return sorted(pairs)


def search_linkage(g: PlaneGraph, pairs: List[Tuple[int, int]], allowed_edges: FrozenSet[int],
                   background: FrozenSet[int], r: int, max_cost: int, min_cost: int = 0,
                   budget: Optional[int] = None):
    """Iterative deepening search; returns ``(paths, cost, nodes)`` or ``(None, None, nodes)``."""
    searcher = _Search(g, allowed_edges, background, pairs, r,
                       budget if budget is not None else default_budget())
    start = searcher._future_bound(0, set())
    if start is None:
        return None, None, searcher.nodes
    for bound in range(max(min_cost, start), max_cost + 1):
        found = searcher.run(bound)
        if found is not None:
            return found, bound, searcher.nodes
    return None, None, searcher.nodes


def minimal_linkage(g: PlaneGraph, seq: CycleSequence, D: Region, L: Linkage, r: int,
                    budget: Optional[int] = None) -> MinimalLinkageResult:
    """A cae-minimal r-scattered linkage equivalent to ``L`` inside ``L ∪ (⋃C ∖ D)``."""
    background = background_edges(seq, D)
    allowed = frozenset(L.edges) | background
    current = len(L.edges - background)
    pairs = ordered_pairs(L)
    try:
        found, cost, nodes = search_linkage(g, pairs, allowed, background, r, current, 0, budget)
    except SearchBudgetExceeded:
        return MinimalLinkageResult(L.canonical(), current, False, budget or default_budget())
    if found is None:
        # L itself is always feasible, so this only happens if L is not r-scattered
        return MinimalLinkageResult(L.canonical(), current, False, nodes)
    return MinimalLinkageResult(Linkage(g, found), cost, True, nodes)


def improve_once(pair: LBPair, m: int, r: int, budget: Optional[int] = None,
                 cap: int = DEFAULT_CAP) -> Optional[Linkage]:
    """An equivalent linkage in ``L ∪ B`` with strictly smaller cae, or None.

    Nothing is searched when the treewidth of ``L ∪ B`` is known to be at most ``m``.
    """
    L = pair.L
    g = L.host
    current = cae(pair)
    if current == 0:
        return None
    lo, hi, _ = treewidth(union_graph(g, L, pair.B), cap)
    if hi <= m:
        return None
    allowed = frozenset(L.edges) | pair.B
    found, cost, _ = search_linkage(g, ordered_pairs(L), allowed, pair.B, r, current - 1, 0, budget)
    if found is None:
        return None
    return Linkage(g, found)


# mountain flattening --------------------------------------------------------------

def flatten_level(mv: MountainValley) -> int:
    h = mv.dehe
    return mv.base_index + (h - 2) if mv.kind == MOUNTAIN else mv.base_index - (h - 2)


def flatten_blockers(mv: MountainValley, l: Linkage, seq: CycleSequence, r: int,
                     D: Region = EMPTY) -> List[MountainValley]:
    """Same-base excursions inside ``disk(mv)`` reaching within ``r`` levels of the flattening cycle."""
    threshold = mv.dehe - 1 - r
    out = []
    for other in mountains_valleys(l, seq, D, kinds=(mv.kind,)):
        if other.base_index != mv.base_index:
            continue
        if (other.path_index, other.span) == (mv.path_index, mv.span):
            continue
        if other.dehe < threshold:
            continue
        g = l.host
        core_edges = {g.edge_index(a, b) for a, b in zip(other.core, other.core[1:])}
        if set(other.core) <= mv.disk.vertices and core_edges <= mv.disk.edges:
            out.append(other)
    return out


def flatten_mountain(l: Linkage, seq: CycleSequence, mv: MountainValley, r: int,
                     D: Region = EMPTY, check: bool = True) -> Linkage:
    """Push ``mv`` down to the cycle just below its top, along arcs inside its disk.

    With ``check`` the rewrite is refused when an inner excursion of the same
    base comes within ``r`` levels of the target cycle.
    """
    if mv.dehe < 2:
        raise PreconditionViolated("flattening needs an excursion of height at least 2")
    if check:
        blockers = flatten_blockers(mv, l, seq, r, D)
        if blockers:
            raise PreconditionViolated(
                f"{len(blockers)} inner excursion(s) block the flattening level")
    g = l.host
    level = flatten_level(mv)
    cyc = orient_ccw(g, seq.cycle(level))
    pos = {v: n for n, v in enumerate(cyc)}
    beyond = seq.up_region(level) if mv.kind == MOUNTAIN else seq.down_region(level)
    path = list(l.paths[mv.path_index])
    a0, b1 = mv.span
    sub = path[a0:b1 + 1]
    out = []
    x = 0
    while x < len(sub):
        v = sub[x]
        leaving = (x + 1 < len(sub) and v in pos and
                   (sub[x + 1] in beyond.vertices or g.edge_index(v, sub[x + 1]) in beyond.edges))
        if not leaving:
            out.append(v)
            x += 1
            continue
        y = x + 1
        while sub[y] not in pos:
            y += 1
        w = sub[y]
        arc = _arc_inside(g, cyc, pos[v], pos[w], mv.disk)
        out.extend(arc[:-1])
        x = y
    new_path = path[:a0] + out + path[b1 + 1:]
    paths = list(l.paths)
    paths[mv.path_index] = tuple(new_path)
    return Linkage(g, paths, check=check)


def _arc_inside(g: PlaneGraph, cyc: Sequence[int], i: int, j: int, disk: Region) -> List[int]:
    n = len(cyc)
    for step in (1, -1):
        arc = [cyc[i]]
        k = i
        while k != j:
            k = (k + step) % n
            arc.append(cyc[k])
        edges = {g.edge_index(a, b) for a, b in zip(arc, arc[1:])}
        if set(arc) <= disk.vertices and edges <= disk.edges:
            return arc
    raise PreconditionViolated("no arc of the flattening cycle lies inside the excursion disk")
