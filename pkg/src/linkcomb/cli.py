"""Command-line front end.

Every command prints a JSON report with ``command``, ``status`` and a list of
``findings``; ``status`` is ``ok`` exactly when every finding passed.  Exit
codes: 0 ok, 1 violated, 2 infeasible or budget, 3 usage or parse error.
"""
from __future__ import annotations

import argparse
import glob
import math
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from .errors import (BadParams, BadSpec, Infeasible, LinkcombError, ParseError, PipelineInfeasible,
                     SearchBudgetExceeded, TooLarge, TooSmall)
from .io import Instance, dumps, load, save, serialize
from .structures import NESTED
from .linkage import (ConfinementSpec, Linkage, confinement_violations, is_region_avoiding,
                      scatter_violation)

EXIT = {"ok": 0, "violated": 1, "infeasible": 2, "budget": 2}
USAGE_EXIT = 3


@dataclass
class Report:
    command: str
    findings: List[Dict[str, Any]] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    failure: Optional[str] = None
    timing: Optional[float] = None
    warnings: List[str] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)

    def add(self, check: str, ok: bool, detail: Any = "") -> bool:
        self.findings.append({"check": check, "ok": bool(ok), "detail": detail})
        return ok

    @property
    def status(self) -> str:
        if self.failure:
            return self.failure
        return "ok" if all(f["ok"] for f in self.findings) else "violated"

    def to_json(self) -> dict:
        out = {"command": self.command, "status": self.status, "findings": self.findings}
        if self.data:
            out["data"] = self.data
        if self.warnings:
            out["warnings"] = self.warnings
        if self.timing is not None:
            out["timing"] = round(self.timing, 3)
        return out


def _int_csv(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _budget(args) -> Optional[int]:
    if getattr(args, "budget", None) is not None:
        return args.budget
    value = os.environ.get("LINKCOMB_BUDGET")
    return int(value) if value else None


def _need_annulus(inst: Instance):
    if inst.annulus is None:
        raise ParseError("instance has no annulus section", "annulus")
    return inst.annulus


def _need_linkage(inst: Instance) -> Linkage:
    if inst.linkage is None:
        raise ParseError("instance has no linkage section", "linkage")
    return inst.linkage


def _sequence(inst: Instance):
    if inst.annulus is not None:
        return inst.annulus.seq
    if inst.nested is not None:
        return inst.nested
    raise ParseError("instance has neither an annulus nor a nested section", "annulus")


def _param(args, inst: Instance, key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    value = inst.params.get(key)
    return default if value is None else value


# commands ----------------------------------------------------------------------

def cmd_gen(args, report: Report) -> None:
    from .instances import planted_instance

    inst = planted_instance(args.p, args.q, args.k, args.r, args.seed, args.chords,
                            s=args.s, I=args.I, m=args.m)
    text = serialize(inst)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        report.data["out"] = args.out
    else:
        report.data["instance"] = inst.to_json()
    report.add("generated", True, {"vertices": len(inst.graph.vertices), "paths": inst.linkage.size})


def verify_instance(inst: Instance, what: Sequence[str], report: Report) -> None:
    L = _need_linkage(inst)
    r = int(inst.params.get("r", 0) or 0)
    if "linkage" in what:
        problem = L.problem()
        report.add(problem.split(":")[0] if problem else "linkage", problem is None, problem or "")
        if problem:
            return
    if "scattered" in what:
        bad = scatter_violation(L, r)
        report.add("scattered", bad is None,
                   "" if bad is None else {"paths": list(bad[:2]), "vertex": bad[2], "r": r})
    if "avoiding" in what:
        seq = _sequence(inst)
        inside = sorted(L.terminals & seq.delta.vertices)
        report.add("avoiding", is_region_avoiding(L, seq.delta), {"terminals_inside": inside})
    if "confined" in what:
        a = _need_annulus(inst)
        spec = ConfinementSpec(inst.params.get("s", 1), inst.params.get("I", []))
        bad_v, bad_e = confinement_violations(L, a, spec)
        report.add("confined", not bad_v and not bad_e, {"vertices": bad_v, "edges": bad_e})


def cmd_verify(args, report: Report) -> None:
    inst = load(args.file)
    what = args.what or ["linkage", "scattered", "avoiding", "confined"]
    if "annulus" in what:
        from .structures import validate_railed_annulus

        rep = validate_railed_annulus(inst.graph, _need_annulus(inst))
        report.add("annulus", rep.ok, rep.violation or "")
    verify_instance(inst, [w for w in what if w != "annulus"], report)


def cmd_stats(args, report: Report) -> None:
    from .decomp import bridges, decompose

    inst = load(args.file)
    L = _need_linkage(inst)
    seq = _sequence(inst)
    r = _param(args, inst, "r", 0)
    dec = decompose(L, seq, r=r)
    lines = []
    for st in dec.rivers:
        lines.append(f"river path={st.path_index} span={st.span[0]}..{st.span[1]}")
    for kind, items in (("mountain", dec.mountains), ("valley", dec.valleys)):
        for mv in items:
            tight = dec.tight[(mv.path_index, mv.span, mv.kind)]
            lines.append(f"{kind} path={mv.path_index} span={mv.span[0]}..{mv.span[1]} "
                         f"base={mv.base_index} dehe={mv.dehe} tight={'yes' if tight else 'no'}")
    br = bridges(L, seq.disk(1)) if seq.kind == NESTED else []
    for b in br:
        lines.append(f"bridge path={b.path_index} ends={b.endpoints[0]},{b.endpoints[1]}")
    for c in dec.crossings:
        lines.append(f"crossing path={c.path_index} cycle={c.cycle_index} span={c.span[0]}..{c.span[1]}")
    report.lines = lines
    report.data["summary"] = {"streams": len(dec.streams), "rivers": len(dec.rivers),
                              "mountains": len(dec.mountains), "valleys": len(dec.valleys),
                              "bridges": len(br), "crossings": len(dec.crossings)}
    report.add("decomposed", True)


def cmd_minimize(args, report: Report) -> None:
    from .embed import EMPTY
    from .witness import background_edges, minimal_linkage

    inst = load(args.file)
    L = _need_linkage(inst)
    seq = _sequence(inst)
    r = _param(args, inst, "r", 0)
    before = len(L.edges - background_edges(seq, EMPTY))
    res = minimal_linkage(inst.graph, seq, EMPTY, L, r, _budget(args))
    report.data.update({"cae_before": before, "cae": res.cae_value, "optimal": res.optimal,
                        "nodes": res.nodes, "linkage": res.linkage.to_json()})
    if args.out:
        save(Instance(inst.graph, inst.annulus, res.linkage, inst.params, None, inst.meta, inst.nested),
             args.out)
    if not res.optimal:
        report.failure = "budget"
    report.add("minimal", res.optimal, "" if res.optimal else "search budget exhausted")


def witness_graph(inst: Instance):
    from .witness import union_graph

    seq = _sequence(inst)
    return union_graph(inst.graph, _need_linkage(inst), seq.union_edges)


def cmd_witness(args, report: Report) -> None:
    from .decomp import d_ordering, rivers
    from .embed import EMPTY
    from .witness import bramble_inputs, stream_bramble, treewidth

    inst = load(args.file)
    if args.mode == "treewidth":
        lo, hi, exact = treewidth(witness_graph(inst))
        report.data.update({"lower": lo, "upper": hi, "exact": exact})
        report.add("treewidth", True, "exact" if exact else "interval")
        return
    seq = _sequence(inst)
    L = _need_linkage(inst)
    Z = d_ordering(rivers(L, seq), EMPTY, seq)
    if min(len(seq), len(Z)) < 2:
        report.failure = "infeasible"
        report.add("bramble", False, f"need two cycles and two rivers, found {len(Z)} rivers")
        return
    B, Zp = bramble_inputs(seq, Z)
    w = stream_bramble(B, Zp)
    report.data["witness"] = w.to_json()
    report.add("bramble", w.order >= len(B) + 1, {"order": w.order, "size": len(B)})


def cmd_comb(args, report: Report) -> None:
    from .comb import comb

    inst = load(args.file)
    a = _need_annulus(inst)
    L = _need_linkage(inst)
    r = _param(args, inst, "r", 0)
    s = _param(args, inst, "s", 1)
    I = _param(args, inst, "I", list(range(1, a.q + 1)))
    m = _param(args, inst, "m", None)
    try:
        res = comb(inst.graph, a, L, r, s, I, m, _budget(args))
    except PipelineInfeasible as exc:
        report.failure = "infeasible"
        report.add(exc.stage, False, str(exc))
        return
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps(res.trace))
    report.data.update({"linkage": res.combed.to_json(), "rails": list(res.rails_used),
                        "m": res.m, "b": res.b, "outside_guarantee": res.outside_guarantee})
    if args.out:
        params = dict(inst.params, r=r, s=s, I=sorted(I))
        save(Instance(inst.graph, a, res.combed, params, None, inst.meta), args.out)
    for check, ok in res.trace.get("audit", {}).items():
        report.add(check, ok)


def cmd_route_grid(args, report: Report) -> None:
    from .comb import GridRoutingProblem, grid_audit, route_grid

    prob = GridRoutingProblem(args.k, args.kp, args.d, args.r, args.up, args.down)
    try:
        paths = route_grid(prob)
    except Infeasible as exc:
        report.failure = "infeasible"
        report.add("route", False, str(exc))
        return
    report.data.update({"problem": prob.to_json(), "paths": [[list(c) for c in p] for p in paths]})
    bad = grid_audit(paths, args.r)
    report.add("scattered", bad is None, "" if bad is None else list(bad))


# lemma suite -------------------------------------------------------------------

LEMMAS = ("rivers", "mountains", "bramble", "tight", "free-disk")


def _minimal(inst: Instance, budget: Optional[int]):
    from .embed import EMPTY
    from .witness import minimal_linkage

    seq = _sequence(inst)
    r = int(inst.params.get("r", 0) or 0)
    return minimal_linkage(inst.graph, seq, EMPTY, _need_linkage(inst), r, budget)


def lemma_case(name: str, inst: Instance, budget: Optional[int] = None) -> Optional[tuple]:
    """``(ok, detail)`` for one corpus instance, or None when the lemma does not apply."""
    from .decomp import d_ordering, decompose, rivers
    from .embed import EMPTY
    from .witness import background_edges, bramble_inputs, stream_bramble, treewidth, union_graph

    r = int(inst.params.get("r", 0) or 0)
    if name == "bramble":
        if inst.annulus is None:
            return None
        seq = inst.annulus.seq
        Z = d_ordering(rivers(_need_linkage(inst), seq), EMPTY, seq)
        if len(Z) < 2:
            return None
        B, Zp = bramble_inputs(seq, Z)
        w = stream_bramble(B, Zp)
        return w.order >= len(B) + 1, {"order": w.order, "bound": len(B) + 1}
    if name == "free-disk":
        return _free_disk_case(inst, budget)
    if inst.annulus is None:
        return None
    seq = inst.annulus.seq
    res = _minimal(inst, budget)
    if not res.optimal:
        return None
    lo, hi, exact = treewidth(union_graph(inst.graph, res.linkage, background_edges(seq, EMPTY)))
    if name == "rivers":
        count = len(rivers(res.linkage, seq))
        if count > lo and not exact:
            return None
        return count <= lo, {"rivers": count, "tw": lo}
    dec = decompose(res.linkage, seq, r=r)
    items = dec.mountains + dec.valleys
    if name == "mountains":
        cap = math.ceil(1.5 * hi)
        worst = max((x.dehe for x in items), default=0)
        if worst > math.ceil(1.5 * lo) and not exact:
            return None
        return worst <= cap, {"max_dehe": worst, "cap": cap}
    untight = [list(x.span) for x in items if not dec.tight[(x.path_index, x.span, x.kind)]]
    return not untight, {"checked": len(items), "untight": untight}


def _free_disk_case(inst: Instance, budget: Optional[int]):
    from .embed import EMPTY
    from .structures import derive_disks
    from .witness import background_edges, minimal_linkage, treewidth, union_graph

    if inst.nested is not None:
        seq = inst.nested
    elif inst.annulus is not None:
        seq = derive_disks(inst.annulus).CA
    else:
        return None
    L = _need_linkage(inst)
    if L.terminals & seq.delta.vertices:
        return None
    r = int(inst.params.get("r", 0) or 0)
    res = minimal_linkage(inst.graph, seq, EMPTY, L, r, budget)
    if not res.optimal:
        return None
    lo, hi, _ = treewidth(union_graph(inst.graph, res.linkage, background_edges(seq, EMPTY)))
    m = hi + (hi % 2)
    depth = 3 * m // 2 + 1
    if len(seq) < depth:
        return None
    disk = seq.disk(depth).closed
    hit = sorted(res.linkage.vertices & disk.vertices)
    return not hit, {"m": m, "depth": depth, "vertices_inside": hit}


def run_lemma(name: str, corpus: str, report: Report, budget: Optional[int] = None) -> None:
    files = sorted(glob.glob(os.path.join(corpus, "*.json")))
    if not files:
        report.warnings.append(f"corpus {corpus!r} is empty")
    checked = skipped = 0
    for path in files:
        try:
            got = lemma_case(name, load(path), budget)
        except (SearchBudgetExceeded, TooLarge, TooSmall):
            got = None
        if got is None:
            skipped += 1
            continue
        checked += 1
        ok, detail = got
        if not ok:
            report.add(os.path.basename(path), False, detail)
    report.data.update({"lemma": name, "cases": checked, "skipped": skipped})
    report.add(name, all(f["ok"] for f in report.findings), {"cases": checked})


def cmd_lemma(args, report: Report) -> None:
    run_lemma(args.name, args.corpus, report, _budget(args))


# entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkcomb", description="Combing linkages through railed annuli.")
    parser.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a planted instance")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--I", type=_int_csv, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--chords", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check linkage predicates of an instance")
    p.add_argument("file")
    p.add_argument("--what", action="append",
                   choices=["linkage", "scattered", "avoiding", "confined", "annulus"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="decompose the linkage of an instance")
    p.add_argument("file")
    p.add_argument("--r", type=int)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("minimize", help="cae-minimal equivalent linkage")
    p.add_argument("file")
    p.add_argument("--r", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("witness", help="treewidth interval or bramble witness")
    p.add_argument("file")
    p.add_argument("--mode", choices=["treewidth", "bramble"], default="treewidth")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("comb", help="reroute into an (s,I)-confined linkage")
    p.add_argument("file")
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--I", type=_int_csv)
    p.add_argument("--m", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--trace")
    p.add_argument("--out")
    p.set_defaults(func=cmd_comb)

    p = sub.add_parser("lemma", help="run a lemma check over a fixture corpus")
    p.add_argument("name", choices=LEMMAS)
    p.add_argument("--corpus", default="corpus")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("route-grid", help="band routing in a k by k' grid")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--kp", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--up", type=_int_csv, required=True)
    p.add_argument("--down", type=_int_csv, required=True)
    p.set_defaults(func=cmd_route_grid)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code else 0
    report = Report(args.command)
    start = time.perf_counter()
    try:
        args.func(args, report)
    except (ParseError, BadParams, BadSpec, OSError) as exc:
        sys.stderr.write(f"linkcomb {args.command}: {type(exc).__name__}: {exc}\n")
        return USAGE_EXIT
    except SearchBudgetExceeded as exc:
        report.failure = "budget"
        report.add("budget", False, str(exc))
    except LinkcombError as exc:
        report.failure = "infeasible"
        report.add(type(exc).__name__, False, str(exc))
    if args.timing:
        report.timing = time.perf_counter() - start
    for line in report.lines:
        sys.stdout.write(line + "\n")
    sys.stdout.write(dumps(report.to_json()))
    for w in report.warnings:
        sys.stderr.write(f"warning: {w}\n")
    return EXIT[report.status]


if __name__ == "__main__":
    sys.exit(main())
