"""Command-line front end: ``girthcolor <command> ...``.

Exit statuses: 0 confirmed, 1 refuted, 2 undecided within budget,
64 usage error, 65 unreadable input data, 66 missing input file.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Sequence

from .bounds import AnchorSet, build_bounds_table
from .coloring import (
    ColorBudget,
    chromatic_number,
    decide_k_colorable,
    is_vertex_critical,
    random_colourable,
)
from .constructions import (
    CandidateVerdict,
    StreamExhausted,
    droogendijk_construct,
    mycielski,
    search_qualifying_sets,
)
from .enumeration import CapExceeded, GenerationConstraints, certify_all_colorable, generate
from .formats import FormatError, decode_graph6, emit_adjacency_list, encode_graph6, parse_adjacency_list
from .graph import Graph, GraphError, degree_summary, girth
from .lcf import (
    ALGORITHMS,
    EvenGirthHeuristics,
    LcfError,
    LcfScheme,
    SearchBudget,
    SearchStats,
    emit_lcf_table,
    parse_lcf_table,
    realize,
    shift_is_automorphism,
)

EXIT_OK, EXIT_REFUTED, EXIT_UNDECIDED = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT = 64, 65, 66
DEFAULT_TIME_LIMIT = 600.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- input --------------------------------------------------------------------


@dataclass
class LoadedGraph:
    graph: Graph
    name: str
    digest: str
    scheme: LcfScheme | None = None


def _read_source(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        res = resources.files("girthcolor") / "fixtures" / name
        if not res.is_file():
            raise FileNotFoundError(f"no bundled fixture named {name!r}")
        return res.read_text(), name
    return Path(path).read_text(), path


def _detect(name: str, fmt: str | None) -> str:
    if fmt:
        return fmt
    for suffix, kind in ((".g6", "g6"), (".lcf", "lcf"), (".adj", "adj"), (".txt", "adj")):
        if name.endswith(suffix):
            return kind
    return "g6"


def load_graph(path: str, fmt: str | None = None) -> LoadedGraph:
    text, name = _read_source(path)
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    kind = _detect(name, fmt)
    if kind == "lcf":
        scheme = parse_lcf_table(text)
        return LoadedGraph(realize(scheme), name, digest, scheme)
    if kind == "adj":
        return LoadedGraph(parse_adjacency_list(text), name, digest)
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise FormatError(f"expected exactly one graph6 line, found {len(lines)}")
    return LoadedGraph(decode_graph6(lines[0]), name, digest)


# -- output -------------------------------------------------------------------


class Emitter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def record(self, kind: str, text: str, **fields: Any) -> None:
        if self.fmt == "records":
            print(json.dumps({"record": kind, **fields}, sort_keys=True), file=self.out)
        else:
            print(text, file=self.out)


# -- verify -------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    status: str  # confirmed | refuted | indeterminate | info
    detail: str
    seconds: float
    extra: dict[str, Any] = field(default_factory=dict)


@dataclass
class VerificationReport:
    name: str
    digest: str
    order: int
    size: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def exit_status(self) -> int:
        states = {c.status for c in self.checks}
        if "refuted" in states:
            return EXIT_REFUTED
        if "indeterminate" in states:
            return EXIT_UNDECIDED
        return EXIT_OK


def _timed(fn: Callable[[], CheckResult]) -> CheckResult:
    t0 = time.perf_counter()
    res = fn()
    res.seconds = time.perf_counter() - t0
    return res


def _deletion_task(args: tuple[Graph, int, int, float | None, str]) -> str:
    G, v, k, limit, method = args
    d = decide_k_colorable(G.delete_vertex(v), k, budget=ColorBudget(limit), method=method)
    return d.verdict.name


def _critical(G: Graph, k: int, budget: ColorBudget, reps: Sequence[int], jobs: int, method: str) -> bool | None:
    if jobs <= 1:
        return is_vertex_critical(G, k, budget, method=method, vertices=reps)
    tasks = [(G, v, k - 1, budget.time_limit, method) for v in reps]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        verdicts = list(pool.map(_deletion_task, tasks))
    if "NOT_COLORABLE" in verdicts:
        return False
    return None if "BUDGET_EXHAUSTED" in verdicts else True


def _check_chromatic(G: Graph, k: int, budget: ColorBudget, seed: int, method: str) -> CheckResult:
    """chi(G) == k: a k-colouring exists and no (k-1)-colouring does."""
    if k < 1:
        raise UsageError("--chromatic must be at least 1")
    col = random_colourable(k, G, seed=seed)
    if col is None:
        d = decide_k_colorable(G, k, budget=budget, method=method)
        if d.refuted:
            res = chromatic_number(G, budget, method=method)
            return CheckResult("chromatic", "refuted", f"expected {k}, got {res}", 0.0, {"found": str(res)})
        if d.exhausted:
            return CheckResult("chromatic", "indeterminate", f"{k}-colourability undecided within budget", 0.0)
    if k == 1:
        ok = G.order > 0
        return CheckResult("chromatic", "confirmed" if ok else "refuted", f"Exact({int(ok)})", 0.0)
    d = decide_k_colorable(G, k - 1, budget=budget, method=method)
    if d.colorable:
        res = chromatic_number(G, budget, method=method)
        return CheckResult("chromatic", "refuted", f"expected {k}, got {res}", 0.0, {"found": str(res)})
    if d.exhausted:
        return CheckResult("chromatic", "indeterminate", f"Bounds(?, {k}): {k - 1}-colourability undecided", 0.0)
    return CheckResult("chromatic", "confirmed", f"Exact({k})", 0.0, {"nodes": d.nodes})


def cmd_verify(args: argparse.Namespace, emit: Emitter) -> int:
    loaded = load_graph(args.input, args.input_format)
    G = loaded.graph
    budget = ColorBudget(None if args.slow else args.time_limit)
    report = VerificationReport(loaded.name, loaded.digest, G.order, G.size)
    checks = report.checks

    gi = _timed(lambda: CheckResult("girth", "info", str(girth(G)), 0.0))
    g_value = girth(G).length
    if args.girth is not None:
        gi.status = "confirmed" if g_value == args.girth else "refuted"
        gi.detail = f"{girth(G)} (expected {args.girth})"
    checks.append(gi)
    ds = degree_summary(G)
    checks.append(CheckResult("degrees", "info", f"min {ds.min_degree}, max {ds.max_degree}", 0.0))
    if args.triangle_free:
        ok = g_value is None or g_value >= 4
        checks.append(CheckResult("triangle-free", "confirmed" if ok else "refuted", str(ok), 0.0))
    if args.colorable is not None:
        k = args.colorable

        def colourable() -> CheckResult:
            col = random_colourable(k, G, seed=args.seed)
            if col is not None and col.is_proper(G):
                return CheckResult("colorable", "confirmed", f"{k}-colouring found (heuristic)", 0.0)
            d = decide_k_colorable(G, k, budget=budget)
            status = {True: "confirmed"}.get(d.colorable, "refuted" if d.refuted else "indeterminate")
            return CheckResult("colorable", status, f"{k}-colourable: {d.verdict.name}", 0.0)

        checks.append(_timed(colourable))
    chrom_ok = False
    if args.chromatic is not None:
        res = _timed(lambda: _check_chromatic(G, args.chromatic, budget, args.seed, "dsatur"))
        checks.append(res)
        chrom_ok = res.status == "confirmed"
        if args.cross_check and res.status != "indeterminate":
            alt = _timed(lambda: _check_chromatic(G, args.chromatic, budget, args.seed + 1, "plain"))
            if alt.status == "indeterminate":
                alt.detail = "secondary method undecided within budget"
            elif alt.status != res.status:
                alt.status = "refuted"
                alt.detail = f"methods disagree: primary {res.detail}, secondary {alt.detail}"
            else:
                alt.detail = f"secondary method agrees: {alt.detail}"
                alt.status = "confirmed"
            alt.name = "cross-check"
            checks.append(alt)
    if args.critical:
        if args.chromatic is None:
            raise UsageError("--critical needs --chromatic")

        def critical() -> CheckResult:
            if not chrom_ok:
                return CheckResult("critical", "indeterminate", "chromatic number not confirmed", 0.0)
            reps: Sequence[int] = range(G.order)
            note = ""
            if loaded.scheme is not None and shift_is_automorphism(G, loaded.scheme.r):
                reps = range(loaded.scheme.r)
                note = f" (one vertex per shift orbit, {len(reps)} deletions)"
            verdict = _critical(G, args.chromatic, budget, reps, args.jobs, "dsatur")
            status = {True: "confirmed", False: "refuted", None: "indeterminate"}[verdict]
            return CheckResult("critical", status, f"vertex-critical: {verdict}{note}", 0.0)

        checks.append(_timed(critical))

    emit.record(
        "input", f"{report.name}: order {report.order}, size {report.size}, sha256 {report.digest}",
        name=report.name, order=report.order, size=report.size, sha256=report.digest,
    )
    for c in checks:
        emit.record(
            "check", f"  {c.name:<14}{c.status:<15}{c.detail}  [{c.seconds:.2f}s]",
            name=c.name, status=c.status, detail=c.detail, seconds=round(c.seconds, 3), **c.extra,
        )
    status = report.exit_status
    emit.record("result", {0: "CONFIRMED", 1: "REFUTED", 2: "INDETERMINATE"}[status], exit=status)
    return status


# -- bounds -------------------------------------------------------------------


def cmd_bounds(args: argparse.Namespace, emit: Emitter) -> int:
    anchors = AnchorSet.load(args.anchors) if args.anchors else AnchorSet.default()
    table = build_bounds_table(anchors, args.gmax, args.kmax)
    if emit.fmt == "records":
        for rec in table.records():
            emit.record("bound", "", **rec)
    else:
        emit.record("table", table.render())
    return EXIT_OK


# -- construct / search -------------------------------------------------------


def _parse_set(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise UsageError(f"bad vertex set {text!r}") from exc


def _sidecar(path: str | None, data: dict[str, Any]) -> None:
    if path:
        Path(path).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def cmd_construct(args: argparse.Namespace, emit: Emitter) -> int:
    loaded = load_graph(args.input, args.input_format)
    G = loaded.graph
    S: list[int] | None = None
    if args.kind == "mycielski":
        H = mycielski(G)
    else:
        if args.set is None:
            raise UsageError("construct droogendijk needs --set")
        S = _parse_set(args.set)
        H = droogendijk_construct(G, S)
    g6 = encode_graph6(H)
    emit.record("graph", g6, graph6=g6, order=H.order, size=H.size, construction=args.kind, S=S, input_sha256=loaded.digest)
    _sidecar(args.sidecar, {"input_sha256": loaded.digest, "input": loaded.name, "construction": args.kind, "S": S, "order": H.order})
    return EXIT_OK


def cmd_search_droogendijk(args: argparse.Namespace, emit: Emitter) -> int:
    loaded = load_graph(args.input, args.input_format)
    budget = ColorBudget(None if args.slow else args.time_limit)
    print(f"seed: {args.seed}", file=sys.stderr)
    status = EXIT_REFUTED
    records = []
    stream = search_qualifying_sets(
        loaded.graph, args.k, args.max_set, budget,
        seed=args.seed, skip_b_empty=args.skip_b_empty, wall_clock=args.wall_clock,
    )
    for item in stream:
        if isinstance(item, StreamExhausted):
            emit.record("exhausted", f"# budget exhausted: {item.reason}", reason=item.reason)
            if status != EXIT_OK:
                status = EXIT_UNDECIDED
            break
        if item.verdict is CandidateVerdict.REFUTED and not args.all:
            continue
        g6 = encode_graph6(item.graph)
        emit.record(
            "candidate", f"{g6}\t# S={list(item.S)} verdict={item.verdict.name}",
            graph6=g6, S=list(item.S), verdict=item.verdict.name, input_sha256=loaded.digest,
        )
        records.append({"S": list(item.S), "verdict": item.verdict.name, "order": item.graph.order})
        if item.verdict is CandidateVerdict.CONFIRMED:
            status = EXIT_OK
        elif item.verdict is CandidateVerdict.INDETERMINATE and status == EXIT_REFUTED:
            status = EXIT_UNDECIDED
    _sidecar(args.sidecar, {"input_sha256": loaded.digest, "input": loaded.name, "k": args.k, "seed": args.seed, "candidates": records})
    return status


# -- lcf ----------------------------------------------------------------------


def cmd_lcf_realize(args: argparse.Namespace, emit: Emitter) -> int:
    text, _ = _read_source(args.input)
    scheme = parse_lcf_table(text, args.s)
    G = realize(scheme)
    out = encode_graph6(G) if args.to == "g6" else emit_adjacency_list(G).rstrip("\n")
    emit.record("graph", out, graph6=encode_graph6(G), order=G.order, size=G.size)
    return EXIT_OK


def cmd_lcf_search(args: argparse.Namespace, emit: Emitter) -> int:
    budget = SearchBudget(args.iterations, args.wall_clock, args.seed)
    print(f"seed: {args.seed}", file=sys.stderr)
    stats = SearchStats()
    kwargs: dict[str, Any] = {"stats": stats}
    if args.algo == "even":
        kwargs["heuristics"] = EvenGirthHeuristics(random_pick_fraction=args.random_frac)
    found = ALGORITHMS[args.algo](args.g, args.r, args.s, args.k, budget, **kwargs)
    emit.record(
        "stats", f"# iterations {stats.iterations}, screened {stats.screened}, "
        f"early restarts {stats.early_restarts}, {stats.elapsed:.1f}s",
        iterations=stats.iterations, screened=stats.screened, early_restarts=stats.early_restarts, seconds=round(stats.elapsed, 3),
    )
    if found is None:
        emit.record("none", "# no candidate within budget")
        return EXIT_UNDECIDED
    G = found.graph
    verdict = "SCREENED"
    status = EXIT_UNDECIDED
    if args.verify:
        d = decide_k_colorable(G, args.k, budget=ColorBudget(None if args.slow else args.time_limit))
        verdict = d.verdict.name
        status = EXIT_OK if d.refuted else EXIT_REFUTED if d.colorable else EXIT_UNDECIDED
    g6 = encode_graph6(G)
    emit.record(
        "candidate", f"{emit_lcf_table(found.scheme)}\n{g6}\t# girth {girth(G)}, iteration {found.iteration}, {verdict}",
        graph6=g6, lcf=emit_lcf_table(found.scheme), girth=girth(G).length, iteration=found.iteration, verdict=verdict,
    )
    return status


# -- convert / enumerate ------------------------------------------------------


def cmd_convert(args: argparse.Namespace, emit: Emitter) -> int:
    loaded = load_graph(args.input, args.input_format)
    if args.to == "g6":
        print(encode_graph6(loaded.graph))
    elif args.to == "adj":
        sys.stdout.write(emit_adjacency_list(loaded.graph))
    else:
        if loaded.scheme is None:
            raise UsageError("--to lcf needs LCF input")
        sys.stdout.write(emit_lcf_table(loaded.scheme))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace, emit: Emitter) -> int:
    c = GenerationConstraints(args.max_n, args.girth, args.min_deg, args.max_deg, args.min_n)
    if args.assert_colorable is None:
        report = generate(c, cap=args.cap)
        for n in sorted(report.counts):
            emit.record("count", f"{n}\t{report.counts[n]}", order=n, count=report.counts[n])
        emit.record("total", f"total\t{report.total}", total=report.total)
        return EXIT_OK
    budget = ColorBudget(None if args.slow else args.time_limit)
    res = certify_all_colorable(c, args.assert_colorable, budget, cap=args.cap)
    if res.counterexample is not None:
        g6 = encode_graph6(res.counterexample)
        emit.record("counterexample", f"{g6}\t# not {args.assert_colorable}-colourable, after {res.visited} graphs",
                    graph6=g6, visited=res.visited)
        return EXIT_REFUTED
    if res.indeterminate:
        emit.record("undecided", f"# {res.indeterminate} graphs undecided, {res.visited} checked",
                    undecided=res.indeterminate, visited=res.visited)
        return EXIT_UNDECIDED
    emit.record("all", f"all {res.visited} graphs are {args.assert_colorable}-colourable", visited=res.visited)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="graph file (.g6, .adj, .lcf), '-' for stdin, or fixture:NAME")
    p.add_argument("--input-format", choices=["g6", "adj", "lcf"], help="override detection by extension")


def _budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT, help="seconds per exact decision")
    p.add_argument("--slow", action="store_true", help="lift the time limit on exact decisions")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="girthcolor", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text", "records"], default="text", help="records: one JSON object per line")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check girth, chromatic number and criticality")
    _input_args(v)
    _budget_args(v)
    v.add_argument("--girth", type=int)
    v.add_argument("--chromatic", type=int)
    v.add_argument("--colorable", type=int, metavar="K", help="only require a K-colouring")
    v.add_argument("--critical", action="store_true")
    v.add_argument("--triangle-free", action="store_true")
    v.add_argument("--cross-check", action="store_true", help="repeat chromatic decisions with the plain backtracker")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="lower and upper bounds on n_g(k)")
    b.add_argument("--gmax", type=int, default=7)
    b.add_argument("--kmax", type=int, default=8)
    b.add_argument("--anchors", help="JSON anchor file")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("construct", help="Mycielski or Droogendijk construction")
    c.add_argument("kind", choices=["mycielski", "droogendijk"])
    _input_args(c)
    c.add_argument("--set", help="independent set S, e.g. '0,3'")
    c.add_argument("--sidecar", help="write provenance JSON here")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="search for qualifying sets")
    s_sub = s.add_subparsers(dest="search_kind", required=True, parser_class=_Parser)
    sd = s_sub.add_parser("droogendijk")
    _input_args(sd)
    _budget_args(sd)
    sd.add_argument("--k", type=int, required=True, help="chromatic number of the input")
    sd.add_argument("--max-set", type=int, default=2)
    sd.add_argument("--seed", type=int, default=0)
    sd.add_argument("--skip-b-empty", action="store_true")
    sd.add_argument("--wall-clock", type=float)
    sd.add_argument("--all", action="store_true", help="also print refuted candidates")
    sd.add_argument("--sidecar")
    sd.set_defaults(func=cmd_search_droogendijk)

    l = sub.add_parser("lcf", help="LCF(r,s) graphs")
    l_sub = l.add_subparsers(dest="lcf_command", required=True, parser_class=_Parser)
    lr = l_sub.add_parser("realize")
    lr.add_argument("input")
    lr.add_argument("--s", type=int, help="cycle length when the table has no header")
    lr.add_argument("--to", choices=["g6", "adj"], default="g6")
    lr.set_defaults(func=cmd_lcf_realize)
    ls = l_sub.add_parser("search")
    _budget_args(ls)
    ls.add_argument("--algo", choices=sorted(ALGORITHMS), default="even")
    ls.add_argument("--g", type=int, required=True)
    ls.add_argument("--r", type=int, required=True)
    ls.add_argument("--s", type=int, required=True)
    ls.add_argument("--k", type=int, default=3)
    ls.add_argument("--seed", type=int, default=0)
    ls.add_argument("--random-frac", type=float, default=0.25)
    ls.add_argument("--iterations", type=int, default=None)
    ls.add_argument("--wall-clock", type=float, default=600.0)
    ls.add_argument("--verify", action="store_true", help="settle the candidate exactly")
    ls.set_defaults(func=cmd_lcf_search)

    cv = sub.add_parser("convert", help="convert between graph formats")
    _input_args(cv)
    cv.add_argument("--to", choices=["g6", "adj", "lcf"], required=True)
    cv.set_defaults(func=cmd_convert)

    e = sub.add_parser("enumerate", help="isomorph-free generation of small graphs")
    _budget_args(e)
    e.add_argument("--max-n", type=int, required=True)
    e.add_argument("--min-n", type=int, default=1)
    e.add_argument("--girth", type=int, default=3)
    e.add_argument("--min-deg", type=int, default=0)
    e.add_argument("--max-deg", type=int)
    e.add_argument("--assert-colorable", type=int, metavar="K")
    e.add_argument("--cap", type=int, default=11, help="largest order allowed")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    emit = Emitter(args.format)
    try:
        return args.func(args, emit)
    except UsageError as exc:
        print(f"girthcolor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"girthcolor: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except (FormatError, LcfError, GraphError) as exc:
        print(f"girthcolor: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, CapExceeded) as exc:
        print(f"girthcolor: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
