"""Command-line front end.

Exit codes: 0 success (pseudomodular / found), 1 absent, 2 input or
validation error, 3 violated, 4 checkers disagree, 5 a verification check
failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fileformat
from .analysis import find_minor, find_vamos, triangle_free_search
from .constructions import (
    PrismRelaxation,
    build_mk,
    build_tictactoe,
    build_vamos,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    graph_prism,
    parse_graph,
    path_graph,
    random_sparse_paving,
)
from .core import dualize, relax
from .errors import MatroidError
from .lattice import enumerate_flats, is_pseudomodular_naive, is_pseudomodular_pruned
from . import verify

EXIT_OK, EXIT_ABSENT, EXIT_INPUT, EXIT_VIOLATED, EXIT_DISAGREE, EXIT_CHECK = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _emit(m, out, summary=True):
    text = fileformat.dumps(m)
    line = f"n={m.n} rank={m.r} circuit_hyperplanes={len(m.chs)}"
    if out:
        Path(out).write_text(text)
        if summary:
            print(line)
    else:
        sys.stdout.write(text)
        if summary:
            print(line, file=sys.stderr)


def _builtin_graph(spec):
    s = spec.upper()
    if s.startswith("K") and "," in s:
        m, n = s[1:].split(",")
        return complete_bipartite_graph(int(m), int(n))
    if s.startswith("K") and s[1:].isdigit():
        return complete_graph(int(s[1:]))
    if s.startswith("C") and s[1:].isdigit():
        return cycle_graph(int(s[1:]))
    if s.startswith("P") and s[1:].isdigit():
        return path_graph(int(s[1:]))
    return None


def _load_graph(spec):
    path = Path(spec)
    if path.exists():
        return parse_graph(path.read_text())
    g = _builtin_graph(spec)
    if g is None:
        raise UsageError(f"{spec!r} is neither a graph file nor a built-in graph (Kn, Cn, Pn, Km,n)")
    return g


def cmd_build(args):
    fam = args.family
    if fam == "mk":
        if args.k is None:
            raise UsageError("build mk needs --k")
        m = build_mk(args.k)
    elif fam == "tictactoe":
        m = build_tictactoe()
    elif fam == "vamos":
        m = build_vamos()
    elif fam == "graph-prism":
        if not args.graph:
            raise UsageError("build graph-prism needs --graph")
        m = graph_prism(_load_graph(args.graph), [PrismRelaxation.parse(s) for s in args.relax])
    elif fam == "random":
        if args.seed is None or args.n is None or args.r is None:
            raise UsageError("build random needs --n, --r and an explicit --seed")
        m = random_sparse_paving(args.n, args.r, args.target, args.seed)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(fam)
    _emit(m, args.out)
    return EXIT_OK


def _pm_payload(m, reports, agree):
    return {
        "n": m.n,
        "rank": m.r,
        "circuit_hyperplanes": len(m.chs),
        "reports": [r.to_dict(m) for r in reports],
        "agree": agree,
    }


def cmd_check_pm(args):
    m = fileformat.read(args.input)
    reports = []
    if args.method in ("naive", "both"):
        reports.append(is_pseudomodular_naive(m, jobs=args.jobs, cap=args.naive_cap))
    if args.method in ("pruned", "both"):
        reports.append(is_pseudomodular_pruned(m))
    agree = None if len(reports) == 1 else reports[0].verdict == reports[1].verdict
    if args.json:
        print(json.dumps(_pm_payload(m, reports, agree), indent=2))
    else:
        for rep in reports:
            print(f"{rep.method}: {rep.verdict} (triples examined: {rep.triples_examined})")
            if rep.witness is not None:
                w = rep.witness
                for name in ("a", "b", "c"):
                    print(f"  {name} = {{{', '.join(m.names(getattr(w, name)))}}}")
                for name, flat in w.flats.items():
                    print(f"  {name} = {{{', '.join(m.names(flat))}}}")
                print("  ranks: " + ", ".join(f"r({k})={v}" for k, v in w.ranks.items()))
        if agree is not None:
            print("methods agree" if agree else "METHODS DISAGREE")
    if agree is False:
        return EXIT_DISAGREE
    return EXIT_OK if reports[0].pseudomodular else EXIT_VIOLATED


def cmd_dual(args):
    _emit(dualize(fileformat.read(args.input)), args.out)
    return EXIT_OK


def cmd_relax(args):
    m = fileformat.read(args.input)
    _emit(relax(m, m.set_of(args.ch)), args.out)
    return EXIT_OK


def cmd_stats(args):
    m = fileformat.read(args.input)
    lattice = enumerate_flats(m)
    counts = lattice.counts_by_rank()
    stats = {
        "n": m.n,
        "rank": m.r,
        "circuit_hyperplanes": len(m.chs),
        "bases": m.basis_count(),
        "flats_by_rank": counts,
        "flats": sum(counts),
    }
    if args.json:
        print(json.dumps(stats, indent=2))
    else:
        for key, value in stats.items():
            print(f"{key}: {value}")
    return EXIT_OK


def _report_witness(args, host, target, witness, what):
    if args.json:
        print(json.dumps({"found": witness is not None, "witness": witness.to_dict(host, target) if witness else None}, indent=2))
    elif witness is None:
        print(f"no {what} found")
    else:
        d = witness.to_dict(host, target)
        print(f"found {what}")
        if d["contracted"]:
            print("  contract: " + ", ".join(d["contracted"]))
        print("  delete: " + (", ".join(d["deleted"]) or "(nothing)"))
        print("  map: " + ", ".join(f"{k}->{v}" for k, v in d["mapping"].items()))
    return EXIT_OK if witness is not None else EXIT_ABSENT


def cmd_minor(args):
    host = fileformat.read(args.host)
    target = fileformat.read(args.target)
    return _report_witness(args, host, target, find_minor(host, target), "minor")


def cmd_find_vamos(args):
    m = fileformat.read(args.input)
    return _report_witness(args, m, build_vamos(), find_vamos(m), "Vamos restriction")


def cmd_search(args):
    graphs = [_load_graph(s) for s in args.graphs]
    report = triangle_free_search(graphs, jobs=args.jobs)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        for rec in report.graphs:
            print(
                f"graph {rec.graph_id}: v={rec.graph.v} e={len(rec.graph.edges)} "
                f"triangle_free={rec.triangle_free} two_connected={rec.two_connected} {rec.note}".rstrip()
            )
            for case in rec.cases:
                print(
                    f"  break {case.family} on {case.edge}: "
                    f"vamos={'yes' if case.vamos else 'no'} m3={'yes' if case.m3 else 'no'}"
                )
    return EXIT_OK if report.any_found else EXIT_ABSENT


def cmd_verify_paper(args):
    if not verify.KMIN <= args.kmax <= verify.KMAX:
        raise UsageError(f"--kmax must lie in {verify.KMIN}..{verify.KMAX}")
    results = verify.run(args.kmax)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}")
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"first failing check: {failed[0].name}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="sparsepaving", description="Sparse paving matroid toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a matroid and write it as a matroid file")
    b.add_argument("family", choices=["mk", "tictactoe", "vamos", "graph-prism", "random"])
    b.add_argument("--k", type=int)
    b.add_argument("--graph", help="edge-list file or built-in name (K4, C5, P3, K2,3)")
    b.add_argument("--relax", action="append", default=[], metavar="I,J:FAM")
    b.add_argument("--n", type=int)
    b.add_argument("--r", type=int)
    b.add_argument("--target", type=int, default=0)
    b.add_argument("--seed", type=int)
    b.add_argument("-o", "--out")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check-pm", help="test pseudomodularity")
    c.add_argument("input")
    c.add_argument("--method", choices=["naive", "pruned", "both"], default="both")
    c.add_argument("--json", action="store_true")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--naive-cap", type=int, default=1024, help="largest lattice the naive check accepts")
    c.set_defaults(func=cmd_check_pm)

    d = sub.add_parser("dual", help="write the dual matroid")
    d.add_argument("input")
    d.add_argument("-o", "--out")
    d.set_defaults(func=cmd_dual)

    r = sub.add_parser("relax", help="relax one circuit hyperplane, e.g. a1,a3,c1,c3")
    r.add_argument("input")
    r.add_argument("ch")
    r.add_argument("-o", "--out")
    r.set_defaults(func=cmd_relax)

    s = sub.add_parser("stats", help="print basic counts")
    s.add_argument("input")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_stats)

    mi = sub.add_parser("minor", help="search HOST for a minor isomorphic to TARGET")
    mi.add_argument("host")
    mi.add_argument("target")
    mi.add_argument("--json", action="store_true")
    mi.set_defaults(func=cmd_minor)

    v = sub.add_parser("find-vamos", help="search a rank-4 matroid for a Vamos restriction")
    v.add_argument("input")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_find_vamos)

    se = sub.add_parser("search", help="graph-prism relaxation search")
    se.add_argument("graphs", nargs="*")
    se.add_argument("--json", action="store_true")
    se.add_argument("--jobs", type=int, default=1)
    se.set_defaults(func=cmd_search)

    vp = sub.add_parser("verify-paper", help="rebuild the M_k family and check its stated properties")
    vp.add_argument("--kmax", type=int, default=3)
    vp.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MatroidError, UsageError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
