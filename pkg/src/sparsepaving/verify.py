"""End-to-end reconstruction checks for the M_k family, its duals and the Vamos matroid."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable

from .analysis import find_restriction_isomorphic, prism_triples
from .constructions import build_mk, build_tictactoe, build_vamos
from .core import dualize, is_in_series, is_isomorphic, restrict
from .lattice import enumerate_flats, is_pseudomodular_naive, is_pseudomodular_pruned

KMIN, KMAX = 3, 6


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _mk_basics(k):
    m = build_mk(k)
    broken = m.set_of(["a1", f"a{k}", "c1", f"c{k}"])
    ok = m.n == 3 * k and m.r == 4 and len(m.chs) == 3 * comb(k, 2) - 1 and m.rank(broken) == 4
    return ok, f"n={m.n} r={m.r} |chs|={len(m.chs)} r(a1,a{k},c1,c{k})={m.rank(broken)}"


def _dual_m3():
    m = build_mk(3)
    d = build_tictactoe()
    full = m.ground
    ok = d.n == 9 and d.r == 5 and d.chs == {full - h for h in m.chs} and len(d.chs) == 8
    return ok, f"n={d.n} r={d.r} |chs|={len(d.chs)}"


def _vamos():
    v = build_vamos()
    expected = {v.set_of(s) for s in ("a,a',b,b'", "a,a',c,c'", "b,b',c,c'", "b,b',d,d'", "c,c',d,d'")}
    free_rank = v.rank(v.set_of("a,a',d,d'"))
    series = is_in_series(v, v.set_of("a,a'"), v.set_of("a,a',b,b',c,c'"))
    ok = v.chs == expected and all(v.rank(h) == 3 for h in expected) and free_rank == 4 and series
    return ok, f"|chs|={len(v.chs)} r(a,a',d,d')={free_rank} series={series}"


def _pm_dual(k):
    d = dualize(build_mk(k))
    report = is_pseudomodular_pruned(d)
    detail = f"pruned: {report.verdict} ({report.triples_examined} triples)"
    ok = report.pseudomodular
    if k == 3:
        naive = is_pseudomodular_naive(d)
        detail += f"; naive: {naive.verdict} ({naive.triples_examined} triples)"
        ok = ok and naive.pseudomodular
    if report.witness is not None:
        w = report.witness
        detail += f"; witness a={d.names(w.a)} b={d.names(w.b)} c={d.names(w.c)}"
    return ok, detail


def _contains_m3(k):
    m, m3 = build_mk(k), build_mk(3)
    found = find_restriction_isomorphic(m, m3) is not None
    copies = []
    for t in range(2, k):
        keep = m.set_of([f"{x}{i}" for x in "abc" for i in (1, t, k)])
        copies.append(is_isomorphic(restrict(m, keep), m3) is not None)
    return found and all(copies), f"restriction search: {found}; class copies {{1,t,{k}}}: {copies}"


def _edge_prisms(k):
    m = build_mk(k)
    by_lines = {p.lines: p for p in prism_triples(m)}
    broken, missing = [], []
    for i, j in combinations(range(1, k + 1), 2):
        lines = tuple(sorted((m.set_of([f"{x}{i}", f"{x}{j}"]) for x in "abc"), key=list))
        p = by_lines.get(lines)
        if p is None:
            missing.append((i, j))
        elif not p.is_full:
            broken.append((i, j))
    ok = not missing and broken == [(1, k)]
    return ok, f"edge prisms missing={missing} broken={broken}"


def _lattice_counts():
    a = len(enumerate_flats(build_mk(3)))
    b = len(enumerate_flats(build_tictactoe()))
    return a == 107 and b == 225, f"flats(M_3)={a} flats(M_3*)={b}"


def checks(kmax: int) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    out = [
        ("M_3 dual is rank 5 on 9 elements with complemented circuit hyperplanes", _dual_m3),
        ("Vamos circuit hyperplanes, independence of {a,a',d,d'}, series pair", _vamos),
        ("flat counts of M_3 and M_3*", _lattice_counts),
    ]
    for k in range(KMIN, kmax + 1):
        out.append((f"M_{k}: 3k elements, rank 4, 3*C(k,2)-1 circuit hyperplanes, broken basis", lambda k=k: _mk_basics(k)))
        out.append((f"M_{k}: one prism per edge, only edge (1,{k}) broken", lambda k=k: _edge_prisms(k)))
        if k >= 4:
            out.append((f"M_{k} contains M_3", lambda k=k: _contains_m3(k)))
        out.append((f"M_{k}* is pseudomodular", lambda k=k: _pm_dual(k)))
    return out


def run(kmax: int) -> list[CheckResult]:
    if not KMIN <= kmax <= KMAX:
        raise ValueError(f"kmax must lie in {KMIN}..{KMAX}, got {kmax}")
    results = []
    for name, fn in checks(kmax):
        ok, detail = fn()
        results.append(CheckResult(name, bool(ok), detail))
    return results
