from math import comb

import pytest

from oracles import brute_prisms, brute_restriction_search
from sparsepaving import (
    PrismRelaxation,
    build_mk,
    build_vamos,
    complete_graph,
    cycle_graph,
    find_minor,
    find_restriction_isomorphic,
    find_vamos,
    graph_prism,
    is_in_series,
    path_graph,
    prism_triples,
    random_sparse_paving,
    series_shortcut_sites,
    triangle_free_search,
    validate,
)
from sparsepaving.errors import RankMismatch


# -- restriction search ------------------------------------------------------------


@pytest.mark.parametrize("k", [4, 5])
def test_mk_contains_m3(k):
    host, m3 = build_mk(k), build_mk(3)
    w = find_restriction_isomorphic(host, m3)
    assert w is not None and w.revalidate(host, m3)


def test_m3_in_itself(m3):
    w = find_restriction_isomorphic(m3, m3)
    assert w.deleted == 0 and w.mapping == tuple(range(9))


def test_vamos_too_small_for_m3(vamos, m3):
    assert find_restriction_isomorphic(vamos, m3) is None


def test_rank_mismatch(ttt, m3):
    with pytest.raises(RankMismatch):
        find_restriction_isomorphic(ttt, m3)
    with pytest.raises(RankMismatch):
        find_vamos(ttt)


def test_find_vamos_on_vamos(vamos):
    w = find_vamos(vamos)
    assert w.kept == vamos.ground and w.mapping == tuple(range(8))


HOSTS = {
    "M3": build_mk(3),
    "M4": build_mk(4),
    "C4-ab": graph_prism(cycle_graph(4), [PrismRelaxation((0, 1), "ab")]),
    "C4": graph_prism(cycle_graph(4)),
    "vamos": build_vamos(),
    "rand-8": random_sparse_paving(9, 4, 9, 3),
    "rand-10": random_sparse_paving(10, 4, 12, 8),
}


@pytest.mark.parametrize("name", sorted(HOSTS))
def test_find_vamos_matches_brute_force(name):
    host = HOSTS[name]
    hits = brute_restriction_search(host, build_vamos())
    w = find_vamos(host)
    assert (w is None) == (not hits)
    if w is not None:
        assert w.kept == hits[0]
        assert w.revalidate(host, build_vamos())


def test_planted_vamos_is_found():
    # Vamos on elements 0..7 plus two free elements
    v = build_vamos()
    host = validate(10, 4, v.chs)
    w = find_vamos(host)
    assert w is not None and w.kept == v.ground
    assert brute_restriction_search(host, v)


def test_find_minor_with_contraction(vamos):
    # contracting one element of the dual-ish host must be found by the general search
    from sparsepaving import contract

    host = validate(9, 5, [h | (1 << 8) for h in vamos.chs])
    assert contract(host, 1 << 8).chs == vamos.chs
    w = find_minor(host, vamos)
    assert w is not None and w.contracted
    assert w.revalidate(host, vamos)
    assert find_minor(vamos, host) is None


def test_find_minor_equal_rank(m3):
    w = find_minor(build_mk(4), m3)
    assert w is not None and not w.contracted


# -- prisms ------------------------------------------------------------------------


def test_vamos_prisms(vamos):
    prisms = {tuple(vamos.names(p.support)): p for p in prism_triples(vamos)}
    abc = prisms[("a", "a'", "b", "b'", "c", "c'")]
    bcd = prisms[("b", "b'", "c", "c'", "d", "d'")]
    abd = prisms[("a", "a'", "b", "b'", "d", "d'")]
    assert abc.is_full and bcd.is_full
    assert abd.is_broken and abd.broken == (vamos.set_of("a,a',d,d'"),)


def test_m3_edge_13_prism_broken(m3):
    target = tuple(sorted((m3.set_of(s) for s in ("a1,a3", "b1,b3", "c1,c3")), key=list))
    prism = next(p for p in prism_triples(m3) if p.lines == target)
    assert prism.is_broken and prism.broken == (m3.set_of("a1,a3,c1,c3"),)


def test_free_matroid_has_no_prisms():
    assert prism_triples(validate(8, 4, [])) == []
    assert series_shortcut_sites(validate(8, 4, [])) == []


@pytest.mark.parametrize("name", sorted(HOSTS))
def test_prisms_match_brute_force(name):
    m = HOSTS[name]
    expected = brute_prisms(m)
    got = {tuple(sorted(int(x) for x in p.lines)): len(p.present) for p in prism_triples(m)}
    assert got == expected


@pytest.mark.parametrize("k", range(3, 7))
def test_mk_edge_prisms(k):
    m = build_mk(k)
    prisms = {p.lines: p for p in prism_triples(m)}
    broken = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            lines = tuple(sorted((m.set_of(f"{x}{i},{x}{j}") for x in "abc"), key=list))
            assert lines in prisms
            if not prisms[lines].is_full:
                broken.append((i, j))
    assert broken == [(1, k)]


@pytest.mark.parametrize("k", range(3, 7))
def test_mk_prism_total(k):
    """Besides the C(k,2) edge prisms, every triangle {i,j,l} gives a prism
    on {x_i,y_i},{x_j,y_j},{x_l,y_l} for each family xy; the ac ones through
    vertices 1 and k are broken."""
    prisms = prism_triples(build_mk(k))
    assert len(prisms) == comb(k, 2) + 3 * comb(k, 3)
    assert sum(p.is_broken for p in prisms) == 1 + (k - 2)
    assert all(p.is_full or p.is_broken for p in prisms)


def test_series_sites(vamos, m3):
    sites = series_shortcut_sites(vamos)
    assert (vamos.set_of("a,a'"), vamos.set_of("a,a',b,b',c,c'")) in sites
    assert all(is_in_series(vamos, pair, support) for pair, support in sites)
    m3_sites = series_shortcut_sites(m3)
    support = m3.set_of("a2,a3,b2,b3,c2,c3")
    for pair in ("a2,a3", "b2,b3", "c2,c3"):
        assert (m3.set_of(pair), support) in m3_sites


# -- graph harness -------------------------------------------------------------------


def test_search_triangle(m3):
    report = triangle_free_search([complete_graph(3)])
    rec = report.graphs[0]
    assert not rec.triangle_free and rec.two_connected
    assert len(rec.cases) == 9
    case = next(c for c in rec.cases if c.edge == (0, 2) and c.family == "ac")
    assert rec.matroid(case) == m3
    assert case.m3 is not None
    assert report.validate()


def test_search_c4():
    report = triangle_free_search([cycle_graph(4)])
    rec = report.graphs[0]
    assert rec.triangle_free and rec.two_connected
    assert len(rec.cases) == 12
    assert report.validate()
    for case in rec.cases:
        host = rec.matroid(case)
        assert (case.vamos is None) == (not brute_restriction_search(host, build_vamos()))


def test_search_empty_and_tiny():
    assert len(triangle_free_search([])) == 0
    report = triangle_free_search([path_graph(2)])
    assert report.graphs[0].cases == [] and report.graphs[0].note


def test_search_schedule_independent():
    graphs = [cycle_graph(4), complete_graph(3), path_graph(3)]
    assert triangle_free_search(graphs, jobs=1).to_dict() == triangle_free_search(graphs, jobs=2).to_dict()


def test_search_report_detects_tampering():
    report = triangle_free_search([complete_graph(3)])
    case = report.graphs[0].cases[0]
    from dataclasses import replace

    bad = replace(case.m3, mapping=tuple(reversed(case.m3.mapping)))
    report.graphs[0].cases[0] = replace(case, m3=bad)
    assert not report.validate()
