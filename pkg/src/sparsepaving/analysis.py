"""Structure detection: restriction/minor search, prisms and the graph-prism harness."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .constructions import FAMILIES, PrismRelaxation, SimpleGraph, build_mk, build_vamos, graph_prism, prism_ch
from .core import SparsePavingMatroid, is_in_series, is_isomorphic, minor
from .elementset import ElementSet, members
from .errors import RankMismatch


@dataclass(frozen=True)
class MinorWitness:
    """``N`` is isomorphic to ``M / contracted | kept``.

    ``mapping[t]`` is the element of ``N`` matched to the ``t``-th smallest
    element of ``kept``.
    """

    kept: ElementSet
    deleted: ElementSet
    mapping: tuple
    contracted: ElementSet = ElementSet(0)

    def revalidate(self, host: SparsePavingMatroid, target: SparsePavingMatroid) -> bool:
        sub, kept = minor(host, contract=self.contracted, delete=self.deleted)
        if ElementSet.of(kept) != self.kept or sub.r != target.r or sub.n != target.n:
            return False
        image = set()
        for h in sub.chs:
            image.add(sum(1 << self.mapping[e] for e in members(h)))
        return sorted(self.mapping) == list(range(target.n)) and image == set(target.chs)

    def to_dict(self, host: SparsePavingMatroid, target: SparsePavingMatroid) -> dict:
        kept = members(self.kept)
        return {
            "contracted": host.names(self.contracted),
            "deleted": host.names(self.deleted),
            "kept": host.names(self.kept),
            "mapping": {host.labels[e]: target.labels[self.mapping[t]] for t, e in enumerate(kept)},
        }


def _restriction_search(host: SparsePavingMatroid, target: SparsePavingMatroid):
    """First spanning subset (in combination order) whose restriction is isomorphic to ``target``."""
    if target.n > host.n:
        return None
    chs = list(host.chs)
    want = len(target.chs)
    want_deg = sorted(sum(1 for h in target.chs if h >> e & 1) for e in range(target.n))
    for combo in combinations(range(host.n), target.n):
        s = sum(1 << e for e in combo)
        if host.rank(s) != target.r:
            continue
        inside = [h for h in chs if h & ~s == 0]
        if len(inside) != want:
            continue
        if sorted(sum(1 for h in inside if h >> e & 1) for e in combo) != want_deg:
            continue
        sub, kept = minor(host, delete=host.ground & ~s)
        perm = is_isomorphic(sub, target)
        if perm is not None:
            return s, perm
    return None


def find_restriction_isomorphic(m: SparsePavingMatroid, n: SparsePavingMatroid) -> MinorWitness | None:
    """Search restrictions of ``m`` to ``|n|``-subsets of full rank for a copy of ``n``."""
    if m.r != n.r:
        raise RankMismatch(f"host has rank {m.r}, target has rank {n.r}")
    hit = _restriction_search(m, n)
    if hit is None:
        return None
    s, perm = hit
    return MinorWitness(ElementSet(s), m.ground - s, perm)


def find_minor(m: SparsePavingMatroid, n: SparsePavingMatroid) -> MinorWitness | None:
    """General minor search: contract an independent set closing the rank gap, then restrict."""
    gap = m.r - n.r
    if gap < 0 or n.n > m.n - gap:
        return None
    for combo in combinations(range(m.n), gap):
        c = sum(1 << e for e in combo)
        if not m.is_independent(c):
            continue
        sub, alive = minor(m, contract=c)
        hit = _restriction_search(sub, n)
        if hit is None:
            continue
        s, perm = hit
        kept = ElementSet.of(alive[i] for i in members(s))
        return MinorWitness(kept, m.ground - kept - c, perm, ElementSet(c))
    return None


def find_vamos(m: SparsePavingMatroid) -> MinorWitness | None:
    if m.r != 4:
        raise RankMismatch(f"Vamos search needs rank 4, matroid has rank {m.r}")
    return find_restriction_isomorphic(m, build_vamos())


@dataclass(frozen=True)
class PrismTriple:
    lines: tuple  # three disjoint 2-element ElementSets, sorted
    present: tuple  # unions of two lines that are circuit hyperplanes
    broken: tuple  # unions that are not

    @property
    def support(self) -> ElementSet:
        a, b, c = self.lines
        return a | b | c

    @property
    def is_full(self) -> bool:
        return not self.broken

    @property
    def is_broken(self) -> bool:
        return len(self.broken) == 1


def prism_triples(m: SparsePavingMatroid) -> list[PrismTriple]:
    """Triples of disjoint pairs with at least two of their three 4-element unions circuit hyperplanes."""
    if m.r != 4:
        raise RankMismatch(f"prisms need rank 4, matroid has rank {m.r}")
    found = set()
    for h1, h2 in combinations(m.chs, 2):
        p = h1 & h2
        if p.bit_count() == 2:
            found.add(tuple(sorted((int(p), int(h1 & ~p), int(h2 & ~p)), key=members)))
    out = []
    for lines in sorted(found, key=lambda ls: [members(x) for x in ls]):
        present, broken = [], []
        for x, y in combinations(lines, 2):
            (present if (x | y) in m.chs else broken).append(ElementSet(x | y))
        out.append(PrismTriple(tuple(ElementSet(x) for x in lines), tuple(present), tuple(broken)))
    return out


def series_shortcut_sites(m: SparsePavingMatroid) -> list[tuple[ElementSet, ElementSet]]:
    """``(pair, support)`` for every line of a fully present prism that is in series in the prism."""
    if m.r != 4:
        return []
    sites = []
    for prism in prism_triples(m):
        if not prism.is_full:
            continue
        for line in prism.lines:
            if is_in_series(m, line, prism.support):
                sites.append((line, prism.support))
    return sites


# -- graph-prism harness -----------------------------------------------------


@dataclass(frozen=True)
class RelaxationRecord:
    edge: tuple
    family: str
    relaxed: ElementSet
    vamos: MinorWitness | None
    m3: MinorWitness | None


@dataclass
class GraphRecord:
    graph_id: int
    graph: SimpleGraph
    triangle_free: bool
    two_connected: bool
    cases: list = field(default_factory=list)
    note: str = ""

    def matroid(self, case: RelaxationRecord) -> SparsePavingMatroid:
        return graph_prism(self.graph, [PrismRelaxation(case.edge, case.family)])


@dataclass
class SearchReport:
    graphs: list = field(default_factory=list)

    def __len__(self):
        return len(self.graphs)

    def validate(self) -> bool:
        """Re-check every stored witness against the matroid it came from."""
        vamos, m3 = build_vamos(), build_mk(3)
        for rec in self.graphs:
            for case in rec.cases:
                host = rec.matroid(case)
                if case.relaxed in host.chs:
                    return False
                if case.vamos is not None and not case.vamos.revalidate(host, vamos):
                    return False
                if case.m3 is not None and not case.m3.revalidate(host, m3):
                    return False
        return True

    @property
    def any_found(self) -> bool:
        return any(c.vamos is not None or c.m3 is not None for rec in self.graphs for c in rec.cases)

    def to_dict(self) -> dict:
        vamos, m3 = build_vamos(), build_mk(3)
        graphs = []
        for rec in self.graphs:
            cases = []
            for case in rec.cases:
                host = rec.matroid(case)
                cases.append(
                    {
                        "edge": list(case.edge),
                        "family": case.family,
                        "relaxed": host.names(case.relaxed),
                        "vamos": case.vamos.to_dict(host, vamos) if case.vamos else None,
                        "m3": case.m3.to_dict(host, m3) if case.m3 else None,
                    }
                )
            graphs.append(
                {
                    "graph_id": rec.graph_id,
                    "vertices": rec.graph.v,
                    "edges": [list(e) for e in rec.graph.edges],
                    "triangle_free": rec.triangle_free,
                    "two_connected": rec.two_connected,
                    "note": rec.note,
                    "cases": cases,
                }
            )
        return {"graphs": graphs}


def _search_case(task):
    g, edge, family = task
    host = graph_prism(g, [PrismRelaxation(edge, family)])
    return find_vamos(host), find_restriction_isomorphic(host, build_mk(3))


def triangle_free_search(graphs: Sequence[SimpleGraph], jobs: int = 1) -> SearchReport:
    """Break each circuit hyperplane of each graph prism in turn and look for Vamos / M_3 restrictions."""
    report = SearchReport()
    tasks = []
    for gid, g in enumerate(graphs):
        rec = GraphRecord(gid, g, g.is_triangle_free(), g.is_two_connected())
        if len(g.edges) < 2:
            rec.note = "fewer than 2 edges; no prism matroid"
        else:
            tasks.extend((g, e, fam, rec) for e in g.edges for fam in FAMILIES)
        report.graphs.append(rec)
    payload = [(g, e, fam) for g, e, fam, _ in tasks]
    if jobs > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_search_case, payload))
    else:
        results = [_search_case(t) for t in payload]
    for (g, e, fam, rec), (vamos, m3) in zip(tasks, results):
        relaxed = prism_ch(g.v, e[0], e[1], fam)
        rec.cases.append(RelaxationRecord(e, fam, relaxed, vamos, m3))
    return report
