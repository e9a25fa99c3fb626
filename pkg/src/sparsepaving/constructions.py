"""Builders for the matroid families studied here, plus small graph helpers."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .core import SparsePavingMatroid, dualize
from .elementset import ElementSet
from .errors import BadRank, BadRelaxation, DuplicateEdge, KTooSmall, LoopEdge, ParseError, TooFewEdges

FAMILIES = ("ab", "ac", "bc")


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices ``0..v-1``; edges stored as sorted pairs."""

    v: int
    edges: tuple

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise LoopEdge(f"loop at vertex {i}")
            if not (0 <= i < self.v and 0 <= j < self.v):
                raise ParseError(f"edge ({i}, {j}) uses a vertex outside 0..{self.v - 1}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise DuplicateEdge(f"edge ({i}, {j}) listed twice")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, v: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        return cls(v, tuple(tuple(e) for e in edges))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.v))
        g.add_edges_from(self.edges)
        return g

    def is_triangle_free(self) -> bool:
        return sum(nx.triangles(self.to_networkx()).values()) == 0

    def is_two_connected(self) -> bool:
        return self.v >= 3 and nx.is_biconnected(self.to_networkx())

    def to_text(self) -> str:
        return f"{self.v}\n" + "".join(f"{i} {j}\n" for i, j in self.edges)


def complete_graph(v: int) -> SimpleGraph:
    return SimpleGraph.from_edges(v, combinations(range(v), 2))


def cycle_graph(v: int) -> SimpleGraph:
    if v < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph.from_edges(v, ((i, (i + 1) % v) for i in range(v)))


def path_graph(v: int) -> SimpleGraph:
    return SimpleGraph.from_edges(v, ((i, i + 1) for i in range(v - 1)))


def complete_bipartite_graph(m: int, n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def parse_graph(text: str) -> SimpleGraph:
    """Read the edge-list format: a vertex count, then one ``u v`` pair per line.

    ``#`` starts a comment; blank lines are ignored.
    """
    v = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if v is None:
            if len(nums) != 1 or nums[0] < 0:
                raise ParseError(f"expected a vertex count, got {line!r}", lineno)
            v = nums[0]
            continue
        if len(nums) != 2:
            raise ParseError(f"expected two vertex indices, got {line!r}", lineno)
        i, j = nums
        if not (0 <= i < v and 0 <= j < v):
            raise ParseError(f"vertex out of range 0..{v - 1} in {line!r}", lineno)
        if i == j:
            raise LoopEdge(f"loop at vertex {i}", lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdge(f"edge {key} already given on line {seen[key]}", lineno)
        seen[key] = lineno
        edges.append(key)
    if v is None:
        raise ParseError("missing vertex count")
    return SimpleGraph.from_edges(v, edges)


@dataclass(frozen=True)
class PrismRelaxation:
    """Break the circuit hyperplane of ``family`` on ``edge`` (vertices 0-based)."""

    edge: tuple
    family: str = "ac"

    def __post_init__(self):
        i, j = self.edge
        object.__setattr__(self, "edge", (min(i, j), max(i, j)))
        if self.family not in FAMILIES:
            raise BadRelaxation(f"family must be one of {FAMILIES}, got {self.family!r}")

    @classmethod
    def parse(cls, spec: str) -> PrismRelaxation:
        """Parse ``"i,j:fam"``; the family defaults to ``ac``."""
        edge, _, fam = spec.partition(":")
        try:
            i, j = (int(x) for x in edge.split(","))
        except ValueError:
            raise BadRelaxation(f"cannot parse relaxation {spec!r}; expected 'i,j:fam'") from None
        return cls((i, j), fam.strip() or "ac")


def prism_labels(v: int) -> tuple[str, ...]:
    return tuple(f"{cls}{i + 1}" for cls in "abc" for i in range(v))


def prism_ch(v: int, i: int, j: int, family: str) -> ElementSet:
    offset = {"a": 0, "b": v, "c": 2 * v}
    x, y = family
    return ElementSet.of((offset[x] + i, offset[x] + j, offset[y] + i, offset[y] + j))


def graph_prism(g: SimpleGraph, relaxations: Sequence[PrismRelaxation] = ()) -> SparsePavingMatroid:
    """Replace every edge ``ij`` by the prism on ``{a_i,a_j}, {b_i,b_j}, {c_i,c_j}``.

    Element ``a_v`` has index ``v``, ``b_v`` index ``V + v`` and ``c_v`` index
    ``2V + v``; labels are 1-based (``a1`` is vertex 0).
    """
    if len(g.edges) < 2:
        raise TooFewEdges(f"need at least 2 edges, graph has {len(g.edges)}")
    chs = {}
    for i, j in g.edges:
        for fam in FAMILIES:
            chs[(i, j, fam)] = prism_ch(g.v, i, j, fam)
    for rel in relaxations:
        key = (*rel.edge, rel.family)
        if not g.has_edge(*rel.edge):
            raise BadRelaxation(f"edge {rel.edge} is not in the graph")
        if key not in chs:
            raise BadRelaxation(f"relaxation {rel.edge}:{rel.family} given twice")
        del chs[key]
    return SparsePavingMatroid(3 * g.v, 4, frozenset(chs.values()), prism_labels(g.v))


def build_mk(k: int) -> SparsePavingMatroid:
    """Rank-4 matroid on ``a_1..a_k, b_1..b_k, c_1..c_k`` with ``{a_1,a_k,c_1,c_k}`` broken."""
    if k < 3:
        raise KTooSmall(f"k must be at least 3, got {k}")
    if 3 * k > 64:
        raise KTooSmall(f"k = {k} exceeds the 64-element ground set limit")
    chs = set()
    for i, j in combinations(range(k), 2):
        chs.add(prism_ch(k, i, j, "ab"))
        chs.add(prism_ch(k, i, j, "bc"))
        if (i, j) != (0, k - 1):
            chs.add(prism_ch(k, i, j, "ac"))
    return SparsePavingMatroid(3 * k, 4, frozenset(chs), prism_labels(k))


def build_tictactoe() -> SparsePavingMatroid:
    return dualize(build_mk(3))


VAMOS_LABELS = ("a", "a'", "b", "b'", "c", "c'", "d", "d'")


def build_vamos() -> SparsePavingMatroid:
    lines = {x: ElementSet.of((2 * t, 2 * t + 1)) for t, x in enumerate("abcd")}
    chs = [lines[x] | lines[y] for x, y in ("ab", "ac", "bc", "bd", "cd")]
    return SparsePavingMatroid(8, 4, frozenset(chs), VAMOS_LABELS)


def random_sparse_paving(n: int, r: int, target_ch_count: int, seed: int, attempts: int | None = None) -> SparsePavingMatroid:
    """Greedy random sparse paving matroid, deterministic in ``seed``.

    May return fewer circuit hyperplanes than requested.
    """
    if not 1 <= r <= n <= 16:
        raise BadRank(f"need 1 <= r <= n <= 16, got n={n}, r={r}")
    rng = random.Random(seed)
    if attempts is None:
        attempts = 50 * target_ch_count + 100
    kept: list[int] = []
    if r < n:
        for _ in range(attempts):
            if len(kept) >= target_ch_count:
                break
            h = sum(1 << e for e in rng.sample(range(n), r))
            if all((h & other).bit_count() <= r - 2 for other in kept):
                kept.append(h)
    return SparsePavingMatroid(n, r, frozenset(ElementSet(h) for h in kept), tuple(str(i) for i in range(n)))
