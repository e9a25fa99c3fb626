"""Lattice of flats and pseudomodularity checks.

Two checkers are provided.  :func:`is_pseudomodular_naive` walks every
ordered triple of flats using precomputed join/meet tables.
:func:`is_pseudomodular_pruned` only looks at ordered triples of circuit
hyperplanes ``(X, Y, Z)`` standing for ``(a|b, a|c, b|c)``.

Why the pruned search is enough for a sparse paving matroid of rank r:
write X = a|b, Y = a|c, Z = b|c, T = a|b|c and d for the common rank jump in
the premise.  Semimodularity and the premise give X&Y = a and X&Z = b, and
c <= Y&Z forces (Y&Z)|X = T, so r(Y&Z) - r(a&b) >= d always; a violation
means the gap is at least d + 1.  If b <= a (or a <= b) there is no
violation, so a, b sit strictly below X and have rank <= r - 2, hence are
independent.  Counting elements then shows |Y| > r(Y), |Z| > r(Z) and
|X| > r(X), and none of them can be E.  The only dependent proper flats of
a sparse paving matroid are circuit hyperplanes, so d = 1, a and b are
colines, and a violating c exists iff |Y&Z| >= |X&Y&Z| + 2 (take c = Y&Z).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .core import SparsePavingMatroid
from .elementset import ElementSet, members
from .errors import ForeignFlat, TooLarge

DEFAULT_FLAT_CAP = 1 << 22
DEFAULT_NAIVE_CAP = 1024

PSEUDOMODULAR = "pseudomodular"
VIOLATED = "violated"


@dataclass(frozen=True, order=True)
class Flat:
    rank: int
    set: ElementSet

    def __repr__(self):
        return f"Flat(rank={self.rank}, {members(self.set)})"


def _canonical_key(mask: int, rank: int):
    return (rank, members(mask))


@dataclass
class GeometricLattice:
    matroid: SparsePavingMatroid
    flats: list  # canonical order: by rank, then lexicographic member tuple
    ranks: list
    index: dict = field(repr=False)

    @property
    def by_rank(self) -> list[list[Flat]]:
        levels = [[] for _ in range(self.matroid.r + 1)]
        for mask, rk in zip(self.flats, self.ranks):
            levels[rk].append(Flat(rk, ElementSet(mask)))
        return levels

    def __len__(self):
        return len(self.flats)

    def __iter__(self) -> Iterator[Flat]:
        for mask, rk in zip(self.flats, self.ranks):
            yield Flat(rk, ElementSet(mask))

    def __contains__(self, f) -> bool:
        return int(f.set if isinstance(f, Flat) else f) in self.index

    def counts_by_rank(self) -> list[int]:
        out = [0] * (self.matroid.r + 1)
        for rk in self.ranks:
            out[rk] += 1
        return out

    def flat(self, x) -> Flat:
        mask = int(x.set if isinstance(x, Flat) else x)
        i = self.index.get(mask)
        if i is None:
            raise ForeignFlat(f"{members(mask)} is not a flat of this lattice")
        return Flat(self.ranks[i], ElementSet(mask))

    def position(self, x) -> int:
        return self.index[int(self.flat(x).set)]

    def join(self, f1, f2) -> Flat:
        a, b = self.flat(f1), self.flat(f2)
        return self.flat(self.matroid.closure(a.set | b.set))

    def meet(self, f1, f2) -> Flat:
        a, b = self.flat(f1), self.flat(f2)
        return self.flat(a.set & b.set)

    def tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Join table, meet table (flat positions) and rank vector."""
        if not hasattr(self, "_tables"):
            size = len(self.flats)
            dtype = np.int32
            join = np.empty((size, size), dtype=dtype)
            meet = np.empty((size, size), dtype=dtype)
            closure = self.matroid.closure
            index = self.index
            flats = self.flats
            for i in range(size):
                fi = flats[i]
                for j in range(i, size):
                    fj = flats[j]
                    join[i, j] = join[j, i] = index[closure(fi | fj)]
                    meet[i, j] = meet[j, i] = index[fi & fj]
            self._tables = (join, meet, np.asarray(self.ranks, dtype=dtype))
        return self._tables


def structural_flat_count(m: SparsePavingMatroid) -> int:
    if m.r == 0:
        return 1
    low = sum(comb(m.n, i) for i in range(m.r - 1))
    covered = len(m.chs) * m.r
    return low + comb(m.n, m.r - 1) - covered + len(m.chs) + 1


def enumerate_flats(m: SparsePavingMatroid, cap: int = DEFAULT_FLAT_CAP) -> GeometricLattice:
    """All flats: independent sets of size <= r-2, the hyperplanes, and E."""
    expected = structural_flat_count(m)
    if expected > cap:
        raise TooLarge(f"lattice would have {expected} flats, cap is {cap}")
    full = (1 << m.n) - 1
    entries = []
    if m.r == 0:
        entries.append((0, full))
    else:
        for size in range(m.r - 1):
            entries.extend((size, sum(1 << e for e in c)) for c in combinations(range(m.n), size))
        covered = set(m._cover)
        for c in combinations(range(m.n), m.r - 1):
            mask = sum(1 << e for e in c)
            if mask not in covered:
                entries.append((m.r - 1, mask))
        entries.extend((m.r - 1, int(h)) for h in m.chs)
        entries.append((m.r, full))
    entries.sort(key=lambda t: _canonical_key(t[1], t[0]))
    flats = [mask for _, mask in entries]
    ranks = [rk for rk, _ in entries]
    return GeometricLattice(m, flats, ranks, {mask: i for i, mask in enumerate(flats)})


def colines(lattice: GeometricLattice) -> list[Flat]:
    r = lattice.matroid.r
    if r < 2:
        return []
    return lattice.by_rank[r - 2]


def ch_coline_incidence(m: SparsePavingMatroid) -> dict:
    """Map each pair of circuit hyperplanes meeting in a coline to that coline.

    Keys are pairs in canonical circuit-hyperplane order.
    """
    out = {}
    for h1, h2 in combinations(m.sorted_chs(), 2):
        meet = h1 & h2
        if m.r >= 2 and meet.bit_count() == m.r - 2:
            out[(h1, h2)] = meet
    return out


# -- pseudomodularity ---------------------------------------------------------

RANK_KEYS = ("a", "b", "a|b", "a|c", "b|c", "a|b|c", "(a|c)&(b|c)", "a&b")


@dataclass(frozen=True)
class PmWitness:
    """A violating triple together with every flat and rank the condition uses."""

    a: ElementSet
    b: ElementSet
    c: ElementSet
    flats: dict  # name -> ElementSet, for the six joins/meets
    ranks: dict  # name -> rank, keys as in RANK_KEYS plus "c"

    @classmethod
    def compute(cls, m: SparsePavingMatroid, a: int, b: int, c: int) -> PmWitness:
        cl = m.closure
        ab, ac, bc = cl(a | b), cl(a | c), cl(b | c)
        abc = cl(a | b | c)
        flats = {
            "a|b": ab,
            "a|c": ac,
            "b|c": bc,
            "a|b|c": abc,
            "(a|c)&(b|c)": ElementSet(ac & bc),
            "a&b": ElementSet(a & b),
        }
        ranks = {"a": m.rank(a), "b": m.rank(b), "c": m.rank(c)}
        ranks.update({k: m.rank(v) for k, v in flats.items()})
        return cls(ElementSet(a), ElementSet(b), ElementSet(c), flats, ranks)

    @property
    def premise(self) -> bool:
        r = self.ranks
        return r["a|b|c"] - r["a|b"] == r["a|c"] - r["a"] == r["b|c"] - r["b"]

    @property
    def conclusion(self) -> bool:
        r = self.ranks
        return r["(a|c)&(b|c)"] - r["a&b"] == r["a|c"] - r["a"]

    @property
    def is_violation(self) -> bool:
        return self.premise and not self.conclusion

    def revalidate(self, m: SparsePavingMatroid) -> bool:
        """Recompute everything from the matroid and compare with the stored values."""
        fresh = PmWitness.compute(m, self.a, self.b, self.c)
        flats_ok = all(m.is_flat(x) for x in (self.a, self.b, self.c))
        return flats_ok and fresh == self and fresh.is_violation

    def to_dict(self, m: SparsePavingMatroid) -> dict:
        return {
            "a": m.names(self.a),
            "b": m.names(self.b),
            "c": m.names(self.c),
            "flats": {k: m.names(v) for k, v in self.flats.items()},
            "ranks": dict(self.ranks),
        }


@dataclass(frozen=True)
class PmReport:
    verdict: str
    method: str
    triples_examined: int
    witness: PmWitness | None = None

    @property
    def pseudomodular(self) -> bool:
        return self.verdict == PSEUDOMODULAR

    def to_dict(self, m: SparsePavingMatroid) -> dict:
        return {
            "verdict": self.verdict,
            "method": self.method,
            "triples_examined": self.triples_examined,
            "witness": self.witness.to_dict(m) if self.witness else None,
        }


def _first_violation(join, meet, rank, start, stop):
    """Least (a, b, c) with ``start <= a < stop`` violating the condition, or None."""
    for a in range(start, stop):
        x = join[a]  # a|b indexed by b, and a|c indexed by c
        ra = rank[a]
        d_ac = rank[x] - ra  # over c
        t = join[x[:, None], np.arange(len(x))[None, :]]  # (a|b)|c
        d_top = rank[t] - rank[x][:, None]
        z = join  # b|c
        d_bc = rank[z] - rank[:, None]
        premise = (d_top == d_ac[None, :]) & (d_ac[None, :] == d_bc)
        if not premise.any():
            continue
        w = meet[x[None, :], z]  # (a|c)&(b|c)
        gap = rank[w] - rank[meet[a]][:, None]
        bad = premise & (gap != d_ac[None, :])
        if bad.any():
            flat_pos = int(np.argmax(bad.ravel()))
            b, c = divmod(flat_pos, len(x))
            return a, b, c
    return None


_WORKER_TABLES = None


def _init_worker(tables):
    global _WORKER_TABLES
    _WORKER_TABLES = tables


def _worker_chunk(bounds):
    join, meet, rank = _WORKER_TABLES
    return _first_violation(join, meet, rank, *bounds)


def is_pseudomodular_naive(
    m: SparsePavingMatroid,
    jobs: int = 1,
    cap: int = DEFAULT_NAIVE_CAP,
    lattice: GeometricLattice | None = None,
) -> PmReport:
    """Check every ordered triple of flats.

    Returns the least violating triple in canonical flat order.  ``jobs`` > 1
    splits the range of ``a`` over worker processes; the result does not
    depend on it.  ``triples_examined`` counts triples up to and including the
    witness (all of them when the matroid is pseudomodular).
    """
    if lattice is None:
        lattice = enumerate_flats(m, cap=max(cap, 1))
    size = len(lattice)
    if size > cap:
        raise TooLarge(f"naive check over {size} flats ({size ** 3} triples) exceeds cap of {cap} flats")
    join, meet, rank = lattice.tables()
    if jobs <= 1 or size < 2 * jobs:
        hit = _first_violation(join, meet, rank, 0, size)
    else:
        step = -(-size // (4 * jobs))
        chunks = [(s, min(s + step, size)) for s in range(0, size, step)]
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=((join, meet, rank),)) as ex:
            hits = [h for h in ex.map(_worker_chunk, chunks) if h is not None]
        hit = min(hits) if hits else None
    if hit is None:
        return PmReport(PSEUDOMODULAR, "naive", size ** 3)
    a, b, c = hit
    witness = PmWitness.compute(m, lattice.flats[a], lattice.flats[b], lattice.flats[c])
    return PmReport(VIOLATED, "naive", (a * size + b) * size + c + 1, witness)


def is_pseudomodular_pruned(m: SparsePavingMatroid) -> PmReport:
    """Search ordered triples of distinct circuit hyperplanes ``(X, Y, Z)``.

    ``X`` plays ``a|b``, ``Y`` plays ``a|c`` and ``Z`` plays ``b|c``, with
    ``a = X & Y``, ``b = X & Z`` and ``c = Y & Z``.  Exact for every sparse
    paving matroid (see the module docstring).
    """
    r = m.r
    chs = m.sorted_chs()
    examined = 0
    for x in chs:
        for y in chs:
            if y == x or (x & y).bit_count() != r - 2:
                continue
            for z in chs:
                if z == x or z == y:
                    continue
                examined += 1
                if (x & z).bit_count() != r - 2:
                    continue
                w = y & z
                if w.bit_count() >= (w & x).bit_count() + 2:
                    witness = PmWitness.compute(m, x & y, x & z, w)
                    if not witness.is_violation:
                        raise AssertionError("pruned search produced a non-violating triple")
                    return PmReport(VIOLATED, "pruned", examined, witness)
    return PmReport(PSEUDOMODULAR, "pruned", examined)
