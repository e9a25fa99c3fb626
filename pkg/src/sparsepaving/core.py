"""Sparse paving matroids stored as their circuit hyperplanes.

A sparse paving matroid of rank ``r`` on ``n`` elements is fully described by
a family of ``r``-sets, the circuit hyperplanes, any two of which share at
most ``r - 2`` elements.  Rank, closure, duality and minors all reduce to
bit operations on that family.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence, Union

from .elementset import MAX_GROUND, ElementSet, members
from .errors import (
    BadLabels,
    BadRank,
    DuplicateCH,
    NotACircuitHyperplane,
    NotNested,
    OutOfRange,
    OverlapViolation,
    WrongSize,
)

SetLike = Union[int, Iterable[int], Iterable[str], str]


@dataclass(frozen=True, eq=True)
class SparsePavingMatroid:
    """Immutable sparse paving matroid.

    Use :func:`validate` (or a builder) rather than calling the constructor
    with unchecked data; the constructor re-runs every check anyway.
    """

    n: int
    r: int
    chs: frozenset
    labels: tuple = ()
    _cover: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        _check(self.n, self.r, self.chs, self.labels)
        # each (r-1)-subset of a circuit hyperplane lies in no other one
        cover = {}
        for h in self.chs:
            for e in members(h):
                cover[h & ~(1 << e)] = h
        object.__setattr__(self, "_cover", cover)
        object.__setattr__(self, "_index", {name: i for i, name in enumerate(self.labels)})

    def __hash__(self):
        return hash((self.n, self.r, self.chs, self.labels))

    @property
    def ground(self) -> ElementSet:
        return ElementSet.full(self.n)

    def _mask(self, x: int) -> int:
        x = int(x)
        if x < 0 or x >> self.n:
            raise OutOfRange(f"set {members(x) if x >= 0 else x} leaves ground set of size {self.n}")
        return x

    def rank(self, x: int) -> int:
        x = self._mask(x)
        k = x.bit_count()
        if k < self.r:
            return k
        if k == self.r and x in self.chs:
            return self.r - 1
        return self.r

    def closure(self, x: int) -> ElementSet:
        x = self._mask(x)
        k = x.bit_count()
        r = self.r
        if k <= r - 2:
            return ElementSet(x)
        if k == r - 1:
            return ElementSet(self._cover.get(x, x))
        if k == r and x in self.chs:
            return ElementSet(x)
        return ElementSet.full(self.n)

    def is_independent(self, x: int) -> bool:
        return self.rank(x) == int(x).bit_count()

    def is_circuit(self, x: int) -> bool:
        x = self._mask(x)
        k = x.bit_count()
        if k == 0 or self.rank(x) != k - 1:
            return False
        return all(self.rank(x & ~(1 << e)) == k - 1 for e in members(x))

    def is_flat(self, x: int) -> bool:
        return self.closure(x) == int(x)

    def is_loop(self, e: int) -> bool:
        return self.rank(1 << e) == 0

    def basis_count(self) -> int:
        return comb(self.n, self.r) - len(self.chs)

    # -- labels ---------------------------------------------------------

    def element(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise OutOfRange(f"unknown element label {label!r}") from None

    def set_of(self, items: SetLike) -> ElementSet:
        """Build an :class:`ElementSet` from labels, indices or a mask.

        A string is read as a comma-separated label list, e.g. ``"a1,a3,c1,c3"``.
        """
        if isinstance(items, int):
            return ElementSet(self._mask(items))
        if isinstance(items, str):
            items = [s.strip() for s in items.split(",") if s.strip()]
        mask = 0
        for it in items:
            if isinstance(it, str):
                mask |= 1 << self.element(it)
            else:
                if not 0 <= it < self.n:
                    raise OutOfRange(f"element index {it} outside 0..{self.n - 1}")
                mask |= 1 << it
        return ElementSet(mask)

    def names(self, x: int) -> list[str]:
        return [self.labels[i] for i in members(self._mask(x))]

    def sorted_chs(self) -> list[ElementSet]:
        """Circuit hyperplanes in canonical (lexicographic member tuple) order."""
        return sorted(self.chs, key=members)

    def __repr__(self):
        return f"SparsePavingMatroid(n={self.n}, r={self.r}, |chs|={len(self.chs)})"


def _check(n, r, chs, labels):
    if not 0 <= n <= MAX_GROUND:
        raise OutOfRange(f"ground set size {n} outside 0..{MAX_GROUND}")
    if not 0 <= r <= n:
        raise BadRank(f"rank {r} outside 0..{n}")
    if len(labels) != n:
        raise BadLabels(f"expected {n} labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise BadLabels("element labels must be unique")
    full = (1 << n) - 1
    for h in chs:
        if not isinstance(h, ElementSet):
            raise TypeError("circuit hyperplanes must be ElementSet instances")
        if h & ~full:
            raise OutOfRange(f"circuit hyperplane {members(h)} leaves ground set of size {n}")
        if h.bit_count() != r:
            raise WrongSize(f"circuit hyperplane {members(h)} has size {h.bit_count()}, rank is {r}")
    if chs and len(chs) == comb(n, r):
        raise BadRank(f"every {r}-subset is a circuit hyperplane; the matroid would have rank {r - 1}")
    hs = sorted(chs, key=members)
    for h1, h2 in combinations(hs, 2):
        if (h1 & h2).bit_count() > r - 2:
            raise OverlapViolation(
                f"circuit hyperplanes {members(h1)} and {members(h2)} share "
                f"{(h1 & h2).bit_count()} elements (at most {r - 2} allowed)",
                pair=(h1, h2),
            )


def _to_mask(x, n, labels=None) -> int:
    if isinstance(x, int):
        return int(x)
    mask = 0
    for it in x:
        if isinstance(it, str):
            if labels is None or it not in labels:
                raise OutOfRange(f"unknown element label {it!r}")
            it = labels.index(it)
        if not 0 <= it < n:
            raise OutOfRange(f"element index {it} outside 0..{n - 1}")
        mask |= 1 << it
    return mask


def validate(n: int, r: int, chs: Iterable, labels: Sequence[str] | None = None) -> SparsePavingMatroid:
    """Check the sparse paving axioms and return the matroid.

    ``chs`` may hold masks or iterables of element indices (or labels, when
    ``labels`` is given).
    """
    if labels is None:
        labels = tuple(str(i) for i in range(max(n, 0)))
    labels = tuple(labels)
    masks = [ElementSet(_to_mask(h, n, list(labels))) for h in chs]
    seen = set()
    for h in masks:
        if h in seen:
            raise DuplicateCH(f"circuit hyperplane {members(h)} listed twice")
        seen.add(h)
    return SparsePavingMatroid(n, r, frozenset(masks), labels)


def dualize(m: SparsePavingMatroid) -> SparsePavingMatroid:
    full = (1 << m.n) - 1
    return SparsePavingMatroid(m.n, m.n - m.r, frozenset(ElementSet(full & ~h) for h in m.chs), m.labels)


def relax(m: SparsePavingMatroid, h: SetLike) -> SparsePavingMatroid:
    h = m.set_of(h)
    if h not in m.chs:
        raise NotACircuitHyperplane(f"{m.names(h)} is not a circuit hyperplane")
    return SparsePavingMatroid(m.n, m.r, m.chs - {h}, m.labels)


def _reindex(mask: int, position: dict) -> ElementSet:
    out = 0
    for e in members(mask):
        out |= 1 << position[e]
    return ElementSet(out)


def _restrict(m: SparsePavingMatroid, keep: int) -> SparsePavingMatroid:
    kept = members(keep)
    pos = {e: i for i, e in enumerate(kept)}
    size = len(kept)
    labels = tuple(m.labels[e] for e in kept)
    if size > m.r or (size == m.r and keep not in m.chs):
        chs = frozenset(_reindex(h, pos) for h in m.chs if h & ~keep == 0)
        return SparsePavingMatroid(size, m.r, chs, labels)
    if size == m.r:
        # the kept set is itself a circuit: uniform matroid U(r-1, r)
        return SparsePavingMatroid(size, m.r - 1, frozenset(), labels)
    return SparsePavingMatroid(size, size, frozenset(), labels)


def _contract_element(m: SparsePavingMatroid, e: int) -> SparsePavingMatroid:
    if m.is_loop(e):
        return _restrict(m, m.ground & ~(1 << e))
    keep = m.ground & ~(1 << e)
    pos = {x: i for i, x in enumerate(members(keep))}
    chs = frozenset(_reindex(h & ~(1 << e), pos) for h in m.chs if h >> e & 1)
    labels = tuple(m.labels[x] for x in members(keep))
    return SparsePavingMatroid(m.n - 1, m.r - 1, chs, labels)


def minor(m: SparsePavingMatroid, contract: SetLike = 0, delete: SetLike = 0):
    """Return ``(m / contract \\ delete, kept)``.

    ``kept`` lists, in order, the original indices of the minor's elements.
    """
    c = m.set_of(contract)
    d = m.set_of(delete)
    if c & d:
        raise NotNested("contraction and deletion sets must be disjoint")
    cur = m
    alive = list(range(m.n))
    for e in members(c):
        cur = _contract_element(cur, alive.index(e))
        alive.remove(e)
    if d:
        keep = 0
        for i, e in enumerate(alive):
            if not d >> e & 1:
                keep |= 1 << i
        cur = _restrict(cur, keep)
        alive = [e for e in alive if not d >> e & 1]
    return cur, tuple(alive)


def delete(m: SparsePavingMatroid, d: SetLike) -> SparsePavingMatroid:
    return minor(m, delete=d)[0]


def contract(m: SparsePavingMatroid, c: SetLike) -> SparsePavingMatroid:
    return minor(m, contract=c)[0]


def restrict(m: SparsePavingMatroid, s: SetLike) -> SparsePavingMatroid:
    return minor(m, delete=m.ground & ~m.set_of(s))[0]


def is_in_series(m: SparsePavingMatroid, s: SetLike, a: SetLike) -> bool:
    """True iff contracting ``a - s`` turns ``s`` into a circuit."""
    s = m.set_of(s)
    a = m.set_of(a)
    if not s.issubset(a):
        raise NotNested(f"{m.names(s)} is not contained in {m.names(a)}")
    if not s:
        return False
    sub, _ = minor(m, contract=a - s, delete=m.ground - a)
    return sub.is_circuit(sub.ground)


def _cooccurrence(m: SparsePavingMatroid) -> list[list[int]]:
    table = [[0] * m.n for _ in range(m.n)]
    for h in m.chs:
        ms = members(h)
        for i in ms:
            row = table[i]
            for j in ms:
                row[j] += 1
    return table


def is_isomorphic(m1: SparsePavingMatroid, m2: SparsePavingMatroid) -> tuple[int, ...] | None:
    """Find a bijection ``p`` (``p[i]`` is the image of ``i``) mapping the
    circuit hyperplanes of ``m1`` onto those of ``m2``, or return ``None``.
    """
    if (m1.n, m1.r, len(m1.chs)) != (m2.n, m2.r, len(m2.chs)):
        return None
    n = m1.n
    if m1.chs == m2.chs:
        return tuple(range(n))
    co1 = _cooccurrence(m1)
    co2 = _cooccurrence(m2)
    deg1 = [co1[i][i] for i in range(n)]
    deg2 = [co2[i][i] for i in range(n)]
    if sorted(deg1) != sorted(deg2):
        return None
    if sorted(map(sorted, co1)) != sorted(map(sorted, co2)):
        return None

    # most constrained first, then stay connected to what is already placed
    order = []
    placed = set()
    while len(order) < n:
        best = max(
            (e for e in range(n) if e not in placed),
            key=lambda e: (sum(co1[e][p] for p in order), deg1[e], -e),
        )
        order.append(best)
        placed.add(best)
    position = {e: t for t, e in enumerate(order)}
    completes = [[] for _ in range(n)]
    for h in m1.chs:
        completes[max(position[e] for e in members(h))].append(h)
    chs2_by = [[h for h in m2.chs if h >> f & 1] for f in range(n)]

    image = [-1] * n
    inverse = [-1] * n

    def mapped(mask, table):
        out = 0
        for e in members(mask):
            out |= 1 << table[e]
        return out

    def extend(t, used_mask):
        if t == n:
            return True
        e = order[t]
        for f in range(n):
            if used_mask >> f & 1 or deg2[f] != deg1[e]:
                continue
            if any(co1[e][p] != co2[f][image[p]] for p in order[:t]):
                continue
            image[e] = f
            inverse[f] = e
            new_used = used_mask | (1 << f)
            ok = all(mapped(h, image) in m2.chs for h in completes[t])
            if ok:
                ok = all(mapped(h, inverse) in m1.chs for h in chs2_by[f] if h & ~new_used == 0)
            if ok and extend(t + 1, new_used):
                return True
            image[e] = -1
            inverse[f] = -1
        return False

    if extend(0, 0):
        return tuple(image)
    return None
