"""Subsets of a small ground set stored as machine-word bitmasks."""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_GROUND = 64


class ElementSet(int):
    """An immutable subset of ``{0, ..., 63}`` backed by an ``int`` bitmask.

    Being an ``int`` subclass, an ``ElementSet`` hashes and compares exactly
    like its mask, so plain masks can be used to look one up in a set.
    The arithmetic operators are redefined as set algebra: ``|`` union,
    ``&`` intersection, ``-`` difference, ``^`` symmetric difference.
    """

    __slots__ = ()

    def __new__(cls, mask: int = 0) -> ElementSet:
        if mask < 0:
            raise ValueError("mask must be non-negative")
        return super().__new__(cls, mask)

    @classmethod
    def of(cls, members: Iterable[int]) -> ElementSet:
        mask = 0
        for m in members:
            if not 0 <= m < MAX_GROUND:
                raise ValueError(f"element index {m} outside 0..{MAX_GROUND - 1}")
            mask |= 1 << m
        return cls(mask)

    @classmethod
    def full(cls, n: int) -> ElementSet:
        return cls((1 << n) - 1)

    @property
    def mask(self) -> int:
        return int(self)

    def __iter__(self) -> Iterator[int]:
        return iter(members(self))

    def __len__(self) -> int:
        return int(self).bit_count()

    def __contains__(self, item: object) -> bool:
        return isinstance(item, int) and item >= 0 and bool(int(self) >> item & 1)

    def __or__(self, other: int) -> ElementSet:
        return ElementSet(int(self) | int(other))

    def __and__(self, other: int) -> ElementSet:
        return ElementSet(int(self) & int(other))

    def __sub__(self, other: int) -> ElementSet:
        return ElementSet(int(self) & ~int(other))

    def __xor__(self, other: int) -> ElementSet:
        return ElementSet(int(self) ^ int(other))

    __ror__ = __or__
    __rand__ = __and__
    __rxor__ = __xor__

    def complement(self, n: int) -> ElementSet:
        return ElementSet(((1 << n) - 1) & ~int(self))

    def issubset(self, other: int) -> bool:
        return int(self) & ~int(other) == 0

    def issuperset(self, other: int) -> bool:
        return int(other) & ~int(self) == 0

    def __repr__(self) -> str:
        return f"ElementSet({{{', '.join(map(str, self))}}})"

    __str__ = __repr__


def members(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()
