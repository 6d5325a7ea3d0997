"""Bitmask subsets of ``{0..n-1}`` and canonical families of them."""

from __future__ import annotations

from typing import Iterable, Iterator, Union

Subset = Union[int, Iterable[int]]


def mask(points: Subset) -> int:
    """Return the bitmask of ``points``; ints are passed through unchanged."""
    if isinstance(points, int):
        if points < 0:
            raise ValueError(f"negative mask {points}")
        return points
    m = 0
    for p in points:
        if p < 0:
            raise ValueError(f"negative point id {p}")
        m |= 1 << p
    return m


def members(m: int) -> tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def full(n: int) -> int:
    return (1 << n) - 1


def popcount(m: int) -> int:
    return m.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def subsets(m: int) -> Iterator[int]:
    """All submasks of ``m``, including 0 and ``m`` itself, ascending."""
    sub = 0
    while True:
        yield sub
        if sub == m:
            return
        sub = (sub - m) & m


def canonical_key(m: int) -> tuple[int, int]:
    return (m.bit_count(), m)


class SubsetFamily(tuple):
    """Duplicate-free family of bitmasks in canonical order (cardinality, then value).

    Being a tuple, two families are equal iff they hold the same sets.
    """

    def __new__(cls, family: Iterable[Subset] = ()):
        return super().__new__(cls, sorted({mask(s) for s in family}, key=canonical_key))

    def __contains__(self, item) -> bool:
        try:
            return self._set.__contains__(mask(item))
        except (TypeError, ValueError):
            return False

    @property
    def _set(self) -> frozenset[int]:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(tuple.__iter__(self))
            self.__dict__["_cached_set"] = s
        return s

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(members(m)) for m in self]

    def __repr__(self) -> str:
        inner = ", ".join("{" + ",".join(map(str, members(m))) + "}" for m in self)
        return f"SubsetFamily([{inner}])"


def format_mask(m: int) -> str:
    return "{" + ",".join(map(str, members(m))) + "}"
