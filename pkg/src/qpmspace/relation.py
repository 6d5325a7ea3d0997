"""Binary relations on ``{0..n-1}`` as row bitmasks, and finite entourage bases.

A relation ``R`` is a tuple ``rows`` with ``rows[x]`` the mask of ``R(x) = {y : (x, y) in R}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .bits import full, is_subset, members

Relation = tuple[int, ...]


def diagonal(n: int) -> Relation:
    return tuple(1 << x for x in range(n))


def total(n: int) -> Relation:
    return (full(n),) * n


def from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
    rows = [0] * n
    for a, b in pairs:
        rows[a] |= 1 << b
    return tuple(rows)


def to_pairs(r: Relation) -> frozenset[tuple[int, int]]:
    return frozenset((x, y) for x, row in enumerate(r) for y in members(row))


def inverse(r: Relation) -> Relation:
    out = [0] * len(r)
    for x, row in enumerate(r):
        for y in members(row):
            out[y] |= 1 << x
    return tuple(out)


def compose(r: Relation, s: Relation) -> Relation:
    """``{(x, z) : (x, y) in r, (y, z) in s}``."""
    out = []
    for row in r:
        acc = 0
        for y in members(row):
            acc |= s[y]
        out.append(acc)
    return tuple(out)


def meet(r: Relation, s: Relation) -> Relation:
    return tuple(a & b for a, b in zip(r, s))


def contains(big: Relation, small: Relation) -> bool:
    return all(is_subset(b, a) for a, b in zip(big, small))


def is_transitive(r: Relation) -> tuple[int, int, int] | None:
    """``None`` if transitive, else a triple ``(x, y, z)`` with ``(x,y),(y,z)`` in ``r`` and ``(x,z)`` not."""
    for x, row in enumerate(r):
        for y in members(row):
            missing = r[y] & ~row
            if missing:
                return (x, y, members(missing)[0])
    return None


def _key(r: Relation) -> tuple:
    return (-sum(row.bit_count() for row in r), r)


@dataclass(frozen=True)
class EntourageBase:
    """Finite base of a quasi-uniformity: relations that all contain the diagonal.

    Members are kept duplicate-free, largest first.
    """

    n: int
    relations: tuple[Relation, ...]

    def __post_init__(self):
        diag = diagonal(self.n)
        seen = []
        for r in self.relations:
            r = tuple(r)
            if len(r) != self.n:
                raise ValueError(f"relation has {len(r)} rows, expected {self.n}")
            if not contains(r, diag):
                raise ValueError("every entourage must contain the diagonal")
            if r not in seen:
                seen.append(r)
        if not seen:
            raise ValueError("an entourage base needs at least one member")
        object.__setattr__(self, "relations", tuple(sorted(seen, key=_key)))

    @classmethod
    def of(cls, n: int, relations: Iterable[Relation]) -> "EntourageBase":
        return cls(n, tuple(relations))

    def __iter__(self):
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def core(self) -> Relation:
        acc = total(self.n)
        for r in self.relations:
            acc = meet(acc, r)
        return acc

    def composable(self) -> tuple[Relation, ...]:
        """Members ``V`` with no member ``W`` satisfying ``W o W <= V`` (empty when the axiom holds)."""
        squares = [compose(w, w) for w in self.relations]
        return tuple(v for v in self.relations if not any(contains(v, s) for s in squares))

    def refines(self, other: "EntourageBase") -> bool:
        """Every member of ``other`` contains a member of ``self`` (``self`` generates a finer filter)."""
        return all(any(contains(v, u) for u in self.relations) for v in other.relations)

    def same_filter(self, other: "EntourageBase") -> bool:
        return self.refines(other) and other.refines(self)

    def intersection_closure(self) -> "EntourageBase":
        out = list(self.relations)
        seen = set(out)
        i = 0
        while i < len(out):
            for j in range(i + 1):
                m = meet(out[i], out[j])
                if m not in seen:
                    seen.add(m)
                    out.append(m)
            i += 1
        return EntourageBase(self.n, tuple(out))
