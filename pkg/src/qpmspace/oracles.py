"""Slow, definition-level reference implementations used to cross-check the fast paths.

Everything here works on frozensets of points and enumerates candidates
directly; nothing reuses the minimal-neighbourhood machinery of
:mod:`qpmspace.space`.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable

from .bits import members
from .space import FiniteSpace

Points = frozenset


def _powerset(items) -> list[frozenset]:
    items = list(items)
    return [frozenset(c) for r in range(len(items) + 1) for c in combinations(items, r)]


def _opens(space: FiniteSpace) -> set[frozenset]:
    return {frozenset(members(o)) for o in space.opens}


def _leq(space: FiniteSpace) -> set[tuple[int, int]]:
    return set(space.leq)


def generated_topology(n: int, subbasis: Iterable[frozenset]) -> set[frozenset]:
    """Close ``subbasis + {E}`` under pairwise intersection, then take all unions of the basis."""
    everything = frozenset(range(n))
    basis = {everything} | {frozenset(s) for s in subbasis}
    changed = True
    while changed:
        changed = False
        for a in list(basis):
            for b in list(basis):
                if a & b not in basis:
                    basis.add(a & b)
                    changed = True
    opens = set()
    for s in _powerset(range(n)):
        # s is open iff it is the union of the basis sets it contains
        inside = [b for b in basis if b <= s]
        if frozenset().union(*inside) == s:
            opens.add(s)
    return opens


def count_topologies(n: int) -> int:
    """Families of subsets containing the empty set and E, closed under union and intersection."""
    everything = frozenset(range(n))
    middle = [s for s in _powerset(range(n)) if s and s != everything]
    count = 0
    for bits in product((False, True), repeat=len(middle)):
        fam = {frozenset(), everything} | {s for s, b in zip(middle, bits) if b}
        if all(a | b in fam and a & b in fam for a in fam for b in fam):
            count += 1
    return count


def completely_regular_by_functions(space: FiniteSpace, values=(0, 1)) -> bool:
    """Complete regularity tested over every function ``E -> values``.

    On a finite value set the trace of the real topology is discrete, so a
    function is continuous iff every preimage of every subset of ``values`` is
    open.  Condition (a): whenever ``not x <= y`` some continuous isotone ``f``
    has ``f(x) > f(y)``.  Condition (b): the initial topology of the continuous
    isotone functions is the topology of the space.
    """
    n = space.n
    opens = _opens(space)
    leq = _leq(space)
    vals = sorted(set(values))
    value_subsets = _powerset(vals)
    good = []
    for f in product(vals, repeat=n):
        if any(f[x] > f[y] for x, y in leq):
            continue
        if all(frozenset(x for x in range(n) if f[x] in w) in opens for w in value_subsets):
            good.append(f)
    for x in range(n):
        for y in range(n):
            if (x, y) not in leq and not any(f[x] > f[y] for f in good):
                return False
    sub = [frozenset(x for x in range(n) if f[x] in w) for f in good for w in value_subsets]
    return generated_topology(n, sub) == opens


def is_closed_preordered(space: FiniteSpace) -> bool:
    """Graph closed: every pair outside it has a product neighbourhood missing it."""
    opens = _opens(space)
    leq = _leq(space)
    n = space.n
    for a in range(n):
        for b in range(n):
            if (a, b) in leq:
                continue
            separated = any(
                not any((u, v) in leq for u in oa for v in ob)
                for oa in opens
                if a in oa
                for ob in opens
                if b in ob
            )
            if not separated:
                return False
    return True


def is_semiclosed(space: FiniteSpace) -> bool:
    opens = _opens(space)
    n = space.n
    everything = frozenset(range(n))
    for x in range(n):
        up = frozenset(y for y in range(n) if space.le(x, y))
        down = frozenset(y for y in range(n) if space.le(y, x))
        if everything - up not in opens or everything - down not in opens:
            return False
    return True


def _monotone(space: FiniteSpace, s: frozenset, increasing: bool) -> bool:
    if increasing:
        return all(y in s for x in s for y in range(space.n) if space.le(x, y))
    return all(y in s for x in s for y in range(space.n) if space.le(y, x))


def is_convex(space: FiniteSpace) -> bool:
    opens = _opens(space)
    ups = [o for o in opens if _monotone(space, o, True)]
    downs = [o for o in opens if _monotone(space, o, False)]
    for x in range(space.n):
        for o in opens:
            if x in o and not any(x in u and x in v and u & v <= o for u in ups for v in downs):
                return False
    return True


def is_normally_preordered(space: FiniteSpace) -> bool:
    """Semiclosed, and disjoint closed decreasing ``A`` and closed increasing ``B``
    have disjoint open decreasing and open increasing neighbourhoods."""
    if not is_semiclosed(space):
        return False
    n = space.n
    everything = frozenset(range(n))
    opens = _opens(space)
    closed = {everything - o for o in opens}
    ups = [o for o in opens if _monotone(space, o, True)]
    downs = [o for o in opens if _monotone(space, o, False)]
    closed_down = [c for c in closed if _monotone(space, c, False)]
    closed_up = [c for c in closed if _monotone(space, c, True)]
    for a in closed_down:
        for b in closed_up:
            if a & b:
                continue
            if not any(a <= u and b <= v and not (u & v) for u in downs for v in ups):
                return False
    return True


def ball_topology(p, side: str = "p") -> set[frozenset]:
    """Topology generated by every open ball ``B(x, r)`` for every positive threshold ``r``."""
    n = p.n
    radii = sorted({p.value(x, y, side) for x in range(n) for y in range(n)} - {0})
    radii.append(radii[-1] + 1 if radii else 1)
    balls = [
        frozenset(y for y in range(n) if p.value(x, y, side) < r)
        for x in range(n)
        for r in radii
    ]
    return generated_topology(n, balls)
