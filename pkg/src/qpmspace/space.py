"""Finite topological preordered spaces ``(E, T, <=)`` and their separation properties.

Points are ``0..n-1``; every subset is an ``int`` bitmask (see :mod:`qpmspace.bits`).
A finite topology is closed under arbitrary intersections, so each point has a
least open neighbourhood, and most decisions below reduce to a few fixpoints over
those neighbourhoods instead of searches over pairs of open sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .bits import SubsetFamily, Subset, full, is_subset, mask, members
from .errors import InvalidSpace
from .verdict import OK, Check, fail


def _close_preorder(n: int, up: list[int]) -> list[int]:
    up = [u | (1 << x) for x, u in enumerate(up)]
    for k in range(n):
        bit = 1 << k
        uk = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= uk
    return up


def _validate_topology(n: int, opens: Iterable[int]) -> None:
    E = full(n)
    fam = set(opens)
    if 0 not in fam or E not in fam:
        raise InvalidSpace("topology must contain the empty set and the whole space")
    for o in fam:
        if o & ~E:
            raise InvalidSpace(f"open set {members(o)} has points outside 0..{n - 1}")
    lst = list(fam)
    for i, a in enumerate(lst):
        for b in lst[i + 1:]:
            if a | b not in fam or a & b not in fam:
                raise InvalidSpace(
                    f"topology not closed under union/intersection at {members(a)}, {members(b)}"
                )


def minimal_neighbourhoods(n: int, family: Iterable[int]) -> tuple[int, ...]:
    """For each point, the intersection of all members of ``family`` containing it (and E)."""
    nb = [full(n)] * n
    for o in family:
        for x in members(o):
            nb[x] &= o
    return tuple(nb)


def _unions_of(n: int, blocks: Sequence[int]) -> SubsetFamily:
    out = {0}
    for b in set(blocks):
        out |= {o | b for o in out}
    return SubsetFamily(out)


def topology_from_subbasis(n: int, family: Iterable[Subset]) -> SubsetFamily:
    """Smallest topology on ``n`` points containing every member of ``family``.

    Finite intersections of the subbasis give a base; in a finite space the base
    element around ``x`` can be taken to be the intersection of all subbasis
    members holding ``x``, and every open set is the union of those.
    """
    fam = [mask(s) for s in family]
    E = full(n)
    for s in fam:
        if s & ~E:
            raise InvalidSpace(f"subbasis member {members(s)} exceeds {n} points")
    return _unions_of(n, minimal_neighbourhoods(n, fam)) if n else SubsetFamily([0])


@dataclass(frozen=True)
class FiniteSpace:
    """A finite topological preordered space.

    ``opens`` is the topology as a :class:`SubsetFamily`; ``up[x]`` is the mask of
    ``i(x) = {y : x <= y}``.  Build instances with :meth:`build` (which validates
    and closes the preorder) unless the data is known to be well formed.
    """

    n: int
    opens: SubsetFamily
    up: tuple[int, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def build(
        cls,
        n: int,
        opens: Iterable[Subset],
        leq: Iterable[tuple[int, int]] = (),
        *,
        name: str = "",
        strict: bool = False,
    ) -> "FiniteSpace":
        if n < 0:
            raise InvalidSpace("point count must be non-negative")
        fam = SubsetFamily(opens)
        _validate_topology(n, fam)
        raw = [0] * n
        for a, b in leq:
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidSpace(f"leq pair ({a},{b}) outside 0..{n - 1}")
            raw[a] |= 1 << b
        # reflexive pairs may be omitted, even in strict mode
        raw = [r | 1 << x for x, r in enumerate(raw)]
        up = _close_preorder(n, raw)
        if strict:
            if up != raw:
                x = next(i for i in range(n) if up[i] != raw[i])
                y = members(up[x] & ~raw[x])[0]
                raise InvalidSpace(f"leq is not transitive: {x} <= {y} is implied but missing")
        return cls(n, fam, tuple(up), name)

    @classmethod
    def from_up(cls, n: int, opens: Iterable[int], up: Sequence[int], name: str = "") -> "FiniteSpace":
        """Unvalidated constructor for generated data (``up`` already a closed preorder)."""
        return cls(n, opens if isinstance(opens, SubsetFamily) else SubsetFamily(opens), tuple(up), name)

    # -- derived structure -------------------------------------------------

    @property
    def points(self) -> int:
        return full(self.n)

    @cached_property
    def down(self) -> tuple[int, ...]:
        down = [0] * self.n
        for x, u in enumerate(self.up):
            for y in members(u):
                down[y] |= 1 << x
        return tuple(down)

    @property
    def leq(self) -> frozenset[tuple[int, int]]:
        return frozenset((x, y) for x in range(self.n) for y in members(self.up[x]))

    def le(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    @cached_property
    def open_set(self) -> frozenset[int]:
        return frozenset(self.opens)

    def is_open(self, s: Subset) -> bool:
        return mask(s) in self.open_set

    def is_closed(self, s: Subset) -> bool:
        return self.points & ~mask(s) in self.open_set

    @cached_property
    def neighbourhood(self) -> tuple[int, ...]:
        """Least open set containing each point."""
        return minimal_neighbourhoods(self.n, self.opens)

    @cached_property
    def upper(self) -> SubsetFamily:
        return SubsetFamily(o for o in self.opens if increasing_hull(self, o) == o)

    @cached_property
    def lower(self) -> SubsetFamily:
        return SubsetFamily(o for o in self.opens if decreasing_hull(self, o) == o)

    @cached_property
    def upper_neighbourhood(self) -> tuple[int, ...]:
        return minimal_neighbourhoods(self.n, self.upper)

    @cached_property
    def lower_neighbourhood(self) -> tuple[int, ...]:
        return minimal_neighbourhoods(self.n, self.lower)

    @cached_property
    def clopen_increasing(self) -> SubsetFamily:
        return SubsetFamily(o for o in self.upper if self.is_closed(o))

    @cached_property
    def clopen_decreasing(self) -> SubsetFamily:
        return SubsetFamily(o for o in self.lower if self.is_closed(o))

    def is_antisymmetric(self) -> bool:
        return all(self.up[x] & self.down[x] == 1 << x for x in range(self.n))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        opens = ", ".join("{" + ",".join(map(str, members(o))) + "}" for o in self.opens)
        pairs = ", ".join(f"{x}<={y}" for x, y in sorted(self.leq) if x != y)
        return f"<FiniteSpace{label} n={self.n} opens=[{opens}] order=[{pairs}]>"


# -- hulls, closure, interior ---------------------------------------------


def increasing_hull(space: FiniteSpace, s: Subset) -> int:
    out = 0
    for x in members(mask(s)):
        out |= space.up[x]
    return out


def decreasing_hull(space: FiniteSpace, s: Subset) -> int:
    out = 0
    for x in members(mask(s)):
        out |= space.down[x]
    return out


def upper_topology(space: FiniteSpace) -> SubsetFamily:
    return space.upper


def lower_topology(space: FiniteSpace) -> SubsetFamily:
    return space.lower


def interior(space: FiniteSpace, s: Subset) -> int:
    s = mask(s)
    out = 0
    for x in members(s):
        if is_subset(space.neighbourhood[x], s):
            out |= 1 << x
    return out


def closure(space: FiniteSpace, s: Subset) -> int:
    return space.points & ~interior(space, space.points & ~mask(s))


def _interior_in(nbhd: Sequence[int], s: int) -> int:
    out = 0
    for x in members(s):
        if is_subset(nbhd[x], s):
            out |= 1 << x
    return out


def _hull_in(nbhd: Sequence[int], s: int) -> int:
    out = 0
    for x in members(s):
        out |= nbhd[x]
    return out


# -- separation and convexity ---------------------------------------------


def is_semiclosed(space: FiniteSpace) -> Check:
    """``i(x)`` and ``d(x)`` closed for every ``x``; witness is the first offending point."""
    for x in range(space.n):
        if not space.is_closed(space.up[x]) or not space.is_closed(space.down[x]):
            return fail(x)
    return OK


def is_closed_preordered(space: FiniteSpace) -> Check:
    """Graph of the preorder closed in ``T x T``.

    ``(a, b)`` lies in the closure of the graph iff the basic box
    ``N(a) x N(b)`` meets it, i.e. iff ``i(N(a))`` meets ``N(b)``.
    Witness: a pair in the closure but not in the graph.
    """
    nb = space.neighbourhood
    for a in range(space.n):
        reach = increasing_hull(space, nb[a])
        for b in range(space.n):
            if not space.le(a, b) and reach & nb[b]:
                return fail((a, b))
    return OK


def is_convex(space: FiniteSpace) -> Check:
    """Every neighbourhood of ``x`` contains ``U & V`` with ``U`` open decreasing, ``V`` open increasing.

    It suffices to test ``O = N(x)`` against the least such ``U`` and ``V``.
    Witness: ``(x, N(x))``.
    """
    for x in range(space.n):
        if not is_subset(space.lower_neighbourhood[x] & space.upper_neighbourhood[x], space.neighbourhood[x]):
            return fail((x, space.neighbourhood[x]))
    return OK


def _closed_monotone(space: FiniteSpace) -> tuple[list[int], list[int]]:
    E = space.points
    closed = [E & ~o for o in space.opens]
    dec = [a for a in closed if decreasing_hull(space, a) == a]
    inc = [b for b in closed if increasing_hull(space, b) == b]
    return dec, inc


def separable(space: FiniteSpace, a: int, b: int) -> bool:
    """Whether disjoint ``a`` (decreasing) and ``b`` (increasing) have disjoint open monotone hulls.

    The least open decreasing superset of ``a`` is the union of least lower
    neighbourhoods; separation holds iff ``b`` sits inside the largest open
    increasing set avoiding it.
    """
    u = _hull_in(space.lower_neighbourhood, a)
    v = _interior_in(space.upper_neighbourhood, space.points & ~u)
    return is_subset(b, v)


def separable_bruteforce(space: FiniteSpace, a: int, b: int) -> bool:
    return any(
        is_subset(a, u) and is_subset(b, v) and not u & v
        for u in space.lower
        for v in space.upper
    )


def is_normally_preordered(space: FiniteSpace, *, bruteforce: bool = False) -> Check:
    """Semiclosed, and disjoint closed decreasing / closed increasing sets are separated.

    Witness: ``("not semiclosed", x)`` or the unseparated pair ``(A, B)``.
    """
    sc = is_semiclosed(space)
    if not sc:
        return fail(("not semiclosed", sc.witness))
    sep = separable_bruteforce if bruteforce else separable
    dec, inc = _closed_monotone(space)
    for a in dec:
        for b in inc:
            if not a & b and not sep(space, a, b):
                return fail((a, b))
    return OK


def is_regularly_preordered(space: FiniteSpace, *, bruteforce: bool = False) -> Check:
    """As normal preorder, but with ``B = i(x)`` (clause a) or ``A = d(x)`` (clause b)."""
    sc = is_semiclosed(space)
    if not sc:
        return fail(("not semiclosed", sc.witness))
    sep = separable_bruteforce if bruteforce else separable
    dec, inc = _closed_monotone(space)
    for x in range(space.n):
        b = space.up[x]
        for a in dec:
            if not a & b and not sep(space, a, b):
                return fail((a, b))
        a = space.down[x]
        for b in inc:
            if not a & b and not sep(space, a, b):
                return fail((a, b))
    return OK


def is_completely_regular_preordered(space: FiniteSpace) -> Check:
    """Complete preorder regularity via clopen monotone sets.

    A finite-range function into [0,1] is continuous and isotone iff its upper
    level sets are clopen increasing.  So the two defining conditions become:
    (a) ``x </= y`` is witnessed by a clopen increasing set holding ``x`` but not
    ``y``; (b) clopen increasing and clopen decreasing sets generate ``T``.
    Witness: ``("separation", (x, y))`` or ``("topology", O)`` for an open set
    the clopen monotone sets fail to generate.
    """
    least = minimal_neighbourhoods(space.n, space.clopen_increasing)
    for x in range(space.n):
        missed = least[x] & ~space.up[x]
        if missed:
            y = members(missed)[0]
            return fail(("separation", (x, y)))
    generated = topology_from_subbasis(
        space.n, list(space.clopen_increasing) + list(space.clopen_decreasing)
    )
    if generated != space.opens:
        extra = next(o for o in space.opens if o not in generated)
        return fail(("topology", extra))
    return OK


def is_I_space(space: FiniteSpace) -> Check:
    """Hulls of open sets are open. Witness: ``(O, "increasing" | "decreasing")``."""
    for o in space.opens:
        if increasing_hull(space, o) not in space.open_set:
            return fail((o, "increasing"))
        if decreasing_hull(space, o) not in space.open_set:
            return fail((o, "decreasing"))
    return OK


# -- quotients and subspaces ----------------------------------------------


def quotient(space: FiniteSpace) -> tuple[FiniteSpace, tuple[int, ...]]:
    """Collapse ``x ~ y`` (``x <= y <= x``); returns the ordered space and the projection.

    Classes are numbered by their least member.  The quotient topology consists of
    the images of saturated open sets.
    """
    n = space.n
    proj = [-1] * n
    classes: list[int] = []
    for x in range(n):
        if proj[x] < 0:
            cls = space.up[x] & space.down[x]
            for y in members(cls):
                proj[y] = len(classes)
            classes.append(cls)
    k = len(classes)

    def image(s: int) -> int:
        out = 0
        for x in members(s):
            out |= 1 << proj[x]
        return out

    def saturate(s: int) -> int:
        out = 0
        for c in members(image(s)):
            out |= classes[c]
        return out

    opens = SubsetFamily(image(o) for o in space.opens if saturate(o) == o)
    up = [image(space.up[members(cls)[0]]) for cls in classes]
    q = FiniteSpace.from_up(k, opens, up, name=f"{space.name}/~" if space.name else "")
    assert q.is_antisymmetric(), "quotient preorder must be an order"
    return q, tuple(proj)


def compress(s: int, support: int) -> int:
    """Relabel the bits of ``s`` inside ``support`` to ``0..|support|-1`` in ascending order."""
    out = 0
    for i, x in enumerate(members(support)):
        if s >> x & 1:
            out |= 1 << i
    return out


def expand(s: int, support: int) -> int:
    """Inverse of :func:`compress`."""
    pts = members(support)
    out = 0
    for i in members(s):
        out |= 1 << pts[i]
    return out


def subspace(space: FiniteSpace, s: Subset) -> FiniteSpace:
    """Induced topology (traces) and restricted preorder on ``s``, relabelled ascending."""
    s = mask(s)
    if s & ~space.points:
        raise InvalidSpace(f"{members(s)} is not a subset of the space")
    pts = members(s)
    opens = SubsetFamily(compress(o & s, s) for o in space.opens)
    up = [compress(space.up[x] & s, s) for x in pts]
    return FiniteSpace.from_up(len(pts), opens, up)


def is_preorder_subspace(space: FiniteSpace, s: Subset) -> Check:
    """Every open increasing (decreasing) set of the subspace is a trace of one of ``space``.

    Witness: ``("increasing" | "decreasing", W)`` with ``W`` in the original labels.
    """
    s = mask(s)
    sub = subspace(space, s)
    traces_up = {compress(o & s, s) for o in space.upper}
    traces_down = {compress(o & s, s) for o in space.lower}
    for w in sub.upper:
        if w not in traces_up:
            return fail(("increasing", expand(w, s)))
    for w in sub.lower:
        if w not in traces_down:
            return fail(("decreasing", expand(w, s)))
    return OK


# -- aggregated report -----------------------------------------------------

PROPERTY_CHECKS = {
    "semiclosed": is_semiclosed,
    "closed_preordered": is_closed_preordered,
    "convex": is_convex,
    "normally_preordered": is_normally_preordered,
    "regularly_preordered": is_regularly_preordered,
    "completely_regular_preordered": is_completely_regular_preordered,
    "i_space": is_I_space,
}


@dataclass(frozen=True)
class PropertyReport:
    semiclosed: bool
    closed_preordered: bool
    convex: bool
    normally_preordered: bool
    regularly_preordered: bool
    completely_regular_preordered: bool
    i_space: bool
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {name: getattr(self, name) for name in PROPERTY_CHECKS}


def property_report(space: FiniteSpace) -> PropertyReport:
    results = {name: check(space) for name, check in PROPERTY_CHECKS.items()}
    return PropertyReport(
        **{name: r.ok for name, r in results.items()},
        witnesses={name: r.witness for name, r in results.items() if not r.ok},
    )
