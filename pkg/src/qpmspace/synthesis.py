"""Building admissible quasi-pseudo-metrics from continuous isotone functions.

The metric attached to a family ``f_1, f_2, ...`` is

    p(x, y) = sum_k 2**-k * max(f_k(x) - f_k(y), 0),

a weighted sum of pullbacks of the real line's ``max(a - b, 0)``.  On a
completely regularly preordered finite space the indicator functions of the
non-trivial clopen increasing sets form a family that determines both the
topology and the preorder, which makes the metric admissible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .bits import SubsetFamily, mask, members
from .errors import EmptyFamily, NonTransitiveCore, NotCompletelyRegular
from .qpm import QPM, bound_by_one, is_admissible, is_strictly_admissible, _frac
from .relation import EntourageBase, is_transitive
from .space import (
    FiniteSpace,
    is_completely_regular_preordered,
    is_I_space,
    topology_from_subbasis,
)
from .verdict import OK, Check, fail, skip


@dataclass(frozen=True)
class IsotoneFn:
    """A function from the points to [0, 1], stored as exact values."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_frac(v) for v in self.values))

    @classmethod
    def indicator(cls, n: int, s) -> "IsotoneFn":
        m = mask(s)
        return cls(tuple(Fraction(m >> x & 1) for x in range(n)))

    @classmethod
    def constant(cls, n: int, v=0) -> "IsotoneFn":
        return cls((_frac(v),) * n)

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def __len__(self) -> int:
        return len(self.values)

    def level_set(self, v, *, strict: bool = False) -> int:
        v = _frac(v)
        if strict:
            return mask(x for x, fx in enumerate(self.values) if fx > v)
        return mask(x for x, fx in enumerate(self.values) if fx >= v)

    def sublevel_set(self, v) -> int:
        v = _frac(v)
        return mask(x for x, fx in enumerate(self.values) if fx <= v)


class FnFamily(tuple):
    """Ordered, duplicate-free tuple of :class:`IsotoneFn` with a provenance tag."""

    def __new__(cls, functions: Iterable[IsotoneFn] = (), provenance: str = "user-supplied"):
        seen = []
        for f in functions:
            if f not in seen:
                seen.append(f)
        self = super().__new__(cls, seen)
        self.provenance = provenance
        return self

    def __getnewargs__(self):
        return (tuple(self), self.provenance)

    def __repr__(self) -> str:
        body = ", ".join("(" + ",".join(map(str, f.values)) + ")" for f in self)
        return f"FnFamily([{body}], provenance={self.provenance!r})"


def check_isotone_continuous(space: FiniteSpace, f: IsotoneFn) -> Check:
    """Values in [0, 1], isotone, and every upper level set above the minimum clopen.

    Witness: ``("range", x)``, ``("isotone", (x, y))`` or ``("continuity", (v, level_set))``.
    """
    if len(f) != space.n:
        raise ValueError(f"function has {len(f)} values, space has {space.n} points")
    for x, v in enumerate(f.values):
        if not 0 <= v <= 1:
            return fail(("range", x))
    for x in range(space.n):
        for y in members(space.up[x]):
            if f(x) > f(y):
                return fail(("isotone", (x, y)))
    if space.n:
        lo = min(f.values)
        for v in sorted(set(f.values)):
            if v == lo:
                continue
            level = f.level_set(v)
            if not (space.is_open(level) and space.is_closed(level)):
                return fail(("continuity", (v, level)))
    return OK


def initial_subbasis(n: int, family: Iterable[IsotoneFn]) -> list[int]:
    """Preimages ``{f > a}`` and ``{f < a}`` over all thresholds that give distinct sets."""
    out = []
    for f in family:
        vals = sorted(set(f.values))
        for lo, hi in zip(vals, vals[1:]):
            out.append(f.level_set(hi))
            out.append(f.sublevel_set(lo))
    return out


def initial_topology(n: int, family: Iterable[IsotoneFn]) -> SubsetFamily:
    return topology_from_subbasis(n, initial_subbasis(n, family))


def family_conditions(space: FiniteSpace, family: Sequence[IsotoneFn]) -> Check:
    """(i) the initial topology of the family is the topology; (ii) it determines the preorder.

    Witness: ``("topology", O)`` for an open set of one topology missing from the
    other, or ``("preorder", (x, y))``.
    """
    gen = initial_topology(space.n, family)
    if gen != space.opens:
        diff = next(o for o in set(gen) ^ set(space.opens))
        return fail(("topology", diff))
    for x in range(space.n):
        for y in range(space.n):
            if space.le(x, y) != all(f(x) <= f(y) for f in family):
                return fail(("preorder", (x, y)))
    return OK


def separating_family(space: FiniteSpace) -> FnFamily:
    """Indicators of the non-trivial clopen increasing sets, by cardinality then bitmask."""
    cr = is_completely_regular_preordered(space)
    if not cr:
        raise NotCompletelyRegular(cr.witness)
    E = space.points
    fam = FnFamily(
        (IsotoneFn.indicator(space.n, u) for u in space.clopen_increasing if u not in (0, E)),
        provenance="clopen-indicator",
    )
    ok = family_conditions(space, fam)
    assert ok, f"separating family failed its own conditions: {ok.witness}"
    return fam


def metric_of_family(n: int, family: Sequence[IsotoneFn]) -> QPM:
    """``sum_k 2**-k max(f_k(x) - f_k(y), 0)``, k counted from 1 in family order."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    weight = Fraction(1)
    for f in family:
        weight /= 2
        vals = f.values
        for x in range(n):
            fx = vals[x]
            row = rows[x]
            for y in range(n):
                if fx > vals[y]:
                    row[y] += weight * (fx - vals[y])
    return QPM.from_rows(rows)


def metrize_from_family(space: FiniteSpace, family: Sequence[IsotoneFn]) -> QPM:
    if not family:
        raise EmptyFamily("cannot build a metric from an empty family")
    for f in family:
        c = check_isotone_continuous(space, f)
        if not c:
            raise ValueError(f"family member {f.values} is not continuous isotone: {c.witness}")
    p = metric_of_family(space.n, family)
    if family_conditions(space, family):
        verdict = is_admissible(space, p)
        assert verdict.admissible, f"metric from a separating family is not admissible: {verdict.failures}"
    return p


def metrize(space: FiniteSpace) -> QPM:
    """An admissible quasi-pseudo-metric, or :class:`NotCompletelyRegular`.

    A space whose only clopen increasing sets are trivial gets the zero metric
    (the empty weighted sum).
    """
    fam = separating_family(space)
    if not fam:
        p = QPM.zero(space.n)
        assert is_admissible(space, p).admissible
        return p
    return metrize_from_family(space, fam)


# -- products ---------------------------------------------------------------


def product_points(sizes: Sequence[int]) -> list[tuple[int, ...]]:
    """Coordinate tuples in lexicographic order; position in the list is the product point id."""
    return list(itertools.product(*(range(k) for k in sizes)))


def product_space(factors: Sequence[FiniteSpace]) -> tuple[FiniteSpace, list[tuple[int, ...]]]:
    """Product topology and product preorder.  Only feasible for small total point counts."""
    coords = product_points([f.n for f in factors])
    N = len(coords)
    cylinders = []
    for k, fac in enumerate(factors):
        for o in fac.opens:
            cylinders.append(mask(i for i, c in enumerate(coords) if o >> c[k] & 1))
    opens = topology_from_subbasis(N, cylinders)
    up = [
        mask(j for j, d in enumerate(coords) if all(fac.le(a, b) for fac, a, b in zip(factors, c, d)))
        for c in coords
    ]
    name = " x ".join(f.name or "?" for f in factors)
    return FiniteSpace.from_up(N, opens, up, name), coords


def product_metric(metrics: Sequence[QPM], coords: Sequence[tuple[int, ...]]) -> QPM:
    bounded = [bound_by_one(p) for p in metrics]
    weights = [Fraction(1, 2 ** (k + 1)) for k in range(len(metrics))]
    rows = [
        [sum((w * p.m[a][b] for w, p, a, b in zip(weights, bounded, c, d)), Fraction(0)) for d in coords]
        for c in coords
    ]
    return QPM.from_rows(rows)


def product(factors: Sequence[tuple[FiniteSpace, QPM]]) -> tuple[FiniteSpace, QPM]:
    """Product space with ``p = sum_k 2**-k min(p_k, 1)`` on coordinates (k from 1).

    When every factor metric is admissible the result is re-verified admissible.
    """
    if not factors:
        raise ValueError("product of an empty list")
    spaces = [s for s, _ in factors]
    metrics = [p for _, p in factors]
    space, coords = product_space(spaces)
    p = product_metric(metrics, coords)
    if all(is_admissible(s, m).admissible for s, m in factors):
        verdict = is_admissible(space, p)
        assert verdict.admissible, f"product metric not admissible: {verdict.failures}"
    return space, p


def slice_support(coords: Sequence[tuple[int, ...]], axis: int, base: tuple[int, ...]) -> int:
    """Product points agreeing with ``base`` off ``axis``; ascending id order matches the factor's order."""
    return mask(
        i for i, c in enumerate(coords)
        if all(c[k] == base[k] for k in range(len(base)) if k != axis)
    )


def strict_metric_candidate(space: FiniteSpace) -> QPM:
    """0/1 metric whose zero-balls are the least open increasing neighbourhoods.

    ``T(p)`` is then the upper topology, and any metric with ``T(p)`` equal to the
    upper topology has the same ``T(q)`` as this one, so the space is strictly
    quasi-pseudo-metrizable iff this candidate is strictly admissible.
    """
    nb = space.upper_neighbourhood
    return QPM.from_rows([[0 if nb[x] >> y & 1 else 1 for y in range(space.n)] for x in range(space.n)])


def is_strictly_quasi_pseudo_metrizable(space: FiniteSpace) -> bool:
    return bool(is_strictly_admissible(space, strict_metric_candidate(space)).strict)


def check_product_upper_topology(factors: Sequence[FiniteSpace]) -> Check:
    """Upper (lower) topology of the product equals the product of the factors' upper (lower) topologies.

    Skipped, with the offending factor index, unless every factor is a strictly
    quasi-pseudo-metrizable I-space.  Witness: ``("upper" | "lower", O)``.
    """
    for k, fac in enumerate(factors):
        if not is_I_space(fac):
            return skip(("not an I-space", k))
        if not is_strictly_quasi_pseudo_metrizable(fac):
            return skip(("not strictly quasi-pseudo-metrizable", k))
    space, coords = product_space(factors)
    for label, attr in (("upper", "upper"), ("lower", "lower")):
        cylinders = []
        for k, fac in enumerate(factors):
            for o in getattr(fac, attr):
                cylinders.append(mask(i for i, c in enumerate(coords) if o >> c[k] & 1))
        expected = topology_from_subbasis(space.n, cylinders)
        actual = getattr(space, attr)
        if expected != actual:
            diff = next(iter(set(expected) ^ set(actual)))
            return fail((label, diff))
    return OK


def qpm_from_entourage_base(space: FiniteSpace, base: EntourageBase) -> QPM:
    """0/1 metric vanishing exactly on the core ``W`` of a stabilised base.

    Raises :class:`NonTransitiveCore` if ``W o W`` is not contained in ``W``.
    """
    if base.n != space.n:
        raise ValueError(f"base is on {base.n} points, space has {space.n}")
    core = base.core()
    bad = is_transitive(core)
    if bad is not None:
        raise NonTransitiveCore(bad)
    n = space.n
    return QPM.from_rows([[0 if core[x] >> y & 1 else 1 for y in range(n)] for x in range(n)])


__all__ = [
    "IsotoneFn",
    "FnFamily",
    "check_isotone_continuous",
    "initial_topology",
    "family_conditions",
    "separating_family",
    "metric_of_family",
    "metrize_from_family",
    "metrize",
    "product_points",
    "product_space",
    "product_metric",
    "product",
    "slice_support",
    "strict_metric_candidate",
    "is_strictly_quasi_pseudo_metrizable",
    "check_product_upper_topology",
    "qpm_from_entourage_base",
]
