"""Finite quasi-uniformities: bases from metrics and from function families.

On a finite set a filter of relations has a least member, so every base
stabilises after finitely many distinct members.  Threshold sweeps below only
visit the thresholds at which the relation actually changes, plus an infinite
threshold giving ``E x E``; the filter generated is the same as for ``1/k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bits import SubsetFamily, mask
from .errors import DimensionMismatch
from .qpm import QPM
from .relation import (
    EntourageBase,
    Relation,
    contains,
    inverse,
    is_transitive,
    meet,
    to_pairs,
    total,
)
from .space import FiniteSpace, _close_preorder, topology_from_subbasis
from .synthesis import FnFamily, IsotoneFn, family_conditions
from .verdict import OK, Check, fail, skip


def _threshold_relations(n: int, value) -> list[Relation]:
    """``{(x, y) : value(x, y) < t}`` for each distinct positive value ``t``, plus ``E x E``."""
    vals = sorted({value(x, y) for x in range(n) for y in range(n)} - {Fraction(0)})
    vals = [v for v in vals if v > 0]
    rels = [
        tuple(mask(y for y in range(n) if value(x, y) < t) for x in range(n))
        for t in vals
    ]
    rels.append(total(n))
    return rels


def base_from_qpm(p: QPM) -> EntourageBase:
    """Distinct relations ``{p < r}``; the smallest is ``{p = 0}``."""
    return EntourageBase.of(p.n, _threshold_relations(p.n, lambda x, y: p.m[x][y]))


def _function_base(n: int, family: Sequence[IsotoneFn], symmetric: bool) -> EntourageBase:
    rels: list[Relation] = [total(n)]
    for f in family:
        if symmetric:
            rels += _threshold_relations(n, lambda x, y, f=f: abs(f(x) - f(y)))
        else:
            rels += _threshold_relations(n, lambda x, y, f=f: max(f(x) - f(y), Fraction(0)))
    return EntourageBase.of(n, rels).intersection_closure()


def weak_base_from_family(space: FiniteSpace, family: Sequence[IsotoneFn]) -> EntourageBase:
    """Weak quasi-uniformity of ``family``: subbase ``{f(x) - f(y) < t}``, closed under intersection."""
    return _function_base(space.n, family, symmetric=False)


def weak_uniformity_from_family(space: FiniteSpace, family: Sequence[IsotoneFn]) -> EntourageBase:
    """Weak uniformity of ``family``: subbase ``{|f(x) - f(y)| < t}``."""
    return _function_base(space.n, family, symmetric=True)


def star(base: EntourageBase) -> EntourageBase:
    """All ``V & W^-1``: a base of the coarsest uniformity containing the quasi-uniformity.

    ``base`` is first closed under intersection so that the result is a filter base.
    """
    closed = base.intersection_closure()
    out = EntourageBase.of(base.n, (meet(v, inverse(w)) for v in closed for w in closed))
    assert not out.composable(), "star base lost the square-root axiom"
    assert is_inversion_closed(out), "star base does not generate a uniformity"
    return out


def is_inversion_closed(base: EntourageBase) -> bool:
    """The generated filter contains ``V^-1`` for each member ``V``."""
    return all(any(contains(inverse(v), u) for u in base) for v in base)


def core_preorder(base: EntourageBase) -> frozenset[tuple[int, int]]:
    core = base.core()
    assert is_transitive(core) is None, "core of a quasi-uniformity must be transitive"
    return to_pairs(core)


def sym_topology(base: EntourageBase) -> SubsetFamily:
    """Topology of the uniformity ``star(base)``: ``O`` is open iff each ``x in O`` has ``U(x) <= O``.

    The neighbourhood filter at ``x`` has least member ``core(star)(x)``, so the
    open sets are exactly those closed under that relation.
    """
    s = star(base)
    reach = _close_preorder(base.n, list(s.core()))
    return topology_from_subbasis(base.n, reach)


@dataclass(frozen=True)
class AppendixReport:
    """Preconditions and conclusions of the weak quasi-uniformity construction.

    ``status`` is ``"skip"`` if a precondition failed (conclusions are still
    evaluated and reported), otherwise ``"ok"`` or ``"fail"``.
    """

    status: str
    checks: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == "ok"


def _uniformly_continuous(uniformity: EntourageBase, f: IsotoneFn) -> Check:
    n = uniformity.n
    for rel in _threshold_relations(n, lambda x, y: abs(f(x) - f(y))):
        if not any(contains(rel, u) for u in uniformity):
            return fail(rel)
    return OK


def appendix_check(space: FiniteSpace, uniformity: EntourageBase, family: Sequence[IsotoneFn]) -> AppendixReport:
    for f in family:
        if len(f.values) != space.n:
            raise DimensionMismatch(f"family function has {len(f.values)} values, space has {space.n} points")
    if uniformity.n != space.n:
        raise DimensionMismatch(f"uniformity is on {uniformity.n} points, space has {space.n}")
    checks: dict[str, Check] = {}
    uc = OK
    for f in family:
        c = _uniformly_continuous(uniformity, f)
        if not c:
            uc = fail((f.values, c.witness))
            break
    checks["uniformly_continuous"] = uc
    weak_uni = weak_uniformity_from_family(space, family)
    checks["condition_i"] = OK if weak_uni.same_filter(uniformity) else fail("weak uniformity differs")
    n = space.n
    bad = next(
        (
            (x, y)
            for x in range(n)
            for y in range(n)
            if space.le(x, y) != all(f(x) <= f(y) for f in family)
        ),
        None,
    )
    checks["condition_ii"] = OK if bad is None else fail(bad)

    weak = weak_base_from_family(space, family)
    checks["star_equals_uniformity"] = (
        OK if star(weak).same_filter(uniformity) else fail("star of weak quasi-uniformity differs")
    )
    core = core_preorder(weak)
    diff = sorted(core ^ space.leq)
    checks["core_equals_preorder"] = OK if not diff else fail(diff[0])

    pre = ("uniformly_continuous", "condition_i", "condition_ii")
    if not all(checks[k] for k in pre):
        status = "skip"
        for k in pre:
            if not checks[k]:
                checks[k] = skip(checks[k].witness)
    elif checks["star_equals_uniformity"] and checks["core_equals_preorder"]:
        status = "ok"
    else:
        status = "fail"
    return AppendixReport(status, checks)


def reduce_family(space: FiniteSpace, family: Sequence[IsotoneFn]) -> FnFamily:
    """Greedy pass in family order dropping every function not needed for (i) and (ii).

    Deterministic, not guaranteed to reach minimum cardinality.
    """
    provenance = getattr(family, "provenance", "user-supplied")
    current = list(FnFamily(family))
    pre = family_conditions(space, current)
    if not pre:
        raise ValueError(f"family does not satisfy conditions (i) and (ii): {pre.witness}")
    for f in list(current):
        trial = [g for g in current if g != f]
        if family_conditions(space, trial):
            current = trial
    out = FnFamily(current, provenance=provenance)
    assert family_conditions(space, out)
    return out


__all__ = [
    "EntourageBase",
    "AppendixReport",
    "base_from_qpm",
    "weak_base_from_family",
    "weak_uniformity_from_family",
    "star",
    "is_inversion_closed",
    "core_preorder",
    "sym_topology",
    "appendix_check",
    "reduce_family",
]
