from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from qpmspace.bits import SubsetFamily, mask
from qpmspace.qpm import QPM, SIERPINSKI, symmetrize
from qpmspace.quniform import (
    appendix_check,
    base_from_qpm,
    core_preorder,
    is_inversion_closed,
    reduce_family,
    star,
    sym_topology,
    weak_base_from_family,
)
from qpmspace.relation import (
    EntourageBase,
    compose,
    diagonal,
    from_pairs,
    inverse,
    is_transitive,
    to_pairs,
    total,
)
from qpmspace.space import is_completely_regular_preordered
from qpmspace.synthesis import IsotoneFn, family_conditions, metrize, separating_family

from .conftest import discrete, qpms, spaces


def fam(*sets):
    return SubsetFamily(mask(s) for s in sets)


def rel(n, pairs):
    return from_pairs(n, list(pairs) + [(x, x) for x in range(n)])


class TestRelation:
    def test_round_trip(self):
        r = from_pairs(3, [(0, 1), (1, 2)])
        assert to_pairs(r) == {(0, 1), (1, 2)}
        assert to_pairs(inverse(r)) == {(1, 0), (2, 1)}
        assert to_pairs(compose(r, r)) == {(0, 2)}

    def test_transitivity_witness(self):
        assert is_transitive(rel(3, [(0, 1), (1, 2)])) == (0, 1, 2)
        assert is_transitive(rel(3, [(0, 1), (1, 2), (0, 2)])) is None

    def test_base_requires_diagonal(self):
        with pytest.raises(ValueError):
            EntourageBase.of(2, [from_pairs(2, [(0, 1)])])

    def test_base_order_and_dedup(self):
        b = EntourageBase.of(2, [diagonal(2), total(2), diagonal(2)])
        assert b.relations == (total(2), diagonal(2))


class TestBases:
    def test_sierpinski(self):
        b = base_from_qpm(SIERPINSKI)
        assert b.relations == (total(2), rel(2, [(0, 1)]))

    def test_zero(self):
        assert base_from_qpm(QPM.zero(3)).relations == (total(3),)

    def test_discrete_metric(self):
        p = QPM.from_rows([[0 if x == y else 1 for y in range(3)] for x in range(3)])
        assert base_from_qpm(p).relations == (total(3), diagonal(3))

    def test_weak_base_disc2(self, disc2):
        b = weak_base_from_family(disc2, [IsotoneFn((0, 1))])
        assert b.relations == (total(2), rel(2, [(0, 1)]))

    def test_weak_base_constants(self, disc2):
        assert weak_base_from_family(disc2, [IsotoneFn.constant(2, F(1, 2))]).relations == (total(2),)

    def test_weak_base_chain3_core(self, chain3):
        b = weak_base_from_family(chain3, separating_family(chain3))
        assert core_preorder(b) == chain3.leq


class TestStar:
    def test_sierpinski_core(self):
        s = star(base_from_qpm(SIERPINSKI))
        assert s.core() == diagonal(2)
        assert is_inversion_closed(s)

    def test_total(self):
        assert star(EntourageBase.of(2, [total(2)])).relations == (total(2),)

    def test_symmetric(self):
        b = base_from_qpm(QPM.from_rows([[0, 1, 2], [1, 0, 1], [2, 1, 0]]))
        assert star(b).core() == b.core()

    def test_core_preorder(self):
        assert core_preorder(base_from_qpm(SIERPINSKI)) == {(0, 0), (1, 1), (0, 1)}
        assert core_preorder(EntourageBase.of(2, [total(2)])) == to_pairs(total(2))
        assert core_preorder(EntourageBase.of(2, [diagonal(2)])) == to_pairs(diagonal(2))

    def test_sym_topology(self):
        assert sym_topology(base_from_qpm(SIERPINSKI)) == fam((), (0,), (1,), (0, 1))
        assert sym_topology(EntourageBase.of(2, [total(2)])) == fam((), (0, 1))


class TestAppendix:
    def test_disc2(self, disc2):
        uniformity = base_from_qpm(symmetrize(SIERPINSKI))
        rep = appendix_check(disc2, uniformity, [IsotoneFn((0, 1))])
        assert rep.status == "ok"

    def test_missing_separator(self, disc2):
        uniformity = base_from_qpm(symmetrize(SIERPINSKI))
        rep = appendix_check(disc2, uniformity, [IsotoneFn.constant(2, 0)])
        assert rep.status == "skip"
        assert rep.checks["core_equals_preorder"].witness == (1, 0)

    def test_one_point(self):
        s = discrete(1)
        rep = appendix_check(s, EntourageBase.of(1, [total(1)]), [IsotoneFn.constant(1, 0)])
        assert rep.status == "ok"

    def test_reduce_duplicates_and_constants(self, chain3):
        canon = list(separating_family(chain3))
        assert list(reduce_family(chain3, canon + canon)) == canon
        out = reduce_family(chain3, [IsotoneFn.constant(3, 0)] + canon + [IsotoneFn.constant(3, 1)])
        assert list(out) == canon

    def test_reduce_minimal_unchanged(self, chain3):
        canon = separating_family(chain3)
        assert list(reduce_family(chain3, canon)) == list(canon)

    def test_reduce_rejects_bad_family(self, chain3):
        with pytest.raises(ValueError):
            reduce_family(chain3, [IsotoneFn.constant(3, 0)])


# -- properties ---------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(qpms(max_n=5))
def test_base_axioms(p):
    b = base_from_qpm(p)
    assert not b.composable()
    assert core_preorder(b) == {(x, y) for x in range(p.n) for y in range(p.n) if p(x, y) == 0}
    assert is_inversion_closed(star(b))
    assert star(b).same_filter(base_from_qpm(symmetrize(p)))


@settings(max_examples=120, deadline=None)
@given(spaces(max_n=4))
def test_appendix_on_completely_regular(space):
    if not is_completely_regular_preordered(space):
        return
    f = separating_family(space)
    rep = appendix_check(space, star(base_from_qpm(metrize(space))), f)
    assert rep.status == "ok"
    assert family_conditions(space, reduce_family(space, f))


@settings(max_examples=100, deadline=None)
@given(qpms(max_n=4))
def test_threshold_base_matches_reciprocal_radii(p):
    # entourages {p < 1/k}; past the least positive entry they stop changing
    positive = [p(x, y) for x in range(p.n) for y in range(p.n) if p(x, y) > 0]
    top = int(1 / min(positive)) + 2 if positive else 2
    rels = [
        from_pairs(p.n, [(x, y) for x in range(p.n) for y in range(p.n) if p(x, y) < F(1, k)])
        for k in range(1, top + 1)
    ]
    assert EntourageBase.of(p.n, rels).same_filter(base_from_qpm(p))
