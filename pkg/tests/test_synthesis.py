from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from qpmspace.errors import EmptyFamily, NonTransitiveCore, NotCompletelyRegular
from qpmspace.qpm import QPM, SIERPINSKI, bound_by_one, is_admissible, is_strictly_admissible, restrict, scale
from qpmspace.relation import EntourageBase, diagonal, from_pairs, total
from qpmspace.space import FiniteSpace, is_completely_regular_preordered, is_I_space, subspace
from qpmspace.synthesis import (
    FnFamily,
    IsotoneFn,
    check_isotone_continuous,
    check_product_upper_topology,
    family_conditions,
    initial_topology,
    metrize,
    metrize_from_family,
    product,
    product_space,
    qpm_from_entourage_base,
    separating_family,
    slice_support,
)

from .conftest import discrete, indiscrete, spaces


def ind(n, *pts):
    return IsotoneFn.indicator(n, pts)


class TestIsotoneContinuous:
    def test_ok(self, disc2):
        assert check_isotone_continuous(disc2, IsotoneFn((0, 1)))

    def test_isotone_violation(self, disc2):
        r = check_isotone_continuous(disc2, IsotoneFn((1, 0)))
        assert not r and r.witness == ("isotone", (0, 1))

    def test_continuity_violation(self, sierp):
        r = check_isotone_continuous(sierp, IsotoneFn((0, 1)))
        assert not r and r.witness[0] == "continuity"

    def test_range(self, disc2):
        assert check_isotone_continuous(disc2, IsotoneFn((0, 2))).witness == ("range", 1)

    def test_multivalued(self, chain3):
        assert check_isotone_continuous(chain3, IsotoneFn((0, F(1, 3), 1)))


class TestSeparatingFamily:
    def test_disc2(self, disc2):
        assert list(separating_family(disc2)) == [ind(2, 1)]

    def test_chain3(self, chain3):
        assert list(separating_family(chain3)) == [ind(3, 2), ind(3, 1, 2)]

    def test_sierp(self, sierp):
        with pytest.raises(NotCompletelyRegular):
            separating_family(sierp)

    def test_family_dedup(self):
        f = ind(2, 1)
        assert len(FnFamily([f, f, ind(2, 0)])) == 2


class TestMetrize:
    def test_disc2(self, disc2):
        p = metrize_from_family(disc2, [ind(2, 1)])
        assert p.rows() == [[0, 0], [F(1, 2), 0]]
        assert is_admissible(disc2, p).admissible

    def test_chain3(self, chain3):
        p = metrize(chain3)
        assert p(1, 0) == F(1, 4) and p(2, 1) == F(1, 2) and p(2, 0) == F(3, 4)
        assert p(0, 1) == p(0, 2) == p(1, 2) == 0
        assert is_admissible(chain3, p).admissible

    def test_sierp(self, sierp):
        with pytest.raises(NotCompletelyRegular):
            metrize(sierp)

    def test_indiscrete_total(self):
        s = indiscrete(3, [(0, 1), (1, 2), (2, 0)])
        p = metrize(s)
        assert p == QPM.zero(3) and is_admissible(s, p).admissible

    def test_constant_family(self, disc2):
        p = metrize_from_family(disc2, [IsotoneFn.constant(2, F(1, 2))])
        assert p == QPM.zero(2)
        assert not is_admissible(disc2, p).admissible
        s = indiscrete(2, [(0, 1), (1, 0)])
        assert is_admissible(s, metrize_from_family(s, [IsotoneFn.constant(2, 1)])).admissible

    def test_empty_family(self, disc2):
        with pytest.raises(EmptyFamily):
            metrize_from_family(disc2, [])

    def test_rejects_discontinuous(self, sierp):
        with pytest.raises(ValueError):
            metrize_from_family(sierp, [IsotoneFn((0, 1))])


class TestProduct:
    def test_disc2_squared(self, disc2):
        space, p = product([(disc2, SIERPINSKI), (disc2, SIERPINSKI)])
        assert space.n == 4
        assert p(3, 0) == F(3, 4)
        assert is_admissible(space, p).admissible

    def test_single_factor(self, chain3):
        p1 = metrize(chain3)
        space, p = product([(chain3, p1)])
        assert p == scale(bound_by_one(p1), F(1, 2))
        assert is_admissible(space, p).admissible

    def test_one_point_copies(self):
        pt = discrete(1)
        space, p = product([(pt, QPM.zero(1))] * 3)
        assert space.n == 1 and p == QPM.zero(1)

    def test_slices_recover_factors(self, disc2, chain3):
        space, p = product([(disc2, metrize(disc2)), (chain3, metrize(chain3))])
        _, coords = product_space([disc2, chain3])
        for axis, fac in ((0, disc2), (1, chain3)):
            sup = slice_support(coords, axis, (0, 0))
            sub = subspace(space, sup)
            assert sub.opens == fac.opens and sub.up == fac.up
            assert is_admissible(fac, restrict(p, sup)).admissible

    def test_upper_topology(self, disc2, chain3, sierp):
        assert check_product_upper_topology([disc2, disc2])
        assert check_product_upper_topology([chain3, disc2])
        # 2 <= 1 and {1} open, but its decreasing hull {1,2} is not
        non_i = FiniteSpace.build(3, [(), (0,), (1,), (0, 1), (0, 2), (0, 1, 2)], [(2, 1)])
        assert not is_I_space(non_i)
        r = check_product_upper_topology([non_i, discrete(2)])
        assert r.skipped and r.witness[1] == 0


class TestEntourage:
    def test_diagonal_core(self, disc2):
        base = EntourageBase.of(2, [from_pairs(2, disc2.leq)])
        assert qpm_from_entourage_base(disc2, base) == SIERPINSKI

    def test_total(self, disc2):
        assert qpm_from_entourage_base(disc2, EntourageBase.of(2, [total(2)])) == QPM.zero(2)

    def test_identity_core(self):
        s = discrete(3)
        p = qpm_from_entourage_base(s, EntourageBase.of(3, [diagonal(3)]))
        assert p == QPM.from_rows([[0 if x == y else 1 for y in range(3)] for x in range(3)])

    def test_non_transitive(self):
        s = discrete(3)
        rel = from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)])
        with pytest.raises(NonTransitiveCore):
            qpm_from_entourage_base(s, EntourageBase.of(3, [rel]))


# -- properties ---------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(spaces())
def test_metrize_iff_completely_regular(space):
    cr = is_completely_regular_preordered(space)
    try:
        p = metrize(space)
    except NotCompletelyRegular:
        assert not cr
        return
    assert cr
    v = is_strictly_admissible(space, p)
    assert v.admissible and v.strict


@settings(max_examples=150, deadline=None)
@given(spaces())
def test_separating_family_conditions(space):
    if not is_completely_regular_preordered(space):
        return
    fam = separating_family(space)
    assert family_conditions(space, fam)
    assert initial_topology(space.n, fam) == space.opens
    for f in fam:
        assert check_isotone_continuous(space, f)
