from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from qpmspace.errors import DimensionMismatch, NotAdmissible, NotAntisymmetric, NotCompletelyRegular
from qpmspace.hilbert import (
    CubePoint,
    Embedding,
    cube_qpm,
    embed,
    strict_embed,
    verify_order_embedding,
    verify_order_subspace,
)
from qpmspace.qpm import QPM, SIERPINSKI, is_strictly_admissible
from qpmspace.space import is_completely_regular_preordered
from qpmspace.synthesis import metrize

from .conftest import discrete, indiscrete, spaces


def pt(*c):
    return CubePoint(tuple(c))


class TestCubeQPM:
    def test_one_dimension(self):
        p = cube_qpm([pt(0), pt(1)])
        assert p(1, 0) == F(1, 2) and p(0, 1) == 0

    def test_identical(self):
        assert cube_qpm([pt(F(1, 3), 1), pt(F(1, 3), 1)]) == QPM.zero(2)

    def test_incomparable_pair(self):
        # weights 1/2 and 1/4 by coordinate position
        p = cube_qpm([pt(1, 0), pt(0, 1)])
        assert p(0, 1) == F(1, 2) and p(1, 0) == F(1, 4)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            cube_qpm([pt(0), pt(0, 1)])

    def test_range(self):
        with pytest.raises(ValueError):
            pt(F(3, 2))


class TestEmbed:
    def test_disc2(self, disc2):
        e = embed(disc2)
        assert e.K == 1 and e.coordinates() == [[0], [1]]

    def test_chain3(self, chain3):
        e = embed(chain3)
        assert e.K == 2 and e.coordinates() == [[0, 0], [0, 1], [1, 1]]

    def test_one_point(self):
        e = embed(discrete(1))
        assert e.K == 0 and e.coordinates() == [[]]
        assert verify_order_embedding(e)
        assert verify_order_subspace(e)

    def test_preordered_rejected(self):
        with pytest.raises(NotAntisymmetric):
            embed(indiscrete(2, [(0, 1), (1, 0)]))

    def test_not_completely_regular(self, sierp):
        with pytest.raises(NotCompletelyRegular):
            embed(sierp)


class TestStrictEmbed:
    def test_disc2_sierpinski(self, disc2):
        e = strict_embed(disc2, SIERPINSKI)
        assert e.K == 4
        assert e.coordinates() == [[1, 0, 0, 0], [1, 1, 1, 0]]
        assert verify_order_subspace(e)

    def test_disc2_metrized(self, disc2):
        e = strict_embed(disc2, metrize(disc2))
        assert e.coordinates() == [[1, 0, F(1, 2), 0], [1, F(1, 2), 1, 0]]

    def test_one_point(self):
        e = strict_embed(discrete(1), QPM.zero(1))
        assert e.coordinates() == [[1, 0]]

    def test_not_admissible(self, disc2):
        with pytest.raises(NotAdmissible):
            strict_embed(disc2, QPM.zero(2))

    def test_centres_order(self, disc2):
        e = strict_embed(disc2, SIERPINSKI, centres=[1, 0])
        assert e.coordinates() == [[0, 0, 1, 0], [1, 0, 1, 1]]


class TestVerification:
    def test_embed_ok(self, disc2):
        assert verify_order_embedding(embed(disc2))

    def test_coordinate_swap_mutation(self, disc2):
        e = strict_embed(disc2, metrize(disc2))
        c = list(e.image[0].coords)
        c[0], c[1] = c[1], c[0]
        bad = replace(e, image=(CubePoint(tuple(c)), e.image[1]))
        r = verify_order_embedding(bad)
        assert not r and r.witness == ("order", (0, 1))

    def test_collapsed_points(self, chain3):
        e = embed(chain3)
        bad = replace(e, image=(e.image[0], e.image[2], e.image[2]))
        assert verify_order_embedding(bad).witness == ("injective", (1, 2))

    def test_generator_mismatch(self, chain3):
        e = embed(chain3)
        bad = replace(e, generator=tuple(reversed(e.generator)))
        assert verify_order_embedding(bad).witness[0] == "generator"

    def test_order_subspace_negative_control(self, chain3):
        # drop the coordinate of the indicator of {2}
        e = embed(chain3)
        bad = Embedding(chain3, 1, tuple(CubePoint(p.coords[1:]) for p in e.image), e.generator[1:])
        r = verify_order_subspace(bad)
        assert not r and r.witness == ("increasing", 0b100)

    def test_single_point_image(self):
        e = embed(discrete(1))
        assert verify_order_subspace(e)


@settings(max_examples=120, deadline=None)
@given(spaces(max_n=4))
def test_embeddings_round_trip(space):
    if not space.is_antisymmetric() or not is_completely_regular_preordered(space):
        return
    e = embed(space)
    s = strict_embed(space, metrize(space))
    assert verify_order_embedding(e) and verify_order_embedding(s) and verify_order_subspace(s)
    for emb in (e, s):
        assert is_strictly_admissible(space, cube_qpm(emb.image)).strict
