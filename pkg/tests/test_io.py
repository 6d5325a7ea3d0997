import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from qpmspace.io import (
    FIXTURES,
    dump_qpm,
    dump_space,
    family_from_list,
    family_to_list,
    jsonable,
    load_family,
    load_fixture,
    load_qpm,
    load_space,
    qpm_from_dict,
)
from qpmspace.errors import InvalidSpace
from qpmspace.synthesis import IsotoneFn

from .conftest import qpms, spaces


def test_fixtures_load():
    for name in FIXTURES:
        s = load_fixture(name)
        assert s.name == name


@settings(max_examples=60, deadline=None)
@given(spaces())
def test_space_round_trip(tmp_path_factory, space):
    path = tmp_path_factory.mktemp("io") / "s.json"
    dump_space(space, path)
    back = load_space(path, strict=True)
    assert back.opens == space.opens and back.up == space.up


@settings(max_examples=60, deadline=None)
@given(qpms())
def test_qpm_round_trip(tmp_path_factory, p):
    path = tmp_path_factory.mktemp("io") / "m.json"
    dump_qpm(p, path)
    assert load_qpm(path) == p


def test_matrix_strings():
    p = qpm_from_dict({"n": 2, "m": [[0, "1/2"], ["3", 0]]})
    assert p(0, 1) == F(1, 2) and p(1, 0) == 3


def test_matrix_rejects_floats_and_bad_n():
    with pytest.raises(ValueError):
        qpm_from_dict({"n": 2, "m": [[0, 0.5], [0, 0]]})
    with pytest.raises(ValueError):
        qpm_from_dict({"n": 3, "m": [[0, 0], [0, 0]]})


def test_strict_load_rejects_non_transitive_leq(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"n": 3, "opens": [[], [0, 1, 2]], "leq": [[0, 1], [1, 2]]}))
    assert load_space(path).le(0, 2)
    with pytest.raises(InvalidSpace):
        load_space(path, strict=True)


def test_family_is_per_point(tmp_path):
    path = tmp_path / "f.json"
    path.write_text("[[0, 0], [0, 1], [1, \"1/2\"]]")
    fam = load_family(path)
    assert list(fam) == [IsotoneFn((0, 0, 1)), IsotoneFn((0, 1, F(1, 2)))]
    assert family_to_list(fam) == [[0, 0], [0, 1], [1, "1/2"]]


def test_family_ragged():
    with pytest.raises(ValueError):
        family_from_list([[0], [0, 1]])


def test_jsonable():
    assert jsonable({"a": (F(1, 2), {1, 0})}) == {"a": ["1/2", [0, 1]]}
