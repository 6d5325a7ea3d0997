"""Text formats: space files, matrix files, function-family files (all JSON)."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .bits import members
from .qpm import QPM
from .space import FiniteSpace
from .synthesis import FnFamily, IsotoneFn

FIXTURES = ("FIX_DISC2", "FIX_SIERP", "FIX_CHAIN3", "FIX_CONVEX_NOT_CLOSED")


def _rational(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ValueError(f"rational must be an integer or an 'a/b' string, got {v!r}")
    return Fraction(v)


def rational_out(v: Fraction) -> int | str:
    return v.numerator if v.denominator == 1 else str(v)


def space_to_dict(space: FiniteSpace) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if space.name:
        out["name"] = space.name
    out["n"] = space.n
    out["opens"] = [list(members(o)) for o in space.opens]
    out["leq"] = [[x, y] for x, y in sorted(space.leq) if x != y]
    return out


def space_from_dict(d: dict[str, Any], *, strict: bool = False) -> FiniteSpace:
    return FiniteSpace.build(
        int(d["n"]),
        [tuple(o) for o in d["opens"]],
        [tuple(pair) for pair in d.get("leq", [])],
        name=d.get("name", ""),
        strict=strict,
    )


def qpm_to_dict(p: QPM) -> dict[str, Any]:
    return {"n": p.n, "m": [[rational_out(v) for v in row] for row in p.m]}


def qpm_from_dict(d: dict[str, Any]) -> QPM:
    rows = [[_rational(v) for v in row] for row in d["m"]]
    p = QPM.from_rows(rows)
    if "n" in d and int(d["n"]) != p.n:
        raise ValueError(f"declared n={d['n']} but matrix is {p.n}x{p.n}")
    return p


def family_to_list(family, n: int | None = None) -> list[list]:
    """Per-point rows: ``out[x][k] = f_k(x)``."""
    if n is None:
        n = len(family[0].values) if family else 0
    return [[rational_out(f.values[x]) for f in family] for x in range(n)]


def family_from_list(data: list) -> FnFamily:
    """Inverse of :func:`family_to_list`; every row must have the same length."""
    widths = {len(row) for row in data}
    if len(widths) > 1:
        raise ValueError(f"family rows have different lengths {sorted(widths)}")
    k = widths.pop() if widths else 0
    return FnFamily(IsotoneFn(tuple(_rational(row[j]) for row in data)) for j in range(k))


def _read(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write(path, obj) -> None:
    Path(path).write_text(json.dumps(obj) + "\n", encoding="utf-8")


def load_space(path, *, strict: bool = False) -> FiniteSpace:
    return space_from_dict(_read(path), strict=strict)


def dump_space(space: FiniteSpace, path) -> None:
    _write(path, space_to_dict(space))


def load_qpm(path) -> QPM:
    return qpm_from_dict(_read(path))


def dump_qpm(p: QPM, path) -> None:
    _write(path, qpm_to_dict(p))


def load_family(path) -> FnFamily:
    return family_from_list(_read(path))


def load_fixture(name: str) -> FiniteSpace:
    text = resources.files("qpmspace").joinpath("fixtures", f"{name}.json").read_text(encoding="utf-8")
    return space_from_dict(json.loads(text))


def jsonable(obj: Any) -> Any:
    """Witnesses and tallies to plain JSON values (fractions become strings, tuples lists)."""
    if isinstance(obj, Fraction):
        return rational_out(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in seq]
    return obj
