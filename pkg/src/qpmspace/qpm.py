"""Exact quasi-pseudo-metrics on finite point sets.

A :class:`QPM` stores ``p`` as a square matrix of :class:`~fractions.Fraction`.
The conjugate ``q(x, y) = p(y, x)`` and the symmetrisation ``d = p + q`` are
views selected with ``side in {"p", "q", "d"}``.  Topologies are compared as
set families; there are no tolerances anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .bits import SubsetFamily, Subset, full, is_subset, mask, members, subsets
from .errors import DimensionMismatch
from .space import FiniteSpace, is_convex, is_semiclosed, topology_from_subbasis
from .verdict import OK, Check, fail

Rational = Union[int, str, Fraction]
SIDES = ("p", "q", "d")


def _frac(v: Rational) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True)
class QPM:
    n: int
    m: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.m) != self.n or any(len(row) != self.n for row in self.m):
            raise DimensionMismatch(f"matrix must be {self.n}x{self.n}")
        for x, row in enumerate(self.m):
            for y, v in enumerate(row):
                if v < 0:
                    raise ValueError(f"negative entry m[{x}][{y}] = {v}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Rational]]) -> "QPM":
        return cls(len(rows), tuple(tuple(_frac(v) for v in row) for row in rows))

    @classmethod
    def zero(cls, n: int) -> "QPM":
        return cls(n, tuple((Fraction(0),) * n for _ in range(n)))

    def __call__(self, x: int, y: int) -> Fraction:
        return self.m[x][y]

    def value(self, x: int, y: int, side: str = "p") -> Fraction:
        if side == "p":
            return self.m[x][y]
        if side == "q":
            return self.m[y][x]
        if side == "d":
            return self.m[x][y] + self.m[y][x]
        raise ValueError(f"unknown side {side!r}")

    def rows(self, side: str = "p") -> list[list[Fraction]]:
        return [[self.value(x, y, side) for y in range(self.n)] for x in range(self.n)]

    @cached_property
    def _scaled(self) -> tuple[np.ndarray, int]:
        den = math.lcm(1, *(v.denominator for row in self.m for v in row))
        ints = [[int(v * den) for v in row] for row in self.m]
        big = max((v for row in ints for v in row), default=0)
        # Lipschitz sums add four entries; stay well inside int64 or fall back to Python ints.
        dtype = np.int64 if big < 2**60 else object
        return np.array(ints, dtype=dtype).reshape(self.n, self.n), den

    def integer_matrix(self) -> tuple[np.ndarray, int]:
        """``(M, den)`` with ``M / den == m`` exactly and integer entries."""
        return self._scaled

    def to_strings(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.m]

    def __repr__(self) -> str:
        return f"QPM({self.to_strings()})"


SIERPINSKI = QPM.from_rows([[0, 0], [1, 0]])


def validate(p: QPM, *, quasi_metric: bool = False, albert: bool = False) -> list[tuple]:
    """Every violated axiom instance; an empty list means ``p`` is a quasi-pseudo-metric.

    ``quasi_metric`` adds ``p(x,y) = 0 => x = y``; ``albert`` adds
    ``p(x,y) = p(y,x) = 0 => x = y``.
    """
    out: list[tuple] = []
    n = p.n
    m = p.m
    for x in range(n):
        if m[x][x] != 0:
            out.append(("diagonal", x))
    for x in range(n):
        for y in range(n):
            mxy = m[x][y]
            for z in range(n):
                if m[x][z] > mxy + m[y][z]:
                    out.append(("triangle", (x, y, z)))
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            if quasi_metric and m[x][y] == 0:
                out.append(("separation", (x, y)))
            if albert and x < y and m[x][y] == 0 and m[y][x] == 0:
                out.append(("albert", (x, y)))
    return out


def conjugate(p: QPM) -> QPM:
    return QPM(p.n, tuple(zip(*p.m)) if p.n else ())


def symmetrize(p: QPM, mode: str = "sum") -> QPM:
    """``p + q`` (default) or ``p v q``; both are pseudo-metrics with the same topology."""
    if mode == "sum":
        f = lambda a, b: a + b
    elif mode == "max":
        f = max
    else:
        raise ValueError(f"unknown symmetrization mode {mode!r}")
    return QPM(p.n, tuple(tuple(f(p.m[x][y], p.m[y][x]) for y in range(p.n)) for x in range(p.n)))


def induced_preorder(p: QPM) -> frozenset[tuple[int, int]]:
    return frozenset((x, y) for x in range(p.n) for y in range(p.n) if p.m[x][y] == 0)


def zero_rows(p: QPM, side: str = "p") -> tuple[int, ...]:
    """``{y : value(x, y) = 0}`` per ``x``; for ``side="p"`` these are the up-sets of the induced preorder."""
    return tuple(
        mask(y for y in range(p.n) if p.value(x, y, side) == 0) for x in range(p.n)
    )


def ball(p: QPM, x: int, r: Rational, side: str = "p") -> int:
    """Open ball ``{y : value(x, y) < r}`` for ``r > 0``."""
    r = _frac(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    return mask(y for y in range(p.n) if p.value(x, y, side) < r)


def _radii(p: QPM, side: str) -> list[Fraction]:
    vals = sorted({p.value(x, y, side) for x in range(p.n) for y in range(p.n)} - {Fraction(0)})
    top = (vals[-1] if vals else Fraction(0)) + 1
    smallest = (vals[0] if vals else Fraction(1)) / 2
    return [smallest, *vals, top]


def all_balls(p: QPM, side: str = "p") -> SubsetFamily:
    """Every ball over every centre and every radius that yields a distinct set."""
    return SubsetFamily(ball(p, x, r, side) for x in range(p.n) for r in _radii(p, side))


def topology_of(p: QPM, side: str = "p", *, method: str = "minimal") -> SubsetFamily:
    """Topology whose base is the ``side``-balls.

    ``method="minimal"`` uses the zero-balls ``{y : value(x, y) = 0}``, which are the
    balls of any radius below the least positive entry and form a base on a finite
    set.  ``method="radii"`` applies the definition directly: a set is open iff
    each of its points lies in some ball (any centre, any radius) inside the set.
    """
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}")
    if method == "minimal":
        return topology_from_subbasis(p.n, zero_rows(p, side))
    if method != "radii":
        raise ValueError(f"unknown method {method!r}")
    balls = set(all_balls(p, side))
    return SubsetFamily(
        o for o in subsets(full(p.n))
        if all(any(b >> x & 1 and is_subset(b, o) for b in balls) for x in members(o))
    )


def _family_diff(a: SubsetFamily, b: SubsetFamily) -> int | None:
    sb = set(b)
    for o in a:
        if o not in sb:
            return o
    sa = set(a)
    for o in b:
        if o not in sa:
            return o
    return None


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """``strict`` is ``None`` when strictness was not evaluated."""

    admissible: bool
    strict: bool | None = None
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.admissible if self.strict is None else bool(self.strict)


def _check_dim(space: FiniteSpace, p: QPM) -> None:
    if space.n != p.n:
        raise DimensionMismatch(f"space has {space.n} points, metric has {p.n}")


def _admissibility_failures(space: FiniteSpace, p: QPM) -> list:
    failures = []
    diff = _family_diff(topology_of(p, "d"), space.opens)
    if diff is not None:
        failures.append(("topology", diff))
    induced = induced_preorder(p)
    for pair in sorted(induced ^ space.leq):
        failures.append(("preorder", pair))
        break
    return failures


def is_admissible(space: FiniteSpace, p: QPM) -> AdmissibilityVerdict:
    """``p + q`` generates the topology and ``{p = 0}`` is the preorder graph."""
    _check_dim(space, p)
    failures = _admissibility_failures(space, p)
    return AdmissibilityVerdict(admissible=not failures, failures=failures)


def is_strictly_admissible(space: FiniteSpace, p: QPM) -> AdmissibilityVerdict:
    """Convex, semiclosed, ``T(p)`` is the upper topology and ``T(q)`` the lower one.

    Admissibility is evaluated separately and reported alongside; strictness is
    decided from its own definition only.
    """
    _check_dim(space, p)
    adm = _admissibility_failures(space, p)
    failures = list(adm)
    conv = is_convex(space)
    if not conv:
        failures.append(("not-convex", conv.witness))
    sc = is_semiclosed(space)
    if not sc:
        failures.append(("not-semiclosed", sc.witness))
    diff = _family_diff(topology_of(p, "p"), space.upper)
    if diff is not None:
        failures.append(("upper-topology", diff))
    diff = _family_diff(topology_of(p, "q"), space.lower)
    if diff is not None:
        failures.append(("lower-topology", diff))
    strict = len(failures) == len(adm)
    return AdmissibilityVerdict(admissible=not adm, strict=strict, failures=failures)


def bound_by_one(p: QPM) -> QPM:
    one = Fraction(1)
    return QPM(p.n, tuple(tuple(min(v, one) for v in row) for row in p.m))


def restrict(p: QPM, s: Subset) -> QPM:
    """Principal submatrix on ``s``, relabelled ascending like :func:`qpmspace.space.subspace`."""
    pts = members(mask(s))
    if pts and pts[-1] >= p.n:
        raise DimensionMismatch(f"{pts} is not a subset of {p.n} points")
    return QPM(len(pts), tuple(tuple(p.m[x][y] for y in pts) for x in pts))


def scale(p: QPM, factor: Rational) -> QPM:
    factor = _frac(factor)
    return QPM(p.n, tuple(tuple(v * factor for v in row) for row in p.m))


def check_lipschitz(p: QPM) -> Check:
    """``|p(x,y) - p(w,z)| <= d(x,w) + d(y,z)`` over all quadruples, for ``d = p+q`` and ``d = p v q``.

    Only meaningful for valid ``p``.  Runs on the integer-scaled matrix so the
    comparison stays exact.  Witness: ``(variant, (x, y, w, z))``.
    """
    if p.n == 0:
        return OK
    P, _ = p.integer_matrix()
    lhs = np.abs(P[:, :, None, None] - P[None, None, :, :])  # [x, y, w, z]
    for variant, D in (("sum", P + P.T), ("max", np.maximum(P, P.T))):
        rhs = D[:, None, :, None] + D[None, :, None, :]
        bad = np.argwhere(lhs > rhs)
        if len(bad):
            return fail((variant, tuple(int(i) for i in bad[0])))
    return OK


def check_monotone_slices(p: QPM) -> Check:
    """For ``y <= z`` in the induced preorder: ``q(x,y) <= q(x,z)`` and ``p(x,y) >= p(x,z)``.

    Witness: ``("q-isotone" | "p-antitone", (x, y, z))``.
    """
    if p.n == 0:
        return OK
    P, _ = p.integer_matrix()
    le = P == 0  # [y, z]
    # q(x, y) = P[y, x]
    bad_q = le[:, :, None] & (P[:, None, :] > P[None, :, :])  # [y, z, x]
    hit = np.argwhere(bad_q)
    if len(hit):
        y, z, x = (int(i) for i in hit[0])
        return fail(("q-isotone", (x, y, z)))
    bad_p = le[None, :, :] & (P[:, :, None] < P[:, None, :])  # [x, y, z]
    hit = np.argwhere(bad_p)
    if len(hit):
        x, y, z = (int(i) for i in hit[0])
        return fail(("p-antitone", (x, y, z)))
    return OK


def shortest_path_closure(rows: Sequence[Sequence[Rational]]) -> QPM:
    """Largest quasi-pseudo-metric below a non-negative matrix (zero diagonal, triangle-closed)."""
    n = len(rows)
    m = [[_frac(v) for v in row] for row in rows]
    for x in range(n):
        m[x][x] = Fraction(0)
    for k in range(n):
        mk = m[k]
        for i in range(n):
            mik = m[i][k]
            mi = m[i]
            for j in range(n):
                alt = mik + mk[j]
                if alt < mi[j]:
                    mi[j] = alt
    return QPM.from_rows(m)


def space_of(p: QPM, name: str = "") -> FiniteSpace:
    """The preordered space ``(E, T(p+q), {p = 0})``; ``p`` is admissible for it by construction."""
    return FiniteSpace.from_up(p.n, topology_of(p, "d"), zero_rows(p, "p"), name)


__all__ = [
    "QPM",
    "SIERPINSKI",
    "AdmissibilityVerdict",
    "validate",
    "conjugate",
    "symmetrize",
    "induced_preorder",
    "zero_rows",
    "ball",
    "all_balls",
    "topology_of",
    "is_admissible",
    "is_strictly_admissible",
    "bound_by_one",
    "restrict",
    "scale",
    "check_lipschitz",
    "check_monotone_slices",
    "shortest_path_closure",
    "space_of",
]
