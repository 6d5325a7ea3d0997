"""Order embeddings into the truncated ordered Hilbert cube ``[0,1]^K``.

The cube carries the componentwise order and the quasi-pseudo-metric
``sum_n max(x_n - y_n, 0) / 2**n`` (n from 1).  Two embeddings are provided:

* :func:`embed` uses a separating family of clopen indicators as coordinates;
* :func:`strict_embed` uses ``f_c = 1 - p(c, .)`` and ``g_c = p(., c)`` for every
  point ``c`` of the space, interleaved ``f_1, g_1, f_2, g_2, ...``, and lands on
  an order subspace of the cube.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bits import is_subset, mask, members
from .errors import DimensionMismatch, NotAdmissible, NotAntisymmetric
from .qpm import QPM, bound_by_one, is_admissible, topology_of, _frac
from .space import FiniteSpace
from .synthesis import IsotoneFn, separating_family
from .verdict import OK, Check, fail


@dataclass(frozen=True)
class CubePoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(_frac(c) for c in self.coords)
        for c in coords:
            if not 0 <= c <= 1:
                raise ValueError(f"cube coordinate {c} outside [0, 1]")
        object.__setattr__(self, "coords", coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def le(self, other: "CubePoint") -> bool:
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __le__(self, other: "CubePoint") -> bool:
        return self.le(other)


@dataclass(frozen=True)
class Embedding:
    source: FiniteSpace
    K: int
    image: tuple[CubePoint, ...]
    generator: tuple[IsotoneFn, ...]

    def coordinates(self) -> list[list[Fraction]]:
        return [list(pt.coords) for pt in self.image]


def cube_qpm(points: Sequence[CubePoint]) -> QPM:
    """The cube quasi-pseudo-metric restricted to ``points``."""
    dims = {len(pt) for pt in points}
    if len(dims) > 1:
        raise DimensionMismatch(f"cube points of different dimensions {sorted(dims)}")
    weights = [Fraction(1, 2 ** (k + 1)) for k in range(dims.pop() if dims else 0)]

    def dist(a: CubePoint, b: CubePoint) -> Fraction:
        return sum((w * (x - y) for w, x, y in zip(weights, a.coords, b.coords) if x > y), Fraction(0))

    return QPM.from_rows([[dist(a, b) for b in points] for a in points])


def _require_order(space: FiniteSpace) -> None:
    for x in range(space.n):
        other = space.up[x] & space.down[x] & ~(1 << x)
        if other:
            raise NotAntisymmetric((x, members(other)[0]))


def _image(space: FiniteSpace, generator: Sequence[IsotoneFn]) -> tuple[CubePoint, ...]:
    return tuple(CubePoint(tuple(f(x) for f in generator)) for x in range(space.n))


def embed(space: FiniteSpace) -> Embedding:
    """Order embedding through the separating clopen-indicator family.

    Preordered spaces must be passed through :func:`qpmspace.space.quotient` first.
    """
    _require_order(space)
    fam = tuple(separating_family(space))
    emb = Embedding(space, len(fam), _image(space, fam), fam)
    ok = verify_order_embedding(emb)
    assert ok, f"embedding failed verification: {ok.witness}"
    return emb


def strict_embed(space: FiniteSpace, p: QPM, centres: Sequence[int] | None = None) -> Embedding:
    """Embedding onto an order subspace, from an admissible metric.

    ``p`` is first bounded by one.  Every point serves as a centre, in ``centres``
    order (ascending ids by default).
    """
    _require_order(space)
    verdict = is_admissible(space, p)
    if not verdict.admissible:
        raise NotAdmissible(f"metric is not admissible for the space: {verdict.failures}")
    p1 = bound_by_one(p)
    n = space.n
    order = list(range(n)) if centres is None else list(centres)
    if sorted(order) != list(range(n)):
        raise ValueError("centres must be a permutation of the points")
    gen: list[IsotoneFn] = []
    for c in order:
        gen.append(IsotoneFn(tuple(1 - p1.m[c][x] for x in range(n))))
        gen.append(IsotoneFn(tuple(p1.m[x][c] for x in range(n))))
    emb = Embedding(space, len(gen), _image(space, gen), tuple(gen))
    for check in (verify_order_embedding, verify_order_subspace):
        ok = check(emb)
        assert ok, f"{check.__name__} failed: {ok.witness}"
    return emb


def verify_order_embedding(emb: Embedding) -> Check:
    """Injective, order-reflecting and -preserving, and a homeomorphism onto the image.

    Witness: ``("injective" | "order", (x, y))``, ``("topology", O)`` or
    ``("generator", (x, k))`` when a coordinate disagrees with its generating function.
    """
    space = emb.source
    img = emb.image
    n = space.n
    if len(img) != n:
        return fail(("injective", (n, len(img))))
    for x in range(n):
        for y in range(x + 1, n):
            if img[x] == img[y]:
                return fail(("injective", (x, y)))
    for x in range(n):
        for y in range(n):
            if space.le(x, y) != img[x].le(img[y]):
                return fail(("order", (x, y)))
    cube_top = topology_of(cube_qpm(img), "d")
    if cube_top != space.opens:
        diff = next(iter(set(cube_top) ^ set(space.opens)))
        return fail(("topology", diff))
    for x in range(n):
        for k, f in enumerate(emb.generator):
            if k >= len(img[x]) or img[x][k] != f(x):
                return fail(("generator", (x, k)))
    return OK


def _cylinder_traces(img: Sequence[CubePoint], K: int, increasing: bool) -> list[int]:
    """Traces on the image of ``{z_i > c}`` (or ``{z_i < c}``), ``c`` between consecutive values.

    The whole cube is included: it is open and monotone with trace everything.
    """
    everything = mask(range(len(img)))
    traces = [everything]
    for i in range(K):
        vals = sorted({pt[i] for pt in img})
        for lo, hi in zip(vals, vals[1:]):
            c = (lo + hi) / 2
            if increasing:
                traces.append(mask(x for x, pt in enumerate(img) if pt[i] > c))
            else:
                traces.append(mask(x for x, pt in enumerate(img) if pt[i] < c))
    return traces


def verify_order_subspace(emb: Embedding) -> Check:
    """Each open increasing (decreasing) set is the trace of a union of monotone cylinders.

    Witness: ``("increasing" | "decreasing", V)``.
    """
    space = emb.source
    for label, family, increasing in (("increasing", space.upper, True), ("decreasing", space.lower, False)):
        traces = _cylinder_traces(emb.image, emb.K, increasing)
        for v in family:
            covered = 0
            for t in traces:
                if is_subset(t, v):
                    covered |= t
            if covered != v:
                return fail((label, v))
    return OK


__all__ = [
    "CubePoint",
    "Embedding",
    "cube_qpm",
    "embed",
    "strict_embed",
    "verify_order_embedding",
    "verify_order_subspace",
]
