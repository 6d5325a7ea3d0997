"""Instance streams, checking suites, counterexample search and JSONL reports.

A suite turns an :class:`InstanceStream` into payloads (spaces, metrics,
space/metric pairs, ...) and runs one pure check per payload.  Results are
merged by instance index, so they do not depend on the number of workers.
"""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Any, Callable, Iterator

from . import oracles
from .bits import full, members
from .errors import NotCompletelyRegular
from .hilbert import cube_qpm, embed, strict_embed, verify_order_embedding, verify_order_subspace
from .io import jsonable, qpm_from_dict, qpm_to_dict, space_from_dict, space_to_dict
from .qpm import (
    QPM,
    check_lipschitz,
    check_monotone_slices,
    is_admissible,
    is_strictly_admissible,
    restrict,
    shortest_path_closure,
    space_of,
    topology_of,
    validate,
)
from .quniform import appendix_check, base_from_qpm, reduce_family, star
from .space import (
    FiniteSpace,
    _close_preorder,
    _unions_of,
    is_completely_regular_preordered,
    is_closed_preordered,
    is_convex,
    is_normally_preordered,
    is_preorder_subspace,
    is_regularly_preordered,
    is_semiclosed,
    property_report,
    subspace,
    topology_from_subbasis,
)
from .synthesis import (
    IsotoneFn,
    check_product_upper_topology,
    family_conditions,
    metric_of_family,
    metrize,
    product,
    separating_family,
    slice_support,
)
from .verdict import OK, Check, fail, skip

MAX_EXHAUSTIVE = 4


# -- enumeration and generation ---------------------------------------------


def enumerate_preorders(n: int) -> list[tuple[int, ...]]:
    """Every preorder on ``n`` labelled points as ``up`` masks, in ascending tuple order."""
    offdiag = [(a, b) for a in range(n) for b in range(n) if a != b]
    out = []
    for bits in cartesian((0, 1), repeat=len(offdiag)):
        up = [1 << x for x in range(n)]
        for (a, b), on in zip(offdiag, bits):
            if on:
                up[a] |= 1 << b
        if _close_preorder(n, list(up)) == up:
            out.append(tuple(up))
    return sorted(out)


def enumerate_topologies(n: int) -> list:
    """Every topology on ``n`` labelled points.

    Finite topologies correspond one to one with preorders: the open sets are the
    up-sets of the specialisation preorder, i.e. unions of the sets ``up[x]``.
    """
    return sorted(_unions_of(n, up) for up in enumerate_preorders(n))


def _guard(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_EXHAUSTIVE:
        raise ValueError(f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE}; use random mode")


def _instance_seed(seed: int, index: int) -> int:
    return seed * 1_000_003 + index


def random_space(n: int, seed: int) -> FiniteSpace:
    """Topology from at most ``n`` random subbasis sets of uniform size, preorder from random pairs."""
    if n < 1:
        raise ValueError("random spaces need n >= 1")
    rng = random.Random(seed)
    subbasis = []
    for _ in range(rng.randint(0, n)):
        size = rng.randint(1, n)
        subbasis.append(sum(1 << x for x in rng.sample(range(n), size)))
    up = [1 << x for x in range(n)]
    for _ in range(rng.randint(0, n)):
        a, b = rng.randrange(n), rng.randrange(n)
        up[a] |= 1 << b
    return FiniteSpace.from_up(
        n, topology_from_subbasis(n, subbasis), _close_preorder(n, up), f"random(n={n},seed={seed})"
    )


def random_qpm(n: int, seed: int) -> QPM:
    """Shortest-path closure of a random matrix with small rational entries (about 30% zeros)."""
    rng = random.Random(seed)
    rows = [
        [Fraction(0) if rng.random() < 0.3 else Fraction(rng.randint(1, 12), rng.randint(1, 6)) for _ in range(n)]
        for _ in range(n)
    ]
    return shortest_path_closure(rows)


@dataclass(frozen=True)
class InstanceStream:
    """``exhaustive(n)`` or ``random(n, seed, count)``; iteration restarts from the beginning."""

    mode: str
    n: int
    seed: int = 0
    count: int | None = None

    def __post_init__(self):
        if self.mode == "exhaustive":
            _guard(self.n)
        elif self.mode == "random":
            if self.count is None or self.count < 0:
                raise ValueError("random streams need a non-negative count")
        else:
            raise ValueError(f"unknown stream mode {self.mode!r}")

    @classmethod
    def exhaustive(cls, n: int) -> "InstanceStream":
        return cls("exhaustive", n)

    @classmethod
    def random(cls, n: int, count: int, seed: int = 0) -> "InstanceStream":
        return cls("random", n, seed, count)

    def describe(self) -> str:
        if self.mode == "exhaustive":
            return f"exhaustive({self.n})"
        return f"random({self.n},seed={self.seed},count={self.count})"

    def spaces(self) -> Iterator[tuple[int, FiniteSpace]]:
        n = self.n
        if self.mode == "exhaustive":
            tops = enumerate_topologies(n)
            pres = enumerate_preorders(n)
            i = 0
            for t in tops:
                for up in pres:
                    yield i, FiniteSpace.from_up(n, t, up, f"exhaustive({n})#{i}")
                    i += 1
        else:
            for i in range(self.count):
                yield i, random_space(n, _instance_seed(self.seed, i))

    def qpms(self) -> Iterator[tuple[int, QPM]]:
        if self.mode != "random":
            raise ValueError("metric streams are random only")
        for i in range(self.count):
            yield i, random_qpm(self.n, _instance_seed(self.seed, i))

    def admissible_pairs(self) -> Iterator[tuple[int, tuple[FiniteSpace, QPM]]]:
        """Exhaustive: completely regular instances with their synthesized metric.
        Random: ``(space_of(p), p)`` for random metrics ``p``."""
        if self.mode == "exhaustive":
            for i, s in self.spaces():
                if is_completely_regular_preordered(s):
                    yield i, (s, metrize(s))
        else:
            for i, p in self.qpms():
                yield i, (space_of(p, f"space_of(random_qpm#{i})"), p)


def enumerate_spaces(n: int) -> InstanceStream:
    return InstanceStream.exhaustive(n)


# -- payload encoding -------------------------------------------------------


def encode(kind: str, payload: Any) -> dict:
    if kind == "space":
        return {"type": "space", **space_to_dict(payload)}
    if kind == "qpm":
        return {"type": "qpm", **qpm_to_dict(payload)}
    if kind == "pair":
        s, p = payload
        return {"type": "pair", "space": space_to_dict(s), "qpm": qpm_to_dict(p)}
    if kind == "product":
        return {"type": "product", "factors": [encode("pair", f) for f in payload]}
    if kind == "n":
        return {"type": "n", "n": payload}
    raise ValueError(f"unknown payload kind {kind!r}")


def decode(d: dict) -> Any:
    kind = d["type"]
    if kind == "space":
        return space_from_dict(d)
    if kind == "qpm":
        return qpm_from_dict(d)
    if kind == "pair":
        return space_from_dict(d["space"]), qpm_from_dict(d["qpm"])
    if kind == "product":
        return tuple(decode(f) for f in d["factors"])
    if kind == "n":
        return int(d["n"])
    raise ValueError(f"unknown payload type {kind!r}")


# -- per-instance checks ----------------------------------------------------


@dataclass(frozen=True)
class Outcome:
    check: Check
    tags: tuple[str, ...] = ()


def _bhs(space: FiniteSpace) -> Outcome:
    cr = is_completely_regular_preordered(space)
    if cr:
        p = metrize(space)
        v = is_admissible(space, p)
        if not v.admissible:
            return Outcome(fail({"completely_regular": True, "admissible": False, "failures": v.failures}))
        return Outcome(OK, ("completely-regular",))
    try:
        metrize(space)
        return Outcome(fail({"completely_regular": False, "metrize": "succeeded"}))
    except NotCompletelyRegular:
        pass
    # the finest candidate built from every continuous isotone 0/1 function must fail too
    fam = [IsotoneFn.indicator(space.n, u) for u in space.clopen_increasing]
    if is_admissible(space, metric_of_family(space.n, fam)).admissible:
        return Outcome(fail({"completely_regular": False, "indicator_metric": "admissible"}))
    return Outcome(OK)


def _lro(pair) -> Outcome:
    space, p = pair
    v = is_strictly_admissible(space, p)
    if not v.admissible:
        return Outcome(skip({"not_admissible": v.failures}))
    return Outcome(OK if v.strict else fail(v.failures))


CHAIN = (
    ("convex+normal=>completely-regular", lambda r: not (r.convex and r.normally_preordered) or r.completely_regular_preordered),
    ("completely-regular=>convex+closed", lambda r: not r.completely_regular_preordered or (r.convex and r.closed_preordered)),
    ("normal=>closed", lambda r: not r.normally_preordered or r.closed_preordered),
    ("closed=>semiclosed", lambda r: not r.closed_preordered or r.semiclosed),
)


def _chain(space: FiniteSpace) -> Outcome:
    rep = property_report(space)
    violated = [name for name, holds in CHAIN if not holds(rep)]
    tags = tuple(k for k, v in rep.flags().items() if v)
    return Outcome(fail(violated) if violated else OK, tags)


def _lipschitz(p: QPM) -> Outcome:
    bad = validate(p)
    if bad:
        return Outcome(skip({"invalid": bad[0]}))
    for c in (check_lipschitz(p), check_monotone_slices(p)):
        if not c:
            return Outcome(fail(c.witness))
    return Outcome(OK)


def _same_space(a: FiniteSpace, b: FiniteSpace) -> bool:
    return a.n == b.n and a.opens == b.opens and a.up == b.up


def _product(factors) -> Outcome:
    space, p = product(factors)
    v = is_admissible(space, p)
    if not v.admissible:
        return Outcome(fail(("product", v.failures)))
    n1, n2 = factors[0][0].n, factors[1][0].n
    coords = [(a, b) for a in range(n1) for b in range(n2)]
    for axis, (fspace, _) in enumerate(factors):
        for base in coords:
            if base[axis] != 0:
                continue
            support = slice_support(coords, axis, base)
            sub = subspace(space, support)
            if not _same_space(sub, fspace):
                return Outcome(fail(("slice-space", axis, list(base))))
            sv = is_admissible(fspace, restrict(p, support))
            if not sv.admissible:
                return Outcome(fail(("slice-metric", axis, list(base), sv.failures)))
    up = check_product_upper_topology([f[0] for f in factors])
    if up.skipped:
        return Outcome(OK)
    if not up:
        return Outcome(fail(("upper-topology", up.witness)))
    return Outcome(OK, ("i-space-pair",))


def _embedding(space: FiniteSpace) -> Outcome:
    if not space.is_antisymmetric():
        return Outcome(skip("not an ordered space"))
    if not is_completely_regular_preordered(space):
        return Outcome(skip("not completely regular"))
    try:
        emb = embed(space)
        p = metrize(space)
        semb = strict_embed(space, p)
    except AssertionError as exc:
        return Outcome(fail(("construction", str(exc))))
    for label, c in (
        ("embedding", verify_order_embedding(emb)),
        ("strict-embedding", verify_order_embedding(semb)),
        ("order-subspace", verify_order_subspace(semb)),
    ):
        if not c:
            return Outcome(fail((label, c.witness)))
    for label, e in (("round-trip", emb), ("strict-round-trip", semb)):
        v = is_strictly_admissible(space, cube_qpm(e.image))
        if not v.strict:
            return Outcome(fail((label, v.failures)))
    return Outcome(OK)


def _appendix(space: FiniteSpace) -> Outcome:
    if not is_completely_regular_preordered(space):
        return Outcome(skip("not completely regular"))
    fam = separating_family(space)
    p = metrize(space)
    uniformity = star(base_from_qpm(p))
    rep = appendix_check(space, uniformity, fam)
    if rep.status != "ok":
        return Outcome(fail({k: (c.status, c.witness) for k, c in rep.checks.items() if not c}))
    reduced = reduce_family(space, fam)
    c = family_conditions(space, reduced)
    if not c:
        return Outcome(fail(("reduced", c.witness)))
    return Outcome(OK)


def _oracle_continuity(space: FiniteSpace) -> Outcome:
    fast = bool(is_completely_regular_preordered(space))
    slow = oracles.completely_regular_by_functions(space)
    if fast != slow:
        return Outcome(fail({"shortcut": fast, "oracle": slow}))
    return Outcome(OK, ("completely-regular",) if fast else ())


def _oracle_properties(space: FiniteSpace) -> Outcome:
    pairs = (
        ("semiclosed", is_semiclosed, oracles.is_semiclosed),
        ("closed", is_closed_preordered, oracles.is_closed_preordered),
        ("convex", is_convex, oracles.is_convex),
        ("normal", is_normally_preordered, oracles.is_normally_preordered),
    )
    for label, fast, slow in pairs:
        if bool(fast(space)) != slow(space):
            return Outcome(fail(label))
    return Outcome(OK)


def _to_masks(family) -> set[int]:
    return {sum(1 << x for x in s) for s in family}


def _oracle_balls(p: QPM) -> Outcome:
    for side in ("p", "q", "d"):
        fast = topology_of(p, side)
        if set(fast) != set(topology_of(p, side, method="radii")):
            return Outcome(fail((side, "radii")))
        if set(fast) != _to_masks(oracles.ball_topology(p, side)):
            return Outcome(fail((side, "oracle")))
    return Outcome(OK)


def _topology_count(n: int) -> Outcome:
    fast = len(enumerate_topologies(n))
    slow = oracles.count_topologies(n)
    return Outcome(OK if fast == slow else fail({"enumerated": fast, "brute_force": slow}), (f"n={n}:{fast}",))


def _heredity(pair) -> Outcome:
    space, p = pair
    strict = bool(is_strictly_admissible(space, p).strict)
    for s in range(1, full(space.n) + 1):
        sub = subspace(space, s)
        q = restrict(p, s)
        v = is_admissible(sub, q)
        if not v.admissible:
            return Outcome(fail(("admissible", members(s), v.failures)))
        if strict and is_preorder_subspace(space, s):
            sv = is_strictly_admissible(sub, q)
            if not sv.strict:
                return Outcome(fail(("strict", members(s), sv.failures)))
    return Outcome(OK)


def _probe_regular(space: FiniteSpace) -> Outcome:
    cr = is_completely_regular_preordered(space)
    if not cr:
        return Outcome(OK)
    reg = is_regularly_preordered(space)
    return Outcome(OK if reg else fail(reg.witness), ("completely-regular",))


# -- suite registry ---------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    id: str
    kind: str  # payload kind: space | qpm | pair | product | n
    check: Callable[[Any], Outcome]
    theorem: bool
    description: str
    default: InstanceStream


def _payloads(suite: Suite, stream: InstanceStream) -> Iterator[tuple[int, Any]]:
    if suite.kind == "space":
        return stream.spaces()
    if suite.kind == "qpm":
        return stream.qpms()
    if suite.kind == "pair":
        return stream.admissible_pairs()
    if suite.kind == "product":
        return _product_pairs(stream)
    if suite.kind == "n":
        return ((k, k) for k in range(1, stream.n + 1))
    raise ValueError(suite.kind)


def product_pool(max_n: int = 3) -> list[tuple[FiniteSpace, QPM]]:
    pool = []
    for k in range(2, min(max_n, 3) + 1):
        pool.extend(pair for _, pair in InstanceStream.exhaustive(k).admissible_pairs())
    return pool


def _product_pairs(stream: InstanceStream):
    """``count`` (default 1000) seeded pairs drawn from the admissible pool of exhaustive(2..min(n,3))."""
    pool = product_pool(stream.n)
    rng = random.Random(stream.seed)
    count = 1000 if stream.count is None else stream.count
    for i in range(count):
        yield i, (rng.choice(pool), rng.choice(pool))


SUITES: dict[str, Suite] = {
    s.id: s
    for s in (
        Suite("bhs-equivalence", "space", _bhs, True,
              "completely regular iff metrize yields an admissible metric", InstanceStream.exhaustive(3)),
        Suite("lro-strictness", "pair", _lro, True,
              "every admissible metric is strictly admissible", InstanceStream.exhaustive(3)),
        Suite("implication-chain", "space", _chain, True,
              "convex+normal => completely regular => convex+closed; normal => closed => semiclosed",
              InstanceStream.exhaustive(3)),
        Suite("lipschitz-slices", "qpm", _lipschitz, True,
              "Lipschitz bound and monotone slices of a quasi-pseudo-metric", InstanceStream.random(8, 1000)),
        Suite("product", "product", _product, True,
              "products of admissible pairs are admissible and slice back to the factors",
              InstanceStream("exhaustive", 3, 0, 1000)),
        Suite("embedding", "space", _embedding, True,
              "Hilbert cube embeddings of completely regular ordered spaces", InstanceStream.exhaustive(3)),
        Suite("appendix", "space", _appendix, True,
              "weak quasi-uniformity of a separating family", InstanceStream.exhaustive(3)),
        Suite("heredity", "pair", _heredity, True,
              "admissibility restricts to subspaces, strictness to preorder subspaces", InstanceStream.exhaustive(3)),
        Suite("oracle-continuity", "space", _oracle_continuity, True,
              "clopen characterization of complete regularity vs 0/1 function enumeration",
              InstanceStream.exhaustive(3)),
        Suite("oracle-properties", "space", _oracle_properties, True,
              "fast property checks vs definition-level oracles", InstanceStream.exhaustive(3)),
        Suite("oracle-balls", "qpm", _oracle_balls, True,
              "minimal-ball topology vs all-radii ball topology", InstanceStream.random(6, 500)),
        Suite("topology-count", "n", _topology_count, True,
              "topology enumeration vs brute-force family count", InstanceStream.exhaustive(3)),
        Suite("probe-regular-vs-completely-regular", "space", _probe_regular, False,
              "probe: completely regular but not regularly preordered", InstanceStream.random(5, 1000)),
    )
}


# -- implications for counterexample search ---------------------------------


@dataclass(frozen=True)
class Implication:
    id: str
    kind: str  # space | pair
    antecedent: Callable[[Any], bool]
    consequent: Callable[[Any], bool]
    theorem: bool
    note: str = ""

    def check(self, payload) -> Outcome:
        if not self.antecedent(payload):
            return Outcome(skip("antecedent false"))
        if self.consequent(payload):
            return Outcome(OK)
        return Outcome(fail(_witness_for(self, payload)))


def _witness_for(imp: Implication, payload) -> Any:
    if imp.kind == "space":
        return {"properties": property_report(payload).flags(), "witnesses": property_report(payload).witnesses}
    return {"failures": is_strictly_admissible(*payload).failures}


def _has(name: str) -> Callable[[FiniteSpace], bool]:
    def pred(space: FiniteSpace) -> bool:
        return bool(_PROPS[name](space))

    return pred


def _both(a: str, b: str) -> Callable[[FiniteSpace], bool]:
    return lambda s: _has(a)(s) and _has(b)(s)


_PROPS = {
    "semiclosed": is_semiclosed,
    "closed": is_closed_preordered,
    "convex": is_convex,
    "normal": is_normally_preordered,
    "regular": is_regularly_preordered,
    "completely-regular": is_completely_regular_preordered,
}

IMPLICATIONS: dict[str, Implication] = {
    i.id: i
    for i in (
        Implication("semiclosed=>closed", "space", _has("semiclosed"), _has("closed"), False,
                    "cannot fail on finite spaces: when every i(x) and d(x) is closed, every monotone set is clopen"),
        Implication("closed=>semiclosed", "space", _has("closed"), _has("semiclosed"), True),
        Implication("normal=>closed", "space", _has("normal"), _has("closed"), True),
        Implication("closed=>normal", "space", _has("closed"), _has("normal"), False),
        Implication("convex+normal=>completely-regular", "space", _both("convex", "normal"),
                    _has("completely-regular"), True),
        Implication("completely-regular=>convex+closed", "space", _has("completely-regular"),
                    _both("convex", "closed"), True),
        Implication("completely-regular=>regular", "space", _has("completely-regular"), _has("regular"), False,
                    "cannot fail on finite spaces: complete regularity forces a clopen partition topology"),
        Implication("convex=>closed", "space", _has("convex"), _has("closed"), False),
        Implication("closed=>convex", "space", _has("closed"), _has("convex"), False),
        Implication("semiclosed+convex=>closed", "space", _both("semiclosed", "convex"), _has("closed"), False),
        Implication("admissible=>strictly-admissible", "pair", lambda pair: True,
                    lambda pair: bool(is_strictly_admissible(*pair).strict), True,
                    "a-priori empty on finite instances: every admissible metric is strictly admissible"),
    )
}


def _search_payloads(imp: Implication) -> Iterator[tuple[str, int, Any]]:
    """exhaustive(1..4), then random n=5 forever (seed 0, then 1, ...)."""
    for n in range(1, MAX_EXHAUSTIVE + 1):
        stream = InstanceStream.exhaustive(n)
        source = stream.spaces() if imp.kind == "space" else stream.admissible_pairs()
        for i, payload in source:
            yield stream.describe(), i, payload
    seed = 0
    while True:
        stream = InstanceStream.random(5, 1000, seed)
        source = stream.spaces() if imp.kind == "space" else stream.admissible_pairs()
        for i, payload in source:
            yield stream.describe(), i, payload
        seed += 1


# -- running ----------------------------------------------------------------


@dataclass
class SuiteResult:
    suite: str
    stream: str
    theorem: bool
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    tallies: Counter = field(default_factory=Counter)
    wall_time: float = 0.0
    records: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.theorem or not self.failures

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "stream": self.stream,
            "theorem": self.theorem,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": len(self.failures),
            "tallies": dict(sorted(self.tallies.items())),
            "wall_time": round(self.wall_time, 3),
            "passed": self.passed,
            "note": self.note,
        }

    def summary_line(self) -> str:
        s = self.summary()
        verdict = "PASS" if self.passed else "FAIL"
        kind = "theorem" if self.theorem else "probe"
        return (
            f"{verdict} {self.suite} [{kind}] on {self.stream}: checked={s['checked']} "
            f"skipped={s['skipped']} failures={s['failures']} time={s['wall_time']}s"
        )


def _run_one(args) -> Outcome:
    suite_id, payload = args
    return _lookup(suite_id)[0](payload)


def _lookup(suite_id: str) -> tuple[Callable[[Any], Outcome], str, bool]:
    if suite_id in SUITES:
        s = SUITES[suite_id]
        return s.check, s.kind, s.theorem
    if suite_id.startswith("search:") and suite_id[7:] in IMPLICATIONS:
        imp = IMPLICATIONS[suite_id[7:]]
        return imp.check, imp.kind, imp.theorem
    raise KeyError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")


def _record(result: SuiteResult, suite_id: str, kind: str, index: int, payload, outcome: Outcome) -> None:
    c = outcome.check
    result.checked += 1
    result.tallies.update(Counter(outcome.tags))
    rec: dict[str, Any] = {"suite": suite_id, "index": index, "status": c.status}
    if c.status == "skip":
        result.skipped += 1
    if c.status == "fail":
        rec["witness"] = jsonable(c.witness)
        rec["instance"] = encode(kind, payload)
        result.failures.append(rec)
    result.records.append(rec)


def run_suite(suite_id: str, stream: InstanceStream | None = None, *, jobs: int = 1) -> SuiteResult:
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    suite = SUITES[suite_id]
    stream = stream or suite.default
    start = time.perf_counter()
    result = SuiteResult(suite_id, stream.describe(), suite.theorem)
    items = list(_payloads(suite, stream))
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(items) // (jobs * 8))
            outcomes = list(pool.map(_run_one, [(suite_id, p) for _, p in items], chunksize=chunk))
    else:
        outcomes = [suite.check(p) for _, p in items]
    for (index, payload), outcome in zip(items, outcomes):
        _record(result, suite_id, suite.kind, index, payload, outcome)
    result.wall_time = time.perf_counter() - start
    return result


def search_counterexamples(implication: str, budget: int) -> SuiteResult:
    """Check instances in search order until a witness appears or ``budget`` instances are spent."""
    if implication not in IMPLICATIONS:
        raise KeyError(f"unknown implication {implication!r}; known: {', '.join(IMPLICATIONS)}")
    imp = IMPLICATIONS[implication]
    suite_id = f"search:{implication}"
    start = time.perf_counter()
    result = SuiteResult(suite_id, "exhaustive(1..4) then random(5)", imp.theorem, note=imp.note)
    last = ""
    for stream_name, index, payload in _search_payloads(imp):
        if result.checked >= budget:
            break
        last = stream_name
        outcome = imp.check(payload)
        _record(result, suite_id, imp.kind, index, payload, outcome)
        if outcome.check.status == "fail":
            result.failures[-1]["stream"] = stream_name
            break
    result.stream = f"search order, stopped in {last}" if last else result.stream
    if not result.failures:
        result.note = (result.note + "; " if result.note else "") + f"exhausted budget of {budget} with no witness"
    result.wall_time = time.perf_counter() - start
    return result


# -- reports and replay -----------------------------------------------------


def write_report(result: SuiteResult, path) -> None:
    """One JSON object per instance verdict, then ``{"summary": ...}``."""
    with open(path, "w", encoding="utf-8") as fh:
        for rec in result.records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        fh.write(json.dumps({"summary": jsonable(result.summary())}, sort_keys=True) + "\n")


def read_report(path) -> tuple[list[dict], dict | None]:
    records, summary = [], None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            if "summary" in obj:
                summary = obj["summary"]
            else:
                records.append(obj)
    return records, summary


@dataclass(frozen=True)
class Replay:
    suite: str
    index: int
    expected: str
    actual: str
    reproduced: bool


def replay(path) -> list[Replay]:
    """Re-run every record that carries an instance and compare status and witness."""
    records, _ = read_report(path)
    out = []
    for rec in records:
        if "instance" not in rec:
            continue
        check, _, _ = _lookup(rec["suite"])
        c = check(decode(rec["instance"])).check
        same = c.status == rec["status"] and jsonable(c.witness) == rec.get("witness")
        out.append(Replay(rec["suite"], rec["index"], rec["status"], c.status, same))
    return out


def seed_count(stream: InstanceStream) -> int:
    """Number of instances the stream yields for space suites."""
    if stream.mode == "random":
        return stream.count
    return len(enumerate_topologies(stream.n)) * len(enumerate_preorders(stream.n))


__all__ = [
    "InstanceStream",
    "SuiteResult",
    "Suite",
    "Implication",
    "SUITES",
    "IMPLICATIONS",
    "enumerate_spaces",
    "enumerate_preorders",
    "enumerate_topologies",
    "random_space",
    "random_qpm",
    "run_suite",
    "search_counterexamples",
    "write_report",
    "read_report",
    "replay",
    "encode",
    "decode",
]
