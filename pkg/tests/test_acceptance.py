"""Acceptance criteria AC1..AC8.

Every check is exact (Fraction arithmetic, zero tolerance).  Each test prints a
single ``AC<k> PASS|FAIL ...`` line; run with ``pytest tests/test_acceptance.py -s``
to see them.
"""

from qpmspace import oracles
from qpmspace.harness import InstanceStream, enumerate_topologies, run_suite


def report(ac, ok, detail):
    print(f"\n{ac} {'PASS' if ok else 'FAIL'} {detail}")


def test_ac1_completely_regular_iff_metrizable():
    runs = [run_suite("bhs-equivalence", InstanceStream.exhaustive(n)) for n in (3, 2)]
    checked = [r.checked for r in runs]
    failures = sum(len(r.failures) for r in runs)
    elapsed = sum(r.wall_time for r in runs)
    ok = checked == [841, 16] and failures == 0 and elapsed < 60
    report("AC1", ok, f"instances={checked} failures={failures} time={elapsed:.2f}s (target <60s)")
    assert ok


def test_ac2_admissible_metrics_are_strict():
    runs = [
        run_suite("lro-strictness", InstanceStream.exhaustive(3)),
        run_suite("lro-strictness", InstanceStream.exhaustive(2)),
        run_suite("lro-strictness", InstanceStream.random(5, 1000, seed=0)),
    ]
    checked = [r.checked for r in runs]
    skipped = sum(r.skipped for r in runs)
    failures = sum(len(r.failures) for r in runs)
    elapsed = sum(r.wall_time for r in runs)
    ok = checked == [29, 4, 1000] and skipped == 0 and failures == 0 and elapsed < 120
    report("AC2", ok, f"pairs={checked} skipped={skipped} failures={failures} time={elapsed:.2f}s (target <120s)")
    assert ok


def test_ac3_implication_chain():
    runs = [
        run_suite("implication-chain", InstanceStream.exhaustive(3)),
        run_suite("implication-chain", InstanceStream.random(5, 10_000, seed=0)),
    ]
    checked = [r.checked for r in runs]
    failures = sum(len(r.failures) for r in runs)
    ok = checked == [841, 10_000] and failures == 0
    report("AC3", ok, f"instances={checked} failures={failures}")
    assert ok


def test_ac4_lipschitz_and_slices():
    r = run_suite("lipschitz-slices", InstanceStream.random(8, 1000, seed=0))
    ok = r.checked == 1000 and r.skipped == 0 and not r.failures and r.wall_time < 30
    report("AC4", ok, f"metrics={r.checked} skipped={r.skipped} failures={len(r.failures)} time={r.wall_time:.2f}s (target <30s)")
    assert ok


def test_ac5_products():
    r = run_suite("product", InstanceStream("exhaustive", 3, 0, 1000))
    ok = r.checked == 1000 and not r.failures and r.tallies["i-space-pair"] > 0
    report("AC5", ok, f"pairs={r.checked} i-space-pairs={r.tallies['i-space-pair']} failures={len(r.failures)}")
    assert ok


def test_ac6_embeddings():
    r = run_suite("embedding", InstanceStream.exhaustive(3))
    ok = r.checked == 841 and r.checked - r.skipped == 19 and not r.failures
    report("AC6", ok, f"ordered-completely-regular={r.checked - r.skipped} skipped={r.skipped} failures={len(r.failures)}")
    assert ok


def test_ac7_appendix():
    r = run_suite("appendix", InstanceStream.exhaustive(3))
    ok = r.checked == 841 and r.checked - r.skipped == 29 and not r.failures
    report("AC7", ok, f"completely-regular={r.checked - r.skipped} failures={len(r.failures)}")
    assert ok


def test_ac8_oracle_cross_checks():
    a = run_suite("oracle-continuity", InstanceStream.exhaustive(3))
    b = run_suite("oracle-balls", InstanceStream.random(6, 500, seed=0))
    count = len(enumerate_topologies(3))
    brute = oracles.count_topologies(3)
    ok = (
        a.checked == 841 and not a.failures
        and b.checked == 500 and not b.failures
        and count == brute == 29
    )
    report(
        "AC8", ok,
        f"continuity={a.checked}/{len(a.failures)} balls={b.checked}/{len(b.failures)} topologies={count} brute-force={brute}",
    )
    assert ok
