"""Exit criteria for the package, one test per criterion.

Each test records a one-line verdict; ``conftest.py`` prints them at the end
of the run.
"""

import json
import math
import random
import time

import pytest

from ksimplex.arith import multinomial
from ksimplex.census import census_run, census_store, checkpoint_load
from ksimplex.cli import main
from ksimplex.counter import count_exact, order_classes, sum_via_counts, sum_via_simplex
from ksimplex.propositions import (
    EQ_LARGE,
    EQ_SMALL,
    check_factorial_identity,
    fibonacci_collision,
    known_large_values_audit,
    lemma1_property,
    prop2_family,
    prop3_audit,
    prop4_audit,
)
from oracles import capped_counts

A0 = 2671465728531600

pytestmark = pytest.mark.acceptance


@pytest.fixture
def verdict(request):
    results = request.config.acceptance_results
    name = request.node.name
    state = {"note": ""}

    def note(text):
        state["note"] = text

    yield note
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    results[name] = (ok, state["note"])


def cli_json(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, json.loads(out)


def test_c01_triangle_census(capsys, verdict):
    t = time.perf_counter()
    code, doc = cli_json(capsys, "census", "--k", "2", "--layers", "1000")
    elapsed = time.perf_counter() - t
    hist = doc["result"]["by_multiplicity"]
    verdict(f"{hist} in {elapsed:.1f}s")
    assert code == 0
    assert hist == {"1": 494, "2": 248861, "3": 5, "4": 63, "6": 3}
    assert elapsed < 120


def test_c02_pyramid_census(capsys, verdict):
    t = time.perf_counter()
    code, doc = cli_json(capsys, "census", "--k", "3", "--layers", "250", "--jobs", "4")
    elapsed = time.perf_counter() - t
    r = doc["result"]
    verdict(f"distinct {r['distinct_total']}, six-fold {r['by_multiplicity']['6']} in {elapsed:.1f}s")
    assert code == 0
    assert r["distinct_total"] == 445666
    assert r["by_multiplicity"]["6"] == 429135
    assert elapsed < 600


def test_c03_count_3003(verdict):
    t = time.perf_counter()
    n = count_exact(3003, 2).total
    elapsed = time.perf_counter() - t
    verdict(f"N_2(3003) = {n} in {elapsed * 1000:.2f}ms")
    assert n == 8
    assert elapsed < 1


def test_c04_count_two(verdict):
    got = {k: count_exact(2, k).total for k in range(2, 8)}
    verdict(f"N_k(2) = {got}")
    assert got == {k: math.comb(k, 2) for k in range(2, 8)}


def test_c05_scan(capsys, verdict):
    t = time.perf_counter()
    code, doc = cli_json(capsys, "scan", "--k", "2", "--cap", "100000", "--threshold", "6")
    elapsed = time.perf_counter() - t
    values = [int(h["a"]) for h in doc["result"]]
    verdict(f"{values} in {elapsed:.2f}s")
    assert code == 0
    assert values == [120, 210, 1540, 3003, 7140, 11628, 24310]
    assert elapsed < 60


def test_c06_oracle_equivalence(verdict):
    t = time.perf_counter()
    mismatches = []
    for k in (2, 3):
        oracle = capped_counts(k, 2000)
        mismatches += [(a, k) for a in range(2, 2001) if count_exact(a, k).total != oracle[a]]
    elapsed = time.perf_counter() - t
    verdict(f"{len(mismatches)} mismatches over a <= 2000, k in (2, 3), {elapsed:.0f}s")
    assert mismatches == []
    assert elapsed < 600


def test_c07_dual_sum(verdict):
    rows = []
    for M in (100, 1000):
        for k in (2, 3):
            rows.append((M, k, sum_via_counts(M, k), sum_via_simplex(M, k).total))
    verdict("; ".join(f"M={M},k={k}: {a}={b}" for M, k, a, b in rows))
    assert all(a == b for *_, a, b in rows)


def test_c08_average_and_normal_order(verdict):
    M = 10**4
    avg2 = sum_via_counts(M, 2) / M
    avg3 = sum_via_counts(M, 3) / M
    fs = {(m, k): order_classes(m, k).f for m, k in ((10, 2), (1000, 3), (M, 2), (M, 3))}
    verdict(f"avg2 {avg2:.4f}, avg3 {avg3:.4f}, f values {set(fs.values())}")
    assert abs(avg2 / 2 - 1) <= 0.05
    assert abs(avg3 / 6 - 1) <= 0.05
    assert all(f == 1 for f in fs.values())


def test_c09_identities_and_families(verdict):
    assert check_factorial_identity(EQ_SMALL)
    assert check_factorial_identity(EQ_LARGE)
    worst = None
    for m in range(28, 61):
        rep = prop3_audit(4, m)
        assert rep.achieved_bound >= 60
        assert rep.details["exact_N"] >= rep.achieved_bound
        worst = min(worst or rep.details["exact_N"], rep.details["exact_N"])
    p2 = prop2_family(4, 10**6)
    members = p2.details["members"]
    verdict(f"eq1, eq2 ok; prop3 min exact N {worst}; prop2 {len(members)} members all N >= 24")
    assert all(r["N"] is not None and r["N"] >= 24 for r in members)


def test_c10_large_values(verdict):
    times = {}
    counts = {}
    for k in (3, 4):
        t = time.perf_counter()
        counts[k] = count_exact(A0, k).total
        times[k] = time.perf_counter() - t
    rep = known_large_values_audit()
    verdict(f"N_3 = {counts[3]}, N_4 = {counts[4]} (exact)")
    assert counts[3] >= 30 and counts[4] >= 180
    assert rep.details["k3"]["exact_N"] == counts[3]
    assert rep.details["k4"]["exact_N"] == counts[4]
    assert max(times.values()) < 60


def test_c11_prop4_audit(capsys, verdict):
    rep = prop4_audit(7, 72)
    cands = rep.details["candidates"]
    verdict(f"achieved {rep.achieved_bound} vs claimed {rep.claimed_bound}: {rep.status}")
    assert [c["verified"] for c in cands[:3]] == [True] * 3
    assert all(c["orbit"] == 5040 for c in cands[:3])
    assert cands[3]["reason"] == "part sum 48 ≠ 47"
    assert rep.achieved_bound >= 15162
    assert rep.claimed_bound == 17682 and rep.status != "confirmed"
    code, doc = cli_json(capsys, "audit", "prop4", "--k", "7", "--m", "72")
    assert code == 4


def test_c12_fibonacci(verdict):
    rows = [fibonacci_collision(i) for i in range(1, 5)]
    verdict(f"holds for i=1..4, i=1 value {rows[0]['value']}")
    assert all(r["holds"] for r in rows)
    assert rows[0]["value"] == 3003


def test_c13_property_suites(tmp_path, verdict):
    rnd = random.Random(20261015)
    for _ in range(1000):
        k = rnd.randint(2, 7)
        t = tuple(rnd.randint(0, 50) for _ in range(k))
        j = rnd.randint(1, k)
        assert lemma1_property(t, j)
        bumped = t[: j - 1] + (t[j - 1] + 1,) + t[j:]
        assert multinomial(bumped) * (t[j - 1] + 1) == multinomial(t) * (sum(t) + 1)
    for k in (2, 3, 4):
        for n in (1, 10, 50, 100):
            h = census_run(k, n)
            mass = sum(m * c for m, c in h.by_multiplicity.items())
            assert mass + h.ones_entries == h.entries_total == math.comb(n - 1 + k, k)
    base = census_store(3, 100, shards=1).counts
    for shards in (2, 8):
        assert census_store(3, 100, shards=shards).counts == base
    fresh = census_run(3, 250)
    census_store(3, 250, checkpoint_dir=tmp_path, checkpoint_every=50, stop_after=100)
    assert checkpoint_load(tmp_path)[0].layers_completed == 100
    resumed = census_run(3, 250, checkpoint_dir=tmp_path, resume=True, jobs=2)
    verdict("lemma 1, ratio identity, mass conservation, shards, resume")
    assert resumed == fresh
