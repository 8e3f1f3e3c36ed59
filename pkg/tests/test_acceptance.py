"""Acceptance criteria.

Each test implements one acceptance criterion at its stated tolerance
(exact values everywhere) and enforces the stated runtime budget.  Run with

    pytest tests/test_acceptance.py -v -s

to see one PASS line per criterion.
"""

import itertools
import random
import time

import pytest

from vspart.codes import code_from_partition, verify_perfect
from vspart.construct import (
    build_t_partition,
    hyperplane_section,
    lift,
    near_spread,
    spread,
)
from vspart.designs import design_from_partition, verify_design
from vspart.dioph import TypeSolution, annotate, classify_gf2_23, solve
from vspart.errors import UncoveredCase
from vspart.gf import make_field
from vspart.partition import (
    PartitionType,
    bound_report,
    is_T_partition,
    trivial_partition,
    type_of,
    verify,
)
from vspart.search import EXHAUSTED, FOUND, conjecture_scan, enumerate_all, find_partition

GF2 = make_field(2, 1)

ENUM_SPACES = [(2, 2), (2, 3), (2, 4), (3, 2)]


def _pass(number, text):
    print(f"\nACCEPTANCE {number:02d} PASS: {text}")


@pytest.fixture(scope="module")
def construction_corpus():
    """Every closed-form construction exercised by the criteria."""
    parts = [
        spread(2, 4, 2),
        spread(2, 6, 2),
        spread(2, 6, 3),
        spread(3, 4, 2),
        near_spread(2, 5, 2),
        near_spread(2, 7, 3),
        near_spread(3, 5, 2),
        hyperplane_section(2, 2, 2),
        hyperplane_section(3, 2, 2),
        hyperplane_section(2, 2, 3),
        lift(spread(2, 4, 2), 4).partition,
        build_t_partition(2, {1, 2}, 4),
        build_t_partition(2, {2, 3}, 6),
        build_t_partition(2, {2, 3}, 8),
        build_t_partition(2, {1, 2, 3}, 5),
    ]
    return parts


def test_criterion_01_spread_counts():
    for q, n, d in [(2, 4, 2), (2, 6, 2), (2, 6, 3), (3, 4, 2)]:
        start = time.perf_counter()
        p = spread(q, n, d)
        elapsed = time.perf_counter() - start
        expected = (q**n - 1) // (q**d - 1)
        assert p.r == expected, (q, n, d)
        assert verify(p).valid
        assert elapsed < 1.0, f"spread({q},{n},{d}) took {elapsed:.2f}s"
    _pass(1, "spread component counts exact and verified, each under 1 s")


def test_criterion_02_near_spread_types():
    for q, n, d in [(2, 5, 2), (2, 7, 3), (3, 5, 2)]:
        start = time.perf_counter()
        p = near_spread(q, n, d)
        elapsed = time.perf_counter() - start
        assert type_of(p) == PartitionType.of((q ** (n - d), d), (1, n - d)), (q, n, d)
        assert verify(p).valid
        assert elapsed < 1.0
    _pass(2, "near-spread types exact, each under 1 s")


def test_criterion_03_lift_count_law():
    # Two worked examples.
    res = lift(trivial_partition(GF2, 2), 3)
    assert len(res.lifted) == (2**3 - 1) * 1 == 7
    assert type_of(res.partition) == PartitionType.of((8, 2), (1, 3))
    res = lift(spread(2, 4, 2), 4)
    assert len(res.lifted) == (2**4 - 1) * 5 == 75
    assert res.partition.r == 77
    # Randomized small instances.
    rng = random.Random(1234)
    pool = [
        trivial_partition(GF2, 2),
        trivial_partition(GF2, 3),
        trivial_partition(make_field(3, 1), 2),
        spread(2, 4, 2),
        spread(3, 3, 1),
        hyperplane_section(2, 2, 2),
        near_spread(2, 5, 2),
    ]
    checked = 0
    for _ in range(12):
        p = rng.choice(pool)
        q = p.field.q
        m_prime = max(c.dim for c in p.components) + rng.randrange(0, 2)
        if q ** (p.n + m_prime) > 1 << 16:
            continue
        res = lift(p, m_prime)
        assert len(res.lifted) == (q**m_prime - 1) * p.r
        assert verify(res.partition).valid
        checked += 1
    assert checked >= 10
    _pass(3, f"lift component-count law exact on {checked} random and 2 worked instances")


def test_criterion_04_hyperplane_sections():
    cases = [
        (2, 2, 2, ((4, 1), (1, 2))),
        (3, 2, 2, ((9, 1), (1, 2))),
        (2, 2, 3, ((8, 2), (1, 3))),
    ]
    for q, k, d, expected in cases:
        p = hyperplane_section(q, k, d)
        assert type_of(p) == PartitionType(expected), (q, k, d)
        assert verify(p).valid
    _pass(4, "hyperplane sections match the stated types exactly")


def test_criterion_05_classification_reproduced_by_search():
    start = time.perf_counter()
    exhausted_seen = False
    for n in (3, 4, 5):
        for sol, predicted in classify_gf2_23(n):
            outcome = find_partition(2, n, sol.as_type())
            assert outcome.status in (FOUND, EXHAUSTED)
            assert outcome.found == predicted == (sol.x[0] != 1), (n, sol.x)
            if n == 5 and sol.x == (1, 4):
                assert outcome.status == EXHAUSTED
                exhausted_seen = True
    elapsed = time.perf_counter() - start
    assert exhausted_seen
    assert elapsed < 60.0, f"classification sweep took {elapsed:.1f}s"
    _pass(5, f"search reproduces the dims-(2,3) existence table for n=3,4,5 in {elapsed:.2f}s")


def test_criterion_06_necessary_condition_soundness(construction_corpus):
    corpus = list(construction_corpus)
    for q, n in ENUM_SPACES:
        corpus.extend(enumerate_all(q, n))
    violations = 0
    for p in corpus:
        q = p.field.q
        t = type_of(p)
        sol = TypeSolution(q, p.n, tuple(d for _, d in t.pairs), tuple(x for x, _ in t.pairs))
        if not annotate(sol).passes_all():
            violations += 1
        if p.r >= 2:
            rep = bound_report(p)
            if not (rep.s_ok and rep.r_ok and rep.residue_ok and rep.s_prime_ok):
                violations += 1
    assert violations == 0
    _pass(6, f"all flags and bounds hold across {len(corpus)} corpus partitions, zero violations")


def test_criterion_07_minimum_count_scan():
    reports = {}
    for q, n in ENUM_SPACES:
        rep = conjecture_scan(q, n)
        assert rep.clean, f"counterexample below q^t + 1 at ({q},{n})"
        reports[(q, n)] = rep
    assert reports[(2, 2)].min_s[1] == 3
    assert reports[(2, 4)].min_s[1] == 3
    assert reports[(2, 4)].min_s[2] == 5
    assert reports[(3, 2)].min_s[1] == 4
    _pass(7, "no partition below the q^t + 1 floor; equality witnesses found")


def test_criterion_08_dimension_set_builders():
    cases = [
        (2, {1, 2}, 4),
        (2, {2, 3}, 6),
        (2, {2, 3}, 8),
        (2, {1, 2, 3}, 5),
    ]
    for q, T, n in cases:
        start = time.perf_counter()
        p = build_t_partition(q, T, n)
        elapsed = time.perf_counter() - start
        assert verify(p).valid, (q, T, n)
        assert is_T_partition(p, T), (q, T, n)
        assert elapsed < 120.0, f"builder ({q},{T},{n}) took {elapsed:.1f}s"
    with pytest.raises(UncoveredCase):
        build_t_partition(2, {3}, 7)
    _pass(8, "all four builder cases verified; infeasible request reported as uncovered")


def test_criterion_09_code_and_design_correspondence():
    start = time.perf_counter()
    s = spread(2, 4, 2)
    code = code_from_partition(s)
    assert code.size == 64
    assert 64 * 16 == 4**5 == 1024
    report = verify_perfect(code)
    assert report.sphere_ok
    assert report.min_distance == 3
    design = design_from_partition(s)
    assert len(design.classes) == 5
    drep = verify_design(design)
    assert drep.valid
    # The pair condition, checked literally over all C(16, 2) = 120 pairs.
    blocks = [b for cls in design.classes for b in cls]
    pairs_checked = 0
    for x, y in itertools.combinations(range(16), 2):
        containing = sum(1 for b in blocks if x in b and y in b)
        assert containing == 1, (x, y)
        pairs_checked += 1
    assert pairs_checked == 120
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _pass(9, f"code size 64, spheres tile 4^5, distance 3; design resolves with every pair once ({elapsed:.2f}s)")


def test_criterion_10_search_agrees_with_enumeration():
    total = 0
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        realized = {type_of(p).pairs for p in enumerate_all(q, n)}
        goals = set()
        for k in (1, 2, 3):
            for dims in itertools.combinations(range(1, n + 1), k):
                for sol in solve(q, n, dims):
                    if all(x > 0 for x in sol.x):
                        goals.add(tuple(zip(sol.x, sol.dims)))
        for pairs in goals:
            outcome = find_partition(q, n, PartitionType(pairs))
            assert (outcome.status == FOUND) == (pairs in realized), (q, n, pairs)
            total += 1
    _pass(10, f"search and full enumeration agree on all {total} goal types")
