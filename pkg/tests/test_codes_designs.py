"""Code and design extraction from partitions."""

import pytest

from vspart.codes import code_from_partition, code_parameters, verify_perfect
from vspart.construct import near_spread, spread
from vspart.designs import design_from_partition, verify_design
from vspart.errors import TooLarge
from vspart.gf import make_field
from vspart.linalg import canonicalize, enumerate_subspaces
from vspart.partition import Partition, trivial_partition

GF2 = make_field(2, 1)


def lines_partition(field, n):
    return Partition(field, n, tuple(enumerate_subspaces(field, n, 1)))


def corrupted_cover():
    """Spanning components that overlap: a cover, not a partition."""
    s = spread(2, 4, 2)
    extra = canonicalize([s.components[0].basis[0]], GF2, 4)
    return Partition(GF2, 4, s.components + (extra,))


# ---------------------------------------------------------------------------
# codes
# ---------------------------------------------------------------------------

def test_code_of_trivial_partition_is_zero_word():
    code = code_from_partition(trivial_partition(GF2, 3))
    assert code.codewords == ((0,),)


def test_code_of_2spread_v4():
    code = code_from_partition(spread(2, 4, 2))
    assert code.size == 4**5 // 16 == 64
    assert code.alphabet_sizes == (4, 4, 4, 4, 4)
    # Linear: closed under componentwise sums comes from the kernel build;
    # containment of zero is directly visible.
    assert (0, 0, 0, 0, 0) in code.codewords


def test_code_of_line_spread_v2():
    code = code_from_partition(lines_partition(GF2, 2))
    assert code.size == 2**3 // 4 == 2
    words = set(code.codewords)
    assert (0, 0, 0) in words
    nonzero = (words - {(0, 0, 0)}).pop()
    assert all(c != 0 for c in nonzero)


def test_code_parameters_without_enumeration():
    params = code_parameters(spread(2, 6, 2))
    assert params["length"] == 21
    assert params["size"] == 4**21 // 2**6


def test_code_guard():
    with pytest.raises(TooLarge):
        code_from_partition(spread(2, 6, 2))  # 4^21 alphabet product


def test_perfect_2spread_v4():
    rep = verify_perfect(code_from_partition(spread(2, 4, 2)))
    assert rep.size == 64
    assert rep.sphere_ok  # 64 * 16 = 4^5
    assert rep.min_distance == 3
    assert rep.perfect


def test_perfect_line_spread_v2():
    rep = verify_perfect(code_from_partition(lines_partition(GF2, 2)))
    assert rep.size * 4 == 8
    assert rep.sphere_ok
    assert rep.perfect


def test_perfect_near_spread_v5():
    # 16384 codewords: exercises the weight-scan route.
    rep = verify_perfect(code_from_partition(near_spread(2, 5, 2)))
    assert rep.sphere_ok and rep.distance_ok


def test_distance_routes_agree():
    # The codes are closed under componentwise differences, so the pairwise
    # minimum distance equals the minimum nonzero weight.
    code = code_from_partition(spread(2, 4, 2))
    pairwise = verify_perfect(code).min_distance
    zero = (0,) * code.length
    weights = [sum(1 for a in w if a != 0) for w in code.codewords if w != zero]
    assert min(weights) == pairwise == 3


def test_cover_input_fails_perfection():
    rep = verify_perfect(code_from_partition(corrupted_cover()))
    assert not rep.sphere_ok
    assert rep.min_distance is not None and rep.min_distance < 3
    assert not rep.perfect


# ---------------------------------------------------------------------------
# designs
# ---------------------------------------------------------------------------

def test_design_line_spread_v2():
    d = design_from_partition(lines_partition(GF2, 2))
    assert d.point_count == 4
    assert len(d.classes) == 3
    assert all(len(cls) == 2 for cls in d.classes)
    assert all(len(b) == 2 for cls in d.classes for b in cls)
    rep = verify_design(d)
    assert rep.valid
    # 6 blocks of size 2 cover the 6 point pairs once each.
    assert d.block_count == 6


def test_design_2spread_v4():
    d = design_from_partition(spread(2, 4, 2))
    assert len(d.classes) == 5
    assert all(len(cls) == 4 for cls in d.classes)
    rep = verify_design(d)
    assert rep.valid
    assert rep.block_sizes == (4, 4, 4, 4, 4)
    # Pair count bookkeeping: 5 classes x 4 blocks x C(4,2) = C(16,2).
    assert 5 * 4 * 6 == 16 * 15 // 2


def test_design_trivial_partition():
    d = design_from_partition(trivial_partition(GF2, 3))
    assert len(d.classes) == 1
    assert verify_design(d).valid


def test_design_over_gf3():
    d = design_from_partition(lines_partition(make_field(3, 1), 2))
    rep = verify_design(d)
    assert rep.valid
    assert rep.class_count == 4
    assert rep.block_sizes == (3, 3, 3, 3)


def test_design_cover_input_fails():
    rep = verify_design(design_from_partition(corrupted_cover()))
    assert not rep.pair_ok
    assert not rep.valid


def test_design_guard():
    big = make_field(2, 17)
    with pytest.raises(TooLarge):
        design_from_partition(trivial_partition(big, 1))


def test_corpus_codes_and_designs_all_pass():
    # Every desk-size valid partition yields a perfect code and a valid design.
    corpus = [
        spread(2, 4, 2),
        near_spread(2, 5, 2),
        lines_partition(GF2, 2),
        lines_partition(GF2, 3),
        lines_partition(make_field(3, 1), 2),
        __import__("vspart").hyperplane_section(2, 2, 2),
        __import__("vspart").hyperplane_section(3, 2, 2),
        __import__("vspart").build_t_partition(2, {1, 2}, 4),
    ]
    for p in corpus:
        if p.r >= 2:
            assert verify_perfect(code_from_partition(p)).perfect
        assert verify_design(design_from_partition(p)).valid
