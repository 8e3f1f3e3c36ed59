"""Resolvable block designs cut out of a partition.

The points are all q^n vectors; the blocks are every coset of every
component.  Blocks of one component form a resolution class partitioning
the points, every pair of distinct points lies in exactly one block, and
translation by any fixed vector permutes the blocks within each class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .errors import TooLarge
from .gf import FieldSpec
from .linalg import decode_vector, encode_vector, vec_add
from .partition import Partition

DESIGN_POINT_LIMIT = 1 << 16


@dataclass(frozen=True)
class CosetDesign:
    """Blocks grouped into one resolution class per component.

    Blocks are sorted tuples of point codes; the block containing 0 in each
    class is the component itself.
    """

    field: FieldSpec
    n: int
    classes: Tuple[Tuple[Tuple[int, ...], ...], ...]

    @property
    def point_count(self) -> int:
        return self.field.q**self.n

    @property
    def block_count(self) -> int:
        return sum(len(cls) for cls in self.classes)


@dataclass(frozen=True)
class DesignReport:
    pair_ok: bool          # every pair of distinct points in exactly one block
    classes_ok: bool       # each class partitions the points with uniform size
    translation_ok: bool   # translations permute blocks inside each class
    class_count: int
    block_sizes: Tuple[int, ...]

    @property
    def valid(self) -> bool:
        return self.pair_ok and self.classes_ok and self.translation_ok


def design_from_partition(p: Partition) -> CosetDesign:
    field = p.field
    q = field.q
    total = q**p.n
    if total > DESIGN_POINT_LIMIT:
        raise TooLarge("design enumeration beyond the 2^16 point guard")
    classes: List[Tuple[Tuple[int, ...], ...]] = []
    for c in p.components:
        member_codes = _member_codes(c, p.n)
        seen = [False] * total
        blocks = []
        for v in range(total):
            if seen[v]:
                continue
            vv = decode_vector(v, q, p.n)
            block = sorted(
                encode_vector(vec_add(field, vv, decode_vector(m, q, p.n)), q)
                for m in member_codes
            )
            for code in block:
                seen[code] = True
            blocks.append(tuple(block))
        blocks.sort()
        classes.append(tuple(blocks))
    return CosetDesign(field, p.n, tuple(classes))


def _member_codes(subspace, n: int) -> List[int]:
    from .linalg import subspace_vector_codes

    return [0] + subspace_vector_codes(subspace)


def verify_design(d: CosetDesign) -> DesignReport:
    """Check resolvability, the pairs-once property, and translation invariance.

    The pairs-once check runs through difference vectors: a pair {x, y}
    lies in a block of class i exactly when x - y belongs to component i,
    so it suffices that every nonzero vector belongs to exactly one class's
    zero block.
    """
    field, n = d.field, d.n
    q = field.q
    total = q**n
    zero_blocks = []
    classes_ok = True
    block_sizes = []
    for cls in d.classes:
        sizes = {len(b) for b in cls}
        covered: Dict[int, int] = {}
        for b in cls:
            for pt in b:
                covered[pt] = covered.get(pt, 0) + 1
        if len(sizes) != 1 or len(covered) != total or any(c != 1 for c in covered.values()):
            classes_ok = False
        size = sizes.pop() if len(sizes) == 1 else 0
        block_sizes.append(size)
        zero_blocks.append(next((set(b) for b in cls if 0 in b), set()))
    pair_ok = all(
        sum(1 for zb in zero_blocks if v in zb) == 1 for v in range(1, total)
    )
    translation_ok = True
    for t in _translation_samples(total):
        tv = decode_vector(t, q, n)
        for cls in d.classes:
            translated = {
                tuple(sorted(encode_vector(vec_add(field, decode_vector(x, q, n), tv), q) for x in b))
                for b in cls
            }
            if translated != set(cls):
                translation_ok = False
    return DesignReport(pair_ok, classes_ok, translation_ok, len(d.classes), tuple(block_sizes))


def _translation_samples(total: int) -> List[int]:
    """A deterministic spot-check sample of translation vectors."""
    picks = {1, total - 1, total // 2}
    return sorted(v for v in picks if 1 <= v < total)
