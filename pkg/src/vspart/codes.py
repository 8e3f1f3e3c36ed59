"""Mixed-alphabet linear codes cut out of a partition.

For components V_1, ..., V_r, the code lives in V_1 x ... x V_r and
consists of the tuples whose componentwise sum is zero.  Distance is the
mixed Hamming distance: the number of coordinates in which two words
differ, each coordinate ranging over its own alphabet.  When the
components really partition the space, the code's radius-1 spheres tile
the product exactly and the minimum distance is at least 3; both
properties fail for a corrupted input, which is what the checker reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import TooLarge
from .gf import FieldSpec
from .linalg import encode_vector, kernel_basis, vec_add, vec_scale
from .partition import Partition

CODE_ENUM_LIMIT = 1 << 24
PAIRWISE_SCAN_LIMIT = 3000


@dataclass(frozen=True)
class MixedCode:
    """Codewords over per-coordinate alphabets of sizes q^{n_i}.

    Coordinate i of a codeword is the integer encoding of the element of
    component i that it denotes; the length equals the component count.
    """

    field: FieldSpec
    n: int
    component_dims: Tuple[int, ...]
    codewords: Tuple[Tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.component_dims)

    @property
    def alphabet_sizes(self) -> Tuple[int, ...]:
        return tuple(self.field.q**d for d in self.component_dims)

    @property
    def size(self) -> int:
        return len(self.codewords)


@dataclass(frozen=True)
class CodeReport:
    size: int
    expected_size_ok: bool   # |W| * q^n equals the product of alphabet sizes
    sphere_ok: bool          # |W| * (1 + sum(q^{n_i} - 1)) tiles the product
    min_distance: Optional[int]
    distance_ok: bool        # minimum distance at least 3 (vacuous below 2 words)

    @property
    def perfect(self) -> bool:
        return self.sphere_ok and self.distance_ok


def code_parameters(p: Partition) -> dict:
    """Code parameters derivable without enumerating codewords."""
    q = p.field.q
    dims = tuple(c.dim for c in p.components)
    product = 1
    for d in dims:
        product *= q**d
    return {
        "length": len(dims),
        "component_dims": list(dims),
        "alphabet_sizes": [q**d for d in dims],
        "size": product // q**p.n,
        "constraint": "componentwise sum equals zero",
    }


def code_from_partition(p: Partition) -> MixedCode:
    """Materialize the sum-to-zero code of a partition's components.

    The codeword count is the product of the alphabet sizes divided by q^n.
    Guarded at a product of 2^24.
    """
    field = p.field
    q = field.q
    dims = [c.dim for c in p.components]
    product = 1
    for d in dims:
        product *= q**d
    if product > CODE_ENUM_LIMIT:
        raise TooLarge("codeword enumeration beyond the 2^24 guard")
    # Unknowns are the basis coefficients of every component, stacked; the
    # code is the kernel of the summation map into the ambient space.
    columns: List[Tuple[int, ...]] = []
    for c in p.components:
        columns.extend(c.basis)
    matrix = [[col[r] for col in columns] for r in range(p.n)]
    kernel = kernel_basis(matrix, field, len(columns))
    coeff_vectors = [(0,) * len(columns)]
    for kv in kernel:
        scaled = [vec_scale(field, s, kv) for s in field.elements()]
        coeff_vectors = [vec_add(field, v, sv) for v in coeff_vectors for sv in scaled]
    words = []
    for coeffs in coeff_vectors:
        word = []
        offset = 0
        for c in p.components:
            y = (0,) * p.n
            for j in range(c.dim):
                s = coeffs[offset + j]
                if s:
                    y = vec_add(field, y, vec_scale(field, s, c.basis[j]))
            offset += c.dim
            word.append(encode_vector(y, q))
        words.append(tuple(word))
    words.sort()
    return MixedCode(field, p.n, tuple(dims), tuple(words))


def verify_perfect(code: MixedCode) -> CodeReport:
    """Check the sphere-packing equality and the minimum distance.

    Both hold exactly when the source components form a valid non-trivial
    partition; the report never raises.  The distance comes from a pairwise
    scan at desk sizes; for larger codes it is the minimum nonzero weight,
    which is the same number because the sum-to-zero construction is closed
    under componentwise differences.
    """
    q = code.field.q
    product = 1
    for a in code.alphabet_sizes:
        product *= a
    sphere = 1 + sum(a - 1 for a in code.alphabet_sizes)
    expected_size_ok = code.size * q**code.n == product
    sphere_ok = code.size * sphere == product
    min_distance: Optional[int] = None
    words = code.codewords
    if len(words) <= PAIRWISE_SCAN_LIMIT:
        for i in range(len(words)):
            for j in range(i + 1, len(words)):
                dist = sum(1 for a, b in zip(words[i], words[j]) if a != b)
                if min_distance is None or dist < min_distance:
                    min_distance = dist
    else:
        zero = (0,) * code.length
        for w in words:
            if w == zero:
                continue
            weight = sum(1 for a in w if a != 0)
            if min_distance is None or weight < min_distance:
                min_distance = weight
    distance_ok = min_distance is None or min_distance >= 3
    return CodeReport(code.size, expected_size_ok, sphere_ok, min_distance, distance_ok)
