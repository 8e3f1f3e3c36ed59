"""Canonical linear algebra over GF(q).

Vectors are tuples of element codes.  A subspace is stored by its reduced
row echelon basis (unit pivots, zeros above and below each pivot), which is
unique per subspace, so two Subspace values are equal as sets exactly when
they compare equal.  The integer encoding of a vector reads the coordinates
as base-q digits with the first coordinate most significant, so tuple order
and code order agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import BudgetExceeded, DimensionMismatch, TooLarge
from .gf import FieldSpec

Vector = Tuple[int, ...]

NONZERO_ENUM_LIMIT = 1 << 24
SUBSPACE_ENUM_BUDGET = 2_000_000


@dataclass(frozen=True, slots=True)
class Subspace:
    """A subspace of V_n(q) in canonical reduced echelon form."""

    field: FieldSpec
    n: int
    basis: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sort_key(self) -> Tuple[int, ...]:
        """Flattened basis, the canonical ordering key for components."""
        return tuple(x for row in self.basis for x in row)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, q={self.field.q})"


def encode_vector(coords: Sequence[int], q: int) -> int:
    code = 0
    for c in coords:
        code = code * q + c
    return code


def decode_vector(code: int, q: int, n: int) -> Vector:
    coords = []
    for _ in range(n):
        coords.append(code % q)
        code //= q
    return tuple(reversed(coords))


def vec_add(field: FieldSpec, u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_scale(field: FieldSpec, c: int, v: Sequence[int]) -> Vector:
    return tuple(field.mul(c, a) for a in v)


def _check_vectors(vectors: Iterable[Sequence[int]], field: FieldSpec, n: int) -> List[List[int]]:
    rows = []
    for v in vectors:
        row = list(v)
        if len(row) != n:
            raise DimensionMismatch(f"vector {tuple(v)} does not live in dimension {n}")
        for x in row:
            if not 0 <= x < field.q:
                raise DimensionMismatch(f"coordinate {x} is not a code of {field}")
        rows.append(row)
    return rows


def _rref(rows: List[List[int]], field: FieldSpec, n: int) -> Tuple[Tuple[Vector, ...], Tuple[int, ...]]:
    m = rows
    pivots: List[int] = []
    r = 0
    for c in range(n):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        lead = m[r][c]
        if lead != 1:
            inv = field.inv(lead)
            m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    basis = tuple(tuple(m[i]) for i in range(r))
    return basis, tuple(pivots)


def canonicalize(vectors: Iterable[Sequence[int]], field: FieldSpec, n: int) -> Subspace:
    """Span of the given vectors in canonical reduced echelon form.

    Idempotent: canonicalizing a canonical basis returns the same basis.
    """
    rows = _check_vectors(vectors, field, n)
    basis, pivots = _rref(rows, field, n)
    return Subspace(field, n, basis, pivots)


def zero_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, (), ())


def full_space(field: FieldSpec, n: int) -> Subspace:
    return coordinate_subspace(field, n, range(n))


def coordinate_subspace(field: FieldSpec, n: int, cols: Iterable[int]) -> Subspace:
    """Span of the unit vectors at the given coordinate positions."""
    cols = tuple(sorted(cols))
    basis = tuple(tuple(1 if j == c else 0 for j in range(n)) for c in cols)
    return Subspace(field, n, basis, cols)


def _require_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.field != b.field or a.n != b.n:
        raise DimensionMismatch("subspaces live in different ambient spaces")


def join(a: Subspace, b: Subspace) -> Subspace:
    _require_same_ambient(a, b)
    return canonicalize(a.basis + b.basis, a.field, a.n)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection, computed by the Zassenhaus double-block reduction."""
    _require_same_ambient(a, b)
    field, n = a.field, a.n
    rows = [list(r) + list(r) for r in a.basis] + [list(r) + [0] * n for r in b.basis]
    basis, _ = _rref(rows, field, 2 * n)
    meet_rows = [row[n:] for row in basis if not any(row[:n])]
    return canonicalize(meet_rows, field, n)


def contains(s: Subspace, v: Sequence[int]) -> bool:
    if len(v) != s.n:
        raise DimensionMismatch(f"vector of length {len(v)} in dimension {s.n}")
    field = s.field
    w = list(v)
    for row, pc in zip(s.basis, s.pivots):
        c = w[pc]
        if c != 0:
            w = [field.sub(x, field.mul(c, y)) for x, y in zip(w, row)]
    return not any(w)


def kernel_basis(rows: Sequence[Sequence[int]], field: FieldSpec, ncols: int) -> List[Vector]:
    """Basis of the right null space of the given matrix."""
    basis, pivots = _rref([list(r) for r in rows], field, ncols)
    pivot_set = set(pivots)
    out = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(basis, pivots):
            v[pc] = field.neg(row[free])
        out.append(tuple(v))
    return out


def complement(s: Subspace) -> Subspace:
    """A complement of s: meet trivial and dimensions summing to n.

    The orthogonal complement under the standard dot product is returned
    when it meets s trivially; otherwise (possible over small fields for
    self-orthogonal directions) the deterministic fallback spanned by the
    unit vectors at the non-pivot coordinates is used.
    """
    field, n = s.field, s.n
    if s.dim == 0:
        return full_space(field, n)
    ortho = canonicalize(kernel_basis(s.basis, field, n), field, n)
    if canonicalize(s.basis + ortho.basis, field, n).dim == n:
        return ortho
    free_cols = [c for c in range(n) if c not in set(s.pivots)]
    return coordinate_subspace(field, n, free_cols)


def subspace_vector_codes(s: Subspace) -> List[int]:
    """Integer codes of the nonzero vectors of s, unsorted."""
    field, q, n = s.field, s.field.q, s.n
    if field.p == 2 and field.e == 1:
        codes = [0]
        for row in s.basis:
            rc = encode_vector(row, 2)
            codes += [c ^ rc for c in codes]
        return codes[1:]
    vectors = [(0,) * n]
    for row in s.basis:
        scaled = [vec_scale(field, c, row) for c in range(q)]
        vectors = [vec_add(field, v, sr) for v in vectors for sr in scaled]
    return [encode_vector(v, q) for v in vectors if any(v)]


def nonzero_mask(s: Subspace) -> int:
    """Bitmask with one bit per nonzero vector of s, indexed by vector code."""
    m = 0
    for c in subspace_vector_codes(s):
        m |= 1 << c
    return m


def enumerate_nonzero(s: Subspace) -> List[Vector]:
    """The q^d - 1 nonzero vectors of s, ordered by integer encoding."""
    if s.field.q**s.dim > NONZERO_ENUM_LIMIT:
        raise TooLarge(f"subspace with {s.field.q}^{s.dim} elements exceeds the enumeration guard")
    codes = sorted(subspace_vector_codes(s))
    return [decode_vector(c, s.field.q, s.n) for c in codes]


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of V_n(q)."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def enumerate_subspaces(
    field: FieldSpec, n: int, d: int, budget: int | None = SUBSPACE_ENUM_BUDGET
) -> List[Subspace]:
    """Every d-dimensional subspace of V_n(q), in canonical-basis lex order.

    The count always equals the Gaussian binomial; a budget (None disables
    the check) guards against accidentally huge enumerations.
    """
    total = gaussian_binomial(n, d, field.q)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} subspaces exceed the budget {budget}")
    if d == 0:
        return [zero_space(field, n)]
    out = []
    for pivots in itertools.combinations(range(n), d):
        pivot_set = set(pivots)
        free_cells = [
            (i, j)
            for i in range(d)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        template = [[0] * n for _ in range(d)]
        for i, pc in enumerate(pivots):
            template[i][pc] = 1
        for values in itertools.product(field.elements(), repeat=len(free_cells)):
            rows = [row[:] for row in template]
            for (i, j), v in zip(free_cells, values):
                rows[i][j] = v
            basis = tuple(tuple(r) for r in rows)
            out.append(Subspace(field, n, basis, pivots))
    out.sort(key=Subspace.sort_key)
    assert len(out) == total
    return out
