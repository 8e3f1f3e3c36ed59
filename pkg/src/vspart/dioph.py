"""Feasibility analysis of component counts.

A partition of V_n(q) with x_i components of dimension n_i satisfies the
counting equation sum_i (q^{n_i} - 1) x_i = q^n - 1.  This module
enumerates the non-negative solutions for a fixed dimension list and
annotates each with the stack of known necessary conditions.  Passing
every flag never asserts that a partition exists; failing any flag proves
it does not.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BudgetExceeded, NotASolution
from .partition import PartitionType

SOLVE_BUDGET = 1_000_000

# Flag names, in report order.  Each is an exact predicate on a solution:
#   dim_pairs          two distinct present dimensions sum to at most n, and a
#                      dimension above n/2 has multiplicity at most 1
#   hyperplane_split   the counts can be split into components lying inside a
#                      hyperplane and components meeting it one dimension
#                      lower, so the induced counts solve the equation at n-1
#   min_count_two      the smallest present dimension has multiplicity >= 2
#   min_lines_three    over GF(2), if the smallest present dimension is 1 its
#                      multiplicity is >= 3
#   min_count_q1       the smallest present multiplicity is >= q + 1
#   min_count_qt       the smallest present multiplicity is >= q + t
#   r_range            q^t + 1 <= r <= floor((q^n - 1) / (q^t - 1))
#   r_residue          r == 1 (mod q^t)
# with t the smallest present dimension and r the component total.  The
# minimum-count and r flags apply only to non-trivial solutions (r >= 2).
FLAG_NAMES = (
    "dim_pairs",
    "hyperplane_split",
    "min_count_two",
    "min_lines_three",
    "min_count_q1",
    "min_count_qt",
    "r_range",
    "r_residue",
)


@dataclass(frozen=True)
class TypeSolution:
    """A non-negative solution of the counting equation, optionally annotated."""

    q: int
    n: int
    dims: Tuple[int, ...]
    x: Tuple[int, ...]
    flags: Optional[Dict[str, bool]] = None

    @property
    def r(self) -> int:
        return sum(self.x)

    def present(self) -> List[Tuple[int, int]]:
        """(dimension, multiplicity) pairs with positive multiplicity."""
        return [(d, x) for d, x in zip(self.dims, self.x) if x > 0]

    def as_type(self) -> PartitionType:
        return PartitionType(tuple((x, d) for x, d in zip(self.x, self.dims)))

    def passes_all(self) -> bool:
        if self.flags is None:
            raise ValueError("solution has not been annotated")
        return all(self.flags.values())

    def __str__(self) -> str:
        return f"x={self.x} dims={self.dims}"


def _validate_dims(n: int, dims: Sequence[int]) -> Tuple[int, ...]:
    dims = tuple(dims)
    if not dims:
        raise ValueError("at least one dimension is required")
    if any(d < 1 or d > n for d in dims):
        raise ValueError("dimensions must lie in 1..n")
    if any(a >= b for a, b in zip(dims, dims[1:])):
        raise ValueError("dimensions must be strictly increasing")
    return dims


def solve(q: int, n: int, dims: Sequence[int], budget: int = SOLVE_BUDGET) -> List[TypeSolution]:
    """All non-negative solutions of sum (q^{n_i} - 1) x_i = q^n - 1.

    Complete by bounded nested enumeration, with exact divisibility at the
    last coordinate; results are in ascending lexicographic order.
    """
    dims = _validate_dims(n, dims)
    terms = [q**d - 1 for d in dims]
    target = q**n - 1
    out: List[TypeSolution] = []

    def rec(i: int, rem: int, prefix: Tuple[int, ...]) -> None:
        if i == len(terms) - 1:
            if rem % terms[i] == 0:
                if len(out) >= budget:
                    raise BudgetExceeded(f"more than {budget} solutions")
                out.append(TypeSolution(q, n, dims, prefix + (rem // terms[i],)))
            return
        for x in range(rem // terms[i] + 1):
            rec(i + 1, rem - x * terms[i], prefix + (x,))

    rec(0, target, ())
    return out


def _hyperplane_splittable(
    q: int, dims: Tuple[int, ...], x: Tuple[int, ...], n: int, depth: int
) -> bool:
    """Can the counts split across a hyperplane section?

    Looks for a_i + b_i = x_i with a_i components meeting the hyperplane in
    full dimension n_i and b_i in dimension n_i - 1, such that the induced
    counts solve the equation at n - 1.  With depth > 1 the induced counts
    must recursively pass the same test.
    """
    target = q ** (n - 1) - 1
    k = len(dims)
    inside = [q**d - 1 for d in dims]
    dropped = [q ** (d - 1) - 1 for d in dims]

    def rec(i: int, rem: int, split: Tuple[int, ...]) -> bool:
        if rem < 0:
            return False
        if i == k:
            if rem != 0:
                return False
            if depth <= 1:
                return True
            counts: Dict[int, int] = {}
            for d, xi, ai in zip(dims, x, split):
                counts[d] = counts.get(d, 0) + ai
                if d - 1 >= 1:
                    counts[d - 1] = counts.get(d - 1, 0) + (xi - ai)
            induced_dims = tuple(sorted(d for d, c in counts.items() if c > 0))
            if not induced_dims:
                return target == 0
            induced_x = tuple(counts[d] for d in induced_dims)
            return _hyperplane_splittable(q, induced_dims, induced_x, n - 1, depth - 1)
        for a in range(x[i] + 1):
            b = x[i] - a
            if rec(i + 1, rem - a * inside[i] - b * dropped[i], split + (a,)):
                return True
        return False

    return rec(0, target, ())


def annotate(sol: TypeSolution, hyperplane_depth: int = 1) -> TypeSolution:
    """Attach the full stack of necessary-condition flags to a solution.

    Raises NotASolution if the multiplicities do not solve the counting
    equation for (q, n, dims).
    """
    q, n, dims, x = sol.q, sol.n, sol.dims, sol.x
    if len(dims) != len(x) or any(v < 0 for v in x):
        raise NotASolution("malformed multiplicity vector")
    if sum(xi * (q**d - 1) for d, xi in zip(dims, x)) != q**n - 1:
        raise NotASolution(f"{x} does not solve the counting equation at q={q}, n={n}")
    present = sol.present()
    r = sol.r
    nontrivial = r >= 2
    t, x_min = present[0]

    pairs_ok = all(
        d1 + d2 <= n for i, (d1, _) in enumerate(present) for d2, _ in present[i + 1 :]
    ) and all(xi <= 1 for d, xi in present if 2 * d > n)

    flags: Dict[str, bool] = {
        "dim_pairs": pairs_ok,
        "hyperplane_split": _hyperplane_splittable(q, dims, x, n, hyperplane_depth),
        "min_count_two": (not nontrivial) or x_min >= 2,
        "min_lines_three": (not nontrivial) or not (q == 2 and t == 1) or x_min >= 3,
        "min_count_q1": (not nontrivial) or x_min >= q + 1,
        "min_count_qt": (not nontrivial) or x_min >= q + t,
        "r_range": (not nontrivial) or q**t + 1 <= r <= (q**n - 1) // (q**t - 1),
        "r_residue": (not nontrivial) or r % q**t == 1,
    }
    return replace(sol, flags=flags)


def classify_gf2_23(n: int) -> List[Tuple[TypeSolution, bool]]:
    """Solutions of 3 x_1 + 7 x_2 = 2^n - 1 with their existence verdicts.

    Over GF(2) with component dimensions 2 and 3, a partition of the given
    counts exists exactly when x_1 != 1.
    """
    if n < 3:
        raise ValueError("classification requires n >= 3")
    return [(sol, sol.x[0] != 1) for sol in solve(2, n, (2, 3))]
