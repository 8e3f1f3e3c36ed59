"""Exact-cover search for partitions.

The engine covers nonzero vectors with subspaces.  Cover state is a single
arbitrary-precision bitmask indexed by vector code, so the hot loop is
integer AND; candidate components are precomputed per dimension and grouped
by their least nonzero vector.  Branching always extends the cover of the
canonically least uncovered vector: any component through that vector whose
mask avoids the covered set automatically has it as least member, so each
partition is reached exactly once, in a deterministic order.

Budget semantics: the node budget counts both tree expansions and generated
candidate subspaces, and running out is always reported as its own outcome,
never as exhaustion.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import TooLarge
from .gf import FieldSpec, field_from_order
from .linalg import Subspace, enumerate_subspaces, gaussian_binomial, nonzero_mask
from .partition import Partition, PartitionType, type_of
from .partition import verify as verify_partition

SEARCH_SPACE_LIMIT = 1 << 20
ENUMERATE_ALL_LIMIT = 1 << 12
DEFAULT_NODE_BUDGET = 20_000_000
BUDGET_ENV_VAR = "VSPART_BUDGET"

FOUND = "found"
EXHAUSTED = "exhausted"
BUDGET = "budget"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a partition search.

    status is "found" (partition attached), "exhausted" (complete search
    found none, a nonexistence certificate at this scale), or "budget".
    """

    status: str
    partition: Optional[Partition]
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _BudgetHit(Exception):
    pass


class _Counter:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit: Optional[int]):
        self.nodes = 0
        self.limit = limit

    def bump(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise _BudgetHit

    def charge(self, k: int) -> None:
        """Charge k nodes up front, before the work is done."""
        if self.limit is not None and self.nodes + k > self.limit:
            raise _BudgetHit
        self.nodes += k


class _CandidateIndex:
    """Per-dimension candidate subspaces grouped by least nonzero vector."""

    def __init__(self, field: FieldSpec, n: int, counter: _Counter):
        self.field = field
        self.n = n
        self.counter = counter
        self._by_dim: Dict[int, Dict[int, List[Tuple[int, Subspace]]]] = {}

    def get(self, d: int) -> Dict[int, List[Tuple[int, Subspace]]]:
        cached = self._by_dim.get(d)
        if cached is None:
            # Charge the whole table against the node budget before building
            # it, so candidate generation cannot outrun the budget.
            self.counter.charge(gaussian_binomial(self.n, d, self.field.q))
            grouped: Dict[int, List[Tuple[int, Subspace]]] = {}
            for s in enumerate_subspaces(self.field, self.n, d, budget=None):
                mask = nonzero_mask(s)
                least = (mask & -mask).bit_length() - 1
                grouped.setdefault(least, []).append((mask, s))
            self._by_dim[d] = cached = grouped
        return cached


def _default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV_VAR, DEFAULT_NODE_BUDGET))


def _run(
    field: FieldSpec,
    n: int,
    dims: Sequence[int],
    used: Dict[int, int],
    may_place: Callable[[int], bool],
    feasible: Optional[Callable[[int], bool]],
    complete: Callable[[list], bool],
    counter: _Counter,
    candidate_order: Optional[Callable[[list], list]],
) -> None:
    """Iterative depth-first exact cover.

    may_place(d) gates a dimension before its candidates are scanned,
    feasible(points_left) prunes after a placement, and complete(placed)
    consumes a full cover, returning True to stop the whole search.  The
    per-dimension usage counts in `used` are kept in step with placements.
    """
    q = field.q
    full = (1 << q**n) - 2
    index = _CandidateIndex(field, n, counter)
    covered = 0
    points_left = q**n - 1
    placed: List[Tuple[int, Subspace, int]] = []

    def undo() -> None:
        nonlocal covered, points_left
        mask, _, d = placed.pop()
        covered ^= mask
        points_left += q**d - 1
        used[d] -= 1

    def choices():
        free = full & ~covered
        v = (free & -free).bit_length() - 1
        for d in dims:
            if not may_place(d):
                continue
            group = index.get(d).get(v, ())
            if candidate_order is not None:
                group = candidate_order(list(group))
            for mask, sub in group:
                if mask & covered == 0:
                    yield mask, sub, d

    stack = [choices()]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            if placed and len(placed) >= len(stack):
                undo()
            continue
        mask, sub, d = nxt
        counter.bump()
        covered |= mask
        points_left -= q**d - 1
        used[d] += 1
        placed.append((mask, sub, d))
        if covered == full:
            stop = complete(placed)
            undo()
            if stop:
                return
            continue
        if feasible is not None and not feasible(points_left):
            undo()
            continue
        stack.append(choices())


def _find_by_type(
    field: FieldSpec,
    n: int,
    goal: PartitionType,
    counter: _Counter,
    candidate_order,
) -> SearchOutcome:
    q = field.q
    goal = goal.normalized()
    multiplicity = {d: x for x, d in goal.pairs}
    # Branch on large components first: they are the scarce resource, and
    # placing them early prunes hopeless covers by orders of magnitude.
    dims = tuple(sorted(multiplicity, reverse=True))
    # Counting or dimension-pair violations certify nonexistence outright:
    # two disjoint subspaces must have dimensions summing to at most n.
    if goal.point_count(q) != q**n - 1:
        return SearchOutcome(EXHAUSTED, None, 0)
    for i, d1 in enumerate(dims):
        if 2 * d1 > n and multiplicity[d1] > 1:
            return SearchOutcome(EXHAUSTED, None, 0)
        if any(d1 + d2 > n for d2 in dims[i + 1 :]):
            return SearchOutcome(EXHAUSTED, None, 0)
    used = {d: 0 for d in dims}
    found: List[Partition] = []

    def complete(placed) -> bool:
        found.append(Partition(field, n, tuple(s for _, s, _ in placed)))
        return True

    try:
        _run(
            field, n, dims, used,
            lambda d: used[d] < multiplicity[d],
            None, complete, counter, candidate_order,
        )
    except _BudgetHit:
        return SearchOutcome(BUDGET, None, counter.nodes)
    if found:
        return SearchOutcome(FOUND, _certified(found[0], goal), counter.nodes)
    return SearchOutcome(EXHAUSTED, None, counter.nodes)


def _certified(p: Partition, goal) -> Partition:
    # The engine guarantees both properties; keep the contract literal.
    assert verify_partition(p).valid
    if isinstance(goal, PartitionType):
        assert type_of(p) == goal
    else:
        assert {c.dim for c in p.components} == set(goal)
    return p


def _find_by_dims(
    field: FieldSpec,
    n: int,
    dims: Tuple[int, ...],
    counter: _Counter,
    candidate_order,
) -> SearchOutcome:
    q = field.q
    if any(d1 + d2 > n for i, d1 in enumerate(dims) for d2 in dims[i + 1 :]):
        return SearchOutcome(EXHAUSTED, None, 0)
    dims = tuple(sorted(dims, reverse=True))
    used = {d: 0 for d in dims}
    capped = {d for d in dims if 2 * d > n}
    terms = {d: q**d - 1 for d in dims}
    desc = list(dims)
    feas_memo: Dict[Tuple[int, frozenset, Tuple[int, ...]], bool] = {}
    found: List[Partition] = []

    def may_place(d: int) -> bool:
        return d not in capped or used[d] < 1

    def feasible(points_left: int) -> bool:
        # Residual counting feasibility: the points still uncovered must be
        # expressible with the available dimensions, every missing dimension
        # used at least once and capped dimensions at most once.
        missing = frozenset(d for d in dims if used[d] == 0)
        caps_state = tuple(used[d] for d in sorted(capped))
        key = (points_left, missing, caps_state)
        hit = feas_memo.get(key)
        if hit is not None:
            return hit
        residual = points_left
        caps = {d: (1 - used[d]) if d in capped else None for d in dims}
        ok = True
        for d in missing:
            residual -= terms[d]
            if caps[d] is not None:
                caps[d] -= 1
                if caps[d] < 0:
                    ok = False
        if residual < 0:
            ok = False
        if ok:

            def can(rem: int, i: int) -> bool:
                if rem == 0:
                    return True
                if i == len(desc):
                    return False
                d = desc[i]
                hi = rem // terms[d]
                if caps[d] is not None:
                    hi = min(hi, caps[d])
                for y in range(hi, -1, -1):
                    if can(rem - y * terms[d], i + 1):
                        return True
                return False

            ok = can(residual, 0)
        feas_memo[key] = ok
        return ok

    def complete(placed) -> bool:
        if any(used[d] == 0 for d in dims):
            return False
        found.append(Partition(field, n, tuple(s for _, s, _ in placed)))
        return True

    try:
        _run(field, n, dims, used, may_place, feasible, complete, counter, candidate_order)
    except _BudgetHit:
        return SearchOutcome(BUDGET, None, counter.nodes)
    if found:
        return SearchOutcome(FOUND, _certified(found[0], dims), counter.nodes)
    return SearchOutcome(EXHAUSTED, None, counter.nodes)


def find_partition(
    q: int,
    n: int,
    goal: Union[PartitionType, Iterable[int]],
    budget: Optional[int] = None,
    candidate_order: Optional[Callable[[list], list]] = None,
) -> SearchOutcome:
    """Search for a partition matching a type or a dimension set.

    A PartitionType goal asks for exact multiplicities; any other iterable
    of integers is a dimension-set goal (every listed dimension present,
    nothing else).  The default budget comes from the VSPART_BUDGET
    environment variable.  Returns the canonically least match under the
    branching order (dimensions descending, candidate bases in lex order),
    or exhaustion, or a budget stop.  candidate_order is a testing hook
    that reorders each candidate list; it cannot change an exhaustion
    verdict.
    """
    field = field_from_order(q)
    if q**n > SEARCH_SPACE_LIMIT:
        raise TooLarge(f"{q}^{n} exceeds the search guard 2^20")
    counter = _Counter(_default_budget() if budget is None else budget)
    if isinstance(goal, PartitionType):
        return _find_by_type(field, n, goal, counter, candidate_order)
    dims = tuple(sorted(set(int(d) for d in goal)))
    if not dims or dims[0] < 1 or dims[-1] > n:
        raise ValueError("dimension-set goal must contain dimensions in 1..n")
    return _find_by_dims(field, n, dims, counter, candidate_order)


def enumerate_all(q: int, n: int) -> List[Partition]:
    """Every partition of V_n(q), each exactly once, in search order.

    Brute-force oracle for the invariant suites; guarded at q^n <= 2^12.
    """
    field = field_from_order(q)
    if q**n > ENUMERATE_ALL_LIMIT:
        raise TooLarge(f"{q}^{n} exceeds the enumeration guard 2^12")
    dims = tuple(range(1, n + 1))
    used = {d: 0 for d in dims}
    out: List[Partition] = []

    def complete(placed) -> bool:
        out.append(Partition(field, n, tuple(s for _, s, _ in placed)))
        return False

    _run(field, n, dims, used, lambda d: True, None, complete, _Counter(None), None)
    return out


@dataclass(frozen=True)
class ScanReport:
    """Minimum-dimension component counts across all partitions of V_n(q)."""

    q: int
    n: int
    partitions_scanned: int
    min_s: Dict[int, int]                    # per minimum dimension t
    witnesses: Dict[int, PartitionType]      # a type attaining min_s[t]
    counterexamples: List[Partition]         # non-trivial with s < q^t + 1

    @property
    def clean(self) -> bool:
        return not self.counterexamples


def conjecture_scan(q: int, n: int) -> ScanReport:
    """Scan every partition of V_n(q) for minimum-dimension counts below q^t + 1.

    The expectation is that no non-trivial partition falls below the bound;
    any that does is returned as a counterexample.
    """
    parts = enumerate_all(q, n)
    min_s: Dict[int, int] = {}
    witnesses: Dict[int, PartitionType] = {}
    counterexamples: List[Partition] = []
    for p in parts:
        if p.r < 2:
            continue
        dims = [c.dim for c in p.components]
        t = min(dims)
        s = dims.count(t)
        if t not in min_s or s < min_s[t]:
            min_s[t] = s
            witnesses[t] = type_of(p)
        if s < q**t + 1:
            counterexamples.append(p)
    return ScanReport(q, n, len(parts), min_s, witnesses, counterexamples)
