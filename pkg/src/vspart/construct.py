"""Explicit partition constructions.

Every builder returns a verified Partition whose provenance records the
rule used and its sub-calls, and resolves all free choices canonically
(first candidate in canonical order), so outputs are bit-stable across
runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .dioph import TypeSolution, annotate, solve
from .errors import (
    BadDimensions,
    BudgetExceeded,
    DimensionTooSmall,
    NotDivisible,
    UncoveredCase,
    UnsupportedType,
)
from .gf import ExtField, field_from_order
from .linalg import (
    Subspace,
    canonicalize,
    contains,
    coordinate_subspace,
    enumerate_subspaces,
)
from .partition import (
    Partition,
    PartitionType,
    induce,
    is_T_partition,
    refine,
    trivial_partition,
    type_of,
    verify,
)
from .search import BUDGET, FOUND, find_partition


def _checked(p: Partition) -> Partition:
    report = verify(p)
    if not report.valid:
        raise AssertionError(f"construction produced an invalid partition: {report.describe()}")
    return p


def spread(q: int, n: int, d: int) -> Partition:
    """Partition of V_n(q) into (q^n - 1)/(q^d - 1) subspaces of dimension d.

    Requires d | n.  V_n(q) is read as an (n/d)-dimensional space over
    GF(q^d); each line over the big field flattens to one d-dimensional
    component over GF(q).
    """
    field = field_from_order(q)
    if d < 1 or n < 1 or n % d != 0:
        raise NotDivisible(f"{d} does not divide {n}")
    ext = ExtField(field, d)
    m = n // d
    comps: List[Subspace] = []
    # Projective representatives over GF(q^d): leading coordinate one.
    for lead in range(m):
        tail = m - lead - 1
        stack = [()]
        for _ in range(tail):
            stack = [prefix + (elem,) for prefix in stack for elem in _all_ext_elements(ext)]
        for suffix in stack:
            point = (ext.zero(),) * lead + (ext.one(),) + suffix
            rows = []
            for j in range(d):
                scaled = ext.scale(ext.power_basis(j), point)
                rows.append(tuple(x for coord in scaled for x in coord))
            comps.append(canonicalize(rows, field, n))
    out = Partition(field, n, tuple(comps), provenance={"rule": "spread", "q": q, "n": n, "d": d})
    return _checked(out)


def _all_ext_elements(ext: ExtField) -> List[Tuple[int, ...]]:
    return [ext.element(c) for c in range(ext.order)]


@dataclass(frozen=True)
class LiftResult:
    """Outcome of extending a partition across an added coordinate block.

    partition covers the whole of the (n + m')-dimensional space; lifted
    holds the new components (one per base component and nonzero scalar of
    GF(q^m')); base_component and ext_component are the two coordinate
    subspaces completing the partition.
    """

    partition: Partition
    lifted: Tuple[Subspace, ...]
    base_component: Subspace
    ext_component: Subspace


def lift(p: Partition, m_prime: int) -> LiftResult:
    """Extend a partition of V across V' = GF(q^m') to one of V + V'.

    Each component U yields a component {(u, a * phi(u))} per nonzero a of
    GF(q^m'), where phi sends U's canonical basis to the first dim-U power
    basis elements; together with V x 0 and 0 x V' these partition the sum.
    The new component count is (q^m' - 1) times the old one.  Requires the
    largest component dimension to be at most m'.
    """
    field = p.field
    max_dim = max(c.dim for c in p.components)
    if m_prime < max_dim:
        raise DimensionTooSmall(
            f"extension of dimension {m_prime} cannot host components of dimension {max_dim}"
        )
    ext = ExtField(field, m_prime)
    n_out = p.n + m_prime
    base_component = coordinate_subspace(field, n_out, range(p.n))
    ext_component = coordinate_subspace(field, n_out, range(p.n, n_out))
    lifted: List[Subspace] = []
    for u in p.components:
        powers = [ext.power_basis(j) for j in range(u.dim)]
        for alpha in ext.nonzero_elements():
            rows = []
            for brow, pw in zip(u.basis, powers):
                rows.append(tuple(brow) + ext.mul(alpha, pw))
            lifted.append(canonicalize(rows, field, n_out))
    comps = (base_component, ext_component) + tuple(lifted)
    out = Partition(
        field,
        n_out,
        comps,
        provenance={"rule": "lift", "m_prime": m_prime, "base": p.provenance},
    )
    return LiftResult(_checked(out), tuple(lifted), base_component, ext_component)


def near_spread(q: int, n: int, d: int) -> Partition:
    """Partition of V_n(q) of type [(q^{n-d}, d), (1, n-d)], for d <= n - d.

    Realized by lifting the trivial partition of V_d(q) across a block of
    dimension n - d; when 2d = n this is exactly the d-spread and is routed
    there.
    """
    field = field_from_order(q)
    if d < 1 or d > n - d:
        raise BadDimensions(f"need 1 <= d <= n - d, got d={d}, n={n}")
    if 2 * d == n:
        out = spread(q, n, d)
        return Partition(
            field, n, out.components,
            provenance={"rule": "near-spread", "q": q, "n": n, "d": d, "via": "spread"},
        )
    res = lift(trivial_partition(field, d), n - d)
    return Partition(
        field, n, res.partition.components,
        provenance={"rule": "near-spread", "q": q, "n": n, "d": d},
    )


def hyperplane_section(q: int, k: int, d: int) -> Partition:
    """Section a d-spread of V_{kd}(q) by a hyperplane.

    Produces a partition of V_{kd-1}(q) of type
    [(q^{(k-1)d}, d-1), ((q^{(k-1)d} - 1)/(q^d - 1), d)]; requires d > 1.
    """
    if d <= 1:
        raise BadDimensions("sectioning requires component dimension at least 2")
    if k < 1:
        raise BadDimensions("need k >= 1")
    field = field_from_order(q)
    n = k * d
    full = spread(q, n, d)
    hyperplane = coordinate_subspace(field, n, range(n - 1))
    out = induce(full, hyperplane)
    return Partition(
        field, n - 1, out.components,
        provenance={"rule": "hyperplane-section", "q": q, "k": k, "d": d},
    )


def typed_construct(q: int, n: int, ptype: PartitionType) -> Partition:
    """Closed-form construction for one- and two-dimension types.

    Covers exactly: a single dimension (a spread), or two dimensions
    summing to n (a spread when the top multiplicity is 0, the near-spread
    when it is 1).  Anything else, including types failing the necessary
    conditions, raises UnsupportedType; the caller should fall back to
    search.
    """
    dims = tuple(d for _, d in ptype.pairs)
    x = tuple(xi for xi, _ in ptype.pairs)
    k = len(dims)
    if ptype.point_count(q) != q**n - 1:
        raise UnsupportedType(f"{ptype} does not solve the counting equation at q={q}, n={n}")
    annotated = annotate(TypeSolution(q, n, dims, x))
    if not annotated.passes_all():
        failing = [name for name, ok in annotated.flags.items() if not ok]
        raise UnsupportedType(f"{ptype} fails necessary conditions: {', '.join(failing)}")
    if k == 1:
        out = spread(q, n, dims[0])
    elif k == 2 and dims[0] + dims[1] == n:
        out = spread(q, n, dims[0]) if x[1] == 0 else near_spread(q, n, dims[0])
    else:
        raise UnsupportedType(f"{ptype} is outside the closed-form cases; use search")
    built = type_of(out)
    if built != ptype.normalized():
        raise AssertionError(f"built type {built} does not match request {ptype}")
    return Partition(
        out.field, n, out.components,
        provenance={"rule": "typed", "type": ptype.format(), "via": out.provenance},
    )


def fixed_plus_lines(q: int, m: int, d: int) -> Partition:
    """Partition of V_m(q) into one coordinate d-subspace and the lines off it.

    Exists for every 1 <= d < m: a line through a vector outside the fixed
    subspace stays outside it except at zero.
    """
    field = field_from_order(q)
    if not 1 <= d < m:
        raise BadDimensions(f"need 1 <= d < m, got d={d}, m={m}")
    fixed = coordinate_subspace(field, m, range(d))
    comps = [fixed]
    for line in enumerate_subspaces(field, m, 1):
        if not contains(fixed, line.basis[0]):
            comps.append(line)
    out = Partition(
        field, m, tuple(comps),
        provenance={"rule": "fixed-plus-lines", "q": q, "m": m, "d": d},
    )
    return _checked(out)


def _positive_solutions(q: int, n: int, dims: Tuple[int, ...]) -> List[TypeSolution]:
    """Annotated solutions with every dimension present, in lex order."""
    return [annotate(s) for s in solve(q, n, dims) if all(xi >= 1 for xi in s.x)]


def _first_component_of_dim(p: Partition, d: int) -> Subspace:
    return next(c for c in p.components if c.dim == d)


def _with_rule(p: Partition, rule: dict) -> Partition:
    return Partition(p.field, p.n, p.components, provenance=rule)


def build_t_partition(
    q: int, dims: Iterable[int], n: int, budget: Optional[int] = None
) -> Partition:
    """Build a partition whose set of component dimensions is exactly `dims`.

    Dispatches, in fixed order: a single dimension becomes a spread; at
    n = 2*max the base builder runs (with a refinement into lines when 1 is
    requested); above that the space is split as a 2*max block plus a
    spread-partitioned complement, glued by lift; further rules cover
    n >= 3*max and two windows with max above n/2.  Parameters matching no
    rule raise UncoveredCase carrying the annotated count solutions, and
    parameters whose count equation is infeasible or fails the necessary
    conditions are rejected the same way up front.
    """
    T = tuple(sorted(set(int(d) for d in dims)))
    if not T or T[0] < 1:
        raise ValueError("dimension set must contain positive integers")
    if T[-1] > n:
        raise BadDimensions(f"dimension {T[-1]} exceeds the ambient dimension {n}")
    field_from_order(q)  # validates q before any heavier work
    nk = T[-1]

    solutions = _positive_solutions(q, n, T)
    passing = [s for s in solutions if s.passes_all()]
    if not passing:
        if not solutions:
            detail = "the counting equation has no solution with every dimension present"
        else:
            detail = "every candidate count vector fails a necessary condition"
        raise UncoveredCase(
            f"no {set(T)}-partition of V_{n}(GF({q})) is possible: {detail}",
            solutions=solutions,
        )

    # (a) one dimension: the spread.
    if len(T) == 1:
        out = spread(q, n, T[0])
        return _with_rule(out, {"rule": "spread", "T": list(T), "n": n})

    # (b) n equals twice the largest dimension.  When lines are requested,
    # build for the remaining dimensions and split one smallest component
    # into its lines; enough same-dimension components survive because the
    # minimum-count bound guarantees at least q + min(T') of them.
    # Every recursive build call below this point strictly decreases n.
    if n == 2 * nk:
        if T[0] == 1:
            rest = T[1:]
            passing_rest = [s for s in _positive_solutions(q, n, rest) if s.passes_all()]
            inner = _base_builder(q, rest, n, passing_rest, budget)
            victim = _first_component_of_dim(inner, min(rest))
            out = refine(inner, victim, spread(q, victim.dim, 1))
            out = _with_rule(
                out,
                {"rule": "lines-refined-base", "T": list(T), "n": n, "base": inner.provenance},
            )
        else:
            out = _base_builder(q, T, n, passing, budget)
        _require_T(out, T)
        return out

    # (c) room above twice the largest dimension, with a matching divisor.
    if n > 2 * nk:
        g = math.gcd(n, 2 * nk)
        div = next((d for d in T if g % d == 0), None)
        if div is not None:
            inner = spread(q, 2 * nk, div)
            lifted = lift(inner, n - 2 * nk)
            out = lifted.partition
            out = refine(out, lifted.base_component, build_t_partition(q, T, 2 * nk, budget))
            out = refine(out, lifted.ext_component, spread(q, n - 2 * nk, div))
            out = _with_rule(out, {"rule": "gcd-split", "T": list(T), "n": n, "divisor": div})
            _require_T(out, T)
            return out

        if n >= 3 * nk:
            div = next((d for d in T if (n - 2 * nk) % d == 0), None)
            if div is not None:
                inner = build_t_partition(q, T, 2 * nk, budget)
                lifted = lift(inner, n - 2 * nk)
                out = lifted.partition
                out = refine(out, lifted.base_component, inner)
                out = refine(out, lifted.ext_component, spread(q, n - 2 * nk, div))
                out = _with_rule(
                    out, {"rule": "triple-split", "T": list(T), "n": n, "divisor": div}
                )
                _require_T(out, T)
                return out

    # (e) largest dimension above n/2, the two largest summing to n, lines present.
    if 2 * nk > n and len(T) >= 2 and n == nk + T[-2] and T[0] == 1:
        k = len(T)
        out = near_spread(q, n, n - nk)
        small_dim = n - nk
        victims = [c for c in out.components if c.dim == small_dim][: k - 2]
        assert q**nk > k - 2, "not enough small components to convert"
        for target_dim, victim in zip(T[: k - 2], victims):
            sub = (
                spread(q, small_dim, 1)
                if target_dim == 1
                else fixed_plus_lines(q, small_dim, target_dim)
            )
            out = refine(out, victim, sub)
        out = _with_rule(
            out, {"rule": "adjacent-sum", "T": list(T), "n": n, "converted": k - 2}
        )
        _require_T(out, T)
        return out

    # (f) largest dimension above n/2 with room for twice the second largest.
    if 2 * nk > n >= nk + 2 * T[-2] and len(T) >= 2:
        T_rest = T[:-1]
        g = math.gcd(n, 2 * T[-2])
        # The split leaves a block of dimension n - nk to carry the other
        # dimensions, so the chosen divisor must divide that block's gcd too.
        g_inner = math.gcd(n - nk, 2 * T[-2])
        div = next((d for d in T_rest if g % d == 0 and g_inner % d == 0), None)
        if div is not None:
            inner = build_t_partition(q, T_rest, n - nk, budget)
            lifted = lift(inner, nk)
            out = refine(lifted.partition, lifted.base_component, inner)
            out = _with_rule(out, {"rule": "top-split", "T": list(T), "n": n, "divisor": div})
            _require_T(out, T)
            return out

    # Last resort before giving up: the two closed-form type shapes (one
    # dimension, or two dimensions summing to n) realize T directly.
    for sol in passing:
        pt = sol.as_type().normalized()
        pd = pt.dims_present()
        if len(pd) == 1 or (len(pd) == 2 and pd[0] + pd[1] == n):
            try:
                out = typed_construct(q, n, pt)
            except UnsupportedType:
                continue
            out = _with_rule(out, {"rule": "typed-fallback", "T": list(T), "n": n})
            _require_T(out, T)
            return out

    raise UncoveredCase(
        f"parameters q={q}, T={set(T)}, n={n} match no construction rule "
        "(feasible counts exist; try the search directly)",
        solutions=solutions,
    )


def _require_T(p: Partition, T: Tuple[int, ...]) -> None:
    if not is_T_partition(p, T):
        raise AssertionError(f"builder produced dimensions {sorted({c.dim for c in p.components})}, wanted {list(T)}")


def _base_builder(
    q: int,
    T: Tuple[int, ...],
    n: int,
    passing: Sequence[TypeSolution],
    budget: Optional[int],
) -> Partition:
    """Construction at n = 2 * max(T) with all dimensions at least 2.

    Tries closed forms first (the typed construction for its two shapes,
    then a near-spread whose big component is refined recursively), and
    falls back to exact-cover search over the surviving count vectors.
    """
    # Closed forms.
    for sol in passing:
        pt = sol.as_type()
        pd = pt.dims_present()
        if len(pd) == 1 or (len(pd) == 2 and pd[0] + pd[1] == n):
            try:
                out = typed_construct(q, n, pt.normalized())
            except UnsupportedType:
                continue
            return _with_rule(out, {"rule": "half-base-typed", "T": list(T), "n": n})
    for d in T[:-1]:
        if 2 * d >= n:
            continue
        for rest in (T, tuple(t for t in T if t != d)):
            if not rest:
                continue
            try:
                inner = build_t_partition(q, rest, n - d, budget)
            except (UncoveredCase, NotDivisible, BadDimensions):
                continue
            ns = near_spread(q, n, d)
            victim = _first_component_of_dim(ns, n - d)
            out = refine(ns, victim, inner)
            if is_T_partition(out, T):
                return _with_rule(
                    out, {"rule": "half-base-refine", "T": list(T), "n": n, "d": d}
                )
    # Search fallback over the surviving count vectors, in lex order.
    for sol in passing:
        outcome = find_partition(q, n, sol.as_type(), budget=budget)
        if outcome.status == FOUND:
            return _with_rule(
                outcome.partition,
                {"rule": "half-base-search", "T": list(T), "n": n, "type": sol.as_type().format()},
            )
        if outcome.status == BUDGET:
            raise BudgetExceeded(
                f"search for type {sol.as_type().format()} ran out of budget"
            )
    raise UncoveredCase(
        f"all candidate types for T={set(T)}, n={n} were exhausted by search",
        solutions=passing,
    )
