"""Exact closed-form counts of t-ary trees and ordered forests by edge type.

Every function works on arbitrary-precision integers and never rounds: the
divisions prescribed by the closed forms are checked to be exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping, Sequence

from arbor.errors import ConstraintError

#: Largest supported arity.  Composition spaces explode well before this;
#: the bound keeps error messages honest instead of timing out.
MAX_ARITY = 16

#: An edge-type composition is a plain tuple (a1, ..., at) of edge counts.
EdgeComposition = tuple[int, ...]


def check_arity(t: int) -> None:
    if t < 1:
        raise ConstraintError(f"arity must be >= 1, got t={t}")
    if t > MAX_ARITY:
        raise ConstraintError(f"arity must be <= {MAX_ARITY}, got t={t}")


def validate_tree_composition(t: int, n: int, parts: Sequence[int]) -> EdgeComposition:
    """Check the edge-type composition of an n-node tree; return it as a tuple."""
    check_arity(t)
    if n < 1:
        raise ConstraintError(f"node count must be >= 1, got n={n}")
    a = tuple(parts)
    if len(a) != t:
        raise ConstraintError(f"composition has {len(a)} parts, arity is {t}")
    if min(a) < 0:
        raise ConstraintError(f"edge counts must be >= 0, got {a}")
    if sum(a) != n - 1:
        raise ConstraintError(
            f"edge counts sum to {sum(a)}, must equal n-1 = {n - 1}"
        )
    return a


def validate_forest_composition(
    t: int, m: int, n: int, parts: Sequence[int]
) -> EdgeComposition:
    """Check the edge-type composition of an m-forest with n total nodes."""
    check_arity(t)
    if not 1 <= m < t:
        raise ConstraintError(f"forest size must satisfy 1 <= m < t, got m={m} t={t}")
    if n < m:
        raise ConstraintError(f"node count must be >= m={m}, got n={n}")
    a = tuple(parts)
    if len(a) != t:
        raise ConstraintError(f"composition has {len(a)} parts, arity is {t}")
    if min(a) < 0:
        raise ConstraintError(f"edge counts must be >= 0, got {a}")
    if sum(a) != n:
        raise ConstraintError(f"edge counts sum to {sum(a)}, must equal n = {n}")
    if min(a[:m]) < 1:
        raise ConstraintError(
            f"parts 1..{m} count root edges of the forest and must be >= 1, got {a}"
        )
    return a


@dataclass(frozen=True)
class TreeCountQuery:
    """A validated request for the number of trees with a given edge profile."""

    arity: int
    nodes: int
    composition: EdgeComposition

    def __post_init__(self) -> None:
        a = validate_tree_composition(self.arity, self.nodes, self.composition)
        object.__setattr__(self, "composition", a)

    def count(self) -> int:
        return count_trees(self.arity, self.nodes, self.composition)


@dataclass(frozen=True)
class ForestCountQuery:
    """A validated request for the number of m-forests with a given edge profile."""

    arity: int
    trees: int
    nodes: int
    composition: EdgeComposition

    def __post_init__(self) -> None:
        a = validate_forest_composition(
            self.arity, self.trees, self.nodes, self.composition
        )
        object.__setattr__(self, "composition", a)

    def count(self) -> int:
        return count_forests(self.arity, self.trees, self.nodes, self.composition)


def binomial(n: int, k: int) -> int:
    """C(n, k); zero when k < 0 or k > n."""
    if n < 0:
        raise ConstraintError(f"binomial requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def count_trees(t: int, n: int, parts: Sequence[int]) -> int:
    """Number of t-ary trees with n nodes and exactly parts[i] edges in slot i+1.

    Evaluates (1/n) * C(n,a1) * ... * C(n,at).  The full product is computed
    first and divided once; the division is exact for every valid query.
    """
    a = validate_tree_composition(t, n, parts)
    prod = 1
    for x in a:
        prod *= comb(n, x)
    q, r = divmod(prod, n)
    if r:
        raise ArithmeticError(f"count_trees product {prod} not divisible by n={n}")
    return q


def count_forests(t: int, m: int, n: int, parts: Sequence[int]) -> int:
    """Number of ordered m-tuples of non-empty t-ary trees, n total nodes,
    with the given edge profile (the m root edges occupy slots 1..m).

    Evaluates (m/n) * C(n,a1-1)...C(n,am-1) * C(n,a_{m+1})...C(n,at).
    """
    a = validate_forest_composition(t, m, n, parts)
    prod = m
    for i, x in enumerate(a):
        prod *= comb(n, x - 1 if i < m else x)
    q, r = divmod(prod, n)
    if r:
        raise ArithmeticError(f"count_forests product {prod} not divisible by n={n}")
    return q


def total_trees(t: int, n: int) -> int:
    """Number of t-ary trees with n nodes: (1/n) * C(t*n, n-1)."""
    check_arity(t)
    if n < 1:
        raise ConstraintError(f"node count must be >= 1, got n={n}")
    q, r = divmod(comb(t * n, n - 1), n)
    if r:
        raise ArithmeticError("tree total not an integer; this cannot happen")
    return q


def total_forests(t: int, m: int, n: int) -> int:
    """Number of ordered m-tuples of non-empty t-ary trees with n total nodes:
    (m/n) * C(t*n, n-m)."""
    check_arity(t)
    if not 1 <= m < t:
        raise ConstraintError(f"forest size must satisfy 1 <= m < t, got m={m} t={t}")
    if n < m:
        raise ConstraintError(f"node count must be >= m={m}, got n={n}")
    q, r = divmod(m * comb(t * n, n - m), n)
    if r:
        raise ArithmeticError("forest total not an integer; this cannot happen")
    return q


def marginal_count(t: int, n: int, fixed: Mapping[int, int]) -> int:
    """Trees with n nodes where each fixed slot i carries exactly fixed[i] edges,
    all other slots summed out.

    Evaluates (1/n) * prod_fixed C(n, a_i) * C((t-f)*n, n-1-sum(fixed)), the
    unfixed slots collapsing into one binomial.  An over-large fixed sum makes
    the trailing binomial vanish, so the result is 0 rather than an error.
    """
    check_arity(t)
    if n < 1:
        raise ConstraintError(f"node count must be >= 1, got n={n}")
    slots = sorted(fixed)
    for s in slots:
        if not 1 <= s <= t:
            raise ConstraintError(f"fixed slot {s} outside 1..{t}")
        if fixed[s] < 0:
            raise ConstraintError(f"fixed count for slot {s} must be >= 0")
    f = len(slots)
    fixed_sum = sum(fixed[s] for s in slots)
    prod = 1
    for s in slots:
        prod *= binomial(n, fixed[s])
    prod *= binomial((t - f) * n, n - 1 - fixed_sum)
    if prod == 0:
        return 0
    q, r = divmod(prod, n)
    if r:
        raise ArithmeticError(f"marginal product {prod} not divisible by n={n}")
    return q


def compositions(
    t: int, total: int, m: int = 0, min_first: int = 1
) -> Iterator[EdgeComposition]:
    """Weak compositions of `total` into t parts, lexicographically ascending.

    With m > 0 the first m parts are each at least `min_first` (default 1,
    the positivity forced on root-edge slots); m = 0 imposes no lower bound.
    """
    check_arity(t)
    if total < 0:
        raise ConstraintError(f"total must be >= 0, got {total}")
    if m:
        if not 1 <= m < t:
            raise ConstraintError(f"m must satisfy 1 <= m < t, got m={m} t={t}")
        if min_first < 0:
            raise ConstraintError(f"min_first must be >= 0, got {min_first}")
    base = total - m * min_first
    if base < 0:
        return
    offsets = (min_first,) * m + (0,) * (t - m)
    work = [0] * t
    work[t - 1] = base
    while True:
        yield tuple(w + o for w, o in zip(work, offsets))
        # successor: bump the rightmost position with mass strictly after it
        sa = work[t - 1]
        j = t - 2
        while j >= 0 and sa == 0:
            sa += work[j]
            j -= 1
        if j < 0:
            return
        work[j] += 1
        for i in range(j + 1, t - 1):
            work[i] = 0
        work[t - 1] = sa - 1
