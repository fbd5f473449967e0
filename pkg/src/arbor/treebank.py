"""t-ary trees, ordered forests, exhaustive enumeration, and edge-type censuses.

The censuses are the brute-force side of every cross-check: they generate
each object and profile it, never touching the closed forms (the only
closed-form use is the up-front budget guard).

Census aggregation runs on one of two interchangeable kernels: a compiled
backtracking enumerator (``arbor._speedups``, built from Cython) and the
pure-Python reference below.  The compiled kernel is picked up at import
time when available; both produce identical tables.
"""
from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional, Sequence

from arbor import counting
from arbor.errors import BudgetExceededError, ConstraintError

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV_VAR = "ARBOR_BUDGET"

try:
    from arbor._speedups import segment_census as _segment_census_compiled
except ImportError:
    _segment_census_compiled = None

HAVE_SPEEDUPS = _segment_census_compiled is not None


class TAryTree:
    """Ordered tree in which every node carries the same number of child slots.

    ``children`` holds exactly ``arity`` entries, each ``None`` (empty slot)
    or a subtree of the same arity.  Instances are immutable by convention
    and freely shareable.
    """

    __slots__ = ("children", "size")

    def __init__(self, children: Sequence[Optional["TAryTree"]]):
        kids = tuple(children)
        if not kids:
            raise ConstraintError("a tree node needs at least one child slot")
        size = 1
        for ch in kids:
            if ch is not None:
                if ch.arity != len(kids):
                    raise ConstraintError(
                        f"child arity {ch.arity} differs from parent arity {len(kids)}"
                    )
                size += ch.size
        self.children = kids
        self.size = size

    @property
    def arity(self) -> int:
        return len(self.children)

    @classmethod
    def leaf(cls, t: int) -> "TAryTree":
        return cls((None,) * t)

    def __eq__(self, other):
        if not isinstance(other, TAryTree):
            return NotImplemented
        return self.size == other.size and self.children == other.children

    __hash__ = None

    def __repr__(self) -> str:
        return f"TAryTree({serialize_tree(self)!r})"


class Forest:
    """Ordered sequence of m non-empty trees of equal arity t, with m < t."""

    __slots__ = ("trees",)

    def __init__(self, trees: Sequence[TAryTree]):
        ts = tuple(trees)
        if not ts:
            raise ConstraintError("a forest needs at least one tree")
        t = ts[0].arity
        for tr in ts:
            if tr.arity != t:
                raise ConstraintError("forest trees must share one arity")
        if len(ts) >= t:
            raise ConstraintError(
                f"forest size m={len(ts)} must be < arity t={t}"
            )
        self.trees = ts

    @property
    def m(self) -> int:
        return len(self.trees)

    @property
    def arity(self) -> int:
        return self.trees[0].arity

    @property
    def total_nodes(self) -> int:
        return sum(tr.size for tr in self.trees)

    def __eq__(self, other):
        if not isinstance(other, Forest):
            return NotImplemented
        return self.trees == other.trees

    __hash__ = None

    def __repr__(self) -> str:
        return "Forest(%s)" % ", ".join(serialize_tree(tr) for tr in self.trees)


def serialize_tree(tree: TAryTree) -> str:
    """Canonical preorder text: ``o`` per node, ``.`` per empty slot.

    The t=3 lone root reads ``o...``; a root with only a middle child reads
    ``o.o....``.
    """
    parts = []

    def walk(node):
        parts.append("o")
        for ch in node.children:
            if ch is None:
                parts.append(".")
            else:
                walk(ch)

    walk(tree)
    return "".join(parts)


def parse_tree(text: str, t: int) -> TAryTree:
    """Inverse of :func:`serialize_tree` for arity t."""
    counting.check_arity(t)
    pos = 0

    def node() -> TAryTree:
        nonlocal pos
        if pos >= len(text) or text[pos] != "o":
            raise ConstraintError(f"expected 'o' at position {pos} of {text!r}")
        pos += 1
        kids = []
        for _ in range(t):
            if pos >= len(text):
                raise ConstraintError(f"unexpected end of input in {text!r}")
            if text[pos] == ".":
                kids.append(None)
                pos += 1
            else:
                kids.append(node())
        return TAryTree(kids)

    tree = node()
    if pos != len(text):
        raise ConstraintError(f"trailing characters at position {pos} of {text!r}")
    return tree


def edge_profile(tree: TAryTree) -> counting.EdgeComposition:
    """Per-slot edge counts of a tree; parts sum to size - 1."""
    counts = [0] * tree.arity
    stack = [tree]
    while stack:
        node = stack.pop()
        for i, ch in enumerate(node.children):
            if ch is not None:
                counts[i] += 1
                stack.append(ch)
    return tuple(counts)


def forest_profile(forest: Forest) -> counting.EdgeComposition:
    """Per-slot edge counts of a forest, the root edge of tree j counting
    toward slot j; parts sum to the total node count."""
    counts = [0] * forest.arity
    for i in range(forest.m):
        counts[i] += 1
    for tr in forest.trees:
        for i, c in enumerate(edge_profile(tr)):
            counts[i] += c
    return tuple(counts)


def enumerate_trees(t: int, n: int) -> Iterator[TAryTree]:
    """Every t-ary tree with exactly n nodes, exactly once.

    Order is deterministic: the root's children sizes run through weak
    compositions of n-1 lexicographically, and within one size split the
    leftmost slot varies slowest.  n = 0 yields nothing.
    """
    counting.check_arity(t)
    if n < 0:
        raise ConstraintError(f"node count must be >= 0, got n={n}")
    if n == 0:
        return
    for kids in _slot_tuples(t, n - 1, t):
        yield TAryTree(kids)


def _slot_stream(t: int, size: int) -> Iterator[Optional[TAryTree]]:
    if size == 0:
        yield None
    else:
        yield from enumerate_trees(t, size)


def _slot_tuples(t: int, total: int, slots: int) -> Iterator[tuple]:
    if slots == 1:
        for sub in _slot_stream(t, total):
            yield (sub,)
        return
    for first_size in range(total + 1):
        for first in _slot_stream(t, first_size):
            for rest in _slot_tuples(t, total - first_size, slots - 1):
                yield (first,) + rest


def enumerate_forests(t: int, m: int, n: int) -> Iterator[Forest]:
    """Every ordered m-tuple of non-empty t-ary trees with n total nodes.

    Node splits run lexicographically; within a split the leftmost tree
    varies slowest.
    """
    counting.check_arity(t)
    if not 1 <= m < t:
        raise ConstraintError(f"forest size must satisfy 1 <= m < t, got m={m} t={t}")
    if n < m:
        raise ConstraintError(f"node count must be >= m={m}, got n={n}")
    for split in counting.compositions(m, n - m):
        sizes = tuple(s + 1 for s in split)
        for combo in _forest_tuples(t, sizes):
            yield Forest(combo)


def _forest_tuples(t: int, sizes: tuple) -> Iterator[tuple]:
    if len(sizes) == 1:
        for tr in enumerate_trees(t, sizes[0]):
            yield (tr,)
        return
    for tr in enumerate_trees(t, sizes[0]):
        for rest in _forest_tuples(t, sizes[1:]):
            yield (tr,) + rest


def resolve_budget(budget: Optional[int] = None) -> int:
    """Effective enumeration budget: explicit value, else $ARBOR_BUDGET, else default."""
    if budget is not None:
        if budget < 1:
            raise ConstraintError(f"budget must be >= 1, got {budget}")
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ConstraintError(
                f"{BUDGET_ENV_VAR} must be an integer, got {env!r}"
            ) from None
        if value < 1:
            raise ConstraintError(f"{BUDGET_ENV_VAR} must be >= 1, got {value}")
        return value
    return DEFAULT_BUDGET


def segment_census_pure(
    t: int, sizes: Sequence[int], slots: Sequence[int]
) -> dict:
    """Reference census kernel: profile every tuple of trees with the given sizes.

    Segment j is a tree with exactly sizes[j] nodes; slots[j] > 0 adds one
    edge of that slot type for the segment's root attachment, slots[j] = 0
    marks a free-standing tree whose root has no incoming edge.
    """
    k = len(sizes)
    if len(slots) != k:
        raise ConstraintError("sizes and slots must have equal length")
    if k == 0:
        return {(0,) * t: 1}
    table: Counter = Counter()
    base = [0] * t
    for s in slots:
        if s:
            base[s - 1] += 1

    def rec(j, prof):
        if j == k:
            table[tuple(prof)] += 1
            return
        for tree in enumerate_trees(t, sizes[j]):
            p = edge_profile(tree)
            rec(j + 1, [a + b for a, b in zip(prof, p)])

    rec(0, base)
    return dict(table)


def _select_kernel(engine: str):
    if engine == "auto":
        return _segment_census_compiled or segment_census_pure
    if engine == "compiled":
        if _segment_census_compiled is None:
            raise RuntimeError("compiled kernel requested but arbor._speedups is not built")
        return _segment_census_compiled
    if engine == "pure":
        return segment_census_pure
    raise ConstraintError(f"unknown engine {engine!r} (expected auto, compiled or pure)")


def _run_jobs(kernel, t: int, jobs: list, workers: int) -> Counter:
    if workers <= 1 or len(jobs) <= 1:
        total: Counter = Counter()
        for sizes, slots in jobs:
            total.update(kernel(t, sizes, slots))
        return total

    def run(chunk):
        sub: Counter = Counter()
        for sizes, slots in chunk:
            sub.update(kernel(t, sizes, slots))
        return sub

    chunks = [jobs[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, chunks))
    total = Counter()
    for part in parts:
        total.update(part)
    return total


def census(
    t: int,
    n: int,
    *,
    budget: Optional[int] = None,
    workers: int = 1,
    engine: str = "auto",
) -> dict:
    """Multiplicity of every realized edge-type composition over all t-ary
    trees with n nodes, by brute-force enumeration.

    Refuses up front when the object count exceeds the budget.  With
    workers > 1 the root's size-split space is partitioned across threads;
    the merged table is identical to the sequential one.
    """
    counting.check_arity(t)
    if n < 1:
        raise ConstraintError(f"node count must be >= 1, got n={n}")
    limit = resolve_budget(budget)
    total = counting.total_trees(t, n)
    if total > limit:
        raise BudgetExceededError(
            f"census(t={t}, n={n}) would enumerate {total} trees, budget is {limit}",
            total=total,
        )
    kernel = _select_kernel(engine)
    if workers <= 1:
        jobs = [((n,), (0,))]
    else:
        jobs = [_root_job(c) for c in counting.compositions(t, n - 1)]
    return dict(_run_jobs(kernel, t, jobs, workers))


def _root_job(comp: counting.EdgeComposition) -> tuple:
    sizes = tuple(s for s in comp if s)
    slots = tuple(i + 1 for i, s in enumerate(comp) if s)
    return sizes, slots


def forest_census(
    t: int,
    m: int,
    n: int,
    *,
    budget: Optional[int] = None,
    workers: int = 1,
    engine: str = "auto",
) -> dict:
    """Multiplicity of every realized edge-type composition over all ordered
    m-tuples of non-empty t-ary trees with n total nodes."""
    counting.check_arity(t)
    if not 1 <= m < t:
        raise ConstraintError(f"forest size must satisfy 1 <= m < t, got m={m} t={t}")
    if n < m:
        raise ConstraintError(f"node count must be >= m={m}, got n={n}")
    limit = resolve_budget(budget)
    total = counting.total_forests(t, m, n)
    if total > limit:
        raise BudgetExceededError(
            f"forest_census(t={t}, m={m}, n={n}) would enumerate {total} forests, "
            f"budget is {limit}",
            total=total,
        )
    kernel = _select_kernel(engine)
    root_slots = tuple(range(1, m + 1))
    jobs = []
    for split in counting.compositions(m, n - m):
        jobs.append((tuple(s + 1 for s in split), root_slots))
    return dict(_run_jobs(kernel, t, jobs, workers))
