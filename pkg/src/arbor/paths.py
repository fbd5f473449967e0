"""Lattice-path view of t-ary trees and the residue-class statistic probe.

A tree maps to its preorder walk over the completed form (every empty child
slot materialized as an external leaf): each node emits a rise of t-1, each
external leaf a fall of 1.  The walk stays non-negative and first reaches -1
at the very end.  Each step also carries the child-slot index it occupies
under its parent; the root step is unlabeled.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from arbor import counting, treebank
from arbor.errors import ConstraintError, MalformedPathError


class Step(NamedTuple):
    rise: int
    label: Optional[int] = None


@dataclass(frozen=True)
class LatticePath:
    """Sequence of rise/fall steps with optional child-slot labels."""

    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def heights(self) -> list[int]:
        """Running height after each step, starting from 0."""
        out = []
        h = 0
        for step in self.steps:
            h += step.rise
            out.append(h)
        return out


def tree_to_path(tree: treebank.TAryTree) -> LatticePath:
    """Preorder encoding of a tree; inverse of :func:`path_to_tree`."""
    up = tree.arity - 1
    steps: list[Step] = []

    def walk(node, label):
        steps.append(Step(up, label))
        for i, ch in enumerate(node.children):
            if ch is None:
                steps.append(Step(-1, i + 1))
            else:
                walk(ch, i + 1)

    walk(tree, None)
    return LatticePath(tuple(steps))


def path_to_tree(path: LatticePath, t: int) -> treebank.TAryTree:
    """Rebuild the unique tree whose encoding step-matches ``path``.

    Labels are ignored (children are consumed in slot order).  Malformed
    input raises :class:`MalformedPathError` carrying the offending index:
    a missing root symbol, a premature close, a bad rise value, steps after
    the tree is complete, or a path that ends before the tree closes.
    """
    counting.check_arity(t)
    up = t - 1
    steps = path.steps
    if not steps or steps[0].rise != up:
        raise MalformedPathError(
            f"expected a node step of rise {up} at index 0", index=0
        )
    # stack of partially filled child lists, one per open node
    stack: list[list] = []
    root: Optional[treebank.TAryTree] = None
    for idx, step in enumerate(steps):
        if root is not None:
            raise MalformedPathError(
                f"step at index {idx} follows a completed tree", index=idx
            )
        if step.rise == up:
            stack.append([])
        elif step.rise == -1:
            stack[-1].append(None)
        else:
            raise MalformedPathError(
                f"step rise {step.rise} at index {idx} is neither {up} nor -1",
                index=idx,
            )
        while stack and len(stack[-1]) == t:
            node = treebank.TAryTree(stack.pop())
            if stack:
                stack[-1].append(node)
            else:
                root = node
    if root is None:
        raise MalformedPathError(
            f"path ends at index {len(steps)} before the tree closes",
            index=len(steps),
        )
    return root


def residue_stats(path: LatticePath, t: int) -> tuple[int, ...]:
    """Count fall steps by their starting height modulo t."""
    counting.check_arity(t)
    counts = [0] * t
    h = 0
    for step in path.steps:
        if step.rise == -1:
            counts[h % t] += 1
        h += step.rise
    return tuple(counts)


def format_path(path: LatticePath, with_labels: bool = False) -> str:
    """Text form ``+2,-1,-1,-1``; labels append as ``:slot`` when requested."""
    parts = []
    for step in path.steps:
        text = "%+d" % step.rise
        if with_labels and step.label is not None:
            text += f":{step.label}"
        parts.append(text)
    return ",".join(parts)


def parse_path(text: str) -> LatticePath:
    """Inverse of :func:`format_path` (labels optional per step)."""
    steps = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            raise ConstraintError(f"empty step in path text {text!r}")
        rise_text, _, label_text = token.partition(":")
        try:
            rise = int(rise_text)
            label = int(label_text) if label_text else None
        except ValueError:
            raise ConstraintError(f"bad step token {token!r}") from None
        steps.append(Step(rise, label))
    return LatticePath(tuple(steps))


def cyclic_shift(vector: Sequence[int], s: int) -> tuple[int, ...]:
    t = len(vector)
    return tuple(vector[(i + s) % t] for i in range(t))


@dataclass(frozen=True)
class ProbeReport:
    """Side-by-side distributions with a descriptive (never asserted) verdict.

    ``edge_distribution`` is the edge-type census; ``residue_distribution``
    counts raw residue vectors of the corresponding paths.  After subtracting
    ``offset`` from each residue vector, the residue multiset is compared to
    the edge multiset under every cyclic shift of the coordinates; the best
    shift and its overlap are reported.  ``verdict`` is "equal" when some
    shift matches the multisets exactly, else "not-equal" with a minimal
    witness (vector, edge count, residue count under the best shift).
    """

    arity: int
    nodes: int
    edge_distribution: dict
    residue_distribution: dict
    offset: tuple[int, ...]
    shift_matches: tuple[int, ...]
    best_shift: int
    verdict: str
    witness: Optional[tuple]

    def to_csv(self) -> str:
        header = "kind," + ",".join(f"a{i + 1}" for i in range(self.arity)) + ",count"
        lines = [header]
        for comp in sorted(self.edge_distribution):
            row = ",".join(str(x) for x in comp)
            lines.append(f"edge,{row},{self.edge_distribution[comp]}")
        for vec in sorted(self.residue_distribution):
            row = ",".join(str(x) for x in vec)
            lines.append(f"residue,{row},{self.residue_distribution[vec]}")
        return "\n".join(lines)

    def verdict_line(self) -> str:
        total = sum(self.edge_distribution.values())
        line = (
            f"verdict: {self.verdict} (best_shift={self.best_shift}, "
            f"matched={self.shift_matches[self.best_shift]}/{total}, "
            f"offset={','.join(str(x) for x in self.offset)})"
        )
        if self.witness is not None:
            vec, edge_count, residue_count = self.witness
            line += (
                f" witness={','.join(str(x) for x in vec)}"
                f" edge={edge_count} residue={residue_count}"
            )
        return line


def residue_distribution_probe(
    t: int,
    n: int,
    offset: Optional[Sequence[int]] = None,
    budget: Optional[int] = None,
) -> ProbeReport:
    """Compare edge-type counts with residue-class counts over all n-node trees.

    The identification of residue classes with edge types is deliberately not
    baked in: raw residue vectors (minus a configurable affine offset,
    default zero) are compared under all t cyclic shifts and the best match
    is reported.  The report is descriptive; it asserts nothing about which
    verdict is correct.
    """
    counting.check_arity(t)
    off = tuple(offset) if offset is not None else (0,) * t
    if len(off) != t:
        raise ConstraintError(f"offset has {len(off)} parts, arity is {t}")
    edge_table = treebank.census(t, n, budget=budget)
    residue_table: Counter = Counter()
    for tree in treebank.enumerate_trees(t, n):
        residue_table[residue_stats(tree_to_path(tree), t)] += 1

    normalized = Counter()
    for vec, count in residue_table.items():
        normalized[tuple(v - o for v, o in zip(vec, off))] += count

    edge_counter = Counter(edge_table)
    matches = []
    shifted_tables = []
    for s in range(t):
        shifted = Counter()
        for vec, count in normalized.items():
            shifted[cyclic_shift(vec, s)] += count
        shifted_tables.append(shifted)
        matches.append(sum((edge_counter & shifted).values()))

    best = max(range(t), key=lambda s: (matches[s], -s))
    verdict = "equal" if shifted_tables[best] == edge_counter else "not-equal"
    witness = None
    if verdict == "not-equal":
        keys = sorted(set(edge_counter) | set(shifted_tables[best]))
        for key in keys:
            if edge_counter[key] != shifted_tables[best][key]:
                witness = (key, edge_counter[key], shifted_tables[best][key])
                break
    return ProbeReport(
        arity=t,
        nodes=n,
        edge_distribution=dict(edge_table),
        residue_distribution=dict(residue_table),
        offset=off,
        shift_matches=tuple(matches),
        best_shift=best,
        verdict=verdict,
        witness=witness,
    )
