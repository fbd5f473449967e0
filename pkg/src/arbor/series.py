"""Truncated multivariate formal power series over exact integers.

One variable marks nodes, t further variables mark edge types.  The tree
generating series solves g = x * (1 + y1*g) * ... * (1 + yt*g); this module
obtains it two independent ways: fixed-point iteration on the equation, and
direct coefficient extraction from the expanded product (the inversion rule
[x^n] g = (1/n) [g^(n-1)] prod (1 + yi*g)^n).
"""
from __future__ import annotations

from typing import Iterator, Sequence

from arbor import counting
from arbor.errors import ConstraintError


class MultiSeries:
    """Sparse series in x and y1..yt, truncated at a fixed x-degree.

    Terms map (n, (a1, ..., at)) to a nonzero integer coefficient; the
    representation is normalized (no stored zeros).  Values are immutable
    by convention; arithmetic returns new instances.
    """

    __slots__ = ("arity", "truncation", "_terms")

    def __init__(self, arity: int, truncation: int, terms: dict | None = None):
        counting.check_arity(arity)
        if truncation < 0:
            raise ConstraintError(f"truncation must be >= 0, got {truncation}")
        self.arity = arity
        self.truncation = truncation
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, arity: int, truncation: int) -> "MultiSeries":
        return cls(arity, truncation)

    @classmethod
    def one(cls, arity: int, truncation: int) -> "MultiSeries":
        return cls(arity, truncation, {(0, (0,) * arity): 1})

    @classmethod
    def x(cls, arity: int, truncation: int) -> "MultiSeries":
        terms = {(1, (0,) * arity): 1} if truncation >= 1 else {}
        return cls(arity, truncation, terms)

    def _check_match(self, other: "MultiSeries") -> None:
        if self.arity != other.arity:
            raise ConstraintError(
                f"arity mismatch: {self.arity} vs {other.arity}"
            )
        if self.truncation != other.truncation:
            raise ConstraintError(
                f"truncation mismatch: {self.truncation} vs {other.truncation}"
            )

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_match(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return MultiSeries(self.arity, self.truncation, out)

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._check_match(other)
        limit = self.truncation
        out: dict = {}
        for (n1, a1), c1 in self._terms.items():
            for (n2, a2), c2 in other._terms.items():
                n = n1 + n2
                if n > limit:
                    continue
                key = (n, tuple(p + q for p, q in zip(a1, a2)))
                out[key] = out.get(key, 0) + c1 * c2
        return MultiSeries(self.arity, self.truncation, out)

    def times_y(self, slot: int) -> "MultiSeries":
        """Multiply by the edge marker of the given slot (1-based)."""
        if not 1 <= slot <= self.arity:
            raise ConstraintError(f"slot {slot} outside 1..{self.arity}")
        i = slot - 1
        out = {}
        for (n, a), c in self._terms.items():
            b = a[:i] + (a[i] + 1,) + a[i + 1:]
            out[(n, b)] = c
        return MultiSeries(self.arity, self.truncation, out)

    def coefficient(self, n: int, parts: Sequence[int]) -> int:
        """Stored coefficient of x^n * y^parts, or 0; n must be within truncation."""
        if n > self.truncation:
            raise ConstraintError(
                f"x-degree {n} beyond truncation {self.truncation}"
            )
        a = tuple(parts)
        if len(a) != self.arity:
            raise ConstraintError(
                f"exponent vector has {len(a)} parts, arity is {self.arity}"
            )
        return self._terms.get((n, a), 0)

    def terms(self) -> Iterator[tuple]:
        """(n, parts, coefficient) triples in sorted key order."""
        for n, a in sorted(self._terms):
            yield n, a, self._terms[(n, a)]

    def dump_lines(self) -> list[str]:
        """Sorted ``n;a1,...,at;coef`` lines (the debug dump format)."""
        return [
            "%d;%s;%d" % (n, ",".join(str(x) for x in a), c)
            for n, a, c in self.terms()
        ]

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.truncation == other.truncation
            and self._terms == other._terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"MultiSeries(arity={self.arity}, truncation={self.truncation}, "
            f"terms={len(self._terms)})"
        )


def series_add(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a + b


def series_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a * b


def solve_G(t: int, N: int) -> MultiSeries:
    """Solve g = x * prod_i (1 + yi*g) through x-order N by fixed-point iteration.

    Starting from 0, the coefficient of x^k is stable after k rounds, so
    exactly N rounds are run; no convergence heuristic is involved.
    """
    counting.check_arity(t)
    if N < 1:
        raise ConstraintError(f"truncation must be >= 1, got N={N}")
    one = MultiSeries.one(t, N)
    x = MultiSeries.x(t, N)
    g = MultiSeries.zero(t, N)
    for _ in range(N):
        p = x
        for slot in range(1, t + 1):
            p = p * (one + g.times_y(slot))
        g = p
    return g


def coefficient(s: MultiSeries, n: int, parts: Sequence[int]) -> int:
    return s.coefficient(n, parts)


class Poly:
    """Polynomial in one marker g with edge-marker multidegrees, truncated in g.

    Terms map (g_power, (a1, ..., at)) to a nonzero integer.  Used to expand
    prod_i (1 + yi*g)^n without ever touching x.
    """

    __slots__ = ("arity", "gmax", "_terms")

    def __init__(self, arity: int, gmax: int, terms: dict | None = None):
        self.arity = arity
        self.gmax = gmax
        self._terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, arity: int, gmax: int) -> "Poly":
        return cls(arity, gmax, {(0, (0,) * arity): 1})

    @classmethod
    def binomial_factor(cls, arity: int, gmax: int, slot: int, power: int) -> "Poly":
        """(1 + y_slot * g)^power truncated at g^gmax."""
        zero = (0,) * arity
        i = slot - 1
        terms = {}
        for k in range(min(power, gmax) + 1):
            exps = zero[:i] + (k,) + zero[i + 1:]
            terms[(k, exps)] = counting.binomial(power, k)
        return cls(arity, gmax, terms)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.arity != other.arity or self.gmax != other.gmax:
            raise ConstraintError("polynomial arity/truncation mismatch")
        out: dict = {}
        for (g1, a1), c1 in self._terms.items():
            for (g2, a2), c2 in other._terms.items():
                g = g1 + g2
                if g > self.gmax:
                    continue
                key = (g, tuple(p + q for p, q in zip(a1, a2)))
                out[key] = out.get(key, 0) + c1 * c2
        return Poly(self.arity, self.gmax, out)

    def coefficient(self, gpow: int, parts: Sequence[int]) -> int:
        return self._terms.get((gpow, tuple(parts)), 0)


def _expanded_product(t: int, gmax: int, power: int) -> Poly:
    p = Poly.one(t, gmax)
    for slot in range(1, t + 1):
        p = p * Poly.binomial_factor(t, gmax, slot, power)
    return p


def lagrange_extract(t: int, n: int, parts: Sequence[int]) -> int:
    """Tree count by direct inversion: expand prod_i (1 + yi*g)^n with g
    truncated at n-1, read the coefficient of g^(n-1) * y^parts, divide by n.

    Agrees with the closed-form product of binomials but is computed by
    polynomial expansion, so it serves as an independent check.
    """
    a = counting.validate_tree_composition(t, n, parts)
    p = _expanded_product(t, n - 1, n)
    c = p.coefficient(n - 1, a)
    q, r = divmod(c, n)
    if r:
        raise ArithmeticError(f"extracted coefficient {c} not divisible by n={n}")
    return q


def lagrange_extract_forest(t: int, m: int, n: int, parts: Sequence[int]) -> int:
    """Forest count by direct inversion.

    The m-tuple generating series is (y1*g)...(ym*g); inverting it gives
    (m/n) times the coefficient of g^(n-m) * y^(parts - e1 - ... - em) in
    prod_i (1 + yi*g)^n, again by expansion.
    """
    a = counting.validate_forest_composition(t, m, n, parts)
    reduced = tuple(x - 1 if i < m else x for i, x in enumerate(a))
    p = _expanded_product(t, n - m, n)
    c = p.coefficient(n - m, reduced)
    q, r = divmod(m * c, n)
    if r:
        raise ArithmeticError(
            f"extracted coefficient {m * c} not divisible by n={n}"
        )
    return q
