"""Series ring, fixed-point solution, and direct coefficient extraction."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arbor import counting, series
from arbor.errors import ConstraintError
from arbor.series import (
    MultiSeries,
    lagrange_extract,
    lagrange_extract_forest,
    series_add,
    series_mul,
    solve_G,
)


def term_key(n, parts):
    return (n, tuple(parts))


def test_mul_examples():
    x = MultiSeries.x(2, 4)
    x2 = series_mul(x, x)
    assert x2.coefficient(2, (0, 0)) == 1
    assert x2.coefficient(1, (0, 0)) == 0
    # (1 + y1 x)(1 + y2 x) = 1 + y1 x + y2 x + y1 y2 x^2
    a = MultiSeries(2, 4, {term_key(0, (0, 0)): 1, term_key(1, (1, 0)): 1})
    b = MultiSeries(2, 4, {term_key(0, (0, 0)): 1, term_key(1, (0, 1)): 1})
    p = series_mul(a, b)
    assert p.coefficient(0, (0, 0)) == 1
    assert p.coefficient(1, (1, 0)) == 1
    assert p.coefficient(1, (0, 1)) == 1
    assert p.coefficient(2, (1, 1)) == 1
    assert p.coefficient(2, (2, 0)) == 0


def test_add_identity_and_normalization():
    s = MultiSeries(2, 3, {term_key(1, (1, 0)): 2, term_key(2, (1, 1)): -1})
    zero = MultiSeries.zero(2, 3)
    assert series_add(s, zero) == s
    neg = MultiSeries(2, 3, {k: -v for k, v in s._terms.items()})
    total = series_add(s, neg)
    assert total == zero
    assert total._terms == {}


def test_truncation_drops_high_orders():
    x = MultiSeries.x(2, 2)
    x2 = x * x
    x3 = x2 * x
    assert x3 == MultiSeries.zero(2, 2)


def test_mismatch_errors():
    with pytest.raises(ConstraintError):
        series_add(MultiSeries.one(2, 3), MultiSeries.one(3, 3))
    with pytest.raises(ConstraintError):
        series_mul(MultiSeries.one(2, 3), MultiSeries.one(2, 4))


def test_coefficient_beyond_truncation():
    g = solve_G(3, 4)
    with pytest.raises(ConstraintError):
        g.coefficient(5, (0, 0, 4))


# solver values frozen from direct enumeration of the trees
def test_solve_spot_values():
    g = solve_G(3, 5)
    assert g.coefficient(1, (0, 0, 0)) == 1
    assert g.coefficient(2, (0, 1, 0)) == 1
    assert g.coefficient(3, (1, 1, 0)) == 3
    assert g.coefficient(4, (1, 1, 1)) == 16
    g2 = solve_G(2, 3)
    assert g2.coefficient(3, (1, 1)) == 3


def test_solution_homogeneity():
    for t, N in [(2, 6), (3, 5), (4, 4)]:
        for n, a, c in solve_G(t, N).terms():
            assert c != 0
            assert sum(a) == n - 1


def test_fixed_point_residual():
    for t, N in [(1, 6), (2, 8), (3, 6), (4, 5)]:
        g = solve_G(t, N)
        one = MultiSeries.one(t, N)
        p = MultiSeries.x(t, N)
        for slot in range(1, t + 1):
            p = p * (one + g.times_y(slot))
        assert p == g


def test_iteration_is_stationary():
    # one extra round changes nothing within the truncation
    t, N = 3, 5
    g = solve_G(t, N)
    one = MultiSeries.one(t, N)
    p = MultiSeries.x(t, N)
    for slot in range(1, t + 1):
        p = p * (one + g.times_y(slot))
    assert p == g == solve_G(t, N)


def test_lagrange_spot_values():
    assert lagrange_extract(3, 1, (0, 0, 0)) == 1
    assert lagrange_extract(3, 2, (1, 0, 0)) == 1
    assert lagrange_extract(3, 4, (2, 1, 0)) == 6
    assert lagrange_extract_forest(3, 2, 2, (1, 1, 0)) == 1
    assert lagrange_extract_forest(3, 2, 3, (1, 1, 1)) == 2
    assert lagrange_extract_forest(3, 1, 2, (1, 1, 0)) == \
        counting.count_trees(3, 2, (0, 1, 0))


def test_lagrange_rejects_invalid():
    with pytest.raises(ConstraintError):
        lagrange_extract(3, 3, (1, 1, 1))
    with pytest.raises(ConstraintError):
        lagrange_extract_forest(3, 2, 3, (0, 2, 1))


def test_triple_agreement_small():
    for t, N in [(2, 7), (3, 6), (4, 4)]:
        g = solve_G(t, N)
        for n in range(1, N + 1):
            for a in counting.compositions(t, n - 1):
                want = counting.count_trees(t, n, a)
                assert g.coefficient(n, a) == want
                assert lagrange_extract(t, n, a) == want


def test_forest_extraction_matches_closed_form():
    for t in (3, 4):
        for m in range(1, t):
            for n in range(m, 7):
                for a in counting.compositions(t, n, m=m):
                    assert lagrange_extract_forest(t, m, n, a) == \
                        counting.count_forests(t, m, n, a)


def test_dump_lines_sorted_format():
    g = solve_G(2, 3)
    lines = g.dump_lines()
    assert lines[0] == "1;0,0;1"
    assert lines == sorted(
        lines, key=lambda s: (int(s.split(";")[0]),
                              tuple(int(x) for x in s.split(";")[1].split(",")))
    )
    for line in lines:
        n, a, c = line.split(";")
        assert int(c) == g.coefficient(int(n), tuple(int(x) for x in a.split(",")))


def small_series(t=2, N=3):
    keys = st.tuples(
        st.integers(0, N),
        st.tuples(*[st.integers(0, 2) for _ in range(t)]),
    )
    return st.dictionaries(keys, st.integers(-4, 4), max_size=5).map(
        lambda terms: MultiSeries(t, N, terms)
    )


@given(small_series(), small_series(), small_series())
@settings(max_examples=120, deadline=None)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
