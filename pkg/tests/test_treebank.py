"""Enumeration and census oracles: frozen tables, determinism, kernel parity."""
from collections import Counter

import pytest

from arbor import counting, treebank
from arbor.errors import BudgetExceededError, ConstraintError
from arbor.treebank import (
    Forest,
    TAryTree,
    census,
    edge_profile,
    enumerate_forests,
    enumerate_trees,
    forest_census,
    forest_profile,
    parse_tree,
    segment_census_pure,
    serialize_tree,
)

# enumeration totals frozen from direct generation
TERNARY_TOTALS = [1, 3, 12, 55, 273, 1428, 7752]
BINARY_TOTALS = [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
QUATERNARY_TOTALS = [1, 4, 22, 140, 969]


def test_enumeration_counts():
    for n, want in enumerate(TERNARY_TOTALS, start=1):
        assert sum(1 for _ in enumerate_trees(3, n)) == want
    for n, want in enumerate(BINARY_TOTALS[:6], start=1):
        assert sum(1 for _ in enumerate_trees(2, n)) == want
    for n, want in enumerate(QUATERNARY_TOTALS[:4], start=1):
        assert sum(1 for _ in enumerate_trees(4, n)) == want
    assert list(enumerate_trees(3, 0)) == []


def test_enumeration_no_duplicates():
    for t, n in [(2, 7), (3, 5), (4, 4)]:
        seen = [serialize_tree(tr) for tr in enumerate_trees(t, n)]
        assert len(seen) == len(set(seen)) == counting.total_trees(t, n)


def test_enumeration_deterministic():
    first = [serialize_tree(tr) for tr in enumerate_trees(3, 5)]
    second = [serialize_tree(tr) for tr in enumerate_trees(3, 5)]
    assert first == second


def test_tree_invariants():
    for n in range(1, 6):
        for tr in enumerate_trees(3, n):
            assert tr.size == n
            prof = edge_profile(tr)
            assert len(prof) == 3
            assert sum(prof) == n - 1


def test_edge_profile_examples():
    lone = TAryTree.leaf(3)
    assert edge_profile(lone) == (0, 0, 0)
    middle = TAryTree((None, TAryTree.leaf(3), None))
    assert edge_profile(middle) == (0, 1, 0)
    chain = TAryTree((TAryTree((TAryTree.leaf(3), None, None)), None, None))
    assert edge_profile(chain) == (2, 0, 0)


def test_forest_profile_examples():
    lone = TAryTree.leaf(3)
    assert forest_profile(Forest((lone, lone))) == (1, 1, 0)
    assert forest_profile(Forest((lone,))) == (1, 0, 0)
    left = TAryTree((TAryTree.leaf(3), None, None))
    assert forest_profile(Forest((left, lone))) == (2, 1, 0)


def test_forest_validation():
    lone3 = TAryTree.leaf(3)
    with pytest.raises(ConstraintError):
        Forest(())
    with pytest.raises(ConstraintError):
        Forest((lone3, lone3, lone3))  # m = t
    with pytest.raises(ConstraintError):
        Forest((lone3, TAryTree.leaf(2)))  # mixed arity
    with pytest.raises(ConstraintError):
        TAryTree((TAryTree.leaf(2), None, None))  # child arity mismatch


def test_serialize_examples():
    assert serialize_tree(TAryTree.leaf(3)) == "o..."
    middle = TAryTree((None, TAryTree.leaf(3), None))
    assert serialize_tree(middle) == "o.o...."
    assert serialize_tree(TAryTree.leaf(1)) == "o."


def test_serialize_parse_round_trip():
    for t, n in [(1, 5), (2, 5), (3, 4)]:
        for tr in enumerate_trees(t, n):
            assert parse_tree(serialize_tree(tr), t) == tr


def test_parse_rejects_malformed():
    with pytest.raises(ConstraintError):
        parse_tree("o..", 3)  # truncated
    with pytest.raises(ConstraintError):
        parse_tree("o....", 3)  # trailing garbage
    with pytest.raises(ConstraintError):
        parse_tree("...", 3)  # no root


# census tables frozen from direct enumeration
def test_census_frozen_tables():
    assert census(3, 2) == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    assert census(3, 3) == {
        (2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1,
        (1, 1, 0): 3, (1, 0, 1): 3, (0, 1, 1): 3,
    }
    assert census(1, 4) == {(3,): 1}
    assert census(3, 4)[(2, 1, 0)] == 6
    assert census(3, 4)[(1, 1, 1)] == 16


def test_forest_census_frozen_tables():
    assert forest_census(3, 2, 2) == {(1, 1, 0): 1}
    assert forest_census(3, 2, 3) == {(2, 1, 0): 2, (1, 2, 0): 2, (1, 1, 1): 2}
    assert forest_census(2, 1, 2) == {(2, 0): 1, (1, 1): 1}
    assert forest_census(3, 2, 4) == {
        (1, 1, 2): 3, (1, 2, 1): 8, (1, 3, 0): 3,
        (2, 1, 1): 8, (2, 2, 0): 8, (3, 1, 0): 3,
    }


def test_enumerate_forests_counts():
    assert sum(1 for _ in enumerate_forests(3, 2, 2)) == 1
    assert sum(1 for _ in enumerate_forests(3, 2, 3)) == 6
    assert sum(1 for _ in enumerate_forests(3, 2, 4)) == 33
    for t, m, n in [(3, 1, 5), (3, 2, 5), (4, 2, 4)]:
        assert sum(1 for _ in enumerate_forests(t, m, n)) == \
            counting.total_forests(t, m, n)


def test_forest_census_matches_direct_aggregation():
    for t, m, n in [(3, 1, 4), (3, 2, 5), (4, 3, 4)]:
        direct = Counter(forest_profile(f) for f in enumerate_forests(t, m, n))
        assert forest_census(t, m, n) == direct


def test_census_matches_closed_form():
    for t, max_n in [(2, 8), (3, 6), (4, 4)]:
        for n in range(1, max_n + 1):
            table = census(t, n)
            comps = list(counting.compositions(t, n - 1))
            assert set(table) == set(comps)
            for a in comps:
                assert table[a] == counting.count_trees(t, n, a)


def test_budget_guard_names_total():
    with pytest.raises(BudgetExceededError) as info:
        census(3, 6, budget=100)
    assert "1428" in str(info.value)
    assert info.value.total == 1428
    with pytest.raises(BudgetExceededError):
        forest_census(3, 2, 6, budget=10)


def test_budget_env_var(monkeypatch):
    monkeypatch.setenv(treebank.BUDGET_ENV_VAR, "50")
    with pytest.raises(BudgetExceededError):
        census(3, 5)
    assert census(3, 3) == census(3, 3, budget=1000)
    monkeypatch.setenv(treebank.BUDGET_ENV_VAR, "not-a-number")
    with pytest.raises(ConstraintError):
        census(3, 3)


def test_workers_do_not_change_tables():
    for workers in (1, 2, 5):
        assert census(3, 5, workers=workers) == census(3, 5)
        assert forest_census(3, 2, 5, workers=workers) == forest_census(3, 2, 5)
    assert census(3, 1, workers=4) == {(0, 0, 0): 1}


def test_engine_selection():
    pure = census(4, 4, engine="pure")
    auto = census(4, 4, engine="auto")
    assert pure == auto
    with pytest.raises(ConstraintError):
        census(3, 3, engine="warp")


@pytest.mark.skipif(not treebank.HAVE_SPEEDUPS, reason="compiled kernel not built")
def test_compiled_kernel_matches_reference():
    from arbor._speedups import segment_census as fast

    cases = [
        (3, (5,), (0,)),
        (2, (6,), (0,)),
        (4, (2, 3), (1, 2)),
        (3, (1, 2, 1), (1, 2, 3)),
        (3, (2, 2), (3, 0)),
        (5, (4,), (0,)),
    ]
    for t, sizes, slots in cases:
        assert fast(t, sizes, slots) == segment_census_pure(t, sizes, slots)
    for t, n in [(2, 9), (3, 7), (4, 5)]:
        assert census(t, n, engine="compiled") == census(t, n, engine="pure")
    for t, m, n in [(3, 1, 6), (3, 2, 6)]:
        assert forest_census(t, m, n, engine="compiled") == \
            forest_census(t, m, n, engine="pure")


def test_segment_census_degenerate():
    assert segment_census_pure(3, (), ()) == {(0, 0, 0): 1}


def test_enumerate_rejects_bad_arguments():
    with pytest.raises(ConstraintError):
        list(enumerate_trees(0, 3))
    with pytest.raises(ConstraintError):
        list(enumerate_trees(17, 1))
    with pytest.raises(ConstraintError):
        list(enumerate_forests(3, 3, 4))
    with pytest.raises(ConstraintError):
        list(enumerate_forests(3, 2, 1))
