"""Rooted and unrooted abstract Steiner tree enumeration and counting."""
from math import factorial

import pytest

from steiner_local.parens import (
    ParenTree,
    catalan,
    contract_root,
    count_rooted,
    count_unrooted,
    enumerate_rooted,
    enumerate_unrooted,
    grouping_key,
    parse_grouping,
)

ODD_PRODUCTS = [1, 1, 3, 15, 105, 945, 10395]  # a_1 .. a_7


class TestCounts:
    def test_count_rooted_formula(self):
        for k, expect in enumerate(ODD_PRODUCTS, start=1):
            assert count_rooted(k) == expect

    def test_count_unrooted(self):
        for k in range(2, 8):
            assert count_unrooted(k) == count_rooted(k - 1)

    def test_bad_k(self):
        with pytest.raises(ValueError):
            count_rooted(0)
        with pytest.raises(ValueError):
            count_unrooted(1)

    def test_enumeration_matches_counts(self):
        for k in range(1, 8):
            keys = [t.canonical_key for t in enumerate_rooted(range(1, k + 1))]
            assert len(keys) == count_rooted(k)
            assert len(set(keys)) == len(keys)
        for k in range(2, 8):
            keys = [t.canonical_key for t in enumerate_unrooted(range(1, k + 1))]
            assert len(keys) == count_unrooted(k)
            assert len(set(keys)) == len(keys)

    def test_catalan_cross_check(self):
        # 2^(k-1) * a_k / k! is the (k-1)-st Catalan number
        for k in range(1, 11):
            num = 2 ** (k - 1) * count_rooted(k)
            assert num % factorial(k) == 0
            assert num // factorial(k) == catalan(k - 1)


class TestStructure:
    def test_grouping_key_round_trip(self):
        for k in (3, 4, 5):
            for t in enumerate_rooted(range(1, k + 1)):
                assert parse_grouping(grouping_key(t.grouping)) == t.grouping

    def test_rooted_tree_shape(self):
        # k leaves plus root, k-1 internal vertices of degree 3
        for t in enumerate_rooted(range(1, 5)):
            edges = t.edges()
            internal = {v for e in edges for v in e if isinstance(v, str)}
            assert len(internal) == 3
            deg = {}
            for a, b in edges:
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            for v in internal:
                assert deg[v] == 3
            leaves = [v for v in deg if not isinstance(v, str)]
            assert sorted(leaves) == [0, 1, 2, 3, 4]
            assert all(deg[v] == 1 for v in leaves)

    def test_unrooted_tree_shape(self):
        for t in enumerate_unrooted(range(1, 5)):
            edges = t.edges()
            internal = {v for e in edges for v in e if isinstance(v, str)}
            assert len(internal) == 2
            deg = {}
            for a, b in edges:
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            leaves = [v for v in deg if not isinstance(v, str)]
            assert sorted(leaves) == [1, 2, 3, 4]

    def test_contract_root_multiplicity(self):
        # every unrooted tree on k leaves arises from exactly 2k-3 rooted trees
        for k in range(2, 7):
            counts = {}
            for t in enumerate_rooted(range(1, k + 1)):
                key = contract_root(t).canonical_key
                counts[key] = counts.get(key, 0) + 1
            assert len(counts) == count_unrooted(k)
            assert all(c == 2 * k - 3 for c in counts.values())

    def test_contract_root_rejects_unrooted(self):
        t = next(iter(enumerate_unrooted([1, 2, 3])))
        with pytest.raises(ValueError):
            contract_root(t)

    def test_internal_leafsets_rooted(self):
        t = ParenTree(frozenset({1, 2, 3}), parse_grouping("((1 2) 3)"), rooted=True)
        assert set(t.internal_leafsets()) == {frozenset({1, 2}), frozenset({1, 2, 3})}

    def test_internal_leafsets_unrooted(self):
        # anchor is leaf 4; the top pair node is dropped
        t = ParenTree(frozenset({1, 2, 3, 4}), parse_grouping("((1 2) 3)"), rooted=False)
        assert t.anchor == 4
        assert set(t.internal_leafsets()) == {frozenset({1, 2})}
