"""Dual balls, subdifferentials, and LP feasibility of parenthesizations."""
from fractions import Fraction
from random import Random

import pytest

from steiner_local.parens import ParenTree, contract_root, enumerate_rooted, enumerate_unrooted, parse_grouping
from steiner_local.geometry import (
    dot,
    dual_ball,
    enumerate_hrep_vertices,
    l1space,
    linfspace,
    norm_exact,
    paren_feasible,
    polytope_space,
    subdifferential,
    vec,
    zspace,
)

F = Fraction


def random_point(rng, dim, zero_sum=False):
    while True:
        vals = [F(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(dim)]
        if zero_sum:
            vals[-1] = -sum(vals[:-1])
        if any(v != 0 for v in vals):
            return tuple(vals)


class TestNorms:
    def test_examples(self):
        assert norm_exact(l1space(2), (1, -2)) == 3
        assert norm_exact(linfspace(2), (1, -2)) == 2
        assert norm_exact(zspace(2), (1, 0, -1)) == 1

    def test_polytope_gauge_matches_l1(self):
        # cross-polytope ball gives the l1 norm
        space = polytope_space([(1, 0), (-1, 0), (0, 1), (0, -1)])
        rng = Random(2)
        for _ in range(50):
            x = random_point(rng, 2)
            assert norm_exact(space, x) == norm_exact(l1space(2), x)

    def test_polytope_needs_symmetry(self):
        with pytest.raises(ValueError):
            polytope_space([(1, 0), (0, 1), (0, -1)])

    def test_l2_has_no_exact_norm(self):
        from steiner_local.geometry import l2space

        with pytest.raises(ValueError):
            norm_exact(l2space(2), (1, 1))


class TestDualBall:
    def test_linf_dual_is_l1(self):
        ball = dual_ball(linfspace(2))
        assert ball.contains((F(1, 2), F(1, 2)))
        assert ball.contains((1, 0))
        assert not ball.contains((F(3, 4), F(1, 2)))

    def test_l1_dual_is_linf(self):
        ball = dual_ball(l1space(2))
        assert ball.contains((1, 1))
        assert not ball.contains((F(5, 4), 0))

    def test_z_dual_vertices(self):
        # l1 ball restricted to the zero-sum plane: 6 vertices (e_i - e_j)/2
        verts = enumerate_hrep_vertices(dual_ball(zspace(2)))
        assert len(verts) == 6
        h = F(1, 2)
        assert (h, -h, 0) in verts
        for v in verts:
            assert sum(v) == 0
            assert sum(abs(c) for c in v) == 1

    def test_polytope_dual_vertices(self):
        # dual of the cross-polytope ball is the cube
        space = polytope_space([(1, 0), (-1, 0), (0, 1), (0, -1)])
        verts = enumerate_hrep_vertices(dual_ball(space))
        assert sorted(verts) == sorted(
            [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        )


class TestSubdifferential:
    @pytest.mark.parametrize(
        "space,zero_sum",
        [
            (zspace(3), True),
            (l1space(3), False),
            (linfspace(3), False),
            (polytope_space([(1, 0), (-1, 0), (0, 1), (0, -1)]), False),
        ],
        ids=["z", "l1", "linf", "polytope"],
    )
    def test_vertices_attain_norm(self, space, zero_sum):
        ball = dual_ball(space)
        rng = Random(13)
        for _ in range(60):
            x = random_point(rng, space.ambient_dim, zero_sum=zero_sum)
            nrm = norm_exact(space, x)
            sd = subdifferential(space, x)
            for v in sd.vertices:
                assert ball.contains(v)
                assert dot(v, x) == nrm

    def test_origin_rejected(self):
        with pytest.raises(ValueError):
            subdifferential(l1space(2), (0, 0))


class TestParenFeasible:
    def make_subdiffs(self, space, points):
        return {i + 1: subdifferential(space, p) for i, p in enumerate(points)}

    def test_plus_minus_unit_vectors_linf_infeasible(self):
        # steiner star to +-e_1, +-e_2 in the max norm is not an SMT; the
        # tree grouping e_1 with e_2 forces the sum (1,1) outside the ball
        space = linfspace(2)
        pts = [vec((1, 0)), vec((-1, 0)), vec((0, 1)), vec((0, -1))]
        subdiffs = self.make_subdiffs(space, pts)
        ball = dual_ball(space)
        tree = ParenTree(frozenset({1, 2, 3, 4}), parse_grouping("((1 3) 2)"), rooted=False)
        assert not paren_feasible(tree, subdiffs, ball, "steiner")

    def test_four_corners_linf_feasible(self):
        space = linfspace(2)
        pts = [vec((1, 1)), vec((1, -1)), vec((-1, 1)), vec((-1, -1))]
        subdiffs = self.make_subdiffs(space, pts)
        ball = dual_ball(space)
        trees = list(enumerate_unrooted([1, 2, 3, 4]))
        assert len(trees) == 3
        for tree in trees:
            assert paren_feasible(tree, subdiffs, ball, "steiner")

    def test_single_leaf_node_mode_feasible(self):
        space = linfspace(2)
        subdiffs = self.make_subdiffs(space, [vec((1, 0))])
        tree = ParenTree(frozenset({1}), 1, rooted=True)
        assert paren_feasible(tree, subdiffs, dual_ball(space), "node")

    def test_node_mode_needs_rooted_tree(self):
        space = linfspace(2)
        subdiffs = self.make_subdiffs(space, [vec((1, 0)), vec((0, 1))])
        tree = next(iter(enumerate_unrooted([1, 2])))
        with pytest.raises(ValueError):
            paren_feasible(tree, subdiffs, dual_ball(space), "node")

    def test_missing_leaf_rejected(self):
        space = linfspace(2)
        subdiffs = self.make_subdiffs(space, [vec((1, 0))])
        tree = next(iter(enumerate_rooted([1, 2])))
        with pytest.raises(ValueError):
            paren_feasible(tree, subdiffs, dual_ball(space), "node")

    def test_weak_associativity_random(self):
        # the steiner verdict only depends on the unrooted tree class: all
        # rooted trees contracting to the same unrooted tree agree, and they
        # agree with the unrooted tree itself
        rng = Random(41)
        spaces = [zspace(3), l1space(3), linfspace(3)]
        for trial in range(200):
            space = rng.choice(spaces)
            k = rng.randint(3, 4)
            pts = [
                random_point(rng, space.ambient_dim, zero_sum=space.kind == "z")
                for _ in range(k)
            ]
            subdiffs = self.make_subdiffs(space, pts)
            ball = dual_ball(space)
            unrooted_verdict = {
                t.canonical_key: paren_feasible(t, subdiffs, ball, "steiner")
                for t in enumerate_unrooted(range(1, k + 1))
            }
            for t in enumerate_rooted(range(1, k + 1)):
                key = contract_root(t).canonical_key
                assert paren_feasible(t, subdiffs, ball, "steiner") == unrooted_verdict[key]
