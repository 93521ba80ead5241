"""The l1 + lambda*l2 norm: exact quadratic-field arithmetic, the dual ball,
the pigeonhole degree bound, and the interval procedure."""
from fractions import Fraction
from random import Random

import pytest

from steiner_local.l1l2 import (
    Interval,
    QuadNum,
    boxsum2,
    dual_membership,
    eval_shape,
    l1l2_subdifferential,
    lambda_threshold,
    node_degree_bound,
    steiner_star_check,
    steiner_star_check_full,
    typed_shapes,
    upper_bound_witness,
)
from steiner_local.signed_sets import SignedSet

F = Fraction


class TestQuadNum:
    def test_arithmetic(self):
        r2 = QuadNum.sqrt_part(1, 2)
        assert r2 * r2 == 2
        assert (1 + r2) * (1 - r2) == -1
        assert (1 + r2) - r2 == 1
        assert -r2 < 0 < r2

    def test_division(self):
        r2 = QuadNum.sqrt_part(1, 2)
        assert (1 / (1 + r2)) == r2 - 1
        assert r2 / r2 == 1
        with pytest.raises(ZeroDivisionError):
            r2 / QuadNum.of(0, 2)

    def test_sign_close_comparisons(self):
        r2 = QuadNum.sqrt_part(1, 2)
        # 99/70 is slightly above sqrt(2), 140/99 slightly below
        assert QuadNum.of(F(99, 70), 2) > r2
        assert QuadNum.of(F(140, 99), 2) < r2

    def test_non_squarefree_radicand(self):
        assert QuadNum.sqrt_part(1, 4) == 2
        assert QuadNum.sqrt_part(1, 9) * QuadNum.sqrt_part(1, 9) == 9

    def test_float_and_str(self):
        r2 = QuadNum.sqrt_part(1, 2)
        assert abs(float(r2) - 2 ** 0.5) < 1e-15
        assert str(QuadNum(F(1, 2), F(3), 2)) == "1/2 + 3*sqrt(2)"
        assert str(QuadNum.of(F(5, 7), 2)) == "5/7"

    def test_field_mixing_rejected(self):
        with pytest.raises(ValueError):
            QuadNum.sqrt_part(1, 2) + QuadNum.sqrt_part(1, 3)

    def test_ordering_random(self):
        rng = Random(71)
        for _ in range(500):
            x = QuadNum(F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5)), 3)
            y = QuadNum(F(rng.randint(-9, 9), rng.randint(1, 5)), F(rng.randint(-9, 9), rng.randint(1, 5)), 3)
            assert (x < y) == (float(x) < float(y) and x != y)


class TestInterval:
    def test_of_and_empty(self):
        iv = Interval.of(-1, 1, 2)
        assert not iv.empty
        assert Interval.of(1, -1, 2).empty

    def test_add_and_clip(self):
        a = Interval.of(0, 1, 2)
        b = Interval.of(2, 3, 2)
        s = a + b
        assert s.lo == 2 and s.hi == 4
        c = s.clip(0, 3)
        assert c.lo == 2 and c.hi == 3
        assert s.clip(5, 6).empty

    def test_contains_intersects(self):
        iv = Interval.of(-1, 1, 2)
        assert iv.contains(F(1, 2))
        assert not iv.contains(2)
        assert iv.intersects(1, 3)
        assert not iv.intersects(2, 3)
        assert not Interval.of(1, -1, 2).contains(0)


class TestDualBall:
    def test_boundary_point(self):
        lam = F(1, 2)
        assert dual_membership((1 + lam, 0), 2, lam)

    def test_diagonal_too_far(self):
        assert not dual_membership((2, 2), 2, 1)

    def test_origin(self):
        assert dual_membership((0, 0), 2, F(3, 4))

    def test_irrational_boundary(self):
        # (1 + lam/sqrt(2), 1 + lam/sqrt(2)) is exactly at distance lam
        lam = QuadNum.of(F(1, 2), 2)
        c = 1 + lam * QuadNum.sqrt_part(F(1, 2), 2)
        assert dual_membership((c, c), 2, lam)
        assert not dual_membership((c + F(1, 100), c), 2, lam)

    def test_lambda_positive(self):
        with pytest.raises(ValueError):
            dual_membership((0, 0), 2, 0)


class TestSubdifferential:
    def test_unit_vector(self):
        face = l1l2_subdifferential((1, 0), F(1, 2))
        assert face.sign == SignedSet.make([1], [], 2)
        assert face.scale == (F(1, 2), F(0))
        assert face.radicand == 1

    def test_diagonal(self):
        lam = F(1, 2)
        face = l1l2_subdifferential((1, 1), lam)
        assert face.sign == SignedSet.make([1, 2], [], 2)
        assert face.scale == (lam / 2, lam / 2)
        assert face.radicand == 2
        # shift = lam/sqrt(2) per coordinate
        assert abs(face.shift_float[0] - float(lam) / 2 ** 0.5) < 1e-15

    def test_negative_axis(self):
        face = l1l2_subdifferential((0, -1, 0), F(1, 3))
        assert face.sign == SignedSet.make([], [2], 3)

    def test_origin_rejected(self):
        with pytest.raises(ValueError):
            l1l2_subdifferential((0, 0), 1)


class TestDegreeBound:
    def test_singletons_inconclusive(self):
        pts = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        v = node_degree_bound(pts, 2, 1)
        assert v.status == "inconclusive"

    def test_five_points_rejected(self):
        pts = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)]
        v = node_degree_bound(pts, 2, 1)
        assert v.status == "not_smt"
        i, j = v.witness
        assert 1 <= i < j <= 5

    def test_witness_shares_signed_slot(self):
        rng = Random(73)
        for _ in range(300):
            n = rng.randint(1, 4)
            pts = []
            for _ in range(2 * n + 1):
                while True:
                    p = [F(rng.randint(-4, 4)) for _ in range(n)]
                    if any(c != 0 for c in p):
                        break
                pts.append(p)
            v = node_degree_bound(pts, n, F(rng.randint(1, 4), 4))
            assert v.status == "not_smt"
            i, j = v.witness
            a, b = pts[i - 1], pts[j - 1]
            assert any(x > 0 and y > 0 or x < 0 and y < 0 for x, y in zip(a, b))

    def test_lambda_above_one_rejected(self):
        with pytest.raises(ValueError):
            node_degree_bound([(1, 0)], 2, F(3, 2))

    def test_n1_three_points(self):
        v = node_degree_bound([(1,), (1,), (-1,)], 1, 1)
        assert v.status == "not_smt"

    def test_upper_bound_witness_absent(self):
        signs = [
            SignedSet.make([1], [], 2),
            SignedSet.make([], [1], 2),
            SignedSet.make([2], [], 2),
            SignedSet.make([], [2], 2),
        ]
        assert upper_bound_witness(signs) is None

    def test_upper_bound_witness_empty_rejected(self):
        with pytest.raises(ValueError):
            upper_bound_witness([SignedSet(0, 0, 2)])


class TestBoxsum:
    def test_interval_plus_point(self):
        n, lam = 2, F(1, 2)
        lam_q = QuadNum.of(lam, n)
        iv = boxsum2(Interval.of(-1, 1, n), Interval.point(1 + lam_q, n), n, lam)
        assert iv.lo == lam_q
        assert iv.hi == 1 + lam_q * QuadNum.sqrt_part(F(1, 2), 2)

    def test_opposite_points_cancel(self):
        n, lam = 2, F(1, 2)
        lam_q = QuadNum.of(lam, n)
        iv = boxsum2(Interval.point(1 + lam_q, n), Interval.point(-(1 + lam_q), n), n, lam)
        assert iv.lo == 0 and iv.hi == 0

    def test_two_intervals_fill_box(self):
        n, lam = 2, F(1, 2)
        bound = 1 + QuadNum.of(lam, n) * QuadNum.sqrt_part(F(1, 2), 2)
        iv = boxsum2(Interval.of(-1, 1, n), Interval.of(-1, 1, n), n, lam)
        assert iv.lo == -bound and iv.hi == bound


GRID = [F(1, 4), F(1, 2), F(1), F(3, 2), F(2)]


class TestClaims:
    def test_all_interval_shapes_contain_unit_interval(self):
        # any clipped parenthesization of copies of [-1,1] contains [-1,1]
        for n, lam in ((2, F(2)), (3, F(3, 2)), (4, F(1))):
            for k in range(1, 7):
                for shape in typed_shapes(0, 0, k):
                    iv = eval_shape(shape, n, lam)
                    assert iv.lo <= -1 and iv.hi >= 1

    def test_one_plus_leaf_shapes(self):
        # with one {1+lambda} leaf, every shape contains [lambda, 1+lambda/sqrt(n)]
        for n in (2, 3, 4):
            for lam in GRID:
                if QuadNum.of(lam, n) > lambda_threshold(n):
                    continue
                lam_q = QuadNum.of(lam, n)
                top = 1 + lam_q * QuadNum.sqrt_part(F(1, n), n)
                # at least one [-1,1] leaf: the bare {1+lambda} leaf lies
                # outside the clipping box and is handled by the top split
                for k in range(1, 6):
                    for shape in typed_shapes(1, 0, k):
                        iv = eval_shape(shape, n, lam)
                        assert iv.lo <= lam_q and iv.hi >= top

    def test_mixed_shapes_meet_unit_interval(self):
        # one {1+lambda}, one {-1-lambda}, the rest [-1,1]: always meets [-1,1]
        for n in (2, 3, 4):
            for lam in GRID:
                if QuadNum.of(lam, n) > lambda_threshold(n):
                    continue
                for k in range(0, 5):
                    for shape in typed_shapes(1, 1, k):
                        assert eval_shape(shape, n, lam).intersects(-1, 1)


class TestStarCheck:
    def test_paper_examples(self):
        assert steiner_star_check(2, 2)
        assert not steiner_star_check(2, F(7, 2))
        assert steiner_star_check(4, F(3, 2))

    def test_sharpness_at_n2(self):
        star = QuadNum(F(2), F(1), 2)  # 2 + sqrt(2)
        assert steiner_star_check(2, star)
        assert not steiner_star_check(2, star + F(1, 100))

    def test_threshold_values(self):
        assert lambda_threshold(2) == QuadNum(F(2), F(1), 2)
        assert lambda_threshold(4) == 2
        for n in (2, 3, 4, 6):
            t = lambda_threshold(n)
            rn = QuadNum.sqrt_part(1, n)
            assert t * (rn - 1) == rn
        with pytest.raises(ValueError):
            lambda_threshold(1)

    def test_exactly_at_threshold(self):
        for n in (2, 3, 4, 6):
            t = lambda_threshold(n)
            assert steiner_star_check(n, t)

    def test_matches_full_enumeration(self):
        for n in (2, 3):
            t = lambda_threshold(n)
            lams = GRID + [t, t + F(1, 64)]
            for lam in lams:
                assert steiner_star_check(n, lam) == steiner_star_check_full(n, lam)

    def test_n1_trivial(self):
        assert steiner_star_check(1, F(1, 2))

    def test_bad_lambda(self):
        with pytest.raises(ValueError):
            steiner_star_check(2, 0)

    def test_full_enumeration_capped(self):
        with pytest.raises(ValueError):
            steiner_star_check_full(5, 1)
