"""Signed sets and the boxdot product on the augmented face lattice."""
import pytest

from steiner_local.signed_sets import (
    TOP,
    SignedSet,
    all_signed_sets,
    boxdot,
    conformal,
    face_leq,
    leq,
)


def ss(pos, neg, m=4):
    return SignedSet.make(pos, neg, m)


class TestBasics:
    def test_parts(self):
        x = ss([1, 3], [2])
        assert x.pos == {1, 3}
        assert x.neg == {2}
        assert x.zero == {4}

    def test_disjointness_enforced(self):
        with pytest.raises(ValueError):
            ss([1], [1])

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            ss([5], [1], m=4)

    def test_sign(self):
        x = ss([1], [2])
        assert x.sign(1) == 1
        assert x.sign(2) == -1
        assert x.sign(3) == 0

    def test_opposite(self):
        x = ss([1, 3], [2])
        assert x.opposite() == ss([2], [1, 3])

    def test_str_parse_round_trip(self):
        for x in all_signed_sets(3):
            assert SignedSet.parse(str(x), 3) == x

    def test_parse_example(self):
        assert SignedSet.parse("+{1,3}-{2}", 4) == ss([1, 3], [2])

    def test_counts(self):
        # 3^m signed sets in total; proper ones exclude pos or neg empty
        assert len(all_signed_sets(3)) == 27
        assert len(all_signed_sets(4)) == 81
        assert len(all_signed_sets(4, proper=True)) == 81 - 2 * 16 + 1


class TestBoxdot:
    def test_clash_both_ways_gives_top(self):
        assert boxdot(ss([1], [2]), ss([2], [1])) is TOP

    def test_one_way_clash(self):
        # 1 in X+ n Y-, X- n Y+ empty: result (Y+, X-)
        assert boxdot(ss([1], [2]), ss([3], [1])) == ss([3], [2])

    def test_conformal_gives_empty(self):
        out = boxdot(ss([1], [2]), ss([1], [3]))
        assert out == SignedSet(0, 0, 4)

    def test_top_is_identity(self):
        x = ss([1], [2])
        assert boxdot(x, TOP) == x
        assert boxdot(TOP, x) == x
        assert boxdot(TOP, TOP) is TOP

    def test_commutative_exhaustive(self):
        for m in (2, 3, 4):
            sets = all_signed_sets(m)
            for x in sets:
                for y in sets:
                    assert boxdot(x, y) == boxdot(y, x)

    def test_non_associative_witness_exists(self):
        sets = all_signed_sets(4, proper=True)
        found = False
        for x in sets:
            for y in sets:
                xy = boxdot(x, y)
                for z in sets:
                    if boxdot(xy, z) != boxdot(x, boxdot(y, z)):
                        found = True
                        break
                if found:
                    break
            if found:
                break
        assert found

    def test_empty_iff_conformal(self):
        empty = SignedSet(0, 0, 3)
        for x in all_signed_sets(3, proper=True):
            for y in all_signed_sets(3, proper=True):
                assert (boxdot(x, y) == empty) == conformal(x, y)

    def test_mismatched_ground_sets(self):
        with pytest.raises(ValueError):
            boxdot(ss([1], [2], m=3), ss([1], [2], m=4))


class TestOrder:
    def test_partial_order_exhaustive(self):
        sets = all_signed_sets(3)
        for x in sets:
            assert leq(x, x)
        for x in sets:
            for y in sets:
                if leq(x, y) and leq(y, x):
                    assert x == y
        for x in sets:
            ups = [y for y in sets if leq(x, y)]
            for y in ups:
                for z in sets:
                    if leq(y, z):
                        assert leq(x, z)

    def test_face_leq_top(self):
        x = ss([1], [2], m=3)
        assert face_leq(x, TOP)
        assert not face_leq(TOP, x)
        assert face_leq(TOP, TOP)
