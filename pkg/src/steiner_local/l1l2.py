"""The l1 + lambda*l2 norm: dual-ball membership, subdifferential faces,
the pigeonhole degree bound, and the coordinatewise interval procedure
showing the 2n-ray star at +-e_i is a Steiner minimal tree.

All interval arithmetic is exact in the quadratic field Q(sqrt(n)), so the
irrational threshold sqrt(n)/(sqrt(n)-1) is decided without tolerance.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Optional, Sequence, Union

from .signed_sets import SignedSet


@total_ordering
@dataclass(frozen=True)
class QuadNum:
    """Exact element a + b*sqrt(d) of a real quadratic field (d >= 1)."""

    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def of(value, d: int) -> "QuadNum":
        if isinstance(value, QuadNum):
            if value.b != 0 and value.d != d:
                raise ValueError(f"cannot coerce sqrt({value.d}) into Q(sqrt({d}))")
            return QuadNum(value.a, value.b, d)
        return QuadNum(Fraction(value), Fraction(0), d)

    @staticmethod
    def sqrt_part(coeff, d: int) -> "QuadNum":
        """coeff * sqrt(d)."""
        return QuadNum(Fraction(0), Fraction(coeff), d)

    def _coerce(self, other) -> "QuadNum":
        return QuadNum.of(other, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadNum(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadNum(
            self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        den = o.a * o.a - o.b * o.b * self.d
        if den == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        conj = QuadNum(o.a, -o.b, self.d)
        num = self * conj
        return QuadNum(num.a / den, num.b / den, self.d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with d*b^2
        lhs, rhs = a * a, b * b * self.d
        if a > 0:  # b < 0
            return 1 if lhs > rhs else -1 if lhs < rhs else 0
        return -1 if lhs > rhs else 1 if lhs < rhs else 0

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except (ValueError, TypeError):
            return NotImplemented
        return (self - o).sign() == 0

    def __lt__(self, other):
        return (self - self._coerce(other)).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"

    __repr__ = __str__


Number = Union[QuadNum, Fraction, int]


@dataclass(frozen=True)
class Interval:
    """Closed interval with exact endpoints; empty=True is the empty set."""

    lo: QuadNum
    hi: QuadNum
    empty: bool = False

    @staticmethod
    def of(lo, hi, d: int) -> "Interval":
        lo, hi = QuadNum.of(lo, d), QuadNum.of(hi, d)
        if lo > hi:
            return Interval(lo, hi, empty=True)
        return Interval(lo, hi)

    @staticmethod
    def point(v, d: int) -> "Interval":
        v = QuadNum.of(v, d)
        return Interval(v, v)

    def __add__(self, other: "Interval") -> "Interval":
        if self.empty or other.empty:
            return Interval(self.lo, self.hi, empty=True)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def clip(self, lo, hi) -> "Interval":
        if self.empty:
            return self
        nlo = max(self.lo, QuadNum.of(lo, self.lo.d))
        nhi = min(self.hi, QuadNum.of(hi, self.lo.d))
        if nlo > nhi:
            return Interval(nlo, nhi, empty=True)
        return Interval(nlo, nhi)

    def contains(self, v) -> bool:
        if self.empty:
            return False
        v = QuadNum.of(v, self.lo.d)
        return self.lo <= v <= self.hi

    def intersects(self, lo, hi) -> bool:
        if self.empty:
            return False
        return self.lo <= QuadNum.of(hi, self.lo.d) and self.hi >= QuadNum.of(lo, self.lo.d)

    def __str__(self):
        if self.empty:
            return "{}"
        return f"[{self.lo}, {self.hi}]"


def _context(n: int, lam) -> tuple[QuadNum, QuadNum]:
    """(lambda, lambda/sqrt(n)) as elements of Q(sqrt(n))."""
    lam_q = QuadNum.of(lam, n)
    root_inv = QuadNum.sqrt_part(Fraction(1, n), n)  # sqrt(n)/n = 1/sqrt(n)
    return lam_q, lam_q * root_inv


def boxsum2(c: Interval, d: Interval, n: int, lam) -> Interval:
    """Interval sum clipped to [-1-lambda/sqrt(n), 1+lambda/sqrt(n)]."""
    _, lam_over_root = _context(n, lam)
    bound = 1 + lam_over_root
    return (c + d).clip(-bound, bound)


def dual_membership(phi: Sequence, n: int, lam) -> bool:
    """Is phi in the dual unit ball (unit cube + lambda * Euclidean ball)?

    Decided by clamping: squared Euclidean distance to the cube vs lambda^2.
    """
    lam_q = QuadNum.of(lam, max(n, 1))
    if lam_q.sign() <= 0:
        raise ValueError("lambda must be positive")
    d = lam_q.d
    dist2 = QuadNum.of(0, d)
    for c in phi:
        c = QuadNum.of(c, d)
        c_abs = c if c.sign() >= 0 else -c
        over = c_abs - 1
        if over.sign() > 0:
            dist2 = dist2 + over * over
    return dist2 <= lam_q * lam_q


@dataclass(frozen=True)
class CubeFace:
    """An exposed face of the dual ball: a cube face pattern plus a shift of
    Euclidean length lambda in the matching direction.

    shift = lam * x / ||x||_2 is stored exactly as scale * sqrt(radicand),
    with scale a rational vector and radicand = ||x||_2^2.
    """

    sign: SignedSet
    scale: tuple[Fraction, ...]
    radicand: Fraction

    @property
    def shift_float(self) -> tuple[float, ...]:
        r = float(self.radicand) ** 0.5
        return tuple(float(c) * r for c in self.scale)


def l1l2_subdifferential(x: Sequence, lam) -> CubeFace:
    """Subdifferential of the norm at x: cube face of supp(x) shifted by
    lam * x / ||x||_2."""
    x = [Fraction(v) for v in x]
    if all(v == 0 for v in x):
        raise ValueError("subdifferential at the origin is the whole dual ball")
    n = len(x)
    lam = Fraction(lam)
    sign = SignedSet.make(
        [i + 1 for i, v in enumerate(x) if v > 0],
        [i + 1 for i, v in enumerate(x) if v < 0],
        n,
    )
    s = sum(v * v for v in x)
    # lam * x / sqrt(s) = (lam * x / s) * sqrt(s)
    scale = tuple(lam * v / s for v in x)
    return CubeFace(sign, scale, Fraction(s))


def upper_bound_witness(signs: Sequence[SignedSet]) -> Optional[tuple[int, int]]:
    """First pair (1-based) of signed sets sharing an index with equal sign."""
    for x in signs:
        if x.is_empty():
            raise ValueError("sign sets must be nonempty")
    for j in range(len(signs)):
        for i in range(j):
            if (signs[i].pos_mask & signs[j].pos_mask) or (
                signs[i].neg_mask & signs[j].neg_mask
            ):
                return (i + 1, j + 1)
    return None


@dataclass(frozen=True)
class BoundVerdict:
    status: str  # 'not_smt' | 'inconclusive'
    witness: Optional[tuple[int, int]] = None


def node_degree_bound(points: Sequence[Sequence], n: int, lam) -> BoundVerdict:
    """The slab/pigeonhole upper bound: more than 2n rays cannot form a star
    SMT when lambda <= 1.  Says nothing when k <= 2n."""
    lam = Fraction(lam)
    if lam > 1:
        raise ValueError("the slab argument needs lambda <= 1")
    signs = []
    for p in points:
        p = [Fraction(v) for v in p]
        if all(v == 0 for v in p):
            raise ValueError("points must be nonzero")
        signs.append(
            SignedSet.make(
                [i + 1 for i, v in enumerate(p) if v > 0],
                [i + 1 for i, v in enumerate(p) if v < 0],
                n,
            )
        )
    if len(points) <= 2 * n:
        return BoundVerdict("inconclusive")
    witness = upper_bound_witness(signs)
    assert witness is not None  # pigeonhole: 2n signed slots, k > 2n nonempty signs
    return BoundVerdict("not_smt", witness)


# --- the interval procedure ----------------------------------------------
#
# Leaf alphabet for a single coordinate of the operand family
# {+-E_i : i in [n-1]} u {E_n}: 'P' = {1+lambda}, 'M' = {-1-lambda},
# 'I' = [-1,1].  A shape is a leaf label or a sorted pair of shapes; shapes
# collapse the leaf identities, which is sound because the conditions only
# see the projected intervals.

Shape = Union[str, tuple]


def _shape_key(s: Shape) -> str:
    if isinstance(s, str):
        return s
    return f"({_shape_key(s[0])}{_shape_key(s[1])})"


@lru_cache(maxsize=None)
def typed_shapes(np_: int, nm: int, ni: int) -> frozenset:
    """All unordered binary trees over the leaf multiset P^np M^nm I^ni."""
    total = np_ + nm + ni
    if total == 0:
        return frozenset()
    if total == 1:
        leaf = "P" if np_ else "M" if nm else "I"
        return frozenset((leaf,))
    out = set()
    for p1 in range(np_ + 1):
        for m1 in range(nm + 1):
            for i1 in range(ni + 1):
                s1 = p1 + m1 + i1
                if s1 == 0 or s1 == total:
                    continue
                left = typed_shapes(p1, m1, i1)
                right = typed_shapes(np_ - p1, nm - m1, ni - i1)
                for a in left:
                    for b in right:
                        out.add(tuple(sorted((a, b), key=_shape_key)))
    return frozenset(out)


def _leaf_interval(label: str, n: int, lam) -> Interval:
    lam_q, _ = _context(n, lam)
    if label == "P":
        return Interval.point(1 + lam_q, n)
    if label == "M":
        return Interval.point(-(1 + lam_q), n)
    return Interval.of(-1, 1, n)


def eval_shape(shape: Shape, n: int, lam, _cache=None) -> Interval:
    """Evaluate a typed shape bottom-up with the clipped interval sum."""
    if _cache is None:
        _cache = {}
    if shape in _cache:
        return _cache[shape]
    if isinstance(shape, str):
        out = _leaf_interval(shape, n, lam)
    else:
        a = eval_shape(shape[0], n, lam, _cache)
        b = eval_shape(shape[1], n, lam, _cache)
        out = boxsum2(a, b, n, lam)
    _cache[shape] = out
    return out


def eval_grouping(grouping, leaf_intervals: dict, n: int, lam) -> Interval:
    """Evaluate a parenthesization (from `parens`) with given leaf intervals."""
    from .parens import is_leaf, children

    if is_leaf(grouping):
        return leaf_intervals[grouping]
    a, b = children(grouping)
    return boxsum2(
        eval_grouping(a, leaf_intervals, n, lam),
        eval_grouping(b, leaf_intervals, n, lam),
        n,
        lam,
    )


def _shape_has_p(shape: Shape) -> bool:
    if isinstance(shape, str):
        return shape == "P"
    return _shape_has_p(shape[0]) or _shape_has_p(shape[1])


def steiner_star_check(n: int, lam) -> bool:
    """Run the coordinatewise interval procedure for the 2n-ray star at +-e_i.

    True iff for every parenthesization both interval conditions hold:
    the last coordinate sum can reach 1+lambda, and every other coordinate
    meets [-1,1].  Exact; true exactly when lambda <= sqrt(n)/(sqrt(n)-1).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lam_q = QuadNum.of(lam, n)
    if lam_q.sign() <= 0:
        raise ValueError("lambda must be positive")
    if n == 1:
        return True  # single operand, nothing to check

    cache: dict = {}
    one_plus = 1 + lam_q

    # condition at the distinguished coordinate: leaves P I^(2n-2);
    # split at the top with the P side as Sigma_1, the sum must reach 1+lambda
    for shape in typed_shapes(1, 0, 2 * n - 2):
        s1, s2 = shape
        if not _shape_has_p(s1):
            s1, s2 = s2, s1
        a = eval_shape(s1, n, lam, cache)
        b = eval_shape(s2, n, lam, cache)
        if a.empty or b.empty:
            return False
        if not (a.lo + b.lo <= one_plus <= a.hi + b.hi):
            return False

    # every other coordinate: leaves P M I^(2n-3), full clipped evaluation
    # must meet [-1,1]
    for shape in typed_shapes(1, 1, 2 * n - 3):
        val = eval_shape(shape, n, lam, cache)
        if not val.intersects(-1, 1):
            return False
    return True


def steiner_star_check_full(n: int, lam) -> bool:
    """Same decision by brute force over labeled parenthesizations (no shape
    deduplication); cross-check for small n (2n-1 <= 7 leaves)."""
    from .parens import children, enumerate_rooted

    if n == 1:
        return True
    if 2 * n - 1 > 7:
        raise ValueError("full enumeration capped at n <= 4")
    lam_q = QuadNum.of(lam, n)
    one_plus = 1 + lam_q
    k = 2 * n - 1
    labels = list(range(1, k + 1))
    iv_i = Interval.of(-1, 1, n)

    # distinguished coordinate: leaf 1 projects to {1+lambda}, others to [-1,1]
    leaves_a = {1: Interval.point(one_plus, n)}
    for i in range(2, k + 1):
        leaves_a[i] = iv_i
    for tree in enumerate_rooted(labels):
        g1, g2 = children(tree.grouping)
        from .parens import leaves as leaf_set

        if 1 not in leaf_set(g1):
            g1, g2 = g2, g1
        a = eval_grouping(g1, leaves_a, n, lam)
        b = eval_grouping(g2, leaves_a, n, lam)
        if a.empty or b.empty:
            return False
        if not (a.lo + b.lo <= one_plus <= a.hi + b.hi):
            return False

    # other coordinates: one {1+lambda}, one {-1-lambda}, rest [-1,1]
    leaves_b = dict(leaves_a)
    leaves_b[2] = Interval.point(-one_plus, n)
    for tree in enumerate_rooted(labels):
        if not eval_grouping(tree.grouping, leaves_b, n, lam).intersects(-1, 1):
            return False
    return True


def lambda_threshold(n: int) -> QuadNum:
    """sqrt(n)/(sqrt(n)-1) = (n + sqrt(n))/(n-1) as an exact field element."""
    if n < 2:
        raise ValueError("threshold is only finite for n >= 2")
    return QuadNum(Fraction(n, n - 1), Fraction(1, n - 1), n)
