"""The zonotope-norm space: norm, faces, the combinatorial star criterion,
maximum-degree formula, and the extremal / antichain constructions.

Points live in the hyperplane of zero coordinate sum in n+1 coordinates;
the norm is half the spread (max minus min coordinate).  All arithmetic is
exact rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor, ceil
from typing import Optional, Sequence

from .signed_sets import SignedSet

Coords = tuple[Fraction, ...]


def as_coords(values) -> Coords:
    return tuple(Fraction(v) for v in values)


def parse_coords(text: str) -> Coords:
    return as_coords(t.strip() for t in text.split(","))


def format_coords(x: Coords) -> str:
    return ",".join(str(c) for c in x)


def _check_zero_sum(x: Coords) -> None:
    if sum(x) != 0:
        raise ValueError(f"coordinates must sum to zero, got sum {sum(x)}")


def znorm(x) -> Fraction:
    """Half of (max coordinate - min coordinate); zero only at the origin."""
    x = as_coords(x)
    _check_zero_sum(x)
    return Fraction(max(x) - min(x), 2)


def face_of(x) -> SignedSet:
    """Signed set of the face whose relative interior contains x/||x||.

    Positive part = argmax coordinates, negative part = argmin coordinates.
    Invariant under positive scaling.
    """
    x = as_coords(x)
    _check_zero_sum(x)
    if all(c == 0 for c in x):
        raise ValueError("zero vector has no face")
    hi, lo = max(x), min(x)
    pos = [i + 1 for i, c in enumerate(x) if c == hi]
    neg = [i + 1 for i, c in enumerate(x) if c == lo]
    return SignedSet.make(pos, neg, len(x))


def face_vertices(x: SignedSet) -> list[Coords]:
    """Vertices of the dual-ball face for signed set x: (e_i - e_j)/2, i in x+, j in x-."""
    if not x.has_both_parts():
        raise ValueError("face vertices need a signed set with both parts nonempty")
    half = Fraction(1, 2)
    out = []
    for i in sorted(x.pos):
        for j in sorted(x.neg):
            v = [Fraction(0)] * x.m
            v[i - 1] = half
            v[j - 1] = -half
            out.append(tuple(v))
    return out


def zvertex(x: SignedSet) -> Coords:
    """The vertex of the unit ball indexed by a signed set with empty zero set."""
    if x.zero:
        raise ValueError("vertices correspond to signed sets with empty zero set")
    if not x.has_both_parts():
        raise ValueError("need both parts nonempty")
    shift = Fraction(len(x.pos) - len(x.neg), x.m)
    return tuple(Fraction(x.sign(i)) - shift for i in range(1, x.m + 1))


@dataclass(frozen=True)
class CriterionVerdict:
    is_smt: bool
    witness: Optional[tuple[int, int, int, int]] = None  # 1-based indices a,b,c,d

    def __bool__(self) -> bool:
        return self.is_smt


def star_criterion(family: Sequence[SignedSet]) -> CriterionVerdict:
    """Decide whether the star to rays with these face signed sets is an SMT.

    The star fails exactly when indices a,b,c,d with {a,b} and {c,d}
    disjoint (a=b, c=d allowed) make (X_a+ u X_c+) n (X_b- u X_d-) empty.
    Returns the lexicographically least witnessing quadruple.
    """
    fam = list(family)
    for x in fam:
        if not x.has_both_parts():
            raise ValueError("family members must have both parts nonempty")
        if fam and x.m != fam[0].m:
            raise ValueError("mismatched ground-set sizes in family")
    k = len(fam)
    # fast existence check: a witnessing quadruple needs the four pairwise
    # conditions P_a&N_b = P_a&N_d = P_c&N_b = P_c&N_d = 0, i.e. a complete
    # 2x2 pattern in the compatibility relation E[i][j] = (P_i & N_j == 0)
    pos = [x.pos_mask for x in fam]
    neg = [x.neg_mask for x in fam]
    compat = [
        sum(1 << j for j in range(k) if pos[i] & neg[j] == 0) for i in range(k)
    ]

    def pair_ok(a: int, c: int) -> bool:
        # need b, d in the common compatibility set with b != d, b != c, d != a
        t = compat[a] & compat[c]
        if t.bit_count() >= 3:
            return True
        cols = [j for j in range(k) if t >> j & 1]
        return any(
            b != d and b != c and d != a for b in cols for d in cols
        )

    exists = any(
        pair_ok(a, c) for a in range(k) for c in range(k) if a != c
    )
    if not exists:
        return CriterionVerdict(True)
    for a in range(k):
        for b in range(k):
            if pos[a] & neg[b]:
                continue
            for c in range(k):
                if c in (a, b) or pos[c] & neg[b]:
                    continue
                for d in range(k):
                    if d in (a, b):
                        continue
                    if (pos[a] | pos[c]) & (neg[b] | neg[d]) == 0:
                        return CriterionVerdict(False, (a + 1, b + 1, c + 1, d + 1))
    raise AssertionError("existence check and witness search disagree")


def max_degree(n: int) -> int:
    """Largest degree of a given point in an SMT: binom(n+2, floor((n+2)/2))."""
    if n < 2:
        raise ValueError("n must be >= 2")
    return comb(n + 2, (n + 2) // 2)


def _level_family(m: int, sizes) -> list[SignedSet]:
    full = (1 << m) - 1
    out = []
    for size in sorted(sizes):
        masks = sorted(s for s in range(1, full) if s.bit_count() == size)
        for s in masks:
            out.append(SignedSet(s, full & ~s, m))
    return out


def extremal_family(n: int, variant: str = "low") -> list[SignedSet]:
    """The maximum-degree family: all X with empty zero set and |X+| in two
    consecutive middle levels of {1..n+1}."""
    if n < 2:
        raise ValueError("n must be >= 2")
    m = n + 1
    if variant == "low":
        levels = {floor(m / 2), floor(m / 2) + 1}
    elif variant == "high":
        levels = {ceil(m / 2) - 1, ceil(m / 2)}
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return _level_family(m, levels)


def vertex_distance(xp: frozenset[int], yp: frozenset[int], m: int) -> int:
    """Norm distance between the two vertices indexed by positive parts xp, yp:
    1 when one properly contains the other, 2 when incomparable."""
    xp, yp = frozenset(xp), frozenset(yp)
    full = frozenset(range(1, m + 1))
    for s in (xp, yp):
        if not s or s == full or not s <= full:
            raise ValueError("positive parts must be proper nonempty subsets")
    if xp == yp:
        raise ValueError("positive parts must be distinct")
    if xp < yp or yp < xp:
        return 1
    return 2


def antichain_equilateral(n: int) -> list[Coords]:
    """Vertices from the middle level: pairwise distance exactly 2, norm 1."""
    if n < 2:
        raise ValueError("n must be >= 2")
    m = n + 1
    size = m // 2
    return [zvertex(x) for x in _level_family(m, {size})]
