"""Signed subsets of a ground set and the boxdot operation on the face lattice.

A signed set splits part of {1..m} into a positive and a negative side.
Signed sets index the faces of the dual ball of the zonotope norm; the
augmented lattice adds a top element TOP for the improper face.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union


def _mask(indices: Iterable[int], m: int) -> int:
    out = 0
    for i in indices:
        if not 1 <= i <= m:
            raise ValueError(f"index {i} out of range 1..{m}")
        out |= 1 << (i - 1)
    return out


def _bits(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class SignedSet:
    """Disjoint positive/negative index subsets of {1..m}, stored as bit masks."""

    pos_mask: int
    neg_mask: int
    m: int

    def __post_init__(self):
        if self.m < 1 or self.m > 64:
            raise ValueError("ground-set size must be in 1..64")
        full = (1 << self.m) - 1
        if self.pos_mask & ~full or self.neg_mask & ~full:
            raise ValueError("mask outside ground set")
        if self.pos_mask & self.neg_mask:
            raise ValueError("positive and negative parts must be disjoint")

    @classmethod
    def make(cls, pos: Iterable[int], neg: Iterable[int], m: int) -> "SignedSet":
        return cls(_mask(pos, m), _mask(neg, m), m)

    @property
    def pos(self) -> frozenset[int]:
        return _bits(self.pos_mask)

    @property
    def neg(self) -> frozenset[int]:
        return _bits(self.neg_mask)

    @property
    def zero(self) -> frozenset[int]:
        full = (1 << self.m) - 1
        return _bits(full & ~(self.pos_mask | self.neg_mask))

    @property
    def support_mask(self) -> int:
        return self.pos_mask | self.neg_mask

    def is_empty(self) -> bool:
        return self.pos_mask == 0 and self.neg_mask == 0

    def has_both_parts(self) -> bool:
        return self.pos_mask != 0 and self.neg_mask != 0

    def opposite(self) -> "SignedSet":
        return SignedSet(self.neg_mask, self.pos_mask, self.m)

    def sign(self, i: int) -> int:
        if not 1 <= i <= self.m:
            raise ValueError(f"index {i} out of range 1..{self.m}")
        bit = 1 << (i - 1)
        if self.pos_mask & bit:
            return 1
        if self.neg_mask & bit:
            return -1
        return 0

    def __str__(self) -> str:
        def fmt(mask):
            return "{" + ",".join(str(i) for i in sorted(_bits(mask))) + "}"

        return f"+{fmt(self.pos_mask)}-{fmt(self.neg_mask)}"

    @classmethod
    def parse(cls, text: str, m: int) -> "SignedSet":
        mobj = re.fullmatch(r"\+\{([\d,\s]*)\}-\{([\d,\s]*)\}", text.strip())
        if not mobj:
            raise ValueError(f"cannot parse signed set: {text!r}")

        def ints(s):
            return [int(t) for t in s.split(",") if t.strip()]

        return cls.make(ints(mobj.group(1)), ints(mobj.group(2)), m)


class _Top:
    """The adjoined top of the augmented face lattice (the improper face)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOP"


TOP = _Top()

ExtendedFace = Union[_Top, SignedSet]


def _check_same_ground(x: SignedSet, y: SignedSet) -> None:
    if x.m != y.m:
        raise ValueError(f"mismatched ground-set sizes {x.m} != {y.m}")


def conformal(x: SignedSet, y: SignedSet) -> bool:
    """True iff the two signed sets never clash in sign on any index."""
    _check_same_ground(x, y)
    return not (x.pos_mask & y.neg_mask) and not (x.neg_mask & y.pos_mask)


def leq(x: SignedSet, y: SignedSet) -> bool:
    """Partial order: x <= y iff x+ is a subset of y+ and x- of y-."""
    _check_same_ground(x, y)
    return (x.pos_mask & ~y.pos_mask) == 0 and (x.neg_mask & ~y.neg_mask) == 0


def face_leq(x: ExtendedFace, y: ExtendedFace) -> bool:
    """Lattice order on the augmented lattice: TOP dominates every face."""
    if y is TOP:
        return True
    if x is TOP:
        return False
    return leq(x, y)


def boxdot(x: ExtendedFace, y: ExtendedFace) -> ExtendedFace:
    """Commutative, non-associative product tracking reduced Minkowski sums of faces.

    Four cases by which of x+ & y-, x- & y+ are empty; TOP is the identity.
    """
    if x is TOP:
        return y
    if y is TOP:
        return x
    _check_same_ground(x, y)
    up = bool(x.pos_mask & y.neg_mask)
    down = bool(x.neg_mask & y.pos_mask)
    if up and down:
        return TOP
    if not up and down:
        return SignedSet(x.pos_mask, y.neg_mask, x.m)
    if up and not down:
        return SignedSet(y.pos_mask, x.neg_mask, x.m)
    return SignedSet(0, 0, x.m)


def all_signed_sets(m: int, proper: bool = False) -> list[SignedSet]:
    """Every signed set over {1..m}; proper=True keeps only those with both parts nonempty."""
    out = []
    full = (1 << m) - 1
    sub = 0
    while True:
        pos = sub
        rest = full & ~pos
        nsub = 0
        while True:
            x = SignedSet(pos, nsub, m)
            if not proper or x.has_both_parts():
                out.append(x)
            if nsub == rest:
                break
            nsub = (nsub - rest) & rest
        if sub == full:
            break
        sub = (sub - full) & full
    return out
