"""Extremal set-family machinery behind the degree bounds.

The degree question in the zonotope-norm space reduces to families of
subsets of [m] avoiding small patterns (3-chains, butterflies).  This
module checks those conditions and verifies the sharp bounds by exhaustive
search at desk scale (m <= 5), with the binomial formulas for larger m.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from random import Random
from typing import Optional, Sequence

from .signed_sets import SignedSet
from .zcalculus import star_criterion


@dataclass(frozen=True)
class SetFamily:
    """A sequence of proper nonempty subsets of [m], as bitmasks."""

    members: tuple[int, ...]
    m: int

    @staticmethod
    def of(sets: Sequence, m: int) -> "SetFamily":
        full = (1 << m) - 1
        masks = []
        for s in sets:
            if isinstance(s, int):
                mask = s
            else:
                mask = 0
                for i in s:
                    if not 1 <= i <= m:
                        raise ValueError(f"element {i} out of range [1,{m}]")
                    mask |= 1 << (i - 1)
            if mask == 0 or mask == full:
                raise ValueError("members must be proper nonempty subsets")
            if mask & ~full:
                raise ValueError("member out of ground-set range")
            masks.append(mask)
        return SetFamily(tuple(masks), m)

    def as_sets(self) -> list[frozenset[int]]:
        return [
            frozenset(i + 1 for i in range(self.m) if mask >> i & 1)
            for mask in self.members
        ]


@dataclass(frozen=True)
class ConditionReport:
    distinct: bool
    no3chain: bool
    nobutterfly: bool
    star: bool


def _subset(a: int, b: int) -> bool:
    return a & ~b == 0


def check_conditions(fam: SetFamily) -> ConditionReport:
    """Check the four forbidden-pattern conditions on a set family.

    star: no a,b,c,d with {a,b} and {c,d} disjoint (repeats within a pair
    allowed) and Y_a u Y_c contained in Y_b n Y_d.  This always equals
    distinct and no3chain and nobutterfly together.
    """
    ys = fam.members
    k = len(ys)
    distinct = len(set(ys)) == k
    no3chain = True
    for a, b, c in combinations(range(k), 3):
        for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            if _subset(ys[x], ys[y]) and _subset(ys[y], ys[z]):
                no3chain = False
                break
        if not no3chain:
            break
    nobutterfly = True
    for quad in combinations(range(k), 4):
        for a, b in combinations(quad, 2):
            c, d = (i for i in quad if i not in (a, b))
            if _subset(ys[a] | ys[b], ys[c] & ys[d]) or _subset(
                ys[c] | ys[d], ys[a] & ys[b]
            ):
                nobutterfly = False
                break
        if not nobutterfly:
            break
    star = True
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if c in (a, b):
                    continue
                for d in range(k):
                    if d in (a, b):
                        continue
                    if _subset(ys[a] | ys[c], ys[b] & ys[d]):
                        star = False
                        break
                if not star:
                    break
            if not star:
                break
        if not star:
            break
    return ConditionReport(distinct, no3chain, nobutterfly, star)


def sandwich_choices(x: SignedSet) -> list[int]:
    """All proper nonempty Y with X+ <= Y <= [m] \\ X-."""
    full = (1 << x.m) - 1
    base = x.pos_mask
    free = full & ~x.pos_mask & ~x.neg_mask
    out = []
    sub = free
    while True:
        y = base | sub
        if y != 0 and y != full:
            out.append(y)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return out


def signed_to_families(family: Sequence[SignedSet], samples: int = 0,
                       seed: int = 0) -> bool:
    """Does EVERY sandwich choice of set family satisfy the star condition?

    Equivalent to the quadruple criterion on the signed sets, which is how
    it is decided.  With samples > 0, that equivalence is additionally
    spot-checked on random sandwich choices.
    """
    verdict = star_criterion(family).is_smt if family else True
    if samples > 0 and family:
        rng = Random(seed)
        choices = [sandwich_choices(x) for x in family]
        if any(not c for c in choices):
            raise ValueError("some signed set admits no proper sandwich choice")
        m = family[0].m
        found_bad = False
        for _ in range(samples):
            fam = SetFamily(tuple(rng.choice(c) for c in choices), m)
            if not check_conditions(fam).star:
                found_bad = True
                break
        if verdict and found_bad:
            raise AssertionError("criterion says SMT but a sandwich violates star")
    return verdict


# --- exhaustive maxima ----------------------------------------------------


def _chain_cover(items: list[int]) -> list[list[int]]:
    """Partition items (bitmasks, subset-ordered) into chains, Dilworth-style:
    min chain cover via maximum bipartite matching on the strict order."""
    n = len(items)
    order = sorted(range(n), key=lambda i: (bin(items[i]).count("1"), items[i]))
    succ: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j and items[order[i]] != items[order[j]] and _subset(
                items[order[i]], items[order[j]]
            ):
                succ[i].append(j)
    match_to: list[Optional[int]] = [None] * n  # right vertex -> left vertex

    def augment(u: int, seen: list[bool]) -> bool:
        for v in succ[u]:
            if not seen[v]:
                seen[v] = True
                if match_to[v] is None or augment(match_to[v], seen):
                    match_to[v] = u
                    return True
        return False

    for u in range(n):
        augment(u, [False] * n)
    next_of: dict[int, int] = {}
    has_pred = set()
    for v, u in enumerate(match_to):
        if u is not None:
            next_of[u] = v
            has_pred.add(v)
    chains = []
    for i in range(n):
        if i not in has_pred:
            chain = [order[i]]
            j = i
            while j in next_of:
                j = next_of[j]
                chain.append(order[j])
            chains.append(chain)
    return chains


def _max_family(items: list[int], cap: int, check_add) -> int:
    """Branch and bound for the largest subfamily passing check_add, with at
    most cap members usable from any one chain of the cover."""
    chains = _chain_cover(items)
    chain_of = {}
    for ci, chain in enumerate(chains):
        for idx in chain:
            chain_of[idx] = ci
    order = [idx for chain in chains for idx in chain]
    best = 0

    def recurse(pos: int, chosen: list[int], used: list[int]) -> None:
        nonlocal best
        if len(chosen) > best:
            best = len(chosen)
        remaining: dict[int, int] = {}
        for p in range(pos, len(order)):
            ci = chain_of[order[p]]
            remaining[ci] = remaining.get(ci, 0) + 1
        bound = len(chosen) + sum(
            min(cap - used[ci], r) for ci, r in remaining.items() if cap > used[ci]
        )
        if bound <= best or pos == len(order):
            return
        idx = order[pos]
        ci = chain_of[idx]
        if used[ci] < cap and check_add(chosen, idx):
            chosen.append(idx)
            used[ci] += 1
            recurse(pos + 1, chosen, used)
            chosen.pop()
            used[ci] -= 1
        recurse(pos + 1, chosen, used)

    recurse(0, [], [0] * len(chains))
    return best


def sperner_max(m: int, exhaustive: Optional[bool] = None) -> int:
    """Largest antichain in the power set of [m].

    Exhaustive search for m <= 5 (the default there), binomial formula
    binom(m, floor(m/2)) beyond.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    if exhaustive is None:
        exhaustive = m <= 5
    if not exhaustive:
        return comb(m, m // 2)
    if m > 5:
        raise ValueError("exhaustive search supported only for m <= 5")
    items = list(range(1 << m))

    def check_add(chosen: list[int], idx: int) -> bool:
        s = items[idx]
        return not any(
            _subset(items[i], s) or _subset(s, items[i]) for i in chosen
        )

    return _max_family(items, 1, check_add)


def two_level_max(m: int, exhaustive: Optional[bool] = None) -> int:
    """Largest family of distinct proper nonempty subsets of [m] with no
    3-chain; equals binom(m+1, floor((m+1)/2))."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if exhaustive is None:
        exhaustive = m <= 5
    if not exhaustive:
        return comb(m + 1, (m + 1) // 2)
    if m > 5:
        raise ValueError("exhaustive search supported only for m <= 5")
    full = (1 << m) - 1
    items = [s for s in range(1, full)]

    # no 3-chain among distinct sets = no member with both a proper subset
    # and a proper superset in the family
    def check_add_full(chosen: list[int], idx: int) -> bool:
        s = items[idx]
        seen = [items[i] for i in chosen]
        if s in seen:
            return False
        fam = seen + [s]
        for mid in fam:
            if any(t != mid and _subset(t, mid) for t in fam) and any(
                t != mid and _subset(mid, t) for t in fam
            ):
                return False
        return True

    return _max_family(items, 2, check_add_full)


def equality_families_distinct_nobutterfly(m: int, size: int) -> list[tuple[int, ...]]:
    """All families of `size` distinct proper nonempty subsets of [m]
    satisfying the no-butterfly condition (brute force; meant for m = 4,
    where an equality family beyond the two-middle-levels one exists)."""
    full = (1 << m) - 1
    eligible = list(range(1, full))
    out = []
    for combo in combinations(eligible, size):
        fam = SetFamily(combo, m)
        rep = check_conditions(fam)
        if rep.distinct and rep.nobutterfly:
            out.append(combo)
    return out
