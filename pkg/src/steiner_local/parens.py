"""Rooted and unrooted abstract Steiner trees (parenthesization classes).

A parenthesization of a family indexed by I, up to commutativity, is the
same thing as a tree with leaves {0} u I and |I|-1 unlabeled internal
vertices of degree 3 (the root 0 marks the outermost sum).  Dropping the
root gives the unrooted variant with |I| leaves.  Trees are represented as
nested *groupings*: a leaf label, or a frozenset of two disjoint groupings.
The frozenset representation makes commutative normalization automatic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union

Grouping = Union[int, frozenset]


def pair(a: Grouping, b: Grouping) -> Grouping:
    return frozenset((a, b))


def is_leaf(g: Grouping) -> bool:
    return isinstance(g, int)


def children(g: Grouping) -> tuple[Grouping, Grouping]:
    a, b = tuple(g)
    return a, b


def leaves(g: Grouping) -> frozenset[int]:
    if is_leaf(g):
        return frozenset((g,))
    a, b = children(g)
    return leaves(a) | leaves(b)


def grouping_key(g: Grouping) -> str:
    """Deterministic text form, e.g. '((1 2) 3)'; equal iff the trees are equal."""
    if is_leaf(g):
        return str(g)
    ka, kb = sorted(grouping_key(c) for c in g)
    return f"({ka} {kb})"


def parse_grouping(text: str) -> Grouping:
    """Inverse of grouping_key (whitespace-separated nested parentheses)."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Grouping:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            a = parse()
            b = parse()
            if tokens[pos] != ")":
                raise ValueError(f"expected ')' in {text!r}")
            pos += 1
            return pair(a, b)
        if tok == ")":
            raise ValueError(f"unexpected ')' in {text!r}")
        return int(tok)

    g = parse()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return g


def subtree_leafsets(g: Grouping) -> list[frozenset[int]]:
    """Leaf sets under every internal (pair) node of g, in deterministic order."""
    out: list[frozenset[int]] = []

    def walk(node: Grouping) -> frozenset[int]:
        if is_leaf(node):
            return frozenset((node,))
        a, b = sorted(children(node), key=grouping_key)
        s = walk(a) | walk(b)
        out.append(s)
        return s

    walk(g)
    return out


@dataclass(frozen=True)
class ParenTree:
    """One equivalence class of parenthesizations over a leaf label set.

    rooted=True: grouping covers all of `leaf_set` (root 0 implicit).
    rooted=False: the tree is anchored at leaf max(leaf_set); grouping
    covers the remaining leaves as seen from the anchor.
    """

    leaf_set: frozenset[int]
    grouping: Grouping
    rooted: bool
    canonical_key: str = field(init=False)

    def __post_init__(self):
        if self.rooted:
            if leaves(self.grouping) != self.leaf_set:
                raise ValueError("grouping does not cover the leaf set")
            key = grouping_key(self.grouping)
        else:
            anchor = max(self.leaf_set)
            if leaves(self.grouping) != self.leaf_set - {anchor}:
                raise ValueError("grouping must cover leaf set minus the anchor")
            key = f"[{anchor}]{grouping_key(self.grouping)}"
        object.__setattr__(self, "canonical_key", key)

    @property
    def anchor(self) -> int:
        if self.rooted:
            raise ValueError("rooted trees have no anchor leaf")
        return max(self.leaf_set)

    def internal_leafsets(self) -> list[frozenset[int]]:
        """Leaf subsets whose functional sums are ball-constrained.

        Rooted: every pair node including the whole set (the root edge).
        Unrooted: pair nodes except the top one (whose edge is the anchor's
        own leaf edge, already constrained through its operand set).
        """
        sets = subtree_leafsets(self.grouping)
        if self.rooted:
            return sets
        if sets:
            sets = sets[:-1]  # top pair node = everything but the anchor
        return sets

    def edges(self) -> list[tuple[object, object]]:
        """Adjacency as (vertex, vertex) pairs; internal vertices are 's<i>' strings.

        Rooted trees include the root leaf 0.
        """
        out: list[tuple[object, object]] = []
        counter = [0]

        def walk(node: Grouping) -> object:
            if is_leaf(node):
                return node
            a, b = sorted(children(node), key=grouping_key)
            va, vb = walk(a), walk(b)
            v = f"s{counter[0]}"
            counter[0] += 1
            out.append((v, va))
            out.append((v, vb))
            return v

        top = walk(self.grouping)
        out.append((0 if self.rooted else self.anchor, top))
        return out


def _insertions(g: Grouping, x: int) -> Iterator[Grouping]:
    """All groupings obtained by subdividing one edge of g and attaching leaf x."""
    yield pair(g, x)
    if not is_leaf(g):
        a, b = children(g)
        for ga in _insertions(a, x):
            yield pair(ga, b)
        for gb in _insertions(b, x):
            yield pair(a, gb)


def enumerate_groupings(labels: list[int]) -> Iterator[Grouping]:
    """All groupings on the labels, by leaf-insertion; exactly prod(2i-1) of them."""
    if not labels:
        raise ValueError("need at least one label")
    labels = sorted(labels)

    def grow(g: Grouping, rest: list[int]) -> Iterator[Grouping]:
        if not rest:
            yield g
            return
        x, tail = rest[0], rest[1:]
        for g2 in sorted(_insertions(g, x), key=grouping_key):
            yield from grow(g2, tail)

    yield from grow(labels[0], labels[1:])


def enumerate_rooted(labels) -> Iterator[ParenTree]:
    leaf_set = frozenset(labels)
    if not leaf_set:
        raise ValueError("need at least one leaf")
    for g in enumerate_groupings(sorted(leaf_set)):
        yield ParenTree(leaf_set, g, rooted=True)


def enumerate_unrooted(labels) -> Iterator[ParenTree]:
    leaf_set = frozenset(labels)
    if len(leaf_set) < 2:
        raise ValueError("need at least two leaves")
    anchor = max(leaf_set)
    for g in enumerate_groupings(sorted(leaf_set - {anchor})):
        yield ParenTree(leaf_set, g, rooted=False)


def contract_root(tree: ParenTree) -> ParenTree:
    """Unrooted tree obtained by contracting the root edge of a rooted tree."""
    if not tree.rooted:
        raise ValueError("tree is already unrooted")
    if len(tree.leaf_set) < 2:
        raise ValueError("need at least two leaves to contract the root")
    anchor = max(tree.leaf_set)

    def hang(g: Grouping, rest: Grouping) -> Grouping:
        # Re-express the tree as seen from the anchor leaf inside g,
        # with `rest` hanging off the far side of g's top node.
        if is_leaf(g):
            assert g == anchor
            return rest
        a, b = children(g)
        if anchor in leaves(a):
            return hang(a, pair(b, rest))
        return hang(b, pair(a, rest))

    a, b = children(tree.grouping)
    g = hang(a, b) if anchor in leaves(a) else hang(b, a)
    return ParenTree(tree.leaf_set, g, rooted=False)


@lru_cache(maxsize=None)
def count_rooted(k: int) -> int:
    """Number of rooted abstract Steiner trees on k leaves: 1*3*...*(2k-3)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    out = 1
    for i in range(1, k):
        out *= 2 * i - 1
    return out


def count_unrooted(k: int) -> int:
    if k < 2:
        raise ValueError("k must be >= 2")
    return count_rooted(k - 1)


def catalan(k: int) -> int:
    out = 1
    for i in range(k):
        out = out * 2 * (2 * i + 1) // (i + 2)
    return out
