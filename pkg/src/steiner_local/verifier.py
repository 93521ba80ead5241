"""Deciding whether a star configuration is a Steiner minimal tree.

Two questions about a star joining a center to terminals p_1..p_k:

  node mode     - is the star shorter than or equal to every Steiner tree,
                  with the center itself a terminal (degree question)?
  steiner mode  - same with the center an added point of degree k that may
                  be moved or split (Steiner point question)?

Both reduce to exact feasibility checks over all abstract tree shapes on
the subdifferentials of the ray directions.  In the zonotope-norm space the
node question also has a purely combinatorial answer (the quadruple
criterion), which we use as the primary route and can cross-check by LP.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .geometry import SpaceDescriptor, dual_ball, norm_exact, paren_feasible, subdifferential
from .l1l2 import QuadNum
from .parens import ParenTree, count_rooted, enumerate_rooted, enumerate_unrooted
from .zcalculus import CriterionVerdict, face_of, star_criterion


@dataclass(frozen=True)
class StarInstance:
    """A star: a center plus the difference vectors to the other endpoints."""

    space: SpaceDescriptor
    center: tuple
    rays: tuple

    @staticmethod
    def make(space: SpaceDescriptor, rays, center=None) -> "StarInstance":
        dim = space.ambient_dim
        if center is None:
            center = tuple(Fraction(0) for _ in range(dim))
        else:
            center = tuple(Fraction(v) for v in center)
        return StarInstance(space, center, tuple(tuple(Fraction(v) for v in r) for r in rays))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a star check.

    witness is None for a positive verdict; otherwise it identifies the
    obstruction: a tree key for the LP route, a 1-based index quadruple for
    the combinatorial route, or a 1-based index subset for subset reduction.
    """

    is_smt: bool
    mode: str  # 'node' | 'steiner'
    method: str  # 'criterion' | 'lp' | 'lp-subsets' | 'differentiable'
    witness: Optional[object] = None
    stats: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.is_smt


def _check_rays(space: SpaceDescriptor, rays: Sequence[Sequence]) -> list[tuple]:
    dim = space.ambient_dim
    out = []
    for r in rays:
        r = tuple(Fraction(v) for v in r)
        if len(r) != dim:
            raise ValueError(f"expected {dim} coordinates, got {len(r)}")
        if all(v == 0 for v in r):
            raise ValueError("rays must be nonzero")
        out.append(r)
    if len(out) < 2:
        raise ValueError("need at least two rays")
    return out


def _route_guard(space: SpaceDescriptor) -> None:
    if space.kind == "l2":
        raise ValueError("Euclidean space is smooth; use verify_differentiable")
    if space.kind == "l1l2":
        raise ValueError(
            "the l1+lambda*l2 norm is not polyhedral; use the l1l2 module "
            "(node_degree_bound / steiner_star_check)"
        )
    if not space.polyhedral:
        raise ValueError(f"no exact route for space kind {space.kind!r}")


def _sorted_trees(trees) -> list[ParenTree]:
    return sorted(trees, key=lambda t: t.canonical_key)


def _lp_over_trees(
    space: SpaceDescriptor,
    rays: Sequence[tuple],
    mode: str,
) -> Verdict:
    """Check every abstract tree shape; a tree with no feasible functional
    assignment witnesses that some Steiner topology beats the star."""
    ball = dual_ball(space)
    subdiffs = {i + 1: subdifferential(space, r) for i, r in enumerate(rays)}
    labels = list(range(1, len(rays) + 1))
    trees = _sorted_trees(
        enumerate_rooted(labels) if mode == "node" else enumerate_unrooted(labels)
    )
    lps = 0
    for tree in trees:
        lps += 1
        if not paren_feasible(tree, subdiffs, ball, mode):
            return Verdict(
                False, mode, "lp", witness=tree.canonical_key,
                stats={"trees_checked": lps, "lps_solved": lps},
            )
    return Verdict(True, mode, "lp", stats={"trees_checked": lps, "lps_solved": lps})


def _lp_subsets(
    space: SpaceDescriptor,
    rays: Sequence[tuple],
    mode: str,
) -> Verdict:
    """Node-mode check via the size-at-most-4 reduction (zonotope norm only):
    the star fails iff some subset of at most four rays already fails."""
    ball = dual_ball(space)
    subdiffs = {i + 1: subdifferential(space, r) for i, r in enumerate(rays)}
    k = len(rays)
    trees_checked = 0
    for size in (2, 3, 4):
        if size > k:
            break
        for subset in combinations(range(1, k + 1), size):
            subs = {i + 1: subdiffs[lab] for i, lab in enumerate(subset)}
            for tree in _sorted_trees(enumerate_rooted(range(1, size + 1))):
                trees_checked += 1
                if not paren_feasible(tree, subs, ball, mode):
                    return Verdict(
                        False, mode, "lp-subsets", witness=subset,
                        stats={"trees_checked": trees_checked,
                               "lps_solved": trees_checked},
                    )
    return Verdict(
        True, mode, "lp-subsets",
        stats={"trees_checked": trees_checked, "lps_solved": trees_checked},
    )


def _unpack(space_or_inst, rays):
    if isinstance(space_or_inst, StarInstance):
        return space_or_inst.space, space_or_inst.rays
    return space_or_inst, rays


def verify_node_star(
    space: SpaceDescriptor | StarInstance,
    rays: Optional[Sequence[Sequence]] = None,
    method: str = "auto",
) -> Verdict:
    """Node mode.  method: 'auto' (criterion in the zonotope norm, LP
    otherwise), 'criterion', 'lp'.  In the zonotope norm the LP route uses
    the subset reduction when full tree enumeration would be too large."""
    space, rays = _unpack(space, rays)
    _route_guard(space)
    rays = _check_rays(space, rays)
    if method == "auto":
        method = "criterion" if space.kind == "z" else "lp"
    if method == "criterion":
        if space.kind != "z":
            raise ValueError("the quadruple criterion applies only to the zonotope norm")
        verdict = star_criterion([face_of(r) for r in rays])
        return Verdict(
            verdict.is_smt, "node", "criterion", witness=verdict.witness,
            stats={"rays": len(rays)},
        )
    if method != "lp":
        raise ValueError(f"unknown method {method!r}")
    if space.kind == "z" and len(rays) > 5:
        return _lp_subsets(space, rays, "node")
    if count_rooted(len(rays)) > 200_000:
        raise ValueError(
            f"{len(rays)} rays: too many tree shapes for full LP enumeration"
        )
    return _lp_over_trees(space, rays, "node")


def verify_steiner_star(
    space: SpaceDescriptor | StarInstance,
    rays: Optional[Sequence[Sequence]] = None,
) -> Verdict:
    """Steiner mode: the origin must be representable inside the clipped
    operand sum of every unrooted tree shape."""
    space, rays = _unpack(space, rays)
    _route_guard(space)
    rays = _check_rays(space, rays)
    if count_rooted(len(rays) - 1) > 200_000:
        raise ValueError(
            f"{len(rays)} rays: too many tree shapes for full LP enumeration"
        )
    return _lp_over_trees(space, rays, "steiner")


def verify_differentiable(
    space: SpaceDescriptor, functionals: Sequence[Sequence], mode: str = "node"
) -> Verdict:
    """Smooth-norm route (Euclidean): each ray has a unique norming
    functional, the clipped sums degenerate to plain sums, and the star is
    an SMT iff every subset sum of the functionals has dual norm at most 1
    (steiner mode additionally needs the full sum to vanish).

    functionals must be unit dual vectors; for l2 the dual norm is l2 and
    everything is decided on exact squared norms.
    """
    if space.kind != "l2":
        raise ValueError("verify_differentiable supports only the Euclidean space")
    if mode not in ("node", "steiner"):
        raise ValueError(f"unknown mode {mode!r}")
    # coordinates may be rational or live in one quadratic field Q(sqrt(d)),
    # so the 120-degree and tetrahedron configurations are handled exactly
    d = 1
    for f in functionals:
        for v in f:
            if isinstance(v, QuadNum) and v.b != 0:
                if d not in (1, v.d):
                    raise ValueError("functional coordinates mix quadratic fields")
                d = v.d
    zero, one = QuadNum.of(0, d), QuadNum.of(1, d)
    funcs = []
    for f in functionals:
        f = tuple(QuadNum.of(v, d) for v in f)
        if len(f) != space.n:
            raise ValueError(f"expected {space.n} coordinates, got {len(f)}")
        if sum((v * v for v in f), zero) != one:
            raise ValueError("functionals must have (exact) Euclidean norm 1")
        funcs.append(f)
    k = len(funcs)
    if k < 2:
        raise ValueError("need at least two functionals")
    if k > 20:
        raise ValueError("subset enumeration capped at 20 functionals")
    n = space.n
    if mode == "steiner":
        total = [sum((f[j] for f in funcs), zero) for j in range(n)]
        if any(v != zero for v in total):
            return Verdict(
                False, mode, "differentiable", witness="nonzero-sum",
                stats={"subsets_checked": 0},
            )
    checked = 0
    indices = list(range(k))
    for size in range(2, k + (0 if mode == "steiner" else 1)):
        for subset in combinations(indices, size):
            checked += 1
            s = [zero] * n
            for i in subset:
                for j in range(n):
                    s[j] = s[j] + funcs[i][j]
            if sum((v * v for v in s), zero) > one:
                return Verdict(
                    False, mode, "differentiable",
                    witness=tuple(i + 1 for i in subset),
                    stats={"subsets_checked": checked},
                )
    return Verdict(True, mode, "differentiable", stats={"subsets_checked": checked})


def moore_check(space: SpaceDescriptor, points: Sequence[Sequence]) -> bool:
    """Equilateral test: all points at norm 1 and pairwise distance exactly 2.

    Such a family always admits the origin as a degree-k Steiner point of an
    SMT, so it witnesses achievable Steiner-point degree.  Points not on the
    unit sphere are a caller error, not a negative answer.
    """
    pts = _check_rays(space, points)
    if space.kind == "l2":
        for p in pts:
            if sum(c * c for c in p) != 1:
                raise ValueError(f"point {p} is not on the unit sphere")
        return all(
            sum((x - y) ** 2 for x, y in zip(a, b)) == 4
            for a, b in combinations(pts, 2)
        )
    for p in pts:
        if norm_exact(space, p) != 1:
            raise ValueError(f"point {p} is not on the unit sphere")
    for a, b in combinations(pts, 2):
        d = tuple(x - y for x, y in zip(a, b))
        if norm_exact(space, d) != 2:
            return False
    return True
