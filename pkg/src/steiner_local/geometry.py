"""Exact convex machinery for polyhedral norms: dual balls, subdifferential
polytopes, and LP feasibility of reduced-Minkowski-sum parenthesizations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import zcalculus
from .exactlp import solve_lp
from .parens import ParenTree
from .signed_sets import SignedSet

Vector = tuple[Fraction, ...]


def vec(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class SpaceDescriptor:
    """Which norm we are working in.

    kind: 'z' | 'l1' | 'linf' | 'l2' | 'l1l2' | 'polytope'.
    For 'z' the ambient coordinates number n+1 (zero-sum hyperplane);
    for everything else they number n.  lam is the l1l2 mixing weight.
    """

    kind: str
    n: int
    lam: object = None
    ball_vertices: tuple[Vector, ...] = ()

    def __post_init__(self):
        if self.kind not in ("z", "l1", "linf", "l2", "l1l2", "polytope"):
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.kind == "l1l2" and self.lam is None:
            raise ValueError("l1l2 space needs a lambda")
        if self.kind == "polytope" and not self.ball_vertices:
            raise ValueError("polytope space needs unit-ball vertices")

    @property
    def ambient_dim(self) -> int:
        return self.n + 1 if self.kind == "z" else self.n

    @property
    def polyhedral(self) -> bool:
        return self.kind in ("z", "l1", "linf", "polytope")


def zspace(n: int) -> SpaceDescriptor:
    return SpaceDescriptor("z", n)


def l1space(n: int) -> SpaceDescriptor:
    return SpaceDescriptor("l1", n)


def linfspace(n: int) -> SpaceDescriptor:
    return SpaceDescriptor("linf", n)


def l2space(n: int) -> SpaceDescriptor:
    return SpaceDescriptor("l2", n)


def l1l2space(n: int, lam) -> SpaceDescriptor:
    return SpaceDescriptor("l1l2", n, lam=lam)


def polytope_space(vertices) -> SpaceDescriptor:
    verts = tuple(vec(v) for v in vertices)
    vset = set(verts)
    if any(tuple(-c for c in v) not in vset for v in verts):
        raise ValueError("unit ball must be centrally symmetric")
    return SpaceDescriptor("polytope", len(verts[0]), ball_vertices=verts)


@dataclass(frozen=True)
class DualPolytope:
    """Convex polytope in the dual space, by exact rational vertices."""

    vertices: tuple[Vector, ...]

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("a dual polytope needs at least one vertex")

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def centroid(self) -> Vector:
        k = len(self.vertices)
        return tuple(sum(v[j] for v in self.vertices) / k for j in range(self.dim))


@dataclass(frozen=True)
class DualBallHRep:
    """H-representation of the dual unit ball: inequalities c.phi <= b plus
    equalities c.phi = b.  The origin satisfies every inequality strictly."""

    inequalities: tuple[tuple[Vector, Fraction], ...]
    equalities: tuple[tuple[Vector, Fraction], ...] = ()

    def contains(self, phi: Sequence[Fraction]) -> bool:
        return all(dot(c, phi) <= b for c, b in self.inequalities) and all(
            dot(c, phi) == b for c, b in self.equalities
        )


def norm_exact(space: SpaceDescriptor, x) -> Fraction:
    """Exact rational norm for polyhedral spaces."""
    x = vec(x)
    if space.kind == "z":
        return zcalculus.znorm(x)
    if space.kind == "l1":
        return sum(abs(c) for c in x)
    if space.kind == "linf":
        return max(abs(c) for c in x)
    if space.kind == "polytope":
        return _gauge(space.ball_vertices, x)
    raise ValueError(f"no exact rational norm for space kind {space.kind!r}")


def _gauge(vertices: Sequence[Vector], x: Vector) -> Fraction:
    """Minkowski gauge of conv(vertices) at x, by exact LP."""
    d = len(x)
    k = len(vertices)
    a_eq = []
    b_eq = []
    for j in range(d):
        a_eq.append([vertices[v][j] for v in range(k)])
        b_eq.append(x[j])
    objective = [Fraction(1)] * k
    res = solve_lp(k, a_eq=a_eq, b_eq=b_eq, objective=objective)
    if not res.feasible:
        raise ValueError("point is not in the span of the ball vertices")
    return res.objective


def dual_ball(space: SpaceDescriptor) -> DualBallHRep:
    """Exact H-representation of the dual unit ball of a polyhedral space."""
    if not space.polyhedral:
        raise ValueError(f"space kind {space.kind!r} is not polyhedral")
    d = space.ambient_dim
    one = Fraction(1)
    if space.kind in ("z", "linf"):
        # dual of an l-infinity quotient: l1 ball, one inequality per sign pattern
        ineqs = tuple(
            (vec(signs), one) for signs in itertools.product((1, -1), repeat=d)
        )
        eqs = ()
        if space.kind == "z":
            eqs = ((vec([1] * d), Fraction(0)),)
        return DualBallHRep(ineqs, eqs)
    if space.kind == "l1":
        ineqs = []
        for j in range(d):
            for s in (1, -1):
                c = [Fraction(0)] * d
                c[j] = Fraction(s)
                ineqs.append((tuple(c), one))
        return DualBallHRep(tuple(ineqs))
    # polytope: phi(v) <= 1 for each primal vertex v
    return DualBallHRep(tuple((v, one) for v in space.ball_vertices))


def enumerate_hrep_vertices(ball: DualBallHRep) -> list[Vector]:
    """Vertices of a bounded H-polytope by exhaustive basis enumeration.

    Only meant for small systems (the polytope-ball dual in low dimension).
    """
    cons = [(c, b) for c, b in ball.inequalities] + [(c, b) for c, b in ball.equalities]
    d = len(cons[0][0])
    n_eq = len(ball.equalities)
    verts: set[Vector] = set()
    eq_rows = list(range(len(ball.inequalities), len(cons)))
    free = d - n_eq
    for combo in itertools.combinations(range(len(ball.inequalities)), free):
        rows = list(combo) + eq_rows
        sol = _solve_square([cons[i][0] for i in rows], [cons[i][1] for i in rows])
        if sol is not None and ball.contains(sol):
            verts.add(sol)
    return sorted(verts)


def _solve_square(a: list[Vector], b: list[Fraction]) -> Optional[Vector]:
    d = len(a[0])
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    if len(m) != d:
        return None
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(d):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return tuple(m[r][d] for r in range(d))


def subdifferential(space: SpaceDescriptor, x) -> DualPolytope:
    """Vertex representation of the exposed dual-ball face where phi(x) = ||x||."""
    x = vec(x)
    if all(c == 0 for c in x):
        raise ValueError("subdifferential at the origin is the whole dual ball")
    if space.kind == "z":
        return DualPolytope(tuple(zcalculus.face_vertices(zcalculus.face_of(x))))
    if space.kind == "linf":
        nrm = max(abs(c) for c in x)
        verts = []
        for j, c in enumerate(x):
            if abs(c) == nrm:
                v = [Fraction(0)] * space.n
                v[j] = Fraction(1) if c > 0 else Fraction(-1)
                verts.append(tuple(v))
        return DualPolytope(tuple(verts))
    if space.kind == "l1":
        free = [j for j, c in enumerate(x) if c == 0]
        verts = []
        for signs in itertools.product((1, -1), repeat=len(free)):
            v = [Fraction(1) if c > 0 else Fraction(-1) if c < 0 else Fraction(0) for c in x]
            for j, s in zip(free, signs):
                v[j] = Fraction(s)
            verts.append(tuple(v))
        return DualPolytope(tuple(verts))
    if space.kind == "polytope":
        nrm = norm_exact(space, x)
        ball = dual_ball(space)
        verts = [v for v in enumerate_hrep_vertices(ball) if dot(v, x) == nrm]
        return DualPolytope(tuple(verts))
    raise ValueError(f"space kind {space.kind!r} not handled here")


def _feasible_by_vertex_choice(
    leaves: list[int],
    subdiffs: dict[int, DualPolytope],
    ball: DualBallHRep,
    node_sets: list[frozenset[int]],
    zero_sum: bool,
    cap: int = 4096,
) -> Optional[bool]:
    """Try pure vertex selections (and centroids) as exact feasible points.

    Returns True when a witness is found, None when inconclusive.
    """
    d = subdiffs[leaves[0]].dim
    choice_lists = [subdiffs[l].vertices for l in leaves]
    total = 1
    for c in choice_lists:
        total *= len(c)
    candidates: list[tuple[Vector, ...]] = []
    if total <= cap:
        candidates.extend(itertools.product(*choice_lists))
    candidates.append(tuple(subdiffs[l].centroid() for l in leaves))

    for phis in candidates:
        by_leaf = dict(zip(leaves, phis))
        if zero_sum and any(
            sum(p[j] for p in phis) != 0 for j in range(d)
        ):
            continue
        ok = True
        for s in node_sets:
            tot = [sum(by_leaf[l][j] for l in s) for j in range(d)]
            if not ball.contains(tot):
                ok = False
                break
        if ok:
            return True
    return None


def paren_feasible(
    tree: ParenTree,
    subdiffs: dict[int, DualPolytope],
    ball: DualBallHRep,
    mode: str,
) -> bool:
    """Decide by exact LP whether functionals phi_i in the given subdifferential
    polytopes exist whose partial sums along the tree stay inside the ball.

    mode='node' uses a rooted tree and constrains every internal sum including
    the root edge; mode='steiner' additionally forces the total sum to vanish
    (normally over an unrooted tree, but a rooted tree is accepted too, which
    asks whether the origin lies in that particular parenthesization).
    """
    if mode not in ("node", "steiner"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "node" and not tree.rooted:
        raise ValueError("node mode needs a rooted tree")
    leaves = sorted(tree.leaf_set)
    missing = [l for l in leaves if l not in subdiffs]
    if missing:
        raise ValueError(f"missing subdifferential for leaves {missing}")
    d = subdiffs[leaves[0]].dim
    node_sets = tree.internal_leafsets()
    zero_sum = mode == "steiner"

    quick = _feasible_by_vertex_choice(leaves, subdiffs, ball, node_sets, zero_sum)
    if quick is True:
        return True

    # variables: convex weights over each leaf's subdifferential vertices
    offsets: dict[int, int] = {}
    n_vars = 0
    for l in leaves:
        offsets[l] = n_vars
        n_vars += len(subdiffs[l].vertices)

    a_eq: list[list[Fraction]] = []
    b_eq: list[Fraction] = []
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []

    for l in leaves:
        row = [Fraction(0)] * n_vars
        for t in range(len(subdiffs[l].vertices)):
            row[offsets[l] + t] = Fraction(1)
        a_eq.append(row)
        b_eq.append(Fraction(1))

    def sum_row(coeff: Vector, members) -> list[Fraction]:
        row = [Fraction(0)] * n_vars
        for l in members:
            for t, v in enumerate(subdiffs[l].vertices):
                c = dot(coeff, v)
                if c:
                    row[offsets[l] + t] = c
        return row

    for s in node_sets:
        for coeff, bound in ball.inequalities:
            a_ub.append(sum_row(coeff, s))
            b_ub.append(bound)
        for coeff, value in ball.equalities:
            a_eq.append(sum_row(coeff, s))
            b_eq.append(value)

    if zero_sum:
        for j in range(d):
            coeff = tuple(
                Fraction(1) if t == j else Fraction(0) for t in range(d)
            )
            a_eq.append(sum_row(coeff, leaves))
            b_eq.append(Fraction(0))

    res = solve_lp(n_vars, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    return res.feasible
