"""HTTP service exposing the library: one endpoint per user-facing check.

All rational numbers cross the wire as strings so exactness survives
serialization; floats appear only in oracle outputs.
"""
from __future__ import annotations

import time
from fractions import Fraction
from importlib import metadata
from typing import Any, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import extremal, l1l2, oracle, parens, verifier, zcalculus
from .geometry import (
    SpaceDescriptor,
    l1l2space,
    l1space,
    l2space,
    linfspace,
    polytope_space,
    zspace,
)
from .signed_sets import SignedSet

try:
    VERSION = metadata.version("steiner-local")
except metadata.PackageNotFoundError:  # pragma: no cover
    VERSION = "unknown"


class SpaceModel(BaseModel):
    kind: str
    n: Optional[int] = None
    lam: Optional[str] = Field(default=None, alias="lambda")
    vertices: Optional[list[list[str]]] = None

    model_config = {"populate_by_name": True}

    def to_descriptor(self) -> SpaceDescriptor:
        try:
            if self.kind == "z":
                return zspace(self.n)
            if self.kind == "l1":
                return l1space(self.n)
            if self.kind == "linf":
                return linfspace(self.n)
            if self.kind == "l2":
                return l2space(self.n)
            if self.kind == "l1l2":
                if self.lam is None:
                    raise ValueError("l1l2 space needs lambda")
                return l1l2space(self.n, Fraction(self.lam))
            if self.kind == "polytope":
                if not self.vertices:
                    raise ValueError("polytope space needs vertices")
                return polytope_space(
                    [tuple(Fraction(c) for c in v) for v in self.vertices]
                )
        except (ValueError, ZeroDivisionError, TypeError) as e:
            raise HTTPException(status_code=422, detail=str(e))
        raise HTTPException(status_code=422, detail=f"unknown space kind {self.kind!r}")


def _points(raw: list[list[str]]) -> list[tuple[Fraction, ...]]:
    try:
        return [tuple(Fraction(c) for c in p) for p in raw]
    except (ValueError, ZeroDivisionError) as e:
        raise HTTPException(status_code=422, detail=f"bad point coordinate: {e}")


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(v) for v in obj)
    return obj


def _report(command: str, result: dict, started: float, space=None) -> dict:
    out = {"command": command, "version": VERSION}
    if space is not None:
        out["space"] = space.model_dump(by_alias=True, exclude_none=True)
    out.update(_jsonable(result))
    out["timing"] = {"total_s": time.monotonic() - started}
    return out


def _verdict_dict(v: verifier.Verdict) -> dict:
    return {
        "is_smt": v.is_smt,
        "mode": v.mode,
        "method": v.method,
        "witness": _jsonable(v.witness),
        "stats": _jsonable(v.stats),
    }


def _face_representative(x: SignedSet) -> tuple[Fraction, ...]:
    """A zero-sum point whose face is exactly x (centered sign vector)."""
    raw = [Fraction(x.sign(i)) for i in range(1, x.m + 1)]
    mean = sum(raw) / x.m
    return tuple(v - mean for v in raw)


class ValidatedRequest(BaseModel):
    validate_flag: bool = Field(default=False, alias="validate")
    model_config = {"populate_by_name": True}


class StarRequest(ValidatedRequest):
    space: SpaceModel
    points: list[list[str]]
    method: str = "auto"


class OracleRequest(ValidatedRequest):
    space: SpaceModel
    terminals: list[list[str]]
    restarts: int = 5
    seed: Optional[int] = None


class CriterionRequest(ValidatedRequest):
    points: Optional[list[list[str]]] = None
    faces: Optional[list[str]] = None
    n: Optional[int] = None


class L1L2Request(ValidatedRequest):
    n: int
    lam: str = Field(alias="lambda")


class ConditionsRequest(ValidatedRequest):
    m: int
    sets: list[list[int]]


class SimpleN(ValidatedRequest):
    n: int
    variant: str = "low"


class ParensRequest(ValidatedRequest):
    k: int
    rooted: bool = True


app = FastAPI(title="steiner-local", version=VERSION)


def _wrap(fn):
    try:
        return fn()
    except HTTPException:
        raise
    except (ValueError, ZeroDivisionError, KeyError, TypeError) as e:
        raise HTTPException(status_code=422, detail=str(e))


def _oracle_compare(space: SpaceDescriptor, pts, verdict: verifier.Verdict) -> dict:
    dim = space.ambient_dim
    origin = tuple(Fraction(0) for _ in range(dim))
    terminals = [origin] + [tuple(p) for p in pts]
    length, best = oracle.smt_length(terminals, space)
    length = float(length)
    star = float(oracle.star_length(space, origin, pts))
    agrees = bool(length >= star - 1e-6 * max(star, 1.0)) == verdict.is_smt
    return {
        "oracle_length": length,
        "star_length": star,
        "best_topology": best.topology.canonical_key,
        "agrees": agrees,
    }


@app.post("/verify-node")
def verify_node(req: StarRequest) -> dict:
    t0 = time.monotonic()

    def run():
        space = req.space.to_descriptor()
        pts = _points(req.points)
        v = verifier.verify_node_star(space, pts, method=req.method)
        out = _verdict_dict(v)
        if req.validate_flag:
            out["oracle"] = _oracle_compare(space, pts, v)
        return out

    return _report("verify-node", _wrap(run), t0, req.space)


@app.post("/verify-steiner")
def verify_steiner(req: StarRequest) -> dict:
    t0 = time.monotonic()

    def run():
        space = req.space.to_descriptor()
        pts = _points(req.points)
        v = verifier.verify_steiner_star(space, pts)
        out = _verdict_dict(v)
        if req.validate_flag:
            out["oracle"] = _oracle_compare(space, pts, v)
        return out

    return _report("verify-steiner", _wrap(run), t0, req.space)


@app.post("/z-criterion")
def z_criterion(req: CriterionRequest) -> dict:
    t0 = time.monotonic()

    def run():
        if req.faces is not None:
            fam = [SignedSet.parse(f, req.n) for f in req.faces]
        elif req.points is not None:
            fam = [zcalculus.face_of(p) for p in _points(req.points)]
        else:
            raise ValueError("need points or faces")
        verdict = zcalculus.star_criterion(fam)
        out = {
            "is_smt": verdict.is_smt,
            "witness": _jsonable(verdict.witness),
            "faces": [str(x) for x in fam],
        }
        if req.validate_flag:
            if len(fam) > 10:
                out["validation"] = {"skipped": "LP cross-check capped at 10 rays"}
            else:
                m = fam[0].m
                reps = [_face_representative(x) for x in fam]
                lp = verifier.verify_node_star(zspace(m - 1), reps, method="lp")
                out["validation"] = {
                    "lp_is_smt": lp.is_smt,
                    "agrees": lp.is_smt == verdict.is_smt,
                }
        return out

    return _report("z-criterion", _wrap(run), t0)


@app.post("/max-degree")
def max_degree(req: SimpleN) -> dict:
    t0 = time.monotonic()

    def run():
        value = zcalculus.max_degree(req.n)
        out = {"n": req.n, "max_degree": value}
        if req.validate_flag:
            fam = zcalculus.extremal_family(req.n)
            out["validation"] = {
                "family_size": len(fam),
                "criterion_accepts": zcalculus.star_criterion(fam).is_smt,
                "agrees": len(fam) == value,
            }
        return out

    return _report("max-degree", _wrap(run), t0)


@app.post("/extremal-family")
def extremal_family(req: SimpleN) -> dict:
    t0 = time.monotonic()

    def run():
        fam = zcalculus.extremal_family(req.n, variant=req.variant)
        out = {
            "n": req.n,
            "variant": req.variant,
            "size": len(fam),
            "family": [str(x) for x in fam],
            "vertices": [[str(c) for c in zcalculus.zvertex(x)] for x in fam],
        }
        if req.validate_flag:
            out["validation"] = {
                "criterion_accepts": zcalculus.star_criterion(fam).is_smt,
                "size_is_max_degree": len(fam) == zcalculus.max_degree(req.n),
            }
        return out

    return _report("extremal-family", _wrap(run), t0)


@app.post("/antichain")
def antichain(req: SimpleN) -> dict:
    t0 = time.monotonic()

    def run():
        pts = zcalculus.antichain_equilateral(req.n)
        out = {
            "n": req.n,
            "size": len(pts),
            "points": [[str(c) for c in p] for p in pts],
            "moore": verifier.moore_check(zspace(req.n), pts),
        }
        if req.validate_flag:
            if req.n == 3:
                v = verifier.verify_steiner_star(zspace(3), pts)
                out["validation"] = {"steiner_lp_is_smt": v.is_smt, "agrees": v.is_smt}
            else:
                out["validation"] = {"skipped": "steiner LP cross-check only at n=3"}
        return out

    return _report("antichain", _wrap(run), t0)


@app.post("/count-parens")
def count_parens(req: ParensRequest) -> dict:
    t0 = time.monotonic()

    def run():
        out = {
            "k": req.k,
            "rooted": parens.count_rooted(req.k),
            "unrooted": parens.count_unrooted(req.k) if req.k >= 2 else None,
        }
        if req.validate_flag:
            if req.k <= 7:
                labels = range(1, req.k + 1)
                enum = sum(1 for _ in parens.enumerate_rooted(labels))
                out["validation"] = {"enumerated": enum, "agrees": enum == out["rooted"]}
            else:
                out["validation"] = {"skipped": "enumeration capped at k = 7"}
        return out

    return _report("count-parens", _wrap(run), t0)


@app.post("/enumerate-parens")
def enumerate_parens(req: ParensRequest) -> dict:
    t0 = time.monotonic()

    def run():
        if req.k > 7:
            raise ValueError("enumeration capped at k = 7")
        labels = range(1, req.k + 1)
        trees = (
            parens.enumerate_rooted(labels) if req.rooted else parens.enumerate_unrooted(labels)
        )
        keys = sorted(t.canonical_key for t in trees)
        out = {"k": req.k, "rooted": req.rooted, "count": len(keys), "trees": keys}
        if req.validate_flag:
            expected = (
                parens.count_rooted(req.k) if req.rooted else parens.count_unrooted(req.k)
            )
            out["validation"] = {
                "formula": expected,
                "unique": len(set(keys)) == len(keys),
                "agrees": len(keys) == expected,
            }
        return out

    return _report("enumerate-parens", _wrap(run), t0)


@app.post("/oracle")
def oracle_endpoint(req: OracleRequest) -> dict:
    t0 = time.monotonic()

    def run():
        space = req.space.to_descriptor()
        terms = _points(req.terminals)
        length, best = oracle.smt_length(terms, space, restarts=req.restarts, seed=req.seed)
        out = {
            "k": len(terms),
            "length": float(length),
            "best_topology": best.topology.canonical_key,
            "converged": best.converged,
            "merged_edges": [[str(a), str(b)] for a, b in best.merged_pairs],
        }
        if req.validate_flag:
            seed2 = (req.seed or 0) + 7919
            length2, _ = oracle.smt_length(terms, space, restarts=req.restarts, seed=seed2)
            out["validation"] = {
                "rerun_length": float(length2),
                "agrees": bool(abs(length - length2) <= 1e-8 * max(1.0, abs(length))),
            }
        return out

    return _report("oracle", _wrap(run), t0, req.space)


@app.post("/l1l2-check")
def l1l2_check(req: L1L2Request) -> dict:
    t0 = time.monotonic()

    def run():
        lam = Fraction(req.lam)
        ok = l1l2.steiner_star_check(req.n, lam)
        out = {"n": req.n, "lambda": str(lam), "steiner_star_2n": ok}
        if req.n >= 2:
            out["threshold"] = str(l1l2.lambda_threshold(req.n))
        if req.validate_flag:
            if req.n <= 3:
                full = l1l2.steiner_star_check_full(req.n, lam)
                out["validation"] = {"full_enumeration": full, "agrees": full == ok}
            else:
                out["validation"] = {"skipped": "full enumeration capped at n = 3"}
        return out

    return _report("l1l2-check", _wrap(run), t0)


@app.post("/conditions")
def conditions(req: ConditionsRequest) -> dict:
    t0 = time.monotonic()

    def run():
        fam = extremal.SetFamily.of(req.sets, req.m)
        rep = extremal.check_conditions(fam)
        out = {
            "m": req.m,
            "distinct": rep.distinct,
            "no3chain": rep.no3chain,
            "nobutterfly": rep.nobutterfly,
            "star": rep.star,
        }
        if req.validate_flag:
            conj = rep.distinct and rep.no3chain and rep.nobutterfly
            out["validation"] = {"conjunction": conj, "agrees": conj == rep.star}
        return out

    return _report("conditions", _wrap(run), t0)
