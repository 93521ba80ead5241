"""Command-line front end.

A thin client over the HTTP service: requests are sent to the in-process
FastAPI app by default (no server needed), or to a remote instance via
--url.  Exit codes: 0 verdict computed, 1 input error, 2 internal failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import httpx


def _space_arg(text: str) -> dict:
    """Parse 'z:3', 'l1:2', 'linf:2', 'l2:2', 'l1l2:2:7/2' or inline JSON."""
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    parts = text.split(":")
    kind = parts[0]
    if kind in ("z", "l1", "linf", "l2"):
        if len(parts) != 2:
            raise ValueError(f"space {text!r}: expected {kind}:<n>")
        return {"kind": kind, "n": int(parts[1])}
    if kind == "l1l2":
        if len(parts) != 3:
            raise ValueError(f"space {text!r}: expected l1l2:<n>:<lambda>")
        return {"kind": "l1l2", "n": int(parts[1]), "lambda": parts[2]}
    raise ValueError(f"unknown space kind {kind!r}")


def _load_points(args) -> list[list[str]]:
    if getattr(args, "points_json", None):
        data = json.loads(args.points_json)
    elif getattr(args, "points", None):
        with open(args.points) as f:
            data = json.load(f)
        if isinstance(data, dict) and "points" in data:
            data = data["points"]
    else:
        raise ValueError("need --points FILE or --points-json JSON")
    return [[str(c) for c in p] for p in data]


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    for key, val in report.items():
        if key in ("timing", "version", "command"):
            continue
        print(f"{key}: {json.dumps(val) if isinstance(val, (dict, list)) else val}")


def _post(args, path: str, payload: dict) -> dict:
    if args.url:
        resp = httpx.post(args.url.rstrip("/") + path, json=payload, timeout=600.0)
    else:
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            from fastapi.testclient import TestClient

            from .service import app

            with TestClient(app) as client:
                resp = client.post(path, json=payload)
    if resp.status_code == 422:
        detail = resp.json().get("detail", resp.text)
        raise SystemExit(_fail(f"input error: {detail}", 1))
    if resp.status_code != 200:
        raise SystemExit(_fail(f"service error {resp.status_code}: {resp.text}", 2))
    return resp.json()


def _fail(message: str, code: int) -> int:
    print(json.dumps({"error": message}), file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--url", default=argparse.SUPPRESS, help="remote service URL (default: in-process)"
    )
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument(
        "--jobs", type=int, default=argparse.SUPPRESS, help="worker-count hint"
    )
    common.add_argument(
        "--validate",
        action="store_true",
        default=argparse.SUPPRESS,
        help="run the subcommand's cross-check and include it in the report",
    )
    parser = argparse.ArgumentParser(
        prog="steiner-local",
        description="Local Steiner-minimal-tree checks in finite-dimensional normed spaces",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def star(name, helptext):
        p = sub.add_parser(name, help=helptext, parents=[common])
        p.add_argument("--space", required=True)
        p.add_argument("--points", help="JSON file with point list")
        p.add_argument("--points-json", help="inline JSON point list")
        return p

    star("verify-node", "is the star an SMT with its center a terminal?")
    p = star("verify-steiner", "is the star an SMT with its center a Steiner point?")
    p = sub.add_parser(
        "z-criterion",
        help="combinatorial quadruple criterion (zonotope norm)",
        parents=[common],
    )
    p.add_argument("--points", help="JSON file with point list")
    p.add_argument("--points-json", help="inline JSON point list")
    p.add_argument("--faces", help="semicolon-separated signed sets, e.g. '+{1}-{2};+{2}-{3}'")
    p.add_argument("--n", type=int, help="dimension (required with --faces)")

    for name, helptext in (
        ("max-degree", "maximum terminal degree in the zonotope norm"),
        ("extremal-family", "the maximum-degree family of signed sets"),
        ("antichain", "middle-level equilateral vertex family"),
    ):
        p = sub.add_parser(name, help=helptext, parents=[common])
        p.add_argument("--n", type=int, required=True)
        if name == "extremal-family":
            p.add_argument("--variant", choices=("low", "high"), default="low")

    p = sub.add_parser("count-parens", help="count tree shapes", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p = sub.add_parser("enumerate-parens", help="list tree shapes by canonical key", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--unrooted", action="store_true")

    p = sub.add_parser("oracle", help="brute-force SMT length for given terminals", parents=[common])
    p.add_argument("--space", required=True)
    p.add_argument("--points", help="JSON file with terminal list")
    p.add_argument("--points-json", help="inline JSON terminal list")
    p.add_argument("--restarts", type=int, default=5)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser(
        "l1l2-check",
        help="interval procedure for the l1+lambda*l2 star",
        parents=[common],
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)

    p = sub.add_parser("conditions", help="forbidden-pattern checks on a set family", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sets", required=True, help="JSON array of integer arrays")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    # the common flags carry SUPPRESS defaults so they can appear before or
    # after the subcommand without the subparser resetting them
    for name, default in (("url", None), ("format", "json"), ("jobs", 1), ("validate", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        cmd = args.subcommand
        if cmd in ("verify-node", "verify-steiner"):
            payload = {
                "space": _space_arg(args.space),
                "points": _load_points(args),
                "validate": args.validate,
            }
            report = _post(args, f"/{cmd}", payload)
        elif cmd == "z-criterion":
            if args.faces:
                if args.n is None:
                    return _fail("--faces requires --n", 1)
                payload = {"faces": args.faces.split(";"), "n": args.n}
            else:
                payload = {"points": _load_points(args)}
            payload["validate"] = args.validate
            report = _post(args, "/z-criterion", payload)
        elif cmd == "max-degree":
            report = _post(args, "/max-degree", {"n": args.n, "validate": args.validate})
        elif cmd == "extremal-family":
            report = _post(args, "/extremal-family", {"n": args.n, "variant": args.variant, "validate": args.validate})
        elif cmd == "antichain":
            report = _post(args, "/antichain", {"n": args.n, "validate": args.validate})
        elif cmd == "count-parens":
            report = _post(args, "/count-parens", {"k": args.k, "validate": args.validate})
        elif cmd == "enumerate-parens":
            report = _post(
                args,
                "/enumerate-parens",
                {"k": args.k, "rooted": not args.unrooted, "validate": args.validate},
            )
        elif cmd == "oracle":
            payload = {
                "space": _space_arg(args.space),
                "terminals": _load_points(args),
                "restarts": args.restarts,
                "seed": args.seed,
                "validate": args.validate,
            }
            report = _post(args, "/oracle", payload)
        elif cmd == "l1l2-check":
            report = _post(args, "/l1l2-check", {"n": args.n, "lambda": args.lam, "validate": args.validate})
        elif cmd == "conditions":
            report = _post(
                args,
                "/conditions",
                {"m": args.m, "sets": json.loads(args.sets), "validate": args.validate},
            )
        else:  # pragma: no cover
            return _fail(f"unknown subcommand {cmd!r}", 1)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    except (ValueError, OSError, json.JSONDecodeError) as e:
        return _fail(f"input error: {e}", 1)
    except Exception as e:  # noqa: BLE001 - last-resort internal failure
        return _fail(f"internal error: {e}", 2)
    _emit(report, args.format)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
