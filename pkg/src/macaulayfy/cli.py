"""``mfy`` command line: analyze, check-seq, blowup and macaulayfy on session files."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
import time
from pathlib import Path
from typing import List, Optional

from . import __version__
from .algebra import InputError
from .blowup import blowup_charts, certify_chart
from .groebner import NEG_INF, ResourceError, set_disk_cache
from .homology import (
    ModulePresentation,
    PreconditionError,
    equidimensionality_check,
    ext_summary,
    is_cohen_macaulay,
    low_cohomology_product,
)
from .pipeline import PipelineConfig, _targets, macaulayfy_pipeline
from .sequences import full_report
from .session import SessionError, SessionFile, parse_polynomial, parse_session

SCHEMA_VERSION = 1
EXIT_TRUE, EXIT_FALSE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
COMMANDS = ("analyze", "check-seq", "blowup", "macaulayfy")


class DiskStore:
    """GB cache directory: one JSON file per content hash."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, key: str):
        path = self._path(key)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        return [{tuple(t): c for t, c in vec} for vec in data]

    def put(self, key: str, basis) -> None:
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = [[[list(t), c] for t, c in sorted(v.items())] for v in basis]
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)


def _dim(d):
    return None if d is None or d == NEG_INF else int(d)


def _require_homogeneous(session: SessionFile, mods: List[ModulePresentation]):
    J = session.quotient_ideal()
    if J is not None and not J.is_homogeneous():
        name = session.quotient_name()
        raise SessionError(f"ideal {name} is not homogeneous", session.lines.get(name, 1), 1)
    for M in mods:
        if not M.is_homogeneous():
            raise SessionError(f"module {M.name} is not homogeneous", session.lines.get(M.name, 1), 1)


def _targets_for(session: SessionFile) -> List[ModulePresentation]:
    J = session.quotient_ideal()
    mods = [session.module(n) for n in session.modules]
    return _targets(session.ring, J, mods)


def _analyze_one(M: ModulePresentation) -> dict:
    if M.is_zero():
        return {"name": M.name, "zero": True}
    s = ext_summary(M)
    cm = is_cohen_macaulay(M)
    equi = equidimensionality_check(M)
    out = {
        "name": M.name,
        "zero": False,
        "graded": M.is_homogeneous(),
        "betti": [s.resolution.ranks[i] for i in range(len(s.resolution.ranks))],
        "ext": s.table(),
        "depth": s.depth,
        "dim": _dim(s.dim),
        "codim": s.codim,
        "cm": cm.cohen_macaulay,
        "equidimensional": equi,
    }
    noncm = low_cohomology_product(M)
    out["non_cm_locus"] = [str(g) for g in noncm.reduced().generators]
    ring = M.ring
    out["non_cm_locus_supported_at_m"] = (not noncm.is_unit()) and all(noncm.radical_contains(x) for x in ring.gens())
    # for ungraded input depth is the minimum of the local depths at closed points
    return out


def cmd_analyze(session: SessionFile, args) -> tuple:
    targets = _targets_for(session)
    results = [_analyze_one(M) for M in targets]
    verdict = all(r.get("cm", False) for r in results if not r["zero"])
    return {"targets": results}, verdict, None


def _parse_seq(session: SessionFile, text: str):
    out = []
    col = 1
    for piece in text.split(";"):
        if piece.strip():
            out.append(parse_polynomial(piece, session.ring, 1, col))
        col += len(piece) + 1
    return out


def cmd_check_seq(session: SessionFile, args) -> tuple:
    if not args.seq:
        raise InputError("check-seq needs --seq \"r1; r2; ...\"")
    seq = _parse_seq(session, args.seq)
    targets = _targets_for(session)
    _require_homogeneous(session, targets)
    reports = []
    for M in targets:
        rep = full_report(M, seq)
        d = rep.to_dict()
        d["name"] = M.name
        reports.append(d)
    verdict = all(r["cm_secant"] for r in reports)
    return {"sequence": [str(r) for r in seq], "reports": reports}, verdict, None


def cmd_blowup(session: SessionFile, args) -> tuple:
    if not args.center:
        raise InputError("blowup needs --center <ideal-name>")
    center = session.ideal(args.center)
    targets = _targets_for(session)
    charts = blowup_charts(session.quotient_ideal(), center)
    certs = [certify_chart(ch, targets) for ch in charts]
    verdict = all(c.certified for c in certs)
    return {"center": [str(g) for g in center.generators], "charts": [c.to_dict() for c in certs]}, verdict, None


def cmd_macaulayfy(session: SessionFile, args) -> tuple:
    targets = _targets_for(session)
    mode = args.mode or session.settings.get("mode", "kawasaki")
    if mode == "local":
        _require_homogeneous(session, targets)
    cfg = PipelineConfig(
        mode=mode,
        max_degree=args.max_degree if args.max_degree is not None else int(session.settings.get("max-degree", 4)),
        max_depth=args.max_depth if args.max_depth is not None else int(session.settings.get("max-depth", 2)),
        seed=_seed(args, session),
    )
    cert = macaulayfy_pipeline(session.quotient_ideal(), targets[1:], mode, cfg, ring=session.ring)
    failure = None
    kinds = {f["kind"] for f in cert.failures}
    if kinds & {"search", "resource", "depth"}:
        failure = "resource"
    return {"certificate": cert.to_dict()}, cert.verdict, failure


def _seed(args, session: SessionFile) -> int:
    if args.seed is not None:
        return args.seed
    return int(session.settings.get("seed", 0))


HANDLERS = {"analyze": cmd_analyze, "check-seq": cmd_check_seq, "blowup": cmd_blowup, "macaulayfy": cmd_macaulayfy}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mfy", description="Cohen-Macaulay certificates for graded modules over GF(p).")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("session", help="session file ('-' for standard input)")
    p.add_argument("--seq", help="elements separated by ';' (check-seq)")
    p.add_argument("--center", help="name of the ideal to blow up (blowup)")
    p.add_argument("--mode", choices=("kawasaki", "local"))
    p.add_argument("--max-degree", type=int, dest="max_degree")
    p.add_argument("--max-depth", type=int, dest="max_depth")
    p.add_argument("--seed", type=int)
    p.add_argument("--cache", help="directory for the on-disk GB cache")
    p.add_argument("--out", help="write the report here instead of standard output")
    return p


def run(argv: Optional[List[str]] = None, stdin=None) -> tuple:
    """Execute one command; returns (report dict, exit code)."""
    return execute(build_parser().parse_args(argv), stdin)


def execute(args: argparse.Namespace, stdin=None) -> tuple:
    raw = b""
    report = {
        "tool": "macaulayfy",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "input_sha256": None,
        "seed": args.seed if args.seed is not None else 0,
        "flags": {k: getattr(args, k) for k in ("seq", "center", "mode", "max_degree", "max_depth", "seed")},
        "status": "ok",
        "verdict": None,
        "exit_code": None,
        "results": None,
        "errors": [],
        "timing": {},
    }
    start = time.perf_counter()
    if args.cache:
        set_disk_cache(DiskStore(args.cache))
    try:
        if args.session == "-":
            raw = (stdin or sys.stdin.buffer).read()
        else:
            raw = Path(args.session).read_bytes()
        report["input_sha256"] = hashlib.sha256(raw).hexdigest()
        t = time.perf_counter()
        session = parse_session(raw)
        report["timing"]["parse"] = time.perf_counter() - t
        report["seed"] = _seed(args, session)
        t = time.perf_counter()
        results, verdict, failure = HANDLERS[args.command](session, args)
        report["timing"][args.command] = time.perf_counter() - t
        report["results"] = results
        report["verdict"] = verdict
        if failure:
            report["status"] = "failure"
            code = EXIT_RESOURCE
        else:
            code = EXIT_TRUE if verdict else EXIT_FALSE
    except SessionError as exc:
        report["status"] = "input_error"
        report["errors"].append({"kind": "input", **exc.to_dict()})
        code = EXIT_INPUT
    except PreconditionError as exc:
        report["status"] = "input_error"
        report["errors"].append({"kind": "precondition", "gate": exc.gate, "message": str(exc)})
        code = EXIT_INPUT
    except (InputError, OSError) as exc:
        report["status"] = "input_error"
        report["errors"].append({"kind": "input", "message": str(exc)})
        code = EXIT_INPUT
    except (ResourceError, RecursionError, MemoryError) as exc:
        report["status"] = "resource_error"
        report["errors"].append({"kind": "resource", "message": str(exc) or type(exc).__name__})
        code = EXIT_RESOURCE
    finally:
        if args.cache:
            set_disk_cache(None)
    report["exit_code"] = code
    report["timing"]["total"] = time.perf_counter() - start
    return report, code


def schema() -> dict:
    """The versioned JSON schema of the report document."""
    return json.loads((Path(__file__).parent / "schema" / f"report-v{SCHEMA_VERSION}.json").read_text())


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    report, code = execute(args)
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
