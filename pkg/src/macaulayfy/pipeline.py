"""The certified Macaulayfication pipeline (kawasaki and local modes)."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .algebra import InputError, PolyRing, Polynomial, monomials_of_degree
from .blowup import BlowupChart, ChartCertificate, blowup_charts, certify_chart, kawasaki_center
from .groebner import Ideal, ResourceError, intersect_all, irrelevant_ideal, unit_ideal
from .homology import (
    ModulePresentation,
    PreconditionError,
    equidimensionality_check,
    is_cohen_macaulay,
    low_cohomology_product,
    non_cm_locus_ideal,
)
from .sequences import SearchConfig, SearchFailure, full_report, find_cm_secant_sequence


@dataclass
class PipelineConfig:
    mode: str = "kawasaki"
    max_degree: int = 4
    max_candidates: int = 200
    max_depth: int = 2
    seed: int = 0
    verify_identities: bool = True


@dataclass
class Stage:
    depth: int
    path: List[int]
    kind: str
    center: List[str]
    sequence: List[str] = field(default_factory=list)
    sequence_report: Optional[dict] = None
    non_cm_ideal: Optional[List[str]] = None
    center_contains_power: Optional[bool] = None
    charts: List[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "path": self.path,
            "kind": self.kind,
            "center": self.center,
            "sequence": self.sequence,
            "sequence_report": self.sequence_report,
            "non_cm_ideal": self.non_cm_ideal,
            "center_contains_power": self.center_contains_power,
            "charts": self.charts,
        }


@dataclass
class MacaulayfyCertificate:
    mode: str
    seed: int
    verdict: bool = False
    already_cm: bool = False
    gates: dict = field(default_factory=dict)
    locus: dict = field(default_factory=dict)
    sequence: List[str] = field(default_factory=list)
    sequence_report: Optional[dict] = None
    center: List[str] = field(default_factory=list)
    tower: List[Stage] = field(default_factory=list)
    failures: List[dict] = field(default_factory=list)
    leaves: List[ChartCertificate] = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "verdict": self.verdict,
            "already_cm": self.already_cm,
            "gates": self.gates,
            "locus": self.locus,
            "sequence": self.sequence,
            "sequence_report": self.sequence_report,
            "center": self.center,
            "tower": [s.to_dict() for s in self.tower],
            "failures": self.failures,
        }


def _strs(I: Ideal) -> List[str]:
    return [str(g) for g in I.generators]


def _targets(ring: PolyRing, J: Ideal | None, modules: Sequence[ModulePresentation]) -> List[ModulePresentation]:
    R = ModulePresentation.ring_module(ring, J, name="R")
    out = [R]
    seen = {R.canonical_key()}
    for M in modules:
        k = M.canonical_key()
        if k not in seen:
            seen.add(k)
            out.append(M)
    return out


def _all_cm(mods: Sequence[ModulePresentation]) -> bool:
    return all(M.is_zero() or bool(is_cohen_macaulay(M)) for M in mods)


def _full_support(M: ModulePresentation, J: Ideal | None) -> bool:
    """|Supp M| = |Spec R|: Ann M lies in the radical of J."""
    ann = M.annihilator()
    if J is None or J.is_zero():
        return ann.is_zero()
    return all(J.radical_contains(g) for g in ann.generators)


def minimal_power_exponent(ideal: Ideal, a: Ideal, limit: int = 50) -> Optional[int]:
    """Smallest N with a^N inside ``ideal`` (a given by monomial-friendly generators)."""
    for N in range(1, limit + 1):
        if all(ideal.contains(g) for g in (a**N).generators):
            return N
    return None


def contains_power(center: Ideal, a: Ideal) -> bool:
    """center contains a^N for some N, via (center : a^infinity) = (1)."""
    return center.saturate(a).is_unit()


def macaulayfy_pipeline(
    J: Ideal | None,
    modules: Sequence[ModulePresentation] = (),
    mode: str = "kawasaki",
    config: PipelineConfig | None = None,
    ring: PolyRing | None = None,
) -> MacaulayfyCertificate:
    """Find centers whose blowups make R = S/J and the given modules CM on every chart."""
    config = config or PipelineConfig(mode=mode)
    mode = mode or config.mode
    if mode not in ("kawasaki", "local"):
        raise InputError(f"unknown mode {mode!r}")
    ring = ring or (J.ring if J is not None else modules[0].ring)
    cert = MacaulayfyCertificate(mode, config.seed)
    t0 = time.perf_counter()
    targets = _targets(ring, J, modules)
    R = targets[0]
    if R.is_zero():
        raise PreconditionError("the ring is zero", gate="nonzero")
    for M in targets:
        if M.is_zero():
            raise PreconditionError(f"module {M.name} is zero", gate="nonzero")
    equi = equidimensionality_check(R)
    cert.gates["equidimensional"] = equi
    cert.gates["full_support"] = [_full_support(M, J) for M in targets]
    if not equi or not all(cert.gates["full_support"]):
        cert.failures.append({"kind": "gate", "stage": 0, "detail": "ring not equidimensional or a module without full support"})
        return cert
    if _all_cm(targets):
        cert.already_cm = True
        cert.verdict = True
        cert.timing["total"] = time.perf_counter() - t0
        return cert
    try:
        if mode == "local":
            _run_local(cert, ring, J, targets, config)
        else:
            _run_kawasaki(cert, ring, J, targets, config, depth=0, path=[])
    except ResourceError as exc:
        cert.failures.append({"kind": "resource", "stage": len(cert.tower), "detail": str(exc)})
    cert.verdict = not cert.failures and bool(cert.leaves) and all(c.certified for c in cert.leaves)
    cert.timing["total"] = time.perf_counter() - t0
    return cert


def _record_charts(stage: Stage, certs: List[ChartCertificate]):
    stage.charts = [c.to_dict() for c in certs]


def _stage_seed(config: PipelineConfig, depth: int, path: Sequence[int]) -> int:
    s = config.seed
    for p in path:
        s = s * 31 + p + 1
    return s + 7919 * depth


def _run_kawasaki(cert, ring, J, targets, config, depth, path):
    graded = all(M.is_homogeneous() for M in targets)
    if graded:
        scfg = SearchConfig(config.max_degree, config.max_candidates, _stage_seed(config, depth, path))
        seq = find_cm_secant_sequence(targets, scfg)
        if isinstance(seq, SearchFailure):
            cert.failures.append({"kind": "search", "stage": depth, "path": list(path), "detail": seq.to_dict()})
            return
        els = seq.elements
        report = full_report(targets[0], els) if config.verify_identities else None
        center = kawasaki_center(els, J)
        stage = Stage(depth, list(path), "kawasaki", _strs(center), [str(r) for r in els])
        if report is not None:
            stage.sequence_report = report.to_dict()
        if depth == 0:
            cert.sequence = stage.sequence
            cert.sequence_report = stage.sequence_report
            cert.center = stage.center
    else:
        # charts of a blowup are not graded: blow up the non-CM locus of the chart itself
        center = intersect_all([low_cohomology_product(M) for M in targets]).reduced()
        stage = Stage(depth, list(path), "non_cm_locus", _strs(center))
    cert.tower.append(stage)
    _blow_and_recurse(cert, stage, ring, J, center, targets, config, depth, path, _run_kawasaki)


def _blow_and_recurse(cert, stage, ring, J, center, targets, config, depth, path, recurse):
    charts = blowup_charts(J, center)
    certs = [certify_chart(ch, targets) for ch in charts]
    _record_charts(stage, certs)
    for ch, cc in zip(charts, certs):
        if cc.certified:
            cert.leaves.append(cc)
            continue
        if depth + 1 > config.max_depth:
            cert.failures.append({"kind": "depth", "stage": depth, "path": list(path) + [ch.index], "detail": "recursion depth exceeded"})
            cert.leaves.append(cc)
            continue
        sub_targets = _targets(ch.ring, ch.ideal, [T for T in ch.strict_transforms[1:] if not T.is_zero()])
        recurse(cert, ch.ring, ch.ideal, sub_targets, config, depth + 1, list(path) + [ch.index])


def _run_local(cert, ring, J, targets, config):
    m = irrelevant_ideal(ring)
    noncm = intersect_all([non_cm_locus_ideal(M) for M in targets]).reduced()
    point = all(noncm.radical_contains(x) for x in ring.gens())
    cert.locus = {"ideals": [_strs(noncm)], "N0": None, "supported_at_m": point}
    if not point:
        cert.locus["fallback"] = "kawasaki"
        _run_kawasaki(cert, ring, J, targets, config, depth=0, path=[])
        return
    N0 = minimal_power_exponent(noncm, m)
    cert.locus["N0"] = N0
    stage = Stage(0, [], "preliminary", _strs(m), non_cm_ideal=_strs(noncm))
    stage.center_contains_power = contains_power(m if J is None else m + J, noncm)
    cert.tower.append(stage)
    cert.center = stage.center
    charts = blowup_charts(J, m)
    certs = [certify_chart(ch, targets) for ch in charts]
    _record_charts(stage, certs)
    for ch, cc in zip(charts, certs):
        if cc.certified:
            cert.leaves.append(cc)
            continue
        _local_chart_stage(cert, ch, targets, N0, config, 1, [ch.index])


def _local_chart_stage(cert, ch: BlowupChart, targets, N0, config, depth, path):
    """On a chart of Bl_m: center prod (j_1..j_i) with j_1 a power of the exceptional element."""
    if depth > config.max_depth:
        cert.failures.append({"kind": "depth", "stage": depth, "path": path, "detail": "recursion depth exceeded"})
        return
    mods = [T for T in ch.strict_transforms if not T.is_zero()]
    ring, J = ch.ring, ch.ideal
    noncm = intersect_all([low_cohomology_product(M) for M in mods]).reduced()
    e = ch.exceptional
    seq = [e ** (N0 or 1)]
    cur = [M.mod_elements(seq) for M in mods]
    candidates = list(noncm.generators)
    while not _all_cm(cur) and len(seq) <= ring.nvars:
        dims = [Q.dimension() for Q in cur]
        pick = None
        pool = candidates + [f + g for i, f in enumerate(candidates) for g in candidates[i + 1 :]]
        for f in pool:
            if all(Q.mod_elements([f]).dimension() == d - 1 for Q, d in zip(cur, dims)):
                pick = f
                break
        if pick is None:
            cert.failures.append({"kind": "search", "stage": depth, "path": path, "detail": "no secant element on the chart"})
            return
        seq.append(pick)
        cur = [Q.mod_elements([pick]) for Q in cur]
    center = kawasaki_center(seq, J)
    stage = Stage(depth, path, "exceptional_power", _strs(center), [str(r) for r in seq], non_cm_ideal=_strs(noncm))
    stage.center_contains_power = contains_power(center + J, noncm)
    cert.tower.append(stage)
    charts = blowup_charts(J, center)
    certs = [certify_chart(c, mods) for c in charts]
    _record_charts(stage, certs)
    for c, cc in zip(charts, certs):
        if cc.certified:
            cert.leaves.append(cc)
        else:
            _local_chart_stage(cert, c, mods, N0, config, depth + 1, path + [c.index])
