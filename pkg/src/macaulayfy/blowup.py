"""Kawasaki centers, Rees ideals, affine blowup charts and strict transforms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .algebra import InputError, PolyRing, Polynomial
from .groebner import (
    Ideal,
    Submodule,
    Vec,
    aux_ring,
    poly_to_vec,
    vec_to_polys,
)
from .homology import (
    CMCertificate,
    ModulePresentation,
    is_cohen_macaulay,
    module_saturate,
    module_saturate_element,
    trim,
)


def saturation_quotient(M: ModulePresentation, a: Ideal) -> ModulePresentation:
    """M / (0 :_M a^infinity): kill the sections supported on V(a)."""
    if a.is_unit():
        return ModulePresentation(M.ring, 0, [], (), M.quotient, M.name)
    N = M.submodule()
    sat = module_saturate(N, a)
    return ModulePresentation(M.ring, M.rank, sat.basis(), M.twists, M.quotient, M.name)


def minimal_generators_mod(gens: Sequence[Polynomial], J: Ideal | None) -> List[Polynomial]:
    """Drop generators lying in J plus the ones kept before (degree order)."""
    ring = gens[0].ring
    base = list(J.generators) if J is not None else []
    items = sorted((g for g in gens if not g.is_zero()), key=lambda g: (g.degree(), str(g)))
    kept: List[Polynomial] = []
    for g in items:
        if not Ideal(ring, base + kept).contains(g):
            kept.append(g)
    return kept


def kawasaki_center(seq, J: Ideal | None = None) -> Ideal:
    """prod_{i=1}^{s} (r_1, ..., r_i), expanded; redundant generators (mod J) dropped."""
    els = list(seq.elements) if hasattr(seq, "elements") else list(seq)
    if not els:
        raise InputError("the sequence is empty; no blowup is needed")
    ring = els[0].ring
    gens = [ring.one()]
    for i in range(1, len(els) + 1):
        gens = [f * g for f in gens for g in els[:i]]
    return Ideal(ring, minimal_generators_mod(gens, J))


def rees_ring(ring: PolyRing, degrees: Sequence[int], prefix: str = "y") -> PolyRing:
    """S[y_0..y_r] with y_j weighted deg f_j + 1 (homogeneous for graded centers)."""
    names = _fresh_names(ring, prefix, len(degrees))
    weights = tuple(ring.weights) + tuple(max(1, d + 1) for d in degrees)
    return PolyRing(ring.variables + tuple(names), ring.field, weights, "grevlex")


def _fresh_names(ring: PolyRing, prefix: str, count: int) -> List[str]:
    taken = set(ring.variables)
    while any(f"{prefix}{j}" in taken for j in range(count)):
        prefix += "_"
    return [f"{prefix}{j}" for j in range(count)]


def rees_ideal(J: Ideal | None, I: Ideal, prefix: str = "y") -> Ideal:
    """Kernel of S[y] -> (S/J)[t], y_j -> f_j t; computed by eliminating t from J + (y_j - t f_j)."""
    ring = I.ring
    f = [g for g in I.generators if not g.is_zero()]
    E = rees_ring(ring, [g.degree() for g in f], prefix)
    T = aux_ring(E, 1, ["__t"])
    n, m = ring.nvars, len(f)
    pos = list(range(1, n + 1))
    t = T.var(0)
    gens = []
    if J is not None:
        gens += [g.embed(T, pos) for g in J.generators]
    for j, g in enumerate(f):
        gens.append(T.var(1 + n + j) - t * g.embed(T, pos))
    elim = Ideal(T, gens).eliminate(1, E)
    return elim


@dataclass
class BlowupChart:
    """The chart y_index = 1 of Proj of the Rees algebra.

    ``ring`` is a polynomial ring in the surviving variables, ``ideal`` defines
    the chart ring, ``images`` maps each original variable into ``ring``.
    """

    index: int
    ring: PolyRing
    ideal: Ideal
    images: List[Polynomial]
    exceptional: Polynomial
    eliminated: Dict[str, str] = field(default_factory=dict)
    strict_transforms: List[ModulePresentation] = field(default_factory=list)

    def ring_module(self) -> ModulePresentation:
        return ModulePresentation.ring_module(self.ring, self.ideal, name=f"chart{self.index}")

    def is_empty(self) -> bool:
        return self.ideal.is_unit()

    def map_poly(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.images, self.ring)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "variables": list(self.ring.variables),
            "ideal": [str(g) for g in self.ideal.generators],
            "exceptional": str(self.exceptional),
            "eliminated": dict(self.eliminated),
        }


def _linear_pivot(g: Polynomial, protected: set) -> Optional[int]:
    """A variable occurring in g only in one term c*x_k of degree one."""
    ring = g.ring
    for k in range(ring.nvars):
        if ring.variables[k] in protected:
            continue
        lin = None
        ok = True
        for e, c in g.terms.items():
            if e[k] == 0:
                continue
            if e[k] == 1 and sum(e) == 1 and lin is None:
                lin = c
            else:
                ok = False
                break
        if ok and lin is not None:
            return k
    return None


def prune_linear(ideal: Ideal, images: List[Polynomial], protected: Sequence[str] = ()):
    """Solve generators c*x_k + h (x_k not in h) for x_k and drop x_k.

    Returns (ring, ideal, images, eliminated) with images re-expressed in
    the smaller ring.
    """
    ring = ideal.ring
    gens = [g for g in ideal.generators if not g.is_zero()]
    solved: Dict[str, Polynomial] = {}
    prot = set(protected)
    while True:
        hit = None
        for idx, g in enumerate(gens):
            k = _linear_pivot(g, prot)
            if k is not None:
                hit = (idx, k)
                break
        if hit is None:
            break
        idx, k = hit
        g = gens[idx]
        e_k = tuple(1 if i == k else 0 for i in range(ring.nvars))
        c = g.terms[e_k]
        h = g - ring.monomial(e_k, c)
        keep = [i for i in range(ring.nvars) if i != k]
        small = PolyRing(tuple(ring.variables[i] for i in keep), ring.field, tuple(ring.weights[i] for i in keep), "grevlex")
        proj = _proj_images(ring, small, keep)
        sub = list(proj)
        sub[k] = h.scale(ring.field.inv(-c % ring.p)).substitute(proj, small)
        solved = {v: q.substitute(sub, small) for v, q in solved.items()}
        solved[ring.variables[k]] = sub[k]
        gens = [q.substitute(sub, small) for i, q in enumerate(gens) if i != idx]
        gens = [q for q in gens if not q.is_zero()]
        images = [f.substitute(sub, small) for f in images]
        ring = small
    return ring, Ideal(ring, gens).reduced(), images, {v: str(q) for v, q in solved.items()}


def _proj_images(ring: PolyRing, small: PolyRing, keep: List[int]) -> List[Polynomial]:
    out = []
    j = 0
    for i in range(ring.nvars):
        if i in keep:
            out.append(small.var(j))
            j += 1
        else:
            out.append(small.zero())
    return out


def blowup_charts(J: Ideal | None, I: Ideal, prefix: str = "y", prune: bool = True) -> List[BlowupChart]:
    """One chart per generator f_i: y_i = 1 in the Rees ideal, then linear pruning."""
    ring = I.ring
    f = [g for g in I.generators if not g.is_zero()]
    if not f:
        raise InputError("blowing up the zero ideal is not defined")
    rees = rees_ideal(J, I, prefix)
    E = rees.ring
    n = ring.nvars
    charts = []
    for i, fi in enumerate(f):
        keep = [k for k in range(E.nvars) if k != n + i]
        C = PolyRing(tuple(E.variables[k] for k in keep), ring.field, tuple(E.weights[k] for k in keep), "grevlex")
        sub = []
        j = 0
        for k in range(E.nvars):
            if k == n + i:
                sub.append(C.one())
            else:
                sub.append(C.var(j))
                j += 1
        gens = [g.substitute(sub, C) for g in rees.generators]
        images = [C.var(k) for k in range(n)]
        ideal = Ideal(C, [g for g in gens if not g.is_zero()])
        eliminated: Dict[str, str] = {}
        if prune:
            C, ideal, images, eliminated = prune_linear(ideal, images)
        exc = fi.substitute(images, C)
        charts.append(BlowupChart(i, C, ideal, images, exc, eliminated))
    return charts


def transform_module(M: ModulePresentation, chart: BlowupChart) -> ModulePresentation:
    """M tensored with the chart ring (no torsion removed)."""
    C = chart.ring
    rel = []
    for v in M.relations:
        polys = vec_to_polys(v, M.ring, M.rank)
        rel.append(_polys_vec([chart.map_poly(q) for q in polys]))
    if M.quotient is not None:
        for g in M.quotient.generators:
            img = chart.map_poly(g)
            if not img.is_zero():
                for k in range(M.rank):
                    rel.append(poly_to_vec(img, k))
    return ModulePresentation(C, M.rank, [v for v in rel if v], None, chart.ideal, M.name)


def _polys_vec(polys: Sequence[Polynomial]) -> Vec:
    out: Vec = {}
    for comp, f in enumerate(polys):
        for e, c in f.terms.items():
            out[e + (comp,)] = c
    return out


def strict_transform(M: ModulePresentation, chart: BlowupChart) -> ModulePresentation:
    """(M tensor chart ring) / (0 : f_i^infinity)."""
    T = transform_module(M, chart)
    if T.rank == 0:
        return T
    sat = module_saturate_element(T.submodule(), chart.exceptional)
    rel = trim(T.ring, T.rank, sat.basis())
    return ModulePresentation(T.ring, T.rank, rel, None, chart.ideal, M.name)


def exceptional_torsion_free(M: ModulePresentation, f: Polynomial) -> bool:
    """(0 :_M f^infinity) = 0, i.e. saturating the relations by f changes nothing."""
    if M.rank == 0:
        return True
    N = M.submodule()
    sat = module_saturate_element(N, f)
    return all(N.contains(v) for v in sat.basis())


@dataclass
class ChartCertificate:
    chart: BlowupChart
    ring_cm: Optional[CMCertificate]
    transforms_cm: List[Optional[CMCertificate]]
    torsion_free: List[bool]

    @property
    def certified(self) -> bool:
        if self.chart.is_empty():
            return True
        return bool(self.ring_cm) and all(bool(c) for c in self.transforms_cm if c is not None)

    def to_dict(self) -> dict:
        return {
            "chart": self.chart.to_dict(),
            "empty": self.chart.is_empty(),
            "ring_cm": self.ring_cm.to_dict() if self.ring_cm else None,
            "strict_transforms": [
                {
                    "name": M.name,
                    "relations": [[str(q) for q in row] for row in M.matrix_rows()],
                    "cm": c.to_dict() if c is not None else None,
                    "exceptional_torsion_free": tf,
                }
                for M, c, tf in zip(self.chart.strict_transforms, self.transforms_cm, self.torsion_free)
            ],
            "certified": self.certified,
        }


def certify_chart(chart: BlowupChart, modules: Sequence[ModulePresentation]) -> ChartCertificate:
    """Strict transforms of ``modules`` plus Ext-concentration verdicts on the chart."""
    chart.strict_transforms = [strict_transform(M, chart) for M in modules]
    if chart.is_empty():
        return ChartCertificate(chart, None, [None] * len(modules), [True] * len(modules))
    ring_cm = is_cohen_macaulay(chart.ring_module())
    cms = []
    tfs = []
    for T in chart.strict_transforms:
        tfs.append(exceptional_torsion_free(T, chart.exceptional))
        cms.append(None if T.is_zero() else is_cohen_macaulay(T))
    return ChartCertificate(chart, ring_cm, cms, tfs)
