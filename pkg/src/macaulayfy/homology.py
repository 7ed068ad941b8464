"""Finitely presented modules, free resolutions, Ext into the ambient ring and CM certificates.

A module is ``M = coker(F1 -> F0)`` over a polynomial ring ``S`` in ``n``
variables, optionally regarded over ``R = S/J``.  Everything homological
is computed over ``S``: ``Ext^i_S(M, S)`` comes from the transposed
resolution, and graded local duality turns it into local cohomology at the
irrelevant ideal, ``H^j_m(M)`` being dual to ``Ext^{n-j}_S(M, S)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .algebra import InputError, PolyRing, Polynomial
from .groebner import (
    NEG_INF,
    GBEngine,
    Ideal,
    ModuleOrder,
    Submodule,
    Vec,
    aux_ring,
    compute_gb,
    embed_vec,
    intersect_all,
    poly_to_vec,
    polys_to_vec,
    product_all,
    unit_ideal,
    vec_mul_poly,
    vec_to_poly,
    vec_to_polys,
    _canonical,
)


class PreconditionError(InputError):
    """An operation's documented precondition failed; ``gate`` names it."""

    def __init__(self, message: str, gate: str):
        super().__init__(message)
        self.gate = gate


# ---------------------------------------------------------------------------
# vector helpers


def _vec_degree(v: Vec, ring: PolyRing, shifts: Sequence[int]) -> Optional[int]:
    degs = {sum(a * w for a, w in zip(t[:-1], ring.weights)) + (shifts[t[-1]] if shifts else 0) for t in v}
    return degs.pop() if len(degs) == 1 else None


def _degrees_or_none(vecs: Sequence[Vec], ring: PolyRing, shifts) -> Optional[List[int]]:
    if shifts is None:
        return None
    out = []
    for v in vecs:
        d = _vec_degree(v, ring, shifts)
        if d is None:
            return None
        out.append(d)
    return out


def _shift_comps(v: Vec, delta: int) -> Vec:
    return {t[:-1] + (t[-1] + delta,): c for t, c in v.items()}


def _drop_comp(v: Vec, k: int) -> Vec:
    out = {}
    for t, c in v.items():
        ck = t[-1]
        if ck == k:
            continue
        out[t if ck < k else t[:-1] + (ck - 1,)] = c
    return out


def _comp_poly(v: Vec, k: int) -> Dict:
    return {t[:-1]: c for t, c in v.items() if t[-1] == k}


def _unit_vec(ring: PolyRing, k: int) -> Vec:
    return {(0,) * ring.nvars + (k,): 1}


def split_kernel(ring: PolyRing, r: int, pairs: Sequence[tuple], shifts_top=None, shifts_bottom=None) -> List[Vec]:
    """Given pairs (a_j in S^r, b_j in S^m), return generators (a GB) of
    ``{sum c_j b_j : sum c_j a_j = 0}`` in S^m.

    A GB under an order where components ``< r`` dominate restricts to a GB
    of this kernel (elimination of the first block of components).
    """
    gens = []
    for a, b in pairs:
        v = dict(a)
        v.update(_shift_comps(b, r))
        if v:
            gens.append(v)
    shifts = None
    if shifts_top is not None and shifts_bottom is not None:
        shifts = tuple(shifts_top) + tuple(shifts_bottom)
    order = ModuleOrder(ring.order, "top", shifts, split=r)
    basis = compute_gb(gens, order, ring.p, ring.nvars)
    key = order.key
    out = []
    for g in basis:
        if min(g, key=key)[-1] >= r:
            out.append(_shift_comps(g, -r))
    return out


def trim(ring: PolyRing, rank: int, gens: Sequence[Vec], shifts=None) -> List[Vec]:
    """A generating subset: walk generators by degree, keep those not yet spanned.

    Minimal for homogeneous input.
    """
    order = ModuleOrder(ring.order, "top", shifts)
    key = order.key
    items = [g for g in gens if g]
    items.sort(key=lambda v: (order.degree(min(v, key=key)), len(v), key(min(v, key=key))))
    eng = GBEngine(order, ring.p, rank1=rank == 1)
    kept = []
    seen = set()
    for g in items:
        sig = tuple(sorted(g.items()))
        if sig in seen:
            continue
        seen.add(sig)
        if eng.reduce(g):
            kept.append(g)
            eng.add(g)
            eng.run()
    return kept


# ---------------------------------------------------------------------------
# module presentations


class ModulePresentation:
    """M = coker(relations) with F0 = S^rank; ``quotient`` marks M as a module over S/J.

    ``relations`` are column vectors (Vec dicts) in F0; the multiples
    ``J * F0`` are implicit relations.
    """

    def __init__(
        self,
        ring: PolyRing,
        rank: int,
        relations: Sequence[Vec] = (),
        twists: Sequence[int] | None = None,
        quotient: Ideal | None = None,
        name: str | None = None,
    ):
        self.ring = ring
        self.rank = rank
        self.relations: List[Vec] = [dict(v) for v in relations if v]
        self.twists = tuple(twists) if twists is not None else (0,) * rank
        if len(self.twists) != rank:
            raise InputError("one twist per generator is required")
        if quotient is not None and quotient.ring != ring:
            raise InputError("quotient ideal lives in a different ring")
        self.quotient = quotient
        self.name = name
        self._sub: Optional[Submodule] = None
        self._ext: Optional["ExtSummary"] = None

    # constructors -------------------------------------------------------
    @classmethod
    def cyclic(cls, ideal: Ideal, quotient: Ideal | None = None, name=None) -> "ModulePresentation":
        """S/I (as a module over S/quotient when given)."""
        return cls(ideal.ring, 1, [poly_to_vec(g) for g in ideal.generators], quotient=quotient, name=name)

    @classmethod
    def ring_module(cls, ring: PolyRing, J: Ideal | None = None, name=None) -> "ModulePresentation":
        """R = S/J as a module over itself."""
        return cls(ring, 1, [], quotient=J, name=name)

    @classmethod
    def free(cls, ring: PolyRing, rank: int = 1, twists=None) -> "ModulePresentation":
        return cls(ring, rank, [], twists)

    @classmethod
    def from_matrix(cls, ring: PolyRing, rows: Sequence[Sequence[Polynomial]], quotient=None, twists=None, name=None):
        """coker of the matrix given row-major: one row per generator of F0."""
        if not rows:
            return cls(ring, 0, [], (), quotient, name)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise InputError("matrix rows have different lengths")
        cols = [polys_to_vec([rows[i][j] for i in range(len(rows))]) for j in range(ncols)]
        return cls(ring, len(rows), cols, twists, quotient, name)

    def copy_with(self, relations=None, quotient="keep") -> "ModulePresentation":
        q = self.quotient if quotient == "keep" else quotient
        rel = self.relations if relations is None else relations
        return ModulePresentation(self.ring, self.rank, rel, self.twists, q, self.name)

    # views ----------------------------------------------------------------
    def all_relations(self) -> List[Vec]:
        rel = list(self.relations)
        if self.quotient is not None:
            for g in self.quotient.generators:
                for k in range(self.rank):
                    rel.append(poly_to_vec(g, k))
        return rel

    def submodule(self) -> Submodule:
        if self._sub is None:
            self._sub = Submodule(self.ring, self.rank, self.all_relations(), "top", self.grading_shifts())
        return self._sub

    def grading_shifts(self) -> Optional[tuple]:
        return self.twists if self.is_homogeneous() else None

    def is_homogeneous(self) -> bool:
        if self.quotient is not None and not self.quotient.is_homogeneous():
            return False
        return all(_vec_degree(v, self.ring, self.twists) is not None for v in self.relations)

    def matrix_rows(self) -> List[List[Polynomial]]:
        cols = [vec_to_polys(v, self.ring, self.rank) for v in self.relations]
        return [[c[i] for c in cols] for i in range(self.rank)]

    def canonical_key(self) -> tuple:
        return (self.ring.signature(), self.rank, _canonical(self.submodule().basis()))

    def __repr__(self):
        tag = f" over R/({len(self.quotient.generators)} gens)" if self.quotient else ""
        return f"<ModulePresentation rank {self.rank}, {len(self.relations)} relations{tag}>"

    # basic invariants -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.rank == 0 or self.submodule().is_whole()

    def dimension(self):
        """Krull dimension of Supp(M); -inf for M = 0."""
        if self.rank == 0:
            return NEG_INF
        return self.submodule().quotient_dimension()

    def annihilator(self) -> Ideal:
        N = self.submodule()
        if self.rank == 0:
            return unit_ideal(self.ring)
        ideals = [colon_vector(N, _unit_vec(self.ring, k)) for k in range(self.rank)]
        return intersect_all(ideals)

    # derived modules ------------------------------------------------------
    def mod_elements(self, elements: Sequence[Polynomial]) -> "ModulePresentation":
        """M / (r_1, ..., r_s) M."""
        rel = list(self.relations)
        for r in elements:
            if r.is_zero():
                continue
            for k in range(self.rank):
                rel.append(poly_to_vec(r, k))
        return self.copy_with(rel)

    def mod_submodule(self, vecs: Sequence[Vec]) -> "ModulePresentation":
        return self.copy_with(list(self.relations) + [v for v in vecs if v])

    def pruned(self) -> "ModulePresentation":
        """Drop generators killed by unit relations; zero module becomes rank 0."""
        if self.is_zero():
            return ModulePresentation(self.ring, 0, [], (), self.quotient, self.name)
        rel = trim(self.ring, self.rank, self.all_relations(), self.grading_shifts())
        twists = list(self.twists)
        rank = self.rank
        changed = True
        while changed:
            changed = False
            for idx, v in enumerate(rel):
                for k in range(rank):
                    part = _comp_poly(v, k)
                    if len(part) == 1 and not any(next(iter(part))):
                        c = next(iter(part.values()))
                        inv = pow(c, -1, self.ring.p)
                        new = []
                        for j, w in enumerate(rel):
                            if j == idx:
                                continue
                            wk = _comp_poly(w, k)
                            if wk:
                                f = Polynomial(self.ring, wk, _clean=False).scale(inv)
                                w = _vec_sub(w, vec_mul_poly(v, f, self.ring.p), self.ring.p)
                            w = _drop_comp(w, k)
                            if w:
                                new.append(w)
                        rel = new
                        rank -= 1
                        del twists[k]
                        changed = True
                        break
                if changed:
                    break
        # J * F0 is already among the relations
        return ModulePresentation(self.ring, rank, rel, twists, None, self.name)


def _vec_sub(u: Vec, v: Vec, p: int) -> Vec:
    out = dict(u)
    for t, c in v.items():
        s = (out.get(t, 0) - c) % p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


# ---------------------------------------------------------------------------
# submodule arithmetic


def colon_vector(N: Submodule, v: Vec) -> Ideal:
    """{f in S : f v in N}."""
    ring = N.ring
    if not v or N.contains(v):
        return unit_ideal(ring)
    one = {(0,) * ring.nvars + (0,): 1}
    pairs = [(g, {}) for g in N.gens] + [(v, one)]
    shifts = N.order.shifts or None
    bottom = None
    if shifts:
        d = _vec_degree(v, ring, shifts)
        bottom = (d,) if d is not None else None
    kern = split_kernel(ring, N.rank, pairs, shifts if bottom else None, bottom)
    return Ideal(ring, [vec_to_poly(k, ring) for k in kern])


def colon_module(B: Submodule, K: Sequence[Vec]) -> Ideal:
    """B : K = Ann(K + B / B)."""
    ideals = [colon_vector(B, k) for k in K if k]
    if not ideals:
        return unit_ideal(B.ring)
    return intersect_all(ideals)


def module_intersection(N1: Submodule, N2: Submodule) -> Submodule:
    ring, r = N1.ring, N1.rank
    pairs = [(g, g) for g in N1.gens] + [(g, {}) for g in N2.gens]
    sh = N1.order.shifts or None
    kern = split_kernel(ring, r, pairs, sh, sh)
    return Submodule(ring, r, kern, "top", N1.order.shifts)


def module_colon_element(N: Submodule, g: Polynomial) -> Submodule:
    """{v in F : g v in N}."""
    ring, r = N.ring, N.rank
    p = ring.p
    pairs = []
    for k in range(r):
        e = _unit_vec(ring, k)
        pairs.append((vec_mul_poly(e, g, p), e))
    pairs += [(h, {}) for h in N.gens]
    sh = N.order.shifts or None
    top = bottom = None
    if sh and g.is_homogeneous():
        # (g e_k, e_k) is homogeneous when the lower copy of e_k sits in degree s_k + deg g
        top = tuple(sh)
        bottom = tuple(s + g.degree() for s in sh)
    kern = split_kernel(ring, r, pairs, top, bottom)
    return Submodule(ring, r, kern, "top", N.order.shifts)


def module_saturate_element(N: Submodule, g: Polynomial) -> Submodule:
    """N : g^infinity via one auxiliary variable u and the relation 1 - u g."""
    ring, r = N.ring, N.rank
    T = aux_ring(ring)
    pos = list(range(1, ring.nvars + 1))
    u = T.var(0)
    h = T.one() - u * g.embed(T, pos)
    gens = [embed_vec(v, T.nvars, pos) for v in N.gens]
    for k in range(r):
        gens.append(poly_to_vec(h, k))
    order = ModuleOrder(T.order, "top")
    basis = compute_gb(gens, order, ring.p, T.nvars, rank1=r == 1)
    keep = [{t[1:]: c for t, c in b.items()} for b in basis if all(t[0] == 0 for t in b)]
    return Submodule(ring, r, keep, "top", N.order.shifts)


def module_saturate(N: Submodule, a: Ideal) -> Submodule:
    """N : a^infinity = intersection over generators g of N : g^infinity."""
    if a.is_zero():
        return Submodule(N.ring, N.rank, [_unit_vec(N.ring, k) for k in range(N.rank)])
    out = None
    for g in a.generators:
        s = module_saturate_element(N, g)
        out = s if out is None else module_intersection(out, s)
    return out


def ideal_times_module(ring: PolyRing, rank: int, ideal_gens: Sequence[Polynomial], vecs: Sequence[Vec]) -> List[Vec]:
    p = ring.p
    out = []
    for f in ideal_gens:
        for v in vecs:
            w = vec_mul_poly(v, f, p)
            if w:
                out.append(w)
    return out


# ---------------------------------------------------------------------------
# syzygies and resolutions


def _syz_vecs(ring: PolyRing, rank: int, columns: Sequence[Vec], shifts=None) -> tuple[List[Vec], Optional[List[int]]]:
    """Generators of ker(S^m -> S^rank) and (when graded) their degrees."""
    m = len(columns)
    if m == 0:
        return [], []
    degs = _degrees_or_none(columns, ring, shifts)
    pairs = [(columns[j], _unit_vec(ring, j)) for j in range(m)]
    kern = split_kernel(ring, rank, pairs, shifts if degs else None, degs)
    kern = trim(ring, m, kern, degs)
    kdegs = _degrees_or_none(kern, ring, degs) if degs is not None else None
    return kern, kdegs


def syzygies(matrix: Sequence[Sequence[Polynomial]], ring: PolyRing | None = None) -> List[List[Polynomial]]:
    """Kernel generators of the map given row-major by ``matrix``, also row-major."""
    if not matrix or not matrix[0]:
        return []
    ring = ring or matrix[0][0].ring
    rank, m = len(matrix), len(matrix[0])
    cols = [polys_to_vec([matrix[i][j] for i in range(rank)]) for j in range(m)]
    shifts = (0,) * rank
    if _degrees_or_none(cols, ring, shifts) is None:
        shifts = None
    kern, _ = _syz_vecs(ring, rank, cols, shifts)
    if not kern:
        return [[] for _ in range(m)]
    polys = [vec_to_polys(v, ring, m) for v in kern]
    return [[c[i] for c in polys] for i in range(m)]


@dataclass
class FreeResolution:
    """F_0 <- F_1 <- ... ; ``differentials[i]`` holds the columns of d_{i+1} (vectors in F_i)."""

    ring: PolyRing
    ranks: List[int]
    differentials: List[List[Vec]]
    twists: List[Optional[List[int]]]

    @property
    def length(self) -> int:
        return len([r for r in self.ranks[1:] if r]) if self.ranks else 0

    def betti(self) -> Dict[int, List[int]]:
        """homological degree -> sorted twists (empty lists when ungraded)."""
        return {i: sorted(t) if t is not None else [] for i, t in enumerate(self.twists) if self.ranks[i]}

    def total_betti(self) -> List[int]:
        return [r for r in self.ranks if r] if self.ranks and self.ranks[0] else []

    def matrix(self, i: int) -> List[List[Polynomial]]:
        """d_i as a row-major Polynomial matrix (i >= 1)."""
        cols = [vec_to_polys(v, self.ring, self.ranks[i - 1]) for v in self.differentials[i - 1]]
        return [[c[r] for c in cols] for r in range(self.ranks[i - 1])]

    def check_complex(self) -> bool:
        """d_i d_{i+1} = 0 exactly."""
        p = self.ring.p
        for i in range(len(self.differentials) - 1):
            d_i, d_next = self.differentials[i], self.differentials[i + 1]
            for col in d_next:
                acc: Vec = {}
                for k, f in _components(col, self.ring).items():
                    acc = _vec_add_into(acc, vec_mul_poly(d_i[k], f, p), p)
                if acc:
                    return False
        return True


def _components(v: Vec, ring: PolyRing) -> Dict[int, Polynomial]:
    parts: Dict[int, Dict] = {}
    for t, c in v.items():
        parts.setdefault(t[-1], {})[t[:-1]] = c
    return {k: Polynomial(ring, d, _clean=False) for k, d in parts.items()}


def _vec_add_into(u: Vec, v: Vec, p: int) -> Vec:
    for t, c in v.items():
        s = (u.get(t, 0) + c) % p
        if s:
            u[t] = s
        else:
            u.pop(t, None)
    return u


def _prune_pair(ring: PolyRing, prev: Optional[List[Vec]], cols: List[Vec], rank: int, twists_src, twists_tgt):
    """Cancel unit entries of ``cols`` (d: F_{i+1} -> F_i of rank ``rank``).

    ``prev`` are the columns of d_i (images of the F_i basis); the F_i
    generator hit by a unit is dropped from it.
    """
    p = ring.p
    cols = list(cols)
    prev = list(prev) if prev is not None else None
    twists_src = list(twists_src) if twists_src is not None else None
    twists_tgt = list(twists_tgt) if twists_tgt is not None else None
    while True:
        hit = None
        for c, v in enumerate(cols):
            for t, a in v.items():
                if not any(t[:-1]):
                    r = t[-1]
                    part = _comp_poly(v, r)
                    if len(part) == 1:
                        hit = (r, c, a)
                        break
            if hit:
                break
        if hit is None:
            return prev, cols, rank, twists_src, twists_tgt
        r, c, a = hit
        inv = pow(a, -1, p)
        pivot = cols[c]
        new_cols = []
        for j, w in enumerate(cols):
            if j == c:
                continue
            wr = _comp_poly(w, r)
            if wr:
                f = Polynomial(ring, wr, _clean=False).scale(inv)
                w = _vec_sub(w, vec_mul_poly(pivot, f, p), p)
            w = _drop_comp(w, r)
            new_cols.append(w)
        cols = new_cols
        if prev is not None:
            del prev[r]
        if twists_tgt is not None:
            del twists_tgt[r]
        if twists_src is not None:
            del twists_src[c]
        rank -= 1


def free_resolution(M: ModulePresentation, max_len: int | None = None) -> FreeResolution:
    """Iterated syzygies, trimmed and pruned of unit entries."""
    ring = M.ring
    n = ring.nvars
    if max_len is None:
        max_len = n + 1
    Mp = M.pruned()
    if Mp.rank == 0:
        return FreeResolution(ring, [0], [], [[]])
    graded = Mp.is_homogeneous()
    tw0 = list(Mp.twists) if graded else None
    d1 = list(Mp.relations)
    tw1 = _degrees_or_none(d1, ring, tw0) if graded else None
    ranks = [Mp.rank, len(d1)]
    diffs = [d1]
    twists = [tw0, tw1]
    i = 1
    while ranks[-1] and i < max_len:
        kern, kdegs = _syz_vecs(ring, ranks[-2], diffs[-1], twists[-2])
        if not kern:
            break
        prev, kern, new_rank, kdegs, tw_tgt = _prune_pair(ring, diffs[-1], kern, ranks[-1], kdegs, twists[-1])
        diffs[-1] = prev
        ranks[-1] = new_rank
        twists[-1] = tw_tgt
        if new_rank == 0:
            break
        diffs.append(kern)
        ranks.append(len(kern))
        twists.append(kdegs)
        i += 1
    while len(ranks) > 1 and ranks[-1] == 0:
        ranks.pop()
        twists.pop()
        diffs.pop()
    return FreeResolution(ring, ranks, diffs, twists)


# ---------------------------------------------------------------------------
# Ext into the ring


@dataclass
class ExtModule:
    """Ext^i_S(M, S) as the subquotient K / B of F_i^*."""

    index: int
    ring: PolyRing
    rank: int
    kernel: List[Vec]
    boundary: List[Vec]
    shifts: Optional[tuple]
    _zero: Optional[bool] = None
    _ann: Optional[Ideal] = None

    def boundary_module(self) -> Submodule:
        return Submodule(self.ring, self.rank, self.boundary, "top", self.shifts)

    def is_zero(self) -> bool:
        if self._zero is None:
            B = self.boundary_module()
            self._zero = all(B.contains(k) for k in self.kernel)
        return self._zero

    def annihilator(self) -> Ideal:
        if self._ann is None:
            if self.is_zero():
                self._ann = unit_ideal(self.ring)
            else:
                self._ann = colon_module(self.boundary_module(), self.kernel).reduced()
        return self._ann

    def dimension(self):
        return NEG_INF if self.is_zero() else self.annihilator().dimension()

    def presentation(self) -> ModulePresentation:
        """coker presentation: generators = kernel gens, relations from syz([K | B])."""
        a = len(self.kernel)
        if self.is_zero() or a == 0:
            return ModulePresentation(self.ring, 0, [])
        pairs = [(k, _unit_vec(self.ring, j)) for j, k in enumerate(self.kernel)] + [(b, {}) for b in self.boundary]
        kern = split_kernel(self.ring, self.rank, pairs)
        twists = None
        if self.shifts is not None:
            twists = _degrees_or_none(self.kernel, self.ring, self.shifts)
        return ModulePresentation(self.ring, a, kern, twists).pruned()


@dataclass
class ExtSummary:
    """Ext^i_S(M, S) for i = 0..n with the derived depth/dim/codim scalars."""

    n: int
    exts: List[ExtModule]
    resolution: FreeResolution

    @property
    def nonzero_indices(self) -> List[int]:
        return [e.index for e in self.exts if not e.is_zero()]

    @property
    def codim(self):
        nz = self.nonzero_indices
        return min(nz) if nz else None

    @property
    def depth(self):
        nz = self.nonzero_indices
        return self.n - max(nz) if nz else None

    @property
    def dim(self):
        nz = self.nonzero_indices
        return self.n - min(nz) if nz else NEG_INF

    def annihilator(self, i: int) -> Ideal:
        if 0 <= i < len(self.exts):
            return self.exts[i].annihilator()
        return unit_ideal(self.resolution.ring)

    def table(self) -> List[dict]:
        rows = []
        for e in self.exts:
            zero = e.is_zero()
            rows.append(
                {
                    "index": e.index,
                    "zero": zero,
                    "dim": None if zero else e.dimension(),
                    "annihilator": None if zero else [str(g) for g in e.annihilator().generators],
                }
            )
        return rows


_summary_lock = threading.Lock()
_summary_cache: Dict[tuple, ExtSummary] = {}


def ext_summary(M: ModulePresentation) -> ExtSummary:
    if M._ext is not None:
        return M._ext
    key = M.canonical_key()
    with _summary_lock:
        hit = _summary_cache.get(key)
    if hit is not None:
        M._ext = hit
        return hit
    ring = M.ring
    n = ring.nvars
    res = free_resolution(M, n + 1)
    exts = []
    L = len(res.ranks) - 1
    for i in range(n + 1):
        if i > L or res.ranks[i] == 0:
            exts.append(ExtModule(i, ring, 0, [], [], None, _zero=True))
            continue
        r_i = res.ranks[i]
        shifts = tuple(-t for t in res.twists[i]) if res.twists[i] is not None else None
        if i < L:
            dT_next = _transpose_cols(res.differentials[i], r_i)
            next_shifts = tuple(-t for t in res.twists[i + 1]) if res.twists[i + 1] is not None else None
            kernel, _ = _syz_vecs(ring, res.ranks[i + 1], dT_next, next_shifts)
        else:
            kernel = [_unit_vec(ring, k) for k in range(r_i)]
        boundary = _transpose_cols(res.differentials[i - 1], res.ranks[i - 1]) if i >= 1 else []
        exts.append(ExtModule(i, ring, r_i, kernel, [b for b in boundary if b], shifts))
    summary = ExtSummary(n, exts, res)
    with _summary_lock:
        _summary_cache[key] = summary
    M._ext = summary
    return summary


def _transpose_cols(cols: List[Vec], tgt_rank: int) -> List[Vec]:
    """For d: F_src -> F_tgt with columns ``cols``, the columns of d^T: F_tgt^* -> F_src^*.

    Column k of d^T is row k of d, a vector indexed by the source basis.
    """
    out: List[Vec] = [dict() for _ in range(tgt_rank)]
    for j, v in enumerate(cols):
        for t, c in v.items():
            out[t[-1]][t[:-1] + (j,)] = c
    return out


def ext_into_ring(M: ModulePresentation, i: int) -> ModulePresentation:
    """A presentation of Ext^i_S(M, S) (rank 0 when it vanishes)."""
    s = ext_summary(M)
    if not 0 <= i <= s.n:
        return ModulePresentation(M.ring, 0, [])
    return s.exts[i].presentation()


def _require_nonzero(M: ModulePresentation):
    if M.is_zero():
        raise PreconditionError("the module is zero", gate="nonzero")


def depth_dim(M: ModulePresentation) -> tuple:
    """(depth, dim, codim) at the irrelevant ideal via graded local duality."""
    _require_nonzero(M)
    s = ext_summary(M)
    return s.depth, s.dim, s.codim


@dataclass
class CMCertificate:
    cohen_macaulay: bool
    nonzero_ext: List[int]
    codim: int

    def __bool__(self):
        return self.cohen_macaulay

    def to_dict(self) -> dict:
        return {"cohen_macaulay": self.cohen_macaulay, "nonzero_ext": self.nonzero_ext, "codim": self.codim}


def is_cohen_macaulay(M: ModulePresentation) -> CMCertificate:
    """CM (with equicodimensional support) iff Ext^i_S(M,S) vanishes for every i but one."""
    _require_nonzero(M)
    s = ext_summary(M)
    nz = s.nonzero_indices
    return CMCertificate(len(nz) == 1, nz, nz[0])


def equidimensionality_check(M: ModulePresentation) -> bool:
    """Every component of Supp M has codimension codim(M).

    The codim-c components are exactly V(Ann Ext^c); the support is
    equidimensional iff Ann Ext^c lies in the radical of Ann M.
    """
    _require_nonzero(M)
    s = ext_summary(M)
    c = s.codim
    top = s.exts[c].annihilator()
    ann = M.annihilator()
    return all(ann.radical_contains(g) for g in top.generators)


def unmixedness_check(M: ModulePresentation) -> bool:
    """dim Ext^i < n - i for all i > codim: no associated prime of bigger codimension."""
    _require_nonzero(M)
    s = ext_summary(M)
    c = s.codim
    for e in s.exts[c + 1 :]:
        if not e.is_zero() and e.dimension() >= s.n - e.index:
            return False
    return True


def local_cohomology_annihilator(M: ModulePresentation, j: int) -> Ideal:
    """Ann H^j_m(M) = Ann Ext^{n-j}_S(M, S)."""
    n = M.ring.nvars
    if not 0 <= j <= n:
        raise InputError(f"local cohomology index must lie in [0, {n}]")
    if M.is_zero():
        return unit_ideal(M.ring)
    s = ext_summary(M)
    return s.annihilator(n - j)


def low_cohomology_product(M: ModulePresentation) -> Ideal:
    """prod_{j < dim Supp M} Ann H^j_m(M), i.e. prod_{i > codim} Ann Ext^i."""
    ring = M.ring
    if M.is_zero():
        return unit_ideal(ring)
    s = ext_summary(M)
    c = s.codim
    return product_all(ring, [e.annihilator() for e in s.exts[c + 1 :] if not e.is_zero()])


def non_cm_locus_ideal(M: ModulePresentation) -> Ideal:
    """Ideal cutting out the non-CM locus of an equidimensional module."""
    _require_nonzero(M)
    if not equidimensionality_check(M):
        raise PreconditionError("support of the module is not equidimensional", gate="equidimensional")
    return low_cohomology_product(M)
