"""Secant, d-sequence and CM-secant predicates, Kawasaki-style identity checks and the element search."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .algebra import Polynomial, monomials_of_degree
from .groebner import NEG_INF, Ideal, Submodule, Vec, intersect_all, poly_to_vec, vec_mul_poly, vec_to_polys
from .homology import (
    ModulePresentation,
    PreconditionError,
    is_cohen_macaulay,
    low_cohomology_product,
    module_colon_element,
    module_intersection,
    module_saturate,
)


@dataclass
class SequenceCandidate:
    """Elements r_1..r_s (in order) and the modules they are meant for."""

    elements: List[Polynomial]
    modules: List[ModulePresentation] = field(default_factory=list)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def ideal(self, i: int | None = None) -> Ideal:
        """(r_1, ..., r_i); all elements when i is None."""
        els = self.elements if i is None else self.elements[:i]
        return Ideal(self.elements[0].ring, els) if self.elements else None

    def product_ideal(self, j: int) -> Ideal:
        """I_j = prod_{i <= j} (r_1, ..., r_i); I_0 is the unit ideal."""
        ring = self.elements[0].ring
        out = Ideal(ring, [ring.one()])
        for i in range(1, j + 1):
            out = out * Ideal(ring, self.elements[:i])
        return out

    def to_strings(self) -> List[str]:
        return [str(r) for r in self.elements]


def _elements(seq) -> List[Polynomial]:
    return list(seq.elements) if isinstance(seq, SequenceCandidate) else list(seq)


def _check_in_m(elements: Sequence[Polynomial]):
    for r in elements:
        if r.is_zero():
            continue
        if not r.is_homogeneous() or r.degree() <= 0:
            raise PreconditionError(f"{r} is not a homogeneous element of positive degree", gate="in_m")


# ---------------------------------------------------------------------------
# submodules of F0 attached to M and a sequence


def _base(M: ModulePresentation) -> List[Vec]:
    return M.all_relations()


def _sub(M: ModulePresentation, ideal_gens: Sequence[Polynomial], extra: Sequence[Vec] = ()) -> Submodule:
    """N0 + (ideal_gens) F0 + extra, as a submodule of F0."""
    gens = list(_base(M)) + list(extra)
    for g in ideal_gens:
        if not g.is_zero():
            gens += [poly_to_vec(g, k) for k in range(M.rank)]
    return Submodule(M.ring, M.rank, gens, "top", M.grading_shifts())


def _power_gens(elements: Sequence[Polynomial], n: int) -> List[Polynomial]:
    """Generators of (elements)^n; the unit ideal for n = 0."""
    ring = elements[0].ring
    if n == 0:
        return [ring.one()]
    out = []
    for combo in itertools.combinations_with_replacement(range(len(elements)), n):
        f = ring.one()
        for i in combo:
            f = f * elements[i]
        out.append(f)
    return out


def _products(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> List[Polynomial]:
    return [f * g for f in a for g in b]


def _first_outside(A: Submodule, B: Submodule) -> Optional[Vec]:
    for g in A.gens:
        if not B.contains(g):
            return g
    return None


def _witness(M: ModulePresentation, v: Optional[Vec]) -> Optional[List[str]]:
    if v is None:
        return None
    return [str(f) for f in vec_to_polys(v, M.ring, M.rank)]


# ---------------------------------------------------------------------------
# secancy


@dataclass
class SecantResult:
    secant: bool
    dims: list

    def __bool__(self):
        return self.secant


def is_secant(M: ModulePresentation, seq) -> SecantResult:
    """True iff every element strictly drops dim Supp of the running quotient."""
    els = _elements(seq)
    _check_in_m(els)
    dims = [M.dimension()]
    ok = True
    for i in range(1, len(els) + 1):
        d = M.mod_elements(els[:i]).dimension()
        dims.append(d)
        if not d < dims[-2]:
            ok = False
    return SecantResult(ok, dims)


# ---------------------------------------------------------------------------
# d-sequences


@dataclass
class DSequenceResult:
    d_sequence: bool
    failing_index: Optional[int] = None
    witness: Optional[List[str]] = None

    def __bool__(self):
        return self.d_sequence


def is_d_sequence(M: ModulePresentation, seq, method: str = "definition") -> DSequenceResult:
    """``definition``: ((r_<i)M : r_i) meets (r)M only in (r_<i)M.

    ``torsion``: the r_k-torsion and the r_i r_k-torsion of M/(r_<i)M agree for i <= k.
    """
    els = _elements(seq)
    s = len(els)
    if s == 0:
        return DSequenceResult(True)
    if method == "definition":
        B = _sub(M, els)
        for i in range(1, s + 1):
            A = _sub(M, els[: i - 1])
            C = module_colon_element(A, els[i - 1])
            X = module_intersection(C, B)
            bad = _first_outside(X, A)
            if bad is not None:
                return DSequenceResult(False, i, _witness(M, bad))
        return DSequenceResult(True)
    if method == "torsion":
        for i in range(1, s + 1):
            A = _sub(M, els[: i - 1])
            for k in range(i, s + 1):
                big = module_colon_element(A, els[i - 1] * els[k - 1])
                small = module_colon_element(A, els[k - 1])
                bad = _first_outside(big, small)
                if bad is not None:
                    return DSequenceResult(False, i, _witness(M, bad))
        return DSequenceResult(True)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# CM-secant


@dataclass
class SequenceReport:
    elements: List[str]
    secant: bool
    dims: list
    cm_membership: List[bool]
    quotient_cm: bool
    witnesses: dict = field(default_factory=dict)
    d_sequence: Optional[bool] = None
    d_sequence_reversed: Optional[bool] = None
    goto_shimoda: Optional[bool] = None
    schenzel: Optional[bool] = None
    kaw_input: Optional[dict] = None

    @property
    def cm_secant(self) -> bool:
        return self.secant and all(self.cm_membership) and self.quotient_cm

    def __bool__(self):
        return self.cm_secant

    def to_dict(self) -> dict:
        return {
            "elements": self.elements,
            "cm_secant": self.cm_secant,
            "secant": self.secant,
            "dims": [_dim_json(d) for d in self.dims],
            "cm_membership": self.cm_membership,
            "quotient_cm": self.quotient_cm,
            "d_sequence": self.d_sequence,
            "d_sequence_reversed": self.d_sequence_reversed,
            "goto_shimoda": self.goto_shimoda,
            "schenzel": self.schenzel,
            "kaw_input": self.kaw_input,
            "witnesses": self.witnesses,
        }


def _dim_json(d):
    return None if d == NEG_INF else int(d)


def is_cm_secant(M: ModulePresentation, seq) -> SequenceReport:
    els = _elements(seq)
    _check_in_m(els)
    sec = is_secant(M, els)
    member = []
    witnesses = {}
    for i in range(1, len(els) + 1):
        Q = M.mod_elements(els[: i - 1])
        target = low_cohomology_product(Q)
        ok = target.contains(els[i - 1])
        member.append(ok)
        if not ok:
            witnesses.setdefault("cm_membership", []).append({"step": i, "ideal": [str(g) for g in target.generators]})
    final = M.mod_elements(els)
    qcm = (not final.is_zero()) and bool(is_cohen_macaulay(final))
    return SequenceReport([str(r) for r in els], sec.secant, sec.dims, member, qcm, witnesses)


# ---------------------------------------------------------------------------
# identities that hold for CM-secant sequences


@dataclass
class KawasakiReport:
    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail=None):
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.failures.append({"check": name, "detail": detail})

    @property
    def all_true(self) -> bool:
        return all(self.checks.values())

    def __bool__(self):
        return self.all_true

    def to_dict(self) -> dict:
        return {"all_true": self.all_true, "checks": dict(self.checks), "failures": self.failures}


def goto_shimoda_holds(M: ModulePresentation, seq, n: int) -> tuple:
    """((q_<i)M : q_i) cap r^n M = (q_<i)M cap r^n M = (q_<i) r^(n-1) M for every i."""
    q = _elements(seq)
    s = len(q)
    Rn = _sub(M, _power_gens(q, n))
    for i in range(1, s + 1):
        A = _sub(M, q[: i - 1])
        L1 = module_intersection(module_colon_element(A, q[i - 1]), Rn)
        L2 = module_intersection(A, Rn)
        L3 = _sub(M, _products(q[: i - 1], _power_gens(q, n - 1)))
        if not (L1.equals(L2) and L2.equals(L3)):
            return False, i
    return True, None


def _torsion_by_element(A: Submodule, f: Polynomial) -> Submodule:
    return module_colon_element(A, f)


def _secant_extension(M: ModulePresentation, seed: int = 0) -> Optional[Polynomial]:
    """A linear form secant for M (deterministic), or None when dim M <= 0."""
    if not M.dimension() > 0:
        return None
    ring = M.ring
    rng = random.Random(seed)
    d0 = M.dimension()
    for attempt in range(40):
        if attempt < ring.nvars:
            f = ring.var(attempt)
        else:
            f = ring.zero()
            for i in range(ring.nvars):
                f = f + ring.var(i).scale(rng.randint(1, 7))
        if M.mod_elements([f]).dimension() < d0:
            return f
    return None


def verify_kawasaki_properties(M: ModulePresentation, seq, n_range=(1, 2, 3), m_range=(1, 2, 3), seed: int = 0) -> KawasakiReport:
    """Check the consequences of CM-secancy on every initial subsequence.

    Each sample M' is M itself and M modulo one secant linear form of the
    final quotient.  A failure means an inconsistency in the engine.
    """
    els = _elements(seq)
    _check_in_m(els)
    rep = KawasakiReport()
    ring = M.ring
    for s in range(1, len(els) + 1):
        r = els[:s]
        rev = list(reversed(r))
        Ms = M.mod_elements(r)
        ext = _secant_extension(Ms, seed)
        samples = [M] + ([M.mod_elements([ext])] if ext is not None else [])
        # (i) the reversed initial subsequence is a d-sequence
        for Mp in samples:
            res = is_d_sequence(Mp, rev)
            rep.record("kaw_input_i", res.d_sequence, {"s": s, "witness": res.witness})
            for n in n_range:
                ok, i = goto_shimoda_holds(Mp, rev, n)
                rep.record("goto_shimoda", ok, {"s": s, "n": n, "i": i})
        # (ii) torsion of r_s^m equals the (r_1..r_s)-power torsion on M'/I_{s-1}^n M'
        for Mp in samples:
            if s <= 1:
                rep.record("kaw_input_ii", True)
                continue
            seq_c = SequenceCandidate(r)
            I_prev = seq_c.product_ideal(s - 1)
            for n in n_range:
                A = _sub(Mp, _power_ideal_gens(I_prev, n))
                gamma = module_saturate(A, Ideal(ring, r))
                for m in m_range:
                    tor = _torsion_by_element(A, r[-1] ** m)
                    ok = tor.equals(gamma)
                    rep.record("kaw_input_ii", ok, {"s": s, "n": n, "m": m})
        # (iii) regularity of a further secant element lifts
        if ext is not None:
            Mp = M
            A_quot = _sub(Mp, r)
            if _is_nzd(A_quot, ext):
                ok = _is_nzd(_sub(Mp, []), ext)
                I_s = SequenceCandidate(r).product_ideal(s)
                for n in n_range:
                    ok = ok and _is_nzd(_sub(Mp, _power_ideal_gens(I_s, n)), ext)
                rep.record("kaw_input_iii", ok, {"s": s, "element": str(ext)})
            else:
                rep.record("kaw_input_iii", True, None)
        # Schenzel: the low-cohomology product kills the r_s-torsion of M/(r_<s)M
        P = low_cohomology_product(M)
        A = _sub(M, r[:-1])
        T = module_colon_element(A, r[-1])
        ok = all(A.contains(vec_mul_poly(t, p, ring.p)) for p in P.generators for t in T.gens)
        rep.record("schenzel", ok, {"s": s})
    return rep


def _power_ideal_gens(I: Ideal, n: int) -> List[Polynomial]:
    return (I**n).generators


def _is_nzd(A: Submodule, f: Polynomial) -> bool:
    C = module_colon_element(A, f)
    return _first_outside(C, A) is None


def full_report(M: ModulePresentation, seq, n_range=(1, 2, 3), m_range=(1, 2, 3)) -> SequenceReport:
    """is_cm_secant plus d-sequence and identity verdicts."""
    rep = is_cm_secant(M, seq)
    els = _elements(seq)
    fwd = is_d_sequence(M, els)
    rev = is_d_sequence(M, list(reversed(els)))
    rep.d_sequence = fwd.d_sequence
    rep.d_sequence_reversed = rev.d_sequence
    if not fwd:
        rep.witnesses["d_sequence"] = {"step": fwd.failing_index, "element": fwd.witness}
    if rep.cm_secant and els:
        kaw = verify_kawasaki_properties(M, els, n_range, m_range)
        rep.goto_shimoda = kaw.checks.get("goto_shimoda", True)
        rep.schenzel = kaw.checks.get("schenzel", True)
        rep.kaw_input = {k: kaw.checks.get(k, True) for k in ("kaw_input_i", "kaw_input_ii", "kaw_input_iii")}
        if kaw.failures:
            rep.witnesses["kawasaki"] = kaw.failures
    return rep


# ---------------------------------------------------------------------------
# element search


@dataclass
class SearchConfig:
    max_degree: int = 4
    max_candidates: int = 200
    seed: int = 0


@dataclass
class SearchFailure:
    stage: int
    reason: str
    degrees: List[int]
    candidates_tried: int
    found: List[str]

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "reason": self.reason,
            "degrees": self.degrees,
            "candidates_tried": self.candidates_tried,
            "found": self.found,
        }


def _degree_span(gens: Sequence[Polynomial], d: int) -> List[Polynomial]:
    ring = gens[0].ring if gens else None
    out, seen = [], set()
    for g in gens:
        if g.is_zero() or not g.is_homogeneous() or g.degree() > d:
            continue
        for mono in monomials_of_degree(ring, d - g.degree()):
            f = g.mul_term(mono)
            key = tuple(sorted(f.terms.items()))
            if key not in seen:
                seen.add(key)
                out.append(f)
    return out


def _candidates(span: List[Polynomial], rng: random.Random, budget: int):
    """Single spanning elements, then sums/differences of pairs, then seeded random combinations."""
    count = 0
    for f in span:
        yield f
        count += 1
        if count >= budget:
            return
    for f, g in itertools.combinations(span, 2):
        for h in (f + g, f - g):
            yield h
            count += 1
            if count >= budget:
                return
    for _ in range(budget - count):
        f = span[0].ring.zero()
        for g in span:
            c = rng.randint(-3, 3)
            if c:
                f = f + g.scale(c)
        if not f.is_zero():
            yield f


def find_cm_secant_sequence(modules: Sequence[ModulePresentation], config: SearchConfig | None = None):
    """A sequence CM-secant for every module at once, or a SearchFailure."""
    config = config or SearchConfig()
    mods = list(modules)
    if not mods:
        raise ValueError("at least one module is required")
    for M in mods:
        if M.is_zero():
            raise PreconditionError("zero module", gate="nonzero")
    ring = mods[0].ring
    rng = random.Random(config.seed)
    found: List[Polynomial] = []
    current = mods
    tried_total = 0
    stage = 0
    while True:
        if all(bool(is_cohen_macaulay(Q)) for Q in current):
            return SequenceCandidate(found, mods)
        stage += 1
        target = intersect_all([low_cohomology_product(Q) for Q in current]).reduced()
        dims = [Q.dimension() for Q in current]
        chosen = None
        degrees = []
        for d in range(1, config.max_degree + 1):
            span = _degree_span(target.generators, d)
            if not span:
                continue
            degrees.append(d)
            for f in _candidates(span, rng, config.max_candidates):
                tried_total += 1
                if all(Q.mod_elements([f]).dimension() == dq - 1 for Q, dq in zip(current, dims)):
                    chosen = f
                    break
            if chosen is not None:
                break
        if chosen is None:
            return SearchFailure(stage, "no secant element of the target ideal up to the degree bound", degrees, tried_total, [str(f) for f in found])
        found.append(chosen)
        current = [Q.mod_elements([chosen]) for Q in current]
