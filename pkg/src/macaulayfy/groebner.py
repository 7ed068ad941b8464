"""Buchberger engine for ideals and submodules of free modules, plus ideal arithmetic.

Internally a module element is a dict ``{term: coeff}`` where a term is an
exponent tuple with the component index appended, ``e + (comp,)``.  Ideals
are rank-one submodules.  The engine works on these raw dicts; the public
classes (`Ideal`, `GroebnerBasis`, `Submodule`) wrap them.
"""

from __future__ import annotations

import hashlib
import heapq
import threading
from itertools import combinations
from operator import add, ge, sub
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import InputError, MonomialOrder, PolyRing, Polynomial

Term = Tuple[int, ...]
Vec = Dict[Term, int]

DEFAULT_DEGREE_BOUND = 200
MAX_BASIS_SIZE = 50000
MAX_SATURATION_STEPS = 64

AUX = "__aux"


class ResourceError(RuntimeError):
    """A computation hit a configured bound; ``partial`` carries what was built so far."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


# ---------------------------------------------------------------------------
# orders on module terms


class ModuleOrder:
    """Order on terms ``e + (comp,)``.

    ``kind`` is ``"top"`` (term over position) or ``"pot"``.  ``shifts`` are
    degree twists per component, used by ``top`` with degree orders.  With
    ``split = r`` every term in a component ``< r`` beats every term in a
    component ``>= r``; this is the order used to extract syzygies.
    """

    def __init__(self, ring_order: MonomialOrder, kind: str = "top", shifts=None, split=None):
        if kind not in ("top", "pot"):
            raise InputError(f"unknown module order {kind!r}")
        self.ring_order = ring_order
        self.kind = kind
        self.shifts = tuple(shifts) if shifts else ()
        self.split = split
        self._cache: Dict[Term, tuple] = {}
        self.weights = ring_order.weights

    def signature(self) -> tuple:
        return (self.ring_order.tag, self.ring_order.weights, self.kind, self.shifts, self.split)

    def shift(self, c: int) -> int:
        return self.shifts[c] if c < len(self.shifts) else 0

    def degree(self, t: Term) -> int:
        return sum(map(int.__mul__, t[:-1], self.weights)) + self.shift(t[-1])

    def key(self, t: Term) -> tuple:
        k = self._cache.get(t)
        if k is not None:
            return k
        e, c = t[:-1], t[-1]
        ro = self.ring_order
        w = self.weights
        head: tuple = ()
        if self.split is not None:
            head = (0 if c < self.split else 1,)
        if ro.kind == "elim":
            b = ro.block
            pre = ro._grevlex(e[:b], w[:b])
            e_rest, w_rest = e[b:], w[b:]
        else:
            pre = ()
            e_rest, w_rest = e, w
        if ro.kind == "lex":
            main = tuple(-a for a in e_rest)
        else:
            main = (-(sum(map(int.__mul__, e_rest, w_rest)) + self.shift(c)),) + tuple(reversed(e_rest))
        if self.kind == "top":
            k = head + pre + main + (c,)
        else:
            k = head + pre + (c,) + main
        self._cache[t] = k
        return k


# ---------------------------------------------------------------------------
# low level vector helpers


def vec_lead(v: Vec, key) -> Term:
    return min(v, key=key)


def vec_monic(v: Vec, p: int, key) -> Vec:
    lt = min(v, key=key)
    inv = pow(v[lt], -1, p)
    if inv == 1:
        return v
    return {t: c * inv % p for t, c in v.items()}


def vec_scale_shift(v: Vec, shift: Term, c: int, p: int) -> Vec:
    """c * x^shift * v, where shift already ends with a 0 component entry."""
    return {tuple(map(add, t, shift)): a * c % p for t, a in v.items()}


def vec_add(u: Vec, v: Vec, p: int, c: int = 1) -> Vec:
    out = dict(u)
    for t, a in v.items():
        s = (out.get(t, 0) + c * a) % p
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def divides(a: Term, b: Term) -> bool:
    return a[-1] == b[-1] and all(map(ge, b, a))


def term_lcm(a: Term, b: Term) -> Term:
    return tuple(map(max, a[:-1], b[:-1])) + (a[-1],)


def term_quotient(big: Term, small: Term) -> Term:
    return tuple(map(sub, big[:-1], small[:-1])) + (0,)


class _Reducers:
    """Leading terms of the current basis, bucketed by component."""

    def __init__(self):
        self.by_comp: Dict[int, List[Tuple[Term, int]]] = {}

    def add(self, lt: Term, idx: int):
        self.by_comp.setdefault(lt[-1], []).append((lt, idx))

    def remove(self, idxs: set):
        for c in self.by_comp:
            self.by_comp[c] = [x for x in self.by_comp[c] if x[1] not in idxs]

    def find(self, t: Term) -> Optional[int]:
        bucket = self.by_comp.get(t[-1])
        if bucket:
            for lt, idx in bucket:
                if all(map(ge, t, lt)):
                    return idx
        return None


def reduce_vec(f: Vec, polys: List[Vec], lts: List[Term], reducers: _Reducers, key, p: int, full=True) -> Vec:
    """Normal form of ``f``; ``polys`` are monic with leading terms ``lts``."""
    if not f:
        return {}
    f = dict(f)
    heap = [(key(t), t) for t in f]
    heapq.heapify(heap)
    rem: Vec = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.get(t)
        if c is None:
            continue
        idx = reducers.find(t)
        if idx is None:
            rem[t] = f.pop(t)
            if not full:
                for u, a in f.items():
                    rem[u] = a
                return rem
            continue
        shift = term_quotient(t, lts[idx])
        for s, a in polys[idx].items():
            u = tuple(map(add, s, shift))
            old = f.get(u)
            if old is None:
                f[u] = (-c * a) % p
                heapq.heappush(heap, (key(u), u))
            else:
                nv = (old - c * a) % p
                if nv:
                    f[u] = nv
                else:
                    del f[u]
    return rem


class GBEngine:
    """Incremental Buchberger with Gebauer-Moeller pair elimination.

    Pairs are selected by the degree of their lcm, then by the term order,
    then by index, which makes the run deterministic.
    """

    def __init__(self, order: ModuleOrder, p: int, rank1: bool = False, degree_bound: int = DEFAULT_DEGREE_BOUND):
        self.order = order
        self.key = order.key
        self.p = p
        self.rank1 = rank1
        self.degree_bound = degree_bound
        self.polys: List[Vec] = []
        self.lts: List[Term] = []
        self.G: List[int] = []
        self.pairs: list = []
        self.reducers = _Reducers()

    def reduce(self, f: Vec) -> Vec:
        return reduce_vec(f, self.polys, self.lts, self.reducers, self.key, self.p)

    def _pair_entry(self, i: int, j: int):
        lcm = term_lcm(self.lts[i], self.lts[j])
        return (self.order.degree(lcm), self.key(lcm), i, j, lcm)

    def _coprime(self, i: int, j: int) -> bool:
        if not self.rank1:
            return False
        a, b = self.lts[i], self.lts[j]
        return not any(x and y for x, y in zip(a[:-1], b[:-1]))

    def _insert(self, h: Vec):
        lt = min(h, key=self.key)
        if self.order.degree(lt) > self.degree_bound:
            raise ResourceError(
                f"degree bound {self.degree_bound} exceeded", partial=self.current_basis()
            )
        if len(self.polys) > MAX_BASIS_SIZE:
            raise ResourceError("basis size bound exceeded", partial=self.current_basis())
        hi = len(self.polys)
        self.polys.append(h)
        self.lts.append(lt)
        lcm_of = {}
        same = [g for g in self.G if self.lts[g][-1] == lt[-1]]
        for g in same:
            lcm_of[g] = term_lcm(lt, self.lts[g])
        C = list(same)
        D: List[int] = []
        while C:
            g1 = C.pop(0)
            L1 = lcm_of[g1]
            if self._coprime(hi, g1) or (
                not any(divides(lcm_of[g2], L1) for g2 in C) and not any(divides(lcm_of[g2], L1) for g2 in D)
            ):
                D.append(g1)
        E = [g for g in D if not self._coprime(hi, g)]
        kept = []
        for entry in self.pairs:
            i, j, L = entry[2], entry[3], entry[4]
            if (
                L[-1] == lt[-1]
                and divides(lt, L)
                and term_lcm(self.lts[i], lt) != L
                and term_lcm(lt, self.lts[j]) != L
            ):
                continue
            kept.append(entry)
        kept.extend(self._pair_entry(g, hi) for g in E)
        heapq.heapify(kept)
        self.pairs = kept
        removed = {g for g in self.G if divides(lt, self.lts[g])}
        if removed:
            self.G = [g for g in self.G if g not in removed]
            self.reducers.remove(removed)
        self.G.append(hi)
        self.reducers.add(lt, hi)

    def add(self, f: Vec):
        h = self.reduce(f)
        if h:
            self._insert(vec_monic(h, self.p, self.key))

    def run(self):
        p = self.p
        while self.pairs:
            _, _, i, j, L = heapq.heappop(self.pairs)
            s = vec_scale_shift(self.polys[i], term_quotient(L, self.lts[i]), 1, p)
            s = vec_add(s, vec_scale_shift(self.polys[j], term_quotient(L, self.lts[j]), 1, p), p, -1)
            h = self.reduce(s)
            if h:
                self._insert(vec_monic(h, p, self.key))

    def current_basis(self) -> List[Vec]:
        return [self.polys[g] for g in self.G]

    def reduced_basis(self) -> List[Vec]:
        out = []
        for g in self.G:
            v = self.polys[g]
            lt = self.lts[g]
            tail = dict(v)
            c = tail.pop(lt)
            red = self.reduce(tail)
            red[lt] = c
            out.append(red)
        out.sort(key=lambda v: self.key(min(v, key=self.key)))
        return out


# ---------------------------------------------------------------------------
# GB cache (in memory, optionally backed by a disk store set by the CLI)

_cache_lock = threading.Lock()
_gb_cache: Dict[tuple, List[Vec]] = {}
_disk_cache = None
_CACHE_LIMIT = 20000


def set_disk_cache(store) -> None:
    """Install an object with ``get(hexkey)``/``put(hexkey, basis)``; ``None`` disables."""
    global _disk_cache
    _disk_cache = store


def clear_cache() -> None:
    with _cache_lock:
        _gb_cache.clear()


def _canonical(gens: Iterable[Vec]) -> tuple:
    return tuple(sorted({tuple(sorted(g.items())) for g in gens}))


def compute_gb(
    gens: Sequence[Vec],
    order: ModuleOrder,
    p: int,
    nvars: int,
    rank1: bool = False,
    degree_bound: int = DEFAULT_DEGREE_BOUND,
) -> List[Vec]:
    """Reduced Groebner basis of the submodule spanned by ``gens`` (cached)."""
    key = order.key
    clean = [vec_monic(g, p, key) for g in gens if g]
    canon = _canonical(clean)
    ck = (p, nvars, order.signature(), canon)
    with _cache_lock:
        hit = _gb_cache.get(ck)
    if hit is not None:
        return hit
    hexkey = None
    if _disk_cache is not None:
        hexkey = hashlib.sha256(repr(ck).encode()).hexdigest()
        stored = _disk_cache.get(hexkey)
        if stored is not None:
            with _cache_lock:
                _gb_cache[ck] = stored
            return stored
    eng = GBEngine(order, p, rank1=rank1, degree_bound=degree_bound)
    todo = sorted((dict(g) for g in canon), key=lambda v: (order.degree(min(v, key=key)), key(min(v, key=key))))
    for g in todo:
        eng.add(g)
        eng.run()
    basis = eng.reduced_basis()
    with _cache_lock:
        if len(_gb_cache) > _CACHE_LIMIT:
            _gb_cache.clear()
        _gb_cache[ck] = basis
    if _disk_cache is not None:
        _disk_cache.put(hexkey, basis)
    return basis


class _BasisReducer:
    """Normal forms against a fixed reduced basis."""

    def __init__(self, basis: List[Vec], order: ModuleOrder, p: int):
        self.basis = basis
        self.order = order
        self.p = p
        self.lts = [min(b, key=order.key) for b in basis]
        self.reducers = _Reducers()
        for i, lt in enumerate(self.lts):
            self.reducers.add(lt, i)

    def reduce(self, f: Vec) -> Vec:
        return reduce_vec(f, self.basis, self.lts, self.reducers, self.order.key, self.p)


# ---------------------------------------------------------------------------
# dimension of monomial modules


def monomial_dimension(monomials: Iterable[Sequence[int]], nvars: int) -> int:
    """Krull dimension of S/(monomials); -1 stands for the unit ideal (empty scheme)."""
    supports = []
    for m in monomials:
        s = frozenset(i for i, a in enumerate(m) if a)
        if not s:
            return -1
        supports.append(s)
    supports = [s for s in set(supports) if not any(o < s for o in supports)]
    best = 0
    # largest independent set: a subset U of variables containing no support.
    for size in range(nvars, 0, -1):
        for U in combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
        if size <= best:
            break
    return best


NEG_INF = float("-inf")


def _dim_or_neginf(d: int):
    return NEG_INF if d < 0 else d


# ---------------------------------------------------------------------------
# conversions between Polynomial lists and Vec


def poly_to_vec(f: Polynomial, comp: int = 0) -> Vec:
    return {e + (comp,): c for e, c in f.terms.items()}


def vec_to_poly(v: Vec, ring: PolyRing) -> Polynomial:
    return Polynomial(ring, {t[:-1]: c for t, c in v.items()}, _clean=False)


def polys_to_vec(entries: Sequence[Polynomial]) -> Vec:
    out: Vec = {}
    for comp, f in enumerate(entries):
        for e, c in f.terms.items():
            out[e + (comp,)] = c
    return out


def vec_to_polys(v: Vec, ring: PolyRing, rank: int) -> List[Polynomial]:
    parts: List[Dict] = [dict() for _ in range(rank)]
    for t, c in v.items():
        parts[t[-1]][t[:-1]] = c
    return [Polynomial(ring, d, _clean=False) for d in parts]


def vec_mul_poly(v: Vec, f: Polynomial, p: int) -> Vec:
    out: Vec = {}
    for t, a in v.items():
        for e, b in f.terms.items():
            u = tuple(map(add, t[:-1], e)) + (t[-1],)
            out[u] = (out.get(u, 0) + a * b) % p
    return {t: c for t, c in out.items() if c}


def embed_vec(v: Vec, nvars_new: int, positions: Sequence[int]) -> Vec:
    out = {}
    for t, c in v.items():
        e = [0] * nvars_new
        for i, a in enumerate(t[:-1]):
            e[positions[i]] += a
        out[tuple(e) + (t[-1],)] = c
    return out


def aux_ring(ring: PolyRing, count: int = 1, names: Sequence[str] | None = None) -> PolyRing:
    """``ring`` with ``count`` new leading variables and an order eliminating them."""
    names = list(names) if names else [f"{AUX}{i}" for i in range(count)]
    return PolyRing(tuple(names) + ring.variables, ring.field, (1,) * count + ring.weights, "elim", count)


def _shift_positions(ring: PolyRing, count: int) -> List[int]:
    return list(range(count, count + ring.nvars))


# ---------------------------------------------------------------------------
# public classes


class GroebnerBasis:
    """A reduced Groebner basis of an ideal: monic elements sorted by head term (largest first)."""

    def __init__(self, ring: PolyRing, elements: List[Polynomial]):
        self.ring = ring
        self.order_tag = ring.order.tag
        self.elements = elements
        self._mo = ModuleOrder(ring.order)
        self._reducer = _BasisReducer([poly_to_vec(g) for g in elements], self._mo, ring.p)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(map(str, self.elements)) + "])"

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise InputError("polynomial and basis live in different rings")
        return vec_to_poly(self._reducer.reduce(poly_to_vec(f)), self.ring)

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        return [g.lm() for g in self.elements]

    def is_unit(self) -> bool:
        return any(g.is_constant() for g in self.elements)


def groebner_basis(ideal: "Ideal", order: str | None = None, block: int = 0) -> GroebnerBasis:
    """Reduced GB of ``ideal`` under its ring's order or under ``order`` if given."""
    if order is None:
        return ideal.gb()
    ring = ideal.ring.with_order(order, block)
    return Ideal(ring, [g.embed(ring, range(ring.nvars)) for g in ideal.generators]).gb()


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ValueError when g does not divide f."""
    ring = f.ring
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    q = ring.zero()
    r = f
    glm, ginv = g.lm(), ring.field.inv(g.lc())
    while not r.is_zero():
        lm = r.lm()
        if not all(a >= b for a, b in zip(lm, glm)):
            raise ValueError("not an exact division")
        e = tuple(a - b for a, b in zip(lm, glm))
        c = r.terms[lm] * ginv
        q = q + ring.monomial(e, c)
        r = r - g.mul_term(e, c)
    return q


class Ideal:
    """Ideal of a polynomial ring given by generators; GB computed lazily and cached."""

    def __init__(self, ring: PolyRing, generators: Iterable[Polynomial | int | str] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            elif isinstance(g, int):
                g = ring.constant(g)
            if g.ring != ring:
                raise InputError("generator lives in a different ring")
            if g and g not in gens:
                gens.append(g)
        self.generators: List[Polynomial] = gens
        self._gb: Optional[GroebnerBasis] = None

    def __repr__(self):
        return "Ideal(" + ", ".join(map(str, self.generators)) + ")"

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            mo = ModuleOrder(self.ring.order)
            basis = compute_gb([poly_to_vec(g) for g in self.generators], mo, self.ring.p, self.ring.nvars, rank1=True)
            self._gb = GroebnerBasis(self.ring, [vec_to_poly(v, self.ring) for v in basis])
        return self._gb

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced GB."""
        out = Ideal(self.ring, self.gb().elements)
        out._gb = self._gb
        return out

    # predicates ---------------------------------------------------------
    def contains(self, f: Polynomial) -> bool:
        return self.gb().normal_form(f).is_zero()

    __contains__ = contains

    def is_unit(self) -> bool:
        return self.gb().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.generators)

    def __le__(self, other: "Ideal") -> bool:
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.issubset(other) and other.issubset(self)

    __hash__ = None

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def radical_contains(self, f: Polynomial) -> bool:
        """f in rad(I), tested as 1 in (I, 1 - u f)."""
        T = aux_ring(self.ring)
        pos = _shift_positions(self.ring, 1)
        u = T.var(0)
        gens = [g.embed(T, pos) for g in self.generators] + [T.one() - u * f.embed(T, pos)]
        return Ideal(T, gens).is_unit()

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Ideal"):
        if other.ring != self.ring:
            raise InputError("ideals live in different rings")

    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.ring, [f * g for f in self.generators for g in other.generators])

    def __pow__(self, n: int) -> "Ideal":
        if n < 0:
            raise InputError("ideal powers need n >= 0")
        out = Ideal(self.ring, [self.ring.one()])
        for _ in range(n):
            out = (out * self).reduced()
        return out

    def intersect(self, other: "Ideal") -> "Ideal":
        """elim_t(t I + (1 - t) J)."""
        self._check(other)
        if not self.generators or not other.generators:
            return Ideal(self.ring, [])
        T = aux_ring(self.ring)
        pos = _shift_positions(self.ring, 1)
        t = T.var(0)
        gens = [t * g.embed(T, pos) for g in self.generators]
        gens += [(T.one() - t) * g.embed(T, pos) for g in other.generators]
        return Ideal(T, gens).eliminate(1, self.ring)

    def quotient_element(self, g: Polynomial) -> "Ideal":
        if g.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        inter = self.intersect(Ideal(self.ring, [g]))
        return Ideal(self.ring, [exact_divide(h, g) for h in inter.generators]).reduced()

    def quotient(self, other: "Ideal | Polynomial") -> "Ideal":
        if isinstance(other, Polynomial):
            return self.quotient_element(other)
        self._check(other)
        out = Ideal(self.ring, [self.ring.one()])
        for g in other.generators:
            out = out.intersect(self.quotient_element(g))
        return out.reduced()

    def saturate_element(self, g: Polynomial) -> "Ideal":
        """I : g^infinity = (I, 1 - u g) intersected with the original ring."""
        if g.is_zero():
            return Ideal(self.ring, [self.ring.one()])
        T = aux_ring(self.ring)
        pos = _shift_positions(self.ring, 1)
        u = T.var(0)
        gens = [h.embed(T, pos) for h in self.generators] + [T.one() - u * g.embed(T, pos)]
        return Ideal(T, gens).eliminate(1, self.ring)

    def saturate(self, other: "Ideal | Polynomial") -> "Ideal":
        if isinstance(other, Polynomial):
            return self.saturate_element(other)
        self._check(other)
        out = None
        for g in other.generators:
            s = self.saturate_element(g)
            out = s if out is None else out.intersect(s)
        if out is None:  # J = 0, so J^n = 0 and everything multiplies into I
            return Ideal(self.ring, [self.ring.one()])
        return out.reduced()

    def saturate_iterated(self, other: "Ideal") -> "Ideal":
        """I : J^infinity by iterating I : J until it stabilizes."""
        cur = self.reduced()
        for _ in range(MAX_SATURATION_STEPS):
            nxt = cur.quotient(other)
            if nxt == cur:
                return cur
            cur = nxt
        raise ResourceError("saturation did not stabilize", partial=cur)

    def eliminate(self, count: int, target: PolyRing | None = None) -> "Ideal":
        """Drop the first ``count`` variables (the ring order must eliminate them)."""
        ring = self.ring
        if ring.order.kind == "elim" and ring.order.block == count:
            G = self.gb()
        else:
            ring = ring.with_order("elim", count)
            G = Ideal(ring, [g.embed(ring, range(ring.nvars)) for g in self.generators]).gb()
        if target is None:
            target = PolyRing(ring.variables[count:], ring.field, ring.weights[count:])
        keep = []
        for g in G.elements:
            if all(not any(e[:count]) for e in g.terms):
                keep.append(Polynomial(target, {e[count:]: c for e, c in g.terms.items()}, _clean=False))
        return Ideal(target, keep)

    def dimension(self):
        """Krull dimension of S/I; ``-inf`` for the unit ideal."""
        G = self.gb()
        return _dim_or_neginf(monomial_dimension(G.leading_monomials(), self.ring.nvars))


def ideal_ops(op: str, I: Ideal, J=None) -> Ideal:
    """Dispatch for sum | product | power | intersection | quotient | saturation | eliminate."""
    if op == "sum":
        return I + J
    if op == "product":
        return I * J
    if op == "power":
        return I ** int(J)
    if op == "intersection":
        return I.intersect(J)
    if op == "quotient":
        return I.quotient(J)
    if op == "saturation":
        return I.saturate(J)
    if op == "eliminate":
        return I.eliminate(int(J))
    raise InputError(f"unknown ideal operation {op!r}")


def dimension(I: Ideal):
    return I.dimension()


def unit_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, [ring.one()])


def irrelevant_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring, ring.gens())


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    out = ideals[0]
    for I in ideals[1:]:
        out = out.intersect(I)
    return out.reduced()


def product_all(ring: PolyRing, ideals: Sequence[Ideal]) -> Ideal:
    out = unit_ideal(ring)
    for I in ideals:
        if I.is_unit():
            continue
        out = (out * I).reduced()
    return out


# ---------------------------------------------------------------------------
# submodules of free modules


class Submodule:
    """Submodule of S^rank spanned by ``gens`` (Vec dicts)."""

    def __init__(self, ring: PolyRing, rank: int, gens: Iterable[Vec], kind: str = "top", shifts=None, split=None):
        self.ring = ring
        self.rank = rank
        self.gens: List[Vec] = [dict(g) for g in gens if g]
        self.order = ModuleOrder(ring.order, kind, shifts, split)
        self._basis: Optional[List[Vec]] = None
        self._reducer: Optional[_BasisReducer] = None

    @classmethod
    def from_columns(cls, ring: PolyRing, rank: int, columns: Iterable[Sequence[Polynomial]], **kw) -> "Submodule":
        return cls(ring, rank, [polys_to_vec(c) for c in columns], **kw)

    def basis(self) -> List[Vec]:
        if self._basis is None:
            self._basis = compute_gb(self.gens, self.order, self.ring.p, self.ring.nvars, rank1=self.rank == 1)
        return self._basis

    def reduce(self, v: Vec) -> Vec:
        if self._reducer is None:
            self._reducer = _BasisReducer(self.basis(), self.order, self.ring.p)
        return self._reducer.reduce(v)

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def contains_module(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Submodule") -> bool:
        return self.contains_module(other) and other.contains_module(self)

    def is_whole(self) -> bool:
        """True when the submodule is all of S^rank (quotient is zero)."""
        comps = {t[-1] for b in self.basis() for t in [min(b, key=self.order.key)] if not any(t[:-1])}
        return len(comps) == self.rank

    def leading_terms(self) -> List[Term]:
        key = self.order.key
        return [min(b, key=key) for b in self.basis()]

    def quotient_dimension(self):
        """Krull dimension of S^rank / N, computed from the leading-term module."""
        if self.rank == 0:
            return NEG_INF
        lts = self.leading_terms()
        best = -1
        for c in range(self.rank):
            d = monomial_dimension([t[:-1] for t in lts if t[-1] == c], self.ring.nvars)
            best = max(best, d)
        return _dim_or_neginf(best)

    def __add__(self, other: "Submodule") -> "Submodule":
        return Submodule(self.ring, self.rank, self.gens + other.gens, self.order.kind, self.order.shifts)
