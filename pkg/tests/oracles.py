"""Independent oracles used only by the test suite.

cech_oracle computes dim_k H^j_m(M)_d by linear algebra on the Koszul
cochain complex on x_1^k, ..., x_n^k (whose direct limit is the Cech
complex), increasing k until the table stops changing.
"""

from __future__ import annotations

import itertools

import numpy as np

from macaulayfy.algebra import monomials_of_degree
from macaulayfy.groebner import Ideal, ModuleOrder, ResourceError, _BasisReducer, compute_gb, divides
from macaulayfy.homology import ModulePresentation

MAX_WINDOW = 40


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = np.nonzero(a[r:, c])[0]
        if piv.size == 0:
            continue
        k = r + piv[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        nz = np.nonzero(col)[0]
        if nz.size:
            a[nz] = (a[nz] - np.outer(col[nz], a[r])) % p
        r += 1
    return r


class _GradedModule:
    """Graded pieces of F0/N via standard terms of a homogeneous GB."""

    def __init__(self, M: ModulePresentation):
        if not M.is_homogeneous():
            raise ValueError("the oracle needs a graded module")
        self.M = M
        self.ring = M.ring
        self.p = M.ring.p
        self.order = ModuleOrder(M.ring.order, "top", M.twists)
        basis = compute_gb(M.all_relations(), self.order, self.p, M.ring.nvars)
        key = self.order.key
        self.leads = [min(b, key=key) for b in basis]
        self.reducer = _BasisReducer(basis, self.order, self.p)
        self._pieces = {}

    def piece(self, e: int):
        if e not in self._pieces:
            terms = []
            for c in range(self.M.rank):
                d = e - self.M.twists[c]
                if d < 0:
                    continue
                for mono in monomials_of_degree(self.ring, d):
                    t = tuple(mono) + (c,)
                    if not any(lt[-1] == c and divides(lt, t) for lt in self.leads):
                        terms.append(t)
            self._pieces[e] = (terms, {t: i for i, t in enumerate(terms)})
        return self._pieces[e]

    def mult_matrix(self, e: int, i: int, k: int) -> np.ndarray:
        """Matrix of x_i^k: M_e -> M_{e + k w_i} in standard-term coordinates."""
        src, _ = self.piece(e)
        tgt, index = self.piece(e + k * self.ring.weights[i])
        mat = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for col, t in enumerate(src):
            u = list(t)
            u[i] += k
            nf = self.reducer.reduce({tuple(u): 1})
            for term, c in nf.items():
                mat[index[term], col] = c
        return mat


def koszul_table(G: _GradedModule, k: int, lo: int, hi: int) -> dict:
    """dim H^j(x^k; M)_d for all j and d in [lo, hi]."""
    n = G.ring.nvars
    w = G.ring.weights
    subsets = {j: list(itertools.combinations(range(n), j)) for j in range(n + 1)}
    table = {}
    for d in range(lo, hi + 1):
        dims = {}
        offsets = {}
        for j in range(n + 1):
            off = 0
            for s in subsets[j]:
                e = d + k * sum(w[i] for i in s)
                offsets[(j, s)] = (off, e)
                off += len(G.piece(e)[0])
            dims[j] = off
        ranks = {}
        for j in range(n):
            mat = np.zeros((dims[j + 1], dims[j]), dtype=np.int64)
            for s in subsets[j]:
                c0, e = offsets[(j, s)]
                if not len(G.piece(e)[0]):
                    continue
                for i in range(n):
                    if i in s:
                        continue
                    t = tuple(sorted(s + (i,)))
                    r0, _ = offsets[(j + 1, t)]
                    sign = -1 if sum(1 for l in s if l < i) % 2 else 1
                    block = G.mult_matrix(e, i, k) * sign
                    mat[r0 : r0 + block.shape[0], c0 : c0 + block.shape[1]] += block
            ranks[j] = rank_mod_p(mat, G.p) if mat.size else 0
        for j in range(n + 1):
            table[(j, d)] = dims[j] - ranks.get(j, 0) - ranks.get(j - 1, 0)
    return table


def cech_table(M: ModulePresentation, window=(-4, 4), k_max: int = 14) -> dict:
    """{(j, d): dim H^j_m(M)_d} on the window."""
    lo, hi = window
    if hi - lo > MAX_WINDOW:
        raise ResourceError("degree window too large for the oracle")
    G = _GradedModule(M)
    prev = None
    streak = 0
    for k in range(1, k_max + 1):
        cur = koszul_table(G, k, lo, hi)
        if cur == prev:
            streak += 1
            if streak >= 2 and k > max(abs(lo), abs(hi)):
                return cur
        else:
            streak = 0
        prev = cur
    raise ResourceError("Koszul tables did not stabilize")


def cech_oracle(M: ModulePresentation, j: int, window=(-4, 4)) -> list:
    """Dimensions of H^j_m(M)_d for d = lo..hi."""
    t = cech_table(M, window)
    return [t[(j, d)] for d in range(window[0], window[1] + 1)]


# ---------------------------------------------------------------------------
# Jacobian criterion


def _det(mat):
    n = len(mat)
    if n == 0:
        raise ValueError
    if n == 1:
        return mat[0][0]
    total = None
    for c in range(n):
        minor = [row[:c] + row[c + 1 :] for row in mat[1:]]
        term = mat[0][c] * _det(minor)
        if c % 2:
            term = -term
        total = term if total is None else total + term
    return total


def jacobian_regular(ideal: Ideal) -> bool:
    """Spec(P/I) regular: I + (c x c minors of the Jacobian) = (1), c = codim I.

    Assumes equidimensional I; the empty scheme counts as regular.
    """
    if ideal.is_unit():
        return True
    ring = ideal.ring
    n = ring.nvars
    c = n - ideal.dimension()
    gens = [g for g in ideal.reduced().generators if not g.is_zero()]
    if c == 0:
        return not gens
    jac = [[g.derivative(i) for i in range(n)] for g in gens]
    minors = []
    for rows in itertools.combinations(range(len(gens)), c):
        for cols in itertools.combinations(range(n), c):
            m = _det([[jac[r][q] for q in cols] for r in rows])
            if not m.is_zero():
                minors.append(m)
    return Ideal(ring, gens + minors).is_unit()


def complete_intersection(ideal: Ideal) -> bool:
    """I generated by codim I of its reduced generators (hence CM)."""
    if ideal.is_unit():
        return True
    ring = ideal.ring
    c = ring.nvars - ideal.dimension()
    gens = ideal.reduced().generators
    if c == 0:
        return not gens
    for sub in itertools.combinations(gens, c):
        J = Ideal(ring, list(sub))
        if J == ideal:
            return True
    return False
