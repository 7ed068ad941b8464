"""Exact arithmetic over prime fields: orders, rings and sparse polynomials.

Monomials are exponent tuples. Every monomial order exposes a *descending
key*: ``order.key(e) < order.key(f)`` exactly when ``e`` is the larger
monomial, so ``min(..., key=order.key)`` picks the leading monomial and a
plain ``sorted`` lists terms from largest to smallest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]

DEFAULT_CHARACTERISTIC = 32003
MAX_EXPONENT = 1 << 15


class InputError(ValueError):
    """Malformed or inconsistent input (mismatched rings, bad lengths, ...)."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_CHARACTERISTIC

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise InputError(f"characteristic {self.p!r} is not a prime")
        if self.p >= 1 << 31:
            raise InputError("characteristic must fit in a machine word (< 2^31)")

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        # extended Euclid
        r0, r1, s0, s1 = self.p, a, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return s0 % self.p

    def symmetric(self, a: int) -> int:
        """Representative of ``a`` in (-p/2, p/2]."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a

    def __str__(self):
        return f"GF({self.p})"


class MonomialOrder:
    """grevlex, lex, or a two-block elimination order (grevlex in each block).

    ``elim`` orders carry the number of leading variables ``block`` that are
    eliminated, i.e. any monomial involving them beats every monomial that
    does not.
    """

    KINDS = ("grevlex", "lex", "elim")

    def __init__(self, kind: str, weights: Sequence[int], block: int = 0):
        if kind not in self.KINDS:
            raise InputError(f"unknown monomial order {kind!r}")
        if kind == "elim" and not 0 < block <= len(weights):
            raise InputError("elimination block must be a nonempty prefix of the variables")
        self.kind = kind
        self.weights = tuple(weights)
        self.block = block if kind == "elim" else 0
        self._cache: Dict[Exponent, tuple] = {}

    @property
    def tag(self) -> str:
        return f"elim{self.block}" if self.kind == "elim" else self.kind

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.kind, self.weights, self.block) == (other.kind, other.weights, other.block)
        )

    def __hash__(self):
        return hash((self.kind, self.weights, self.block))

    def __repr__(self):
        return f"MonomialOrder({self.tag!r}, weights={self.weights})"

    def _grevlex(self, e: Sequence[int], w: Sequence[int]) -> tuple:
        return (-sum(a * b for a, b in zip(e, w)),) + tuple(reversed(e))

    def key(self, e: Exponent) -> tuple:
        k = self._cache.get(e)
        if k is None:
            if self.kind == "grevlex":
                k = self._grevlex(e, self.weights)
            elif self.kind == "lex":
                k = tuple(-a for a in e)
            else:
                b = self.block
                k = self._grevlex(e[:b], self.weights[:b]) + self._grevlex(e[b:], self.weights[b:])
            self._cache[e] = k
        return k


def monomial_compare(a: Exponent, b: Exponent, ring: "PolyRing") -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    n = ring.nvars
    if len(a) != n or len(b) != n:
        raise InputError(f"exponent vectors must have length {n}")
    ka, kb = ring.order.key(tuple(a)), ring.order.key(tuple(b))
    if ka == kb:
        return 0
    return 1 if ka < kb else -1


class PolyRing:
    """Polynomial ring over a prime field with a fixed monomial order."""

    def __init__(
        self,
        variables: Sequence[str],
        field: PrimeField | int = DEFAULT_CHARACTERISTIC,
        weights: Sequence[int] | None = None,
        order: str = "grevlex",
        block: int = 0,
    ):
        if isinstance(field, int):
            field = PrimeField(field)
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputError("variable names must be distinct")
        for v in variables:
            if not v or not (v[0].isalpha() or v[0] == "_") or not all(c.isalnum() or c == "_" for c in v):
                raise InputError(f"invalid variable name {v!r}")
        weights = tuple(weights) if weights is not None else (1,) * len(variables)
        if len(weights) != len(variables):
            raise InputError("one weight per variable is required")
        if any((not isinstance(w, int)) or w <= 0 for w in weights):
            raise InputError("weights must be positive integers")
        self.field = field
        self.variables = variables
        self.weights = weights
        self.order = MonomialOrder(order, weights, block)
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}

    @property
    def p(self) -> int:
        return self.field.p

    def signature(self) -> tuple:
        return (self.field.p, self.variables, self.weights, self.order.tag)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field}, order={self.order.tag!r})"

    def with_order(self, order: str, block: int = 0) -> "PolyRing":
        return PolyRing(self.variables, self.field, self.weights, order, block)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}") from None

    # constructors -------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str | int) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, e: Sequence[int], c: int = 1) -> "Polynomial":
        e = tuple(e)
        if len(e) != self.nvars:
            raise InputError(f"exponent vector must have length {self.nvars}")
        c %= self.p
        return Polynomial(self, {e: c} if c else {})

    def degree_of(self, e: Exponent) -> int:
        return sum(a * w for a, w in zip(e, self.weights))

    def parse(self, text: str) -> "Polynomial":
        from .session import parse_polynomial

        return parse_polynomial(text, self)


class Polynomial:
    """Sparse polynomial; immutable once built.  ``terms`` maps exponent -> coefficient."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, int], _clean: bool = True):
        self.ring = ring
        if _clean:
            p = ring.p
            clean = {}
            for e, c in terms.items():
                c %= p
                if c:
                    if len(e) != ring.nvars:
                        raise InputError(f"exponent vector must have length {ring.nvars}")
                    clean[tuple(e)] = c
            terms = clean
        self.terms: Dict[Exponent, int] = dict(terms)
        self._hash = None

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def lm(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return min(self.terms, key=self.ring.order.key)

    def lc(self) -> int:
        return self.terms[self.lm()]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.ring.degree_of(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree_of(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_coefficient(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    def support(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lc())
        return self.scale(inv)

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise InputError("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {e: p - c for e, c in self.terms.items()}, _clean=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()}, _clean=False)

    def mul_term(self, e: Exponent, c: int = 1) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(map(int.__add__, m, e)): v * c % p for m, v in self.terms.items()},
            _clean=False,
        )

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: Dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(int.__add__, e1, e2))
                out[e] = (out.get(e, 0) + c1 * c2) % p
        for e in [e for e, c in out.items() if not c]:
            del out[e]
        if out and max(max(e) for e in out) > MAX_EXPONENT:
            raise OverflowError("exponent overflow")
        return Polynomial(self.ring, out, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # transformations ----------------------------------------------------
    def substitute(self, images: Sequence["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (all in ``target``)."""
        target = target or (images[0].ring if images else self.ring)
        if len(images) != self.ring.nvars:
            raise InputError("need one image per variable")
        powers: Dict[Tuple[int, int], Polynomial] = {}
        out = target.zero()
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, a in enumerate(e):
                if a:
                    key = (i, a)
                    if key not in powers:
                        powers[key] = images[i] ** a
                    term = term * powers[key]
            out = out + term
        return out

    def embed(self, target: PolyRing, positions: Sequence[int]) -> "Polynomial":
        """Relabel into ``target`` sending variable i to variable ``positions[i]``."""
        n = target.nvars
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, a in enumerate(e):
                new[positions[i]] += a
            out[tuple(new)] = c
        return Polynomial(target, out)

    def evaluate(self, point: Sequence[int]) -> int:
        p = self.ring.p
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                if a:
                    v = v * pow(x, a, p) % p
            total += v
        return total % p

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.ring, out)

    # printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        field = self.ring.field
        pieces = []
        for e, c in self.sorted_terms():
            c = field.symmetric(c)
            mono = "*".join(
                names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(e) if a
            )
            neg = c < 0
            c = abs(c)
            if not mono:
                body = str(c)
            elif c == 1:
                body = mono
            else:
                body = f"{c}*{mono}"
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Polynomial({self})"


def poly_arith(op: str, f: Polynomial, g: Polynomial | int) -> Polynomial:
    """``add``, ``mul`` or ``scale`` (g an integer for scale)."""
    if op == "add":
        f._check(g)
        return f + g
    if op == "mul":
        f._check(g)
        return f * g
    if op == "scale":
        if not isinstance(g, int):
            raise InputError("scale takes an integer factor")
        return f.scale(g)
    raise InputError(f"unknown polynomial operation {op!r}")


def homogeneous_components(f: Polynomial) -> Dict[int, Polynomial]:
    parts: Dict[int, Dict[Exponent, int]] = {}
    for e, c in f.terms.items():
        parts.setdefault(f.ring.degree_of(e), {})[e] = c
    return {d: Polynomial(f.ring, t, _clean=False) for d, t in parts.items()}


def monomials_of_degree(ring: PolyRing, d: int) -> list[Exponent]:
    """All exponent vectors of weighted degree ``d``, largest first."""
    out: list[Exponent] = []
    w = ring.weights
    n = ring.nvars

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        for a in range(left // w[i] + 1):
            acc.append(a)
            rec(i + 1, left - a * w[i], acc)
            acc.pop()

    if d >= 0:
        rec(0, d, [])
    out.sort(key=ring.order.key)
    return out
