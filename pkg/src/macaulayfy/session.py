"""Session files: a ring line, named ideals, named module presentations and settings.

```
ring GF(32003)[x,y,z,w] weights 1 1 1 1 order grevlex
ideal J = x*z, x*w, y*z, y*w
module M = coker [[x, y], [z, w]]
set quotient = J
```
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import InputError, PolyRing, Polynomial, PrimeField

SETTING_KEYS = ("quotient", "seed", "mode", "max-degree", "max-depth")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")


class SessionError(InputError):
    """Syntax or semantic problem at a 1-based (line, column)."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column

    def to_dict(self) -> dict:
        return {"message": self.message, "line": self.line, "column": self.column}


# ---------------------------------------------------------------------------
# tokens


@dataclass
class Token:
    kind: str  # int ident op end
    value: str
    col: int


def tokenize(text: str, line: int = 1, col0: int = 1) -> List[Token]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            break
        m = _INT.match(text, i)
        if m:
            out.append(Token("int", m.group(), col0 + i))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            out.append(Token("ident", m.group(), col0 + i))
            i = m.end()
            continue
        if ch in "+-*/^()[],=":
            out.append(Token("op", ch, col0 + i))
            i += 1
            continue
        raise SessionError(f"unexpected character {ch!r}", line, col0 + i)
    out.append(Token("end", "", col0 + len(text.rstrip())))
    return out


class _Parser:
    def __init__(self, tokens: List[Token], ring: Optional[PolyRing], line: int):
        self.toks = tokens
        self.pos = 0
        self.ring = ring
        self.line = line

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "end":
            self.pos += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise SessionError(msg, self.line, tok.col)

    def expect(self, value: str) -> Token:
        t = self.peek()
        if t.value != value or t.kind not in ("op", "ident"):
            shown = t.value or "end of line"
            self.error(f"expected {value!r}, found {shown!r}")
        return self.next()

    def at(self, value: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.value == value

    # poly := ['-'|'+'] term (('+'|'-') term)*
    def poly(self) -> Polynomial:
        ring = self.ring
        sign = 1
        if self.at("-") or self.at("+"):
            sign = -1 if self.next().value == "-" else 1
        acc = self.product()
        if sign < 0:
            acc = -acc
        while self.at("+") or self.at("-"):
            op = self.next().value
            rhs = self.product()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def product(self) -> Polynomial:
        acc = self.power()
        while self.at("*") or self.at("/"):
            op = self.next()
            if op.value == "*":
                acc = acc * self.power()
            else:
                den = self.peek()
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    self.error("division only by a nonzero integer constant", den)
                acc = acc.scale(self.ring.field.inv(d.constant_coefficient()))
        return acc

    def power(self) -> Polynomial:
        base = self.atom()
        if self.at("^"):
            self.next()
            t = self.peek()
            if t.kind != "int":
                self.error("exponent must be a non-negative integer")
            self.next()
            e = int(t.value)
            if e > 10000:
                self.error("exponent too large", t)
            base = base**e
        return base

    def atom(self) -> Polynomial:
        ring = self.ring
        t = self.peek()
        if t.kind == "int":
            self.next()
            return ring.constant(int(t.value))
        if t.kind == "ident":
            if t.value not in ring.variables:
                self.error(f"unknown variable {t.value}", t)
            self.next()
            return ring.var(t.value)
        if self.at("("):
            self.next()
            f = self.poly()
            self.expect(")")
            return f
        if self.at("-"):
            self.next()
            return -self.power()
        shown = t.value or "end of line"
        self.error(f"expected a polynomial, found {shown!r}")

    def poly_list(self, closer: str | None = None) -> List[Polynomial]:
        if closer is not None and self.at(closer):
            return []
        out = [self.poly()]
        while self.at(","):
            self.next()
            out.append(self.poly())
        return out

    def end(self):
        t = self.peek()
        if t.kind != "end":
            self.error(f"unexpected {t.value!r}")


def parse_polynomial(text: str, ring: PolyRing, line: int = 1, column: int = 1) -> Polynomial:
    p = _Parser(tokenize(text, line, column), ring, line)
    f = p.poly()
    p.end()
    return f


# ---------------------------------------------------------------------------
# sessions


@dataclass
class SessionFile:
    ring: PolyRing
    ideals: Dict[str, List[Polynomial]] = field(default_factory=dict)
    modules: Dict[str, List[List[Polynomial]]] = field(default_factory=dict)
    module_ranks: Dict[str, int] = field(default_factory=dict)
    settings: Dict[str, str] = field(default_factory=dict)
    lines: Dict[str, int] = field(default_factory=dict)

    def ideal(self, name: str):
        from .groebner import Ideal

        if name not in self.ideals:
            raise InputError(f"unknown ideal {name}")
        return Ideal(self.ring, self.ideals[name])

    def quotient_name(self) -> Optional[str]:
        if "quotient" in self.settings:
            return self.settings["quotient"]
        return next(iter(self.ideals), None)

    def quotient_ideal(self):
        name = self.quotient_name()
        return self.ideal(name) if name else None

    def module(self, name: str):
        """The named module, regarded over S/J for the session quotient J."""
        from .homology import ModulePresentation

        if name not in self.modules:
            raise InputError(f"unknown module {name}")
        rows = self.modules[name]
        rank = self.module_ranks[name]
        M = ModulePresentation.from_matrix(self.ring, rows, quotient=self.quotient_ideal(), name=name)
        if rank and not rows[0]:
            M = ModulePresentation(self.ring, rank, [], None, self.quotient_ideal(), name)
        return M

    def canonical(self) -> tuple:
        return (
            self.ring.signature(),
            tuple((k, tuple(str(g) for g in v)) for k, v in self.ideals.items()),
            tuple((k, self.module_ranks[k], tuple(tuple(str(g) for g in r) for r in v)) for k, v in self.modules.items()),
            tuple(sorted(self.settings.items())),
        )

    def __eq__(self, other):
        return isinstance(other, SessionFile) and self.canonical() == other.canonical()


def _parse_ring(body: str, line: int, offset: int) -> PolyRing:
    toks = tokenize(body, line, offset)
    ps = _Parser(toks, None, line)
    t = ps.next()
    if t.kind != "ident" or t.value not in ("GF", "ZZ", "QQ"):
        raise SessionError("expected a field GF(<p>)", line, t.col)
    if t.value != "GF":
        raise SessionError(f"unsupported field {t.value}; only prime fields GF(p)", line, t.col)
    ps.expect("(")
    pt = ps.next()
    if pt.kind != "int":
        raise SessionError("expected the characteristic", line, pt.col)
    ps.expect(")")
    try:
        fld = PrimeField(int(pt.value))
    except InputError as exc:
        raise SessionError(f"unsupported field: {exc}", line, pt.col) from None
    ps.expect("[")
    names = []
    while True:
        v = ps.next()
        if v.kind != "ident":
            raise SessionError("expected a variable name", line, v.col)
        if v.value.startswith("__"):
            raise SessionError(f"reserved variable name {v.value}", line, v.col)
        if v.value in names:
            raise SessionError(f"duplicate variable {v.value}", line, v.col)
        names.append(v.value)
        if ps.at(","):
            ps.next()
            continue
        ps.expect("]")
        break
    weights = None
    order = "grevlex"
    while ps.peek().kind != "end":
        kw = ps.next()
        if kw.kind == "ident" and kw.value == "weights":
            weights = []
            while ps.peek().kind == "int" or ps.at(","):
                w = ps.next()
                if w.kind == "int":
                    weights.append(int(w.value))
            if len(weights) != len(names):
                raise SessionError(f"expected {len(names)} weights, found {len(weights)}", line, kw.col)
            if any(w <= 0 for w in weights):
                raise SessionError("weights must be positive", line, kw.col)
        elif kw.kind == "ident" and kw.value == "order":
            o = ps.next()
            if o.value not in ("grevlex", "lex"):
                raise SessionError(f"unknown order {o.value!r}", line, o.col)
            order = o.value
        else:
            raise SessionError(f"unexpected {kw.value!r} in ring declaration", line, kw.col)
    return PolyRing(tuple(names), fld, tuple(weights) if weights else None, order)


def _split_def(text: str, keyword: str, line: int) -> Tuple[str, str, int, int]:
    """'<keyword> NAME = rest' -> (name, rest, name column, rest column)."""
    m = re.match(rf"\s*{keyword}\s+([A-Za-z_][A-Za-z0-9_-]*)\s*(=)?", text)
    if not m:
        raise SessionError(f"expected a name after {keyword!r}", line, len(keyword) + 2)
    if not m.group(2):
        raise SessionError("expected '='", line, m.end() + 1)
    return m.group(1), text[m.end() :], m.start(1) + 1, m.end() + 1


def parse_session(text: str) -> SessionFile:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SessionError("input is not UTF-8", 1, exc.start + 1) from None
    session: Optional[SessionFile] = None
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        if not stripped.strip():
            continue
        word = stripped.split()[0]
        if session is None and word != "ring":
            raise SessionError("ring declaration required", ln, 1)
        if word == "ring":
            if session is not None:
                raise SessionError("ring declared twice", ln, 1)
            start = stripped.index("ring") + 4
            session = SessionFile(_parse_ring(stripped[start:], ln, start + 1))
            continue
        if word == "ideal":
            name, rest, ncol, rcol = _split_def(stripped, "ideal", ln)
            _check_fresh(session, name, ln, ncol)
            ps = _Parser(tokenize(rest, ln, rcol), session.ring, ln)
            gens = ps.poly_list()
            ps.end()
            session.ideals[name] = gens
            session.lines[name] = ln
            continue
        if word == "module":
            name, rest, ncol, rcol = _split_def(stripped, "module", ln)
            _check_fresh(session, name, ln, ncol)
            rows = _parse_coker(rest, session.ring, ln, rcol)
            session.modules[name] = rows
            session.module_ranks[name] = len(rows)
            session.lines[name] = ln
            continue
        if word == "set":
            key, rest, kcol, rcol = _split_def(stripped, "set", ln)
            if key not in SETTING_KEYS:
                raise SessionError(f"unknown setting {key!r}", ln, kcol)
            value = rest.strip()
            if not value:
                raise SessionError("missing value", ln, rcol)
            if key == "quotient" and value not in session.ideals:
                raise SessionError(f"unknown ideal {value}", ln, rcol + rest.index(value))
            session.settings[key] = value
            continue
        raise SessionError(f"unknown declaration {word!r}", ln, stripped.index(word) + 1)
    if session is None:
        raise SessionError("ring declaration required", 1, 1)
    return session


def _check_fresh(session: SessionFile, name: str, line: int, col: int):
    if name in session.ideals or name in session.modules:
        raise SessionError(f"name {name} already defined", line, col)


def _parse_coker(rest: str, ring: PolyRing, line: int, col: int) -> List[List[Polynomial]]:
    ps = _Parser(tokenize(rest, line, col), ring, line)
    kw = ps.next()
    if kw.kind != "ident" or kw.value != "coker":
        raise SessionError("expected 'coker'", line, kw.col)
    ps.expect("[")
    rows: List[List[Polynomial]] = []
    if not ps.at("]"):
        while True:
            start = ps.expect("[")
            rows.append(ps.poly_list("]"))
            ps.expect("]")
            if len(rows[-1]) != len(rows[0]):
                raise SessionError("matrix rows have different lengths", line, start.col)
            if ps.at(","):
                ps.next()
                continue
            break
    ps.expect("]")
    ps.end()
    return rows


def serialize_session(session: SessionFile) -> str:
    ring = session.ring
    lines = [
        f"ring GF({ring.p})[{','.join(ring.variables)}] weights {' '.join(map(str, ring.weights))} order {ring.order.kind}"
    ]
    for name, gens in session.ideals.items():
        body = ", ".join(str(g) for g in gens) if gens else "0"
        lines.append(f"ideal {name} = {body}")
    for name, rows in session.modules.items():
        body = ", ".join("[" + ", ".join(str(g) for g in r) + "]" for r in rows)
        lines.append(f"module {name} = coker [{body}]")
    for key, value in session.settings.items():
        lines.append(f"set {key} = {value}")
    return "\n".join(lines) + "\n"
