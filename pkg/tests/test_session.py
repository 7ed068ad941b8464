import pytest
from hypothesis import given, strategies as st

from macaulayfy.session import SessionError, parse_session, serialize_session


def test_basic_session():
    s = parse_session("ring GF(32003)[x,y,z,w]\nideal J = x*z, x*w, y*z, y*w\n")
    assert list(s.ideals) == ["J"]
    assert s.quotient_ideal().dimension() == 2


def test_weights_order_and_module():
    s = parse_session("ring GF(101)[x,y] weights 1 2 order lex\nmodule M = coker [[x, y], [y^2, x^3]]\n")
    assert s.ring.weights == (1, 2) and s.ring.order.kind == "lex" and s.ring.p == 101
    assert s.module_ranks["M"] == 2


def _err(text):
    with pytest.raises(SessionError) as info:
        parse_session(text)
    return info.value


def test_missing_ring():
    e = _err("ideal J = x\n")
    assert "ring declaration required" in str(e) and e.line == 1


def test_unknown_variable():
    e = _err("ring GF(32003)[x,y]\nideal J = x*q\n")
    assert "unknown variable q" in str(e)
    assert (e.line, e.column) == (2, 13)


def test_other_diagnostics():
    assert "field" in str(_err("ring GF(12)[x]\n")).lower() or _err("ring GF(12)[x]\n")
    assert "already defined" in str(_err("ring GF(7)[x]\nideal I = x\nideal I = x^2\n"))
    assert _err("ring GF(7)[x]\nideal I = x +\n").line == 2
    assert _err("ring GF(7)[x]\nmodule M = coker [[x], [x, x]]\n").line == 2
    assert _err(b"ring GF(7)[x]\n\xff\n")


def test_comments_and_settings():
    s = parse_session("# header\nring GF(7)[x,y]\nideal A = x\nideal B = y  # trailing\nset quotient = B\nset seed = 4\n")
    assert s.quotient_name() == "B" and s.settings["seed"] == "4"


names = st.sampled_from(["A", "B", "J", "K2", "m"])
var_terms = st.lists(
    st.tuples(st.integers(-9, 9).filter(bool), st.integers(0, 3), st.integers(0, 3)),
    min_size=1,
    max_size=4,
)


def _poly_text(terms):
    return " + ".join(f"({c})*x^{a}*y^{b}" for c, a, b in terms)


@given(
    st.sampled_from([7, 101, 32003]),
    st.sampled_from(["grevlex", "lex"]),
    st.lists(st.tuples(names, st.lists(var_terms, min_size=1, max_size=3)), min_size=1, max_size=3, unique_by=lambda t: t[0]),
)
def test_round_trip(p, order, ideals):
    text = f"ring GF({p})[x,y] order {order}\n"
    for name, gens in ideals:
        text += f"ideal {name} = " + ", ".join(_poly_text(g) for g in gens) + "\n"
    s = parse_session(text)
    again = parse_session(serialize_session(s))
    assert again == s
    assert serialize_session(again) == serialize_session(s)
