import random

from hypothesis import given, strategies as st

from macaulayfy import Ideal, PolyRing, groebner_basis
from macaulayfy.groebner import NEG_INF, Submodule, normal_form, poly_to_vec

S2 = PolyRing(("x", "y"))
S4 = PolyRing(("x", "y", "z", "w"))


def gb_strs(I):
    return sorted(str(g) for g in groebner_basis(I))


def test_gb_examples():
    assert gb_strs(Ideal(S2, ["x"])) == ["x"]
    assert gb_strs(Ideal(S2, ["x*y - 1", "y^2 - 1"])) == ["x - y", "y^2 - 1"]
    assert gb_strs(Ideal(S2, ["x", "x"])) == ["x"]


def test_normal_forms():
    G = groebner_basis(Ideal(S2, ["x"]))
    x, y = S2.gens()
    assert normal_form(x**2, G) == 0
    assert normal_form(x + 1, G) == 1
    G2 = groebner_basis(Ideal(S2, ["x - 1"]))
    assert normal_form(x**2 * y, G2) == y


def test_ideal_operations():
    a = Ideal(S4, ["x", "y"])
    b = Ideal(S4, ["z", "w"])
    assert a.intersect(b) == Ideal(S4, ["x*z", "x*w", "y*z", "y*w"])
    assert Ideal(S2, ["x^2"]).quotient(Ideal(S2, ["x"])) == Ideal(S2, ["x"])
    y = S2.var("y")
    assert Ideal(S2, ["x^2*y"]).saturate(y) == Ideal(S2, ["x^2"])
    assert Ideal(S2, ["x^2*y"]).saturate_iterated(Ideal(S2, ["y"])) == Ideal(S2, ["x^2"])


def test_dimension():
    assert Ideal(S4, ["x*z", "x*w", "y*z", "y*w"]).dimension() == 2
    assert Ideal(S2, ["1"]).dimension() == NEG_INF
    assert Ideal(S2, []).dimension() == 2


def test_elimination():
    T = PolyRing(("t", "x", "y"))
    I = Ideal(T, ["x - t^2", "y - t^3"])
    E = I.eliminate(1)
    assert sorted(str(g) for g in E.generators) == ["x^3 - y^2"]


def test_radical_membership():
    I = Ideal(S2, ["x^3", "y^2"])
    assert I.radical_contains(S2.parse("x + y"))
    assert not I.contains(S2.parse("x"))


def test_submodule_membership():
    x, y = S2.gens()
    N = Submodule(S2, 2, [{(1, 0, 0): 1, (0, 1, 1): 1}])
    v = {(2, 0, 0): 1, (1, 1, 1): 1}
    assert N.contains(v)
    assert not N.contains(poly_to_vec(x, 0))


small = st.lists(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)),
    min_size=1,
    max_size=3,
)
R3 = PolyRing(("x", "y", "z"))


def _poly(terms):
    return sum((R3.monomial(e[:3], e[3]) for e in terms), R3.zero())


gens_st = st.lists(small, min_size=1, max_size=3).map(lambda gs: [_poly(t) for t in gs])


GB_DETERMINISM = (gens_st, st.integers(0, 10**6))


def check_gb_determinism(gens, seed):
    """The reduced basis does not depend on generator order or scaling."""
    shuffled = list(gens)
    random.Random(seed).shuffle(shuffled)
    scaled = [g * (1 + i) for i, g in enumerate(shuffled)]
    a = [str(g) for g in groebner_basis(Ideal(R3, gens))]
    b = [str(g) for g in groebner_basis(Ideal(R3, scaled))]
    assert a == b


@given(*GB_DETERMINISM)
def test_gb_determinism(gens, seed):
    check_gb_determinism(gens, seed)


SATURATION_IDEMPOTENT = (gens_st, st.sampled_from(["x", "y", "z", "x + y"]))


def check_saturation_idempotent(gens, f):
    g = R3.parse(f)
    I = Ideal(R3, gens)
    once = I.saturate(g)
    assert once.saturate(g) == once
    assert I.issubset(once)


@given(*SATURATION_IDEMPOTENT)
def test_saturation_idempotent(gens, f):
    check_saturation_idempotent(gens, f)
