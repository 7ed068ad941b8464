from collections import Counter

from macaulayfy import (
    Ideal,
    ModulePresentation,
    PolyRing,
    blowup_charts,
    is_cohen_macaulay,
    kawasaki_center,
    rees_ideal,
    saturation_quotient,
    strict_transform,
)
from macaulayfy.blowup import certify_chart, exceptional_torsion_free
from oracles import jacobian_regular

S2 = PolyRing(("x", "y"))


def test_saturation_quotient():
    M = ModulePresentation.cyclic(Ideal(S2, ["x^2*y"]))
    Q = saturation_quotient(M, Ideal(S2, ["y"]))
    assert Q.annihilator() == Ideal(S2, ["x^2"])
    assert saturation_quotient(M, Ideal(S2, ["1"])).is_zero()
    F = ModulePresentation.free(S2)
    assert saturation_quotient(F, Ideal(S2, ["x"])).annihilator().is_zero()


def test_kawasaki_center_products(xyzw):
    a, b = xyzw.parse("x - z"), xyzw.parse("y - w")
    assert kawasaki_center([a]) == Ideal(xyzw, [a])
    assert kawasaki_center([a, b]) == Ideal(xyzw, [a * a, a * b])
    T = PolyRing(("a", "b", "c"))
    # a*(a,b)*(a,b,c) has 6 products, of which a*a*b and a*b*a coincide
    assert len(kawasaki_center(T.gens()).generators) == 5


def test_rees_ideal_plane():
    E = rees_ideal(None, Ideal(S2, ["x", "y"]))
    assert [str(g) for g in E.reduced().generators] in (["x*y1 - y*y0"], ["-x*y1 + y*y0"], ["y*y0 - x*y1"])


def test_rees_ideal_principal(xyzw, two_planes):
    J, _ = two_planes
    E = rees_ideal(J, Ideal(xyzw, ["x - z"]))
    embedded = Ideal(E.ring, [g.embed(E.ring, range(4)) for g in J.generators])
    assert E == embedded


def test_rees_relations_by_substitution(two_planes, xyzw):
    J, _ = two_planes
    I = kawasaki_center([xyzw.parse("x - z"), xyzw.parse("y - w")])
    E = rees_ideal(J, I)
    T = PolyRing(("x", "y", "z", "w", "t"))
    f = [g.embed(T, range(4)) for g in I.generators]
    t = T.var("t")
    images = list(T.gens()[:4]) + [fj * t for fj in f]
    Jt = Ideal(T, [g.embed(T, range(4)) for g in J.generators])
    for g in E.generators[:2] + E.generators[-2:]:
        assert Jt.contains(g.substitute(images, T))


def test_plane_blowup_chart():
    charts = blowup_charts(None, Ideal(S2, ["x", "y"]))
    assert len(charts) == 2
    c0 = charts[0]
    assert c0.ring.variables == ("x", "y1") and c0.ideal.is_zero()
    assert str(c0.images[1]) == "x*y1"
    assert str(c0.exceptional) == "x"
    T = strict_transform(ModulePresentation.free(S2), c0)
    assert exceptional_torsion_free(T, c0.exceptional)


def test_unit_and_principal_blowups(two_planes, xyzw):
    J, R = two_planes
    for center in (Ideal(xyzw, ["1"]), Ideal(xyzw, ["x - z"])):
        charts = blowup_charts(J, center)
        assert len(charts) == 1
        ch = charts[0]
        assert ch.ring.variables == xyzw.variables
        assert ch.ideal == Ideal(ch.ring, [g.embed(ch.ring, range(4)) for g in J.generators])
        T = strict_transform(R, ch)
        assert T.rank == 1 and T.annihilator() == ch.ideal


def test_two_planes_blowup_m(two_planes, xyzw):
    J, R = two_planes
    charts = blowup_charts(J, Ideal(xyzw, ["x", "y", "z", "w"]))
    assert len(charts) == 4
    for ch in charts:
        assert jacobian_regular(ch.ideal)
        assert certify_chart(ch, [R]).certified


def test_kawasaki_charts_cm(two_planes, xyzw):
    J, R = two_planes
    center = kawasaki_center([xyzw.parse("x - z"), xyzw.parse("y - w")], J)
    charts = blowup_charts(J, center)
    assert 2 <= len(charts) <= 4
    for ch in charts:
        cert = certify_chart(ch, [R])
        assert cert.certified and all(cert.torsion_free)


def _chart_profile(charts):
    return Counter((ch.ring_module().dimension(), bool(is_cohen_macaulay(ch.ring_module()))) for ch in charts if not ch.is_empty())


def test_product_blowup_consistency(two_planes, xyzw):
    J, _ = two_planes
    I = Ideal(xyzw, ["x - z"])
    I2 = Ideal(xyzw, ["x - z", "y - w"])
    direct = blowup_charts(J, I * I2)
    iterated = []
    for ch in blowup_charts(J, I):
        pulled = Ideal(ch.ring, [ch.map_poly(g) for g in I2.generators])
        iterated += blowup_charts(ch.ideal, pulled)
    assert _chart_profile(direct) == _chart_profile(iterated)
