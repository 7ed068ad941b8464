from hypothesis import given, strategies as st

from macaulayfy import (
    Ideal,
    ModulePresentation,
    PolyRing,
    depth_dim,
    equidimensionality_check,
    ext_into_ring,
    ext_summary,
    free_resolution,
    is_cohen_macaulay,
    local_cohomology_annihilator,
    non_cm_locus_ideal,
    syzygies,
)
from macaulayfy.homology import unmixedness_check
from oracles import cech_table

S2 = PolyRing(("x", "y"))
S3 = PolyRing(("x", "y", "z"))


def test_syzygy_examples(xyzw):
    x, y = S2.gens()
    assert syzygies([[x, y]]) == [[-y], [x]] or syzygies([[x, y]]) == [[y], [-x]]
    assert syzygies([[x]]) == [[]]
    cols = syzygies([[xyzw.parse(s) for s in ("x*z", "x*w", "y*z", "y*w")]])
    assert len(cols) == 4
    assert all(f.degree() == 1 for col in cols for f in col if not f.is_zero())


def test_koszul_resolution():
    M = ModulePresentation.cyclic(Ideal(S2, ["x", "y"]))
    res = free_resolution(M)
    assert res.total_betti() == [1, 2, 1]
    assert res.check_complex()
    s = ext_summary(M)
    assert s.nonzero_indices == [2]
    assert s.exts[2].presentation().dimension() == 0


def test_two_planes_resolution(two_planes):
    _, R = two_planes
    res = free_resolution(R)
    assert res.total_betti() == [1, 4, 4, 1]
    assert res.betti() == {0: [0], 1: [2, 2, 2, 2], 2: [3, 3, 3, 3], 3: [4]}
    assert res.check_complex()


def test_hypersurface_resolution():
    x = S2.var("x")
    assert free_resolution(ModulePresentation.cyclic(Ideal(S2, [x**2]))).total_betti() == [1, 1]


def test_ext_zero_and_depth():
    I = Ideal(S2, ["x", "y"])
    assert ext_into_ring(ModulePresentation.cyclic(I), 0).is_zero()
    assert depth_dim(ModulePresentation.cyclic(I)) == (0, 0, 2)
    F = ModulePresentation.free(S3)
    assert depth_dim(F) == (3, 3, 0)


def test_cm_examples(two_planes):
    assert is_cohen_macaulay(ModulePresentation.cyclic(Ideal(S2, ["x"])))
    _, R = two_planes
    cert = is_cohen_macaulay(R)
    assert not cert
    assert cert.nonzero_ext == [2, 3]
    assert depth_dim(R) == (1, 2, 2)


def test_equidimensionality():
    line_and_plane = ModulePresentation.cyclic(Ideal(S3, ["x*y", "x*z"]))
    assert not equidimensionality_check(line_and_plane)
    assert not unmixedness_check(line_and_plane)
    # a line with an embedded point: equidimensional support, not unmixed
    embedded = ModulePresentation.cyclic(Ideal(S2, ["x^2", "x*y"]))
    assert equidimensionality_check(embedded)
    assert not unmixedness_check(embedded)


def test_equidimensional_two_planes(two_planes):
    _, R = two_planes
    assert equidimensionality_check(R)
    assert unmixedness_check(R)


def test_local_cohomology_annihilators(two_planes, xyzw):
    M = ModulePresentation.cyclic(Ideal(S2, ["x", "y"]))
    assert local_cohomology_annihilator(M, 0) == Ideal(S2, ["x", "y"])
    _, R = two_planes
    assert local_cohomology_annihilator(R, 0).is_unit()
    assert local_cohomology_annihilator(R, 1) == Ideal(xyzw, ["x", "y", "z", "w"])


def test_non_cm_locus(two_planes, xyzw):
    assert non_cm_locus_ideal(ModulePresentation.free(S3)).is_unit()
    _, R = two_planes
    L = non_cm_locus_ideal(R)
    m = Ideal(xyzw, ["x", "y", "z", "w"])
    assert L.saturate(m).is_unit()
    assert all(L.radical_contains(v) for v in xyzw.gens())


def test_monomial_surface_invariants(monomial_surface):
    _, R = monomial_surface
    assert depth_dim(R)[:2] == (1, 2)
    assert ext_summary(R).nonzero_indices == [2, 3]
    assert free_resolution(R).total_betti() == [1, 4, 4, 1]


def test_module_presentation():
    x, y = S2.gens()
    M = ModulePresentation.from_matrix(S2, [[x, y]])
    assert M.rank == 1
    assert ext_summary(M).nonzero_indices == [2]


def test_duality_against_cech(two_planes):
    _, R = two_planes
    tab = cech_table(R, (-4, 4))
    s = ext_summary(R)
    for j in range(5):
        nonzero = any(tab[(j, d)] for d in range(-4, 5))
        assert nonzero == (4 - j in s.nonzero_indices)


def test_cech_reference_values():
    X = PolyRing(("x",))
    from oracles import cech_oracle

    assert cech_oracle(ModulePresentation.free(X), 1, (-3, 0)) == [1, 1, 1, 0]
    assert cech_oracle(ModulePresentation.cyclic(Ideal(S2, ["x", "y"])), 0, (0, 0)) == [1]


mono3 = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)).filter(lambda e: sum(e) > 0)


DEPTH_AT_MOST_DIM = (st.lists(mono3, min_size=1, max_size=3),)


def check_depth_at_most_dim(monos):
    I = Ideal(S3, [S3.monomial(e) for e in monos])
    M = ModulePresentation.cyclic(I)
    depth, dim, codim = depth_dim(M)
    assert depth <= dim
    assert dim + codim == 3


@given(*DEPTH_AT_MOST_DIM)
def test_depth_at_most_dim(monos):
    check_depth_at_most_dim(monos)


@given(st.lists(mono3, min_size=1, max_size=3))
def test_euler_characteristic(monos):
    """sum (-1)^i rank F_i = rank M at the generic point: 0 for torsion modules."""
    I = Ideal(S3, [S3.monomial(e) for e in monos])
    res = free_resolution(ModulePresentation.cyclic(I))
    chi = sum((-1) ** i * r for i, r in enumerate(res.total_betti()))
    assert chi == 0
    assert res.length <= 3
