import pytest

from macaulayfy import Ideal, ModulePresentation, PolyRing, PipelineConfig, PreconditionError, is_cohen_macaulay, macaulayfy_pipeline
from conftest import monomial_surface, transforms_torsion_free


def _reparsed_cm(chart_dict) -> bool:
    ring = PolyRing(tuple(chart_dict["variables"]))
    return bool(is_cohen_macaulay(ModulePresentation.ring_module(ring, Ideal(ring, chart_dict["ideal"]))))


def _check_sound(cert):
    assert transforms_torsion_free(cert)
    if cert.verdict:
        for leaf in cert.leaves:
            if not leaf.chart.is_empty():
                assert _reparsed_cm(leaf.chart.to_dict())


def test_kawasaki_two_planes(two_planes):
    J, _ = two_planes
    cert = macaulayfy_pipeline(J, mode="kawasaki")
    assert cert.verdict and not cert.already_cm
    assert len(cert.center) == 2
    assert cert.sequence_report and cert.sequence_report["cm_secant"]
    _check_sound(cert)


def test_local_two_planes(two_planes):
    J, _ = two_planes
    cert = macaulayfy_pipeline(J, mode="local")
    assert cert.verdict
    assert cert.locus["supported_at_m"] and cert.locus["N0"] == 1
    assert all(s.center_contains_power for s in cert.tower)
    _check_sound(cert)


@pytest.mark.parametrize("mode", ["kawasaki", "local"])
def test_monomial_surface(mode):
    K, _ = monomial_surface()
    cert = macaulayfy_pipeline(K, mode=mode)
    assert cert.verdict
    _check_sound(cert)


def test_with_module(two_planes, xyzw):
    J, R = two_planes
    # the free module of rank 2 over R: same locus, shared center
    M = ModulePresentation(xyzw, 2, [], None, J, "M")
    cert = macaulayfy_pipeline(J, [M], mode="kawasaki")
    assert cert.verdict
    _check_sound(cert)


def test_already_cm_inputs():
    S3 = PolyRing(("x", "y", "z"))
    for gens in ([], ["x^2 - y^2*z"], ["x*y", "z^2"]):
        cert = macaulayfy_pipeline(Ideal(S3, gens), ring=S3)
        assert cert.verdict and cert.already_cm and cert.tower == []


def test_gates(xyzw):
    S3 = PolyRing(("x", "y", "z"))
    cert = macaulayfy_pipeline(Ideal(S3, ["x*y", "x*z"]))
    assert not cert.verdict and cert.failures[0]["kind"] == "gate"
    with pytest.raises(PreconditionError):
        macaulayfy_pipeline(Ideal(S3, ["1"]))


def test_search_failure_structured(two_planes):
    J, _ = two_planes
    cert = macaulayfy_pipeline(J, config=PipelineConfig(max_degree=0))
    assert not cert.verdict
    assert cert.failures and cert.failures[0]["kind"] == "search"


def test_seed_reproducible(two_planes):
    J, _ = two_planes
    a = macaulayfy_pipeline(J, config=PipelineConfig(seed=5)).to_dict()
    b = macaulayfy_pipeline(J, config=PipelineConfig(seed=5)).to_dict()
    assert a == b and a["seed"] == 5
