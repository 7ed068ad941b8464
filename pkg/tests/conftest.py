import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from macaulayfy import Ideal, ModulePresentation, PolyRing  # noqa: E402
from macaulayfy.blowup import exceptional_torsion_free  # noqa: E402
from macaulayfy.homology import module_colon_element  # noqa: E402

settings.register_profile(
    "seeded",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("seeded")

SESSIONS = os.path.join(os.path.dirname(os.path.dirname(__file__)), "sessions")


@pytest.fixture
def xyzw():
    return PolyRing(("x", "y", "z", "w"))


@pytest.fixture
def two_planes(xyzw):
    J = Ideal(xyzw, ["x*z", "x*w", "y*z", "y*w"])
    return J, ModulePresentation.ring_module(xyzw, J)


def monomial_surface():
    T = PolyRing(("a", "b", "c", "d"))
    K = Ideal(T, ["a*d-b*c", "c^3-b*d^2", "b^3-a^2*c", "b^2*d-a*c^2"])
    return K, ModulePresentation.ring_module(T, K)


@pytest.fixture(name="monomial_surface")
def monomial_surface_fixture():
    return monomial_surface()


def transforms_torsion_free(cert) -> bool:
    """Recompute exceptional torsion of every strict transform with a single colon.

    N : f = N means f is a nonzerodivisor on F/N, so no f-power torsion remains.
    """
    for leaf in cert.leaves:
        ch = leaf.chart
        if ch.is_empty():
            continue
        for T in ch.strict_transforms:
            if T.rank == 0:
                continue
            N = T.submodule()
            col = module_colon_element(N, ch.exceptional)
            if not all(N.contains(v) for v in col.basis()):
                return False
            if not exceptional_torsion_free(T, ch.exceptional):
                return False
    return True


ACCEPTANCE = {}


def record_criterion(number: int, ok: bool, elapsed: float, note: str = "") -> None:
    ACCEPTANCE[number] = (ok, elapsed, note)
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s){' ' + note if note else ''}"
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, elapsed, note = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s){' ' + note if note else ''}")
