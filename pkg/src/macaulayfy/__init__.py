"""Cohen-Macaulay certificates and Kawasaki-style Macaulayfication over prime fields."""

__version__ = "0.1.0"

from .algebra import InputError, PolyRing, Polynomial, PrimeField
from .groebner import GroebnerBasis, Ideal, ResourceError, Submodule, groebner_basis
from .homology import (
    ModulePresentation,
    PreconditionError,
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
from .sequences import (
    SequenceCandidate,
    find_cm_secant_sequence,
    is_cm_secant,
    is_d_sequence,
    is_secant,
    verify_kawasaki_properties,
)
from .blowup import blowup_charts, kawasaki_center, rees_ideal, saturation_quotient, strict_transform
from .pipeline import PipelineConfig, macaulayfy_pipeline
