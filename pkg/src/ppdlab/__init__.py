"""Positive positive-definite functions and measures on finite abelian groups.

Exact verification of duality, restriction/corestriction, products, and the
polyhedral cone of such functions on finite abelian groups, plus desk-scale
numeric probes for Gaussians on R^n.
"""

from .cone import (
    EvenBasis,
    PolyhedralCone,
    extremal_rays,
    field_of_definition_check,
    is_interior,
    ppd_cone_hrep,
    self_duality_check,
)
from .constructions import (
    CorestrictionReport,
    corestrict,
    corestrict_measure,
    corestriction_consistency,
    coset_average,
    external_product,
    pointwise_product,
    ppd_times_good,
    restrict,
    restrict_measure,
)
from .fourier import (
    GroupFunction,
    HaarScale,
    ScaledMeasure,
    convolve,
    counting_haar,
    dual_haar,
    fourier_transform,
    inverse_transform,
    plancherel_check,
    pullback,
    pushforward,
)
from .gaussian import (
    GridQuadrature,
    QuadraticFormSPD,
    counterexample_probe,
    gaussian_corestriction_check,
    gaussian_fourier_closed_form,
    gaussian_goodness_probe,
    numeric_fourier,
)
from .groups import (
    FiniteAbelianGroup,
    Homomorphism,
    QuotientGroup,
    Subgroup,
    all_subgroups,
    annihilator,
    dual_group,
    dual_hom,
    hom_apply,
    hom_validate,
    make_group,
    pairing,
    parse_group,
    quotient,
    subgroup_from_generators,
)
from .ppd import (
    PpdVerdict,
    bochner_oracle,
    descend_to_quotient,
    dual_measure,
    is_good,
    is_ppd,
    normalize_function,
    normalize_measure,
    normalized_dual,
    sample_function,
    sample_good,
    sample_ppd,
    stabilizer_subgroup,
)

__version__ = "0.1.0"

__all__ = [
    "EvenBasis",
    "PolyhedralCone",
    "extremal_rays",
    "field_of_definition_check",
    "is_interior",
    "ppd_cone_hrep",
    "self_duality_check",
    "CorestrictionReport",
    "corestrict",
    "corestrict_measure",
    "corestriction_consistency",
    "coset_average",
    "external_product",
    "pointwise_product",
    "ppd_times_good",
    "restrict",
    "restrict_measure",
    "GroupFunction",
    "HaarScale",
    "ScaledMeasure",
    "convolve",
    "counting_haar",
    "dual_haar",
    "fourier_transform",
    "inverse_transform",
    "plancherel_check",
    "pullback",
    "pushforward",
    "GridQuadrature",
    "QuadraticFormSPD",
    "counterexample_probe",
    "gaussian_corestriction_check",
    "gaussian_fourier_closed_form",
    "gaussian_goodness_probe",
    "numeric_fourier",
    "FiniteAbelianGroup",
    "Homomorphism",
    "QuotientGroup",
    "Subgroup",
    "all_subgroups",
    "annihilator",
    "dual_group",
    "dual_hom",
    "hom_apply",
    "hom_validate",
    "make_group",
    "pairing",
    "parse_group",
    "quotient",
    "subgroup_from_generators",
    "PpdVerdict",
    "bochner_oracle",
    "descend_to_quotient",
    "dual_measure",
    "is_good",
    "is_ppd",
    "normalize_function",
    "normalize_measure",
    "normalized_dual",
    "sample_function",
    "sample_good",
    "sample_ppd",
    "stabilizer_subgroup",
]
