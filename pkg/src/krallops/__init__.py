"""Exact rational construction and verification of Krall-type orthogonal
polynomial sequences q_n = p_n + beta_n p_{n-1} built from classical
families via lowering operators, together with the higher-order
difference or differential operators that admit them as eigenfunctions.
"""

from .dops import DOperator, catalog, series_apply, verify_dop
from .errors import (
    ConstructionError,
    DegeneracyError,
    HypothesisError,
    KrallopsError,
    NoOrthogonalPolynomialsError,
    OperatorError,
)
from .families import (
    Charlier,
    Family,
    Hahn,
    Jacobi,
    Krawtchouk,
    Laguerre,
    Meixner,
    dual_hahn_poly,
    dual_hahn_variant,
    eigen_solve_poly,
    expand_in_family_basis,
    family_from_json,
    family_from_name,
    family_to_json,
    lattice_product,
)
from .krall import (
    KrallConstruction,
    NamedConstruction,
    NAMED_KINDS,
    band_profile,
    construct_type1,
    construct_type2,
    construction_to_json,
    generalized_operator,
    named,
    negated_frame,
    type2_companion,
    verify_eigen,
)
from .moments import (
    AddDeltaScaled,
    ChristoffelBy,
    MomentFunctional,
    ShiftBy,
    base_pairing,
    casorati_check,
    gram_check,
    hankel_det,
    ip_lemma_check,
    measure_from_json,
    measure_to_json,
    moment,
    orthoseq,
    pairing,
)
from .opalg import (
    DifferenceOperator,
    DifferentialOperator,
    operator_from_json,
    operator_to_json,
    poly_of_op,
)
from .polyops import Polynomial, antidifference, as_fraction, fraction_to_str

__version__ = "0.1.0"

__all__ = [
    "AddDeltaScaled",
    "Charlier",
    "ChristoffelBy",
    "ConstructionError",
    "DOperator",
    "DegeneracyError",
    "DifferenceOperator",
    "DifferentialOperator",
    "Family",
    "Hahn",
    "HypothesisError",
    "Jacobi",
    "KrallConstruction",
    "KrallopsError",
    "Krawtchouk",
    "Laguerre",
    "Meixner",
    "MomentFunctional",
    "NAMED_KINDS",
    "NamedConstruction",
    "NoOrthogonalPolynomialsError",
    "OperatorError",
    "Polynomial",
    "ShiftBy",
    "antidifference",
    "as_fraction",
    "band_profile",
    "base_pairing",
    "casorati_check",
    "catalog",
    "construct_type1",
    "construct_type2",
    "construction_to_json",
    "dual_hahn_poly",
    "dual_hahn_variant",
    "eigen_solve_poly",
    "expand_in_family_basis",
    "family_from_json",
    "family_from_name",
    "family_to_json",
    "fraction_to_str",
    "generalized_operator",
    "gram_check",
    "hankel_det",
    "ip_lemma_check",
    "lattice_product",
    "measure_from_json",
    "measure_to_json",
    "moment",
    "named",
    "negated_frame",
    "operator_from_json",
    "operator_to_json",
    "orthoseq",
    "pairing",
    "poly_of_op",
    "series_apply",
    "type2_companion",
    "verify_dop",
    "verify_eigen",
]
