"""Apolar algebras, Groebner bases and graded cotangent invariants over exact fields."""

from .apolarity import (
    AlgebraPresentation,
    ConnectedSum,
    SocleData,
    VeryGeneralReport,
    annihilator,
    apolar_algebra,
    catalecticant_ranks,
    connected_sum,
    from_generators,
    is_level,
    is_very_general_cubic,
    random_cubic,
    sample_very_general_cubic,
    socle,
    socle_quotient,
    union_along_point,
)
from .certify import (
    Certificate,
    SettingReport,
    certify_nonreduced,
    check_setting,
    expected_fiber,
    search,
    verify_certificate,
    verify_paper_examples,
)
from .cotangent import (
    TangentReport,
    derivations_graded,
    t1_bigraded,
    t1_graded,
    t2_residue_graded,
)
from .field import Field
from .graded import BettiTable, GradedDims
from .groebner import (
    GradedIdeal,
    GroebnerBasis,
    QuotientBasis,
    SyzygyModule,
    buchberger,
    first_syzygies,
    hilbert_function,
    minimal_betti,
    normal_form,
    standard_monomials,
)
from .poly import MPoly, Ring, bidegree_components, contract, format_poly, parse_poly

__all__ = [
    "AlgebraPresentation",
    "annihilator",
    "apolar_algebra",
    "BettiTable",
    "bidegree_components",
    "buchberger",
    "catalecticant_ranks",
    "Certificate",
    "certify_nonreduced",
    "check_setting",
    "connected_sum",
    "ConnectedSum",
    "contract",
    "derivations_graded",
    "expected_fiber",
    "Field",
    "first_syzygies",
    "format_poly",
    "from_generators",
    "GradedDims",
    "GradedIdeal",
    "GroebnerBasis",
    "hilbert_function",
    "is_level",
    "is_very_general_cubic",
    "minimal_betti",
    "MPoly",
    "normal_form",
    "parse_poly",
    "QuotientBasis",
    "random_cubic",
    "Ring",
    "sample_very_general_cubic",
    "search",
    "SettingReport",
    "socle",
    "socle_quotient",
    "SocleData",
    "standard_monomials",
    "SyzygyModule",
    "t1_bigraded",
    "t1_graded",
    "t2_residue_graded",
    "TangentReport",
    "union_along_point",
    "verify_certificate",
    "verify_paper_examples",
    "VeryGeneralReport",
]

__version__ = "0.1.0"
