"""Twisted first cohomology of characters of finitely presented groups.

Given a finite presentation and a positive multiplicative character rho,
this package computes the space of twisted cocycles (maps mu with
mu(gh) = mu(h) + rho(h) mu(g)), the coboundaries, and the dimension of
their quotient H^1.  Non-vanishing classes are certified by explicit
upper-triangular 2x2 representations that anyone can re-check with plain
matrix products.
"""

from .scalars import (
    ApproxMode,
    DEFAULT_EPS,
    QuadraticElement,
    QuadraticMode,
    RationalMode,
    ScalarModeError,
    ScalarParseError,
)
from .words import (
    Presentation,
    PresentationSyntaxError,
    Word,
    commutator,
    parse_presentation,
)
from .linalg import (
    ConditioningWarning,
    Matrix,
    charpoly,
    kernel_basis,
    positive_real_eigenvalues,
    rank,
)
from .characters import (
    Character,
    CharacterParseError,
    InadmissibleCharacterError,
    parse_character,
)
from .cocycles import (
    Cocycle,
    CohomologyReport,
    betti_one,
    coboundary_cocycle,
    coboundary_vector,
    cocycle_space,
    constraint_matrix,
    parse_cocycle,
    relator_constraint_row,
    twisted_h1_dimension,
)
from .certificates import (
    CertificateFormatError,
    CocycleConstraintError,
    RepCertificate,
    VerificationError,
    attach_verification,
    build_representation,
    certificate_from_json,
    certificate_to_json,
    is_decomposable,
    load_certificate,
    verify_homomorphism,
)
from .families import (
    free_abelian,
    free_group,
    heisenberg,
    mapping_torus_character,
    mapping_torus_cocycle,
    mapping_torus_eigenvalues,
    mapping_torus_h1_nonzero,
    mapping_torus_presentation,
    surface_presentation,
    surface_solve,
)
from .finiteness import (
    ConjugationData,
    ConjugationDataError,
    candidate_characters,
    enumerate_nonvanishing,
    parse_conjugation_data,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxMode", "DEFAULT_EPS", "QuadraticElement", "QuadraticMode",
    "RationalMode", "ScalarModeError", "ScalarParseError",
    "Presentation", "PresentationSyntaxError", "Word", "commutator",
    "parse_presentation",
    "ConditioningWarning", "Matrix", "charpoly", "kernel_basis",
    "positive_real_eigenvalues", "rank",
    "Character", "CharacterParseError", "InadmissibleCharacterError",
    "parse_character",
    "Cocycle", "CohomologyReport", "betti_one", "coboundary_cocycle",
    "coboundary_vector", "cocycle_space", "constraint_matrix",
    "parse_cocycle", "relator_constraint_row", "twisted_h1_dimension",
    "CertificateFormatError", "CocycleConstraintError", "RepCertificate",
    "VerificationError", "attach_verification", "build_representation",
    "certificate_from_json", "certificate_to_json", "is_decomposable",
    "load_certificate", "verify_homomorphism",
    "free_abelian", "free_group", "heisenberg", "mapping_torus_character",
    "mapping_torus_cocycle", "mapping_torus_eigenvalues",
    "mapping_torus_h1_nonzero", "mapping_torus_presentation",
    "surface_presentation", "surface_solve",
    "ConjugationData", "ConjugationDataError", "candidate_characters",
    "enumerate_nonvanishing", "parse_conjugation_data",
]
