"""Exact computational algebra for finite commutative unital rings.

Rings are dense operation tables over element indices 0..n-1. The package
builds ring extensions (products over the diagonal, square-zero extensions
R(+)R/I, candidate minimal extensions of regular rings), decides minimality,
computes conductors and crucial maximal ideals, and verifies the structure
statements about them by exhaustive scan on every instance it touches.
"""

from .core import (
    AxiomViolation,
    CapExceeded,
    DEFAULT_ORDER_CAP,
    FiniteRing,
    HomLawError,
    RingAxiomError,
    RingHom,
    SelfCheckError,
    adjoin_element_mask,
    element_profile,
    eventual_idempotent,
    eventual_idempotents,
    from_tables,
    galois_field,
    identity_hom,
    order_cap,
    product,
    ring_predicates,
    validate_tables,
    zmod,
)
from .ideals import (
    CyclicModuleSpec,
    Ideal,
    ideal_generated,
    idealization,
    is_ideal_mask,
    is_maximal,
    is_prime,
    max_spectrum,
    quotient,
    whole_ideal,
    zero_ideal,
)
from .extensions import (
    Extension,
    NotOfForm,
    SubringMask,
    adjoin,
    adjoined_extension,
    canonical_idealization_extension,
    conductor,
    diagonal_base_extension,
    diagonal_extension,
    intermediate_idealization_form,
    intermediate_subrings,
    is_minimal,
    is_minimal_field_extension,
    make_extension,
    mask_is_minimal,
    minimality_oracle,
    subring_extension,
)
from .localstructure import (
    CrucialIdealError,
    LocalDecomposition,
    LocalFactor,
    Localization,
    PrimeLocalizationRecord,
    crucial_maximal_ideal,
    local_decomposition,
    localize,
    localize_at_prime,
    ring_corner_mask,
    total_quotient_ring,
)
from .theorems import (
    CaseLabel,
    DECOMPOSED,
    EntryContext,
    ExtensionCandidate,
    INERT,
    RAMIFIED,
    VerdictReport,
    algebra_isomorphic,
    catalog_minimal_extensions,
    classify_vnr_extension,
    find_field_embedding,
    quadratic_field_extension,
    ring_isomorphic,
    verify_conductor_prime,
    verify_crucial_ideal,
    verify_diagonal_theorem,
    verify_idealization_results,
    verify_infrastructure,
    verify_minimality_oracle,
    verify_unit_criterion,
    vnr_minimal_extension_candidates,
)
from .exprs import ExprSyntaxError, build_ring, format_ring_expr, parse_ring_expr

__version__ = "0.1.0"
