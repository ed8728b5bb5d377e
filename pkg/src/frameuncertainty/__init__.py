"""Support uncertainty principles for Schauder-type frame pairs.

Build analysis/synthesis systems over atomic measure spaces, compute
cross-Gram coherences and weighted support measures, and check the
support-product, one-sided, mixed-norm, transfer and Hilbert-chain
inequalities.  :mod:`frameuncertainty.extremal` finds exact minima by
support-pattern enumeration.
"""
from .extremal import (
    ExtremalResult,
    FeasibilityCertificate,
    coset_patterns,
    dirac_comb,
    min_support_product,
    pattern_feasible,
)
from .frames import (
    CoefficientFunction,
    FrameSystem,
    TailDescriptor,
    analyze,
    diagonal_system,
    identity_system,
    in_domain,
    is_reconstructing,
    synthesize,
)
from .generators import (
    GeneratorSpec,
    dft_matrix,
    dft_pair,
    make,
    random_parseval,
    random_reconstructing,
    reweighted,
    validate_parseval,
)
from .spaces import (
    CapacityError,
    ConstructionError,
    DomainError,
    Exponent,
    MeasureSpace,
    PreconditionError,
    UnsupportedRepresentationError,
    Vector,
    lp_norm,
    measure_of,
)
from .uncertainty import (
    BatchBounds,
    BoundReport,
    SupportReport,
    batch_bounds,
    check_hilbert_chain,
    check_mixed_norm_bound,
    check_one_sided_bounds,
    check_product_bound,
    check_transfer_inequalities,
    coherence,
    cross_gram,
    support_of,
)

__version__ = "0.1.0"
