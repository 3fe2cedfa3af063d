"""Exact Harbourne constants and Miyaoka-type bounds for transversal
arrangements of smooth rational curves on K3 and Enriques surfaces."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    ArrangementSummary,
    Curve,
    SingularPoint,
    SurfaceKind,
    divisor_self_intersection,
    incidence_count,
    summarize,
    t_vector,
    validate,
)
from .blowup import (
    ALL_SINGULAR_POINTS,
    BlowUpModel,
    DivisorClass,
    HypothesisError,
    blow_up,
    miyaoka_terms,
    multiplicity_at_least,
    snc_check,
)
from .negativity import (
    NegativityReport,
    global_bound,
    harbourne_constant,
    harbourne_constant_from_multiplicities,
    incidence_identity_check,
    lower_bound,
    miyaoka_inequality,
    report,
)

__version__ = "0.1.0"
