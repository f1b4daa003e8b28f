"""Certified semipositivity over the Lorentz (second-order) cone.

A square matrix is semipositive over the cone when it maps some cone
vector into the cone's interior.  The package decides this with verifiable
primal/dual certificates, provides the structural screens for special
matrix classes, and implements the surrounding cone geometry (ellipsoidal
representations, inertia, invariance, monotonicity, extremal mapping).
"""

from ._kernels import available_backends, backend_name
from .certificate import Certificate, Verdict
from .cones import (
    DEFAULT_TOL,
    HalfspaceClass,
    LorentzCone,
    Membership,
    MembershipClass,
    ProductBound,
    Tolerances,
    angle,
    entrywise_power,
    halfspace_classify,
    in_lorentz,
    lorentz_margin,
    membership,
    pairwise_product_bound,
    project,
    triple_product_bound,
)
from .engine import (
    DecideOptions,
    PrimalCheck,
    TransferDirection,
    TransferResult,
    decide,
    margin_objective,
    search_dual,
    search_primal,
    similarity_transfer_2x2,
    verify_dual,
    verify_factorization,
    verify_primal,
)
from .errors import (
    DimensionError,
    LorcertError,
    PreconditionError,
    SingularMatrixError,
    StructureError,
)
from .geometry import (
    EllipsoidalRep,
    Inertia,
    KConeReport,
    LinearImageCone,
    OrthantCone,
    SConeReport,
    cone_membership,
    ellipsoidal_rep_from_map,
    extremal_pushforward,
    inertia,
    is_extremal,
    is_invariant,
    is_monotone,
    k_cone_under_monotone,
    preimage_membership,
    s_cone_is_ellipsoidal,
    semipositive_cone_membership,
)
from .oracle import SamplerConfig, brute_force_decide, brute_force_invariant, sample_lorentz
from .structure import (
    InvarianceReport,
    block_embed_certificate,
    copositive_screen,
    diagonal_certificate,
    invariance_properties,
    lower_triangular_certificate,
    orthogonal_certificate,
    perturbation_transfer,
    rank_one_certificate,
    structural_screen,
)

__version__ = "0.1.0"
