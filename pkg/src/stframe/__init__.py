"""Pointwise analysis of 4-dimensional Riemannian curvature tensors."""

from .analysis import (
    ResidualReport,
    einstein_residual,
    forbidden_pattern,
    identity_residual,
    reduced_identity_residual,
    weakly_einstein_residual,
)
from .errors import (
    CaseRelationViolated,
    DegenerateFit,
    FrameNotOrthogonal,
    JacobiViolation,
    NoConvergence,
    NotSTFrame,
    NotWeaklyEinstein,
    OrientationReversed,
    ParseError,
    SearchFailed,
    StframeError,
    SymmetryViolation,
    UnknownGalleryName,
    ValidationError,
)
from .frames import (
    MultiplicityPattern,
    RicciSpectrum,
    STReport,
    SignCaseSet,
    classify_sign_cases,
    find_st_basis,
    generic_st_fallback,
    multiplicity_pattern,
    ricci_spectrum,
    st_penalty,
    sym_eigen,
    trig_fit_extremum,
)
from .sources import (
    GALLERY_NAMES,
    Connection4,
    GeometrySpec,
    LieAlgebra4,
    constant_curvature,
    gallery,
    lie_group_curvature,
    load_spec,
    random_curvature,
    realize,
    space_form_product,
    surface_product,
)
from .tensor import (
    Curvature4,
    Frame4,
    ScalarSummary,
    compose,
    derived_tensors,
    identity_frame,
    make_curvature,
    project_to_curvature,
    random_frame,
    ricci,
    rotate,
    summary,
)
from .topology import (
    InvariantReport,
    STVectors,
    densities,
    f_by_case,
    f_value,
    homogeneous_invariants,
    st_vectors,
)

__version__ = "0.1.0"
