"""Reflection groups and orthogonal operators on the sequence space ℓ²."""

from .decomposition import (
    ReflectionWord,
    check_orthogonal,
    embed,
    householder_decompose,
    random_orthogonal,
    reconstruct,
)
from .errors import (
    DegenerateDenominator,
    DegeneratePair,
    DimensionMismatch,
    InvalidFibre,
    NonzeroPoleComponent,
    NotOrthogonal,
    OutsideChart,
    OutsideDisc,
)
from .euclid import EuclidElement, e_act, e_compose, e_inverse, xi_conjugation_witness
from .fibre import (
    TrivializationResult,
    frame_matrix,
    project_lambda,
    reflection_r,
    same_coset,
    section_h0,
    stabilizer_membership,
    trivialize,
    untrivialize,
)
from .operators import (
    BlockPart,
    GOperator,
    ProjectionSpec,
    SignPattern,
    adjoint_inverse,
    apply,
    compose,
    conjugate_reflection,
    is_stable_O_member,
    op_distance,
    operators_close,
    project,
    reflection_flipping,
    reflection_spanning,
)
from .sparse import OrthonormalFamily, SparseVector, basis, distance, inner, norm, orthonormalize
from .sphere import (
    HomotopyPath,
    SpherePoint,
    chart_forward,
    chart_inverse,
    contract_path,
    frechet_transition,
    homotopy_F1,
    homotopy_F2,
    shift_apply,
    transition,
)

__version__ = "0.1.0"
