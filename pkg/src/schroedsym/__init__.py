"""Verification library for the global symmetry groups of generalized
Schrodinger and diffusion equations with inverse-quadratic, linear, and
quadratic potentials.

The package machine-checks the group algebra (fractional-linear matrices
with translation pairs), the coordinate actions and multiplier functions
of each potential family, the solution-space lifts between families, the
associated Lie algebra with its Casimir invariants, and the residuals of
every transformed or lifted solution.
"""

from .coords import (
    FamilySpec,
    GalileanData,
    Point,
    act,
    act_inverse_quadratic,
    act_linear,
    act_quadratic,
    galilean_params,
    reality_domain_check,
    comoving_identity_check,
)
from .errors import (
    BranchError,
    ConfigError,
    ConvergenceError,
    DeterminantError,
    DomainError,
    FamilyMismatch,
    IntegrationError,
    NoRootError,
    OrderError,
    QuadratureError,
    RangeError,
    SchroedSymError,
    ShapeError,
    SingularTime,
    ZeroK,
    ZeroOmega,
)
from .group import (
    CocycleValue,
    DiskParams,
    GroupElement,
    Mat2,
    cocycle_linear,
    cocycle_quadratic,
    compose,
    disk_parametrize,
    inverse,
    is_semigroup_admissible,
    make_element,
)
from .multiplier import (
    IntertwinerParams,
    K0_intertwiner,
    K_inverse_quadratic,
    K_linear,
    K_ndim,
    K_quadratic,
    MultiplierParts,
    linear_parts,
    multiplier,
    ode_oracle_coefficients,
    quadratic_parts,
)
from .opalg import (
    DiffOp,
    GeneratorSet,
    LaurentPoly2,
    apply,
    casimir_I2,
    casimir_I3,
    generators_linear,
    generators_quadratic,
    intertwine_check,
    op_commutator,
    op_compose,
)
from .residual import (
    GridSpec,
    PullbackFn,
    ResidualReport,
    grid_residual,
    residual_at,
    lift_frame,
    transformed,
    verify_intertwining,
    verify_transformed_solution,
    verify_lifted_solution,
)
from .solutions import (
    AirySpec,
    ExpPolyFn,
    FormulaFn,
    SmoothFn,
    airy_u,
    eigenvalue_scan,
    f_pair,
    g_functions,
    gaussian_free,
    phi_pair,
    plane_wave_nls,
    power_static,
    theta1,
)
from .suites import RunConfig, SuiteReport, run_suite

__version__ = "0.1.0"
