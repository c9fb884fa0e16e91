"""Exact homogeneous variational bicomplex for single-integral problems."""

from .errors import (
    InvariantViolation,
    NonPolynomialCoefficient,
    NotAffineError,
    NotSupportedError,
    NotVariationalError,
    ParseError,
    SymmetryViolation,
    UndefinedOrderError,
    VariationalError,
    ZeroDenominatorError,
)
from .expr import (
    Coordinate,
    Expression,
    const,
    cos,
    differentiate,
    exp,
    homotopy_parameter,
    is_zero,
    ln,
    order_of,
    q,
    sin,
    sqrt,
    substitute,
)
from .forms import CoordinateVectorField, DifferentialForm, contract, exterior_d, lie_derivative, wedge
from .lagrangian import (
    HelmholtzCoefficients,
    HomogeneityReport,
    SecondOrderDecomposition,
    SourceForm,
    check_homogeneous,
    euler_lagrange,
    helmholtz_coefficients,
    helmholtz_sonin,
    hilbert_form,
    homogenize,
    second_order_decompose,
)
from .operators import (
    P_operator,
    PsiMembership,
    canonical_representative,
    delta_field,
    psi_membership,
    total_derivative,
    total_derivative_field,
    variational_delta,
    vertical_S,
)
from .parsing import parse_components, parse_expression, parse_form
from .recovery import (
    RecoveryReport,
    fiber_potential,
    poincare_h,
    recover_first_order,
    recover_lagrangian,
)

__version__ = "0.1.0"
