"""Lê numbers, polar numbers and Milnor-fiber topology of polynomial
hypersurface singularities at the origin, computed exactly over Q."""

__version__ = "0.1.0"

from .ideal import (  # noqa: E402
    NOT_ZERO_DIMENSIONAL,
    Context,
    Ideal,
    Limits,
    groebner_basis,
    ideal_quotient,
    krull_dim,
    local_multiplicity,
    normal_form,
    saturation,
    standard_basis,
)
from .kernels import BACKEND  # noqa: E402
from .lenumbers import (  # noqa: E402
    LeResult,
    critical_data,
    existence_check,
    gamma_number,
    lambda_number,
    le_numbers,
    polar_curve_report,
    polar_ideal,
)
from .parsing import parse_polynomial  # noqa: E402
from .polyring import (  # noqa: E402
    DEGREVLEX,
    LEX,
    NEGDEGREVLEX,
    MonomialOrder,
    Polynomial,
    Ring,
    ShearMatrix,
    apply_shear,
    evaluate,
    partial_derivative,
    poly_mul,
)
from .topology import (  # noqa: E402
    AbelianGroup,
    HomologyProfile,
    join_homology,
    le_iomdine_predict,
    milnor_fiber_report,
    milnor_number,
    restriction_predict,
    sebastiani_thom_milnor,
)
