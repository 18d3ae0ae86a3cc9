"""Classical and modified Bernstein-Durrmeyer operators of orders I, II and III."""

from .analysis import (
    Grid,
    convergence_order,
    direct_bound,
    error_report,
    modulus_first,
    modulus_second,
    quantitative_voronovskaja_check,
    voronovskaja_residual,
)
from .basis import (
    LinearCoeff,
    QuadraticCoeffSet,
    QuarticCoeffSet,
    bernstein,
    modified_basis_m1,
    modified_basis_m2,
    modified_basis_m3,
)
from .functions import TargetFunction, get_function
from .moments import MomentQuery, closed_form, moment_bruteforce
from .operators import Family, OperatorSpec, apply, apply_on_grid, decompose_m1, preset
from .quadrature import basis_function_integral, basis_monomial_integral, make_rule

__version__ = "0.1.0"
