"""Generalised summation-by-parts discretisations in one space dimension.

Energy-stable semidiscretisations of variable-coefficient advection and
Burgers' equation on nodal Lobatto and Gauss bases, with the interface
flux catalog, eigenvalue analysis and the experiment drivers used to
study conservation, stability and convergence behaviour.
"""

from .advection import (
    PERIODIC,
    AdvectionScheme,
    EnergyWeight,
    Form,
    Inflow,
    Periodic,
    SchemeConfig,
    energy,
    rhs_noncons_general,
    rhs_noncons_simplified,
    rhs_split_general,
    rhs_unsplit,
    theta_operator_check,
    total_mass,
)
from .burgers import BurgersScheme, interface_entropy_rate, rhs_burgers
from .errors import (
    AnalysisError,
    ConfigurationError,
    ConstructionError,
    DivergenceError,
    DomainError,
    GsbpError,
)
from .exact import ErrorNorm, advection_cosh_solution, burgers_exact, discrete_error, eoc
from .fluxes import (
    FluxKind,
    InterfaceTrace,
    evaluate_flux,
    godunov_burgers,
    interface_trace,
)
from .mesh import Mesh, SpeedMode, discretize_speed, make_mesh, sample_function
from .operators import (
    NodeFamily,
    SbpOperator,
    build_operator,
    derivative_matrix,
    legendre_eval,
    m_adjoint,
    nodes_weights,
    restriction_matrix,
)
from .spectrum import (
    AffineOperator,
    assemble_affine,
    eigenvalue_residual,
    eigenvalues,
    spectral_abscissa,
)
from .timestepping import integrate, ssprk104_step

__all__ = [
    "AdvectionScheme",
    "AffineOperator",
    "AnalysisError",
    "BurgersScheme",
    "ConfigurationError",
    "ConstructionError",
    "DivergenceError",
    "DomainError",
    "EnergyWeight",
    "ErrorNorm",
    "FluxKind",
    "Form",
    "GsbpError",
    "Inflow",
    "InterfaceTrace",
    "Mesh",
    "NodeFamily",
    "PERIODIC",
    "Periodic",
    "SbpOperator",
    "SchemeConfig",
    "SpeedMode",
    "advection_cosh_solution",
    "assemble_affine",
    "build_operator",
    "burgers_exact",
    "derivative_matrix",
    "discrete_error",
    "discretize_speed",
    "energy",
    "eoc",
    "eigenvalue_residual",
    "eigenvalues",
    "evaluate_flux",
    "godunov_burgers",
    "integrate",
    "interface_entropy_rate",
    "interface_trace",
    "legendre_eval",
    "m_adjoint",
    "make_mesh",
    "nodes_weights",
    "restriction_matrix",
    "rhs_burgers",
    "rhs_noncons_general",
    "rhs_noncons_simplified",
    "rhs_split_general",
    "rhs_unsplit",
    "sample_function",
    "spectral_abscissa",
    "ssprk104_step",
    "theta_operator_check",
    "total_mass",
]
