"""Semi-discrete Lagrange-Flux finite-volume solver for 1D compressible Euler flow."""
from .errors import (
    InvalidState,
    LagFluxError,
    NonPositiveDensity,
    NonPositivePressure,
    UsageError,
    VacuumGenerated,
)
from .euler import (
    ConservativeState,
    GasModel,
    PrimitiveState,
    conservative_from_primitive,
    entropy_eta,
    physical_flux,
    primitive_from_conservative,
    sound_speed,
    specific_entropy,
)
from .lagrange_flux import (
    InterfaceResolution,
    ViscosityParams,
    compatibility_residuals,
    interface_velocity,
    numerical_flux,
    resolve_interface,
    viscosity_increment,
)
from .riemann import SOD, RiemannProblem, StarRegion, reference_profile, sample, solve_star
from .solver import (
    BoundaryCondition,
    DiagnosticsRecord,
    Grid1D,
    SolverState,
    compute_dt,
    conservation_totals,
    entropy_flux_psi,
    entropy_residual,
    run,
    step,
)
from .config import SolverConfig

__version__ = "0.1.0"
