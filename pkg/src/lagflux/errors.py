"""Exception hierarchy shared by the solver, the oracle and the CLI."""


class LagFluxError(Exception):
    """Base class for all package errors."""


class InvalidState(LagFluxError, ValueError):
    """A cell state is not admissible (rho <= 0 or e <= 0).

    ``cell`` and ``step`` are filled in by the time loop when known.
    """

    def __init__(self, message, cell=None, step=None):
        super().__init__(message)
        self.cell = cell
        self.step = step


class NonPositiveDensity(InvalidState):
    pass


class NonPositivePressure(InvalidState):
    pass


class VacuumGenerated(LagFluxError):
    """The Riemann data violate the pressure positivity condition."""


class UsageError(LagFluxError):
    """Bad command line or configuration input."""
