import numpy as np
import pytest
from hypothesis import strategies as st

from lagflux.euler import GasModel, PrimitiveState
from lagflux.lagrange_flux import ViscosityParams


@pytest.fixture
def gas():
    return GasModel(1.4)


@pytest.fixture
def params():
    return ViscosityParams(0.5, 1.2)


def random_primitive(rng, n, rho=(0.05, 10.0), u=(-5.0, 5.0), p=(0.05, 10.0)):
    """Log-uniform density and pressure, uniform velocity."""
    return PrimitiveState(
        np.exp(rng.uniform(np.log(rho[0]), np.log(rho[1]), n)),
        rng.uniform(u[0], u[1], n),
        np.exp(rng.uniform(np.log(p[0]), np.log(p[1]), n)),
    )


positive = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)
velocity = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)
primitive_states = st.builds(PrimitiveState, positive, velocity, positive)
gammas = st.floats(min_value=1.01, max_value=3.0)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].lstrip("AC").rstrip(":"))):
            terminalreporter.write_line(line)
