"""Ideal-gas 1D Euler equations: states, equation of state, entropy pair, flux.

Every function works on scalars and on numpy arrays alike; a state whose
fields are arrays of length N describes N cells at once.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveDensity, NonPositivePressure


@dataclass(frozen=True)
class GasModel:
    """Perfect gas with ratio of specific heats ``gamma`` in (1, 3]."""

    gamma: float = 1.4

    def __post_init__(self):
        if not 1.0 < self.gamma <= 3.0:
            raise ValueError(f"gamma must lie in (1, 3], got {self.gamma}")


@dataclass(frozen=True)
class ConservativeState:
    """Conservative variables (rho, rho*u, rho*E)."""

    rho: float | np.ndarray
    mom: float | np.ndarray
    etot: float | np.ndarray

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.mom, self.etot], dtype=float)

    @classmethod
    def from_array(cls, a) -> ConservativeState:
        a = np.asarray(a, dtype=float)
        return cls(a[0], a[1], a[2])


@dataclass(frozen=True)
class PrimitiveState:
    """Primitive variables (rho, u, p)."""

    rho: float | np.ndarray
    u: float | np.ndarray
    p: float | np.ndarray

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.u, self.p], dtype=float)

    @classmethod
    def from_array(cls, a) -> PrimitiveState:
        a = np.asarray(a, dtype=float)
        return cls(a[0], a[1], a[2])


def _first_bad(mask) -> int | None:
    if np.ndim(mask) == 0:
        return None
    return int(np.flatnonzero(mask)[0])


def _check_density(rho):
    # written as "not > 0" so that NaN is rejected too
    bad = ~(np.asarray(rho) > 0.0)
    if np.any(bad):
        raise NonPositiveDensity("non-positive density", cell=_first_bad(bad))


def _check_pressure(p):
    bad = ~(np.asarray(p) > 0.0)
    if np.any(bad):
        raise NonPositivePressure(
            "non-positive pressure (internal energy)", cell=_first_bad(bad)
        )


def pressure(U: ConservativeState, gas: GasModel):
    """Pressure p = (gamma - 1) * (rho*E - (rho*u)^2 / (2 rho)), unchecked."""
    u = U.mom / U.rho
    return (gas.gamma - 1.0) * (U.etot - 0.5 * U.mom * u)


def primitive_from_conservative(U: ConservativeState, gas: GasModel) -> PrimitiveState:
    _check_density(U.rho)
    u = U.mom / U.rho
    p = (gas.gamma - 1.0) * (U.etot - 0.5 * U.mom * u)
    _check_pressure(p)
    return PrimitiveState(U.rho, u, p)


def conservative_from_primitive(W: PrimitiveState, gas: GasModel) -> ConservativeState:
    _check_density(W.rho)
    _check_pressure(W.p)
    mom = W.rho * W.u
    etot = W.p / (gas.gamma - 1.0) + 0.5 * mom * W.u
    return ConservativeState(W.rho, mom, etot)


def internal_energy(W: PrimitiveState, gas: GasModel):
    """Specific internal energy e = p / ((gamma - 1) rho)."""
    return W.p / ((gas.gamma - 1.0) * W.rho)


def sound_speed(W: PrimitiveState, gas: GasModel):
    _check_density(W.rho)
    _check_pressure(W.p)
    return np.sqrt(gas.gamma * W.p / W.rho)


def log_specific_entropy(W: PrimitiveState, gas: GasModel):
    """log(p / rho^gamma), evaluated as log p - gamma log rho."""
    _check_density(W.rho)
    _check_pressure(W.p)
    return np.log(W.p) - gas.gamma * np.log(W.rho)


def specific_entropy(W: PrimitiveState, gas: GasModel):
    return np.exp(log_specific_entropy(W, gas))


def entropy_eta(U: ConservativeState, gas: GasModel):
    """Mathematical entropy density eta(U) = -rho log s."""
    W = primitive_from_conservative(U, gas)
    return -U.rho * log_specific_entropy(W, gas)


def physical_flux(U: ConservativeState, gas: GasModel) -> np.ndarray:
    """Exact flux (rho u, rho u^2 + p, (rho E + p) u), stacked along axis 0."""
    W = primitive_from_conservative(U, gas)
    return np.array(
        [U.mom, U.mom * W.u + W.p, (U.etot + W.p) * W.u], dtype=float
    )
