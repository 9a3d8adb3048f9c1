"""Run configuration and the flat ``key = value`` config-file format."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import UsageError
from .euler import GasModel, PrimitiveState
from .lagrange_flux import ViscosityParams
from .riemann import SOD, RiemannProblem
from .solver import BoundaryCondition, Grid1D


@dataclass(frozen=True)
class SolverConfig:
    problem: RiemannProblem = SOD
    problem_name: str = "sod"
    n_cells: int = 400
    x_min: float = 0.0
    x_max: float = 1.0
    gamma: float = 1.4
    alpha: float = 0.5
    beta: float | None = None  # None means (gamma + 1)/2
    cfl: float = 0.25
    t_final: float = 0.23
    bc: BoundaryCondition = BoundaryCondition.TRANSMISSIVE
    output_path: str = "out"
    output_times: tuple = ()
    emit_plots: bool = False
    with_reference: bool = False

    def __post_init__(self):
        if self.n_cells < 2:
            raise UsageError("n_cells must be >= 2")
        if not 0.0 < self.cfl < 0.5:
            raise UsageError(f"cfl must lie in (0, 0.5), got {self.cfl}")
        if not self.x_max > self.x_min:
            raise UsageError("x_max must exceed x_min")
        if not 1.0 < self.gamma <= 3.0:
            raise UsageError(f"gamma must lie in (1, 3], got {self.gamma}")
        if self.alpha < 0.0 or (self.beta is not None and self.beta < 0.0):
            raise UsageError("alpha and beta must be >= 0")
        if self.t_final < 0.0:
            raise UsageError("t_final must be >= 0")
        try:
            object.__setattr__(self, "bc", BoundaryCondition(self.bc))
        except ValueError:
            raise UsageError(f"unknown boundary condition {self.bc!r}") from None

    @property
    def gas(self) -> GasModel:
        return GasModel(self.gamma)

    @property
    def params(self) -> ViscosityParams:
        beta = 0.5 * (self.gamma + 1.0) if self.beta is None else self.beta
        return ViscosityParams(self.alpha, beta)

    @property
    def grid(self) -> Grid1D:
        return Grid1D(self.n_cells, self.x_min, self.x_max)

    def replace(self, **changes) -> SolverConfig:
        return replace(self, **changes)


def _floats(text):
    return tuple(float(v) for v in text.replace(",", " ").split())


def _bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CONVERTERS = {
    "n_cells": int,
    "x_min": float,
    "x_max": float,
    "gamma": float,
    "alpha": float,
    "beta": float,
    "cfl": float,
    "t_final": float,
    "bc": str,
    "output_path": str,
    "output_times": _floats,
    "emit_plots": _bool,
    "with_reference": _bool,
}


def parse_config_text(text: str, source="<config>") -> dict:
    """Parse ``key = value`` lines into a dict of typed values.

    Blank lines and ``#`` comments are ignored. ``left`` and ``right`` take
    three numbers ``rho, u, p``.
    """
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        try:
            if key in _CONVERTERS:
                out[key] = _CONVERTERS[key](value)
            elif key in ("left", "right"):
                vals = _floats(value)
                if len(vals) != 3:
                    raise ValueError("expected rho, u, p")
                out[key] = vals
            elif key == "x_diaphragm":
                out[key] = float(value)
            elif key == "problem":
                out[key] = value
            else:
                raise UsageError(f"{source}:{lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise UsageError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
    return out


def read_config_file(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    return parse_config_text(text, str(path))


def build_config(values: dict) -> SolverConfig:
    """Assemble a SolverConfig from merged key/value settings."""
    values = dict(values)
    name = values.pop("problem", "sod")
    left = values.pop("left", None)
    right = values.pop("right", None)
    x0 = values.pop("x_diaphragm", None)
    if name == "sod":
        if left is not None or right is not None:
            raise UsageError("left/right states require --problem custom")
        problem = SOD if x0 is None else RiemannProblem(SOD.left, SOD.right, x0)
    elif name == "custom":
        if left is None or right is None:
            raise UsageError("custom problem needs both left and right states")
        try:
            problem = RiemannProblem(
                PrimitiveState(*left), PrimitiveState(*right), 0.5 if x0 is None else x0
            )
        except TypeError:
            raise UsageError("left/right states need rho, u, p") from None
        if min(left[0], left[2], right[0], right[2]) <= 0.0:
            raise UsageError("custom states need positive density and pressure")
    else:
        raise UsageError(f"unknown problem {name!r}")
    known = {f.name for f in fields(SolverConfig)}
    unknown = set(values) - known
    if unknown:
        raise UsageError(f"unknown settings: {sorted(unknown)}")
    return SolverConfig(problem=problem, problem_name=name, **values)
