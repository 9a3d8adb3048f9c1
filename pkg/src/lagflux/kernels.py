"""Step-kernel backend selection.

``lf_step(Ue, gamma, alpha, beta, dt_over_h)`` takes the conservative
states with one ghost cell per side, shape (3, N + 2), C-contiguous, all
cells admissible, and returns

    U_new (3, N), flux (3, N + 1), u_star (N + 1), pi_plus (N + 1),
    pi_minus (N + 1), psi (N + 1), eta_old (N + 2), eta_new (N),
    max_speed_new, bad

where ``bad`` is the index of the first updated cell with rho <= 0 or
p <= 0, or -1. When ``bad >= 0`` eta_new and max_speed_new are not usable.

The compiled backend is used when it is importable, unless the environment
variable ``LAGFLUX_BACKEND`` is set to ``python``.
"""
import os

from . import _core_py

try:
    from . import _core as _core_c
except ImportError:  # extension not built
    _core_c = None

AVAILABLE = {"python": _core_py.lf_step}
if _core_c is not None:
    AVAILABLE["compiled"] = _core_c.lf_step


def _select():
    wanted = os.environ.get("LAGFLUX_BACKEND", "auto").lower()
    if wanted == "python" or _core_c is None:
        return "python"
    return "compiled"


BACKEND = _select()
lf_step = AVAILABLE[BACKEND]


def get_kernel(name=None):
    """Return the kernel for ``name`` ('compiled' or 'python'), default the active one."""
    if name is None:
        return lf_step
    try:
        return AVAILABLE[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available") from None
