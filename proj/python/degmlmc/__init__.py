"""MC and MLMC finite difference solvers for degenerate convection-diffusion equations.

Settings are passed as keyword arguments using the config file keys
(``model``, ``scheme``, ``dx``, ``T``, ``M``, ``L``, ``seed`` ...).
"""

from ._core import (
    Error,
    capillary_pressure,
    config_keys,
    diffusion_coefficient,
    fractional_flow,
    philox4x32,
    sample_allocation,
    thomas_periodic,
)
from . import _core

__all__ = [
    "Error",
    "capillary_pressure",
    "config_keys",
    "convergence_study",
    "diffusion_coefficient",
    "fractional_flow",
    "mc_estimate",
    "mlmc_estimate",
    "philox4x32",
    "sample_allocation",
    "solve",
    "thomas_periodic",
]


def solve(parameters=(), **settings):
    """Single deterministic run. Returns dict with x, u, time, work."""
    return _core.solve(settings, list(parameters))


def mc_estimate(**settings):
    """Monte Carlo mean and std at spacing ``dx`` with ``M`` samples."""
    return _core.mc_estimate(settings)


def mlmc_estimate(**settings):
    """MLMC mean/std on the hierarchy (dx0, K, L, m_base) plus level diagnostics."""
    return _core.mlmc_estimate(settings)


def convergence_study(**settings):
    """RE table over L = 0..L with N replicates and fitted rates."""
    return _core.convergence_study(settings)
