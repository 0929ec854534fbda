"""Single-photon scattering in coupled-resonator waveguide networks.

Closed-form scattering matrices and flows for the nonreciprocal two-port
junction and the T-shaped three-port circulator, the analytic optimal
conditions for both, an independent lattice solver for cross-checking,
and sweep/figure tooling exposed through the ``crw-scatter`` CLI.
"""

from .dispersion import dispersion_energy, flow, wave_number
from .errors import (ConfigError, ConvergenceError, CrwError, DomainError,
                     PoleError, SingularMatrixError)
from .kernels import NUMBA_ENABLED
from .lattice import (LatticeSolution, absorbed_fraction, compare,
                      flows_from_solution, solve_scattering)
from .threeport import (BandOverlap, CirculatorConditions, ThreePortSystem,
                        band_overlap, circulator_conditions, smatrix_three_port,
                        smatrix_three_port_closed_form, symmetric_three_port)
from .twoport import (EffectiveCouplings, NonreciprocityConditions,
                      TwoPortSystem, effective_couplings,
                      nonreciprocity_conditions, params_for_detuning,
                      smatrix_two_port, symmetric_two_port)
from .types import ChannelWave, CrwParams, NodeParams, ScatteringResult

__version__ = "0.1.0"

__all__ = [
    "CrwParams", "NodeParams", "ChannelWave", "ScatteringResult",
    "dispersion_energy", "wave_number", "flow",
    "TwoPortSystem", "symmetric_two_port", "EffectiveCouplings",
    "effective_couplings", "smatrix_two_port", "NonreciprocityConditions",
    "nonreciprocity_conditions", "params_for_detuning",
    "ThreePortSystem", "symmetric_three_port", "smatrix_three_port",
    "smatrix_three_port_closed_form", "CirculatorConditions",
    "circulator_conditions", "BandOverlap", "band_overlap",
    "LatticeSolution", "solve_scattering", "compare", "flows_from_solution",
    "absorbed_fraction",
    "CrwError", "DomainError", "PoleError", "SingularMatrixError",
    "ConvergenceError", "ConfigError",
    "NUMBA_ENABLED",
    "__version__",
]
