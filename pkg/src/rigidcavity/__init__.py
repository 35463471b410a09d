"""Bogoliubov coefficients for a rigid, arbitrarily accelerated cavity at small acceleration.

Mode mixing and particle creation are Fourier integrals of the proper
acceleration; this package evaluates them, locates the resonances, and treats
the mixing as a beamsplitter acting on Gaussian states.
"""

from .bogoliubov import (
    BogoliubovBlock,
    ValidityError,
    ahat_element,
    bhat_element,
    bogoliubov_block_1d,
    bogoliubov_block_3d,
    compose,
)
from .cavity import (
    CavitySpec1D,
    CavitySpec3D,
    ModeIndex3D,
    mode_frequency_1d,
    mode_frequency_3d,
    paraxial_frequency,
    reduce_to_1d,
)
from .kernels import BACKEND
from .profiles import (
    PiecewiseConstant,
    ProfileWindow,
    Sampled,
    Sinusoidal,
    VectorProfile,
    circular_profile,
    validate,
)
from .quadrature import QuadratureSpec, oscillatory_integral
from .resonance import (
    feasibility_report,
    resonance_frequency,
    resonance_scan,
    scenario_growth_rate,
    scenario_resonance,
)

__version__ = "0.1.0"
