"""Stationary and nonequilibrium dressing of a quantum movable mirror in a 1D cavity."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    CouplingMatrix,
    ModeBasis,
    PhysicalConstants,
    PhysicalParams,
    build_coupling_matrix,
    build_mode_basis,
    static_casimir_energy,
)
from .stationary import DressedAmplitudes, StationaryShifts, dressed_amplitudes, stationary_shifts  # noqa: E402
from .dynamics import (  # noqa: E402
    DynamicBreakdown,
    TimeGrid,
    dynamic_breakdown,
    f_kernel,
    field_energy_shift,
    local_interaction_energy,
    mirror_energy_shift,
    round_trip_time,
    window_average,
)
from .continuum import (  # noqa: E402
    ContinuumConfig,
    continuum_field_mirror,
    continuum_local_energy,
    continuum_window_average,
    stationary_continuum,
)
from .two_cavity import TwoCavityParams, two_cavity_breakdown, two_cavity_local_energy  # noqa: E402
