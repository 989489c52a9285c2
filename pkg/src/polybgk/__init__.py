"""Discrete-velocity solver and verification harness for coupled BGK models
of binary polyatomic gas mixtures."""

from .errors import (
    ConfigError,
    InsufficientDecayError,
    NegativeTemperatureError,
    NonContractionWarning,
    NumericalError,
    PolybgkError,
    StepSizeError,
    TruncationError,
    VacuumError,
)
from .fields import DistributionField, l1_xi2_distance, l1_xi2_norm, weighted_sup_norm
from .grid import GridConfig, PhaseSpaceGrid, build_grid
from .maxwellian import (
    DomainError,
    equilibrium_maxwellian,
    exchange_maxwellians,
    fixed_offset_equilibrium,
    maxwellian,
    maxwellian_factors,
)
from .mixture import (
    ExchangeSet,
    exchange_energy_gain,
    exchange_eta,
    exchange_momentum_gain,
    exchange_temperatures,
    exchange_velocities,
)
from .moments import Moments, compute_moments, equilibrium_temperature, lambda_from_internal
from .species import (
    MixtureCouplingParams,
    SpeciesParams,
    ValidationReport,
    validate_coupling,
)

__version__ = "0.1.0"
