"""Thermodynamics of systems with minimal-length deformed commutation relations.

Core pieces: deformed bracket algebras and their phase-space Jacobians
(:mod:`gupthermo.deformation`), quadrature and spectral-sum machinery
(:mod:`gupthermo.numerics`), classical thermodynamics under the deformed
measure (:mod:`gupthermo.semiclassical`), the exact deformed oscillator
spectrum (:mod:`gupthermo.quantum_spectrum`), closed-form temperature
expansions (:mod:`gupthermo.asymptotics`), and the sweep/report runners
behind the HTTP service and CLI (:mod:`gupthermo.runners`).
"""

__version__ = "0.1.0"

from .asymptotics import (
    ExpansionResult,
    ZeroDeformationError,
    highT_ideal_gas,
    highT_oscillator,
    lowT_correction_factor,
    lowT_heat_capacity,
)
from .deformation import (
    BracketSet,
    DeformationParams,
    DimensionTooLarge,
    PairingTable,
    canonical_brackets,
    jacobian_bruteforce,
    jacobian_generic,
    kempf_brackets,
    kempf_jacobian,
    linearized_jacobian,
    pairing_table,
)
from .numerics import (
    BoltzmannMoments,
    LevelSum,
    NegativeVarianceError,
    NonMonotoneTailError,
    QuadratureError,
    QuadratureSettings,
    SeriesError,
    SeriesSettings,
    boltzmann_moments,
    heat_capacity_from_moments,
    radial_integral,
    sum_levels,
)
from .quantum_spectrum import (
    InvalidQuantumNumberError,
    OscillatorQuantumParams,
    SpectrumLevel,
    einstein_heat_capacity,
    energy_nl,
    level_iterator,
    nondeformed_partition,
    quantum_thermo,
)
from .runners import (
    JacobianReport,
    LimitReport,
    SweepConfig,
    SweepFailure,
    rows_to_csv,
    run_jacobian_verify,
    run_limits,
    run_sweep,
)
from .semiclassical import (
    IdealGas,
    Oscillator,
    PowerLaw,
    SystemModel,
    ThermoPoint,
    classical_Z1,
    classical_thermo,
    freezing_limit,
    freezing_prediction,
    pressure,
    pressure_finite_difference,
)
