"""Classical thermodynamics of model systems under a deformed phase-space measure.

The one-particle partition function is the phase-space integral of the
Boltzmann factor divided by the Jacobian of the deformed algebra.  For the
systems here the Jacobian depends on momentum only, so the position integral
factorises in closed form (a volume for free particles, a Gaussian for the
oscillator) and the momentum factor is computed by quadrature.  The overall
(2 pi hbar)^D phase-space constant is omitted throughout; it cancels in every
energy and heat-capacity expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from .deformation import DeformationParams, kempf_jacobian
from .numerics import (
    BoltzmannMoments,
    QuadratureSettings,
    _sphere_area,
    boltzmann_moments,
    heat_capacity_from_moments,
)


@dataclass(frozen=True)
class IdealGas:
    """Free particles of mass m confined to volume V."""

    volume: float
    mass: float
    particles: int = 1

    def __post_init__(self) -> None:
        if self.volume <= 0.0:
            raise ValueError(f"volume must be > 0, got {self.volume}")
        if self.mass <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.particles < 1:
            raise ValueError(f"particles must be >= 1, got {self.particles}")


@dataclass(frozen=True)
class Oscillator:
    """Isotropic three-dimensional harmonic oscillators."""

    mass: float
    omega: float
    particles: int = 1

    def __post_init__(self) -> None:
        if self.mass <= 0.0:
            raise ValueError(f"mass must be > 0, got {self.mass}")
        if self.omega <= 0.0:
            raise ValueError(f"omega must be > 0, got {self.omega}")
        if self.particles < 1:
            raise ValueError(f"particles must be >= 1, got {self.particles}")


@dataclass(frozen=True)
class PowerLaw:
    """Kinetic Hamiltonian alpha * P^exponent in D dimensions.

    The measure divides by a Jacobian (1 + beta P^2)^jacobian_growth, so the
    growth parameter s realises large-momentum behaviour P^(2s): s = 0 is the
    undeformed case, 2s = D the marginal minimal-length case with
    logarithmically growing partition function, 2s > D full saturation.
    """

    alpha: float
    exponent: float
    dimension: int
    jacobian_growth: float = 0.0
    particles: int = 1

    def __post_init__(self) -> None:
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.exponent <= 0.0:
            raise ValueError(f"exponent must be > 0, got {self.exponent}")
        if self.dimension < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dimension}")
        if self.jacobian_growth < 0.0:
            raise ValueError(f"jacobian_growth must be >= 0, got {self.jacobian_growth}")
        if self.particles < 1:
            raise ValueError(f"particles must be >= 1, got {self.particles}")


SystemModel = Union[IdealGas, Oscillator, PowerLaw]

METHOD_CLASSICAL = "classical"
METHOD_QUANTUM = "quantum"
METHOD_NONDEFORMED = "nondeformed"


@dataclass(frozen=True)
class ThermoPoint:
    """One-particle thermodynamic state at a single temperature."""

    T: float
    Z1: float
    E_per_N: float
    C_per_N: float
    method: str

    def __post_init__(self) -> None:
        if self.T <= 0.0:
            raise ValueError(f"T must be > 0, got {self.T}")
        if self.Z1 <= 0.0:
            raise ValueError(f"Z1 must be > 0, got {self.Z1}")
        if self.C_per_N < -1e-8:
            raise ValueError(f"C_per_N={self.C_per_N} below the numerical noise floor")


def _momentum_hamiltonian(system: SystemModel) -> Callable[[float], float]:
    if isinstance(system, (IdealGas, Oscillator)):
        m = system.mass
        return lambda P: P * P / (2.0 * m)
    alpha, n = system.alpha, system.exponent
    return lambda P: alpha * P ** n


def _jacobian(system: SystemModel, params: DeformationParams) -> Callable[[float], float]:
    if isinstance(system, (IdealGas, Oscillator)):
        return lambda P: kempf_jacobian(params, P * P)
    beta, s = params.beta, system.jacobian_growth
    return lambda P: (1.0 + beta * P * P) ** s


def _dimension(system: SystemModel) -> int:
    return system.dimension if isinstance(system, PowerLaw) else 3


def _momentum_moments(system: SystemModel, params: DeformationParams, T: float,
                      settings: QuadratureSettings | None) -> BoltzmannMoments:
    return boltzmann_moments(
        _momentum_hamiltonian(system), _jacobian(system, params),
        _dimension(system), T, settings)


def _position_factor(system: SystemModel, T: float) -> float:
    if isinstance(system, IdealGas):
        return system.volume
    if isinstance(system, Oscillator):
        # Gaussian integral of exp(-m w^2 X^2 / 2T) over three coordinates
        return (2.0 * math.pi * T / (system.mass * system.omega ** 2)) ** 1.5
    return 1.0


def classical_Z1(system: SystemModel, params: DeformationParams, T: float,
                 settings: QuadratureSettings | None = None) -> float:
    """One-particle partition function under the deformed measure.

    The position integral is exact (the Jacobian carries no coordinate
    dependence); the momentum factor comes from quadrature.  The power-law
    model uses the bare radial measure P^(D-1) dP without the angular factor,
    matching the convention in which its logarithmic high-temperature growth
    has slope 1/(gamma * exponent) with gamma = beta^s.
    """
    moments = _momentum_moments(system, params, T, settings)
    if isinstance(system, PowerLaw):
        return moments.Z_p / _sphere_area(system.dimension)
    return _position_factor(system, T) * moments.Z_p


def classical_thermo(system: SystemModel, params: DeformationParams, T: float,
                     settings: QuadratureSettings | None = None) -> ThermoPoint:
    """Energy and heat capacity per particle from the fluctuation formula.

    The Jacobian touches only the momentum measure, so position contributes
    its undeformed equipartition values: nothing for free particles, 3T/2 of
    mean energy plus 3/2 of heat capacity for the oscillator potential.
    """
    moments = _momentum_moments(system, params, T, settings)
    E = moments.meanH
    C = heat_capacity_from_moments(moments.meanH, moments.meanH2, T)
    if isinstance(system, Oscillator):
        E += 1.5 * T
        C += 1.5
    if isinstance(system, PowerLaw):
        Z1 = moments.Z_p / _sphere_area(system.dimension)
    else:
        Z1 = _position_factor(system, T) * moments.Z_p
    return ThermoPoint(T=T, Z1=Z1, E_per_N=E, C_per_N=C, method=METHOD_CLASSICAL)


def pressure(system: IdealGas, params: DeformationParams, T: float) -> float:
    """Ideal-gas pressure N T / V.

    The volume enters the partition function only as an explicit linear
    factor, so N T d(ln Z1)/dV reduces to N T / V for any deformation: the
    equation of state p V = N T survives the minimal length unchanged.
    """
    if not isinstance(system, IdealGas):
        raise TypeError("pressure is defined for the ideal-gas model only")
    if T <= 0.0:
        raise ValueError(f"T must be > 0, got {T}")
    return system.particles * T / system.volume


def pressure_finite_difference(system: IdealGas, params: DeformationParams, T: float,
                               settings: QuadratureSettings | None = None,
                               rel_step: float = 1e-4) -> float:
    """Pressure via Richardson-extrapolated central differences of ln Z1 in V.

    Numerical cross-check of ``pressure``; the momentum factor is identical
    on both sides of each difference, so only the volume dependence survives.
    """
    if not isinstance(system, IdealGas):
        raise TypeError("pressure is defined for the ideal-gas model only")

    def ln_z1(volume: float) -> float:
        shifted = IdealGas(volume=volume, mass=system.mass, particles=system.particles)
        return math.log(classical_Z1(shifted, params, T, settings))

    V = system.volume

    def central(h: float) -> float:
        return (ln_z1(V + h) - ln_z1(V - h)) / (2.0 * h)

    h = rel_step * V
    derivative = (4.0 * central(h / 2.0) - central(h)) / 3.0
    return system.particles * T * derivative


def freezing_limit(system: PowerLaw, params: DeformationParams, T_large: float,
                   settings: QuadratureSettings | None = None) -> float:
    """Heat capacity per particle of the power-law model at a large temperature.

    Compare against ``freezing_prediction``: D/n for an undeformed measure,
    zero whenever the Jacobian grows at least as fast as P^D.
    """
    if not isinstance(system, PowerLaw):
        raise TypeError("freezing_limit is defined for the power-law model only")
    return classical_thermo(system, params, T_large, settings).C_per_N


def freezing_prediction(system: PowerLaw) -> float:
    """Limiting heat capacity max(D - 2s, 0) / n of the power-law model.

    With the measure suppressed by P^(2s) at large momentum, only D - 2s
    effective momentum powers survive; a minimal-length Jacobian (2s >= D)
    freezes the kinetic contribution entirely.
    """
    return max(system.dimension - 2.0 * system.jacobian_growth, 0.0) / system.exponent


def nondeformed_ideal_gas_thermo(system: IdealGas, T: float) -> ThermoPoint:
    """Closed-form undeformed reference: Z1 = V (2 pi m T)^(3/2), C = 3/2."""
    Z1 = system.volume * (2.0 * math.pi * system.mass * T) ** 1.5
    return ThermoPoint(T=T, Z1=Z1, E_per_N=1.5 * T, C_per_N=1.5,
                       method=METHOD_NONDEFORMED)


def nondeformed_power_law_thermo(system: PowerLaw, T: float) -> ThermoPoint:
    """Closed-form undeformed power-law reference with Z1 proportional to T^(D/n)."""
    D, n, alpha = system.dimension, system.exponent, system.alpha
    Z1 = math.gamma(D / n) / n * (T / alpha) ** (D / n)
    return ThermoPoint(T=T, Z1=Z1, E_per_N=(D / n) * T, C_per_N=D / n,
                       method=METHOD_NONDEFORMED)
