"""Closed-form temperature expansions for cross-validating the numerics.

Deformation becomes noticeable once beta*m*T is of order one, so beta*m*T is
the regime indicator: expansions below carry it as ``validity`` and flag
evaluations outside their regime instead of refusing them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

from .deformation import DeformationParams
from .semiclassical import IdealGas, Oscillator

LOW_T_LIMIT = 0.1
HIGH_T_LIMIT = 10.0


class ZeroDeformationError(ValueError):
    """High-temperature limit requested at beta = 0 where it does not exist."""


@dataclass(frozen=True)
class ExpansionResult:
    value: float
    regime: str              # "low_T" or "high_T"
    validity: float          # beta * m * T at evaluation
    in_regime: bool

    def __post_init__(self) -> None:
        if self.validity <= 0.0:
            raise ValueError(f"validity must be > 0, got {self.validity}")


def _low_t_result(value: float, params: DeformationParams, m: float, T: float) -> ExpansionResult:
    validity = max(params.beta * m * T, 1e-300)
    return ExpansionResult(value=value, regime="low_T", validity=validity,
                           in_regime=validity < LOW_T_LIMIT)


def lowT_correction_factor(params: DeformationParams, m: float, T: float) -> ExpansionResult:
    """Leading low-temperature ratio Z/Z0 = 1 - 3(3b + b') m T."""
    value = 1.0 - 3.0 * (3.0 * params.beta + params.beta_prime) * m * T
    return _low_t_result(value, params, m, T)


def lowT_heat_capacity(system: Union[IdealGas, Oscillator], params: DeformationParams,
                       T: float) -> ExpansionResult:
    """Leading low-temperature heat capacity C0/N - 6(3b + b') m T.

    C0/N is 3/2 for the gas and 3 for the oscillator.
    """
    if isinstance(system, IdealGas):
        c0 = 1.5
    elif isinstance(system, Oscillator):
        c0 = 3.0
    else:
        raise TypeError(f"low-T expansion covers the gas and oscillator models, "
                        f"got {type(system).__name__}")
    m = system.mass
    value = c0 - 6.0 * (3.0 * params.beta + params.beta_prime) * m * T
    return _low_t_result(value, params, m, T)


def highT_ideal_gas(params: DeformationParams, m: float, V: float) -> Tuple[float, float]:
    """Saturated gas partition function and the kinetic-energy plateau.

    Z_limit = V pi^2 / (sqrt(b) (sqrt(b) + sqrt(b + b'))^2) and
    E_plateau = (1 / 2 m b) (2 sqrt(b) + sqrt(b + b')) / sqrt(b + b').
    Both are temperature-independent limits, approached as the thermal
    momentum passes the deformation scale 1/sqrt(b).
    """
    b, bp = params.beta, params.beta_prime
    if b <= 0.0:
        raise ZeroDeformationError("the high-temperature limit requires beta > 0")
    root_b = math.sqrt(b)
    root_sum = math.sqrt(b + bp)
    z_limit = V * math.pi ** 2 / (root_b * (root_b + root_sum) ** 2)
    e_plateau = (2.0 * root_b + root_sum) / (2.0 * m * b * root_sum)
    return z_limit, e_plateau


def highT_oscillator(params: DeformationParams, m: float, omega: float) -> float:
    """Coefficient A of the high-temperature oscillator growth Z ~ A T^(3/2).

    Only the Gaussian position integral keeps a temperature dependence once
    the momentum measure saturates, so the heat capacity tends to 3/2.
    """
    b, bp = params.beta, params.beta_prime
    if b <= 0.0:
        raise ZeroDeformationError("the high-temperature limit requires beta > 0")
    root_b = math.sqrt(b)
    root_sum = math.sqrt(b + bp)
    momentum_limit = math.pi ** 2 / (root_b * (root_b + root_sum) ** 2)
    return (2.0 * math.pi / (m * omega ** 2)) ** 1.5 * momentum_limit
