"""Shared numerical machinery.

Adaptive quadrature on the semi-infinite radial momentum domain, Boltzmann
moments of a Hamiltonian under a Jacobian-weighted measure, tail-bounded
summation of discrete spectra, and the fluctuation route to heat capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq


class QuadratureError(RuntimeError):
    """Adaptive quadrature exhausted its budget above the requested tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class SeriesError(RuntimeError):
    """Spectral sum could not be brought below the tail tolerance."""


class NonMonotoneTailError(SeriesError):
    """Group-minimum energy increments stopped growing, so no geometric tail
    bound applies."""


class NegativeVarianceError(ValueError):
    """Second moment fell below the squared mean beyond numerical tolerance."""


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0:
            raise ValueError(f"rel_tol must be > 0, got {self.rel_tol}")
        if self.abs_tol < 0.0:
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol}")
        if self.max_subdivisions < 10:
            raise ValueError(f"max_subdivisions must be >= 10, got {self.max_subdivisions}")


@dataclass(frozen=True)
class SeriesSettings:
    tail_rel_tol: float = 1e-12
    max_terms: int = 10 ** 8

    def __post_init__(self) -> None:
        if self.tail_rel_tol <= 0.0:
            raise ValueError(f"tail_rel_tol must be > 0, got {self.tail_rel_tol}")
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be >= 1, got {self.max_terms}")


# Fixed scan grid used to normalise integrands before handing them to the
# adaptive routine.  Covers fourteen decades of P below 1 and twelve decades
# of 1/P above 1 so that sharply localised integrands are still seen.
_SCAN_U = np.unique(np.concatenate([
    np.geomspace(1e-14, 0.5, 121),
    1.0 - np.geomspace(1e-12, 0.5, 121),
]))


def radial_integral(integrand: Callable[[float], float],
                    settings: QuadratureSettings | None = None) -> float:
    """Integrate f(P) over P in [0, inf) by adaptive panel subdivision.

    The substitution u = P / (1 + P) maps the half line onto [0, 1); it keeps
    power-law tails integrable and leaves plenty of floating-point resolution
    for integrands concentrated at small P.  The integrand is rescaled by its
    largest sampled magnitude so the relative tolerance governs convergence
    regardless of the absolute scale of the result.
    """
    settings = settings or QuadratureSettings()

    def mapped(u: float) -> float:
        P = u / (1.0 - u)
        return integrand(P) / (1.0 - u) ** 2

    scale = float(np.max(np.abs([mapped(u) for u in _SCAN_U])))
    if scale == 0.0 or not math.isfinite(scale):
        if scale == 0.0:
            return 0.0
        raise QuadratureError("integrand is not finite on the scan grid", math.inf)

    result = quad(
        lambda u: mapped(u) / scale,
        0.0, 1.0,
        epsabs=0.0,
        epsrel=settings.rel_tol,
        limit=settings.max_subdivisions,
        full_output=1,
    )
    value, abserr = result[0] * scale, result[1] * scale
    if len(result) > 3:  # quad appended a convergence complaint
        budget = max(settings.abs_tol, settings.rel_tol * abs(value))
        if abserr > budget:
            raise QuadratureError(
                f"quadrature did not converge within {settings.max_subdivisions} "
                f"subdivisions; residual estimate {abserr:.3e} exceeds budget {budget:.3e}",
                abserr,
            )
    return value


class BoltzmannMoments(NamedTuple):
    Z_p: float
    meanH: float
    meanH2: float


def _sphere_area(D: int) -> float:
    """Surface area of the unit sphere in D dimensions, 2 pi^(D/2) / Gamma(D/2)."""
    return 2.0 * math.pi ** (D / 2.0) / math.gamma(D / 2.0)


def _thermal_momentum(H: Callable[[float], float], T: float) -> float:
    """Momentum where the Hamiltonian reaches T; used to precondition the
    radial integrals.  Assumes H is continuous, increasing and H(0) < T."""
    hi = 1.0
    while H(hi) < T:
        hi *= 2.0
        if hi > 1e300:
            raise QuadratureError("could not bracket the thermal momentum scale", math.inf)
    return float(brentq(lambda P: H(P) - T, 0.0, hi, rtol=1e-14))


def boltzmann_moments(H: Callable[[float], float],
                      J: Callable[[float], float],
                      D: int,
                      T: float,
                      settings: QuadratureSettings | None = None) -> BoltzmannMoments:
    """Momentum-space partition factor and energy moments.

    Z_p = S_D * integral of P^(D-1) exp(-H/T) / J over [0, inf) with
    S_D the unit-sphere area (4 pi at D=3); meanH and meanH2 are the H and
    H^2 averages under the same weight.  Momenta are rescaled by the thermal
    scale H(P)=T before quadrature so the exponential knee always sits at an
    order-one argument.
    """
    if T <= 0.0:
        raise ValueError(f"T must be > 0, got {T}")
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    settings = settings or QuadratureSettings()
    p_scale = _thermal_momentum(H, T)

    def moment(power: int) -> float:
        def f(q: float) -> float:
            P = p_scale * q
            h = H(P)
            weight = math.exp(-h / T) if h / T < 745.0 else 0.0
            if weight == 0.0:
                return 0.0
            return p_scale * P ** (D - 1) * weight / J(P) * h ** power
        return radial_integral(f, settings)

    base = moment(0)
    if base <= 0.0:
        raise QuadratureError("momentum partition factor vanished", 0.0)
    return BoltzmannMoments(
        Z_p=_sphere_area(D) * base,
        meanH=moment(1) / base,
        meanH2=moment(2) / base,
    )


class LevelSum(NamedTuple):
    Z: float
    meanE: float
    meanE2: float


def _as_group(item) -> Tuple[np.ndarray, np.ndarray]:
    """Normalise one iterator item to (energies, degeneracies) arrays.

    A 2-tuple is always read as (energies, degeneracies), scalar entries
    forming a singleton group; any other iterable is read as a sequence of
    (E, g) pairs.
    """
    if isinstance(item, tuple) and len(item) == 2:
        E, g = np.asarray(item[0], dtype=float), np.asarray(item[1], dtype=float)
        if E.ndim == 0:
            return E.reshape(1), g.reshape(1)
        return np.atleast_1d(E), np.atleast_1d(g)
    pairs = list(item)
    E = np.array([p[0] for p in pairs], dtype=float)
    g = np.array([p[1] for p in pairs], dtype=float)
    return E, g


def sum_levels(levels: Iterable, T: float,
               settings: SeriesSettings | None = None) -> LevelSum:
    """Accumulate Z = sum g exp(-E/T) with first and second energy moments.

    ``levels`` yields spectral groups whose minimum energies are nondecreasing
    with nondecreasing increments (single (E, g) pairs count as groups of
    one).  Termination uses a geometric envelope: with D the latest increment
    of group minima, r_g the latest total-degeneracy ratio and r_E the latest
    maximum-energy ratio, the remaining groups are dominated by
    G_k r_g^j * (E_k r_E^j)^m * exp(-(Emin_k + j D)/T) for the m-th moment,
    which sums to a geometric series once r_g r_E^2 exp(-D/T) < 1.  Valid for
    spectra with polynomial degeneracy growth and at-least-linear energy
    growth; decreasing increments raise ``NonMonotoneTailError``.
    """
    if T <= 0.0:
        raise ValueError(f"T must be > 0, got {T}")
    settings = settings or SeriesSettings()
    tol = settings.tail_rel_tol

    parts0, parts1, parts2 = [], [], []
    S0 = S1 = S2 = 0.0
    terms = 0
    prev_min = None
    prev_increment = None
    prev_degeneracy = None
    prev_emax = None

    for item in levels:
        E, g = _as_group(item)
        terms += E.size
        if terms > settings.max_terms:
            raise SeriesError(f"series exceeded max_terms={settings.max_terms} "
                              f"without meeting the tail tolerance")
        weights = g * np.exp(-E / T)
        p0 = float(weights.sum())
        p1 = float((weights * E).sum())
        p2 = float((weights * E * E).sum())
        parts0.append(p0)
        parts1.append(p1)
        parts2.append(p2)
        S0 += p0
        S1 += p1
        S2 += p2

        emin = float(E.min())
        emax = float(E.max())
        gtot = float(g.sum())

        if prev_min is not None:
            increment = emin - prev_min
            if prev_increment is not None:
                slack = 1e-9 * max(abs(prev_increment), 1e-300)
                if increment < prev_increment - slack:
                    raise NonMonotoneTailError(
                        f"group-minimum increments decreased ({prev_increment:.6g} -> "
                        f"{increment:.6g}); the geometric tail bound does not apply")
            if increment > 0.0 and S0 > 0.0:
                r_g = gtot / prev_degeneracy
                r_E = max(emax / prev_emax, 1.0) if prev_emax > 0.0 else math.inf
                decay = math.exp(-increment / T)
                head = gtot * math.exp(-emin / T)
                rho0 = r_g * decay
                rho2 = r_g * r_E * r_E * decay if math.isfinite(r_E) else math.inf
                if rho2 < 1.0:
                    rho1 = r_g * r_E * decay
                    tail0 = head * rho0 / (1.0 - rho0)
                    tail1 = head * emax * rho1 / (1.0 - rho1)
                    tail2 = head * emax * emax * rho2 / (1.0 - rho2)
                    ok0 = tail0 <= tol * S0
                    ok1 = tail1 <= tol * S1 if S1 > 0.0 else tail1 <= tol * S0 * max(emax, 1.0)
                    ok2 = tail2 <= tol * S2 if S2 > 0.0 else True
                    if ok0 and ok1 and ok2:
                        break
            prev_increment = increment
        prev_min = emin
        prev_degeneracy = gtot
        prev_emax = emax
    # exhausting the iterator is a valid termination: the tail is empty

    Z = math.fsum(parts0)
    if Z <= 0.0:
        raise SeriesError("partition sum is not positive; spectrum may be empty "
                          "or entirely underflowed at this temperature")
    return LevelSum(Z=Z, meanE=math.fsum(parts1) / Z, meanE2=math.fsum(parts2) / Z)


def heat_capacity_from_moments(meanE: float, meanE2: float, T: float) -> float:
    """Heat capacity per particle from the energy variance, (⟨E²⟩-⟨E⟩²)/T².

    Exact in the canonical ensemble and free of finite-difference noise.  A
    variance below the negative numerical-noise floor signals inconsistent
    moments and raises ``NegativeVarianceError``.
    """
    if T <= 0.0:
        raise ValueError(f"T must be > 0, got {T}")
    variance = meanE2 - meanE * meanE
    if variance < -1e-8 * max(abs(meanE2), meanE * meanE, 1e-300):
        raise NegativeVarianceError(
            f"meanE2={meanE2!r} is below meanE^2={meanE * meanE!r} beyond tolerance")
    return variance / (T * T)
