"""Quadrature, Boltzmann moments, spectral sums, fluctuation heat capacity."""

import math
from itertools import count

import numpy as np
import pytest

from gupthermo.deformation import DeformationParams, kempf_jacobian
from gupthermo.numerics import (
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


class TestSettings:
    def test_quadrature_validation(self):
        with pytest.raises(ValueError):
            QuadratureSettings(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSettings(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSettings(max_subdivisions=5)

    def test_series_validation(self):
        with pytest.raises(ValueError):
            SeriesSettings(tail_rel_tol=0.0)
        with pytest.raises(ValueError):
            SeriesSettings(max_terms=0)


class TestRadialIntegral:
    def test_gaussian(self):
        value = radial_integral(lambda P: 4.0 * math.pi * P * P * math.exp(-P * P))
        assert value == pytest.approx(math.pi ** 1.5, rel=1e-10)

    def test_saturated_deformed_measure(self):
        # equal deformation parameters: closed form pi^2 / (sqrt(b)(sqrt(b)+sqrt(2b))^2)
        b = 0.01
        params = DeformationParams(b, b)
        value = radial_integral(
            lambda P: 4.0 * math.pi * P * P / kempf_jacobian(params, P * P))
        expected = math.pi ** 2 / (math.sqrt(b) * (math.sqrt(b) + math.sqrt(2 * b)) ** 2)
        assert value == pytest.approx(expected, rel=1e-9)

    def test_zero_integrand(self):
        assert radial_integral(lambda P: 0.0) == 0.0

    def test_linearity(self):
        f = lambda P: P * P * math.exp(-P * P)
        g = lambda P: math.exp(-2.0 * P)
        combined = radial_integral(lambda P: 3.0 * f(P) - 0.5 * g(P))
        assert combined == pytest.approx(
            3.0 * radial_integral(f) - 0.5 * radial_integral(g), rel=1e-9)

    def test_far_displaced_peak(self):
        # mass near P = 50 must be located by the scan, not missed
        value = radial_integral(lambda P: math.exp(-((P - 50.0) ** 2)))
        assert value == pytest.approx(math.sqrt(math.pi), rel=1e-8)

    def test_non_convergence_raises(self):
        settings = QuadratureSettings(rel_tol=1e-13, abs_tol=0.0, max_subdivisions=10)
        with pytest.raises(QuadratureError) as info:
            radial_integral(lambda P: math.exp(-P) * abs(math.sin(100.0 * P)), settings)
        assert info.value.residual > 0.0

    def test_nonfinite_integrand_raises(self):
        with pytest.raises(QuadratureError):
            radial_integral(lambda P: math.inf if P > 1.0 else 0.0)


class TestBoltzmannMoments:
    def test_maxwell_oracle(self):
        # H = P^2 / 2m, no deformation: Z_p = (2 pi m T)^(3/2), <H> = 3T/2,
        # <H^2> = 15 T^2 / 4
        m, T = 0.5, 1.0
        Z, meanH, meanH2 = boltzmann_moments(
            lambda P: P * P / (2 * m), lambda P: 1.0, 3, T)
        assert Z == pytest.approx((2 * math.pi * m * T) ** 1.5, rel=1e-10)
        assert meanH == pytest.approx(1.5 * T, rel=1e-10)
        assert meanH2 == pytest.approx(3.75 * T * T, rel=1e-10)

    def test_two_dimensional_surface_factor(self):
        # D = 2: Z_p = 2 pi integral of P exp(-P^2/2mT) = 2 pi m T
        m, T = 1.0, 2.0
        Z, meanH, _ = boltzmann_moments(lambda P: P * P / (2 * m), lambda P: 1.0, 2, T)
        assert Z == pytest.approx(2 * math.pi * m * T, rel=1e-10)
        assert meanH == pytest.approx(T, rel=1e-10)

    def test_continuity_at_zero_deformation(self):
        m, T = 0.5, 3.0
        H = lambda P: P * P / (2 * m)
        tiny = DeformationParams(1e-12, 1e-12)
        Z0, E0, _ = boltzmann_moments(H, lambda P: 1.0, 3, T)
        Z1, E1, _ = boltzmann_moments(H, lambda P: kempf_jacobian(tiny, P * P), 3, T)
        assert Z1 == pytest.approx(Z0, rel=1e-9)
        assert E1 == pytest.approx(E0, rel=1e-9)

    def test_invalid_arguments(self):
        H = lambda P: P * P
        with pytest.raises(ValueError):
            boltzmann_moments(H, lambda P: 1.0, 3, 0.0)
        with pytest.raises(ValueError):
            boltzmann_moments(H, lambda P: 1.0, 0, 1.0)


def nondeformed_oscillator_levels(hbar_omega=1.0):
    for n in count():
        yield hbar_omega * (n + 1.5), (n + 1) * (n + 2) / 2.0


class TestSumLevels:
    def test_single_level(self):
        result = sum_levels([(0.0, 1.0)], 1.0)
        assert result.Z == 1.0
        assert result.meanE == 0.0

    def test_two_levels_high_temperature(self):
        delta = 0.4
        result = sum_levels([(0.0, 1.0), (delta, 1.0)], 1e9)
        assert result.Z == pytest.approx(2.0, rel=1e-9)
        assert result.meanE == pytest.approx(delta / 2.0, rel=1e-8)

    @pytest.mark.parametrize("T", [0.1, 1.0, 5.0, 20.0, 50.0, 100.0])
    def test_nondeformed_oscillator_closed_form(self, T):
        result = sum_levels(nondeformed_oscillator_levels(), T)
        assert result.Z == pytest.approx(
            (2.0 * math.sinh(0.5 / T)) ** -3, rel=1e-10)

    def test_matches_direct_partial_sum(self):
        # independent oracle: brute-force partial sum far past the cutoff
        T = 2.0
        n_grid = np.arange(0, 400)
        energies = n_grid + 1.5
        weights = (n_grid + 1) * (n_grid + 2) / 2.0 * np.exp(-energies / T)
        result = sum_levels(nondeformed_oscillator_levels(), T)
        assert result.Z == pytest.approx(float(weights.sum()), rel=1e-12)
        assert result.meanE == pytest.approx(
            float((weights * energies).sum() / weights.sum()), rel=1e-12)

    def test_array_groups_equal_singleton_stream(self):
        T = 3.0
        singles = sum_levels(nondeformed_oscillator_levels(), T)
        paired = sum_levels(
            ((np.array([2 * k + 1.5, 2 * k + 2.5]),
              np.array([(2 * k + 1) * (2 * k + 2) / 2.0, (2 * k + 2) * (2 * k + 3) / 2.0]))
             for k in count()), T)
        assert paired.Z == pytest.approx(singles.Z, rel=1e-11)
        assert paired.meanE2 == pytest.approx(singles.meanE2, rel=1e-10)

    def test_max_terms_guard(self):
        with pytest.raises(SeriesError):
            sum_levels(nondeformed_oscillator_levels(), 5.0,
                       SeriesSettings(max_terms=10))

    def test_decreasing_increments_rejected(self):
        levels = [(0.0, 1.0), (10.0, 1.0), (11.0, 1.0), (12.0, 1.0)]
        with pytest.raises(NonMonotoneTailError):
            sum_levels(levels, 100.0)

    def test_invalid_temperature(self):
        with pytest.raises(ValueError):
            sum_levels([(0.0, 1.0)], -1.0)


class TestHeatCapacity:
    def test_classical_gas_moments(self):
        T = 1.7
        assert heat_capacity_from_moments(1.5 * T, 3.75 * T * T, T) == pytest.approx(1.5)

    def test_zero_variance(self):
        assert heat_capacity_from_moments(2.0, 4.0, 3.0) == 0.0

    def test_einstein_limit(self):
        # summed oscillator heat capacity approaches 3 at T >> level spacing
        T = 40.0
        result = sum_levels(nondeformed_oscillator_levels(), T)
        C = heat_capacity_from_moments(result.meanE, result.meanE2, T)
        x = 1.0 / T
        einstein = 3.0 * x * x * math.exp(x) / math.expm1(x) ** 2
        assert C == pytest.approx(einstein, rel=1e-9)
        assert C == pytest.approx(3.0, rel=1e-3)

    def test_negative_variance_raises(self):
        with pytest.raises(NegativeVarianceError):
            heat_capacity_from_moments(2.0, 3.9, 1.0)

    def test_invalid_temperature(self):
        with pytest.raises(ValueError):
            heat_capacity_from_moments(1.0, 2.0, 0.0)


class TestFluctuationVersusFiniteDifference:
    """The variance route must agree with Richardson-extrapolated dE/dT."""

    @staticmethod
    def finite_difference_heat_capacity(energy_of_T, T):
        h = 1e-3 * T

        def central(step):
            return (energy_of_T(T + step) - energy_of_T(T - step)) / (2.0 * step)

        return (4.0 * central(h / 2.0) - central(h)) / 3.0

    def test_classical_deformed_gas(self):
        from gupthermo.semiclassical import IdealGas, classical_thermo
        gas = IdealGas(volume=1.0, mass=0.5)
        params = DeformationParams(0.01, 0.01)
        for T in (0.5, 5.0):
            point = classical_thermo(gas, params, T)
            fd = self.finite_difference_heat_capacity(
                lambda t: classical_thermo(gas, params, t).E_per_N, T)
            assert abs(point.C_per_N - fd) < 1e-6

    def test_quantum_oscillator(self):
        from gupthermo.quantum_spectrum import OscillatorQuantumParams, quantum_thermo
        params = OscillatorQuantumParams(mass=0.5, omega=1.0, hbar=1.0,
                                         beta=0.01, beta_prime=0.01)
        for T in (1.0, 10.0):
            point = quantum_thermo(params, T)
            fd = self.finite_difference_heat_capacity(
                lambda t: quantum_thermo(params, t).E_per_N, T)
            assert abs(point.C_per_N - fd) < 1e-6
