"""Deformed oscillator spectrum and spectral thermodynamics."""

import math
from itertools import groupby, islice

import pytest

from gupthermo.numerics import sum_levels
from gupthermo.quantum_spectrum import (
    InvalidQuantumNumberError,
    OscillatorQuantumParams,
    einstein_heat_capacity,
    energy_nl,
    level_iterator,
    nondeformed_partition,
    nondeformed_thermo,
    quantum_thermo,
)

FIG_PARAMS = OscillatorQuantumParams(mass=0.5, omega=1.0, hbar=1.0,
                                     beta=0.01, beta_prime=0.01)
UNDEFORMED = OscillatorQuantumParams(mass=0.5, omega=1.0, hbar=1.0)


class TestEnergy:
    def test_params_validation(self):
        with pytest.raises(ValueError):
            OscillatorQuantumParams(mass=0.0, omega=1.0)
        with pytest.raises(ValueError):
            OscillatorQuantumParams(mass=1.0, omega=1.0, beta=-0.1)

    def test_quantum_number_validation(self):
        with pytest.raises(InvalidQuantumNumberError):
            energy_nl(FIG_PARAMS, -1, 0)
        with pytest.raises(InvalidQuantumNumberError):
            energy_nl(FIG_PARAMS, 2, 3)
        with pytest.raises(InvalidQuantumNumberError):
            energy_nl(FIG_PARAMS, 2, 1)  # parity mismatch
        with pytest.raises(InvalidQuantumNumberError):
            energy_nl(FIG_PARAMS, 2, -2)

    def test_undeformed_limit(self):
        for n in range(0, 12):
            for l in range(n % 2, n + 1, 2):
                assert energy_nl(UNDEFORMED, n, l) == pytest.approx(n + 1.5, rel=1e-14)

    def test_ground_state_value(self):
        # direct substitution: 1.5 sqrt(1 + 0.25 * (0.04^2 / 4)) + 0.25 * 0.06
        expected = 1.5 * math.sqrt(1.0 + 0.25 * 0.04 ** 2 / 4.0) + 0.25 * 0.06
        assert energy_nl(FIG_PARAMS, 0, 0) == pytest.approx(expected, rel=1e-15)
        assert energy_nl(FIG_PARAMS, 0, 0) == pytest.approx(1.5150750, abs=1e-7)

    def test_quadratic_growth_coefficient(self):
        # E / n^2 tends to hbar*omega * (m*omega*hbar/2) * (b + b') at fixed
        # l; the subleading linear term decays like 1/(coefficient * n)
        n = 1_000_000
        coefficient = 0.25 * 0.02
        assert energy_nl(FIG_PARAMS, n, 0) / n ** 2 == pytest.approx(
            coefficient, rel=1e-3)

    def test_deformation_splits_l(self):
        assert energy_nl(FIG_PARAMS, 2, 2) != energy_nl(FIG_PARAMS, 2, 0)
        assert energy_nl(UNDEFORMED, 2, 2) == energy_nl(UNDEFORMED, 2, 0)

    @pytest.mark.parametrize("beta,beta_prime", [(0.01, 0.01), (0.02, 0.01), (0.3, 0.0)])
    def test_monotone_in_n_and_l(self, beta, beta_prime):
        # holds whenever beta >= beta_prime; a dominant beta' lowers energies
        # with growing l instead
        params = OscillatorQuantumParams(mass=0.5, omega=1.0, hbar=1.0,
                                         beta=beta, beta_prime=beta_prime)
        for l in (0, 1, 4, 9):
            energies = [energy_nl(params, n, l) for n in range(l, 201, 2)]
            assert all(a < b for a, b in zip(energies, energies[1:]))
        for n in (10, 51, 200):
            energies = [energy_nl(params, n, l) for l in range(n % 2, n + 1, 2)]
            assert all(a <= b for a, b in zip(energies, energies[1:]))


class TestLevelIterator:
    def test_first_shells(self):
        levels = list(islice(level_iterator(FIG_PARAMS), 4))
        assert [(lv.n, lv.l) for lv in levels] == [(0, 0), (1, 1), (2, 2), (2, 0)]
        assert [lv.degeneracy for lv in levels] == [1, 3, 5, 1]

    def test_shell_degeneracy_identity(self):
        stream = level_iterator(FIG_PARAMS)
        grouped = groupby(islice(stream, sum(n // 2 + 1 for n in range(101))),
                          key=lambda lv: lv.n)
        for n, shell in grouped:
            total = sum(lv.degeneracy for lv in shell)
            assert total == (n + 1) * (n + 2) // 2

    def test_undeformed_energies_and_multiplicities(self):
        by_shell = {}
        for lv in islice(level_iterator(UNDEFORMED), 200):
            assert lv.energy == pytest.approx(lv.n + 1.5, rel=1e-14)
            by_shell[lv.n] = by_shell.get(lv.n, 0) + lv.degeneracy
        for n, total in by_shell.items():
            if n < max(by_shell):
                assert total == (n + 1) * (n + 2) // 2

    def test_shell_minima_nondecreasing(self):
        minima = []
        for n, shell in groupby(islice(level_iterator(FIG_PARAMS), 3000),
                                key=lambda lv: lv.n):
            minima.append(min(lv.energy for lv in shell))
        assert all(a <= b for a, b in zip(minima, minima[1:]))


class TestQuantumThermo:
    @pytest.mark.parametrize("T", [0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0])
    def test_undeformed_closed_forms(self, T):
        point = quantum_thermo(UNDEFORMED, T)
        assert point.Z1 == pytest.approx(nondeformed_partition(1.0, 1.0, T), rel=1e-10)
        assert point.C_per_N == pytest.approx(
            einstein_heat_capacity(1.0, 1.0, T), rel=1e-8, abs=1e-10)
        assert point.method == "quantum"

    def test_matches_level_iterator_partial_sum(self):
        # direct accumulation of the level stream far beyond the thermal
        # cutoff must reproduce the tail-bounded result
        for T in (1.0, 5.0):
            point = quantum_thermo(FIG_PARAMS, T)
            w_sum = e_sum = 0.0
            for lv in islice(level_iterator(FIG_PARAMS), 40000):
                w = lv.degeneracy * math.exp(-lv.energy / T)
                w_sum += w
                e_sum += w * lv.energy
            assert point.Z1 == pytest.approx(w_sum, rel=1e-11)
            assert point.E_per_N == pytest.approx(e_sum / w_sum, rel=1e-11)

    def test_matches_grouped_level_stream_through_sum_levels(self):
        # the public level iterator fed through the spectral accumulator in
        # paired-shell groups equals the internal vectorised path
        T = 2.0
        point = quantum_thermo(FIG_PARAMS, T)

        def paired_groups():
            shells = groupby(level_iterator(FIG_PARAMS), key=lambda lv: lv.n)
            while True:
                # materialise each shell before advancing: groupby reuses
                # the underlying iterator
                _, shell = next(shells)
                group = [(lv.energy, float(lv.degeneracy)) for lv in shell]
                _, shell = next(shells)
                group += [(lv.energy, float(lv.degeneracy)) for lv in shell]
                yield group

        result = sum_levels(paired_groups(), T)
        assert result.Z == pytest.approx(point.Z1, rel=1e-13)
        assert result.meanE == pytest.approx(point.E_per_N, rel=1e-13)

    def test_low_temperature_gap(self):
        # Boltzmann suppression through the gap of about 1.02
        assert quantum_thermo(FIG_PARAMS, 0.05).C_per_N < 1e-5
        assert abs(quantum_thermo(FIG_PARAMS, 0.02).C_per_N) < 1e-10

    def test_high_temperature_heads_to_three_halves(self):
        values = [quantum_thermo(FIG_PARAMS, T).C_per_N for T in (20.0, 50.0, 120.0)]
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] < 1.8
        assert values[-1] > 1.5

    def test_classical_agreement_at_high_temperature(self):
        from gupthermo.deformation import DeformationParams
        from gupthermo.semiclassical import Oscillator, classical_thermo
        osc = Oscillator(mass=0.5, omega=1.0)
        params = DeformationParams(0.01, 0.01)
        for T in (5.0, 12.0, 50.0):
            cq = quantum_thermo(FIG_PARAMS, T).C_per_N
            cc = classical_thermo(osc, params, T).C_per_N
            assert abs(cq - cc) / cc < 0.05


class TestNondeformedReference:
    def test_closed_forms(self):
        T = 3.0
        point = nondeformed_thermo(1.0, 1.0, T)
        assert point.method == "nondeformed"
        assert point.Z1 == pytest.approx((2.0 * math.sinh(0.5 / T)) ** -3)
        summed = quantum_thermo(UNDEFORMED, T)
        assert point.Z1 == pytest.approx(summed.Z1, rel=1e-10)
        assert point.E_per_N == pytest.approx(summed.E_per_N, rel=1e-10)
        assert point.C_per_N == pytest.approx(summed.C_per_N, rel=1e-9)
