import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from crwscatter import (ChannelWave, CrwParams, DomainError, dispersion_energy,
                        flow, wave_number)


class TestDispersionEnergy:
    def test_band_center(self):
        assert dispersion_energy(CrwParams(0.0, 1.0), math.pi / 2) == pytest.approx(0.0, abs=1e-15)

    def test_lower_band_edge_limit(self):
        e = dispersion_energy(CrwParams(0.0, 1.0), 1e-9)
        assert e == pytest.approx(-2.0, abs=1e-12)

    def test_direct_substitution(self):
        e = dispersion_energy(CrwParams(0.5, 2.0), math.pi / 3)
        assert e == pytest.approx(-1.5, abs=1e-12)

    @pytest.mark.parametrize("k", [0.0, math.pi, -0.3, 4.0])
    def test_rejects_out_of_domain_wave_numbers(self, k):
        with pytest.raises(DomainError):
            dispersion_energy(CrwParams(0.0, 1.0), k)


class TestWaveNumber:
    def test_band_center(self):
        wave = wave_number(CrwParams(0.0, 1.0), 0.0)
        assert wave.propagating
        assert wave.k == pytest.approx(math.pi / 2, abs=1e-15)

    def test_in_band_point(self):
        wave = wave_number(CrwParams(0.0, 1.0), 1.0)
        assert wave.propagating
        assert wave.k.real == pytest.approx(2 * math.pi / 3, abs=1e-12)

    def test_below_band_is_evanescent(self):
        wave = wave_number(CrwParams(0.0, 1.0), -2.5)
        assert not wave.propagating
        assert wave.k == pytest.approx(1j * math.acosh(1.25), abs=1e-12)

    def test_above_band_is_evanescent(self):
        wave = wave_number(CrwParams(0.0, 1.0), 3.0)
        assert not wave.propagating
        assert wave.k.real == pytest.approx(math.pi)
        assert wave.k.imag == pytest.approx(math.acosh(1.5), abs=1e-12)

    @pytest.mark.parametrize("energy,k_edge", [(-2.0, 0.0), (2.0, math.pi)])
    def test_band_edges_do_not_propagate(self, energy, k_edge):
        wave = wave_number(CrwParams(0.0, 1.0), energy)
        assert not wave.propagating
        assert wave.k == pytest.approx(k_edge)
        assert wave.group_velocity == 0.0

    @given(k=st.floats(0.01, math.pi - 0.01),
           omega=st.floats(-2.0, 2.0),
           xi=st.floats(0.2, 3.0))
    def test_round_trip(self, k, omega, xi):
        crw = CrwParams(omega, xi)
        wave = wave_number(crw, dispersion_energy(crw, k))
        assert wave.propagating
        assert abs(wave.k - k) < 1e-12

    @given(offset=st.floats(1e-6, 10.0), above=st.booleans(),
           omega=st.floats(-1.0, 1.0), xi=st.floats(0.2, 3.0))
    def test_evanescent_branch_decays(self, offset, above, omega, xi):
        energy = omega + (2.0 * xi + offset) * (1 if above else -1)
        wave = wave_number(CrwParams(omega, xi), energy)
        assert not wave.propagating
        assert wave.k.imag > 0.0
        assert abs(cmath.exp(1j * wave.k)) < 1.0

    @given(k=st.floats(0.01, math.pi - 0.01), omega=st.floats(-1.0, 1.0),
           xi=st.floats(0.2, 3.0))
    def test_propagating_wave_satisfies_dispersion(self, k, omega, xi):
        crw = CrwParams(omega, xi)
        wave = wave_number(crw, dispersion_energy(crw, k))
        assert abs(wave.energy - (omega - 2.0 * xi * math.cos(wave.k.real))) < 1e-12


class TestFlow:
    def setup_method(self):
        self.wave = wave_number(CrwParams(0.0, 1.0), 0.0)

    def test_unit_amplitude_same_channel(self):
        assert flow(-1.0, self.wave, self.wave) == pytest.approx(1.0)

    def test_square_modulus(self):
        assert flow(0.5, self.wave, self.wave) == pytest.approx(0.25)

    def test_evanescent_outgoing_carries_nothing(self):
        out = wave_number(CrwParams(0.0, 1.0), -2.5)
        assert flow(123.4 + 5j, out, self.wave) == 0.0

    def test_evanescent_incident_is_refused(self):
        inc = wave_number(CrwParams(0.0, 1.0), -2.5)
        with pytest.raises(DomainError):
            flow(0.5, self.wave, inc)

    def test_band_edge_incident_is_refused(self):
        inc = wave_number(CrwParams(0.0, 1.0), 2.0)
        with pytest.raises(DomainError):
            flow(0.5, self.wave, inc)

    def test_group_velocity_ratio(self):
        out = wave_number(CrwParams(0.0, 0.5), 0.0)  # k = pi/2, xi = 1/2
        assert flow(1.0, out, self.wave) == pytest.approx(0.5, abs=1e-12)

    @given(theta=st.floats(0.0, 2 * math.pi), mag=st.floats(0.0, 3.0))
    def test_phase_invariance(self, theta, mag):
        amp = mag * cmath.exp(1j * theta)
        assert flow(amp, self.wave, self.wave) == pytest.approx(mag * mag, abs=1e-12)


def test_channel_wave_is_plain_data():
    wave = ChannelWave(energy=0.0, k=complex(math.pi / 2), xi=1.0, propagating=True)
    assert wave.group_velocity == pytest.approx(1.0)


def test_crw_params_validation():
    with pytest.raises(DomainError):
        CrwParams(0.0, 0.0)
    with pytest.raises(DomainError):
        CrwParams(0.0, -1.0)
    lo, hi = CrwParams(0.5, 2.0).band
    assert (lo, hi) == (-3.5, 4.5)
