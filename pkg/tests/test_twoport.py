import dataclasses
import math

import numpy as np
import pytest

from crwscatter import (CrwParams, DomainError, NodeParams, PoleError,
                        TwoPortSystem, dispersion_energy, effective_couplings,
                        nonreciprocity_conditions, params_for_detuning,
                        smatrix_two_port, symmetric_two_port)
from crwscatter.verify import random_two_port

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class TestEffectiveCouplings:
    def test_resonant_damped_cavity(self):
        sys = symmetric_two_port(xi=1.0, j_c=1.0, gamma=1.0, delta=0.0)
        eff = effective_couplings(sys, 0.0)
        assert eff.j_ba_eff == pytest.approx(-1j)
        assert eff.j_aa_eff == pytest.approx(-1j)
        assert eff.j_bb_eff == pytest.approx(-1j)

    def test_decoupled_cavity(self):
        sys = symmetric_two_port(xi=1.0, j_c=0.0, gamma=0.5)
        eff = effective_couplings(sys, 0.7)
        assert eff.j_ba_eff == 0 and eff.j_aa_eff == 0 and eff.j_bb_eff == 0

    def test_general_complex_value(self):
        # j_bc * j_ca / (E - omega_c + i gamma) = 2 / (-1 + 0.5i) = -1.6 - 0.8i
        crw = CrwParams(0.0, 1.0)
        node = NodeParams(j_ab=1.0, j_bc=1.0, j_ca=2.0, omega_c=1.0, gamma=0.5)
        eff = effective_couplings(TwoPortSystem(crw, crw, node), 0.0)
        assert eff.j_ba_eff == pytest.approx(-1.6 - 0.8j, abs=1e-15)
        assert eff.j_aa_eff == pytest.approx(4.0 / (-1.0 + 0.5j), abs=1e-15)
        assert eff.j_bb_eff == pytest.approx(1.0 / (-1.0 + 0.5j), abs=1e-15)

    def test_pole_is_refused(self):
        sys = symmetric_two_port(xi=1.0, j_c=1.0, gamma=0.0, delta=0.5)
        with pytest.raises(PoleError):
            effective_couplings(sys, 0.5)

    def test_product_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            sys, energy, _ = random_two_port(rng)
            eff = effective_couplings(sys, energy)
            lhs = eff.j_ba_eff ** 2
            rhs = eff.j_aa_eff * eff.j_bb_eff
            assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), abs(rhs), 1e-300)


class TestScatteringMatrix:
    def test_perfect_forward_point(self):
        sys = symmetric_two_port(xi=1.0, j_c=1.0, gamma=1.0, delta=0.0, phi=math.pi / 2)
        res = smatrix_two_port(sys, dispersion_energy(sys.crw_a, math.pi / 2))
        assert res.amplitude("b", "a") == pytest.approx(-1.0, abs=1e-10)
        assert abs(res.amplitude("a", "b")) <= 1e-10
        assert res.flow("b", "a") == pytest.approx(1.0, abs=1e-10)
        assert res.flow("a", "b") <= 1e-10

    def test_perfect_point_with_unbalanced_couplings(self):
        sys = symmetric_two_port(xi=1.0, j_c=SQRT2, gamma=SQRT3, delta=0.0, phi=math.pi / 3)
        res = smatrix_two_port(sys, dispersion_energy(sys.crw_a, math.pi / 3))
        assert res.flow("b", "a") == pytest.approx(1.0, abs=1e-10)
        assert res.flow("a", "b") <= 1e-10

    def test_zero_phase_is_reciprocal(self):
        sys = symmetric_two_port(xi=1.3, j_c=0.8, gamma=0.4, delta=0.2, phi=0.0)
        res = smatrix_two_port(sys, 0.37)
        assert res.amplitude("a", "b") == res.amplitude("b", "a")

    def test_flows_reciprocal_at_phase_pi_with_asymmetric_couplings(self):
        # raw amplitudes stay reciprocal only for identical chains, but the
        # flux-normalized flows are direction symmetric whenever phi is 0 or pi
        crw = CrwParams(0.0, 1.0)
        node = NodeParams(j_ab=1.0, j_bc=0.5, j_ca=1.0, phi=math.pi,
                          omega_c=0.4, gamma=0.6)
        res = smatrix_two_port(TwoPortSystem(crw, crw, node), 0.3)
        assert res.flow("a", "b") == pytest.approx(res.flow("b", "a"), abs=1e-12)

    def test_absorption_is_positive_with_damping(self):
        sys = symmetric_two_port(xi=1.0, j_c=1.0, gamma=0.7, delta=0.1, phi=1.0)
        res = smatrix_two_port(sys, 0.4)
        assert 0.0 < res.absorption("a") < 1.0
        assert 0.0 < res.absorption("b") < 1.0

    def test_pole_energy_is_refused(self):
        sys = symmetric_two_port(xi=1.0, j_c=1.0, gamma=0.0, delta=0.3)
        with pytest.raises(PoleError):
            smatrix_two_port(sys, 0.3)

    def test_out_of_band_columns_have_nan_flows(self):
        sys = TwoPortSystem(crw_a=CrwParams(0.0, 1.0), crw_b=CrwParams(5.0, 1.0),
                            node=NodeParams(j_ab=1.0, j_bc=1.0, j_ca=1.0, gamma=0.5))
        res = smatrix_two_port(sys, 0.0)  # inside a's band, far below b's
        assert np.all(np.isnan(res.flows[:, res.index("b")]))
        assert res.flow("b", "a") == 0.0  # evanescent outgoing

    def test_passivity_over_random_systems(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            sys, energy, incident = random_two_port(rng)
            res = smatrix_two_port(sys, energy)
            assert res.column_sum(incident) <= 1.0 + 1e-10

    def test_lossless_flux_conservation(self):
        rng = np.random.default_rng(13)
        for _ in range(60):
            sys, energy, incident = random_two_port(rng)
            lossless = dataclasses.replace(sys, node=dataclasses.replace(sys.node, gamma=0.0))
            if energy == lossless.node.omega_c:
                continue
            res = smatrix_two_port(lossless, energy)
            assert res.column_sum(incident) == pytest.approx(1.0, abs=1e-10)


class TestNonreciprocityConditions:
    def test_balanced_point(self):
        rep = nonreciprocity_conditions(1.0, 1.0, 1.0)
        assert rep.phi_forward == pytest.approx(math.pi / 2)
        assert rep.phi_backward == pytest.approx(3 * math.pi / 2)
        assert rep.k_perfect == pytest.approx(math.pi / 2)
        assert rep.delta_required == pytest.approx(0.0, abs=1e-12)
        assert rep.j_ab_required == 1.0
        assert rep.balanced

    def test_unbalanced_point(self):
        rep = nonreciprocity_conditions(1.0, SQRT2, SQRT3)
        assert rep.phi_forward == pytest.approx(math.pi / 3, abs=1e-12)
        assert rep.delta_required == pytest.approx(0.0, abs=1e-12)
        assert not rep.balanced

    def test_overdamped_has_no_phase(self):
        with pytest.raises(DomainError):
            nonreciprocity_conditions(1.0, 1.0, 2.0)

    def test_delta_matching(self):
        rep = nonreciprocity_conditions(1.0, 1.5, 0.5, delta=(1.5 ** 2 - 2.0) * math.cos(math.asin(0.5 / 1.5 ** 2)))
        assert rep.delta_matches
        rep = nonreciprocity_conditions(1.0, 1.5, 0.5, delta=0.7)
        assert rep.delta_matches is False

    def test_composed_perfect_point(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            xi = rng.uniform(0.5, 2.0)
            j_c = rng.uniform(0.4, 2.0)
            gamma = rng.uniform(0.05, 1.0) * j_c ** 2 / xi
            rep = nonreciprocity_conditions(xi, j_c, gamma)
            energy = dispersion_energy(symmetric_two_port(xi=xi).crw_a, rep.k_perfect)

            fwd = symmetric_two_port(xi=xi, j_c=j_c, gamma=gamma,
                                     delta=rep.delta_required, phi=rep.phi_forward)
            res = smatrix_two_port(fwd, energy)
            assert res.flow("b", "a") == pytest.approx(1.0, abs=1e-10)
            assert res.flow("a", "b") <= 1e-10

            back = symmetric_two_port(xi=xi, j_c=j_c, gamma=gamma,
                                      delta=rep.delta_required, phi=rep.phi_backward)
            res = smatrix_two_port(back, energy)
            assert res.flow("a", "b") == pytest.approx(1.0, abs=1e-10)
            assert res.flow("b", "a") <= 1e-10


class TestParamsForDetuning:
    def test_zero_detuning(self):
        j_c, gamma = params_for_detuning(1.0, 0.0, math.pi / 3)
        assert j_c == pytest.approx(SQRT2, abs=1e-12)
        assert gamma == pytest.approx(SQRT3, abs=1e-12)

    def test_positive_detuning(self):
        j_c, gamma = params_for_detuning(1.0, 2.0, math.pi / 3)
        assert j_c == pytest.approx(math.sqrt(6.0), abs=1e-12)
        assert gamma == pytest.approx(6.0 * math.sin(math.pi / 3), abs=1e-12)

    def test_negative_detuning(self):
        j_c, gamma = params_for_detuning(1.0, -0.9, math.pi / 3)
        assert j_c == pytest.approx(math.sqrt(0.2), abs=1e-12)
        assert gamma == pytest.approx(0.2 * math.sin(math.pi / 3), abs=1e-12)

    def test_consistency_with_conditions(self):
        j_c, gamma = params_for_detuning(1.0, 0.1, math.pi / 3)
        rep = nonreciprocity_conditions(1.0, j_c, gamma)
        assert rep.phi_forward == pytest.approx(math.pi / 3, abs=1e-12)
        assert rep.delta_required == pytest.approx(0.1, abs=1e-12)

    def test_too_negative_detuning_is_refused(self):
        with pytest.raises(DomainError):
            params_for_detuning(1.0, -3.0, math.pi / 3)

    def test_quarter_phase_is_refused(self):
        with pytest.raises(DomainError):
            params_for_detuning(1.0, 0.5, math.pi / 2)
