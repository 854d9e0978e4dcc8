import numpy as np
import pytest

from softsnake.core.exceptions import InputDomainError, NumericalDegeneracyError
from softsnake.core.params import RobotParams
from softsnake.core.state import N_BASE, N_DOF
from softsnake.dynamics import (
    actuation_vector,
    conservative_forces,
    coriolis_matrix,
    eom_terms,
    forward_dynamics,
    inertia_matrix,
    mass_matrix_derivative,
    mass_samples,
    solve_inertia,
    total_energy,
)

from .conftest import random_configuration


class TestMassSamples:
    def test_total_mass(self, params):
        samples = mass_samples(params)
        assert samples.total_mass == pytest.approx(params.m_total, rel=1e-14)
        assert samples.size == 3 * params.quadrature_nodes * 3

    def test_backbone_only_when_ring_radius_zero(self):
        samples = mass_samples(RobotParams(gyration_radius=0.0))
        assert samples.size == 3 * 11
        np.testing.assert_allclose(samples.offsets, 0.0)


class TestInertiaMatrix:
    def test_structure_at_random_states(self, params, random_states):
        for q, _ in random_states(100):
            M = inertia_matrix(q, params)
            assert np.abs(M - M.T).max() < 1e-10
            np.testing.assert_allclose(M[:3, :3], 0.35 * np.eye(3), atol=1e-12)
            assert np.linalg.eigvalsh(M).min() > 0.0

    def test_straight_robot_is_positive_definite(self, params):
        M = inertia_matrix(np.zeros(N_DOF), params)
        assert np.linalg.eigvalsh(M).min() > 0.0

    def test_backbone_only_mass_is_singular_when_straight(self):
        # nothing resists rolling about a straight backbone without slice inertia
        M = inertia_matrix(np.zeros(N_DOF), RobotParams(gyration_radius=0.0))
        eig = np.linalg.eigvalsh(M)
        assert eig.min() < 1e-10 * eig.max()
        assert np.linalg.eigvalsh(inertia_matrix(np.zeros(N_DOF), RobotParams())).min() > 1e-6

    def test_quadrature_refinement(self, params):
        M = inertia_matrix(np.zeros(N_DOF), params)
        M_fine = inertia_matrix(np.zeros(N_DOF), params, n_nodes=2 * params.quadrature_nodes)
        assert np.abs(M_fine - M).max() / np.abs(M).max() < 1e-8

    def test_independent_of_base_translation(self, params, rng):
        q = random_configuration(rng, params)
        shifted = q.copy()
        shifted[:3] += [1.0, -2.0, 0.5]
        np.testing.assert_allclose(inertia_matrix(q, params), inertia_matrix(shifted, params), atol=1e-13)


class TestCoriolisMatrix:
    def test_zero_velocity(self, params, rng):
        q = random_configuration(rng, params)
        np.testing.assert_allclose(coriolis_matrix(q, np.zeros(N_DOF), params), 0.0, atol=1e-15)

    def test_passivity_identity(self, params, random_states):
        for q, qd in random_states(100):
            dM = mass_matrix_derivative(q, params)
            M_dot = np.einsum("uvh,h->uv", dM, qd)
            C = coriolis_matrix(q, qd, params)
            assert abs(qd @ (M_dot - 2.0 * C) @ qd) < 1e-8 * (qd @ qd)

    def test_passivity_with_finite_difference_mdot(self, params, rng):
        q = random_configuration(rng, params)
        qd = rng.normal(size=N_DOF)
        qd[N_BASE:] *= 0.01
        h = 1e-6
        M_dot = (inertia_matrix(q + h * qd, params) - inertia_matrix(q - h * qd, params)) / (2 * h)
        C = coriolis_matrix(q, qd, params)
        assert abs(qd @ (M_dot - 2.0 * C) @ qd) < 1e-6 * (qd @ qd)

    def test_mass_derivative_matches_finite_differences(self, params, rng):
        q = random_configuration(rng, params)
        dM = mass_matrix_derivative(q, params)
        h = 1e-6
        for k in (3, 4, 5, 6, 10, 14):
            e = np.zeros(N_DOF)
            e[k] = h
            fd = (inertia_matrix(q + e, params) - inertia_matrix(q - e, params)) / (2 * h)
            np.testing.assert_allclose(dM[:, :, k], fd, atol=1e-7)

    def test_base_translation_velocity_has_no_effect(self, params, rng):
        q = random_configuration(rng, params)
        qd = np.zeros(N_DOF)
        qd[:3] = rng.normal(size=3)
        C = coriolis_matrix(q, qd, params)
        np.testing.assert_allclose(C @ qd, 0.0, atol=1e-13)


class TestConservativeForces:
    def test_weight_on_base_height(self, params):
        G = conservative_forces(np.zeros(N_DOF), params)
        assert G[2] == pytest.approx(0.35 * 9.81, rel=1e-12)
        np.testing.assert_allclose(G[:2], 0.0, atol=1e-14)

    def test_no_elastic_term_at_rest_length(self):
        G = conservative_forces(np.zeros(N_DOF), RobotParams(g=0.0))
        np.testing.assert_allclose(G, 0.0, atol=1e-15)

    def test_elastic_term(self):
        q = np.zeros(N_DOF)
        q[N_BASE:] = 0.01
        G = conservative_forces(q, RobotParams(g=0.0))
        np.testing.assert_allclose(G[N_BASE:], 19.0, rtol=1e-12)
        np.testing.assert_allclose(G[:N_BASE], 0.0, atol=1e-15)


class TestActuationVector:
    def test_zero_pressure(self, params):
        np.testing.assert_allclose(actuation_vector(np.zeros(9), params), 0.0)

    def test_derived_area(self, params):
        assert params.pma_area == pytest.approx(3.5625e-4)

    def test_two_bar(self, params):
        tau = actuation_vector(np.full(9, 2.0), params)
        np.testing.assert_allclose(tau[N_BASE:], 71.25)
        np.testing.assert_allclose(tau[:N_BASE], 0.0)

    @pytest.mark.parametrize("value", [-0.1, 4.5])
    def test_out_of_range(self, params, value):
        pressures = np.zeros(9)
        pressures[7] = value
        with pytest.raises(InputDomainError) as excinfo:
            actuation_vector(pressures, params)
        assert excinfo.value.field == "P_32"


class TestForwardDynamics:
    def test_equilibrium_without_gravity(self):
        params = RobotParams(g=0.0)
        qdd = forward_dynamics(np.zeros(N_DOF), np.zeros(N_DOF), np.zeros(N_DOF), np.zeros(N_DOF), params)
        np.testing.assert_allclose(qdd, 0.0, atol=1e-14)

    def test_free_fall_acceleration(self, params, rng):
        q = np.zeros(N_DOF)
        q[3:6] = rng.uniform(-1.0, 1.0, 3)
        qdd = forward_dynamics(q, np.zeros(N_DOF), np.zeros(N_DOF), np.zeros(N_DOF), params)
        expected = np.zeros(N_DOF)
        expected[2] = -9.81
        np.testing.assert_allclose(qdd, expected, atol=1e-9)

    def test_linear_solve_residual(self, params, random_states):
        q, qd = random_states(1)[0]
        tau = actuation_vector(np.full(9, 1.5), params)
        contact = np.linspace(-1.0, 1.0, N_DOF)
        qdd = forward_dynamics(q, qd, tau, contact, params)
        terms = eom_terms(q, qd, params, tau)
        rhs = terms.generalized_forces(qd, contact)
        assert np.linalg.norm(terms.M @ qdd - rhs) < 1e-9 * np.linalg.norm(rhs)

    def test_consistent_with_separate_terms(self, params, random_states):
        q, qd = random_states(1)[0]
        terms = eom_terms(q, qd, params)
        np.testing.assert_allclose(terms.M, inertia_matrix(q, params), atol=1e-14)
        np.testing.assert_allclose(terms.C, coriolis_matrix(q, qd, params), atol=1e-12)
        np.testing.assert_allclose(terms.G, conservative_forces(q, params), atol=1e-12)
        assert np.all(np.diag(terms.D)[N_BASE:] == params.D_damp)

    def test_singular_inertia_reported(self):
        M = np.eye(3)
        M[2, 2] = -1e-3
        with pytest.raises(NumericalDegeneracyError) as excinfo:
            solve_inertia(M, np.ones(3))
        assert excinfo.value.min_eigenvalue == pytest.approx(-1e-3)


class TestEnergy:
    def test_breakdown_at_rest(self, params):
        q = np.zeros(N_DOF)
        q[2] = 1.0
        q[N_BASE:] = 0.02
        energy = total_energy(q, np.zeros(N_DOF), params)
        assert energy.kinetic == 0.0
        assert energy.elastic == pytest.approx(0.5 * 1900 * 9 * 0.02 ** 2)
        assert energy.gravitational > params.m_total * params.g * 1.0
        assert energy.total == pytest.approx(energy.gravitational + energy.elastic)

    def test_kinetic_energy_of_translation(self, params):
        qd = np.zeros(N_DOF)
        qd[0] = 2.0
        energy = total_energy(np.zeros(N_DOF), qd, params)
        assert energy.kinetic == pytest.approx(0.5 * 0.35 * 4.0)
