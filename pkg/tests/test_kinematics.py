import math

import numpy as np
import pytest

from softsnake.core.exceptions import InputDomainError
from softsnake.core.state import JointState, N_BASE, N_DOF
from softsnake.kinematics import (
    arc_params,
    full_htm,
    position_jacobian,
    section_htm,
    skin_grid,
    skin_htm,
)
from softsnake.kinematics.arc import sinc_terms, versine_terms

from .conftest import random_configuration


class TestArcParams:
    def test_unactuated_section_is_straight(self, params):
        arc = arc_params((0.0, 0.0, 0.0), params)
        assert arc.kappa == 0.0
        assert arc.phi == 0.0
        assert arc.s == pytest.approx(0.15)

    def test_uniform_extension_stays_straight(self, params):
        arc = arc_params((0.03, 0.03, 0.03), params)
        assert arc.kappa == 0.0
        assert arc.s == pytest.approx(0.18)

    def test_single_pma_extension(self, params):
        arc = arc_params((0.03, 0.0, 0.0), params)
        assert arc.kappa == pytest.approx(10.0)
        assert arc.s == pytest.approx(0.16)

    def test_cyclic_permutation_rotates_bending_plane(self, params):
        a = arc_params((0.01, 0.04, 0.02), params)
        b = arc_params((0.02, 0.01, 0.04), params)
        assert b.kappa == pytest.approx(a.kappa)
        assert b.s == pytest.approx(a.s)
        diff = (b.phi - a.phi - 2.0 * math.pi / 3.0) % (2.0 * math.pi)
        assert min(diff, 2.0 * math.pi - diff) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("lengths", [(-0.001, 0.0, 0.0), (0.0, 0.08, 0.0)])
    def test_out_of_range_lengths(self, params, lengths):
        with pytest.raises(InputDomainError) as excinfo:
            arc_params(lengths, params)
        assert excinfo.value.field.startswith("l_")


class TestTrigonometricSeries:
    def test_series_and_closed_form_agree_at_threshold(self):
        x = np.array([0.25 - 1e-12, 0.25 + 1e-12])
        for terms in (sinc_terms, versine_terms):
            f, f1, f2 = terms(x)
            assert f[0] == pytest.approx(f[1], abs=1e-10)
            assert f1[0] == pytest.approx(f1[1], abs=1e-10)
            assert f2[0] == pytest.approx(f2[1], abs=1e-9)

    def test_values(self):
        t = 1.3
        f, _, _ = sinc_terms(np.array([t * t]))
        g, _, _ = versine_terms(np.array([t * t]))
        assert f[0] == pytest.approx(math.sin(t) / t)
        assert g[0] == pytest.approx((1 - math.cos(t)) / t ** 2)
        f0, _, _ = sinc_terms(np.array([0.0]))
        assert f0[0] == 1.0


class TestSectionHtm:
    def test_straight_tip(self, params):
        pose = section_htm((0, 0, 0), 1.0, params)
        np.testing.assert_allclose(pose.R, np.eye(3), atol=1e-15)
        np.testing.assert_allclose(pose.p, [0, 0, 0.15], atol=1e-15)

    def test_origin_is_identity(self, params):
        pose = section_htm((0.02, 0.05, 0.01), 0.0, params)
        np.testing.assert_allclose(pose.matrix, np.eye(4), atol=1e-15)

    def test_chord_of_bent_section(self, params):
        # kappa = 10 1/m, s = 0.16 m: chord (2 / kappa) sin(kappa s / 2)
        pose = section_htm((0.03, 0, 0), 1.0, params)
        assert np.linalg.norm(pose.p) == pytest.approx(0.2 * math.sin(0.8), rel=1e-12)
        assert np.linalg.norm(pose.p) == pytest.approx(0.14347, abs=1e-5)

    def test_bends_away_from_extended_pma(self, params):
        # PMA 1 sits on +X; extending it bends the tip towards -X
        pose = section_htm((0.03, 0, 0), 1.0, params)
        assert pose.p[0] < 0.0
        assert pose.p[1] == pytest.approx(0.0, abs=1e-15)

    def test_tip_tangent_turns_by_bend_angle(self, params):
        arc = arc_params((0.05, 0.01, 0.02), params)
        pose = section_htm((0.05, 0.01, 0.02), 1.0, params)
        assert pose.R[2, 2] == pytest.approx(math.cos(arc.bend_angle), rel=1e-12)

    def test_orthonormal(self, params, rng):
        for _ in range(20):
            lengths = rng.uniform(0, params.dl_max, 3)
            pose = section_htm(lengths, rng.uniform(), params)
            assert pose.orthonormality_error() < 1e-10

    def test_continuity_through_straight_limit(self, params):
        eps = params.eps_straight
        base = np.array([0.02, 0.02, 0.02])
        below = base + [eps * (1 - 1e-6), 0, 0]
        above = base + [eps * (1 + 1e-6), 0, 0]
        assert arc_params(below, params).kappa == 0.0
        assert arc_params(above, params).kappa > 0.0
        lo = section_htm(below, 1.0, params)
        hi = section_htm(above, 1.0, params)
        np.testing.assert_allclose(lo.matrix, hi.matrix, atol=1e-9)
        straight = section_htm(base, 1.0, params)
        np.testing.assert_allclose(lo.matrix, straight.matrix, atol=1e-6)

    def test_xi_out_of_range(self, params):
        with pytest.raises(InputDomainError):
            section_htm((0, 0, 0), 1.2, params)


class TestSkinHtm:
    def test_zero_radius_matches_section(self, params):
        a = section_htm((0.01, 0.03, 0.0), 0.6, params)
        b = skin_htm((0.01, 0.03, 0.0), 0.6, 1.1, 0.0, params)
        np.testing.assert_allclose(a.p, b.p, atol=1e-15)

    def test_offset_along_x(self, params):
        pose = skin_htm((0, 0, 0), 0.0, 0.0, 0.03, params)
        np.testing.assert_allclose(pose.p, [0.03, 0, 0], atol=1e-15)

    def test_offset_rotated_to_y(self, params):
        pose = skin_htm((0, 0, 0), 0.0, math.pi / 2, 0.03, params)
        np.testing.assert_allclose(pose.p, [0, 0.03, 0], atol=1e-15)

    def test_negative_radius(self, params):
        with pytest.raises(InputDomainError):
            skin_htm((0, 0, 0), 0.0, 0.0, -0.01, params)


class TestFullHtm:
    def test_straight_robot_tip_at_055(self, params):
        # three straight sections and the two inner spacers; the end cap is not backbone
        pose = full_htm(np.zeros(N_DOF), 3.0, 0.0, 0.0, params)
        np.testing.assert_allclose(pose.p, [0, 0, 0.55], atol=1e-14)
        assert pose.p[2] + params.d_rigid == pytest.approx(0.60)

    def test_base_translation(self, params):
        q = np.zeros(N_DOF)
        q[:3] = [1, 2, 3]
        pose = full_htm(q, 0.0, 0.0, 0.0, params)
        np.testing.assert_allclose(pose.p, [1, 2, 3])

    def test_yaw_keeps_vertical_robot(self, params):
        q = np.zeros(N_DOF)
        q[5] = math.pi
        pose = full_htm(q, 3.0, 0.0, 0.0, params)
        np.testing.assert_allclose(pose.p, [0, 0, 0.55], atol=1e-14)

    def test_pitch_lays_robot_along_x(self, params):
        q = np.zeros(N_DOF)
        q[4] = math.pi / 2
        pose = full_htm(q, 3.0, 0.0, 0.0, params)
        np.testing.assert_allclose(pose.p, [0.55, 0, 0], atol=1e-14)

    @pytest.mark.parametrize("gamma", [0.7, 2.5, -1.9])
    def test_gamma_rolls_lying_robot_about_backbone(self, params, gamma):
        q = np.zeros(N_DOF)
        q[4] = math.pi / 2
        q[5] = gamma
        np.testing.assert_allclose(full_htm(q, 3.0, 0.0, 0.0, params).p, [0.55, 0, 0], atol=1e-14)
        skin = full_htm(q, 1.5, 0.0, params.r_s, params).p
        assert math.hypot(skin[1], skin[2]) == pytest.approx(params.r_s)

    def test_accepts_joint_state(self, params):
        state = JointState(q_b=[0.1, 0, 0, 0, 0, 0], q_r=np.full(9, 0.01))
        pose = full_htm(state, 1.5, 0.3, params.r_s, params)
        assert pose.orthonormality_error() < 1e-10

    @pytest.mark.parametrize("xi, z", [(1.0, 0.20), (2.0, 0.40)])
    def test_section_boundaries_include_spacer(self, params, xi, z):
        pose = full_htm(np.zeros(N_DOF), xi, 0.0, 0.0, params)
        np.testing.assert_allclose(pose.p, [0, 0, z], atol=1e-14)

    def test_random_states_orthonormal(self, params, rng):
        for _ in range(20):
            q = random_configuration(rng, params)
            pose = full_htm(q, rng.uniform(0, 3), rng.uniform(0, 2 * math.pi), params.r_s, params)
            assert pose.orthonormality_error() < 1e-10

    def test_bounds_checked(self, params):
        q = np.zeros(N_DOF)
        q[N_BASE + 4] = 0.1
        with pytest.raises(InputDomainError) as excinfo:
            full_htm(q, 1.0, 0.0, 0.0, params)
        assert excinfo.value.field == "l_22"
        with pytest.raises(InputDomainError):
            full_htm(np.zeros(N_DOF), 3.5, 0.0, 0.0, params)


class TestPositionJacobian:
    def test_base_translation_columns(self, params, rng):
        q = random_configuration(rng, params)
        J = position_jacobian(q, 2.3, 0.4, params.r_s, params)
        assert J.shape == (3, N_DOF)
        np.testing.assert_allclose(J[:, :3], np.eye(3), atol=1e-14)

    def test_base_origin_ignores_actuators(self, params):
        J = position_jacobian(np.zeros(N_DOF), 0.0, 0.0, 0.0, params)
        np.testing.assert_allclose(J[:, N_BASE:], 0.0, atol=1e-15)

    def test_matches_central_differences(self, params, rng):
        h = 1e-6
        for _ in range(100):
            q = random_configuration(rng, params)
            xi, sigma = rng.uniform(0, 3), rng.uniform(0, 2 * math.pi)
            J = position_jacobian(q, xi, sigma, params.r_s, params)
            fd = np.empty((3, N_DOF))
            for k in range(N_DOF):
                e = np.zeros(N_DOF)
                e[k] = h
                plus = full_htm(q + e, xi, sigma, params.r_s, params).p
                minus = full_htm(q - e, xi, sigma, params.r_s, params).p
                fd[:, k] = (plus - minus) / (2 * h)
            np.testing.assert_allclose(J, fd, rtol=1e-4, atol=1e-8)

    def test_straight_configuration_is_smooth(self, params):
        # derivatives exist at the straight pose (no kappa -> 0 singularity)
        J = position_jacobian(np.zeros(N_DOF), 3.0, 0.0, params.r_s, params)
        assert np.all(np.isfinite(J))
        assert np.abs(J[:, N_BASE:]).max() > 0.0


class TestSkinGrid:
    def test_default_size(self, params):
        grid = skin_grid(params)
        assert grid.n_points == 310
        assert grid.n_axial == 31 and grid.n_radial == 10

    def test_minimal_grid(self, params):
        grid = skin_grid(params, n_axial=2, n_radial=1)
        xi, _, _, sigma = grid.flatten()
        np.testing.assert_allclose(xi, [0.0, 3.0])
        np.testing.assert_allclose(sigma, [0.0, 0.0])

    def test_straight_robot_points_on_cylinder(self, params):
        grid = skin_grid(params)
        _, sections, local, sigma = grid.flatten()
        q = np.zeros(N_DOF)
        for k in range(0, grid.n_points, 7):
            xi = sections[k] + local[k]
            p = full_htm(q, xi, sigma[k], grid.radius, params).p
            assert math.hypot(p[0], p[1]) == pytest.approx(params.r_s)

    def test_stations_are_uniform(self, params):
        grid = skin_grid(params)
        np.testing.assert_allclose(grid.axial_coordinates, np.linspace(0, 3, 31), atol=1e-12)

    @pytest.mark.parametrize("n_axial,n_radial", [(1, 10), (31, 0)])
    def test_invalid_sizes(self, params, n_axial, n_radial):
        with pytest.raises(InputDomainError):
            skin_grid(params, n_axial, n_radial)
