import math

import numpy as np
import pytest
from pydantic import ValidationError

from softsnake.core.exceptions import DivergenceError, InputDomainError, StiffnessError
from softsnake.core.params import RobotParams
from softsnake.core.state import N_BASE, N_DOF, SimState
from softsnake.dynamics import total_energy
from softsnake.integrator import (
    DynamicsSystem,
    IntegrationMethod,
    IntegratorConfig,
    StiffSolver,
    integrate,
    make_stepper,
    output_times,
    rhs,
)


def resting_state(height: float = 0.6, pitch: float = 0.0) -> SimState:
    q = np.zeros(N_DOF)
    q[2] = height
    q[4] = pitch
    return SimState(t=0.0, q=q)


class TestIntegratorConfig:
    def test_defaults(self):
        cfg = IntegratorConfig()
        assert cfg.method is IntegrationMethod.IMPLICIT_ADAPTIVE
        assert cfg.solver is StiffSolver.BDF
        assert cfg.output_interval == pytest.approx(1 / 30)

    def test_method_from_string(self):
        cfg = IntegratorConfig(method="semi-implicit-fixed", solver="Radau")
        assert cfg.method is IntegrationMethod.SEMI_IMPLICIT_FIXED
        assert make_stepper(cfg).method is IntegrationMethod.SEMI_IMPLICIT_FIXED

    @pytest.mark.parametrize(
        "overrides",
        [
            {"rel_tol": 0.0},
            {"abs_tol": -1e-8},
            {"fixed_step": 0.1},
            {"min_step": 0.1, "max_step": 0.01},
            {"method": "explicit"},
            {"unknown": 1},
        ],
    )
    def test_invalid(self, overrides):
        with pytest.raises(ValidationError):
            IntegratorConfig(**overrides)

    def test_frozen(self):
        cfg = IntegratorConfig()
        with pytest.raises(ValidationError):
            cfg.rel_tol = 1e-3


class TestOutputTimes:
    def test_whole_number_of_intervals(self):
        times = output_times(0.0, 1.0, 30.0)
        assert len(times) == 31
        assert times[-1] == pytest.approx(1.0)

    def test_partial_final_interval(self):
        np.testing.assert_allclose(output_times(0.0, 0.05, 30.0), [0.0, 1 / 30, 0.05])

    def test_offset_start(self):
        times = output_times(2.0, 15.0, 30.0)
        assert len(times) == 451
        assert times[0] == 2.0
        assert times[-1] == pytest.approx(17.0)


class TestRhs:
    def test_velocity_block(self, params, random_states):
        q, qd = random_states(1)[0]
        deriv = rhs(SimState(0.0, q, qd), np.zeros(9), params)
        assert deriv.shape == (2 * N_DOF,)
        np.testing.assert_array_equal(deriv[:N_DOF], qd)

    def test_deterministic(self, params, random_states):
        q, qd = random_states(1)[0]
        state = SimState(0.3, q, qd)
        a = rhs(state, np.full(9, 1.0), params)
        b = rhs(state, np.full(9, 1.0), params)
        np.testing.assert_array_equal(a, b)

    def test_rest_without_gravity(self):
        params = RobotParams(g=0.0)
        deriv = rhs(resting_state(), np.zeros(9), params, contact_enabled=False)
        np.testing.assert_allclose(deriv, 0.0, atol=1e-14)

    def test_full_pressure_balances_full_extension(self):
        params = RobotParams(g=0.0)
        state = resting_state()
        state.q[N_BASE:] = params.dl_max
        deriv = rhs(state, np.full(9, params.p_max), params, contact_enabled=False)
        np.testing.assert_allclose(deriv, 0.0, atol=1e-10)

    def test_gravity_only_accelerates_height(self, params):
        deriv = rhs(resting_state(), np.zeros(9), params, contact_enabled=False)
        expected = np.zeros(2 * N_DOF)
        expected[N_DOF + 2] = -params.g
        np.testing.assert_allclose(deriv, expected, atol=1e-9)

    def test_pressure_out_of_range(self, params):
        with pytest.raises(InputDomainError):
            rhs(resting_state(), np.full(9, 5.0), params)


class TestDynamicsSystem:
    def test_non_finite_state(self, params):
        system = DynamicsSystem(params, contact_enabled=False)
        y = resting_state().y
        system(0.0, y)
        y_bad = y.copy()
        y_bad[7] = np.nan
        with pytest.raises(DivergenceError) as excinfo:
            system(0.1, y_bad)
        assert excinfo.value.t == pytest.approx(0.1)
        assert excinfo.value.last_state.is_finite()

    def test_counts_evaluations(self, params):
        system = DynamicsSystem(params, contact_enabled=False)
        system(0.0, resting_state().y)
        system(0.0, resting_state().y)
        assert system.stats.rhs_evaluations == 2

    def test_zero_control(self, params):
        system = DynamicsSystem(params)
        np.testing.assert_array_equal(system.pressures(1.0), np.zeros(9))


class TestIntegrate:
    def test_free_fall(self, params):
        cfg = IntegratorConfig(rel_tol=1e-8, abs_tol=1e-10)
        traj = integrate(resting_state(0.6), None, 0.2, cfg, params, contact_enabled=False)
        assert len(traj) == 7
        assert traj.final.t == pytest.approx(0.2)
        assert traj.final.q[2] == pytest.approx(0.6 - 0.5 * 9.81 * 0.04, abs=1e-6)
        assert traj.final.qdot[2] == pytest.approx(-9.81 * 0.2, abs=1e-6)
        np.testing.assert_allclose(traj.joint_lengths, 0.0, atol=1e-9)
        assert all(cmap.n_active == 0 for cmap in traj.contact_maps)
        assert traj.method == "implicit-adaptive"
        assert traj.stats["rhs_evaluations"] > 0

    def test_rejects_non_positive_duration(self, params):
        with pytest.raises(InputDomainError):
            integrate(resting_state(), None, 0.0, IntegratorConfig(), params)

    def test_rejects_non_finite_initial_state(self, params):
        state = resting_state()
        state.qdot[0] = np.inf
        with pytest.raises(InputDomainError):
            integrate(state, None, 0.1, IntegratorConfig(), params)

    def test_solver_failure(self, params, mocker):
        class FailingSolver:
            n = 2 * N_DOF
            njev = 1
            nlu = 1

            def __init__(self, fun, t0, y0, t_bound, **options):
                self.t, self.y = t0, y0
                self.status = "running"
                self.step_size = None

            def step(self):
                self.status = "failed"
                return "Required step size is less than spacing between numbers."

        mocker.patch.dict("softsnake.integrator.solvers._SOLVERS", {StiffSolver.BDF: FailingSolver})
        with pytest.raises(StiffnessError) as excinfo:
            integrate(resting_state(), None, 0.1, IntegratorConfig(), params, contact_enabled=False)
        assert "step size" in excinfo.value.message
        assert excinfo.value.last_state.t == 0.0

    def test_min_step_underflow_on_contact(self, params):
        # starts pressed into the ground so the first steps are contact-limited
        state = resting_state(params.r_s - 0.002, pitch=math.pi / 2)
        cfg = IntegratorConfig(min_step=1e-3)
        with pytest.raises(StiffnessError) as excinfo:
            integrate(state, None, 0.05, cfg, params)
        assert "min_step" in excinfo.value.message
        assert 0.0 < excinfo.value.t < 0.05
        assert excinfo.value.last_state.t == excinfo.value.t
        assert excinfo.value.last_state.is_finite()

    @pytest.mark.slow
    def test_min_step_default_allows_contact(self, params):
        state = resting_state(params.r_s - 0.002, pitch=math.pi / 2)
        traj = integrate(state, None, 0.05, IntegratorConfig(), params)
        assert traj.final.t == pytest.approx(0.05)
        assert traj.stats["jacobian_evaluations"] > 0

    def test_control_is_applied(self, params, mocker):
        control = mocker.Mock(return_value=np.zeros(9))
        cfg = IntegratorConfig(method="semi-implicit-fixed", fixed_step=1e-3)
        integrate(resting_state(), control, 0.01, cfg, params, contact_enabled=False)
        assert control.call_count >= 10


class TestSimStateProjection:
    def test_projected(self, params):
        q = np.zeros(N_DOF)
        q[N_BASE] = -0.01
        q[N_BASE + 1] = 0.08
        q[N_BASE + 2] = 0.03
        qd = np.zeros(N_DOF)
        qd[N_BASE:N_BASE + 3] = [-1.0, 1.0, 1.0]
        state = SimState(0.0, q, qd)
        assert state.limit_violation(params) == pytest.approx(0.01)
        proj = state.projected(params)
        np.testing.assert_allclose(proj.q[N_BASE:N_BASE + 3], [0.0, params.dl_max, 0.03])
        np.testing.assert_allclose(proj.qdot[N_BASE:N_BASE + 3], [0.0, 0.0, 1.0])
        assert proj.limit_violation(params) == 0.0


@pytest.mark.slow
class TestLongIntegrations:
    def test_semi_implicit_free_fall(self, params):
        cfg = IntegratorConfig(method="semi-implicit-fixed", fixed_step=1e-4)
        traj = integrate(resting_state(0.6), None, 0.1, cfg, params, contact_enabled=False)
        assert traj.method == "semi-implicit-fixed"
        assert traj.final.q[2] == pytest.approx(0.6 - 0.5 * 9.81 * 0.01, abs=1e-4)

    def test_energy_conserved_without_damping(self):
        params = RobotParams(D_damp=0.0)
        state = resting_state(1.0)
        state.q[N_BASE:] = [0.03, 0.01, 0.02, 0.0, 0.02, 0.01, 0.01, 0.01, 0.04]
        state.qdot[3:6] = [0.2, -0.1, 0.3]
        cfg = IntegratorConfig(solver="Radau", rel_tol=1e-8, abs_tol=1e-10)
        traj = integrate(state, None, 1.0, cfg, params, contact_enabled=False)
        energies = [total_energy(s.q, s.qdot, params).total for s in traj.states]
        scale = abs(energies[0])
        assert max(abs(e - energies[0]) for e in energies) < 1e-4 * scale

    def test_drop_settles_on_ground(self, params):
        state = resting_state(params.r_s + 0.02, pitch=math.pi / 2)
        traj = integrate(state, None, 1.5, IntegratorConfig(), params)
        assert -5e-3 <= traj.min_z[-1] <= 0.0
        assert traj.max_vz[-1] < 1e-2
        assert traj.contact_maps[-1].n_active > 0
        assert traj.contact_maps[-1].total_normal_force == pytest.approx(params.m_total * params.g, rel=0.05)

    def test_methods_agree_on_free_fall(self, params):
        implicit = integrate(
            resting_state(0.6), None, 0.1, IntegratorConfig(rel_tol=1e-8, abs_tol=1e-10), params,
            contact_enabled=False,
        )
        semi = integrate(
            resting_state(0.6), None, 0.1, IntegratorConfig(method="semi-implicit-fixed", fixed_step=1e-4),
            params, contact_enabled=False,
        )
        np.testing.assert_allclose(implicit.q, semi.q, atol=1e-4)

    def test_methods_agree_on_drop(self, params):
        state = resting_state(params.r_s + 0.02, pitch=math.pi / 2)
        implicit = integrate(state, None, 1.0, IntegratorConfig(), params)
        semi = integrate(state, None, 1.0, IntegratorConfig(method="semi-implicit-fixed", fixed_step=1e-4), params)
        np.testing.assert_allclose(semi.final.q[:3], implicit.final.q[:3], rtol=1e-2, atol=1e-3)

    def test_tolerance_refinement_on_gait_segment(self, params):
        from softsnake.gaits import GaitController, GaitSpec

        state = resting_state(params.r_s, pitch=math.pi / 2)
        controller = GaitController(GaitSpec(), params)
        coarse = integrate(state, controller, 2.0, IntegratorConfig(rel_tol=1e-6, abs_tol=1e-8), params)
        fine = integrate(state, controller, 2.0, IntegratorConfig(rel_tol=5e-7, abs_tol=5e-9), params)
        p_coarse, p_fine = coarse.final.q[:3], fine.final.q[:3]
        assert np.linalg.norm(p_coarse - p_fine) < 1e-3 * np.linalg.norm(p_fine)
