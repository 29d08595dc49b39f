import numpy as np
import pytest

from epcs.constants import HBAR
from epcs.engine import CflError, EngineError, RunConfig, cfl_ratio, rk4_step, run_simulation
from epcs.grid import make_grid
from epcs.initial import InitSpec, init_state
from epcs.models import CNRP1, CNRP2, Cnrp1Params, Cnrp2Params, SimState
from epcs.pumping import PumpSpec


def scalar_state(value, tag="scalar"):
    # A grid-free one-cell state: no wave fields registered for this tag,
    # so no boundary handling applies and the stepper acts as a plain ODE
    # integrator.
    grid = make_grid(1, 3, 1.0)
    return SimState(tag, grid, {"y": np.array([value], dtype=complex)}, 0.0)


def test_cfl_reference_values():
    from conftest import assert_sig_figs

    g1 = make_grid(1, 201, 100.0)
    assert_sig_figs(cfl_ratio(g1, 0.001, 5.677e3 * 2e-5), 0.0232, 4)
    g2 = make_grid(2, 241, 24.0, 241, 24.0)
    assert_sig_figs(cfl_ratio(g2, 0.001, 7.44e-5 * 5.677e3), 0.3117, 4)
    assert cfl_ratio(g1, 1e-12, 0.1) < 1e-9  # h -> 0 drives the ratio to 0


def test_rk4_zero_rhs_only_advances_time():
    s = scalar_state(1.5 - 0.5j)
    out = rk4_step(s, lambda st: {"y": np.zeros(1, complex)}, 0.25)
    assert out.t == 0.25
    assert np.array_equal(out.fields["y"], s.fields["y"])


def test_rk4_scalar_decay_matches_degree4_taylor():
    # dy/dt = -y, h = 0.1: classical RK4 reproduces the degree-4 Taylor
    # polynomial of e^{-h} exactly: 1 - h + h^2/2 - h^3/6 + h^4/24.
    s = scalar_state(1.0)
    out = rk4_step(s, lambda st: {"y": -st.fields["y"]}, 0.1)
    expected = 1 - 0.1 + 0.1**2 / 2 - 0.1**3 / 6 + 0.1**4 / 24
    assert out.fields["y"][0] == pytest.approx(expected, rel=1e-15)
    assert expected == pytest.approx(0.9048375000, abs=1e-10)


def test_rk4_rotation_magnitude_error():
    # dy/dt = i w y with wh = 0.1: | |y| - 1 | = O(h^5) after one step.
    w = 1.0
    s = scalar_state(1.0)
    out = rk4_step(s, lambda st: {"y": 1j * w * st.fields["y"]}, 0.1)
    assert abs(abs(out.fields["y"][0]) - 1.0) < 1e-7


def test_rk4_nonfinite_detection():
    s = scalar_state(1.0)

    def blowup(st):
        return {"y": st.fields["y"] * np.inf}

    with np.errstate(invalid="ignore"), pytest.raises(EngineError, match="non-finite"):
        rk4_step(s, blowup, 0.1)


def cnrp2_setup(nx=41, t_end=0.05, every=1, policy="reject", h=0.001):
    grid = make_grid(1, nx, 100.0)
    params = Cnrp2Params(pump=PumpSpec(F_p=0.5, w=10.0))
    init = init_state(InitSpec(kind="gaussian", N_c=1.0, sigma_p=20.0), grid, CNRP2)
    cfg = RunConfig(h=h, t_end=t_end, snapshot_every=every, cfl_policy=policy)
    return init, params, cfg


def test_run_snapshot_counting():
    init, params, cfg = cnrp2_setup(t_end=0.01, every=5)
    series = run_simulation(init, params, cfg)
    assert len(series.times) == 3  # steps 0, 5, 10
    assert series.times == [0.0, 5 * cfg.h, 10 * cfg.h]


def test_run_time_is_step_index_times_h():
    init, params, cfg = cnrp2_setup(t_end=0.01, every=1)
    series = run_simulation(init, params, cfg)
    assert series.times == [n * cfg.h for n in range(11)]


def test_run_cfl_reject_and_warn():
    grid = make_grid(2, 241, 24.0, 241, 24.0)
    params = Cnrp2Params(pump=PumpSpec(F_p=0.5, w=10.0))
    init = init_state(InitSpec(kind="gaussian"), grid, CNRP2)
    ratio = cfl_ratio(grid, 0.1, params.m)
    assert ratio == pytest.approx(31.17, rel=1e-3)  # 100x the stable-step value
    with pytest.raises(CflError):
        run_simulation(init, params, RunConfig(h=0.1, t_end=0.2, cfl_policy="reject"))
    small = make_grid(1, 11, 1.0)
    init_small = init_state(InitSpec(kind="gaussian"), small, CNRP2)
    with pytest.warns(UserWarning, match="CFL"):
        run_simulation(init_small, params, RunConfig(h=0.05, t_end=0.05, cfl_policy="warn"))


def test_run_determinism_bit_identical():
    init, params, cfg = cnrp2_setup(t_end=0.02)
    s1 = run_simulation(init, params, cfg)
    s2 = run_simulation(init, params, cfg)
    for a, b in zip(s1.states, s2.states):
        assert np.array_equal(a["psi"], b["psi"])


def test_run_params_state_mismatch():
    init, _, cfg = cnrp2_setup()
    with pytest.raises(ValueError, match="match"):
        run_simulation(init, Cnrp1Params(), cfg)


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(h=0.0, t_end=1.0)
    with pytest.raises(ValueError):
        RunConfig(h=0.1, t_end=-1.0)
    with pytest.raises(ValueError):
        RunConfig(h=0.1, t_end=1.0, snapshot_every=0)
    with pytest.raises(ValueError):
        RunConfig(h=0.1, t_end=1.0, cfl_policy="ignore")


def test_rk4_order_against_matrix_exponential():
    # Uniform linear two-level reduction: global error at h and h/2
    # shrinks by ~2^4 against the exact matrix exponential.
    from scipy.linalg import expm

    p = Cnrp1Params(g=0.0)
    M = np.array([
        [p.delta - 0.5j * HBAR * p.gamma_x, p.omega_R],
        [p.omega_R, -0.5j * HBAR * p.gamma_c],
    ])
    A = (-1j / HBAR) * M
    v0 = np.array([1.0 + 0.0j, 0.5 - 0.2j])
    t_end = 1.0

    def global_error(h):
        grid = make_grid(1, 3, 1.0)
        state = SimState("linear2", grid, {"v": v0.copy()}, 0.0)
        rhs = lambda st: {"v": A @ st.fields["v"]}
        n = int(round(t_end / h))
        for k in range(n):
            state = rk4_step(state, rhs, h)
        exact = expm(A * t_end) @ v0
        return np.linalg.norm(state.fields["v"] - exact) / np.linalg.norm(exact)

    e1, e2 = global_error(0.01), global_error(0.005)
    assert 12.0 <= e1 / e2 <= 20.0


def test_conservative_norm_drift_short():
    # gamma = 0, no pump: the discrete two-field norm is conserved; RK4
    # drift over 200 steps stays tiny.
    grid = make_grid(1, 201, 100.0)
    params = Cnrp1Params(gamma_c=0.0, gamma_x=0.0, g=0.86, pump=PumpSpec(F_p=0.0))
    x = grid.x_nodes()
    psi = np.exp(-x**2 / 200.0).astype(complex)
    state = SimState(CNRP1, grid, {"psi_c": psi.copy(), "psi_x": 0.5j * psi}, 0.0)
    series = run_simulation(state, params, RunConfig(h=0.001, t_end=0.2, snapshot_every=200))
    def norm(fields):
        return sum(float(np.sum(np.abs(v) ** 2)) for v in fields.values()) * grid.dx
    drift = abs(norm(series.states[-1]) - norm(series.states[0])) / norm(series.states[0])
    assert drift < 1e-8
