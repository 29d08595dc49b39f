import math

import numpy as np
import pytest

from epcs.constants import HBAR
from epcs.diagnostics import total_number
from epcs.grid import make_grid
from epcs.initial import InitSpec, init_state
from epcs.models import CNRP1, CNRP1_SPIN, CNRP2, HINRP


def test_zero_init_for_two_field_models():
    grid = make_grid(1, 201, 100.0)
    for tag in (CNRP1, CNRP1_SPIN):
        s = init_state(InitSpec(kind="zero"), grid, tag)
        assert all(np.all(v == 0) for v in s.fields.values())
        assert s.t == 0.0


def test_gaussian_center_value():
    grid = make_grid(2, 241, 24.0, 241, 24.0)
    s = init_state(InitSpec(kind="gaussian", N_c=1.0, sigma_p=20.0), grid, CNRP2)
    center = s.fields["psi"][120, 120]
    assert center == pytest.approx(1.0 / (20.0 * math.sqrt(math.pi)), rel=1e-12)
    assert abs(center - 0.0282095) < 1e-7


def test_zero_particle_number_gives_zero_field():
    grid = make_grid(1, 101, 100.0)
    s = init_state(InitSpec(kind="gaussian", N_c=0.0, sigma_p=20.0), grid, CNRP2)
    assert np.all(s.fields["psi"] == 0)


def test_hinrp_reservoir_amplitude():
    grid = make_grid(1, 201, 100.0)
    spec = InitSpec(kind="gaussian", N_c=1.0, sigma_p=20.0, P0=60.790, gamma_R=2.0 / HBAR)
    s = init_state(spec, grid, HINRP)
    assert s.fields["n_R"][100] == pytest.approx(60.790 * HBAR / 2.0, rel=1e-12)
    assert s.fields["n_R"][100] == pytest.approx(20.006, abs=5e-4)


def test_gaussian_norm_closes_on_resolving_grid():
    # sigma resolved by >= 8 nodes and extent >= 6 sigma: the 2D density
    # integrates to N_c within 1%.
    grid = make_grid(2, 241, 24.0, 241, 24.0)
    s = init_state(InitSpec(kind="gaussian", N_c=1.0, sigma_p=2.0), grid, CNRP2)
    assert 0.99 <= total_number(grid, s.fields["psi"]) <= 1.01


def test_gaussian_norm_truncated_on_stock_2d_grid():
    # sigma_p = 20 um on the 24 um cavity: the tails are cut off. The
    # separable per-axis sum is the quadrature oracle; the continuum
    # integral erf(0.6)^2 = 0.364642 is approached to O(dx) from above
    # because boundary nodes carry full weight.
    grid = make_grid(2, 241, 24.0, 241, 24.0)
    s = init_state(InitSpec(kind="gaussian", N_c=1.0, sigma_p=20.0), grid, CNRP2)
    total = total_number(grid, s.fields["psi"])
    axis = sum(math.exp(-((0.1 * i - 12.0) ** 2) / 400.0) for i in range(241)) * 0.1
    assert total == pytest.approx(axis**2 / (400.0 * math.pi), rel=1e-12)
    assert total == pytest.approx(math.erf(0.6) ** 2, abs=5e-3)
    assert not 0.99 <= total <= 1.01


def test_1d_norm_is_documented_value():
    # The 2D prefactor applied in 1D integrates to N_c / (sigma_p sqrt(pi)).
    grid = make_grid(1, 2001, 100.0)
    s = init_state(InitSpec(kind="gaussian", N_c=1.0, sigma_p=20.0), grid, CNRP2)
    expected = math.erf(2.5) / (20.0 * math.sqrt(math.pi))
    assert total_number(grid, s.fields["psi"]) == pytest.approx(expected, rel=1e-3)


def test_radial_symmetry():
    grid = make_grid(2, 61, 12.0, 61, 12.0)
    psi = init_state(InitSpec(kind="gaussian", N_c=2.0, sigma_p=3.0), grid, CNRP2).fields["psi"]
    assert np.array_equal(psi, psi.T)
    assert np.array_equal(psi, psi[:, ::-1])
    assert np.array_equal(psi, psi[::-1, :])


def test_inconsistent_tag_spec_rejected():
    grid = make_grid(1, 11, 10.0)
    with pytest.raises(ValueError):
        init_state(InitSpec(kind="gaussian"), grid, CNRP1)
    with pytest.raises(ValueError):
        init_state(InitSpec(kind="vortex"), grid, CNRP2)
    with pytest.raises(ValueError):
        init_state(InitSpec(kind="zero"), grid, "unknown_model")
    with pytest.raises(ValueError):
        InitSpec(kind="gaussian", sigma_p=-1.0)
    with pytest.raises(ValueError):
        InitSpec(N_c=-0.5)
