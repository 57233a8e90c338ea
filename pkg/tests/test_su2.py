"""Tests for the explicit SU(2) reduction."""

import numpy as np
import pytest

from redint.free_motion import constants_map
from redint.groups import GroupContext, check_algebra, check_group, joint_centralizer_dim, random_group
from redint.phase import PhasePoint, act, moment_map
from redint.su2 import (
    EXCEPTIONAL_Q,
    GaugeError,
    P_GRID,
    Q_GRID,
    SliceCoords,
    X_GRID,
    calibrate_time_scale,
    energy_identity_residual,
    exceptional_point_audit,
    integrate_sutherland,
    reduced_dynamics_match,
    regauge_to_slice,
    slice_image_first_component,
    slice_moment_value,
    slice_point,
    sutherland_energy,
    trajectory_csv_rows,
)

CTX2 = GroupContext(2)


def test_slice_coords_validation():
    with pytest.raises(ValueError):
        SliceCoords(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        SliceCoords(np.pi, 0.0, 1.0)
    with pytest.raises(ValueError):
        SliceCoords(1.0, 0.0, 0.0)


def test_slice_point_structure():
    x = slice_point(SliceCoords(np.pi / 2, 0.0, 1.0))
    check_group(x.g)
    check_algebra(x.J)
    assert np.linalg.norm(x.J + x.J.conj().T) < 1e-14


def test_slice_moment_and_image_closed_forms():
    rng = np.random.default_rng(5)
    for _ in range(20):
        c = SliceCoords(rng.uniform(0.1, np.pi - 0.1), rng.uniform(-2, 2), rng.uniform(0.2, 4))
        x = slice_point(c)
        assert np.linalg.norm(moment_map(x) - slice_moment_value(c.x)) < 1e-12
        assert np.linalg.norm(constants_map(x).X - slice_image_first_component(c)) < 1e-12


def test_energy_values():
    assert sutherland_energy(SliceCoords(np.pi / 2, 0.0, 1.0)) == pytest.approx(0.125)
    assert sutherland_energy(SliceCoords(np.pi / 4, 0.0, 2.0)) == pytest.approx(1.0)


def test_energy_identity_on_grid():
    worst = 0.0
    for x_val in X_GRID:
        for q in Q_GRID:
            for p in P_GRID:
                worst = max(worst, energy_identity_residual(SliceCoords(q, p, x_val)))
    assert worst <= 1e-12


def test_exceptional_point_audit():
    a1 = exceptional_point_audit(1.0)
    assert a1.image_stabilizer_dim == 1
    assert a1.projected_span == 0
    assert a1.grid_min_energy == pytest.approx(0.125)
    assert a1.min_attained_at_exceptional
    a2 = exceptional_point_audit(2.0)
    assert a2.grid_min_energy == pytest.approx(0.5)
    assert a2.min_attained_at_exceptional


def test_stabilizer_dichotomy_off_the_exceptional_point():
    rng = np.random.default_rng(7)
    for _ in range(25):
        q = float(rng.uniform(0.1, np.pi - 0.1))
        p = float(rng.uniform(-2.0, 2.0))
        if abs(q - EXCEPTIONAL_Q) < 1e-2 and abs(p) < 1e-2:
            continue
        z = constants_map(slice_point(SliceCoords(q, p, 1.0)))
        assert joint_centralizer_dim([z.X, z.Y], []) == 0


def test_regauge_round_trip():
    rng = np.random.default_rng(9)
    for _ in range(20):
        c = SliceCoords(rng.uniform(0.1, np.pi - 0.1), rng.uniform(-2, 2), rng.uniform(0.2, 4))
        got = regauge_to_slice(slice_point(c))
        assert abs(got.q - c.q) < 1e-10
        assert abs(got.p - c.p) < 1e-10
        assert abs(got.x - c.x) < 1e-10


def test_regauge_is_gauge_invariant():
    rng = np.random.default_rng(11)
    for _ in range(10):
        c = SliceCoords(rng.uniform(0.2, np.pi - 0.2), rng.uniform(-1, 1), rng.uniform(0.5, 2))
        eta = random_group(CTX2, rng)
        got = regauge_to_slice(act(eta, slice_point(c)))
        assert abs(got.q - c.q) < 1e-9
        assert abs(got.p - c.p) < 1e-9
        assert abs(got.x - c.x) < 1e-9


def test_regauge_recovers_momentum_from_diagonal():
    c = SliceCoords(0.8, -1.3, 2.0)
    x = slice_point(c)
    got = regauge_to_slice(x)
    assert got.p == pytest.approx(float(np.imag(x.J[0, 0])), abs=1e-10)


def test_regauge_rejects_zero_moment():
    J = np.diag([1j, -1j])
    g = np.diag([np.exp(0.5j), np.exp(-0.5j)])
    with pytest.raises(GaugeError):
        regauge_to_slice(PhasePoint(g, J))  # diagonal pair commutes, moment is zero
    with pytest.raises(GaugeError):
        regauge_to_slice(PhasePoint(np.eye(2, dtype=complex), J))


def test_time_scale_calibration():
    assert calibrate_time_scale(1.0) == pytest.approx(2.0, abs=1e-6)
    assert calibrate_time_scale(2.0) == pytest.approx(2.0, abs=1e-6)


def test_oracle_energy_drift():
    c0 = SliceCoords(np.pi / 3, 0.0, 1.0)
    t, q, p = integrate_sutherland(c0, 2.0, 10_000)
    e = 0.5 * p**2 + 1.0 / (8.0 * np.sin(q) ** 2)
    assert np.max(np.abs(e - e[0])) < 1e-8


def test_reduced_dynamics_match():
    comp = reduced_dynamics_match(SliceCoords(np.pi / 3, 0.0, 1.0), T=2.0, steps=10_000)
    assert not comp.domain_exit
    assert comp.max_deviation <= 1e-6
    assert comp.energy_drift <= 1e-8
    assert comp.time_scale == pytest.approx(2.0, abs=1e-6)


def test_equilibrium_is_stationary():
    comp = reduced_dynamics_match(SliceCoords(EXCEPTIONAL_Q, 0.0, 1.0), T=2.0, steps=2_000)
    assert comp.max_deviation < 1e-8


def test_trajectory_csv_format():
    comp = reduced_dynamics_match(SliceCoords(np.pi / 3, 0.0, 1.0), T=0.5, steps=500)
    header, rows = trajectory_csv_rows(comp)
    assert header == "t,q,p,q_oracle,p_oracle,energy,deviation"
    for row in rows:
        fields = row.split(",")
        assert len(fields) == 7
        for field in fields:
            float(field)  # every cell is a plain decimal literal
