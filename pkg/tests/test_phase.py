"""Tests for the phase space: bracket, gradients, action, moment map."""

import numpy as np
import pytest

from redint.groups import (
    DEFAULT_TOL,
    GroupContext,
    ShapeError,
    group_exp,
    inner,
    lie_bracket,
    random_algebra,
    random_group,
)
from redint.phase import (
    PhasePoint,
    act,
    evaluate,
    fd_bracket_with,
    fd_fiber_gradient,
    fd_left_gradient,
    fiber_gradient,
    hamiltonian_velocity,
    left_gradient,
    moment_generates_defect,
    moment_map,
    moment_observable,
    poisson_bracket,
    product_bracket,
    random_phase_point,
    right_gradient,
)
from redint.words import observable, random_observable, word

CTX2 = GroupContext(2)
CTX3 = GroupContext(3)
TOL = DEFAULT_TOL


def pairing_observable(A):
    """<A, J> as a trace word with a constant letter."""
    return observable(word((np.asarray(A), "J"), part="re", coeff=-1.0))


def test_phase_point_shape_guard():
    with pytest.raises(ShapeError):
        PhasePoint(np.eye(2), np.zeros((3, 3)))


def test_eval_examples():
    x = PhasePoint(np.eye(2, dtype=complex), np.diag([1j, -1j]))
    assert evaluate(observable(word(("G",))), x) == pytest.approx(2.0)
    assert evaluate(observable(word(("J", "J"))), x) == pytest.approx(-2.0)
    y = random_phase_point(CTX3, 8)
    assert evaluate(observable(word(("Ginv", "J", "G"))), y) == pytest.approx(0.0, abs=1e-12)


def test_eval_is_conjugation_invariant():
    rng = np.random.default_rng(21)
    for ctx in (CTX2, CTX3):
        x = random_phase_point(ctx, rng)
        eta = random_group(ctx, rng)
        for _ in range(10):
            F = random_observable(rng, ("G", "Ginv", "J"), max_len=4)
            assert evaluate(F, act(eta, x)) == pytest.approx(evaluate(F, x), abs=1e-10)


def test_left_gradient_examples():
    x = PhasePoint(np.eye(2, dtype=complex), np.diag([1j, -1j]))
    only_j = observable(word(("J", "J")))
    assert np.allclose(left_gradient(only_j, x), 0.0)
    trace_g = observable(word(("G",)))
    assert np.linalg.norm(left_gradient(trace_g, x)) < 1e-14
    assert np.linalg.norm(fd_left_gradient(trace_g, x, TOL.h_fd)) < 1e-9


def test_fiber_gradient_examples():
    rng = np.random.default_rng(2)
    x = random_phase_point(CTX2, rng)
    A = random_algebra(CTX2, rng)
    assert np.allclose(fiber_gradient(pairing_observable(A), x), A)
    only_g = observable(word(("G", "Ginv"), coeff=3.0))
    assert np.allclose(fiber_gradient(only_g, x), 0.0)
    kinetic = observable(word(("J", "J"), coeff=-1.0))
    assert np.allclose(fiber_gradient(kinetic, x), 2.0 * x.J)


@pytest.mark.parametrize("ctx", [CTX2, CTX3])
def test_gradients_match_finite_differences(ctx):
    rng = np.random.default_rng(33)
    for _ in range(8):
        x = random_phase_point(ctx, rng)
        F = random_observable(rng, ("G", "Ginv", "J"), max_len=4)
        assert np.linalg.norm(left_gradient(F, x) - fd_left_gradient(F, x, TOL.h_fd)) < TOL.tau_fd
        assert np.linalg.norm(fiber_gradient(F, x) - fd_fiber_gradient(F, x, TOL.h_fd)) < TOL.tau_fd


def test_right_gradient_is_conjugated_left_gradient():
    rng = np.random.default_rng(41)
    x = random_phase_point(CTX3, rng)
    F = random_observable(rng, ("G", "Ginv", "J"), max_len=4)
    # d/dt F(g e^{tA}) = d/dt F(e^{t g A g^-1}} g), so the gradients are conjugate
    lg = left_gradient(F, x)
    rg = right_gradient(F, x)
    assert np.linalg.norm(rg - x.g.conj().T @ lg @ x.g) < 1e-10


def test_bracket_of_momentum_pairings():
    rng = np.random.default_rng(6)
    x = random_phase_point(CTX3, rng)
    A, B = random_algebra(CTX3, rng), random_algebra(CTX3, rng)
    got = poisson_bracket(pairing_observable(A), pairing_observable(B), x)
    assert got == pytest.approx(inner(x.J, lie_bracket(A, B)), abs=1e-12)


def test_bracket_antisymmetry_is_exact():
    rng = np.random.default_rng(9)
    for ctx in (CTX2, CTX3):
        for _ in range(20):
            x = random_phase_point(ctx, rng)
            F = random_observable(rng, ("G", "Ginv", "J"), max_len=4)
            H = random_observable(rng, ("G", "Ginv", "J"), max_len=4)
            assert abs(poisson_bracket(F, F, x)) == 0.0
            assert abs(poisson_bracket(F, H, x) + poisson_bracket(H, F, x)) <= 1e-14


def test_bracket_against_flow_derivative_oracle():
    # {F, H} with H = -Re tr(J J): flow direction is 2J, so the bracket is
    # the time derivative of F along t -> (e^{2tJ} g, J)
    rng = np.random.default_rng(10)
    x = random_phase_point(CTX2, rng)
    F = observable(word(("G",)))
    H = observable(word(("J", "J"), coeff=-1.0))
    got = poisson_bracket(F, H, x)
    h = TOL.h_fd
    fd = (
        evaluate(F, PhasePoint(group_exp(2 * h * x.J) @ x.g, x.J))
        - evaluate(F, PhasePoint(group_exp(-2 * h * x.J) @ x.g, x.J))
    ) / (2 * h)
    assert got == pytest.approx(fd, abs=1e-8)
    assert got == pytest.approx(inner(left_gradient(F, x), 2 * x.J), abs=1e-12)


def test_hamiltonian_velocity_reproduces_bracket():
    rng = np.random.default_rng(12)
    x = random_phase_point(CTX3, rng)
    F = random_observable(rng, ("G", "Ginv", "J"), max_len=3)
    H = random_observable(rng, ("G", "Ginv", "J"), max_len=3)
    a, b = hamiltonian_velocity(H, x)
    chain = inner(a, left_gradient(F, x)) + inner(b, fiber_gradient(F, x))
    assert chain == pytest.approx(poisson_bracket(F, H, x), abs=1e-12)


def test_leibniz_property():
    rng = np.random.default_rng(14)
    for ctx in (CTX2, CTX3):
        for _ in range(20):
            x = random_phase_point(ctx, rng)
            F, G, H = (random_observable(rng, ("G", "Ginv", "J"), max_len=3) for _ in range(3))
            lhs = product_bracket(F, G, H, x)
            rhs = evaluate(F, x) * poisson_bracket(G, H, x) + evaluate(G, x) * poisson_bracket(F, H, x)
            assert abs(lhs - rhs) <= 1e-9


def test_jacobi_identity_sampled():
    rng = np.random.default_rng(16)
    for ctx in (CTX2, CTX3):
        worst = 0.0
        for _ in range(25):
            x = random_phase_point(ctx, rng)
            F, G, H = (random_observable(rng, ("G", "Ginv", "J"), max_len=3) for _ in range(3))
            total = 0.0
            for A, B, C in ((F, G, H), (G, H, F), (H, F, G)):
                total += -fd_bracket_with(lambda y: poisson_bracket(B, C, y), A, x, TOL.h_fd)
            worst = max(worst, abs(total))
        assert worst <= 1e-6


def test_act_examples():
    rng = np.random.default_rng(18)
    x = random_phase_point(CTX3, rng)
    same = act(np.eye(3), x)
    assert np.allclose(same.g, x.g) and np.allclose(same.J, x.J)
    center = np.exp(2j * np.pi / 3) * np.eye(3)
    centered = act(center, x)
    assert np.allclose(centered.g, x.g) and np.allclose(centered.J, x.J)
    e1, e2 = random_group(CTX3, rng), random_group(CTX3, rng)
    lhs = act(e1, act(e2, x))
    rhs = act(e1 @ e2, x)
    assert np.linalg.norm(lhs.g - rhs.g) < 1e-12
    assert np.linalg.norm(lhs.J - rhs.J) < 1e-12


def test_moment_map_examples():
    rng = np.random.default_rng(20)
    J = random_algebra(CTX2, rng)
    assert np.allclose(moment_map(PhasePoint(np.eye(2, dtype=complex), J)), 0.0)
    x = random_phase_point(CTX3, rng)
    eta = random_group(CTX3, rng)
    lhs = moment_map(act(eta, x))
    rhs = eta @ moment_map(x) @ eta.conj().T
    assert np.linalg.norm(lhs - rhs) < 1e-12


def test_moment_observable_agrees_with_pairing():
    rng = np.random.default_rng(22)
    x = random_phase_point(CTX3, rng)
    X = random_algebra(CTX3, rng)
    assert evaluate(moment_observable(X), x) == pytest.approx(inner(moment_map(x), X), abs=1e-12)


def test_moment_generates_the_action():
    rng = np.random.default_rng(24)
    x = random_phase_point(CTX2, rng)
    A = random_algebra(CTX2, rng)
    X = random_algebra(CTX2, rng)
    # analytic value of the generated derivative for a momentum pairing
    got = poisson_bracket(pairing_observable(A), moment_observable(X), x)
    assert got == pytest.approx(inner(A, lie_bracket(X, x.J)), abs=1e-8)
    assert moment_generates_defect(pairing_observable(A), np.zeros((2, 2)), x) == 0.0


@pytest.mark.parametrize("ctx", [CTX2, CTX3])
def test_moment_generates_defect_on_samples(ctx):
    rng = np.random.default_rng(26)
    worst = 0.0
    for _ in range(100):
        x = random_phase_point(ctx, rng)
        F = random_observable(rng, ("G", "Ginv", "J"), max_len=3)
        X = random_algebra(ctx, rng)
        worst = max(worst, moment_generates_defect(F, X, x))
    assert worst < TOL.tau_fd
