"""Phase space SU(n) x su(n): bracket, conjugation action, moment map.

A phase point is a pair ``(g, J)`` obtained from the cotangent bundle of
SU(n) by right translation and the identification of su(n)* with su(n)
through the invariant inner product. The canonical Poisson bracket in these
coordinates is

    {F, H} = <grad_left F, grad_fiber H> - <grad_left H, grad_fiber F>
             + <J, [grad_fiber F, grad_fiber H]>

where ``grad_left`` differentiates along ``g -> e^{tA} g`` and
``grad_fiber`` along ``J -> J + tA``. Observables are trace words from
:mod:`redint.words` evaluated with ``G -> g``, ``Ginv -> g^{-1}``,
``J -> J``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import words as w
from .groups import (
    DEFAULT_TOL,
    GroupContext,
    ShapeError,
    Tolerances,
    group_exp,
    inner,
    lie_bracket,
    orthonormal_basis,
)


@dataclass(frozen=True)
class PhasePoint:
    """A point ``(g, J)`` of the phase space; components share one size."""

    g: np.ndarray
    J: np.ndarray

    def __post_init__(self):
        if np.asarray(self.g).shape != np.asarray(self.J).shape:
            raise ShapeError("group and algebra components differ in size")

    @property
    def n(self) -> int:
        return np.asarray(self.g).shape[0]

    @property
    def context(self) -> GroupContext:
        return GroupContext(self.n)


def environment(x: PhasePoint):
    """Letter bindings for evaluating phase-space observables at ``x``."""
    return {"G": x.g, "Ginv": x.g.conj().T, "J": x.J}


def evaluate(F: w.Observable, x: PhasePoint) -> float:
    return w.evaluate(F, environment(x))


def left_gradient(F: w.Observable, x: PhasePoint):
    """su(n) representative of ``d/dt F(e^{tA} g, J)`` at ``t = 0``."""
    return w.left_group_gradient(F, environment(x))


def right_gradient(F: w.Observable, x: PhasePoint):
    """su(n) representative of ``d/dt F(g e^{tA}, J)``; auxiliary only."""
    return w.right_group_gradient(F, environment(x))


def fiber_gradient(F: w.Observable, x: PhasePoint):
    """su(n) representative of ``d/dt F(g, J + tA)`` at ``t = 0``."""
    return w.letter_gradient(F, environment(x), "J")


def poisson_bracket(F: w.Observable, H: w.Observable, x: PhasePoint) -> float:
    """Canonical bracket of two trace-word observables at ``x``."""
    env = environment(x)
    gF = w.left_group_gradient(F, env)
    gH = w.left_group_gradient(H, env)
    dF = w.letter_gradient(F, env, "J")
    dH = w.letter_gradient(H, env, "J")
    return inner(gF, dH) - inner(gH, dF) + inner(x.J, lie_bracket(dF, dH))


def hamiltonian_velocity(H: w.Observable, x: PhasePoint):
    """Right-trivialized velocity ``(a, b)`` of the Hamiltonian flow of ``H``.

    The flow moves ``x`` along the curve ``(e^{ta} g, J + tb)`` to first
    order, and ``dF/dt = <a, grad_left F> + <b, grad_fiber F>`` reproduces
    the bracket ``{F, H}`` for every observable ``F``.
    """
    env = environment(x)
    a = w.letter_gradient(H, env, "J")
    b = -w.left_group_gradient(H, env) - lie_bracket(x.J, a)
    return a, b


def shift(x: PhasePoint, a, b, t: float) -> PhasePoint:
    """Point ``(exp(t a) g, J + t b)`` of the right-trivialized chart."""
    return PhasePoint(group_exp(t * a) @ x.g, x.J + t * b)


def fd_directional(F_value, x: PhasePoint, a, b, h: float) -> float:
    """Central finite difference of a point function along the chart curve."""
    return (F_value(shift(x, a, b, h)) - F_value(shift(x, a, b, -h))) / (2.0 * h)


def directional_derivative(F: w.Observable, x: PhasePoint, a, b, h: float) -> float:
    """Central finite difference of ``F`` along the chart curve of ``(a, b)``."""
    return fd_directional(lambda y: evaluate(F, y), x, a, b, h)


def fd_left_gradient(F: w.Observable, x: PhasePoint, h: float):
    """Finite-difference oracle for :func:`left_gradient`."""
    ctx = x.context
    zero = np.zeros_like(x.J)
    coef = [directional_derivative(F, x, e, zero, h) for e in orthonormal_basis(ctx)]
    out = np.zeros_like(x.J)
    for c, e in zip(coef, orthonormal_basis(ctx)):
        out = out + c * e
    return out


def fd_fiber_gradient(F: w.Observable, x: PhasePoint, h: float):
    """Finite-difference oracle for :func:`fiber_gradient`."""
    ctx = x.context
    zero = np.zeros_like(x.J)
    coef = [directional_derivative(F, x, zero, e, h) for e in orthonormal_basis(ctx)]
    out = np.zeros_like(x.J)
    for c, e in zip(coef, orthonormal_basis(ctx)):
        out = out + c * e
    return out


def fd_bracket_with(F_value, H: w.Observable, x: PhasePoint, h: float) -> float:
    """Bracket ``{P, H}`` of a black-box function ``P`` with an observable.

    ``P`` only needs point evaluations; the derivative is taken along the
    exact Hamiltonian direction of ``H`` by a fourth-order central stencil,
    which keeps the truncation error below the roundoff floor. Used for
    nested brackets and product observables, which leave the trace-word
    family.
    """
    a, b = hamiltonian_velocity(H, x)
    speed = float(np.sqrt(inner(a, a) + inner(b, b)))
    if speed == 0.0:
        return 0.0
    # keep the chart step bounded in arc length; balances the fourth-order
    # truncation against the roundoff floor for fast directions
    s = max(h, 6e-4) / max(speed, 1.0)
    f1 = F_value(shift(x, a, b, s)) - F_value(shift(x, a, b, -s))
    f2 = F_value(shift(x, a, b, 2.0 * s)) - F_value(shift(x, a, b, -2.0 * s))
    return (8.0 * f1 - f2) / (12.0 * s)


def product_gradients(F: w.Observable, G: w.Observable, x: PhasePoint):
    """Gradients of the pointwise product ``F * G`` by the product rule.

    The product of two trace observables is no longer a trace word, but its
    gradients are exact combinations of the factor gradients.
    """
    env = environment(x)
    fv, gv = w.evaluate(F, env), w.evaluate(G, env)
    left = fv * w.left_group_gradient(G, env) + gv * w.left_group_gradient(F, env)
    fiber = fv * w.letter_gradient(G, env, "J") + gv * w.letter_gradient(F, env, "J")
    return left, fiber


def product_bracket(F: w.Observable, G: w.Observable, H: w.Observable, x: PhasePoint) -> float:
    """``{F * G, H}`` with the product gradients fed through the bracket."""
    env = environment(x)
    left, fiber = product_gradients(F, G, x)
    gH = w.left_group_gradient(H, env)
    dH = w.letter_gradient(H, env, "J")
    return inner(left, dH) - inner(gH, fiber) + inner(x.J, lie_bracket(fiber, dH))


def act(eta, x: PhasePoint) -> PhasePoint:
    """Diagonal conjugation ``(g, J) -> (eta g eta^{-1}, eta J eta^{-1})``."""
    eta = np.asarray(eta)
    if eta.shape != np.asarray(x.g).shape:
        raise ShapeError("group element and phase point differ in size")
    eta_inv = eta.conj().T
    return PhasePoint(eta @ x.g @ eta_inv, eta @ x.J @ eta_inv)


def moment_map(x: PhasePoint):
    """Conserved su(n) value ``J - g^{-1} J g`` generating the conjugation action."""
    return x.J - x.g.conj().T @ x.J @ x.g


def moment_observable(X) -> w.Observable:
    """The pairing ``<moment_map(.), X>`` realized as a trace-word observable."""
    X = np.asarray(X)
    return w.observable(
        w.word(("J", X), part="re", coeff=-1.0),
        w.word(("Ginv", "J", "G", X), part="re", coeff=1.0),
    )


def action_derivative(F: w.Observable, X, x: PhasePoint, h: float) -> float:
    """Central difference of ``t -> F(act(e^{tX}, x))`` at ``t = 0``."""
    plus = evaluate(F, act(group_exp(h * np.asarray(X)), x))
    minus = evaluate(F, act(group_exp(-h * np.asarray(X)), x))
    return (plus - minus) / (2.0 * h)


def moment_generates_defect(
    F: w.Observable, X, x: PhasePoint, tol: Tolerances = DEFAULT_TOL
) -> float:
    """``|{F, <moment, X>}(x) - d/dt F(act(e^{tX}, x))|``.

    A small value certifies that the moment map generates the conjugation
    action through the bracket.
    """
    X = np.asarray(X)
    if not np.any(X):
        return abs(poisson_bracket(F, moment_observable(X), x))
    analytic = poisson_bracket(F, moment_observable(X), x)
    numeric = action_derivative(F, X, x, tol.h_fd)
    return abs(analytic - numeric)


def random_phase_point(ctx: GroupContext, seed) -> PhasePoint:
    """Random phase point with independent group and algebra components."""
    rng = np.random.default_rng(seed)
    from .groups import random_algebra, random_group

    return PhasePoint(random_group(ctx, rng), random_algebra(ctx, rng))
