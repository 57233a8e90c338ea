"""Free motion on the phase space and its constants-of-motion map.

The commuting Hamiltonians are the Casimir trace powers
``C_k(J) = Re[i^k tr(J^k)]`` for ``k = 2..n``. Their flows are exact:

    (g(t), J(t)) = (exp(t * casimir_gradient(k, J0)) g0, J0).

The map ``constants_map(g, J) = (g^{-1} J g, J)`` into su(n) x su(n) packages
every constant of motion of these flows: it is conserved, equivariant for
diagonal conjugation, Poisson onto the product of the minus and plus
Lie-Poisson structures, and of constant rank ``dim_phase - rank`` over the
regular set. Each of those properties is exposed below as a residual or an
integer certificate.
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
    numerical_rank,
    orthonormal_basis,
    project_algebra,
)
from .phase import PhasePoint, act, poisson_bracket

# part/sign of Re[i^k tr(W^k)] as a function of k mod 4
_CASIMIR_PART = {0: ("re", 1.0), 1: ("im", -1.0), 2: ("re", -1.0), 3: ("im", 1.0)}


@dataclass(frozen=True)
class DoublePoint:
    """A point ``(X, Y)`` of su(n) x su(n), the target of the constants map."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        if np.asarray(self.X).shape != np.asarray(self.Y).shape:
            raise ShapeError("double components differ in size")

    @property
    def n(self) -> int:
        return np.asarray(self.X).shape[0]


@dataclass(frozen=True)
class InvariantHamiltonian:
    """The degree-``k`` Casimir Hamiltonian ``(g, J) -> Re[i^k tr(J^k)]``."""

    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("Casimir degree must be at least 2")

    @property
    def observable(self) -> w.Observable:
        part, coeff = _CASIMIR_PART[self.k % 4]
        return w.observable(w.word(("J",) * self.k, part=part, coeff=coeff))


def casimir(k: int) -> InvariantHamiltonian:
    return InvariantHamiltonian(k)


def casimir_value(k: int, M) -> float:
    """``Re[i^k tr(M^k)]`` for any algebra element ``M``."""
    M = np.asarray(M)
    return float(((1j**k) * np.trace(np.linalg.matrix_power(M, k))).real)


def casimir_double(k: int, letter: str) -> w.Observable:
    """The same Casimir as a word in one slot of the double."""
    part, coeff = _CASIMIR_PART[k % 4]
    return w.observable(w.word((letter,) * k, part=part, coeff=coeff))


def casimir_gradient(k: int, J):
    """Gradient of the degree-``k`` Casimir, ``-k proj(i^k J^{k-1})``.

    The unique su(n) element with ``<A, grad> = d/dt C_k(J + tA)``; for
    ``k = 2`` it reduces to ``2 J``.
    """
    J = np.asarray(J)
    return -float(k) * project_algebra((1j**k) * np.linalg.matrix_power(J, k - 1))


def free_flow(x: PhasePoint, H: InvariantHamiltonian, t: float) -> PhasePoint:
    """Exact integral curve of the Casimir Hamiltonian through ``x``.

    The momentum component is returned bit-identical to the input.
    """
    return PhasePoint(group_exp(t * casimir_gradient(H.k, x.J)) @ x.g, x.J)


def constants_map(x: PhasePoint) -> DoublePoint:
    """``(g^{-1} J g, J)``; its pullbacks are the constants of motion."""
    return DoublePoint(x.g.conj().T @ x.J @ x.g, x.J)


def double_norm(z1: DoublePoint, z2: DoublePoint) -> float:
    """Frobenius distance on both components of the double."""
    return float(
        np.sqrt(np.linalg.norm(z1.X - z2.X) ** 2 + np.linalg.norm(z1.Y - z2.Y) ** 2)
    )


def flow_conservation_defect(x: PhasePoint, H: InvariantHamiltonian, t_grid) -> float:
    """Max drift of the constants map along the exact flow over ``t_grid``."""
    z0 = constants_map(x)
    worst = 0.0
    for t in t_grid:
        worst = max(worst, double_norm(constants_map(free_flow(x, H, float(t))), z0))
    return worst


def equivariance_defect(x: PhasePoint, eta) -> float:
    """Defect of equivariance under diagonal conjugation on both sides."""
    eta = np.asarray(eta)
    left = constants_map(act(eta, x))
    z = constants_map(x)
    right = DoublePoint(eta @ z.X @ eta.conj().T, eta @ z.Y @ eta.conj().T)
    return double_norm(left, right)


def double_environment(z: DoublePoint):
    return {"X": z.X, "Y": z.Y}


def evaluate_double(f: w.Observable, z: DoublePoint) -> float:
    return w.evaluate(f, double_environment(z))


def slot_gradient(f: w.Observable, z: DoublePoint, letter: str):
    return w.letter_gradient(f, double_environment(z), letter)


def lie_poisson_double_bracket(f: w.Observable, h: w.Observable, z: DoublePoint) -> float:
    """Product bracket, minus Lie-Poisson in the first slot, plus in the second:

    ``-<X, [grad_X f, grad_X h]> + <Y, [grad_Y f, grad_Y h]>``.
    """
    env = double_environment(z)
    fX = w.letter_gradient(f, env, "X")
    fY = w.letter_gradient(f, env, "Y")
    hX = w.letter_gradient(h, env, "X")
    hY = w.letter_gradient(h, env, "Y")
    return -inner(z.X, lie_bracket(fX, hX)) + inner(z.Y, lie_bracket(fY, hY))


PULLBACK_MAP = {"X": ("Ginv", "J", "G"), "Y": ("J",)}


def pullback(f: w.Observable) -> w.Observable:
    """Pull a double observable back through the constants map, at word level."""
    return w.substitute(f, PULLBACK_MAP)


def poisson_map_defect(f: w.Observable, h: w.Observable, x: PhasePoint) -> float:
    """``|{f o Psi, h o Psi}(x) - {f, h}_double(Psi(x))|`` for the constants map.

    Both sides are evaluated analytically along independent routes: the left
    through the canonical bracket of substituted phase-space words, the right
    through the Lie-Poisson bracket on the double.
    """
    lhs = poisson_bracket(pullback(f), pullback(h), x)
    rhs = lie_poisson_double_bracket(f, h, constants_map(x))
    return abs(lhs - rhs)


def chart_directions(ctx: GroupContext):
    """The ``2 dim_g`` right-trivialized chart directions ``(a, b)``."""
    basis = orthonormal_basis(ctx)
    zero = np.zeros((ctx.n, ctx.n), dtype=complex)
    return [(e, zero) for e in basis] + [(zero, e) for e in basis]


def _flatten_double(z: DoublePoint):
    return np.concatenate(
        [z.X.real.ravel(), z.X.imag.ravel(), z.Y.real.ravel(), z.Y.imag.ravel()]
    )


def constants_map_jacobian(x: PhasePoint, h: float):
    """Jacobian of the constants map, column by column by central differences.

    Columns follow :func:`chart_directions`; rows flatten both components of
    the double into real coordinates.
    """
    ctx = x.context
    cols = []
    for a, b in chart_directions(ctx):
        plus = constants_map(PhasePoint(group_exp(h * a) @ x.g, x.J + h * b))
        minus = constants_map(PhasePoint(group_exp(-h * a) @ x.g, x.J - h * b))
        cols.append((_flatten_double(plus) - _flatten_double(minus)) / (2.0 * h))
    return np.column_stack(cols)


def constants_map_differential(x: PhasePoint, a, b):
    """Exact image of the chart direction ``(a, b)`` under the differential.

    The group direction maps to ``(g^{-1} [J, a] g, 0)`` and the fiber
    direction to ``(g^{-1} b g, b)``.
    """
    ginv = x.g.conj().T
    dX = ginv @ (lie_bracket(x.J, a) + b) @ x.g
    return dX, b


def constants_map_rank(x: PhasePoint, tol: Tolerances = DEFAULT_TOL):
    """Numerical rank of the Jacobian; ``dim_phase - rank`` at regular momenta.

    Returns ``(rank, singular_values)``.
    """
    M = constants_map_jacobian(x, tol.h_fd)
    return numerical_rank(M, tol.tau_rank)


def casimir_difference(z: DoublePoint, k: int) -> float:
    """``|C_k(X) - C_k(Y)|``; vanishes on the image of the constants map."""
    return abs(casimir_value(k, z.X) - casimir_value(k, z.Y))
