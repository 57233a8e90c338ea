"""Rank certificates for the conjugation-reduced free system.

Everything here works upstairs on the phase space: quotient statements are
tested modulo the gauge distribution spanned by the conjugation action, so
no chart on the orbit space is ever constructed. The certificates are

* ``classify``           stratum membership flags for a phase point,
* ``reduced_hamiltonian_span``   dimension of the projected span of the
  commuting Hamiltonian vector fields (expected ``rank``),
* ``reduced_constants_span``     dimension of the span of differentials of
  pulled-back invariant words (expected ``dim_g - rank``),
* ``centrality_defect``   bracket of a Casimir with a pulled-back invariant,
* ``leaf_codim``          independence count of the Casimirs of the moment
  value (expected ``rank``),
* ``invariant_span_double``      span of invariant-word differentials on the
  double, compared against the orbit codimension.

All spans are measured by rank-revealing SVD with the relative cutoff from
:class:`redint.groups.Tolerances`; span operations return the computed
integer for any input stratum rather than failing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import words as w
from .free_motion import (
    DoublePoint,
    casimir_double,
    casimir_gradient,
    constants_map,
    pullback,
)
from .groups import (
    DEFAULT_TOL,
    StructureError,
    Tolerances,
    adjoint,
    basis_coordinates,
    centralizer_basis,
    is_regular,
    joint_centralizer_dim,
    lie_bracket,
    numerical_rank,
    orthonormal_basis,
)
from .phase import PhasePoint, moment_map, poisson_bracket


@dataclass(frozen=True)
class TangentVector:
    """Right-trivialized tangent vector ``(a g, b)`` stored as ``(a, b)``."""

    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True)
class StratumFlags:
    """Membership flags for the isotropy stratification of a phase point.

    regular_momentum  the momentum J is a regular algebra element
    principal         the joint stabilizer of (g, J) is discrete, so the
                      point sits on a principal conjugation orbit
    image_principal   the constants-map image has regular components and a
                      discrete joint stabilizer
    regular_moment    the moment-map value is regular
    """

    regular_momentum: bool
    principal: bool
    image_principal: bool
    regular_moment: bool


def classify(x: PhasePoint, tol: Tolerances = DEFAULT_TOL) -> StratumFlags:
    """Compute all stratum flags of ``x`` at the Lie-algebra level.

    ``image_principal`` implies ``principal`` by construction, matching the
    containment of the underlying strata.
    """
    regular_momentum = is_regular(x.J, tol)
    principal = joint_centralizer_dim([x.J], [x.g], tol) == 0
    z = constants_map(x)
    image_principal = (
        principal
        and regular_momentum
        and is_regular(z.X, tol)
        and joint_centralizer_dim([z.X, z.Y], [], tol) == 0
    )
    regular_moment = is_regular(moment_map(x), tol)
    return StratumFlags(regular_momentum, principal, image_principal, regular_moment)


def gauge_directions(x: PhasePoint):
    """Conjugation-generated tangent vectors, one per basis element ``Y``.

    The curve ``act(e^{tY}, x)`` has right-trivialized velocity
    ``(Y - Ad_g Y, [Y, J])``.
    """
    return [
        TangentVector(Y - adjoint(x.g, Y), lie_bracket(Y, x.J))
        for Y in orthonormal_basis(x.context)
    ]


def hamiltonian_directions(x: PhasePoint):
    """Velocities ``(X_i, 0)`` of the commuting flows, ``X_i`` spanning ker ad_J.

    Requires a regular momentum so that the kernel has dimension ``rank``.
    """
    ctx = x.context
    kernel = centralizer_basis(x.J)
    if len(kernel) != ctx.rank:
        raise StructureError(
            f"momentum is not regular: centralizer dimension {len(kernel)} != {ctx.rank}"
        )
    zero = np.zeros((ctx.n, ctx.n), dtype=complex)
    return [TangentVector(X, zero) for X in kernel]


def tangent_coordinates(ctx, v: TangentVector):
    """Coordinates of a tangent vector on the orthonormal chart frame."""
    return np.concatenate([basis_coordinates(ctx, v.a), basis_coordinates(ctx, v.b)])


def _stack(ctx, vectors):
    if not vectors:
        return np.zeros((0, 2 * ctx.dim_g))
    return np.vstack([tangent_coordinates(ctx, v) for v in vectors])


def quotient_rank(ctx, vectors, gauge, tau_rank: float) -> int:
    """``rank([V; W]) - rank(W)``, the dimension of the span of ``vectors``
    projected along the gauge distribution."""
    V = _stack(ctx, vectors)
    W = _stack(ctx, gauge)
    joint, _ = numerical_rank(np.vstack([V, W]), tau_rank)
    base, _ = numerical_rank(W, tau_rank)
    return joint - base


def reduced_hamiltonian_span(x: PhasePoint, tol: Tolerances = DEFAULT_TOL) -> int:
    """Projected span of the commuting Hamiltonian fields at ``x``.

    Equals ``rank`` on the stratum where the constants-map image has a
    discrete stabilizer; drops exactly where the image acquires continuous
    symmetry.
    """
    ctx = x.context
    return quotient_rank(
        ctx, hamiltonian_directions(x), gauge_directions(x), tol.tau_rank
    )


def _dedup_key(letters):
    """Canonical form of a word modulo rotation and reversal."""
    candidates = []
    for seq in (letters, tuple(reversed(letters))):
        for s in range(len(seq)):
            candidates.append(seq[s:] + seq[:s])
    return min(candidates)


def word_generators(max_len: int):
    """All trace words over ``{X, Y}`` up to ``max_len`` letters, both parts,
    deduplicated modulo cyclic rotation and reversal.

    Deterministic; returns single-word observables with unit coefficient.
    Zero-trace words are retained.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    seen = set()
    classes = []
    for length in range(1, max_len + 1):
        for code in range(2 ** length):
            letters = tuple("X" if (code >> i) & 1 else "Y" for i in range(length))
            key = _dedup_key(letters)
            if key not in seen:
                seen.add(key)
                classes.append(key)
    out = []
    for letters in classes:
        out.append(w.observable(w.word(letters, part="re")))
        out.append(w.observable(w.word(letters, part="im")))
    return out


def _slot_gradients(gen: w.Observable, z: DoublePoint):
    env = {"X": z.X, "Y": z.Y}
    return w.letter_gradient(gen, env, "X"), w.letter_gradient(gen, env, "Y")


def pullback_differential_row(x: PhasePoint, gen: w.Observable):
    """Chart coordinates of ``d(P o constants_map)`` for one invariant word.

    Chain rule through the analytic differential of the constants map: the
    group column block is ``[Ad_g grad_X P, J]`` and the fiber block is
    ``Ad_g grad_X P + grad_Y P`` in basis coordinates.
    """
    ctx = x.context
    z = constants_map(x)
    gX, gY = _slot_gradients(gen, z)
    pushed = adjoint(x.g, gX)
    return np.concatenate(
        [
            basis_coordinates(ctx, lie_bracket(pushed, x.J)),
            basis_coordinates(ctx, pushed + gY),
        ]
    )


def constants_differential_matrix(x: PhasePoint, gens):
    """Stacked differentials of the pulled-back invariant words at ``x``."""
    return np.vstack([pullback_differential_row(x, gen) for gen in gens])


def reduced_constants_span(x: PhasePoint, gens, tol: Tolerances = DEFAULT_TOL) -> int:
    """Rank of the stacked differentials of the pulled-back generators.

    Invariant functions already annihilate the gauge distribution, so this
    upstairs rank equals the span of the reduced differentials; it plateaus
    at ``dim_g - rank`` once the generating set is rich enough.
    """
    rank, _ = numerical_rank(constants_differential_matrix(x, gens), tol.tau_rank)
    return rank


def span_plateau(x: PhasePoint, max_len: int, tol: Tolerances = DEFAULT_TOL):
    """Sweep ``reduced_constants_span`` over word length; returns the list of
    ranks for lengths ``1..max_len``."""
    return [reduced_constants_span(x, word_generators(m), tol) for m in range(1, max_len + 1)]


def centrality_defect(x: PhasePoint, k: int, gen: w.Observable) -> float:
    """``|{C_k(J), P o constants_map}(x)|``; the Casimirs are central among
    the pulled-back constants of motion."""
    ck = pullback(casimir_double(k, "Y"))
    return abs(poisson_bracket(ck, pullback(gen), x))


def moment_casimir_row(x: PhasePoint, k: int):
    """Chart coordinates of ``d(C_k o moment_map)`` at ``x``."""
    ctx = x.context
    mu = moment_map(x)
    grad = casimir_gradient(k, mu)
    pushed = adjoint(x.g, grad)
    return np.concatenate(
        [
            -basis_coordinates(ctx, lie_bracket(pushed, x.J)),
            basis_coordinates(ctx, grad - pushed),
        ]
    )


def leaf_codim(x: PhasePoint, tol: Tolerances = DEFAULT_TOL) -> int:
    """Independence count of ``C_k o moment_map`` transverse to the gauge
    directions; expected ``rank`` where the moment value is regular.

    These functions are invariant, so their differentials are automatically
    gauge-orthogonal and the quotient subtraction is a consistency guard
    rather than a correction.
    """
    ctx = x.context
    D = np.vstack([moment_casimir_row(x, k) for k in range(2, ctx.n + 1)])
    W = _stack(ctx, gauge_directions(x))
    joint, _ = numerical_rank(np.vstack([D, W]), tol.tau_rank)
    base, _ = numerical_rank(W, tol.tau_rank)
    return joint - base


def double_differential_matrix(z: DoublePoint, gens):
    """Stacked differentials of invariant words at a point of the double."""
    from .groups import GroupContext

    ctx = GroupContext(z.n)
    rows = []
    for gen in gens:
        gX, gY = _slot_gradients(gen, z)
        rows.append(
            np.concatenate([basis_coordinates(ctx, gX), basis_coordinates(ctx, gY)])
        )
    return np.vstack(rows)


def invariant_span_double(z: DoublePoint, gens, tol: Tolerances = DEFAULT_TOL) -> int:
    """Rank of the invariant-word differentials at ``z``."""
    rank, _ = numerical_rank(double_differential_matrix(z, gens), tol.tau_rank)
    return rank


def double_orbit_dim(z: DoublePoint, tol: Tolerances = DEFAULT_TOL) -> int:
    """Dimension of the conjugation orbit through ``z``."""
    from .groups import GroupContext

    ctx = GroupContext(z.n)
    return ctx.dim_g - joint_centralizer_dim([z.X, z.Y], [], tol)


def hamiltonian_span_inside_constants(x: PhasePoint, gens, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether each ``d(C_k(J))`` lies in the span of the pulled-back
    constants' differentials, certifying the containment of the Hamiltonian
    ring in the ring of constants of motion."""
    ctx = x.context
    D = constants_differential_matrix(x, gens)
    base, _ = numerical_rank(D, tol.tau_rank)
    for k in range(2, ctx.n + 1):
        grad = casimir_gradient(k, x.J)
        row = np.concatenate(
            [np.zeros(ctx.dim_g), basis_coordinates(ctx, grad)]
        )
        joint, _ = numerical_rank(np.vstack([D, row]), tol.tau_rank)
        if joint != base:
            return False
    return True
