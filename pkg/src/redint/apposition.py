"""A second maximal torus orthogonal to the diagonal one, and the moment
equation solved over it.

For SU(n) the diagonal torus T has a partner T' with ``T n T' = Z(SU(n))``
and ``t _|_ t'`` for the invariant inner product. T' is realized as the
stabilizer of the scaled cyclic-shift matrix

    Lambda_n = C (E_{n,1} + sum_k E_{k,k+1}),   C = exp(i pi (n-1)/n),

which is special unitary and regular. Pairs ``(g, J)`` built by solving

    J - g^{-1} J g = zeta,     g in T regular, zeta in t' regular,

have discrete joint stabilizer, which seeds the principal stratum of the
phase space with explicit points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import (
    DEFAULT_TOL,
    GroupContext,
    StructureError,
    Tolerances,
    basis_coordinates,
    from_coordinates,
    inner,
    norm,
    numerical_rank,
    orthonormal_basis,
)


class MomentSolveError(RuntimeError):
    """The moment equation has no solution within tolerance."""


def cyclic_shift(n: int):
    """The scaled cyclic-shift matrix; special unitary with n distinct eigenvalues."""
    if n < 2:
        raise ValueError("n must be at least 2")
    C = np.exp(1j * np.pi * (n - 1) / n)
    P = np.zeros((n, n), dtype=complex)
    for k in range(n - 1):
        P[k, k + 1] = 1.0
    P[n - 1, 0] = 1.0
    return C * P


def diagonal_torus_basis(ctx: GroupContext):
    """Orthonormal basis of the diagonal traceless anti-Hermitian matrices."""
    basis = orthonormal_basis(ctx)
    return list(basis[ctx.n * (ctx.n - 1):])


@dataclass(frozen=True)
class AppositionFrame:
    """The pair of orthogonal torus algebras for one matrix size.

    ``torus_basis`` spans the diagonal torus algebra, ``partner_basis`` the
    stabilizer algebra of :func:`cyclic_shift`; both are orthonormal, they
    are mutually orthogonal, and together they have full rank ``2(n-1)``.
    """

    n: int
    shift: np.ndarray
    torus_basis: tuple
    partner_basis: tuple


def build_frame(n: int, tol: Tolerances = DEFAULT_TOL) -> AppositionFrame:
    """Construct and certify the frame for SU(n)."""
    ctx = GroupContext(n)
    lam = cyclic_shift(n)
    basis = orthonormal_basis(ctx)
    cols = []
    lam_inv = lam.conj().T
    for e in basis:
        cols.append(basis_coordinates(ctx, lam @ e @ lam_inv - e))
    M = np.column_stack(cols)
    _, s, vh = np.linalg.svd(M)
    kernel = vh[s <= tol.tau_rank * s[0]]
    if kernel.shape[0] != n - 1:
        raise StructureError(
            f"stabilizer algebra of the shift has dimension {kernel.shape[0]}, expected {n - 1}"
        )
    partner = tuple(from_coordinates(ctx, row) for row in kernel)
    frame = AppositionFrame(n, lam, tuple(diagonal_torus_basis(ctx)), partner)
    residual = frame_orthogonality_residual(frame)
    if residual > 1e-12:
        raise StructureError(f"torus orthogonality residual {residual:.3e} exceeds 1e-12")
    if stacked_torus_rank(frame, tol) != 2 * (n - 1):
        raise StructureError("torus algebras overlap: stacked rank deficient")
    return frame


def frame_orthogonality_residual(frame: AppositionFrame) -> float:
    """Largest pairing between the two torus algebras; zero in exact arithmetic."""
    worst = 0.0
    for u in frame.torus_basis:
        for v in frame.partner_basis:
            worst = max(worst, abs(inner(u, v)))
    return worst


def stacked_torus_rank(frame: AppositionFrame, tol: Tolerances = DEFAULT_TOL) -> int:
    """Rank of both torus bases stacked; ``2(n-1)`` means trivial intersection."""
    ctx = GroupContext(frame.n)
    rows = [basis_coordinates(ctx, u) for u in frame.torus_basis]
    rows += [basis_coordinates(ctx, v) for v in frame.partner_basis]
    rank, _ = numerical_rank(np.vstack(rows), tol.tau_rank)
    return rank


def random_torus_group(frame: AppositionFrame, seed, tol: Tolerances = DEFAULT_TOL):
    """Random regular element of the diagonal torus of SU(n)."""
    rng = np.random.default_rng(seed)
    n = frame.n
    while True:
        phases = rng.uniform(-np.pi, np.pi, size=n - 1)
        phases = np.append(phases, -np.sum(phases))
        vals = np.exp(1j * phases)
        gaps = np.abs(np.subtract.outer(vals, vals))
        if np.min(gaps[~np.eye(n, dtype=bool)]) > 10 * tol.tau_eig:
            return np.diag(vals)


def random_partner_algebra(frame: AppositionFrame, seed, tol: Tolerances = DEFAULT_TOL):
    """Random regular element of the partner torus algebra."""
    from .groups import is_regular

    rng = np.random.default_rng(seed)
    while True:
        coef = rng.standard_normal(len(frame.partner_basis))
        zeta = sum(c * v for c, v in zip(coef, frame.partner_basis))
        if is_regular(zeta, tol):
            return zeta


def _check_torus_regular(g, tol: Tolerances):
    g = np.asarray(g)
    n = g.shape[0]
    if np.linalg.norm(g - np.diag(np.diag(g))) > tol.tau_struct:
        raise StructureError("group element is not diagonal")
    vals = np.diag(g)
    gaps = np.abs(np.subtract.outer(vals, vals))
    if np.min(gaps[~np.eye(n, dtype=bool)]) <= tol.tau_eig:
        raise StructureError("diagonal element has coinciding eigenvalues")
    return g


def solve_moment_equation(g, zeta, tol: Tolerances = DEFAULT_TOL):
    """Minimal-norm ``J`` with ``J - g^{-1} J g = zeta``.

    The linear operator has the diagonal torus algebra as kernel for regular
    diagonal ``g``, so the pseudo-inverse picks the unique representative
    with no diagonal component. Raises :class:`MomentSolveError` when the
    residual exceeds ``1e-10``, which signals that ``zeta`` left the image.
    """
    g = _check_torus_regular(g, tol)
    n = g.shape[0]
    ctx = GroupContext(n)
    basis = orthonormal_basis(ctx)
    ginv = g.conj().T
    cols = [basis_coordinates(ctx, e - ginv @ e @ g) for e in basis]
    M = np.column_stack(cols)
    rhs = basis_coordinates(ctx, zeta)
    coef = np.linalg.pinv(M, rcond=tol.tau_rank) @ rhs
    J = from_coordinates(ctx, coef)
    residual = norm(J - ginv @ J @ g - np.asarray(zeta))
    if residual > 1e-10:
        raise MomentSolveError(
            f"moment equation residual {residual:.3e}; right-hand side outside the image"
        )
    return J
