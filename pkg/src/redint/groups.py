"""su(n) / SU(n) substrate: inner product, brackets, exponential, centralizers.

Conventions used throughout the package:

* algebra elements are traceless anti-Hermitian complex ``n x n`` arrays,
* group elements are special unitary complex ``n x n`` arrays,
* the invariant inner product is ``<X, Y> = -Re tr(XY)``, which is positive
  definite on su(n) and proportional to the Killing form,
* all randomness flows through an explicit seed or ``numpy.random.Generator``.

Matrices are plain numpy arrays; the functions below never mutate their
arguments and callers are expected to treat returned arrays as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class ShapeError(ValueError):
    """Operands have incompatible matrix sizes."""


class StructureError(ValueError):
    """A matrix violates a structural invariant (anti-Hermiticity, unitarity, ...)."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by every certificate in the package.

    tau_struct   structural residual bound (anti-Hermiticity, unitarity)
    tau_rank     relative singular-value cutoff for numerical ranks
    h_fd         finite-difference step
    tau_fd       bound for analytic-vs-finite-difference gradient agreement
    tau_cons     conservation bound along exact flows
    tau_eig      eigenvalue-gap threshold below which an element counts as
                 non-regular
    """

    tau_struct: float = 1e-10
    tau_rank: float = 1e-8
    h_fd: float = 1e-5
    tau_fd: float = 1e-6
    tau_cons: float = 1e-10
    tau_eig: float = 1e-8

    def __post_init__(self):
        for name in ("tau_struct", "tau_rank", "h_fd", "tau_fd", "tau_cons", "tau_eig"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if not self.tau_struct < self.tau_fd:
            raise ValueError("tau_struct must be smaller than tau_fd")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class GroupContext:
    """The ambient group SU(n) together with its derived integer dimensions."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("matrix size n must be at least 2")

    @property
    def dim_g(self) -> int:
        """Real dimension of su(n)."""
        return self.n * self.n - 1

    @property
    def rank(self) -> int:
        """Rank of su(n), the dimension of a maximal torus."""
        return self.n - 1

    @property
    def dim_phase(self) -> int:
        """Real dimension of the phase space SU(n) x su(n)."""
        return 2 * self.dim_g


def _require_square(mat, name="matrix"):
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ShapeError(f"{name} must be square, got shape {mat.shape}")
    return mat


def _require_same_size(X, Y):
    X = _require_square(X)
    Y = _require_square(Y)
    if X.shape != Y.shape:
        raise ShapeError(f"size mismatch: {X.shape} vs {Y.shape}")
    return X, Y


def inner(X, Y) -> float:
    """Invariant inner product ``-Re tr(XY)``.

    Symmetric, bilinear, Ad-invariant, and positive definite on su(n).
    """
    X, Y = _require_same_size(X, Y)
    return float(-np.trace(X @ Y).real)


def norm(X) -> float:
    """Norm induced by :func:`inner`; equals the Frobenius norm on su(n)."""
    return float(np.linalg.norm(X))


def lie_bracket(X, Y):
    """Matrix commutator ``XY - YX``."""
    X, Y = _require_same_size(X, Y)
    return X @ Y - Y @ X


def project_algebra(M):
    """Orthogonal projection of an arbitrary complex matrix onto su(n)."""
    M = _require_square(M)
    A = 0.5 * (M - M.conj().T)
    n = M.shape[0]
    return A - (np.trace(A) / n) * np.eye(n)


def check_algebra(X, tol: Tolerances = DEFAULT_TOL):
    """Raise :class:`StructureError` unless ``X`` is traceless anti-Hermitian."""
    X = _require_square(X)
    scale = max(1.0, float(np.linalg.norm(X)))
    if np.linalg.norm(X + X.conj().T) > tol.tau_struct * scale:
        raise StructureError("matrix is not anti-Hermitian")
    if abs(np.trace(X)) > tol.tau_struct * scale:
        raise StructureError("matrix is not traceless")
    return X


def check_group(g, tol: Tolerances = DEFAULT_TOL):
    """Raise :class:`StructureError` unless ``g`` is special unitary."""
    g = _require_square(g)
    n = g.shape[0]
    if np.linalg.norm(g.conj().T @ g - np.eye(n)) > tol.tau_struct:
        raise StructureError("matrix is not unitary")
    if abs(np.linalg.det(g) - 1.0) > tol.tau_struct:
        raise StructureError("matrix does not have unit determinant")
    return g


def group_exp(X, tol: Tolerances = DEFAULT_TOL):
    """Exponential su(n) -> SU(n) through the eigendecomposition of ``iX``.

    ``iX`` is Hermitian for anti-Hermitian input, so the eigendecomposition
    is exact up to roundoff; the result is then snapped back to the nearest
    unitary by polar projection so that invariants do not drift along long
    flows.
    """
    X = check_algebra(X, tol)
    w, V = np.linalg.eigh(1j * X)
    U = (V * np.exp(-1j * w)) @ V.conj().T
    # polar projection onto the unitary group
    u, _, vh = np.linalg.svd(U)
    return u @ vh


def adjoint(eta, X):
    """Conjugation action ``eta X eta^{-1}`` of a unitary on the algebra."""
    eta, X = _require_same_size(eta, X)
    return eta @ X @ eta.conj().T


@lru_cache(maxsize=None)
def _basis_tuple(n: int):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            S = np.zeros((n, n), dtype=complex)
            S[i, j] = 1.0 / np.sqrt(2.0)
            S[j, i] = -1.0 / np.sqrt(2.0)
            A = np.zeros((n, n), dtype=complex)
            A[i, j] = 1j / np.sqrt(2.0)
            A[j, i] = 1j / np.sqrt(2.0)
            out.append(S)
            out.append(A)
    for k in range(1, n):
        d = np.zeros(n)
        d[:k] = 1.0
        d[k] = -float(k)
        d /= np.sqrt(k * (k + 1.0))
        out.append(1j * np.diag(d).astype(complex))
    for mat in out:
        mat.flags.writeable = False
    return tuple(out)


def orthonormal_basis(ctx: GroupContext):
    """Orthonormal basis of su(n) with respect to :func:`inner`.

    The first ``n(n-1)`` elements are off-diagonal pairs, the last ``n-1``
    are diagonal. Arrays are cached and marked read-only.
    """
    return _basis_tuple(ctx.n)


def basis_coordinates(ctx: GroupContext, X):
    """Coordinates of an algebra element on :func:`orthonormal_basis`."""
    return np.array([inner(e, X) for e in orthonormal_basis(ctx)])


def from_coordinates(ctx: GroupContext, coef):
    """Inverse of :func:`basis_coordinates`."""
    basis = orthonormal_basis(ctx)
    out = np.zeros((ctx.n, ctx.n), dtype=complex)
    for c, e in zip(coef, basis):
        out = out + c * e
    return out


def random_algebra(ctx: GroupContext, seed):
    """Random su(n) element with standard-normal basis coefficients.

    ``seed`` may be an integer or a ``numpy.random.Generator``; the draw is
    bit-reproducible for a fixed integer seed.
    """
    rng = np.random.default_rng(seed)
    coef = rng.standard_normal(ctx.dim_g)
    return from_coordinates(ctx, coef)


def random_group(ctx: GroupContext, seed):
    """Random SU(n) element, the exponential of :func:`random_algebra`."""
    return group_exp(random_algebra(ctx, seed))


def numerical_rank(M, tau_rank: float):
    """Rank of ``M`` counted as singular values above ``tau_rank * sigma_max``.

    Returns ``(rank, singular_values)``; the singular values are kept so that
    callers can attach them to reports.
    """
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0, np.zeros(0)
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0, s
    return int(np.sum(s > tau_rank * s[0])), s


def _ad_matrix(ctx: GroupContext, J):
    """Matrix of ``Y -> [J, Y]`` on the orthonormal basis of su(n)."""
    basis = orthonormal_basis(ctx)
    cols = [basis_coordinates(ctx, lie_bracket(J, e)) for e in basis]
    return np.column_stack(cols)


def centralizer_dim_algebra(J, tol: Tolerances = DEFAULT_TOL) -> int:
    """Dimension of the kernel of ``ad_J`` on su(n).

    Equals ``n - 1`` exactly when ``J`` is regular.
    """
    J = _require_square(J)
    ctx = GroupContext(J.shape[0])
    M = _ad_matrix(ctx, J)
    rank, _ = numerical_rank(M, tol.tau_rank)
    return ctx.dim_g - rank


def centralizer_basis(J, tol: Tolerances = DEFAULT_TOL):
    """Orthonormal basis of the kernel of ``ad_J`` on su(n)."""
    J = _require_square(J)
    ctx = GroupContext(J.shape[0])
    M = _ad_matrix(ctx, J)
    _, s, vh = np.linalg.svd(M)
    if s[0] > 0.0:
        keep = s <= tol.tau_rank * s[0]
    else:
        keep = np.ones(s.size, dtype=bool)
    return [from_coordinates(ctx, row) for row in vh[keep]]


def joint_centralizer_dim(algebra_items=(), group_items=(), tol: Tolerances = DEFAULT_TOL) -> int:
    """Dimension of ``{Y in su(n) : [Y, J_i] = 0 and Y g_j = g_j Y for all items}``.

    Algebra and group constraints are stacked into one linear map on su(n)
    whose kernel dimension is read off a rank-revealing SVD. A value of zero
    certifies, at the Lie-algebra level, that the joint stabilizer is
    discrete.
    """
    algebra_items = [_require_square(J) for J in algebra_items]
    group_items = [_require_square(g) for g in group_items]
    items = algebra_items + group_items
    if not items:
        raise ValueError("at least one constraint matrix is required")
    n = items[0].shape[0]
    for m in items:
        if m.shape != (n, n):
            raise ShapeError("all constraint matrices must share one size")
    ctx = GroupContext(n)
    basis = orthonormal_basis(ctx)
    blocks = []
    for J in algebra_items:
        blocks.append(np.column_stack([basis_coordinates(ctx, lie_bracket(e, J)) for e in basis]))
    for g in group_items:
        rows = []
        for e in basis:
            D = e @ g - g @ e
            rows.append(np.concatenate([D.real.ravel(), D.imag.ravel()]))
        blocks.append(np.column_stack(rows))
    stacked = np.vstack(blocks)
    rank, _ = numerical_rank(stacked, tol.tau_rank)
    return ctx.dim_g - rank


def is_regular(J, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Whether all eigenvalue gaps of the Hermitian matrix ``iJ`` exceed ``tau_eig``."""
    J = _require_square(J)
    w = np.linalg.eigvalsh(1j * J)
    gaps = np.diff(np.sort(w))
    if gaps.size == 0:
        return True
    return bool(np.min(gaps) > tol.tau_eig)
