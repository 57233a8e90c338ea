"""Tests for the stratification and the quotient rank certificates."""

import numpy as np
import pytest

from redint.apposition import build_frame, random_partner_algebra, random_torus_group, solve_moment_equation
from redint.free_motion import DoublePoint, casimir_value, constants_map, pullback
from redint.groups import (
    DEFAULT_TOL,
    GroupContext,
    StructureError,
    adjoint,
    basis_coordinates,
    inner,
    joint_centralizer_dim,
    random_algebra,
    random_group,
)
from redint.phase import PhasePoint, act, fd_directional, moment_map, random_phase_point
from redint.reduction import (
    centrality_defect,
    classify,
    constants_differential_matrix,
    double_orbit_dim,
    gauge_directions,
    hamiltonian_directions,
    hamiltonian_span_inside_constants,
    invariant_span_double,
    leaf_codim,
    moment_casimir_row,
    pullback_differential_row,
    quotient_rank,
    reduced_constants_span,
    reduced_hamiltonian_span,
    span_plateau,
    tangent_coordinates,
    word_generators,
)
from redint.su2 import EXCEPTIONAL_Q, SliceCoords, slice_point
from redint.words import evaluate, observable, word

CTX2 = GroupContext(2)
CTX3 = GroupContext(3)
TOL = DEFAULT_TOL


def test_classify_apposition_pair_is_principal():
    frame = build_frame(2)
    g = random_torus_group(frame, 101)
    zeta = random_partner_algebra(frame, 102)
    J = solve_moment_equation(g, zeta)
    flags = classify(PhasePoint(g, J))
    assert flags.principal


def test_classify_exceptional_slice_point():
    x = slice_point(SliceCoords(EXCEPTIONAL_Q, 0.0, 1.0))
    flags = classify(x)
    assert flags.principal
    assert not flags.image_principal


@pytest.mark.parametrize("ctx", [CTX2, CTX3])
def test_classify_full_measure_stratum(ctx):
    rng = np.random.default_rng(37)
    flags = [classify(random_phase_point(ctx, rng)) for _ in range(500)]
    assert all(f.image_principal for f in flags)
    assert all(f.principal for f in flags)
    assert all(f.regular_momentum for f in flags)


def test_classify_is_gauge_invariant():
    rng = np.random.default_rng(39)
    for ctx in (CTX2, CTX3):
        x = random_phase_point(ctx, rng)
        f0 = classify(x)
        for _ in range(3):
            f1 = classify(act(random_group(ctx, rng), x))
            assert f0 == f1


def test_gauge_directions_edge_cases():
    x = PhasePoint(np.eye(2, dtype=complex), np.zeros((2, 2), dtype=complex))
    assert all(
        np.linalg.norm(v.a) < 1e-14 and np.linalg.norm(v.b) < 1e-14
        for v in gauge_directions(x)
    )
    rng = np.random.default_rng(41)
    central = np.exp(2j * np.pi / 3) * np.eye(3)
    y = PhasePoint(central, random_algebra(CTX3, rng))
    assert all(np.linalg.norm(v.a) < 1e-12 for v in gauge_directions(y))


def test_gauge_directions_have_full_rank_on_principal_points():
    rng = np.random.default_rng(43)
    for ctx in (CTX2, CTX3):
        x = random_phase_point(ctx, rng)
        W = np.vstack([tangent_coordinates(ctx, v) for v in gauge_directions(x)])
        assert np.linalg.matrix_rank(W, tol=1e-8) == ctx.dim_g


def test_hamiltonian_directions():
    diag = PhasePoint(np.eye(2, dtype=complex), np.diag([1j, -1j]))
    dirs = hamiltonian_directions(diag)
    assert len(dirs) == 1
    assert np.linalg.norm(dirs[0].a - np.diag(np.diag(dirs[0].a))) < 1e-12
    assert np.linalg.norm(dirs[0].b) == 0.0
    with pytest.raises(StructureError):
        hamiltonian_directions(PhasePoint(np.eye(2, dtype=complex), np.zeros((2, 2))))


def test_hamiltonian_directions_are_ad_covariant_as_subspaces():
    rng = np.random.default_rng(47)
    x = random_phase_point(CTX3, rng)
    eta = random_group(CTX3, rng)
    moved = [tangent_coordinates(CTX3, v) for v in hamiltonian_directions(act(eta, x))]
    conj = []
    for v in hamiltonian_directions(x):
        conj.append(
            tangent_coordinates(
                CTX3,
                type(v)(adjoint(eta, v.a), adjoint(eta, v.b)),
            )
        )
    Q1, _ = np.linalg.qr(np.array(moved).T)
    Q2, _ = np.linalg.qr(np.array(conj).T)
    overlap = np.linalg.svd(Q1.T @ Q2, compute_uv=False)
    assert overlap.min() > 1.0 - 1e-8


@pytest.mark.parametrize("ctx", [CTX2, CTX3])
def test_reduced_hamiltonian_span_generic(ctx):
    rng = np.random.default_rng(49)
    for _ in range(20):
        x = random_phase_point(ctx, rng)
        assert reduced_hamiltonian_span(x) == ctx.rank


def test_reduced_hamiltonian_span_drops_at_exceptional_point():
    x = slice_point(SliceCoords(EXCEPTIONAL_Q, 0.0, 1.0))
    assert reduced_hamiltonian_span(x) == 0
    # span deficit is accounted for by the stabilizer of the image pair
    z = constants_map(x)
    deficit = CTX2.rank - 0
    assert deficit <= joint_centralizer_dim([z.X, z.Y], [])


def test_word_generators_contract():
    gens1 = word_generators(1)
    assert len(gens1) == 4  # Re/Im tr X, Re/Im tr Y before any pruning
    gens2 = word_generators(2)
    letters = {g.words[0].letters for g in gens2}
    assert ("X", "Y") in letters or ("Y", "X") in letters
    assert word_generators(3) == word_generators(3)
    with pytest.raises(ValueError):
        word_generators(0)


def test_word_generators_values_are_conjugation_invariant():
    rng = np.random.default_rng(53)
    z = DoublePoint(random_algebra(CTX3, rng), random_algebra(CTX3, rng))
    eta = random_group(CTX3, rng)
    moved = DoublePoint(adjoint(eta, z.X), adjoint(eta, z.Y))
    for gen in word_generators(4):
        env0 = {"X": z.X, "Y": z.Y}
        env1 = {"X": moved.X, "Y": moved.Y}
        assert evaluate(gen, env1) == pytest.approx(evaluate(gen, env0), abs=1e-10)


@pytest.mark.parametrize("ctx,max_len", [(CTX2, 4), (CTX3, 6)])
def test_reduced_constants_span_plateau(ctx, max_len):
    rng = np.random.default_rng(59)
    target = ctx.dim_g - ctx.rank
    for _ in range(5):
        x = random_phase_point(ctx, rng)
        sweep = span_plateau(x, max_len)
        assert sweep[-1] == target
        assert all(b >= a for a, b in zip(sweep, sweep[1:]))


def test_pullback_differential_row_matches_finite_differences():
    rng = np.random.default_rng(61)
    from redint.free_motion import chart_directions, constants_map
    from redint.free_motion import evaluate_double

    x = random_phase_point(CTX2, rng)
    gens = word_generators(3)
    for gen in gens[:6]:
        row = pullback_differential_row(x, gen)
        for col, (a, b) in enumerate(chart_directions(CTX2)):
            fd = fd_directional(
                lambda y: evaluate_double(gen, constants_map(y)), x, a, b, TOL.h_fd
            )
            assert abs(fd - row[col]) < 1e-6


@pytest.mark.parametrize("ctx", [CTX2, CTX3])
def test_centrality_of_casimirs(ctx):
    rng = np.random.default_rng(67)
    gens = word_generators(4)
    worst = 0.0
    for _ in range(10):
        x = random_phase_point(ctx, rng)
        for k in range(2, ctx.n + 1):
            for gen in gens:
                worst = max(worst, centrality_defect(x, k, gen))
    assert worst < 1e-8


def test_centrality_with_second_slot_words_is_machine_precision():
    rng = np.random.default_rng(71)
    x = random_phase_point(CTX2, rng)
    gen = observable(word(("Y", "Y")))
    assert centrality_defect(x, 2, gen) < 1e-12


@pytest.mark.parametrize("ctx", [CTX2, CTX3])
def test_leaf_codim(ctx):
    rng = np.random.default_rng(73)
    for _ in range(10):
        x = random_phase_point(ctx, rng)
        flags = classify(x)
        if flags.principal and flags.regular_moment:
            assert leaf_codim(x) == ctx.rank


def test_leaf_codim_vanishes_at_zero_moment():
    rng = np.random.default_rng(79)
    J = random_algebra(CTX2, rng)
    x = PhasePoint(np.eye(2, dtype=complex), J)  # moment value is zero here
    assert np.linalg.norm(moment_map(x)) < 1e-14
    assert leaf_codim(x) == 0


def test_moment_casimir_row_matches_finite_differences():
    rng = np.random.default_rng(83)
    from redint.free_motion import chart_directions

    x = random_phase_point(CTX3, rng)
    for k in (2, 3):
        row = moment_casimir_row(x, k)
        for col, (a, b) in enumerate(chart_directions(CTX3)):
            fd = fd_directional(
                lambda y: casimir_value(k, moment_map(y)), x, a, b, TOL.h_fd
            )
            assert abs(fd - row[col]) < 1e-5


@pytest.mark.parametrize("ctx,max_len", [(CTX2, 4), (CTX3, 6)])
def test_invariant_span_double_generic(ctx, max_len):
    rng = np.random.default_rng(89)
    gens = word_generators(max_len)
    for _ in range(5):
        z = DoublePoint(random_algebra(ctx, rng), random_algebra(ctx, rng))
        assert invariant_span_double(z, gens) == 2 * ctx.dim_g - double_orbit_dim(z)


def test_invariant_span_double_at_diagonal_pair():
    # Off the principal stratum the orbit-codimension count no longer applies:
    # every invariant factors through the three pairings <X,X>, <X,Y>, <Y,Y>,
    # whose differentials at (X, X) span only a two-dimensional space. The
    # computed rank certifies this with a wide singular-value gap.
    rng = np.random.default_rng(97)
    X = random_algebra(CTX2, rng)
    z = DoublePoint(X, X)
    gens = word_generators(4)
    assert double_orbit_dim(z) == 2
    assert invariant_span_double(z, gens) == 2
    from redint.reduction import double_differential_matrix

    s = np.linalg.svd(double_differential_matrix(z, gens), compute_uv=False)
    assert s[1] / s[0] > 1e-3 and s[2] / s[0] < 1e-12


def test_invariant_span_double_at_origin():
    z = DoublePoint(np.zeros((2, 2), dtype=complex), np.zeros((2, 2), dtype=complex))
    gens = [g for g in word_generators(4) if len(g.words[0].letters) >= 2]
    assert invariant_span_double(z, gens) == 0


@pytest.mark.parametrize("ctx,max_len", [(CTX2, 4), (CTX3, 6)])
def test_hamiltonian_differentials_lie_in_constants_span(ctx, max_len):
    rng = np.random.default_rng(101)
    gens = word_generators(max_len)
    for _ in range(5):
        x = random_phase_point(ctx, rng)
        assert hamiltonian_span_inside_constants(x, gens)


@pytest.mark.parametrize("ctx", [CTX2, CTX3])
def test_momentum_casimir_span_and_linear_pullback_span(ctx):
    # the commuting Hamiltonians span rank(G) directions; pullbacks of the
    # full coordinate functionals on the double span dim(phase) - rank(G)
    rng = np.random.default_rng(103)
    x = random_phase_point(ctx, rng)

    from redint.free_motion import casimir_gradient

    rows = []
    for k in range(2, ctx.n + 1):
        rows.append(
            np.concatenate(
                [np.zeros(ctx.dim_g), basis_coordinates(ctx, casimir_gradient(k, x.J))]
            )
        )
    assert np.linalg.matrix_rank(np.vstack(rows), tol=1e-10) == ctx.rank

    from redint.groups import orthonormal_basis

    functionals = []
    for e in orthonormal_basis(ctx):
        functionals.append(observable(word((e, "X"), coeff=-1.0)))
        functionals.append(observable(word((e, "Y"), coeff=-1.0)))
    D = constants_differential_matrix(x, functionals)
    assert np.linalg.matrix_rank(D, tol=1e-10) == ctx.dim_phase - ctx.rank


def test_quotient_rank_against_plain_rank_for_invariant_rows():
    # invariant differentials land in the gauge-orthogonal complement, so the
    # subtraction never changes the answer on probe points
    rng = np.random.default_rng(107)
    x = random_phase_point(CTX2, rng)
    gens = word_generators(3)
    D = constants_differential_matrix(x, gens)
    plain = np.linalg.matrix_rank(D, tol=1e-8)
    assert reduced_constants_span(x, gens) == plain
