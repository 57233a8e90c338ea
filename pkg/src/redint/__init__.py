"""Numerical verification laboratory for free motion on the cotangent bundle
of SU(n) and its conjugation quotient.

The package certifies, by finite-dimensional linear algebra at sampled
points, the conservation laws, rank counts, and span dimensions that make
the free system degenerately integrable and keep that structure across the
quotient by simultaneous conjugation, including the explicit SU(2) reduction
to the two-particle trigonometric Sutherland model.
"""

from .groups import (
    DEFAULT_TOL,
    GroupContext,
    ShapeError,
    StructureError,
    Tolerances,
    adjoint,
    centralizer_basis,
    centralizer_dim_algebra,
    check_algebra,
    check_group,
    group_exp,
    inner,
    is_regular,
    joint_centralizer_dim,
    lie_bracket,
    norm,
    numerical_rank,
    orthonormal_basis,
    project_algebra,
    random_algebra,
    random_group,
)
from .words import (
    Observable,
    TraceWord,
    evaluate as evaluate_words,
    format_observable,
    parse_observable,
)
from .phase import (
    PhasePoint,
    act,
    evaluate,
    fiber_gradient,
    left_gradient,
    moment_map,
    moment_observable,
    moment_generates_defect,
    poisson_bracket,
    random_phase_point,
    right_gradient,
)
from .free_motion import (
    DoublePoint,
    InvariantHamiltonian,
    casimir,
    casimir_gradient,
    casimir_value,
    constants_map,
    constants_map_rank,
    free_flow,
    lie_poisson_double_bracket,
    poisson_map_defect,
    pullback,
)
from .reduction import (
    StratumFlags,
    TangentVector,
    classify,
    gauge_directions,
    hamiltonian_directions,
    invariant_span_double,
    leaf_codim,
    reduced_constants_span,
    reduced_hamiltonian_span,
    word_generators,
)
from .apposition import AppositionFrame, MomentSolveError, build_frame, cyclic_shift, solve_moment_equation
from .su2 import (
    GaugeError,
    SliceCoords,
    exceptional_point_audit,
    reduced_dynamics_match,
    regauge_to_slice,
    slice_point,
    sutherland_energy,
)
from .harness import ExperimentConfig, ExperimentReport, run_all, run_check

__version__ = "0.1.0"
