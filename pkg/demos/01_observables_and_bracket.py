"""Trace-word observables and the canonical Poisson bracket.

Builds a few observables on the phase space SU(3) x su(3), checks their
exact gradients against finite differences, and samples the bracket axioms.
"""

import numpy as np

from redint import GroupContext, random_phase_point
from redint.phase import (
    fd_fiber_gradient,
    fd_left_gradient,
    fiber_gradient,
    left_gradient,
    poisson_bracket,
)
from redint.words import format_observable, observable, parse_observable, word

ctx = GroupContext(3)
x = random_phase_point(ctx, seed=0)

print("== observables ==")
kinetic = observable(word(("J", "J"), coeff=-0.5))
holonomy = observable(word(("G",)), word(("G", "J"), part="im", coeff=0.25))
print("kinetic  :", format_observable(kinetic))
print("holonomy :", format_observable(holonomy))
print("round trip parse ok:", parse_observable(format_observable(holonomy)) == holonomy)

print("\n== exact gradients vs finite differences ==")
for name, F in (("kinetic", kinetic), ("holonomy", holonomy)):
    dl = np.linalg.norm(left_gradient(F, x) - fd_left_gradient(F, x, 1e-5))
    df = np.linalg.norm(fiber_gradient(F, x) - fd_fiber_gradient(F, x, 1e-5))
    print(f"{name:9s} left-gradient defect {dl:.2e}, fiber-gradient defect {df:.2e}")

print("\n== bracket values ==")
print("{kinetic, holonomy}(x) =", poisson_bracket(kinetic, holonomy, x))
print("antisymmetry defect    =", abs(
    poisson_bracket(kinetic, holonomy, x) + poisson_bracket(holonomy, kinetic, x)
))

print("\n== the harness check wraps this up with Leibniz and Jacobi ==")
from redint.harness import ExperimentConfig, run_check

report = run_check("bracket-axioms", ExperimentConfig(n=3, seed=0, samples=25))
for key, value in report.observed.items():
    print(f"{key:32s} {value:.3e}")
print("passed:", report.passed)
