"""Integrable two-dimensional geodesic flows with a cubic first integral.

Catalog of explicit (H, Q) model families, numerical integrability
verification through Poisson brackets, parameter-regime classification,
and symplectic trajectory integration.
"""

from .bracket import (Observable, PhaseState, hamiltonian_vector_field,
                      poisson_bracket, poisson_bracket_oracle, scaled_bracket)
from .classify import (Classification, classify_general, classify_p0,
                       classify_q0, positivity_interval, solve_zeta0)
from .duals import DualScalar
from .elliptic import JacobiTriple, complete_elliptic_k, jacobi
from .models import (BuildError, Family, Model, ModelSpec, build, catalog,
                     lie_generators, preset, preset_names, residual_lemma1,
                     sample_spec)
from .polynomials import (CubicPoly, QuarticPoly, RootSet, check_g_prime_identity,
                          companion_g, cubic_real_roots, discriminant_q0)
from .simulate import (BoundaryError, DriftReport, StepError, Trajectory,
                       drift_report, run, step)

__version__ = "0.1.0"

__all__ = [
    "BoundaryError", "BuildError", "Classification", "CubicPoly", "DriftReport",
    "DualScalar", "Family", "JacobiTriple", "Model", "ModelSpec", "Observable",
    "PhaseState", "QuarticPoly", "RootSet", "StepError", "Trajectory", "build",
    "catalog", "check_g_prime_identity", "classify_general", "classify_p0",
    "classify_q0", "companion_g", "complete_elliptic_k", "cubic_real_roots",
    "discriminant_q0", "drift_report", "hamiltonian_vector_field", "jacobi",
    "lie_generators", "poisson_bracket", "poisson_bracket_oracle",
    "positivity_interval", "preset", "preset_names", "residual_lemma1", "run",
    "sample_spec", "scaled_bracket", "solve_zeta0", "step",
]
