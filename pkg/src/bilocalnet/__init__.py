"""Exact simulation and analysis of nonlocality sharing in a two-source network.

Two entangled pairs, a central Bell-state measurement, and two sequential
observers per outer wing: the package builds the exact joint outcome
distribution, evaluates the two-source network inequality for every
observer triple, optimizes measurement settings, and quantifies how much
source noise the simultaneous violations tolerate.
"""

from .analysis import (
    ActiveSolution,
    ConstraintInfeasibleError,
    MixedSearchResult,
    NoiseAnalysis,
    OptimizationResult,
    SweepPoint,
    VerifyReport,
    active_sweep,
    active_violation_window,
    closed_form_active,
    closed_form_passive,
    double_violation_window,
    equal_g_search,
    mixed_pointer_search,
    noise_sweep,
    optimize_angles,
    passive_sweep,
    quadruple_violation_window,
    verify_closed_forms,
)
from .brgp import BrgpResult, brgp_quantities, correlator, evaluate_all, evaluate_pair
from .measurement import (
    ALICE,
    CHARLIE,
    Observable,
    PointerSpec,
    bsm_reduce,
    observable_matrix,
    pointer_factors,
    projector,
    strong_instrument,
    weak_instrument,
)
from .network import (
    JointTable,
    ScenarioConfig,
    TripartiteDistribution,
    build_initial,
    joint_table,
    marginal_tripartite,
)
from .qcore import (
    DEFAULT_TOL,
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    DensityReport,
    bell_state,
    kron,
    partial_trace,
    validate_density,
    werner_state,
)

__version__ = "0.1.0"
