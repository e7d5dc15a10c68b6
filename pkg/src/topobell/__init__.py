"""Entangled two-quanton Mach-Zehnder simulation with topological phases.

Simulates joint detection statistics of spatially correlated quanton
pairs in retarder-equipped interferometers, with spin-conditioned
(dipole), spin-independent (flux) and per-arm topological phases, and
analyzes the resulting Bell-CHSH correlation including its analytically
and numerically maximized values.
"""

from .chsh import (
    BellAngles,
    RoleAssignment,
    TSIRELSON_BOUND,
    analytic_max_S,
    analytic_optimal_angles,
    canonical_angles,
    chsh_S,
    contrast,
    expectation_closed_form,
    expectation_from_distribution,
    fixed_angle_curve_S,
)
from .entangled import (
    DetectionDistribution,
    PhaseMode,
    Scenario,
    SpinBranch,
    TopoPhaseSpec,
    TwoQuantonState,
    run_scenario,
    run_scenario_a,
    run_scenario_ab,
    run_scenario_b,
    run_scenario_c,
    singlet_source,
)
from .optics import (
    NonUnitaryError,
    beam_splitter,
    custom_beam_splitter,
    mach_zehnder,
    path_phase_operator,
    phase_retarder,
    polarizing_splitter_candidate,
    spin_eigenstates,
    spin_loop_phase,
)
from .oracle import (
    BudgetExceededError,
    GridSpec,
    SearchResult,
    StationarityOutcome,
    brute_force_distribution,
    grid_search_max_S,
    stationarity_check,
)

__version__ = "0.1.0"

__all__ = [
    "BellAngles",
    "BudgetExceededError",
    "DetectionDistribution",
    "GridSpec",
    "NonUnitaryError",
    "PhaseMode",
    "RoleAssignment",
    "Scenario",
    "SearchResult",
    "SpinBranch",
    "StationarityOutcome",
    "TSIRELSON_BOUND",
    "TopoPhaseSpec",
    "TwoQuantonState",
    "analytic_max_S",
    "analytic_optimal_angles",
    "beam_splitter",
    "brute_force_distribution",
    "canonical_angles",
    "chsh_S",
    "contrast",
    "custom_beam_splitter",
    "expectation_closed_form",
    "expectation_from_distribution",
    "fixed_angle_curve_S",
    "grid_search_max_S",
    "mach_zehnder",
    "path_phase_operator",
    "phase_retarder",
    "polarizing_splitter_candidate",
    "run_scenario",
    "run_scenario_a",
    "run_scenario_ab",
    "run_scenario_b",
    "run_scenario_c",
    "singlet_source",
    "spin_eigenstates",
    "spin_loop_phase",
    "stationarity_check",
]
