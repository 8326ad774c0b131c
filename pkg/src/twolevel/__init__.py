"""Eigenvalues, biorthogonal eigenvectors and exceptional points of a
symmetric non-Hermitian two-level Hamiltonian."""

__version__ = "0.1.0"

from .core import (
    A_CAP,
    EP_TOL,
    DegenerateDecoupled,
    EigenSolution,
    NotNormalized,
    TwoLevelHamiltonian,
    ZeroVector,
    biorthogonal_normalize,
    cross_overlap,
    eigenvalues,
    mixing_coefficients,
    phase_rigidity,
    raw_eigenvector,
    solve,
)
from .diagnostics import (
    DiagnosticsRecord,
    SourceTermMatrix,
    ep_phase_alignment,
    nonlinear_magnitude,
    residual,
    source_term_matrix,
)
from .ep import (
    AtEp,
    EmptyBracket,
    EpReport,
    RegimeLabel,
    analytic_ep_conditions,
    find_ep_numeric,
    locate_eps,
    regime_classify,
    z_magnitude,
)
from .scenario import SweepScenario, UnknownPreset, preset
from .sweep import SweepRecord, evaluate_point, run_sweep, track_branches
