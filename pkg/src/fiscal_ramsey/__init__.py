"""Monetary-fiscal interaction in a frictionless endowment economy.

Steady state and linearized transmission mechanism, determinacy regimes of
ad-hoc feedback rules, and Ramsey-optimal policy under quasi-commitment.
"""

from .model_core import (
    InvalidParameterError,
    LinearSystem,
    ModelParams,
    SteadyState,
    Variant,
    build_linear_system,
    compute_steady_state,
)
from .policy_rules import (
    AdHocRule,
    Regime,
    RegimeClass,
    RegimeGrid,
    classify_regime,
    closed_loop_eigenvalues,
    regime_grid,
)
from .ramsey_lqr import (
    AnchorViolationError,
    CrossCheckError,
    DareResult,
    NoConvergenceError,
    PolicyPreferences,
    RamseySolution,
    dare_value_iteration,
    loss_value,
    persistence_sweep,
    ramsey_solution,
    solve_debt_block,
    solve_inflation_block,
)
from .simulation import (
    Path,
    ShockSequence,
    UnsupportedRegimeError,
    draw_shocks,
    simulate_adhoc,
    simulate_ramsey,
)

__version__ = "0.1.0"
