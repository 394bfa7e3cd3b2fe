"""Trajectories of (inflation, debt, interest rate, surplus) deviations.

Paths are generated in level deviations and, for the log-linear variant,
rescaled to relative deviations afterwards: ``pi/pi*``, ``b/b*``,
``R/R*`` and ``s/s*``. Residuals are then recomputed with the matrices of
the requested variant, so each path is checked against its own equations.

Timing: row ``t`` holds ``pi_t``, ``b_t``, ``R_t`` and ``s_t``. The budget
row reads ``b_t = a_b b_{t-1} + b_bs s_t`` for ``t >= 1``; at ``t = 0``
the period-0 surplus moves debt away from the initial condition,
``b_0 = b0 + b_bs s_0``. The Fisher residual is
``E_t pi_{t+1} - a_pi pi_t - b_piR R_t``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .model_core import (
    InvalidParameterError,
    LinearSystem,
    ModelParams,
    Variant,
    build_linear_system,
    compute_steady_state,
)
from .policy_rules import AdHocRule, Regime, classify_regime
from .ramsey_lqr import RamseySolution

log = logging.getLogger(__name__)

PATH_COLUMNS = ("t", "pi_dev", "b_dev", "R_dev", "s_dev", "fisher_residual", "budget_residual")


class UnsupportedRegimeError(RuntimeError):
    def __init__(self, regime: Regime, message: str):
        super().__init__(message)
        self.regime = regime


@dataclass(frozen=True)
class ShockSequence:
    horizon: int
    eps_R: np.ndarray
    eps_s: np.ndarray

    def __post_init__(self) -> None:
        n = self.horizon + 1
        if len(self.eps_R) != n or len(self.eps_s) != n:
            raise InvalidParameterError(
                f"shock sequences must have length horizon + 1 = {n}, "
                f"got {len(self.eps_R)} and {len(self.eps_s)}"
            )

    @classmethod
    def zeros(cls, horizon: int) -> "ShockSequence":
        return cls(horizon, np.zeros(horizon + 1), np.zeros(horizon + 1))

    @classmethod
    def impulse(cls, horizon: int, eps_R0: float = 0.0, eps_s0: float = 0.0) -> "ShockSequence":
        eps_R = np.zeros(horizon + 1)
        eps_s = np.zeros(horizon + 1)
        eps_R[0] = eps_R0
        eps_s[0] = eps_s0
        return cls(horizon, eps_R, eps_s)


@dataclass(frozen=True)
class Path:
    """Simulated deviations, one row per period ``t = 0..horizon``."""

    variant: Variant
    horizon: int
    pi_dev: np.ndarray
    b_dev: np.ndarray
    R_dev: np.ndarray
    s_dev: np.ndarray
    fisher_residual: np.ndarray
    budget_residual: np.ndarray
    warnings: tuple[str, ...] = ()

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.horizon + 1)

    def rows(self):
        for i in range(self.horizon + 1):
            yield (i, float(self.pi_dev[i]), float(self.b_dev[i]), float(self.R_dev[i]),
                   float(self.s_dev[i]), float(self.fisher_residual[i]),
                   float(self.budget_residual[i]))

    def max_residual(self) -> float:
        return float(max(np.max(np.abs(self.fisher_residual)), np.max(np.abs(self.budget_residual))))


def _check_horizon(horizon) -> int:
    if int(horizon) != horizon or horizon < 1:
        raise InvalidParameterError(f"horizon must be an integer >= 1, got {horizon!r}")
    return int(horizon)


def _assemble(
    params: ModelParams,
    variant: Variant,
    b0: float,
    pi: np.ndarray,
    b: np.ndarray,
    R: np.ndarray,
    s: np.ndarray,
    exp_pi_next: np.ndarray,
    warnings: tuple[str, ...] = (),
) -> Path:
    sys_: LinearSystem = build_linear_system(params, variant)
    if variant is Variant.LOG_LINEAR:
        ss = compute_steady_state(params)
        pi, exp_pi_next = pi / params.pi_star, exp_pi_next / params.pi_star
        b, b0 = b / params.b_star, b0 / params.b_star
        R = R / ss.R_star
        s = s / ss.s_star
    fisher = exp_pi_next - sys_.a_pi * pi - sys_.b_piR * R
    budget = np.empty_like(b)
    budget[0] = b[0] - (b0 + sys_.b_bs * s[0])
    budget[1:] = b[1:] - (sys_.a_b * b[:-1] + sys_.b_bs * s[1:])
    return Path(variant, len(b) - 1, pi, b, R, s, fisher, budget, warnings)


def simulate_ramsey(
    solution: RamseySolution,
    params: ModelParams,
    b0_dev: float,
    horizon: int,
    variant: Variant | str = Variant.LINEAR,
) -> Path:
    """Path under the Ramsey policy: pegged rate, inflation at target, debt
    decaying geometrically at the optimal persistence.

    The surplus column is whatever makes the budget constraint hold each
    period, ``s_t = b_{t-1}/beta - b_t``.
    """
    horizon = _check_horizon(horizon)
    variant = Variant.parse(variant)
    n = horizon + 1
    lam = solution.lambda_b_opt
    b = b0_dev * lam ** np.arange(n, dtype=float)
    s = np.zeros(n)
    s[1:] = b[:-1] / params.beta - b[1:]
    zeros = np.zeros(n)
    warnings = ()
    if solution.degenerate:
        warnings = ("degenerate Ramsey solution (q_b = 0): debt follows a unit root",)
        log.warning(warnings[0])
    return _assemble(params, variant, b0_dev, zeros.copy(), b, zeros.copy(), s, zeros.copy(), warnings)


def simulate_adhoc(
    params: ModelParams,
    rule: AdHocRule,
    shocks: ShockSequence,
    b0_dev: float,
    variant: Variant | str = Variant.LINEAR,
    tol: float = 1e-9,
) -> Path:
    """Path under ad-hoc rules in the active-money / passive-fiscal regime.

    Inflation is the forward (bounded) solution of the Fisher block,
    ``pi_t = -eps_R_t / (f_pi - rho_R / beta)``; debt follows
    ``b_t = (1/beta - g_b) b_{t-1} - eps_s_t``.

    Raises
    ------
    UnsupportedRegimeError
        For any regime other than ``ActiveMPassiveF``. In this decoupled
        linearization the fiscal-theory regime has no revaluation channel,
        so it admits no bounded path with predetermined debt.
    """
    variant = Variant.parse(variant)
    regime = classify_regime(params, rule, tol).label
    if regime is not Regime.ACTIVE_M_PASSIVE_F:
        raise UnsupportedRegimeError(
            regime, f"ad-hoc simulation needs the {Regime.ACTIVE_M_PASSIVE_F.value} regime, got {regime.value}"
        )
    beta, f_pi, rho = params.beta, rule.f_pi, rule.rho_R
    eps_R = np.asarray(shocks.eps_R, dtype=float)
    eps_s = np.asarray(shocks.eps_s, dtype=float)
    n = shocks.horizon + 1

    pi = -eps_R / (f_pi - rho / beta)
    R = f_pi * pi + eps_R
    # AR(1) shocks: E_t eps_{t+1} = rho eps_t
    exp_pi_next = rho * pi

    lam_b = 1.0 / beta - rule.g_b
    b = np.empty(n)
    s = np.empty(n)
    s[0] = eps_s[0]
    b[0] = b0_dev - s[0]
    for t in range(1, n):
        s[t] = rule.g_b * b[t - 1] + eps_s[t]
        b[t] = lam_b * b[t - 1] - eps_s[t]
    return _assemble(params, variant, b0_dev, pi, b, R, s, exp_pi_next)


def draw_shocks(
    sigma_R: float,
    sigma_s: float,
    rho_R: float = 0.0,
    rho_s: float = 0.0,
    horizon: int = 100,
    seed: int | None = 0,
) -> ShockSequence:
    """Seeded Gaussian shock draws.

    ``sigma_*`` is the unconditional standard deviation. With ``rho != 0``
    the sequence is a stationary AR(1): it starts from the stationary law and
    innovations are scaled by ``sigma * sqrt(1 - rho**2)``.
    """
    AdHocRule(0.0, 0.0, sigma_R, sigma_s, rho_R, rho_s)  # bounds check
    if int(horizon) != horizon or horizon < 0:
        raise InvalidParameterError(f"horizon must be an integer >= 0, got {horizon!r}")
    n = int(horizon) + 1
    z = np.random.default_rng(seed).standard_normal((2, n))
    return ShockSequence(int(horizon), _ar1(z[0], sigma_R, rho_R), _ar1(z[1], sigma_s, rho_s))


def _ar1(z: np.ndarray, sigma: float, rho: float) -> np.ndarray:
    if rho == 0.0:
        return sigma * z
    out = np.empty_like(z)
    out[0] = sigma * z[0]
    scale = sigma * np.sqrt(1.0 - rho * rho)
    for t in range(1, len(z)):
        out[t] = rho * out[t - 1] + scale * z[t]
    return out
