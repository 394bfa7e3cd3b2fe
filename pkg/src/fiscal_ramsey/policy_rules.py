"""Ad-hoc interest-rate and fiscal feedback rules and their determinacy regimes.

With the rules ``R_t - R* = f_pi (pi_t - pi*) + eps_R`` and
``s_t - s* = g_b (b_{t-1} - b*) + eps_s`` the closed-loop system stays
diagonal, so its eigenvalues are ``beta * f_pi`` (inflation, a jump
variable) and ``1/beta - g_b`` (debt, predetermined). A unique bounded
equilibrium needs exactly one of them outside the unit circle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model_core import InvalidParameterError, ModelParams

DEFAULT_TOL = 1e-9


class Regime(str, enum.Enum):
    ACTIVE_M_PASSIVE_F = "ActiveMPassiveF"
    PASSIVE_M_ACTIVE_F = "PassiveMActiveF"
    INDETERMINATE = "Indeterminate"
    EXPLOSIVE = "Explosive"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class AdHocRule:
    f_pi: float
    g_b: float
    sigma_R: float = 0.0
    sigma_s: float = 0.0
    rho_R: float = 0.0
    rho_s: float = 0.0

    def __post_init__(self) -> None:
        problems = []
        for name in ("f_pi", "g_b", "sigma_R", "sigma_s", "rho_R", "rho_s"):
            if not np.isfinite(getattr(self, name)):
                problems.append(f"{name} must be finite")
        if not problems:
            if self.sigma_R < 0:
                problems.append(f"sigma_R must be >= 0, got {self.sigma_R!r}")
            if self.sigma_s < 0:
                problems.append(f"sigma_s must be >= 0, got {self.sigma_s!r}")
            if not abs(self.rho_R) < 1:
                problems.append(f"rho_R must satisfy |rho_R| < 1, got {self.rho_R!r}")
            if not abs(self.rho_s) < 1:
                problems.append(f"rho_s must satisfy |rho_s| < 1, got {self.rho_s!r}")
        if problems:
            raise InvalidParameterError("; ".join(problems))


@dataclass(frozen=True)
class RegimeClass:
    label: Regime
    abs_lambda_pi: float
    abs_lambda_b: float


@dataclass(frozen=True)
class RegimeGrid:
    """Row-major classification of a rectangle of rule parameters.

    ``labels[i, j]`` belongs to ``(f_values[i], g_values[j])``.
    """

    f_values: np.ndarray
    g_values: np.ndarray
    labels: np.ndarray
    abs_lambda_pi: np.ndarray
    abs_lambda_b: np.ndarray

    def rows(self):
        for i, f in enumerate(self.f_values):
            for j, g in enumerate(self.g_values):
                yield (float(f), float(g), self.labels[i, j],
                       float(self.abs_lambda_pi[i, j]), float(self.abs_lambda_b[i, j]))


def closed_loop_eigenvalues(params: ModelParams, rule: AdHocRule) -> tuple[float, float]:
    return params.beta * rule.f_pi, 1.0 / params.beta - rule.g_b


def _label(abs_pi: float, abs_b: float, tol: float) -> Regime:
    if abs(abs_pi - 1.0) <= tol or abs(abs_b - 1.0) <= tol:
        return Regime.BOUNDARY
    pi_unstable = abs_pi > 1.0
    b_unstable = abs_b > 1.0
    if pi_unstable and not b_unstable:
        return Regime.ACTIVE_M_PASSIVE_F
    if b_unstable and not pi_unstable:
        return Regime.PASSIVE_M_ACTIVE_F
    if pi_unstable:
        return Regime.EXPLOSIVE
    return Regime.INDETERMINATE


def classify_regime(params: ModelParams, rule: AdHocRule, tol: float = DEFAULT_TOL) -> RegimeClass:
    """Label a rule pair by counting unstable roots.

    Any root within ``tol`` of the unit circle is reported as
    ``Regime.BOUNDARY``; ``tol = 0`` flags only exact unit roots.
    """
    if not tol >= 0:
        raise InvalidParameterError(f"tol must be >= 0, got {tol!r}")
    lam_pi, lam_b = closed_loop_eigenvalues(params, rule)
    abs_pi, abs_b = abs(lam_pi), abs(lam_b)
    return RegimeClass(_label(abs_pi, abs_b, tol), abs_pi, abs_b)


def _check_range(name: str, rng: tuple[float, float], n: int) -> np.ndarray:
    lo, hi = (float(v) for v in rng)
    if not (np.isfinite(lo) and np.isfinite(hi)):
        raise InvalidParameterError(f"{name} must be finite, got {rng!r}")
    if not lo < hi:
        raise InvalidParameterError(f"{name} must be a non-degenerate interval lo < hi, got {rng!r}")
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"grid size for {name} must be an integer >= 2, got {n!r}")
    return np.linspace(lo, hi, int(n))


def regime_grid(
    params: ModelParams,
    f_range: tuple[float, float],
    g_range: tuple[float, float],
    n_f: int,
    n_g: int,
    tol: float = DEFAULT_TOL,
) -> RegimeGrid:
    f_values = _check_range("f_range", f_range, n_f)
    g_values = _check_range("g_range", g_range, n_g)
    if not tol >= 0:
        raise InvalidParameterError(f"tol must be >= 0, got {tol!r}")
    abs_pi = np.abs(params.beta * f_values)[:, None] * np.ones(len(g_values))
    abs_b = np.ones(len(f_values))[:, None] * np.abs(1.0 / params.beta - g_values)
    labels = np.empty(abs_pi.shape, dtype=object)
    for idx in np.ndindex(labels.shape):
        labels[idx] = _label(abs_pi[idx], abs_b[idx], tol)
    return RegimeGrid(f_values, g_values, labels, abs_pi, abs_b)
