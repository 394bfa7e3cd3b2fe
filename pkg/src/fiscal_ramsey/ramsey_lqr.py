"""Ramsey optimal policy under quasi-commitment as a discounted LQR.

The policy maker discounts at ``beta * q``: the household discount factor
times the probability that its commitment survives. Because the
transmission mechanism is diagonal and the loss has no cross term, the
Riccati matrix is diagonal and the problem splits into

* an inflation block with ``A_pi = 0``, whose Riccati equation collapses to
  ``P_pi = Q_pi``, so the optimal interest-rate response is zero (a peg);
* a scalar debt block with state coefficient ``1/(beta q)`` and surplus
  coefficient ``-1``, whose optimal persistence is the stable root of the
  Hamiltonian characteristic polynomial
  ``lambda**2 - S lambda + 1/(beta q)``.

:func:`dare_value_iteration` iterates the scalar Riccati recursion directly
and serves as an independent check on the closed forms.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .model_core import InvalidParameterError, ModelParams

log = logging.getLogger(__name__)

#: Below this, smoothing weights and credibility are accepted but flagged.
MIN_PARAM_FLOOR = 1e-7
ORACLE_TOL = 1e-12
ORACLE_MAX_ITER = 1_000_000
CROSS_CHECK_TOL = 1e-6


class NoConvergenceError(RuntimeError):
    def __init__(self, message: str, last_p: float, residual: float, iterations: int):
        super().__init__(message)
        self.last_p = last_p
        self.residual = residual
        self.iterations = iterations


class CrossCheckError(RuntimeError):
    """Closed-form and value-iteration Riccati solutions disagree."""


class AnchorViolationError(ValueError):
    """Initial inflation differs from its optimal anchor while it carries loss weight."""


@dataclass(frozen=True)
class PolicyPreferences:
    """Quadratic loss weights.

    ``q_pi`` and ``q_b`` penalize inflation and debt deviations; ``mu_R`` and
    ``mu_s`` penalize movements of the interest rate and the surplus and
    must be strictly positive for the problem to be strictly concave.
    """

    q_pi: float
    q_b: float
    mu_R: float
    mu_s: float

    def __post_init__(self) -> None:
        problems = []
        for name in ("q_pi", "q_b", "mu_R", "mu_s"):
            if not np.isfinite(getattr(self, name)):
                problems.append(f"{name} must be finite")
        if not problems:
            if self.q_pi < 0:
                problems.append(f"q_pi must be >= 0, got {self.q_pi!r}")
            if self.q_b < 0:
                problems.append(f"q_b must be >= 0, got {self.q_b!r}")
            if not self.mu_R > 0:
                problems.append(f"mu_R must be > 0, got {self.mu_R!r}")
            if not self.mu_s > 0:
                problems.append(f"mu_s must be > 0, got {self.mu_s!r}")
        if problems:
            raise InvalidParameterError("; ".join(problems))


@dataclass(frozen=True)
class InflationBlock:
    p_pi: float
    f_opt: float
    pi0_anchor: float
    pi0_indeterminate: bool


@dataclass(frozen=True)
class DebtBlock:
    s_sum: float
    lambda_b_opt: float
    lambda_2: float
    g_b_opt: float
    p_b: float
    degenerate: bool


@dataclass(frozen=True)
class DareResult:
    p: float
    k_gain: float
    lambda_cl: float
    iterations: int


@dataclass(frozen=True)
class RamseySolution:
    p_pi: float
    p_pib: float
    p_b: float
    lambda_pi_opt: float
    lambda_b_opt: float
    lambda_2: float
    s_sum: float
    f_opt: float
    g_b_opt: float
    rho_R_opt: float
    sigma2_R_opt: float
    pi0_anchor: float
    pi0_indeterminate: bool
    degenerate: bool
    q_pi: float
    q_b: float
    oracle_p_b: float
    oracle_lambda_b: float
    oracle_p_b_residual: float
    oracle_lambda_residual: float
    oracle_iterations: int
    warnings: tuple[str, ...] = ()


def _floor_warnings(prefs: PolicyPreferences, params: ModelParams) -> tuple[str, ...]:
    out = []
    for name, value in (("mu_R", prefs.mu_R), ("mu_s", prefs.mu_s), ("q", params.q)):
        if value < MIN_PARAM_FLOOR:
            out.append(f"{name}={value!r} is below {MIN_PARAM_FLOOR:g}; results near this floor are fragile")
    for msg in out:
        log.warning(msg)
    return tuple(out)


def solve_inflation_block(prefs: PolicyPreferences, params: ModelParams) -> InflationBlock:
    """Inflation block: ``A_pi = 0`` so one Riccati step returns ``Q_pi``.

    The interest rate is pegged (``f_opt = 0``). When ``q_pi > 0`` the
    first-order condition on initial inflation pins it at zero; with
    ``q_pi = 0`` initial inflation is payoff-irrelevant and we report the
    zero convention together with an indeterminacy flag.
    """
    p_pi = prefs.q_pi
    p_pib = 0.0
    # P_pi * pi0 + P_pib * b0 = 0
    anchor = -p_pib / p_pi if p_pi > 0 else 0.0
    return InflationBlock(p_pi=p_pi, f_opt=0.0, pi0_anchor=anchor + 0.0, pi0_indeterminate=p_pi == 0)


def solve_debt_block(prefs: PolicyPreferences, params: ModelParams) -> DebtBlock:
    """Closed-form debt block under discount ``beta q``.

    With ``q_b = 0`` the characteristic polynomial factors as
    ``(lambda - 1)(lambda - 1/(beta q))``: debt keeps a unit root, ``p_b``
    is defined as zero and the result is flagged degenerate.
    """
    if not params.q > 0:
        raise InvalidParameterError(f"q must be > 0 for the Ramsey problem, got {params.q!r}")
    disc = params.beta * params.q
    u = 1.0 / disc - 1.0
    c = disc * prefs.q_b / prefs.mu_s
    s_sum = 1.0 + 1.0 / disc + c
    # S^2 - 4/(beta q) expanded around c = 0; equals u^2 exactly when q_b = 0
    root = math.sqrt(u * u + c * (c + 4.0 + 2.0 * u))
    lambda_2 = 0.5 * (s_sum + root)
    if prefs.q_b == 0:
        lambda_b = 1.0
        lambda_2 = 1.0 / disc
        p_b = 0.0
        degenerate = True
    else:
        # stable root as product over unstable root; 1 - lambda_b without
        # cancellation so p_b stays accurate as mu_s -> 0 or mu_s -> inf
        lambda_b = (1.0 / disc) / lambda_2
        root_minus_u = c * (c + 4.0 + 2.0 * u) / (root + u) if root + u > 0 else root
        gap = 0.5 * (c + root_minus_u) / lambda_2
        p_b = prefs.q_b / gap
        degenerate = False
    return DebtBlock(
        s_sum=s_sum,
        lambda_b_opt=lambda_b,
        lambda_2=lambda_2,
        g_b_opt=1.0 / disc - lambda_b,
        p_b=p_b,
        degenerate=degenerate,
    )


def dare_value_iteration(
    a: float,
    b: float,
    q_w: float,
    r_w: float,
    discount: float,
    tol: float = ORACLE_TOL,
    max_iter: int = ORACLE_MAX_ITER,
) -> DareResult:
    """Iterate the scalar discounted Riccati recursion to its fixed point.

    ``P <- q_w + d a^2 P - (d a b P)^2 / (r_w + d b^2 P)`` from ``P = q_w``,
    evaluated as ``q_w + d a^2 P r_w / (r_w + d b^2 P)``.
    Stops when the step is below ``tol * max(1, |P|)``. The gain follows the
    convention ``u = k_gain * x`` and ``lambda_cl = a + b * k_gain``.
    """
    if not r_w > 0:
        raise InvalidParameterError(f"r_w must be > 0, got {r_w!r}")
    if not 0 < discount <= 1:
        raise InvalidParameterError(f"discount must be in (0, 1], got {discount!r}")
    if not tol > 0:
        raise InvalidParameterError(f"tol must be > 0, got {tol!r}")

    p = q_w
    residual = math.inf
    for it in range(1, max_iter + 1):
        # d a^2 P - (d a b P)^2 / (r + d b^2 P), factored to avoid cancellation
        p_next = q_w + discount * a * a * p * r_w / (r_w + discount * b * b * p)
        residual = abs(p_next - p)
        if not math.isfinite(p_next):
            raise NoConvergenceError(
                f"Riccati iteration diverged after {it} steps (last finite P={p!r})", p, residual, it
            )
        if residual < tol * max(1.0, abs(p)):
            p = p_next
            break
        p = p_next
    else:
        raise NoConvergenceError(
            f"Riccati iteration did not converge in {max_iter} steps (P={p!r}, step={residual!r})",
            p, residual, max_iter,
        )
    k_gain = -(discount * b * p * a) / (r_w + discount * b * p * b)
    return DareResult(p=p, k_gain=k_gain, lambda_cl=a + b * k_gain, iterations=it)


def ramsey_solution(params: ModelParams, prefs: PolicyPreferences) -> RamseySolution:
    """Assemble both blocks and verify the debt block against value iteration.

    Raises
    ------
    CrossCheckError
        If oracle and closed form differ by more than ``CROSS_CHECK_TOL``
        (relative to ``max(1, p_b)`` for the loss weight).
    """
    warnings = _floor_warnings(prefs, params)
    infl = solve_inflation_block(prefs, params)
    debt = solve_debt_block(prefs, params)

    disc = params.beta * params.q
    oracle = dare_value_iteration(1.0 / disc, -1.0, prefs.q_b, prefs.mu_s, disc)
    p_res = abs(oracle.p - debt.p_b) / max(1.0, abs(debt.p_b))
    if debt.degenerate:
        # from P = 0 the oracle never applies feedback, so its root is 1/(beta q)
        lam_res = 0.0
    else:
        lam_res = abs(oracle.lambda_cl - debt.lambda_b_opt)
    if p_res > CROSS_CHECK_TOL or lam_res > CROSS_CHECK_TOL:
        raise CrossCheckError(
            f"closed form and Riccati iteration disagree: p_b residual {p_res:.3e}, "
            f"lambda_b residual {lam_res:.3e}"
        )
    if debt.degenerate:
        warnings = warnings + ("q_b = 0: debt keeps a unit root under the optimal policy",)

    return RamseySolution(
        p_pi=infl.p_pi,
        p_pib=0.0,
        p_b=debt.p_b,
        lambda_pi_opt=0.0,
        lambda_b_opt=debt.lambda_b_opt,
        lambda_2=debt.lambda_2,
        s_sum=debt.s_sum,
        f_opt=infl.f_opt,
        g_b_opt=debt.g_b_opt,
        rho_R_opt=0.0,
        sigma2_R_opt=0.0,
        pi0_anchor=infl.pi0_anchor,
        pi0_indeterminate=infl.pi0_indeterminate,
        degenerate=debt.degenerate,
        q_pi=prefs.q_pi,
        q_b=prefs.q_b,
        oracle_p_b=oracle.p,
        oracle_lambda_b=oracle.lambda_cl,
        oracle_p_b_residual=p_res,
        oracle_lambda_residual=lam_res,
        oracle_iterations=oracle.iterations,
        warnings=warnings,
    )


def loss_value(solution: RamseySolution, b0_dev: float, pi0_dev: float = 0.0) -> float:
    """Optimal value ``-1/2 x0' P x0`` for initial deviations ``x0 = (pi0, b0)``."""
    if solution.q_pi > 0 and pi0_dev != solution.pi0_anchor:
        raise AnchorViolationError(
            f"with q_pi > 0 initial inflation must sit at its anchor {solution.pi0_anchor!r}, "
            f"got {pi0_dev!r}"
        )
    return -0.5 * (
        solution.p_pi * pi0_dev**2
        + 2.0 * solution.p_pib * pi0_dev * b0_dev
        + solution.p_b * b0_dev**2
    )


def persistence_sweep(
    prefs: PolicyPreferences, params: ModelParams, mu_s_grid
) -> list[tuple[float, float, float, float]]:
    """Optimal debt persistence across tax-smoothing weights.

    Returns ``(mu_s, lambda_b_opt, g_b_opt, p_b)`` per node; each node is
    cross-checked against value iteration.
    """
    grid = [float(m) for m in mu_s_grid]
    if not grid:
        raise InvalidParameterError("mu_s grid is empty")
    if any(not m > 0 for m in grid):
        raise InvalidParameterError("mu_s grid values must all be > 0")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParameterError("mu_s grid must be strictly ascending")
    out = []
    for mu_s in grid:
        node = PolicyPreferences(prefs.q_pi, prefs.q_b, prefs.mu_R, mu_s)
        sol = ramsey_solution(params, node)
        out.append((mu_s, sol.lambda_b_opt, sol.g_b_opt, sol.p_b))
    return out
