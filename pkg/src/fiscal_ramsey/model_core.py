"""Structural parameters, steady state and the linearized transmission mechanism.

The economy is a frictionless constant-endowment economy with a Fisher
relation at a constant real rate and a one-period nominal government bond.
Everything downstream works in deviations from the steady state computed
here, either plain differences (``Variant.LINEAR``) or relative differences
(``Variant.LOG_LINEAR``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class InvalidParameterError(ValueError):
    """Raised when model, preference or rule parameters violate their bounds."""


class Variant(str, enum.Enum):
    LINEAR = "linear"
    LOG_LINEAR = "loglinear"

    @classmethod
    def parse(cls, value: "str | Variant") -> "Variant":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "").replace("_", "")
        for member in cls:
            if member.value == key:
                return member
        raise InvalidParameterError(
            f"variant must be one of {[m.value for m in cls]}, got {value!r}"
        )


@dataclass(frozen=True)
class ModelParams:
    """Structural primitives of the endowment economy.

    Attributes
    ----------
    beta : float
        Household discount factor, ``0 < beta < 1``.
    y : float
        Constant endowment per period.
    g : float
        Constant government purchases per period, ``0 <= g < y``.
    b_star : float
        Steady-state real debt, ``b_star >= 0``.
    pi_star : float
        Gross inflation target. Only ``1`` is accepted.
    q : float
        Probability that the current policy maker's commitment survives to
        next period, ``0 < q <= 1``.
    """

    beta: float
    y: float = 1.0
    g: float = 0.2
    b_star: float = 1.0
    pi_star: float = 1.0
    q: float = 1.0

    def __post_init__(self) -> None:
        problems = self.violations()
        if problems:
            raise InvalidParameterError("; ".join(problems))

    def violations(self) -> list[str]:
        out = []
        vals = {k: getattr(self, k) for k in ("beta", "y", "g", "b_star", "pi_star", "q")}
        for name, v in vals.items():
            if not np.isfinite(v):
                out.append(f"{name} must be finite, got {v!r}")
        if out:
            return out
        if not 0.0 < self.beta < 1.0:
            out.append(f"beta must satisfy 0 < beta < 1, got {self.beta!r}")
        if not 0.0 < self.q <= 1.0:
            out.append(f"q must satisfy 0 < q <= 1, got {self.q!r}")
        if self.g < 0.0:
            out.append(f"g must satisfy g >= 0, got {self.g!r}")
        if not self.y > self.g:
            out.append(f"y must exceed g so consumption is positive, got y={self.y!r}, g={self.g!r}")
        if self.b_star < 0.0:
            out.append(f"b_star must satisfy b_star >= 0, got {self.b_star!r}")
        if self.pi_star != 1.0:
            out.append(f"pi_star is fixed at 1, got {self.pi_star!r}")
        return out


@dataclass(frozen=True)
class SteadyState:
    R_star: float
    tau_star: float
    s_star: float
    c: float
    r: float


@dataclass(frozen=True)
class LinearSystem:
    """``E_t x_{t+1} = A x_t + B u`` with ``x = (pi, b)`` and ``u = (R, s)``."""

    a_pi: float
    a_pib: float
    a_bpi: float
    a_b: float
    b_piR: float
    b_pis: float
    b_bR: float
    b_bs: float
    variant: Variant

    @property
    def A(self) -> np.ndarray:
        return np.array([[self.a_pi, self.a_pib], [self.a_bpi, self.a_b]])

    @property
    def B(self) -> np.ndarray:
        return np.array([[self.b_piR, self.b_pis], [self.b_bR, self.b_bs]])


def compute_steady_state(params: ModelParams) -> SteadyState:
    """Long-run values implied by the Fisher relation and the budget constraint.

    The nominal rate consistent with ``pi_star = 1`` is ``1 / beta`` and the
    primary surplus exactly covers interest on steady-state debt.
    """
    beta = params.beta
    r = 1.0 / beta - 1.0
    s_star = r * params.b_star
    return SteadyState(
        R_star=1.0 / beta,
        tau_star=params.g + s_star,
        s_star=s_star,
        c=params.y - params.g,
        r=r,
    )


def build_linear_system(params: ModelParams, variant: Variant | str = Variant.LINEAR) -> LinearSystem:
    """State and instrument matrices of the transmission mechanism.

    Raises
    ------
    InvalidParameterError
        For the log-linear variant when ``b_star == 0``: relative debt and
        surplus deviations have no base to scale by.
    """
    variant = Variant.parse(variant)
    beta = params.beta
    if variant is Variant.LINEAR:
        b_piR, b_bs = beta, -1.0
    else:
        if params.b_star <= 0.0:
            raise InvalidParameterError(
                "log-linear system needs b_star > 0 (relative deviations of debt and "
                "surplus are undefined at zero); use the linear variant instead"
            )
        b_piR, b_bs = 1.0, -(1.0 / beta - 1.0)
    return LinearSystem(
        a_pi=0.0,
        a_pib=0.0,
        a_bpi=0.0,
        a_b=1.0 / beta,
        b_piR=b_piR,
        b_pis=0.0,
        b_bR=0.0,
        b_bs=b_bs,
        variant=variant,
    )
