"""Command-line front end: ``key = value`` config files, flags, CSV/JSON tables.

Usage::

    fiscal-ramsey --config baseline.cfg --command ramsey --qb 1 --mus 1 --qpi 1 --mur 1
    fiscal-ramsey --command grid --beta 0.99 --f-min 0 --f-max 2 --g-min -1 --g-max 2 --n-f 3 --n-g 4

Exit codes: 0 success, 2 invalid parameters or configuration, 3 unsupported
regime, 4 oracle cross-check failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path as FilePath
from typing import Any, Mapping

from .model_core import (
    InvalidParameterError,
    ModelParams,
    Variant,
    build_linear_system,
    compute_steady_state,
)
from .policy_rules import AdHocRule, classify_regime, regime_grid
from .ramsey_lqr import (
    AnchorViolationError,
    CrossCheckError,
    NoConvergenceError,
    PolicyPreferences,
    loss_value,
    persistence_sweep,
    ramsey_solution,
)
from .simulation import PATH_COLUMNS, UnsupportedRegimeError, draw_shocks, simulate_adhoc, simulate_ramsey

log = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "FISCAL_RAMSEY_OUTPUT_DIR"

COMMANDS = ("steady", "system", "classify", "grid", "ramsey", "sweep", "simulate")
EXIT_OK, EXIT_INVALID, EXIT_REGIME, EXIT_CROSSCHECK = 0, 2, 3, 4


class ConfigError(ValueError):
    """Malformed, unknown or missing configuration entries."""


@dataclass(frozen=True)
class RunConfig:
    command: str | None = None
    # model
    beta: float | None = None
    y: float = 1.0
    g: float = 0.2
    b_star: float = 1.0
    pi_star: float = 1.0
    q: float = 1.0
    # preferences
    q_pi: float | None = None
    q_b: float | None = None
    mu_R: float | None = None
    mu_s: float | None = None
    mu_s_grid: tuple[float, ...] | None = None
    # ad-hoc rule
    f_pi: float | None = None
    g_b: float | None = None
    sigma_R: float = 0.0
    sigma_s: float = 0.0
    rho_R: float = 0.0
    rho_s: float = 0.0
    # grid
    f_min: float | None = None
    f_max: float | None = None
    g_min: float | None = None
    g_max: float | None = None
    n_f: int | None = None
    n_g: int | None = None
    # simulation
    policy: str = "ramsey"
    horizon: int | None = None
    b0_dev: float | None = None
    pi0_dev: float = 0.0
    seed: int = 0
    # output
    variant: str = "linear"
    tol: float = 1e-9
    output_format: str = "csv"
    output_path: str | None = None


_FIELD_TYPES = {
    f.name: (
        float if "float" in str(f.type) and "tuple" not in str(f.type)
        else int if "int" in str(f.type)
        else tuple if "tuple" in str(f.type)
        else str
    )
    for f in fields(RunConfig)
}

_PREFS_KEYS = ("q_pi", "q_b", "mu_R", "mu_s")
_REQUIRED = {
    "steady": ("beta",),
    "system": ("beta",),
    "classify": ("beta", "f_pi", "g_b"),
    "grid": ("beta", "f_min", "f_max", "g_min", "g_max", "n_f", "n_g"),
    "ramsey": ("beta",) + _PREFS_KEYS,
    "sweep": ("beta", "q_pi", "q_b", "mu_R", "mu_s_grid"),
    "simulate": ("beta", "horizon", "b0_dev"),
}
_SIMULATE_POLICY_REQUIRED = {"ramsey": _PREFS_KEYS, "adhoc": ("f_pi", "g_b")}

# extra spellings accepted for keys, on top of the normalized canonical names
_ALIASES = {"qb": "q_b", "qpi": "q_pi", "mur": "mu_R", "mus": "mu_s", "bstar": "b_star",
            "format": "output_format", "output": "output_path", "o": "output_path"}


def _norm(key: str) -> str:
    return key.strip().lower().replace("-", "").replace("_", "")


_KEY_LOOKUP = {_norm(name): name for name in _FIELD_TYPES}
_KEY_LOOKUP.update(_ALIASES)


def canonical_key(key: str) -> str:
    try:
        return _KEY_LOOKUP[_norm(key)]
    except KeyError:
        raise ConfigError(f"unknown configuration key {key.strip()!r}") from None


def _convert(name: str, raw: str, where: str = "") -> Any:
    kind = _FIELD_TYPES[name]
    text = raw.strip()
    try:
        if kind is float:
            return float(text)
        if kind is int:
            return int(text)
        if kind is tuple:
            return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{where}cannot parse value {text!r} for {name}") from None
    if name == "command" and text not in COMMANDS:
        raise ConfigError(f"{where}command must be one of {COMMANDS}, got {text!r}")
    if name == "output_format" and text not in ("csv", "json"):
        raise ConfigError(f"{where}output_format must be csv or json, got {text!r}")
    if name == "policy" and text not in _SIMULATE_POLICY_REQUIRED:
        raise ConfigError(f"{where}policy must be ramsey or adhoc, got {text!r}")
    return text


def read_config_text(text: str) -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment; last duplicate wins."""
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key, raw = body.split("=", 1)
        if not key.strip():
            raise ConfigError(f"line {lineno}: empty key")
        try:
            name = canonical_key(key)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
        if name in values:
            log.warning("line %d: duplicate key %r, last occurrence wins", lineno, name)
        values[name] = _convert(name, raw, f"line {lineno}: ")
    return values


def _model_params(cfg: RunConfig) -> ModelParams:
    return ModelParams(beta=cfg.beta, y=cfg.y, g=cfg.g, b_star=cfg.b_star, pi_star=cfg.pi_star, q=cfg.q)


def _prefs(cfg: RunConfig) -> PolicyPreferences:
    return PolicyPreferences(cfg.q_pi, cfg.q_b, cfg.mu_R, cfg.mu_s)


def _rule(cfg: RunConfig) -> AdHocRule:
    return AdHocRule(cfg.f_pi, cfg.g_b, cfg.sigma_R, cfg.sigma_s, cfg.rho_R, cfg.rho_s)


def validate_config(cfg: RunConfig) -> RunConfig:
    if cfg.command is None:
        raise ConfigError("missing required key: command")
    required = list(_REQUIRED[cfg.command])
    if cfg.command == "simulate":
        required += _SIMULATE_POLICY_REQUIRED[cfg.policy]
    missing = [k for k in required if getattr(cfg, k) is None]
    if missing:
        raise ConfigError(f"missing required keys for {cfg.command!r}: {', '.join(missing)}")

    _model_params(cfg)
    Variant.parse(cfg.variant)
    if not cfg.tol >= 0:
        raise InvalidParameterError(f"tol must be >= 0, got {cfg.tol!r}")
    if all(getattr(cfg, k) is not None for k in _PREFS_KEYS):
        _prefs(cfg)
    if cfg.f_pi is not None and cfg.g_b is not None:
        _rule(cfg)
    if cfg.horizon is not None and cfg.horizon < 1:
        raise InvalidParameterError(f"horizon must be >= 1, got {cfg.horizon!r}")
    return cfg


def parse_config(
    path: str | os.PathLike | None = None,
    overrides: Mapping[str, Any] | None = None,
    *,
    text: str | None = None,
) -> RunConfig:
    """Build a validated :class:`RunConfig` from a file (or its text) plus overrides.

    Override values may be strings (as from the command line) or already
    typed; they take precedence over file values.
    """
    values: dict[str, Any] = {}
    if path is not None:
        text = FilePath(path).read_text(encoding="utf-8")
    if text is not None:
        values.update(read_config_text(text))
    for key, value in (overrides or {}).items():
        name = canonical_key(key)
        values[name] = _convert(name, value) if isinstance(value, str) else value
    if "mu_s_grid" in values and values["mu_s_grid"] is not None:
        values["mu_s_grid"] = tuple(float(v) for v in values["mu_s_grid"])
    return validate_config(RunConfig(**values))


def _fmt_value(value: Any) -> str:
    if isinstance(value, tuple):
        return ", ".join(repr(float(v)) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def config_items(cfg: RunConfig) -> list[tuple[str, Any]]:
    return [(f.name, getattr(cfg, f.name)) for f in fields(cfg) if getattr(cfg, f.name) is not None]


def serialize_config(cfg: RunConfig) -> str:
    return "".join(f"{k} = {_fmt_value(v)}\n" for k, v in config_items(cfg))


def _fmt_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, tuple):
        return list(value)
    return value


def compute_table(cfg: RunConfig) -> tuple[list[str], list[tuple]]:
    """Dispatch a validated config to the core and return ``(columns, rows)``."""
    params = _model_params(cfg)
    variant = Variant.parse(cfg.variant)
    cmd = cfg.command

    if cmd == "steady":
        ss = compute_steady_state(params)
        cols = [f.name for f in fields(ss)]
        return cols, [dataclasses.astuple(ss)]

    if cmd == "system":
        sys_ = build_linear_system(params, variant)
        cols = [f.name for f in fields(sys_)]
        return cols, [tuple(v.value if isinstance(v, Variant) else v for v in dataclasses.astuple(sys_))]

    if cmd == "classify":
        rc = classify_regime(params, _rule(cfg), cfg.tol)
        return ["f_pi", "g_b", "label", "abs_lambda_pi", "abs_lambda_b"], [
            (cfg.f_pi, cfg.g_b, rc.label.value, rc.abs_lambda_pi, rc.abs_lambda_b)
        ]

    if cmd == "grid":
        grid = regime_grid(params, (cfg.f_min, cfg.f_max), (cfg.g_min, cfg.g_max), cfg.n_f, cfg.n_g, cfg.tol)
        rows = [(f, g, lab.value, a, b) for f, g, lab, a, b in grid.rows()]
        return ["f_pi", "g_b", "label", "abs_lambda_pi", "abs_lambda_b"], rows

    if cmd == "ramsey":
        sol = ramsey_solution(params, _prefs(cfg))
        for w in sol.warnings:
            print(f"warning: {w}", file=sys.stderr)
        cols = [f.name for f in fields(sol) if f.name != "warnings"]
        row = [getattr(sol, c) for c in cols]
        if cfg.b0_dev is not None:
            cols += ["b0_dev", "pi0_dev", "loss"]
            row += [cfg.b0_dev, cfg.pi0_dev, loss_value(sol, cfg.b0_dev, cfg.pi0_dev)]
        return cols, [tuple(row)]

    if cmd == "sweep":
        base = PolicyPreferences(cfg.q_pi, cfg.q_b, cfg.mu_R, cfg.mu_s_grid[0])
        return ["mu_s", "lambda_b_opt", "g_b_opt", "p_b"], persistence_sweep(base, params, cfg.mu_s_grid)

    if cmd == "simulate":
        if cfg.policy == "ramsey":
            sol = ramsey_solution(params, _prefs(cfg))
            path = simulate_ramsey(sol, params, cfg.b0_dev, cfg.horizon, variant)
        else:
            rule = _rule(cfg)
            shocks = draw_shocks(rule.sigma_R, rule.sigma_s, rule.rho_R, rule.rho_s, cfg.horizon, cfg.seed)
            path = simulate_adhoc(params, rule, shocks, cfg.b0_dev, variant, cfg.tol)
        for w in path.warnings:
            print(f"warning: {w}", file=sys.stderr)
        return list(PATH_COLUMNS), list(path.rows())

    raise ConfigError(f"unknown command {cmd!r}")


def render(cfg: RunConfig, columns: list[str], rows: list[tuple]) -> str:
    if cfg.output_format == "json":
        doc = {
            "meta": {k: _json_value(v) for k, v in config_items(cfg)},
            "rows": [dict(zip(columns, row)) for row in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    for k, v in config_items(cfg):
        buf.write(f"# {k} = {_fmt_value(v)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_cell(v) for v in row])
    return buf.getvalue()


def _resolve_output(path: str) -> FilePath:
    out = FilePath(path)
    override = os.environ.get(OUTPUT_DIR_ENV)
    if override and not out.is_absolute():
        out = FilePath(override) / out
    return out


def run(cfg: RunConfig) -> int:
    """Execute a config, write its table and return the process exit code."""
    try:
        columns, rows = compute_table(cfg)
    except (InvalidParameterError, ConfigError, AnchorViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (CrossCheckError, NoConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK

    text = render(cfg, columns, rows)
    if cfg.output_path:
        out = _resolve_output(cfg.output_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiscal-ramsey",
        allow_abbrev=False,
        description="Steady state, regime maps and Ramsey-optimal policy for a "
        "frictionless endowment economy with monetary-fiscal interaction.",
    )
    parser.add_argument("--config", help="key = value configuration file")
    aliases_by_key: dict[str, list[str]] = {}
    for alias, name in _ALIASES.items():
        aliases_by_key.setdefault(name, []).append(alias)
    for name in _FIELD_TYPES:
        flags = [f"--{name.replace('_', '-')}"]
        lower = f"--{name.lower().replace('_', '-')}"
        if lower not in flags:
            flags.append(lower)
        flags += [f"--{a}" if len(a) > 1 else f"-{a}" for a in aliases_by_key.get(name, [])]
        parser.add_argument(*flags, dest=name, default=None, metavar="VALUE")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items() if k != "config" and v is not None}
    try:
        cfg = parse_config(args.config, overrides)
    except (ConfigError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
