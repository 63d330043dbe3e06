"""Command-line interface: gauss-ent <command> [options].

Commands: evolve, steady, metrics, sweep, classify, phase-diagram.
Configuration is a flat key=value file plus repeatable --set overrides
(flags win); outputs are deterministic CSV or JSON with floats printed to 17
significant digits, so identical configurations produce byte-identical files.

Exit codes: 0 success, 2 configuration error, 3 physicality violation,
4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .core import (
    CovarianceMatrix,
    ENTRY_NAMES,
    EnvironmentSpec,
    check_physical_state,
    covariance_from_entries,
    independent_entries,
    thermal_c_from_temperature,
    thermal_environment,
    validate_diffusion,
)
from .dynamics import evolve, steady_covariance
from .entanglement import metrics
from .experiments import SweepSpec, asymptotic_phase_diagram, classify_phase, sweep
from .presets import PRESET_NAMES, initial_state

COMMANDS = ("evolve", "steady", "metrics", "sweep", "classify", "phase-diagram")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICALITY = 3
EXIT_NUMERICAL = 4

# key -> (parser, default); None defaults are resolved during validation.
_FLOAT_KEYS = {
    "lambda": 0.1,
    "m": 1.0,
    "omega": 1.0,
    "d_xy": 0.0,
    "d_xpy": 0.049,
    "c": None,
    "temperature": None,
    "t": 0.0,
    "t_max": 50.0,
    "c_min": 1.0,
    "c_max": 1.5,
    "d_xpy_min": 0.0,
    "d_xpy_max": 0.06,
}
_INT_KEYS = {"n_t": 500, "n_c": 20, "n_d": 13}
_KNOWN_KEYS = set(_FLOAT_KEYS) | set(_INT_KEYS) | {"initial"} | set(ENTRY_NAMES)


class ConfigError(Exception):
    """Invalid configuration: unknown key, bad value, or conflicting options."""


class PhysicalityError(Exception):
    """Environment or initial state fails a physicality requirement."""


@dataclass(frozen=True)
class RunConfig:
    """A fully resolved run: command, environment, initial state and grids."""

    command: str
    lam: float
    m: float
    omega: float
    d_xy: float
    d_xpy: float
    thermal_c: float
    initial_name: str | None
    initial_entries: dict[str, float] | None
    t: float
    t_max: float
    n_t: int
    c_min: float
    c_max: float
    n_c: int
    d_xpy_min: float
    d_xpy_max: float
    n_d: int
    strict: bool
    out: str | None
    fmt: str

    def environment(self) -> EnvironmentSpec:
        return thermal_environment(
            self.lam, self.thermal_c, self.d_xy, self.d_xpy, self.m, self.omega
        )

    def initial_state(self) -> CovarianceMatrix:
        if self.initial_entries is not None:
            return covariance_from_entries(self.initial_entries)
        return initial_state(self.initial_name or "vacuum")

    def to_flat(self) -> dict[str, str]:
        """Canonical flat form; re-parsing it reproduces this configuration."""
        flat = {
            "lambda": repr(self.lam),
            "m": repr(self.m),
            "omega": repr(self.omega),
            "d_xy": repr(self.d_xy),
            "d_xpy": repr(self.d_xpy),
            "c": repr(self.thermal_c),
            "t": repr(self.t),
            "t_max": repr(self.t_max),
            "n_t": str(self.n_t),
            "c_min": repr(self.c_min),
            "c_max": repr(self.c_max),
            "n_c": str(self.n_c),
            "d_xpy_min": repr(self.d_xpy_min),
            "d_xpy_max": repr(self.d_xpy_max),
            "n_d": str(self.n_d),
        }
        if self.initial_entries is not None:
            flat.update({name: repr(value) for name, value in self.initial_entries.items()})
        else:
            flat["initial"] = self.initial_name or "vacuum"
        return flat


def parse_flat_file(path: str) -> dict[str, str]:
    """Read a flat key=value configuration file ('#' starts a comment)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _parse_float(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"value for {key!r} is not a number: {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"value for {key!r} must be finite, got {raw!r}")
    return value


def _parse_int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"value for {key!r} is not an integer: {raw!r}") from None


def build_config(
    command: str,
    provided: dict[str, str],
    *,
    strict: bool = False,
    out: str | None = None,
    fmt: str = "csv",
) -> RunConfig:
    """Validate raw key=value strings and resolve them into a RunConfig."""
    for key in provided:
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"unknown configuration key {key!r}")

    floats = {
        key: _parse_float(key, provided[key]) if key in provided else default
        for key, default in _FLOAT_KEYS.items()
    }
    ints = {
        key: _parse_int(key, provided[key]) if key in provided else default
        for key, default in _INT_KEYS.items()
    }

    if "c" in provided and "temperature" in provided:
        raise ConfigError("give either c= or temperature=, not both")
    if floats["temperature"] is not None:
        if floats["temperature"] < 0:
            raise ConfigError("temperature must be nonnegative")
        thermal_c = thermal_c_from_temperature(floats["temperature"], floats["omega"])
    else:
        thermal_c = floats["c"] if floats["c"] is not None else 1.0

    sigma_keys = [name for name in ENTRY_NAMES if name in provided]
    initial_entries: dict[str, float] | None = None
    initial_name: str | None = None
    if sigma_keys:
        if "initial" in provided:
            raise ConfigError("explicit sigma_* entries conflict with an initial= preset")
        initial_entries = {name: _parse_float(name, provided[name]) for name in sigma_keys}
    else:
        initial_name = provided.get("initial", "vacuum")
        if initial_name not in PRESET_NAMES:
            raise ConfigError(
                f"unknown initial-state preset {initial_name!r}; "
                f"valid names: {', '.join(PRESET_NAMES)}"
            )

    if not floats["lambda"] > 0:
        raise ConfigError("lambda must be positive")
    if not floats["m"] > 0 or not floats["omega"] > 0:
        raise ConfigError("m and omega must be positive")
    if thermal_c < 1.0:
        raise ConfigError("c must be >= 1 (c = coth(omega/2T))")
    if floats["t"] < 0:
        raise ConfigError("t must be nonnegative")
    if not floats["t_max"] > 0:
        raise ConfigError("t_max must be positive")
    if ints["n_t"] < 2:
        raise ConfigError("n_t must be at least 2")
    if ints["n_c"] < 1 or ints["n_d"] < 1:
        raise ConfigError("n_c and n_d must be at least 1")
    if floats["c_min"] < 1.0 or floats["c_max"] < floats["c_min"]:
        raise ConfigError("require 1 <= c_min <= c_max")
    if floats["d_xpy_max"] < floats["d_xpy_min"]:
        raise ConfigError("require d_xpy_min <= d_xpy_max")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {fmt!r}")

    return RunConfig(
        command=command,
        lam=floats["lambda"],
        m=floats["m"],
        omega=floats["omega"],
        d_xy=floats["d_xy"],
        d_xpy=floats["d_xpy"],
        thermal_c=thermal_c,
        initial_name=initial_name,
        initial_entries=initial_entries,
        t=floats["t"],
        t_max=floats["t_max"],
        n_t=ints["n_t"],
        c_min=floats["c_min"],
        c_max=floats["c_max"],
        n_c=ints["n_c"],
        d_xpy_min=floats["d_xpy_min"],
        d_xpy_max=floats["d_xpy_max"],
        n_d=ints["n_d"],
        strict=strict,
        out=out,
        fmt=fmt,
    )


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _csv(header: str, rows: list[str]) -> str:
    return "\n".join([header, *rows]) + "\n"


def _entries_output(cfg: RunConfig, sigma: CovarianceMatrix) -> str:
    entries = independent_entries(sigma)
    if cfg.fmt == "json":
        payload = {name: float(value) for name, value in entries.items()}
        return _json_output(cfg, {"entries": payload})
    rows = [f"{name},{_fmt(value)}" for name, value in entries.items()]
    return _csv("entry,value", rows)


def _json_output(cfg: RunConfig, result: dict) -> str:
    return json.dumps(
        {"command": cfg.command, "config": cfg.to_flat(), "result": result}, indent=2
    ) + "\n"


def _run_metrics(cfg: RunConfig, env: EnvironmentSpec, initial: CovarianceMatrix) -> str:
    state = evolve(initial, env, cfg.t)
    met = metrics(state)
    defined = met.log_negativity is not None
    if cfg.fmt == "json":
        return _json_output(
            cfg,
            {
                "t": cfg.t,
                "simon_s": met.simon_s,
                "seralian_tilde": met.seralian_tilde,
                "nu_tilde_minus_sq": met.nu_tilde_minus_sq,
                "log_negativity": met.log_negativity,
                "defined": defined,
                "separable": met.separable,
                "boundary": met.boundary,
            },
        )
    rows = [
        f"simon_s,{_fmt(met.simon_s)}",
        f"seralian_tilde,{_fmt(met.seralian_tilde)}",
        f"nu_tilde_minus_sq,{_fmt(met.nu_tilde_minus_sq)}",
        f"log_negativity,{_fmt(met.log_negativity) if defined else 'nan'}",
        f"defined,{int(defined)}",
        f"separable,{int(met.separable)}",
        f"boundary,{int(met.boundary)}",
    ]
    return _csv("quantity,value", rows)


def _run_sweep(cfg: RunConfig, env: EnvironmentSpec, initial: CovarianceMatrix) -> str:
    spec = SweepSpec(
        env_base=env,
        initial=initial,
        t_max=cfg.t_max,
        n_t=cfg.n_t,
        c_min=cfg.c_min,
        c_max=cfg.c_max,
        n_c=cfg.n_c,
    )
    result = sweep(spec)
    if cfg.fmt == "json":
        rows = [
            [t, c, s, degree, int(defined)]
            for t, c, s, degree, defined in result.rows()
        ]
        return _json_output(
            cfg,
            {
                "t": [float(v) for v in result.times],
                "c": [float(v) for v in result.thermal_cs],
                "rows": rows,
            },
        )
    rows = [
        f"{_fmt(t)},{_fmt(c)},{_fmt(s)},{_fmt(degree) if defined else 'nan'},{int(defined)}"
        for t, c, s, degree, defined in result.rows()
    ]
    return _csv("t,c,S,L,defined", rows)


def _run_classify(cfg: RunConfig, env: EnvironmentSpec, initial: CovarianceMatrix) -> str:
    cs = (
        np.array([cfg.c_min])
        if cfg.n_c == 1
        else np.linspace(cfg.c_min, cfg.c_max, cfg.n_c)
    )
    results = []
    for c in cs:
        env_c = thermal_environment(cfg.lam, float(c), cfg.d_xy, cfg.d_xpy, cfg.m, cfg.omega)
        results.append((float(c), classify_phase(initial, env_c, cfg.t_max, cfg.n_t)))
    if cfg.fmt == "json":
        return _json_output(
            cfg,
            {
                "rows": [
                    {
                        "c": c,
                        "label": phase.label,
                        "event_times": list(phase.event_times),
                        "s_infinity_sign": phase.s_infinity_sign,
                    }
                    for c, phase in results
                ]
            },
        )
    rows = [
        f"{_fmt(c)},{phase.label},{';'.join(_fmt(t) for t in phase.event_times)}"
        for c, phase in results
    ]
    return _csv("c,label,event_times", rows)


def _run_phase_diagram(cfg: RunConfig) -> str:
    d_values = (
        np.array([cfg.d_xpy_min])
        if cfg.n_d == 1
        else np.linspace(cfg.d_xpy_min, cfg.d_xpy_max, cfg.n_d)
    )
    cs = (
        np.array([cfg.c_min])
        if cfg.n_c == 1
        else np.linspace(cfg.c_min, cfg.c_max, cfg.n_c)
    )
    diagram = asymptotic_phase_diagram(cfg.lam, cfg.omega, d_values, cs, m=cfg.m)
    if cfg.fmt == "json":
        rows = [
            [float(d), float(c), diagram.status(i, j)]
            for i, d in enumerate(diagram.d_xpy_values)
            for j, c in enumerate(diagram.thermal_cs)
        ]
        return _json_output(
            cfg,
            {
                "d_xpy": [float(v) for v in diagram.d_xpy_values],
                "c": [float(v) for v in diagram.thermal_cs],
                "rows": rows,
            },
        )
    rows = [
        f"{_fmt(d)},{_fmt(c)},{diagram.status(i, j)}"
        for i, d in enumerate(diagram.d_xpy_values)
        for j, c in enumerate(diagram.thermal_cs)
    ]
    return _csv("d_xpy,c,status", rows)


def run(cfg: RunConfig) -> str:
    """Execute a resolved configuration and return the output text.

    Raises ConfigError / PhysicalityError / numpy.linalg.LinAlgError; the
    caller maps those to exit codes.
    """
    if cfg.command == "phase-diagram":
        return _run_phase_diagram(cfg)

    env = cfg.environment()
    report = validate_diffusion(env)
    if not report.passed:
        failed = ", ".join(
            f"{check.name} (margin {check.margin:.3e})" for check in report.failures()
        )
        raise PhysicalityError(f"diffusion coefficients violate positivity bounds: {failed}")

    if cfg.command == "steady":
        return _entries_output(cfg, steady_covariance(env))

    initial = cfg.initial_state()
    state_report = check_physical_state(initial)
    if not state_report.physical:
        detail = (
            f"min eigenvalue {state_report.min_eigenvalue:.6g}, "
            f"nu_minus^2 {state_report.nu_minus_sq:.6g}"
        )
        if cfg.strict:
            raise PhysicalityError(f"unphysical initial state ({detail})")
        print(
            f"warning: unphysical initial state ({detail}); proceeding in lenient mode",
            file=sys.stderr,
        )

    if cfg.command == "evolve":
        return _entries_output(cfg, evolve(initial, env, cfg.t))
    if cfg.command == "metrics":
        return _run_metrics(cfg, env, initial)
    if cfg.command == "sweep":
        return _run_sweep(cfg, env, initial)
    if cfg.command == "classify":
        return _run_classify(cfg, env, initial)
    raise ConfigError(f"unknown command {cfg.command!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gauss-ent",
        description=(
            "Evolve the covariance matrix of two damped oscillator modes in a "
            "common thermal bath and quantify their entanglement."
        ),
        epilog=(
            "Configuration keys (key=value, via --config file or --set): "
            "lambda, m, omega, d_xy, d_xpy, c | temperature, initial "
            f"({'|'.join(PRESET_NAMES)}) or explicit sigma_* entries, t, "
            "t_max, n_t, c_min, c_max, n_c, d_xpy_min, d_xpy_max, n_d."
        ),
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", metavar="FILE", help="flat key=value configuration file")
    parser.add_argument(
        "--set",
        dest="overrides",
        metavar="KEY=VALUE",
        action="append",
        default=[],
        help="override one configuration key (repeatable; wins over --config)",
    )
    parser.add_argument("--out", metavar="PATH", help="write the result to PATH instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument(
        "--strict",
        action="store_true",
        help="reject unphysical initial states instead of warning",
    )
    parser.add_argument(
        "--dump-config",
        action="store_true",
        help="print the resolved configuration as key=value lines and exit",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        provided: dict[str, str] = {}
        if args.config:
            provided.update(parse_flat_file(args.config))
        for item in args.overrides:
            if "=" not in item:
                raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
            key, _, value = item.partition("=")
            provided[key.strip()] = value.strip()
        cfg = build_config(
            args.command, provided, strict=args.strict, out=args.out, fmt=args.format
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.dump_config:
        flat = cfg.to_flat()
        for key in sorted(flat):
            print(f"{key}={flat[key]}")
        return EXIT_OK

    try:
        text = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICALITY
    except np.linalg.LinAlgError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        print(f"wrote {cfg.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
