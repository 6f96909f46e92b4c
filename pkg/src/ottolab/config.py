"""Run configuration: flat JSON with dotted keys, pi-fraction angles."""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .qubit import ParamOutOfRange, QubitParams


class ConfigError(ValueError):
    """Config file is structurally unusable (exit code 2)."""


MODES = ("dephased", "undephased", "both")
TARGETS = ("work", "efficiency", "reliabilityw")
FORMATS = ("csv", "json", "svg")

_PARAM_KEYS = ("nu1", "nu2", "beta", "delta", "phi", "alpha", "chi")
_AXIS_KEYS = ("name", "from", "to", "steps", "values")
_PI_RE = re.compile(
    r"^([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?$",
    re.IGNORECASE)


def parse_scalar(value, *, allow_inf: bool = False, where: str = "") -> float:
    """Accept plain numbers, 'inf', and pi fractions like '3pi/4'."""
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        s = value.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            if allow_inf:
                return math.inf
            raise ConfigError(f"{where}: infinity not allowed here")
        m = _PI_RE.match(s)
        if m:
            coef_s = m.group(1)
            if coef_s in ("", "+"):
                coef = 1.0
            elif coef_s == "-":
                coef = -1.0
            else:
                coef = float(coef_s)
            val = coef * math.pi
            if m.group(2):
                val /= float(m.group(2))
            return val
        try:
            return float(s)
        except ValueError:
            raise ConfigError(f"{where}: cannot parse number {value!r}") from None
    raise ConfigError(f"{where}: expected a number, got {type(value).__name__}")


@dataclass(frozen=True)
class SweepAxis:
    name: str
    grid: tuple[float, ...]


@dataclass(frozen=True)
class OutputSpec:
    path: str | None = None
    fmt: str = "csv"
    columns: tuple[str, ...] = ()


@dataclass(frozen=True)
class RunConfig:
    params: QubitParams
    mode: str = "dephased"
    axes: tuple[SweepAxis, ...] = ()
    target: str | None = None
    output: OutputSpec = field(default_factory=OutputSpec)
    seed: int = 0

    @property
    def modes(self):
        from .engine import Mode
        if self.mode == "both":
            return (Mode.DEPHASED, Mode.UNDEPHASED)
        return (Mode(self.mode),)


def _flatten(prefix: str, obj, out: dict) -> None:
    if isinstance(obj, dict):
        for key, val in obj.items():
            if not isinstance(key, str):
                raise ConfigError(f"non-string config key {key!r}")
            dotted = f"{prefix}.{key}" if prefix else key
            _flatten(dotted, val, out)
    else:
        out[prefix] = obj


def flatten_config(raw: dict) -> dict:
    """Normalize nested dicts into the canonical dotted-key form."""
    out: dict = {}
    _flatten("", raw, out)
    return out


def _build_axis(idx: int, flat: dict) -> SweepAxis | None:
    prefix = f"sweep.axis{idx}."
    keys = {k[len(prefix):]: v for k, v in flat.items() if k.startswith(prefix)}
    if not keys:
        return None
    unknown = set(keys) - set(_AXIS_KEYS)
    if unknown:
        raise ConfigError(f"unknown sweep axis keys: {sorted(unknown)}")
    name = keys.get("name")
    if name not in _PARAM_KEYS:
        raise ConfigError(f"sweep axis must name a qubit parameter, got {name!r}")
    if "values" in keys:
        vals = keys["values"]
        if not isinstance(vals, (list, tuple)) or not vals:
            raise ConfigError(f"sweep.axis{idx}.values must be a nonempty list")
        grid = tuple(parse_scalar(v, where=f"sweep.axis{idx}.values") for v in vals)
        return SweepAxis(name=name, grid=grid)
    missing = [k for k in ("from", "to", "steps") if k not in keys]
    if missing:
        raise ConfigError(f"sweep.axis{idx} missing {missing}")
    lo = parse_scalar(keys["from"], where=f"sweep.axis{idx}.from")
    hi = parse_scalar(keys["to"], where=f"sweep.axis{idx}.to")
    steps = keys["steps"]
    if not isinstance(steps, int) or isinstance(steps, bool):
        raise ConfigError(f"sweep.axis{idx}.steps must be an integer")
    if steps < 2:
        raise ParamOutOfRange(f"sweep.axis{idx}.steps must be >= 2, got {steps}")
    if lo > hi:
        raise ParamOutOfRange(f"sweep.axis{idx}: from {lo} exceeds to {hi}")
    grid = tuple(float(x) for x in np.linspace(lo, hi, steps))
    return SweepAxis(name=name, grid=grid)


def build_run_config(raw: dict, overrides: dict | None = None) -> RunConfig:
    """Validate a raw (possibly nested) config dict into a RunConfig."""
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    flat = flatten_config(raw)
    if overrides:
        flat.update({k: v for k, v in overrides.items() if v is not None})

    known = set(_PARAM_KEYS) | {"mode", "target", "seed",
                                "output.path", "output.format", "output.columns"}
    for idx in (1, 2):
        known |= {f"sweep.axis{idx}.{k}" for k in _AXIS_KEYS}
    unknown = set(flat) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    missing = [k for k in ("nu1", "nu2", "beta", "delta") if k not in flat]
    if missing:
        raise ConfigError(f"config missing required keys: {missing}")
    kw = {}
    for key in _PARAM_KEYS:
        if key in flat:
            kw[key] = parse_scalar(flat[key], allow_inf=(key == "beta"),
                                   where=key)
    params = QubitParams(**kw)  # raises ParamOutOfRange on bad ranges

    mode = flat.get("mode", "dephased")
    if mode not in MODES:
        raise ConfigError(f"mode must be one of {MODES}, got {mode!r}")
    target = flat.get("target")
    if target is not None:
        target = str(target).lower()
        if target not in TARGETS:
            raise ConfigError(f"target must be one of {TARGETS}, got {target!r}")
    seed = flat.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed must be an integer")

    fmt = flat.get("output.format", "csv")
    if fmt not in FORMATS:
        raise ConfigError(f"output.format must be one of {FORMATS}, got {fmt!r}")
    cols = flat.get("output.columns", ())
    if isinstance(cols, str):
        cols = (cols,)
    elif isinstance(cols, (list, tuple)):
        cols = tuple(str(c) for c in cols)
    else:
        raise ConfigError("output.columns must be a list of column names")
    output = OutputSpec(path=flat.get("output.path"), fmt=fmt, columns=cols)

    axis1 = _build_axis(1, flat)
    axis2 = _build_axis(2, flat)
    if axis2 is not None and axis1 is None:
        raise ConfigError("sweep.axis2 given without sweep.axis1")
    axes = tuple(a for a in (axis1, axis2) if a is not None)
    return RunConfig(params=params, mode=mode, axes=axes,
                     target=target, output=output, seed=seed)


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
