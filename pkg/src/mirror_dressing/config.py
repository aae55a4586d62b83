"""Flat ``key = value`` scenario configuration.

Format: one assignment per line, ``#`` starts a comment, SI units implied,
exponent notation accepted.  Sweep scenarios take comma-separated lists for
the physical keys.  See README.md for the key reference.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .continuum import ContinuumConfig
from .core import PhysicalConstants, PhysicalParams
from .dynamics import TimeGrid, round_trip_time
from .oracle import Truncation
from .two_cavity import TwoCavityParams

SCENARIOS = (
    "stationary",
    "dynamics",
    "continuum-dynamics",
    "two-cavity",
    "revival",
    "oracle-validate",
    "sweep",
)
FORMATS = ("csv", "jsonl")

# key -> kind; "pos" positive float, "int" positive integer, "poslist" list of positive floats
_KEYS = {
    "scenario": "str",
    "mass": "pos",
    "omega0": "pos",
    "L0": "pos",
    "omega_cut": "pos",
    "hbar": "pos",
    "c": "pos",
    "cutoff": "str",
    "L0_2": "pos",
    "omega_cut_2": "pos",
    "t_max": "pos",
    "points": "int",
    "quad_tol": "pos",
    "n_modes": "int",
    "max_photons": "int",
    "max_phonons": "int",
    "coupling_scales": "poslist",
    "output": "str",
    "format": "str",
}
SWEEP_KEYS = ("mass", "omega0", "L0", "omega_cut")

_REQUIRED = {
    "stationary": ("mass", "omega0", "L0", "omega_cut"),
    "dynamics": ("mass", "omega0", "L0", "omega_cut", "t_max", "points"),
    "continuum-dynamics": ("mass", "omega0", "omega_cut", "t_max", "points"),
    "two-cavity": ("mass", "omega0", "L0", "omega_cut", "L0_2", "t_max", "points"),
    "revival": ("mass", "omega0", "L0", "omega_cut"),
    "oracle-validate": ("mass", "omega0", "L0", "omega_cut"),
    "sweep": ("mass", "omega0", "L0", "omega_cut"),
}

REVIVAL_ROUND_TRIPS = 5
REVIVAL_POINTS = 501


class ConfigError(ValueError):
    """One or more field-level problems; ``errors`` lists them individually."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _number(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError("not finite")
    return value


def _convert(key: str, raw: str, sweep: bool):
    kind = _KEYS[key]
    if kind == "str":
        return raw
    if kind == "int":
        value = _number(raw)
        if value != int(value) or value < 1:
            raise ValueError("must be a positive integer")
        return int(value)
    if kind == "poslist" or (sweep and key in SWEEP_KEYS):
        values = [_number(p) for p in raw.split(",") if p.strip()]
        if not values:
            raise ValueError("empty list")
        if any(v <= 0 for v in values):
            raise ValueError("must be positive")
        return values
    value = _number(raw)
    if kind == "pos" and value <= 0:
        raise ValueError("must be positive")
    return value


def _format_value(value) -> str:
    if isinstance(value, list):
        return ", ".join(_format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def get(self, key, default=None):
        return self.values.get(key, default)

    @property
    def output(self):
        return self.values.get("output")

    @property
    def format(self) -> str:
        return self.values.get("format", "csv")

    @property
    def constants(self) -> PhysicalConstants:
        return PhysicalConstants(self.get("hbar", PhysicalConstants.hbar), self.get("c", PhysicalConstants.c))

    def physical_params(self, **overrides) -> PhysicalParams:
        v = {**self.values, **overrides}
        return PhysicalParams(v["mass"], v["omega0"], v["L0"], v["omega_cut"], self.constants, v.get("cutoff", "sharp"))

    def two_cavity_params(self) -> TwoCavityParams:
        v = self.values
        return TwoCavityParams(
            v["mass"], v["omega0"], v["L0"], v["omega_cut"],
            v["L0_2"], v.get("omega_cut_2", v["omega_cut"]),
            self.constants, v.get("cutoff", "sharp"),
        )

    def continuum_config(self) -> ContinuumConfig:
        v = self.values
        scale = self.constants.hbar**2 * v["omega0"] ** 2 / (v["mass"] * self.constants.c**2)
        return ContinuumConfig(v["omega_cut"] / v["omega0"], 0.0, scale, v.get("quad_tol", 1e-9))

    def truncation(self) -> Truncation:
        return Truncation(self.get("n_modes", 2), self.get("max_photons", 4), self.get("max_phonons", 4))

    def grid(self) -> TimeGrid:
        if self.scenario == "revival":
            t_max = self.get("t_max", REVIVAL_ROUND_TRIPS * round_trip_time(self.physical_params()))
            return TimeGrid.uniform(t_max, self.get("points", REVIVAL_POINTS))
        return TimeGrid.uniform(self["t_max"], self["points"])

    def to_text(self) -> str:
        """Config text that parses back to an equal ScenarioConfig."""
        lines = [f"scenario = {self.scenario}"]
        lines += [f"{k} = {_format_value(self.values[k])}" for k in _KEYS if k in self.values and k != "scenario"]
        return "\n".join(lines) + "\n"


def parse_assignments(lines) -> tuple[dict, list[str]]:
    raw, errors = {}, []
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            errors.append(f"line {lineno}: expected 'key = value', got {text!r}")
            continue
        key, value = (part.strip() for part in text.split("=", 1))
        if key not in _KEYS:
            errors.append(f"{key}: unknown key (line {lineno})")
            continue
        raw[key] = value
    return raw, errors


def parse_config(text: str, overrides=()) -> ScenarioConfig:
    """Parse and validate a scenario config.

    ``overrides`` are ``key=value`` strings applied after the file contents.
    Raises :class:`ConfigError` listing every problem found.
    """
    raw, errors = parse_assignments(text.splitlines())
    extra, extra_errors = parse_assignments(overrides)
    raw.update(extra)
    errors += [e.replace("line", "--set") for e in extra_errors]

    scenario = raw.pop("scenario", None)
    if scenario is None:
        errors.append("scenario: missing required key")
    elif scenario not in SCENARIOS:
        errors.append(f"scenario: unknown scenario {scenario!r} (expected one of {', '.join(SCENARIOS)})")
        scenario = None
    sweep = scenario == "sweep"

    values = {}
    for key, text_value in raw.items():
        try:
            values[key] = _convert(key, text_value, sweep)
        except ValueError as exc:
            errors.append(f"{key}: invalid value {text_value!r} ({exc})")

    if values.get("cutoff", "sharp") not in ("sharp", "exponential"):
        errors.append(f"cutoff: must be 'sharp' or 'exponential', got {values['cutoff']!r}")
    if values.get("format", "csv") not in FORMATS:
        errors.append(f"format: must be one of {FORMATS}, got {values['format']!r}")
    if "quad_tol" in values and not values["quad_tol"] <= 1e-2:
        errors.append("quad_tol: must not exceed 1e-2")
    if scenario is not None:
        for key in _REQUIRED[scenario]:
            if key not in raw:
                errors.append(f"{key}: missing required key for scenario {scenario!r}")
        if scenario == "oracle-validate" and not errors:
            try:
                Truncation(values.get("n_modes", 2), values.get("max_photons", 4), values.get("max_phonons", 4))
            except ValueError as exc:
                errors.append(f"truncation: {exc}")
    if errors:
        raise ConfigError(errors)
    return ScenarioConfig(scenario, values)


def read_metadata_config(text: str) -> ScenarioConfig:
    """Rebuild the config from the ``# key = value`` header of an output file."""
    lines = []
    for line in text.splitlines():
        if line.startswith("{"):
            meta = json.loads(line).get("metadata", {})
            lines += [f"{k} = {v}" for k, v in meta.get("config", {}).items()]
            break
        if not line.startswith("#"):
            break
        body = line[1:].strip()
        if " = " in body:
            lines.append(body)
    return parse_config("\n".join(lines))


def sweep_points(cfg: ScenarioConfig):
    """Cartesian product of the swept physical values, first key slowest."""
    axes = [cfg[k] if isinstance(cfg[k], list) else [cfg[k]] for k in SWEEP_KEYS]
    mesh = np.meshgrid(*axes, indexing="ij")
    return [dict(zip(SWEEP_KEYS, (float(m.flat[i]) for m in mesh))) for i in range(mesh[0].size)]
