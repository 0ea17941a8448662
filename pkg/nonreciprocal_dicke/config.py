# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Run configuration: one JSON document with a block per concern.

Every default lives in the dataclasses below and is collected in
``DEFAULTS``; ``nonreciprocal-dicke <command> --print-config`` dumps the
fully resolved configuration.  A minimal document is::

    {"model": {"omega_l": 20, "kappa": 12.5, "lambda": 3, "phi": 0.7853981633974483}}

Angles are radians.  The coupling modulus is spelled ``lambda`` in files
and ``lam`` in Python.
"""
import json
import math
from dataclasses import dataclass
from dataclasses import fields
from dataclasses import replace
from pathlib import Path
from typing import Any
from typing import Dict
from typing import Iterable
from typing import Tuple

from .dynamics import IntegratorConfig
from .dynamics import SettleSpec
from .exceptions import ConfigError
from .exceptions import DomainError
from .experiments import AxisSpec
from .experiments import CensusSpec
from .experiments import QuenchSpec
from .experiments import SweepSpec
from .fixed_points import NewtonSpec
from .model import ModelParams
from .model import ModelVariant
from .spectral import OBSERVABLES
from .spectral import SpectralThresholds

FORMATS = ("csv", "json")

INITIAL_CONDITIONS = ("perturbed-np", "random-bloch", "normal-phase")


@dataclass(frozen=True)
class OutputSpec:
    # directory receiving data files, plot scripts and the manifest
    path: str = "out"

    # "csv" writes grids and series as CSV, "json" writes everything as JSON
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise DomainError(
                "output.format", f"expected one of {FORMATS}, got {self.format!r}"
            )


@dataclass(frozen=True)
class ExperimentSpec:
    """
    Inputs of the individual commands.
    """

    # phase-diagram axes as (name, min, max, count)
    axes: Tuple[Tuple[str, float, float, int], Tuple[str, float, float, int]] = (
        ("lambda", 0.0, 6.0, 64),
        ("phi", 0.0, 0.5 * math.pi, 64),
    )

    # phi sweep of the normal-phase spectrum and the EP scan, as (min, max, count)
    phi_sweep: Tuple[float, float, int] = (0.0, 0.5 * math.pi, 512)

    # coupling scan as (min, max, count)
    lambdas: Tuple[float, float, int] = (0.0, 6.0, 121)

    # observables of the spectrum command
    observables: Tuple[str, ...] = ("beta", "sx_p", "sz_p")

    # where simulate, spectrum and quench start
    initial_condition: str = "perturbed-np"

    def __post_init__(self) -> None:
        self.axis_specs()
        for name, triple in (("phi_sweep", self.phi_sweep), ("lambdas", self.lambdas)):
            low, high, count = triple
            if count < 1 or not (math.isfinite(low) and math.isfinite(high)):
                raise DomainError(
                    f"experiment.{name}", "needs finite bounds and a positive count"
                )
        for name in self.observables:
            if name not in OBSERVABLES:
                raise DomainError(
                    "experiment.observables", f"unknown observable {name!r}"
                )
        if self.initial_condition not in INITIAL_CONDITIONS:
            raise DomainError(
                "experiment.initial_condition",
                f"expected one of {INITIAL_CONDITIONS}",
            )

    def axis_specs(self) -> Tuple[AxisSpec, AxisSpec]:
        try:
            first, second = (AxisSpec(*axis) for axis in self.axes)
        except DomainError as ex:
            raise DomainError("experiment.axes", ex.reason) from ex
        return first, second


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams = ModelParams()
    integrator: IntegratorConfig = IntegratorConfig()
    settle: SettleSpec = SettleSpec()
    newton: NewtonSpec = NewtonSpec()
    spectral: SpectralThresholds = SpectralThresholds()
    sweep: SweepSpec = SweepSpec()
    census: CensusSpec = CensusSpec()
    quench: QuenchSpec = QuenchSpec()
    experiment: ExperimentSpec = ExperimentSpec()
    output: OutputSpec = OutputSpec()

    # the model flavour every command works with
    variant: ModelVariant = ModelVariant.FULL

    # global seed of every random draw
    seed: int = 0


BLOCKS = tuple(
    item.name for item in fields(RunConfig) if item.name not in ("variant", "seed")
)

# configuration spelling of attributes that differ from their Python name
_ALIASES = {("model", "lambda"): "lam"}
_SPELLINGS = {(block, attribute): key for (block, key), attribute in _ALIASES.items()}


def _key(block: str, attribute: str) -> str:
    return _SPELLINGS.get((block, attribute), attribute)


def _coerce(value: Any, default: Any, where: str) -> Any:
    """Check a JSON value against the type of its default."""
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
    elif isinstance(default, int):
        if isinstance(value, int) and not isinstance(value, bool):
            return value
    elif isinstance(default, float):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
    elif isinstance(default, str):
        if isinstance(value, str):
            return value
    elif isinstance(default, tuple):
        if isinstance(value, list):
            if len(value) == len(default):
                templates = default
            elif default and all(type(item) is type(default[0]) for item in default):
                templates = (default[0],) * len(value)
            else:
                raise ConfigError(
                    f"expected {len(default)} entries, got {len(value)}", field=where
                )
            return tuple(
                _coerce(item, template, f"{where}[{index}]")
                for index, (item, template) in enumerate(zip(value, templates))
            )
    example = json.dumps(as_json(default))
    raise ConfigError(
        f"expected a value like {example}, got {json.dumps(value)}", field=where
    )


def _build_block(block: str, values: Dict[str, Any]) -> Any:
    default = getattr(RunConfig(), block)
    known = {_key(block, item.name): item.name for item in fields(default)}
    changes = {}
    for key, value in values.items():
        where = f"{block}.{key}"
        if key not in known:
            raise ConfigError(
                f"unknown key {key!r}, expected one of {sorted(known)}", field=where
            )
        changes[known[key]] = _coerce(value, getattr(default, known[key]), where)
    try:
        return replace(default, **changes)
    except DomainError as ex:
        quantity = ex.quantity
        if "." not in quantity:
            quantity = f"{block}.{_key(block, quantity)}"
        raise ConfigError(ex.reason, field=quantity) from ex


def _from_document(document: Dict[str, Any]) -> RunConfig:
    if not isinstance(document, dict):
        raise ConfigError("the configuration must be a JSON object")
    changes: Dict[str, Any] = {}
    for key, value in document.items():
        if key in BLOCKS:
            if not isinstance(value, dict):
                raise ConfigError("expected an object", field=key)
            changes[key] = _build_block(key, value)
        elif key == "variant":
            try:
                changes[key] = ModelVariant(value)
            except ValueError as ex:
                variants = [item.value for item in ModelVariant]
                raise ConfigError(f"expected one of {variants}", field=key) from ex
        elif key == "seed":
            changes[key] = _coerce(value, 0, key)
        else:
            known = sorted(BLOCKS + ("variant", "seed"))
            raise ConfigError(
                f"unknown key {key!r}, expected one of {known}", field=key
            )
    return RunConfig(**changes)


def parse_override(override: str) -> Tuple[str, Any]:
    """
    Split ``block.key=value``; the value is a JSON literal, anything that
    does not parse as JSON is taken as a plain string.
    """
    path, separator, text = override.partition("=")
    if not separator or not path:
        raise ConfigError(f"override {override!r} is not of the form block.key=value")
    try:
        value = json.loads(text)
    except ValueError:
        value = text
    return path.strip(), value


def apply_overrides(
    document: Dict[str, Any], overrides: Iterable[str]
) -> Dict[str, Any]:
    merged = {
        key: dict(value) if isinstance(value, dict) else value
        for key, value in document.items()
    }
    for override in overrides:
        path, value = parse_override(override)
        block, dot, key = path.partition(".")
        if not dot:
            merged[block] = value
            continue
        target = merged.setdefault(block, {})
        if not isinstance(target, dict):
            raise ConfigError("expected an object", field=block)
        target[key] = value
    return merged


def parse_config(text: str, overrides: Iterable[str] = ()) -> RunConfig:
    """
    Parse and validate a JSON configuration, then apply ``--set``
    overrides.

    Raises:
      ConfigError with line and column for malformed JSON, or naming the
      offending field for unknown keys, wrong types and invalid values
    """
    try:
        document = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as ex:
        raise ConfigError(ex.msg, line=ex.lineno, column=ex.colno) from ex
    if not isinstance(document, dict):
        raise ConfigError("the configuration must be a JSON object")
    return _from_document(apply_overrides(document, overrides))


def load_config(path: Path, overrides: Iterable[str] = ()) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as ex:
        raise ConfigError(f"cannot read {path}: {ex}") from ex
    return parse_config(text, overrides)


def as_json(value: Any) -> Any:
    """JSON-ready form of configuration values."""
    if isinstance(value, ModelVariant):
        return value.value
    if isinstance(value, tuple):
        return [as_json(item) for item in value]
    if hasattr(value, "__dataclass_fields__"):
        block = type(value).__name__
        prefix = "model" if block == "ModelParams" else ""
        return {
            _key(prefix, item.name): as_json(getattr(value, item.name))
            for item in fields(value)
        }
    return value


def resolved(cfg: RunConfig) -> Dict[str, Any]:
    """The fully resolved configuration as a JSON document."""
    return as_json(cfg)


DEFAULTS: Dict[str, Any] = resolved(RunConfig())
