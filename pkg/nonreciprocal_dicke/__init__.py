# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
from importlib import import_module
from pathlib import Path
from pkgutil import iter_modules

__all__ = (
    "BlochVector",
    "DickeError",
    "ModelParams",
    "ModelVariant",
    "RunConfig",
    "Subcommand",
    "SystemState",
    "integrate",
    "parse_config",
)

from .config import RunConfig
from .config import parse_config
from .dispatcher import Subcommand
from .dynamics import integrate
from .exceptions import DickeError
from .model import BlochVector
from .model import ModelParams
from .model import ModelVariant
from .model import SystemState

# import each command module to register its subcommands with
# Subcommand; the command line then dispatches by name
commands_dir = Path(__file__).parent / "commands"
for info in iter_modules([str(commands_dir)]):
    if not info.name.startswith("_"):  # pragma: no cover
        import_module(f"{__name__}.commands.{info.name}")
