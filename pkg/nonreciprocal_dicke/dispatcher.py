# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import logging
import time
from dataclasses import dataclass
from dataclasses import field
from functools import update_wrapper
from logging import Logger
from pathlib import Path
from typing import Any
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

from . import io
from .config import RunConfig
from .config import resolved
from .exceptions import ConfigError
from .exceptions import DickeError
from .plots import write_plot_script

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2

MANIFEST = "manifest"


@dataclass
class CommandContext:
    """
    What a command needs to run: the resolved configuration, where to put
    its files and the options given on the command line.  Every file
    written through the context is recorded for the manifest.
    """

    cfg: RunConfig
    out: Path
    plot: bool = False
    options: Dict[str, Any] = field(default_factory=dict)
    log: Logger = logger
    artifacts: List[Path] = field(default_factory=list)

    @property
    def fmt(self) -> str:
        return self.cfg.output.format

    def record(self, path: Path) -> Path:
        self.artifacts.append(path)
        return path

    def table(self, name: str, columns: Sequence[str], rows: Any) -> Path:
        return self.record(io.write_table(self.out / name, columns, rows, self.fmt))

    def report(self, name: str, payload: Any) -> Path:
        return self.record(io.write_json(self.out / name, payload))

    def plot_script(self, kind: str, data: str) -> Optional[Path]:
        if not self.plot:
            return None
        if self.fmt != "csv":
            self.log.warning(
                "plot scripts read CSV data; not writing one for %s output", self.fmt
            )
            return None
        return self.record(write_plot_script(self.out, kind, data))


CommandHandler = Callable[[CommandContext], None]


class Subcommand(object):
    """
    Decorator registering a command function.

    The command name is the function name with underscores turned into
    dashes; the first line of its docstring is the command help.  The
    table of commands is populated as the modules of the ``commands``
    package are imported.
    """

    HANDLERS: Dict[str, CommandHandler] = dict()

    def __init__(self, command_function: CommandHandler) -> None:
        name = command_function.__name__.replace("_", "-")
        Subcommand.HANDLERS[name] = command_function
        logger.debug("registered command %s", name)
        self.name = name
        self.function = command_function
        update_wrapper(self, command_function)

    def __call__(self, context: CommandContext) -> None:
        self.function(context)

    @staticmethod
    def summary(name: str) -> str:
        doc = Subcommand.HANDLERS[name].__doc__ or ""
        return doc.strip().splitlines()[0] if doc.strip() else name

    @staticmethod
    def dispatch(
        name: str,
        cfg: RunConfig,
        plot: bool = False,
        options: Optional[Dict[str, Any]] = None,
        log: Optional[Logger] = None,
    ) -> int:
        """
        Run a registered command and write its manifest.

        Arguments:
          name: the command name, as typed on the command line
          cfg: the resolved configuration; output.path receives all files
          plot: also write plot scripts for the data files
          options: command specific options from the command line
          log: an optional logger to receive diagnostic messages

        Returns:
          EXIT_OK, EXIT_USAGE for unknown commands and configuration
          errors, or EXIT_NUMERICAL when the computation failed; the
          manifest then lists the partial outputs
        """
        log = log or logger
        handler = Subcommand.HANDLERS.get(name)
        if handler is None:
            known = ", ".join(sorted(Subcommand.HANDLERS))
            log.error("unknown command %r, expected one of %s", name, known)
            return EXIT_USAGE
        out = Path(cfg.output.path)
        out.mkdir(parents=True, exist_ok=True)
        context = CommandContext(
            cfg=cfg, out=out, plot=plot, options=dict(options or {}), log=log
        )
        log.debug(f"dispatching {name} to {handler} with output in {out}")
        status, error, code = "ok", None, EXIT_OK
        try:
            handler(context)
        except ConfigError as ex:
            status, error, code = "usage", str(ex), EXIT_USAGE
        except DickeError as ex:
            status, error, code = "failed", str(ex), EXIT_NUMERICAL
        if error is not None:
            log.error("%s: %s", name, error)
        io.write_json(
            out / MANIFEST,
            {
                "command": name,
                "status": status,
                "error": error,
                "exit_code": code,
                "artifacts": [path.name for path in context.artifacts],
                "config": resolved(cfg),
                "created": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
            },
        )
        return code
