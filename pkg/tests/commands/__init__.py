# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import tempfile
from pathlib import Path
from typing import Any
from typing import List

from nonreciprocal_dicke import io
from nonreciprocal_dicke.cli import main
from tests import DickeTestCase


class CommandTestCase(DickeTestCase):
    """
    Runs commands through the command line entry point, each test in its
    own output directory.
    """

    def setUp(self) -> None:
        super().setUp()
        scratch = tempfile.TemporaryDirectory(prefix="nrdicke-")
        self.addCleanup(scratch.cleanup)
        self.out = Path(scratch.name)

    def run_command(self, command: str, *options: str) -> int:
        return main([command, "--out", str(self.out), *options])

    def manifest(self) -> Any:
        return io.read_json(self.out / "manifest.json")

    def artifacts(self) -> List[str]:
        return self.manifest()["artifacts"]
