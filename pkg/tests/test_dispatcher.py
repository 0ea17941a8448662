# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import json
from io import StringIO
from unittest.mock import patch

from nonreciprocal_dicke import Subcommand
from nonreciprocal_dicke import io
from nonreciprocal_dicke.cli import main
from nonreciprocal_dicke.config import RunConfig
from nonreciprocal_dicke.config import parse_config
from nonreciprocal_dicke.dispatcher import CommandContext
from nonreciprocal_dicke.dispatcher import EXIT_NUMERICAL
from nonreciprocal_dicke.dispatcher import EXIT_OK
from nonreciprocal_dicke.dispatcher import EXIT_USAGE
from nonreciprocal_dicke.exceptions import ConfigError
from nonreciprocal_dicke.exceptions import NewtonError
from tests import DickeTestCase
from tests import output_directory

COMMANDS = [
    "census",
    "consistency",
    "ep-scan",
    "fixed-points",
    "lambda-scan",
    "np-spectrum",
    "phase-diagram",
    "quench",
    "simulate",
    "spectrum",
]


class SubcommandTest(DickeTestCase):
    def setUp(self) -> None:
        super().setUp()
        self.registered = []

    def tearDown(self) -> None:
        for name in self.registered:
            Subcommand.HANDLERS.pop(name, None)
        super().tearDown()

    def register(self, function) -> None:
        Subcommand(function)
        self.registered.append(function.__name__.replace("_", "-"))

    def config(self, directory, *overrides: str) -> RunConfig:
        path = f"output.path={json.dumps(str(directory))}"
        return parse_config("", [path, *overrides])

    def test_registry(self) -> None:
        self.assertEqual(COMMANDS, sorted(Subcommand.HANDLERS))
        self.assertEqual(
            "Integrate one trajectory and write its samples.",
            Subcommand.summary("simulate"),
        )

    def test_unknown_command(self) -> None:
        with output_directory() as directory:
            code = Subcommand.dispatch("bifurcate", self.config(directory))
            self.assertEqual(EXIT_USAGE, code)
            self.assertFalse((directory / "manifest.json").exists())

    def test_numerical_failure_keeps_partial_outputs(self) -> None:
        def half_written(context: CommandContext) -> None:
            """Write one table, then fail."""
            context.table("partial", ["x"], [[1.0]])
            raise NewtonError(50, 0.5, "no convergence")

        self.register(half_written)
        with output_directory() as directory:
            code = Subcommand.dispatch("half-written", self.config(directory))
            self.assertEqual(EXIT_NUMERICAL, code)
            manifest = io.read_json(directory / "manifest.json")
            self.assertTrue((directory / "partial.csv").exists())
        self.assertEqual("failed", manifest["status"])
        self.assertEqual(EXIT_NUMERICAL, manifest["exit_code"])
        self.assertEqual(["partial.csv"], manifest["artifacts"])
        self.assertIn("no convergence", manifest["error"])
        self.assertEqual("half-written", manifest["command"])

    def test_configuration_error_in_a_command(self) -> None:
        def bad_options(context: CommandContext) -> None:
            raise ConfigError("not supported", field="--sweep")

        self.register(bad_options)
        with output_directory() as directory:
            code = Subcommand.dispatch("bad-options", self.config(directory))
            self.assertEqual(EXIT_USAGE, code)
            manifest = io.read_json(directory / "manifest.json")
        self.assertEqual("usage", manifest["status"])

    def test_success_manifest(self) -> None:
        def summary_only(context: CommandContext) -> None:
            context.report("summary", {"value": 1})
            self.assertIsNone(context.plot_script("trajectory", "summary.json"))

        self.register(summary_only)
        with output_directory() as directory:
            cfg = self.config(directory, "model.lambda=2")
            self.assertEqual(EXIT_OK, Subcommand.dispatch("summary-only", cfg))
            manifest = io.read_json(directory / "manifest.json")
        self.assertEqual("ok", manifest["status"])
        self.assertIsNone(manifest["error"])
        self.assertEqual(["summary.json"], manifest["artifacts"])
        self.assertEqual(2.0, manifest["config"]["model"]["lambda"])

    def test_plot_scripts_need_csv(self) -> None:
        def json_output(context: CommandContext) -> None:
            self.assertIsNone(context.plot_script("trajectory", "trajectory.json"))

        self.register(json_output)
        with output_directory() as directory:
            cfg = self.config(directory, "output.format=json")
            with self.assertLogs("nonreciprocal_dicke.dispatcher", "WARNING"):
                code = Subcommand.dispatch("json-output", cfg, plot=True)
        self.assertEqual(EXIT_OK, code)


class MainTest(DickeTestCase):
    def test_print_config(self) -> None:
        argv = [
            "np-spectrum",
            "--print-config",
            "--set",
            "model.lambda=2.5",
            "--sweep",
            "phi",
            "0",
            "1",
            "8",
            "--threads",
            "3",
        ]
        with patch("sys.stdout", new_callable=StringIO) as stdout:
            code = main(argv)
        self.assertEqual(EXIT_OK, code)
        document = json.loads(stdout.getvalue())
        self.assertEqual(2.5, document["model"]["lambda"])
        self.assertEqual([0.0, 1.0, 8], document["experiment"]["phi_sweep"])
        self.assertEqual(3, document["sweep"]["threads"])
        self.assertEqual(3, document["census"]["threads"])

    def test_usage_errors(self) -> None:
        argvs = (
            [],
            ["bifurcate"],
            ["simulate", "--bogus"],
            ["np-spectrum", "--sweep", "lambda", "0", "1", "8"],
            ["np-spectrum", "--sweep", "phi", "0", "one", "8"],
            ["simulate", "--set", "model.kappa=-1"],
            ["simulate", "--set", "model"],
        )
        for argv in argvs:
            with self.subTest(argv=argv):
                with patch("sys.stderr", new_callable=StringIO) as stderr:
                    self.assertEqual(EXIT_USAGE, main(argv))
                self.assertIn("nonreciprocal-dicke:", stderr.getvalue())

    def test_config_file(self) -> None:
        with output_directory() as directory:
            path = directory / "run.json"
            path.write_text('{"model": {"lambda": 1.5}, "seed": 4}', encoding="utf-8")
            argv = ["simulate", "--config", str(path), "--seed", "9", "--print-config"]
            with patch("sys.stdout", new_callable=StringIO) as stdout:
                self.assertEqual(EXIT_OK, main(argv))
        document = json.loads(stdout.getvalue())
        self.assertEqual(1.5, document["model"]["lambda"])
        self.assertEqual(9, document["seed"])
