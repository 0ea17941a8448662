# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import json
import math

from nonreciprocal_dicke.config import DEFAULTS
from nonreciprocal_dicke.config import RunConfig
from nonreciprocal_dicke.config import load_config
from nonreciprocal_dicke.config import parse_config
from nonreciprocal_dicke.config import parse_override
from nonreciprocal_dicke.config import resolved
from nonreciprocal_dicke.exceptions import ConfigError
from nonreciprocal_dicke.model import ModelVariant
from tests import DickeTestCase
from tests import output_directory


class ParseConfigTest(DickeTestCase):
    def test_empty_document_is_the_defaults(self) -> None:
        self.assertEqual(RunConfig(), parse_config(""))
        self.assertEqual(RunConfig(), parse_config("{}"))

    def test_defaults_round_trip(self) -> None:
        self.assertEqual(RunConfig(), parse_config(json.dumps(DEFAULTS)))
        self.assertEqual(20.0, DEFAULTS["model"]["omega_l"])
        self.assertIn("lambda", DEFAULTS["model"])
        self.assertNotIn("lam", DEFAULTS["model"])

    def test_model_block(self) -> None:
        document = {
            "model": {
                "omega_l": 20,
                "kappa": 12.5,
                "lambda": 3,
                "phi": 0.7853981633974483,
            },
            "variant": "adiabatic",
        }
        cfg = parse_config(json.dumps(document))
        self.assertEqual(3.0, cfg.model.lam)
        self.assertIsInstance(cfg.model.lam, float)
        self.assertAlmostEqual(0.25 * math.pi, cfg.model.phi)
        self.assertIs(ModelVariant.ADIABATIC, cfg.variant)

    def test_invalid_value_names_the_field(self) -> None:
        with self.assertRaises(ConfigError) as raised:
            parse_config('{"model": {"kappa": -1}}')
        self.assertEqual("model.kappa", raised.exception.field)
        self.assertIn("model.kappa", str(raised.exception))

    def test_unknown_key_names_the_field(self) -> None:
        with self.assertRaises(ConfigError) as raised:
            parse_config('{"model": {"lamda": 3}}')
        self.assertEqual("model.lamda", raised.exception.field)
        self.assertIn("'lambda'", str(raised.exception))
        with self.assertRaises(ConfigError) as raised:
            parse_config('{"modle": {}}')
        self.assertEqual("modle", raised.exception.field)

    def test_wrong_type(self) -> None:
        with self.assertRaises(ConfigError) as raised:
            parse_config('{"integrator": {"t_final": "long"}}')
        self.assertEqual("integrator.t_final", raised.exception.field)
        with self.assertRaises(ConfigError) as raised:
            parse_config('{"seed": 1.5}')
        self.assertEqual("seed", raised.exception.field)
        with self.assertRaises(ConfigError):
            parse_config('{"variant": "exact"}')

    def test_malformed_json_reports_the_position(self) -> None:
        with self.assertRaises(ConfigError) as raised:
            parse_config('{\n  "model": {"lambda": 3,}\n}')
        self.assertEqual(2, raised.exception.line)
        self.assertIsNotNone(raised.exception.column)
        self.assertIn("line 2", str(raised.exception))
        with self.assertRaises(ConfigError):
            parse_config("[1, 2]")

    def test_cross_field_checks(self) -> None:
        with self.assertRaises(ConfigError) as raised:
            parse_config('{"integrator": {"t_transient": 5000.0}}')
        self.assertTrue(raised.exception.field.startswith("integrator."))
        with self.assertRaises(ConfigError) as raised:
            parse_config(
                '{"experiment": {"axes": [["omega", 0, 1, 2], ["phi", 0, 1, 2]]}}'
            )
        self.assertEqual("experiment.axes", raised.exception.field)

    def test_axes(self) -> None:
        cfg = parse_config(
            '{"experiment": {"axes": [["kappa", 0, 20, 8], ["phi", 0, 1.5, 16]]}}'
        )
        first, second = cfg.experiment.axis_specs()
        self.assertEqual(
            ("kappa", 0.0, 20.0, 8),
            (first.name, first.minimum, first.maximum, first.count),
        )
        self.assertEqual(16, second.count)

    def test_variable_length_tuples(self) -> None:
        cfg = parse_config('{"experiment": {"observables": ["beta"]}}')
        self.assertEqual(("beta",), cfg.experiment.observables)
        with self.assertRaises(ConfigError):
            parse_config('{"experiment": {"observables": ["photons"]}}')


class OverrideTest(DickeTestCase):
    def test_json_literals(self) -> None:
        self.assertEqual(("model.lambda", 3), parse_override("model.lambda=3"))
        self.assertEqual(
            ("experiment.lambdas", [0, 1, 5]),
            parse_override("experiment.lambdas=[0, 1, 5]"),
        )

    def test_plain_string_fallback(self) -> None:
        self.assertEqual(
            ("output.format", "json"), parse_override("output.format=json")
        )
        self.assertEqual(
            ("output.path", "runs/a=b"), parse_override("output.path=runs/a=b")
        )

    def test_malformed(self) -> None:
        for text in ("model.lambda", "=3"):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    parse_override(text)

    def test_overrides_win_over_the_document(self) -> None:
        overrides = ["model.lambda=2.5", "seed=7", "variant=adiabatic"]
        cfg = parse_config('{"model": {"lambda": 1, "kappa": 3}}', overrides)
        self.assertEqual(2.5, cfg.model.lam)
        self.assertEqual(3.0, cfg.model.kappa)
        self.assertEqual(7, cfg.seed)
        self.assertIs(ModelVariant.ADIABATIC, cfg.variant)

    def test_override_errors_name_the_field(self) -> None:
        with self.assertRaises(ConfigError) as raised:
            parse_config("", ["model.gamma_down=-0.1"])
        self.assertEqual("model.gamma_down", raised.exception.field)


class LoadConfigTest(DickeTestCase):
    def test_file(self) -> None:
        with output_directory() as directory:
            path = directory / "run.json"
            document = {"model": {"lambda": 2.0}, "output": {"format": "json"}}
            path.write_text(json.dumps(document), encoding="utf-8")
            cfg = load_config(path, ["model.phi=0.5"])
        self.assertEqual(2.0, cfg.model.lam)
        self.assertEqual(0.5, cfg.model.phi)
        self.assertEqual("json", cfg.output.format)

    def test_missing_file(self) -> None:
        with output_directory() as directory:
            with self.assertRaises(ConfigError):
                load_config(directory / "absent.json")

    def test_resolved_reparses(self) -> None:
        cfg = parse_config(
            "",
            ["model.lambda=3.5", "experiment.phi_sweep=[0, 1, 9]", "census.threads=2"],
        )
        self.assertEqual(cfg, parse_config(json.dumps(resolved(cfg))))
