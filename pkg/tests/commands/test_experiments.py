# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
from nonreciprocal_dicke import io
from nonreciprocal_dicke.dispatcher import EXIT_OK
from nonreciprocal_dicke.experiments import PhaseLabel
from nonreciprocal_dicke.model import ModelVariant
from tests.commands import CommandTestCase

# a decaying, weakly coupled model: every orbit relaxes to the normal phase
RELAXING = (
    "--variant",
    "adiabatic",
    "--set",
    "model.lambda=1",
    "--set",
    "model.gamma_down=0.5",
    "--set",
    "integrator.t_final=200.0",
    "--set",
    "integrator.t_transient=100.0",
    "--set",
    "integrator.sample_dt=0.05",
)



class PhaseDiagramCommandTest(CommandTestCase):
    def test_normal_phase_cells(self) -> None:
        axes = ("lambda", "0.5", "1", "2", "phi", "0", "0.3", "2")
        code = self.run_command("phase-diagram", "--plot", *RELAXING, "--axes", *axes)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(
            ["phase_diagram.csv", "plot_phase_diagram.py"], self.artifacts()
        )
        columns, rows = io.read_table(self.out / "phase_diagram.csv")
        self.assertEqual(
            ["lambda", "phi", "label", "max_growth", "mean_intensity", "n_attractors"],
            columns,
        )
        self.assertEqual(
            [[0.5, 0], [0.5, 0.3], [1, 0], [1, 0.3]], [row[:2] for row in rows]
        )
        self.assertEqual(["NP"] * 4, [row[2] for row in rows])
        self.assertTrue(all(PhaseLabel(row[2]) is PhaseLabel.NP for row in rows))


class QuenchCommandTest(CommandTestCase):
    def test_normal_phase(self) -> None:
        code = self.run_command(
            "quench", *RELAXING, "--set", "experiment.initial_condition=normal-phase"
        )
        self.assertEqual(EXIT_OK, code)
        report = io.read_json(self.out / "quench.json")
        self.assertEqual("PT_INVARIANT", report["verdict"])
        self.assertEqual(0.0, report["distance"])
        self.assertEqual("STATIONARY", report["pre"]["regime"])


class CensusCommandTest(CommandTestCase):
    def test_single_attractor(self) -> None:
        self.assertEqual(EXIT_OK, self.run_command("census", *RELAXING, "--n-ic", "3"))
        report = io.read_json(self.out / "census.json")
        self.assertEqual(1, report["cluster_count"])
        self.assertEqual(3, report["n_initial_conditions"])
        self.assertIsNone(report["clusters"][0]["signature"][0])
        self.assertEqual("lock_angle", report["signature_names"][0])

    def test_needs_two_initial_conditions(self) -> None:
        self.assertEqual(2, self.run_command("census", *RELAXING, "--n-ic", "1"))
        self.assertEqual("failed", self.manifest()["status"])


class ConsistencyCommandTest(CommandTestCase):
    def test_report(self) -> None:
        code = self.run_command(
            "consistency",
            "--set",
            "model.lambda=2.5",
            "--set",
            "model.phi=0.7853981633974483",
            "--samples",
            "20",
        )
        self.assertEqual(EXIT_OK, code)
        report = io.read_json(self.out / "consistency.json")
        self.assertEqual(20, report["n_samples"])
        self.assertLessEqual(report["identity_deviation"], 1e-12)
        self.assertEqual(
            [1.0, 2.0, 5.0, 10.0], [item["scale"] for item in report["comparisons"]]
        )
        params = io.params_from_payload(report["params"])
        self.assertEqual(2.5, params.lam)


class LambdaScanCommandTest(CommandTestCase):
    def test_scan_and_jump(self) -> None:
        code = self.run_command(
            "lambda-scan", "--plot", *RELAXING, "--lambdas", "0", "1", "3"
        )
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(
            ["lambda_scan.csv", "intensity_jump.json", "plot_lambda_scan.py"],
            self.artifacts(),
        )
        columns, rows = io.read_table(self.out / "lambda_scan.csv")
        self.assertEqual("lambda", columns[0])
        self.assertEqual([0, 0.5, 1], [row[0] for row in rows])
        self.assertEqual(["NP"] * 3, [row[1] for row in rows])
        variant = self.manifest()["config"]["variant"]
        self.assertEqual(ModelVariant.ADIABATIC.value, variant)
