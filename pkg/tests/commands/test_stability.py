# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import math

import numpy as np

from nonreciprocal_dicke import io
from nonreciprocal_dicke.dispatcher import EXIT_OK
from nonreciprocal_dicke.stability import STABILITY_EPSILON
from tests.commands import CommandTestCase


class NormalPhaseSpectrumCommandTest(CommandTestCase):
    def test_phi_sweep(self) -> None:
        code = self.run_command(
            "np-spectrum",
            "--plot",
            "--set",
            "model.lambda=2.5",
            "--sweep",
            "phi",
            "0",
            "1.5707963267948966",
            "16",
        )
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(["np_spectrum.csv", "plot_np_spectrum.py"], self.artifacts())
        columns, rows = io.read_table(self.out / "np_spectrum.csv")
        self.assertEqual(17, len(columns))
        phis, eigenvalues = io.eigenvalues_from_rows(rows)
        np.testing.assert_allclose(
            np.linspace(0.0, 0.5 * math.pi, 16), phis, rtol=0, atol=1e-15
        )
        growth = eigenvalues.real.max(axis=1)
        self.assertLessEqual(growth[0], STABILITY_EPSILON)
        self.assertTrue(np.all(growth[1:-1] > 0.0))

    def test_adiabatic_columns(self) -> None:
        code = self.run_command(
            "np-spectrum", "--variant", "adiabatic", "--sweep", "phi", "0", "1", "4"
        )
        self.assertEqual(EXIT_OK, code)
        columns, rows = io.read_table(self.out / "np_spectrum.csv")
        self.assertEqual(13, len(columns))
        self.assertEqual(4, len(rows))


class ExceptionalPointScanTest(CommandTestCase):
    def test_reference_cavity(self) -> None:
        code = self.run_command("ep-scan", "--set", "model.lambda=2.5")
        self.assertEqual(EXIT_OK, code)
        self.assertEqual(
            ["ep_spectrum.csv", "exceptional_points.json"], self.artifacts()
        )
        report = io.read_json(self.out / "exceptional_points.json")
        points = report["points"]
        self.assertEqual(2, len(points))
        self.assertTrue(all(point["confirmed"] for point in points))
        self.assertAlmostEqual(0.20180, points[0]["phi_over_pi"], delta=1e-4)
        self.assertAlmostEqual(0.29820, points[1]["phi_over_pi"], delta=1e-4)
        self.assertIn("full_min_gap", report)
