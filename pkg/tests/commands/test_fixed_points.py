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
from nonreciprocal_dicke.fixed_points import FixedPointLabel
from tests.commands import CommandTestCase


class FixedPointsCommandTest(CommandTestCase):
    def test_reciprocal_superradiant_phase(self) -> None:
        code = self.run_command(
            "fixed-points", "--set", "model.lambda=4", "--set", "model.phi=0"
        )
        self.assertEqual(EXIT_OK, code)
        payload = io.read_json(self.out / "fixed_points.json")
        found = io.fixed_points_from_payload(payload)
        self.assertEqual(4.0, found.params.lam)
        self.assertEqual(2, len(found.with_label(FixedPointLabel.SP_ALIGNED)))
        self.assertIs(False, found.normal_phase.stable)
        for point in found.with_label(FixedPointLabel.SP_ALIGNED):
            self.assertTrue(point.stable)
            self.assertAlmostEqual(-0.686, point.state.spin_plus.sz, delta=1e-3)
