# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import math
import os
import tempfile
import unittest
from contextlib import contextmanager
from pathlib import Path
from typing import Generator
from typing import Optional
from typing import Sequence
from unittest import TestCase
from unittest.mock import patch

import numpy as np
from scipy.optimize import linear_sum_assignment

from nonreciprocal_dicke.dynamics import IntegratorConfig
from nonreciprocal_dicke.dynamics import Trajectory
from nonreciprocal_dicke.model import ModelParams
from nonreciprocal_dicke.model import ModelVariant

# the long-running acceptance checks (full sweeps, censuses) only run when
# NRDICKE_SLOW is set; they take minutes
SLOW = "NRDICKE_SLOW" in os.environ

slow = unittest.skipUnless(SLOW, "set NRDICKE_SLOW to run long integrations")

# the cavity of the reference figures: omega_l = 20, kappa = 12.5, in units of omega0
REFERENCE = ModelParams(omega_l=20.0, kappa=12.5)

QUARTER = 0.25 * math.pi

# short runs for tests that only need a few thousand samples
SHORT = IntegratorConfig(t_final=300.0, t_transient=50.0, sample_dt=0.05, dt=0.01)


class DickeTestCase(TestCase):
    def setUp(self) -> None:
        super().setUp()
        self.rng = np.random.default_rng(20260101)
        # settle() retries without delay; keep the retry package from sleeping at all
        self.sleep_patch = patch("retry.api.time.sleep", autospec=True)
        self.sleep_mock = self.sleep_patch.start()

    def tearDown(self) -> None:
        self.sleep_patch.stop()
        super().tearDown()

    def params(self, **changes: float) -> ModelParams:
        return REFERENCE.replace(**changes)

    def random_ball_state(self, radius: float = 1.0) -> np.ndarray:
        """Flat 8-vector with both spins inside the Bloch ball and a modest field."""
        y = np.zeros(8)
        for species in range(2):
            direction = self.rng.normal(size=3)
            length = radius * self.rng.uniform() ** (1 / 3) / np.linalg.norm(direction)
            y[3 * species : 3 * species + 3] = length * direction
        y[6:8] = self.rng.normal(scale=0.1, size=2)
        return y

    def assertSameMultiset(
        self, a: Sequence[complex], b: Sequence[complex], tolerance: float
    ) -> None:
        a = np.asarray(a, dtype=complex)
        b = np.asarray(b, dtype=complex)
        self.assertEqual(a.shape, b.shape)
        cost = np.abs(a[:, None] - b[None, :])
        rows, columns = linear_sum_assignment(cost)
        worst = float(np.max(cost[rows, columns]))
        self.assertLessEqual(worst, tolerance, f"{a} vs {b}")


def synthetic_trajectory(
    beta: np.ndarray, sample_dt: float = 0.05, spins: Optional[np.ndarray] = None
) -> Trajectory:
    """A FULL-variant trajectory with a prescribed field and optional spin columns."""
    n = beta.size
    states = np.zeros((n, 8))
    states[:, 2] = states[:, 5] = -1.0
    if spins is not None:
        states[:, :6] = spins
    states[:, 6], states[:, 7] = beta.real, beta.imag
    times = sample_dt * np.arange(n)
    config = IntegratorConfig(
        t_final=float(times[-1]), t_transient=0.0, sample_dt=sample_dt, dt=sample_dt
    )
    return Trajectory(
        params=REFERENCE,
        variant=ModelVariant.FULL,
        times=times,
        states=states,
        config=config,
    )


@contextmanager
def output_directory() -> Generator[Path, None, None]:
    with tempfile.TemporaryDirectory(prefix="nrdicke-") as name:
        yield Path(name)
