# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
from typing import Tuple

import numpy as np

from nonreciprocal_dicke.config import RunConfig
from nonreciprocal_dicke.dynamics import InitialCondition
from nonreciprocal_dicke.dynamics import default_initial_conditions
from nonreciprocal_dicke.model import SystemState


def initial_state(cfg: RunConfig) -> SystemState:
    """
    The starting state named by experiment.initial_condition; random Bloch
    states are drawn from the global seed.
    """
    kind = cfg.experiment.initial_condition
    if kind == "normal-phase":
        return SystemState.normal_phase()
    return default_initial_conditions(InitialCondition(kind), cfg.seed)


def grid(triple: Tuple[float, float, int]) -> np.ndarray:
    """Points of a (min, max, count) range, endpoints included."""
    minimum, maximum, count = triple
    return np.linspace(minimum, maximum, int(count))
