# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
from nonreciprocal_dicke import io
from nonreciprocal_dicke.commands import initial_state
from nonreciprocal_dicke.dispatcher import CommandContext
from nonreciprocal_dicke.dispatcher import Subcommand
from nonreciprocal_dicke.dynamics import integrate
from nonreciprocal_dicke.dynamics import settle
from nonreciprocal_dicke.exceptions import PhaseLockingError
from nonreciprocal_dicke.spectral import classify_regime
from nonreciprocal_dicke.spectral import fft_spectrum
from nonreciprocal_dicke.spectral import mean_intensity
from nonreciprocal_dicke.spectral import phase_locking_angle


@Subcommand
def simulate(context: CommandContext) -> None:
    """Integrate one trajectory and write its samples."""
    cfg = context.cfg
    trajectory = integrate(cfg.variant, initial_state(cfg), cfg.model, cfg.integrator)
    path = context.table(
        "trajectory", io.TRAJECTORY_COLUMNS, io.trajectory_rows(trajectory)
    )
    context.plot_script("trajectory", path.name)


@Subcommand
def spectrum(context: CommandContext) -> None:
    """Settle onto the attractor, then write spectra, regime and phase locking."""
    cfg = context.cfg
    trajectory = settle(
        cfg.variant,
        initial_state(cfg),
        cfg.model,
        cfg.integrator,
        cfg.settle,
        context.log,
    )
    names = []
    for name in cfg.experiment.observables:
        frequency_spectrum = fft_spectrum(trajectory, name, cfg.spectral.padding)
        rows = io.frequency_rows(frequency_spectrum)
        path = context.table(f"spectrum_{name}", io.FREQUENCY_COLUMNS, rows)
        names.append(path.name)

    payload = io.regime_payload(classify_regime(trajectory, cfg.spectral))
    payload["mean_intensity"] = mean_intensity(trajectory)
    payload["settled"] = trajectory.settled
    try:
        lock = phase_locking_angle(trajectory, cfg.spectral)
        payload["locking"] = {"angle": lock.angle, "residual": lock.residual}
    except PhaseLockingError as ex:
        context.log.info("%s", ex)
        payload["locking"] = None
    context.report("regime", payload)
    context.plot_script("spectrum", repr(names))
