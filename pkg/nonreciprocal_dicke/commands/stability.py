# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
from nonreciprocal_dicke import io
from nonreciprocal_dicke.commands import grid
from nonreciprocal_dicke.dispatcher import CommandContext
from nonreciprocal_dicke.dispatcher import Subcommand
from nonreciprocal_dicke.model import ModelVariant
from nonreciprocal_dicke.stability import find_exceptional_points
from nonreciprocal_dicke.stability import min_gap_along
from nonreciprocal_dicke.stability import np_spectrum_closed_form
from nonreciprocal_dicke.stability import np_spectrum_sweep


@Subcommand
def np_spectrum(context: CommandContext) -> None:
    """Normal-phase spectrum along the phi sweep."""
    cfg = context.cfg
    phis = grid(cfg.experiment.phi_sweep)
    reports = np_spectrum_sweep(cfg.model, cfg.variant, phis)
    columns = io.spectrum_sweep_columns(cfg.variant.dimension)
    path = context.table("np_spectrum", columns, io.spectrum_sweep_rows(phis, reports))
    context.plot_script("np-spectrum", path.name)


@Subcommand
def ep_scan(context: CommandContext) -> None:
    """Exceptional points of the adiabatic normal phase along the phi sweep."""
    cfg = context.cfg
    minimum, maximum, count = cfg.experiment.phi_sweep
    points = find_exceptional_points(cfg.model, minimum, maximum, max(int(count), 2))
    phis = grid(cfg.experiment.phi_sweep)
    reports = [
        np_spectrum_closed_form(cfg.model.replace(phi=float(phi))) for phi in phis
    ]
    path = context.table(
        "ep_spectrum",
        io.spectrum_sweep_columns(6),
        io.spectrum_sweep_rows(phis, reports),
    )
    context.report(
        "exceptional_points",
        {
            "params": io.params_payload(cfg.model),
            "points": io.exceptional_points_payload(points),
            # coalescence of the full model over the same sweep, for comparison
            "full_min_gap": min_gap_along(cfg.model, ModelVariant.FULL, phis),
        },
    )
    context.plot_script("np-spectrum", path.name)
