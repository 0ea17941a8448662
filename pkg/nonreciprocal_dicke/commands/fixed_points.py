# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
from nonreciprocal_dicke import io
from nonreciprocal_dicke.dispatcher import CommandContext
from nonreciprocal_dicke.dispatcher import Subcommand
from nonreciprocal_dicke.fixed_points import find_all
from nonreciprocal_dicke.stability import spectrum_at


@Subcommand
def fixed_points(context: CommandContext) -> None:
    """Find, classify and linearize every fixed point."""
    cfg = context.cfg
    found = find_all(
        cfg.model, cfg.variant, cfg.newton, rng_seed=cfg.seed, log=context.log
    )
    for point in found.points:
        spectrum_at(point, cfg.model, cfg.variant)
    context.report("fixed_points", io.fixed_points_payload(found))
