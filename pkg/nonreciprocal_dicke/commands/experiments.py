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
from nonreciprocal_dicke.commands import initial_state
from nonreciprocal_dicke.dispatcher import CommandContext
from nonreciprocal_dicke.dispatcher import Subcommand
from nonreciprocal_dicke.experiments import adiabatic_consistency_check
from nonreciprocal_dicke.experiments import attractor_census
from nonreciprocal_dicke.experiments import intensity_jump
from nonreciprocal_dicke.experiments import lambda_scan as scan_lambda
from nonreciprocal_dicke.experiments import quench_phi
from nonreciprocal_dicke.experiments import sweep


@Subcommand
def phase_diagram(context: CommandContext) -> None:
    """Label every cell of a two-parameter grid."""
    cfg = context.cfg
    axes = cfg.experiment.axis_specs()
    diagram = sweep(
        cfg.model,
        axes,
        cfg.variant,
        cfg.seed,
        cfg.integrator,
        cfg.settle,
        cfg.newton,
        cfg.spectral,
        cfg.sweep,
    )
    path = context.table(
        "phase_diagram",
        io.phase_diagram_columns(axes),
        io.phase_diagram_rows(diagram),
    )
    failures = sum(1 for cell in diagram.cells if cell.failure)
    if failures:
        context.log.warning("%d of %d cells unresolved", failures, len(diagram.cells))
    context.plot_script("phase-diagram", path.name)


@Subcommand
def quench(context: CommandContext) -> None:
    """Relax, flip phi -> -phi, relax again and test the orbit for PT invariance."""
    cfg = context.cfg
    report = quench_phi(
        cfg.model,
        cfg.integrator,
        cfg.integrator,
        cfg.variant,
        initial_state(cfg),
        cfg.settle,
        cfg.spectral,
        cfg.quench,
    )
    context.report("quench", io.quench_payload(report))


@Subcommand
def census(context: CommandContext) -> None:
    """Cluster the attractors reached from random initial conditions."""
    cfg = context.cfg
    report = attractor_census(
        cfg.model,
        cfg.census.initial_conditions,
        cfg.seed,
        cfg.variant,
        cfg.integrator,
        cfg.settle,
        cfg.spectral,
        cfg.census,
    )
    context.report("census", io.census_payload(report))


@Subcommand
def consistency(context: CommandContext) -> None:
    """Compare the adiabatic and the full model."""
    cfg = context.cfg
    samples = int(context.options.get("samples") or 100)
    report = adiabatic_consistency_check(cfg.model, samples, cfg.seed)
    context.report("consistency", io.consistency_payload(report))


@Subcommand
def lambda_scan(context: CommandContext) -> None:
    """Regime, intensity and light peaks along a coupling scan."""
    cfg = context.cfg
    scan = scan_lambda(
        cfg.model,
        grid(cfg.experiment.lambdas),
        cfg.variant,
        cfg.integrator,
        cfg.settle,
        cfg.spectral,
        cfg.sweep.threads,
    )
    path = context.table("lambda_scan", io.SCAN_COLUMNS, io.scan_rows(scan))
    if sum(1 for point in scan if point.failure is None) >= 3:
        context.report("intensity_jump", io.jump_payload(intensity_jump(scan)))
    context.plot_script("lambda-scan", path.name)
