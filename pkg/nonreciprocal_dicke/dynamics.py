# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import logging
import math
from dataclasses import dataclass
from dataclasses import replace
from enum import Enum
from logging import Logger
from typing import Any
from typing import Dict
from typing import Optional

import numpy as np
from retry import retry
from scipy.integrate import solve_ivp

from .exceptions import DomainError
from .exceptions import IntegrationError
from .exceptions import SteadyStateNotReachedError
from .model import BlochVector
from .model import ModelParams
from .model import ModelVariant
from .model import STATE_DIMENSION
from .model import SystemState
from .model import VectorField
from .model import field_response
from .model import vector_field

logger = logging.getLogger(__name__)

# slack on |s|^2 <= 1 when accepting initial conditions
BALL_SLACK = 1e-5

# magnitude of the sx+ kick of the perturbed normal phase
NP_PERTURBATION = 1e-3

METHODS = ("rk45", "dop853", "rk4")


@dataclass(frozen=True)
class IntegratorConfig:
    """
    How one trajectory is integrated and sampled.

    Times are in units of 1 / omega0.  The default transient is long enough
    for spin decay rates as small as 0.02 to relax.
    """

    # "rk45" and "dop853" are adaptive embedded pairs, "rk4" is fixed step
    method: str = "rk45"

    # the fixed step, or the first trial step of the adaptive methods
    dt: float = 0.01

    # adaptive tolerances
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10

    # total integrated time
    t_final: float = 2000.0

    # prefix discarded by steady-state analysis
    t_transient: float = 1000.0

    # output sampling interval
    sample_dt: float = 0.01

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise DomainError(
                "integrator.method",
                f"expected one of {METHODS}, got {self.method!r}",
            )
        if not 0 <= self.t_transient < self.t_final:
            raise DomainError(
                "integrator.t_transient", "must satisfy 0 <= t_transient < t_final"
            )
        if self.dt <= 0 or self.sample_dt < self.dt:
            raise DomainError(
                "integrator.sample_dt", "must satisfy 0 < dt <= sample_dt"
            )
        if self.sample_dt > self.t_final:
            raise DomainError("integrator.sample_dt", "must not exceed t_final")
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise DomainError("integrator.tolerances", "must be positive")


@dataclass(frozen=True)
class SettleSpec:
    """
    Defines how long ``settle`` keeps extending a trajectory until the
    steady-state post-condition holds.
    """

    # the number of integration segments to attempt
    attempts: int = 3

    # allowed change of per-coordinate mean and half-range between the two
    # halves of the post-transient window, relative to the half-range
    tolerance: float = 2e-2

    # half-ranges below this scale are measured against it instead
    floor: float = 1e-3


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Uniformly sampled time series of full states.

    ``states`` has one row of 8 flat coordinates per sample; spin-only
    variants store a zero field (see ``field`` for the enslaved one).
    """

    params: ModelParams
    variant: ModelVariant
    times: np.ndarray
    states: np.ndarray
    config: IntegratorConfig
    settled: Optional[bool] = None

    def __post_init__(self) -> None:
        if self.states.shape != (self.times.size, STATE_DIMENSION):
            raise DomainError(
                "trajectory", f"{self.states.shape} states for {self.times.size} times"
            )

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def sample_dt(self) -> float:
        return self.config.sample_dt

    @property
    def duration(self) -> float:
        return float(self.times[-1] - self.times[0]) if len(self) else 0.0

    def state(self, index: int) -> SystemState:
        return SystemState.from_array(self.states[index])

    @property
    def final_state(self) -> SystemState:
        return self.state(-1)

    def steady(self) -> "Trajectory":
        """The samples after the configured transient."""
        start = self.times[0] + self.config.t_transient
        mask = self.times >= start - 0.5 * self.sample_dt
        return replace(self, times=self.times[mask], states=self.states[mask])

    def field(self) -> np.ndarray:
        """
        Complex light amplitude per sample; spin-only variants report the
        field enslaved to their spins.
        """
        p = self.params
        if self.variant is ModelVariant.FULL:
            return self.states[:, 6] + 1j * self.states[:, 7]
        if self.variant is ModelVariant.ADIABATIC:
            rotation = np.exp(1j * p.phi)
            drive = self.states[:, 0] * rotation + self.states[:, 3] / rotation
            return -0.5j * p.lam * field_response(p) * drive
        scale = -p.lam * math.sin(2.0 * p.phi) / (2.0 * p.omega_l)
        amplitude = scale * self.states[:, 0]
        return amplitude * np.exp(1j * (0.5 * math.pi - p.phi))


class InitialCondition(Enum):
    PERTURBED_NP = "perturbed-np"
    RANDOM_BLOCH = "random-bloch"


def default_initial_conditions(kind: InitialCondition, seed: int = 0) -> SystemState:
    """
    Reproducible starting states.

    The perturbed normal phase kicks sx+ by a fixed 1e-3 and ignores the
    seed; random Bloch states draw both spins uniformly on the unit sphere.
    """
    kind = InitialCondition(kind)
    if kind is InitialCondition.PERTURBED_NP:
        return SystemState(
            BlochVector(NP_PERTURBATION, 0.0, -1.0), BlochVector(0.0, 0.0, -1.0), 0j
        )
    rng = np.random.default_rng(seed)
    spins = []
    for _ in range(2):
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        spins.append(BlochVector(*map(float, direction)))
    return SystemState(spins[0], spins[1], 0j)


def sample_times(cfg: IntegratorConfig) -> np.ndarray:
    count = int(math.floor(cfg.t_final / cfg.sample_dt + 1e-9)) + 1
    return cfg.sample_dt * np.arange(count)


def _check_initial_state(variant: ModelVariant, y0: np.ndarray) -> None:
    if not np.all(np.isfinite(y0)):
        raise DomainError("initial state", "contains non-finite entries")
    species = 1 if variant is ModelVariant.REDUCED_PLUS else 2
    for index in range(species):
        norm_squared = float(np.sum(y0[3 * index : 3 * index + 3] ** 2))
        if norm_squared > 1.0 + BALL_SLACK:
            raise DomainError(
                "initial state",
                f"spin {index} lies outside the Bloch ball (|s|^2={norm_squared:.6g})",
            )


def _integrate_rk4(
    f: VectorField, y0: np.ndarray, times: np.ndarray, cfg: IntegratorConfig
) -> np.ndarray:
    span = float(times[-1])
    steps = max(1, int(math.ceil(span / cfg.dt - 1e-9)))
    h = span / steps
    grid = h * np.arange(steps + 1)
    path = np.empty((steps + 1, y0.size))
    path[0] = y = y0.copy()
    for index in range(steps):
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(float(grid[index + 1]), "rk4", "non-finite state")
        path[index + 1] = y
    # dense output by linear interpolation between steps
    return np.column_stack(
        [np.interp(times, grid, path[:, column]) for column in range(y0.size)]
    )


def _integrate_adaptive(
    f: VectorField, y0: np.ndarray, times: np.ndarray, cfg: IntegratorConfig
) -> np.ndarray:
    method = "RK45" if cfg.method == "rk45" else "DOP853"
    span = float(times[-1])
    solution = solve_ivp(
        lambda t, y: f(y),
        (0.0, span),
        y0,
        method=method,
        t_eval=times,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        first_step=min(cfg.dt, span),
    )
    if solution.status != 0:
        failed_at = float(solution.t[-1]) if solution.t.size else 0.0
        raise IntegrationError(failed_at, cfg.method, solution.message)
    samples = solution.y.T
    finite = np.all(np.isfinite(samples), axis=1)
    if not np.all(finite):
        failed_at = float(times[np.argmin(finite)])
        raise IntegrationError(failed_at, cfg.method, "non-finite state")
    logger.debug("%s: %d evaluations for t in [0, %g]", method, solution.nfev, span)
    return samples


def integrate(
    variant: ModelVariant,
    x0: SystemState,
    p: ModelParams,
    cfg: IntegratorConfig = IntegratorConfig(),
) -> Trajectory:
    """
    Integrate ``variant`` from ``x0`` and sample uniformly every
    ``cfg.sample_dt`` on [0, t_final].

    Raises:
      DomainError if x0 is non-finite or outside the Bloch ball
      IntegrationError on step-size underflow or a non-finite state
    """
    y0 = variant.coordinates(x0)
    _check_initial_state(variant, y0)
    times = sample_times(cfg)
    f = vector_field(variant, p)
    if cfg.method == "rk4":
        samples = _integrate_rk4(f, y0, times, cfg)
    else:
        samples = _integrate_adaptive(f, y0, times, cfg)
    states = np.zeros((times.size, STATE_DIMENSION))
    states[:, : variant.dimension] = samples
    return Trajectory(params=p, variant=variant, times=times, states=states, config=cfg)


def window_drift(trajectory: Trajectory, floor: float = SettleSpec.floor) -> float:
    """
    Largest change of per-coordinate mean and half-range between the two
    halves of the post-transient window, in units of that coordinate's
    half-range over the whole window (but at least ``floor``).
    """
    steady = trajectory.steady().states
    half = steady.shape[0] // 2
    if half < 2:
        return 0.0
    first, second = steady[:half], steady[half : 2 * half]

    def half_range(block: np.ndarray) -> np.ndarray:
        return 0.5 * (block.max(axis=0) - block.min(axis=0))

    scale = np.maximum(half_range(steady), floor)
    mean_drift = np.abs(first.mean(axis=0) - second.mean(axis=0))
    range_drift = np.abs(half_range(first) - half_range(second))
    return float(np.max(np.maximum(mean_drift, range_drift) / scale))


def ensure_settled(
    trajectory: Trajectory, spec: SettleSpec, attempt: int = 1
) -> None:
    drift = window_drift(trajectory, spec.floor)
    if drift > spec.tolerance:
        raise SteadyStateNotReachedError(attempt, drift, spec.tolerance)


def settle(
    variant: ModelVariant,
    x0: SystemState,
    p: ModelParams,
    cfg: IntegratorConfig = IntegratorConfig(),
    spec: SettleSpec = SettleSpec(),
    log: Optional[Logger] = None,
) -> Trajectory:
    """
    Integrate until the orbit has settled onto its attractor.

    Each failed attempt continues from the last state for another
    ``cfg.t_final``.  If the post-condition never holds the last segment is
    returned with ``settled`` False.
    """
    log = log or logger
    progress: Dict[str, Any] = dict(trajectory=None, attempt=0)

    @retry(SteadyStateNotReachedError, tries=spec.attempts, delay=0, logger=log)
    def settled_segment() -> Trajectory:
        previous = progress["trajectory"]
        start = x0 if previous is None else previous.final_state
        progress["attempt"] += 1
        progress["trajectory"] = integrate(variant, start, p, cfg)
        ensure_settled(progress["trajectory"], spec, progress["attempt"])
        return progress["trajectory"]

    try:
        return replace(settled_segment(), settled=True)
    except SteadyStateNotReachedError as ex:
        log.warning("steady state not confirmed: %s", ex)
        return replace(progress["trajectory"], settled=False)
