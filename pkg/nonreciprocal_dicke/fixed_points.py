# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import cmath
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from logging import Logger
from typing import List
from typing import Optional

import numpy as np

from .dynamics import BALL_SLACK
from .exceptions import DomainError
from .exceptions import NewtonError
from .exceptions import SingularJacobianError
from .model import BlochVector
from .model import ModelParams
from .model import ModelVariant
from .model import SystemState
from .model import adiabatic_coefficients
from .model import enslaved_field
from .model import field_response
from .model import vector_field
from .stability import jacobian_at

logger = logging.getLogger(__name__)

# amplitude below which a spin x/y component or the field counts as zero
NP_AMPLITUDE = 1e-6

# sz of the superradiant seeds when the reciprocal ansatz has no solution
_SUBTHRESHOLD_SEED_SZ = -0.9


@dataclass(frozen=True)
class NewtonSpec:
    """
    Defines how fixed points are searched for.
    """

    # the iteration limit of one Newton solve
    max_iterations: int = 200

    # max-norm of the right-hand side (and norm constraints) to accept
    tolerance: float = 1e-12

    # the number of random seeds added to the structured ones
    random_seeds: int = 32

    # states closer than this in max-norm are the same fixed point
    dedup_tolerance: float = 1e-6

    # the smallest backtracking step before giving up
    min_step: float = 1e-10


class FixedPointLabel(Enum):
    NP = "NP"
    SP_ALIGNED = "SP_ALIGNED"
    SP_ANTIALIGNED = "SP_ANTIALIGNED"
    OTHER = "OTHER"


_LABEL_ORDER = {label: index for index, label in enumerate(FixedPointLabel)}


@dataclass
class FixedPoint:
    """
    An accepted steady state.  Spin-only variants carry the field enslaved
    to their spins.  ``stable`` and ``marginal`` are filled in by
    ``stability.spectrum_at``.
    """

    state: SystemState
    residual_norm: float
    label: FixedPointLabel = FixedPointLabel.OTHER
    stable: Optional[bool] = None
    marginal: Optional[bool] = None
    iterations: int = 0
    residual_history: List[float] = field(default_factory=list)


@dataclass
class FixedPointSet:
    params: ModelParams
    variant: ModelVariant
    points: List[FixedPoint]
    seeds_used: int

    def with_label(self, label: FixedPointLabel) -> List[FixedPoint]:
        return [point for point in self.points if point.label is label]

    @property
    def normal_phase(self) -> FixedPoint:
        return self.with_label(FixedPointLabel.NP)[0]


def residual(state: SystemState, p: ModelParams, variant: ModelVariant) -> float:
    """Max-norm of the variant's right-hand side at ``state``."""
    return float(np.max(np.abs(vector_field(variant, p)(variant.coordinates(state)))))


def classify(fp: FixedPoint) -> FixedPointLabel:
    """
    NP when every x/y spin component and the field vanish with both spins
    pointing down; otherwise the sign of sx+ * sx- separates aligned from
    anti-aligned superradiance.  Inverted and mixed states are OTHER.
    """
    plus, minus = fp.state.spins
    amplitude = max(
        abs(plus.sx), abs(plus.sy), abs(minus.sx), abs(minus.sy), abs(fp.state.field)
    )
    if amplitude < NP_AMPLITUDE:
        if plus.sz < 0 and minus.sz <= 0:
            return FixedPointLabel.NP
        return FixedPointLabel.OTHER
    product = plus.sx * minus.sx
    if product > 0:
        return FixedPointLabel.SP_ALIGNED
    if product < 0:
        return FixedPointLabel.SP_ANTIALIGNED
    return FixedPointLabel.OTHER


def newton_solve(
    seed: SystemState,
    p: ModelParams,
    variant: ModelVariant,
    spec: NewtonSpec = NewtonSpec(),
) -> FixedPoint:
    """
    Damped Newton iteration from ``seed`` with backtracking on the residual
    2-norm, using the analytic Jacobian.

    For gamma_down = 0 the spin norms of the seed are appended as
    constraints and the overdetermined system is solved in the least
    squares sense, which keeps the otherwise continuous families of fixed
    points isolated.

    Raises:
      DomainError if the seed is not finite
      SingularJacobianError if the linearization loses rank at an iterate
      NewtonError on no convergence, a failed line search, or a root
        outside the Bloch ball
    """
    y = variant.coordinates(seed).astype(float)
    if not np.all(np.isfinite(y)):
        raise DomainError("seed", "contains non-finite entries")
    f = vector_field(variant, p)
    species = list(range(variant.conserved_norms)) if p.gamma_down == 0 else []
    targets = np.array([np.sum(y[3 * index : 3 * index + 3] ** 2) for index in species])

    def system(x: np.ndarray) -> np.ndarray:
        if not species:
            return f(x)
        norms = np.array(
            [np.sum(x[3 * index : 3 * index + 3] ** 2) for index in species]
        )
        return np.concatenate([f(x), norms - targets])

    def system_jacobian(x: np.ndarray) -> np.ndarray:
        j = jacobian_at(x, p, variant)
        if not species:
            return j
        rows = np.zeros((len(species), x.size))
        for row, index in enumerate(species):
            rows[row, 3 * index : 3 * index + 3] = 2.0 * x[3 * index : 3 * index + 3]
        return np.vstack([j, rows])

    history: List[float] = []
    r = system(y)
    for iteration in range(spec.max_iterations + 1):
        error = float(np.max(np.abs(r)))
        history.append(error)
        if error <= spec.tolerance:
            break
        if iteration == spec.max_iterations:
            raise NewtonError(iteration, error, "iteration limit reached")
        j = system_jacobian(y)
        try:
            step, _, rank, _ = np.linalg.lstsq(j, -r, rcond=None)
        except np.linalg.LinAlgError as ex:
            raise SingularJacobianError(iteration, error, str(ex)) from ex
        if rank < y.size:
            raise SingularJacobianError(
                iteration, error, f"Jacobian rank {rank} < {y.size}"
            )
        merit = float(np.linalg.norm(r))
        t = 1.0
        while True:
            candidate = y + t * step
            trial = system(candidate)
            sufficient = (1.0 - 1e-4 * t) * merit
            if np.all(np.isfinite(trial)) and np.linalg.norm(trial) < sufficient:
                break
            t *= 0.5
            if t < spec.min_step:
                raise NewtonError(iteration, error, "line search failed")
        y, r = candidate, trial

    for index in range(variant.conserved_norms):
        norm_squared = float(np.sum(y[3 * index : 3 * index + 3] ** 2))
        if norm_squared > 1.0 + BALL_SLACK:
            raise NewtonError(
                len(history) - 1,
                history[-1],
                f"root outside the Bloch ball (|s|^2={norm_squared:.6g})",
            )

    state = variant.state_from(y, p, with_field=True)
    point = FixedPoint(
        state=state,
        residual_norm=float(np.max(np.abs(f(y)))),
        iterations=len(history) - 1,
        residual_history=history,
    )
    point.label = classify(point)
    return point


def seed_states(
    p: ModelParams, count: int, rng: np.random.Generator
) -> List[SystemState]:
    """
    The normal phase, the reciprocal superradiant ansatz for both alignment
    patterns and both parities with its field rotated by 0 and +/-phi, and
    ``count`` random states on the Bloch spheres.
    """
    seeds = [SystemState.normal_phase()]
    xi = adiabatic_coefficients(p).xi
    sz = -p.omega0 / (2.0 * xi) if 2.0 * xi > p.omega0 else _SUBTHRESHOLD_SEED_SZ
    sx = math.sqrt(1.0 - sz**2)
    for pattern in (1.0, -1.0):
        for sign in (1.0, -1.0):
            spins = (
                BlochVector(sign * sx, 0.0, sz),
                BlochVector(pattern * sign * sx, 0.0, sz),
            )
            beta = enslaved_field(spins, p)
            for rotation in (0.0, p.phi, -p.phi):
                field_value = beta * cmath.exp(1j * rotation)
                seeds.append(SystemState(spins[0], spins[1], field_value))

    scale = max(p.lam * abs(field_response(p)), 1e-3)
    for _ in range(count):
        directions = rng.normal(size=(2, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        field_value = complex(*rng.normal(scale=scale, size=2))
        seeds.append(
            SystemState(
                BlochVector(*map(float, directions[0])),
                BlochVector(*map(float, directions[1])),
                field_value,
            )
        )
    return seeds


def find_all(
    p: ModelParams,
    variant: ModelVariant,
    spec: NewtonSpec = NewtonSpec(),
    rng_seed: int = 0,
    log: Optional[Logger] = None,
) -> FixedPointSet:
    """
    Solve from every seed, deduplicate and sort by label then sx+.

    The normal phase is an exact fixed point for all parameters, so the
    result is never empty.
    """
    log = log or logger
    seeds = seed_states(p, spec.random_seeds, np.random.default_rng(rng_seed))
    accepted: List[FixedPoint] = []
    for index, seed in enumerate(seeds):
        try:
            point = newton_solve(seed, p, variant, spec)
        except NewtonError as ex:
            log.debug("seed %d: %s", index, ex)
            continue
        y = variant.coordinates(point.state)
        if any(
            np.max(np.abs(y - variant.coordinates(other.state))) < spec.dedup_tolerance
            for other in accepted
        ):
            continue
        accepted.append(point)
    accepted.sort(
        key=lambda point: (_LABEL_ORDER[point.label], point.state.spin_plus.sx)
    )
    log.debug("%d fixed point(s) from %d seeds", len(accepted), len(seeds))
    return FixedPointSet(
        params=p, variant=variant, points=accepted, seeds_used=len(seeds)
    )
