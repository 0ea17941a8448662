# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Reproducible protocols built on the dynamics, fixed-point, stability and
spectral layers: phase-diagram sweeps, phase quenches, attractor censuses,
the adiabatic consistency check and coupling scans.

Every randomized protocol derives its generators from
``numpy.random.SeedSequence`` keyed by the global seed and the index of the
work unit, and merges results by index, so results do not depend on the
number of worker processes.
"""
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from dataclasses import field
from enum import Enum
from typing import Any
from typing import Callable
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np
from scipy.cluster.hierarchy import fcluster
from scipy.cluster.hierarchy import linkage
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import directed_hausdorff
from scipy.spatial.distance import squareform

from .dynamics import InitialCondition
from .dynamics import IntegratorConfig
from .dynamics import SettleSpec
from .dynamics import Trajectory
from .dynamics import default_initial_conditions
from .dynamics import settle
from .exceptions import DickeError
from .exceptions import DomainError
from .exceptions import PhaseLockingError
from .fixed_points import FixedPoint
from .fixed_points import FixedPointLabel
from .fixed_points import NewtonSpec
from .fixed_points import classify
from .fixed_points import find_all
from .fixed_points import residual
from .model import BlochVector
from .model import ModelParams
from .model import ModelVariant
from .model import PARITY_SIGNS
from .model import SPECIES_SWAP
from .model import SystemState
from .model import adiabatic_rhs
from .model import enslaved_field
from .model import full_rhs
from .spectral import RegimeLabel
from .spectral import SpectralThresholds
from .spectral import classify_regime
from .spectral import dominant_peaks
from .spectral import fft_spectrum
from .spectral import locking_of_field
from .spectral import mean_intensity
from .stability import Stability
from .stability import np_spectrum
from .stability import spectrum_at

logger = logging.getLogger(__name__)

# configuration names accepted for sweep axes, mapped to ModelParams fields
AXIS_FIELDS = {
    "lambda": "lam",
    "lam": "lam",
    "phi": "phi",
    "kappa": "kappa",
    "delta": "delta",
    "gamma_down": "gamma_down",
    "omega_l": "omega_l",
}


class PhaseLabel(Enum):
    NP = "NP"
    SP_ALIGNED = "SP_ALIGNED"
    SP_ANTIALIGNED = "SP_ANTIALIGNED"
    SP_COEX = "SP_COEX"
    DP = "DP"
    DSR = "DSR"
    BROADBAND = "BROADBAND"
    UNRESOLVED = "UNRESOLVED"


class QuenchVerdict(Enum):
    PT_BROKEN = "PT_BROKEN"
    PT_INVARIANT = "PT_INVARIANT"


@dataclass(frozen=True)
class SweepSpec:
    """
    Defines how cells without a strictly stable fixed point are resolved.
    """

    # random Bloch initial conditions integrated per cell, besides the
    # perturbed normal phase
    random_initial_conditions: int = 1

    # an orbit staying this close to a marginal normal phase is the normal phase
    near_normal_phase: float = 1e-2

    # single-linkage merge distance when counting the attractors of a cell
    cluster_tolerance: float = 1e-2

    # worker processes; 1 evaluates in-process
    threads: int = 1


@dataclass(frozen=True)
class CensusSpec:
    # the number of random Bloch initial conditions
    initial_conditions: int = 64

    # single-linkage merge distance on orbit signatures
    cluster_tolerance: float = 1e-2

    # a cluster wider than this multiple of the tolerance is unresolved
    spread_factor: float = 10.0

    # worker processes; 1 evaluates in-process
    threads: int = 1


@dataclass(frozen=True)
class QuenchSpec:
    # orbit distance below which the quenched orbit is the PT image of the
    # relaxed one
    orbit_tolerance: float = 1e-2

    # at most this many samples of each orbit enter the distance
    max_points: int = 4000


@dataclass(frozen=True)
class AxisSpec:
    name: str
    minimum: float
    maximum: float
    count: int

    def __post_init__(self) -> None:
        if self.name not in AXIS_FIELDS:
            known = sorted(AXIS_FIELDS)
            raise DomainError(
                "axis", f"unknown parameter {self.name!r}, expected one of {known}"
            )
        if self.count < 1:
            raise DomainError("axis", f"{self.name} needs at least one point")
        if not (math.isfinite(self.minimum) and math.isfinite(self.maximum)):
            raise DomainError("axis", f"{self.name} bounds must be finite")

    @property
    def field_name(self) -> str:
        return AXIS_FIELDS[self.name]

    def values(self) -> np.ndarray:
        return np.linspace(self.minimum, self.maximum, self.count)


@dataclass(frozen=True)
class PhaseCell:
    row: int
    column: int
    coordinates: Tuple[float, float]
    label: PhaseLabel
    max_growth: float
    mean_intensity: float
    # attractors found, up to parity, as clusters of their orbit signatures
    n_attractors: Optional[int] = None
    failure: Optional[str] = None


@dataclass(frozen=True)
class PhaseDiagram:
    axes: Tuple[AxisSpec, AxisSpec]
    cells: Tuple[PhaseCell, ...]
    template: ModelParams
    variant: ModelVariant
    seed: int

    def cell(self, row: int, column: int) -> PhaseCell:
        return self.cells[row * self.axes[1].count + column]

    def labels(self) -> List[List[PhaseLabel]]:
        return [
            [self.cell(row, column).label for column in range(self.axes[1].count)]
            for row in range(self.axes[0].count)
        ]


@dataclass(frozen=True)
class _CellTask:
    template: ModelParams
    variant: ModelVariant
    axes: Tuple[AxisSpec, AxisSpec]
    row: int
    column: int
    seed: int
    integrator: IntegratorConfig
    settling: SettleSpec
    newton: NewtonSpec
    thresholds: SpectralThresholds
    spec: SweepSpec


def parallel_map(
    function: Callable[[Any], Any], tasks: Sequence[Any], threads: int = 1
) -> List[Any]:
    """Apply ``function`` to every task, in order, on up to ``threads`` processes."""
    if threads <= 1 or len(tasks) <= 1:
        return [function(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, tasks))


def _task_rng(seed: int, *indices: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *indices]))


def _draw_seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31 - 1))


def stationary_label(trajectory: Trajectory) -> FixedPointLabel:
    """Classify the state an orbit came to rest at."""
    variant = trajectory.variant
    y = variant.coordinates(trajectory.final_state)
    state = variant.state_from(y, trajectory.params, with_field=True)
    error = residual(state, trajectory.params, variant)
    return classify(FixedPoint(state=state, residual_norm=error))


def dynamic_label(
    trajectory: Trajectory, thresholds: SpectralThresholds = SpectralThresholds()
) -> PhaseLabel:
    """Phase label of a settled orbit."""
    regime = classify_regime(trajectory, thresholds)
    if regime.label is RegimeLabel.LIMIT_CYCLE:
        return PhaseLabel.DP
    if regime.label is RegimeLabel.DSR:
        return PhaseLabel.DSR
    if regime.label is RegimeLabel.BROADBAND:
        return PhaseLabel.BROADBAND
    if regime.label is RegimeLabel.STATIONARY:
        resting = stationary_label(trajectory)
        if resting is not FixedPointLabel.OTHER:
            return PhaseLabel(resting.value)
    return PhaseLabel.UNRESOLVED


def _distance_from_normal_phase(trajectory: Trajectory) -> float:
    steady = trajectory.steady()
    origin = steady.variant.coordinates(SystemState.normal_phase())
    offset = steady.states[:, : steady.variant.dimension] - origin
    beta = steady.field()
    return float(max(np.max(np.abs(offset)), np.max(np.abs(beta))))


def evaluate_cell(task: _CellTask) -> PhaseCell:
    """
    Decide the phase of one cell:

    1. stable superradiant fixed points (marginal ones included) give their
       alignment class, SP_COEX when both classes are stable;
    2. otherwise a strictly stable normal phase gives NP;
    3. a marginal normal phase is NP if the orbit from the perturbed normal
       phase stays within ``near_normal_phase`` of it;
    4. everything else is resolved by integration and regime classification.

    Failures are recorded on the cell as UNRESOLVED.  The attractor count
    clusters the signatures of the stable superradiant fixed points, or of
    the orbits integrated for the cell, so parity twins count once.
    """
    first, second = task.axes
    coordinates = (
        float(first.values()[task.row]),
        float(second.values()[task.column]),
    )
    rng = _task_rng(task.seed, task.row, task.column)
    max_growth = math.nan

    def cell(
        label: PhaseLabel, intensity: float, signatures: List[np.ndarray]
    ) -> PhaseCell:
        count = _attractor_count(np.array(signatures), task.spec.cluster_tolerance)
        return PhaseCell(
            task.row, task.column, coordinates, label, max_growth, intensity, count
        )

    try:
        p = task.template.replace(
            **{first.field_name: coordinates[0], second.field_name: coordinates[1]}
        )
        fixed_points = find_all(p, task.variant, task.newton, rng_seed=_draw_seed(rng))
        reports = [spectrum_at(point, p, task.variant) for point in fixed_points.points]
        np_report = reports[fixed_points.points.index(fixed_points.normal_phase)]
        max_growth = np_report.max_real

        superradiant = (FixedPointLabel.SP_ALIGNED, FixedPointLabel.SP_ANTIALIGNED)
        stable_superradiant = [
            point
            for point in fixed_points.points
            if point.stable and point.label in superradiant
        ]
        classes = {point.label for point in stable_superradiant}
        if classes:
            if len(classes) == 2:
                label = PhaseLabel.SP_COEX
            else:
                label = PhaseLabel(classes.pop().value)
            signatures = [
                rest_signature(point.state, task.thresholds)
                for point in stable_superradiant
            ]
            return cell(label, stable_superradiant[0].state.intensity, signatures)
        at_rest = [rest_signature(SystemState.normal_phase(), task.thresholds)]
        if np_report.stability is Stability.STABLE:
            return cell(PhaseLabel.NP, 0.0, at_rest)

        start = default_initial_conditions(InitialCondition.PERTURBED_NP)
        trajectory = settle(task.variant, start, p, task.integrator, task.settling)
        if (
            np_report.stability is Stability.MARGINAL
            and _distance_from_normal_phase(trajectory) < task.spec.near_normal_phase
        ):
            return cell(PhaseLabel.NP, 0.0, at_rest)

        orbits = [trajectory]
        for _ in range(task.spec.random_initial_conditions):
            start = default_initial_conditions(
                InitialCondition.RANDOM_BLOCH, _draw_seed(rng)
            )
            orbits.append(
                settle(task.variant, start, p, task.integrator, task.settling)
            )
        return cell(
            dynamic_label(trajectory, task.thresholds),
            mean_intensity(trajectory),
            [orbit_signature(orbit, task.thresholds) for orbit in orbits],
        )
    except DickeError as ex:
        logger.warning(
            "cell (%d, %d) at %s unresolved: %s", task.row, task.column, coordinates, ex
        )
        return PhaseCell(
            task.row,
            task.column,
            coordinates,
            PhaseLabel.UNRESOLVED,
            max_growth,
            math.nan,
            None,
            str(ex),
        )


def sweep(
    template: ModelParams,
    axes: Tuple[AxisSpec, AxisSpec],
    variant: ModelVariant = ModelVariant.FULL,
    seed: int = 0,
    integrator: IntegratorConfig = IntegratorConfig(),
    settling: SettleSpec = SettleSpec(),
    newton: NewtonSpec = NewtonSpec(),
    thresholds: SpectralThresholds = SpectralThresholds(),
    spec: SweepSpec = SweepSpec(),
) -> PhaseDiagram:
    """Label every cell of a two-parameter grid; see ``evaluate_cell``."""
    first, second = axes
    if first.field_name == second.field_name:
        raise DomainError("axes", f"both axes vary {first.field_name}")
    tasks = [
        _CellTask(
            template,
            variant,
            axes,
            row,
            column,
            seed,
            integrator,
            settling,
            newton,
            thresholds,
            spec,
        )
        for row in range(first.count)
        for column in range(second.count)
    ]
    logger.info("sweeping %d cells over %s x %s", len(tasks), first.name, second.name)
    cells = parallel_map(evaluate_cell, tasks, spec.threads)
    return PhaseDiagram(
        axes=axes, cells=tuple(cells), template=template, variant=variant, seed=seed
    )


# --- phase quench ------------------------------------------------------------


@dataclass(frozen=True)
class OrbitSummary:
    regime: RegimeLabel
    mean_intensity: float
    settled: Optional[bool]
    final_state: SystemState


@dataclass(frozen=True)
class QuenchReport:
    params: ModelParams
    pre: OrbitSummary
    post: OrbitSummary
    verdict: QuenchVerdict
    # symmetric Hausdorff distance of swap(post) to pre, best over parity
    distance: float
    # the same without and with the parity map applied
    distances: Tuple[float, float]


def _cloud(trajectory: Trajectory, max_points: int) -> np.ndarray:
    steady = trajectory.steady()
    points = steady.states.copy()
    if steady.variant is not ModelVariant.FULL:
        beta = steady.field()
        points[:, 6], points[:, 7] = beta.real, beta.imag
    stride = max(1, int(math.ceil(points.shape[0] / max_points)))
    return points[::stride]


def hausdorff_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0]))


def _summary(trajectory: Trajectory, thresholds: SpectralThresholds) -> OrbitSummary:
    return OrbitSummary(
        regime=classify_regime(trajectory, thresholds).label,
        mean_intensity=mean_intensity(trajectory),
        settled=trajectory.settled,
        final_state=trajectory.final_state,
    )


def quench_phi(
    p: ModelParams,
    relax: IntegratorConfig = IntegratorConfig(),
    post: IntegratorConfig = IntegratorConfig(),
    variant: ModelVariant = ModelVariant.FULL,
    x0: Optional[SystemState] = None,
    settling: SettleSpec = SettleSpec(),
    thresholds: SpectralThresholds = SpectralThresholds(),
    spec: QuenchSpec = QuenchSpec(),
) -> QuenchReport:
    """
    Relax to the steady state, flip phi -> -phi and relax again.  The orbit
    is PT invariant when the species-swapped post-quench orbit retraces the
    pre-quench one, up to parity.

    Raises:
      IntegrationError if either integration fails
    """
    start = x0
    if start is None:
        start = default_initial_conditions(InitialCondition.PERTURBED_NP)
    before = settle(variant, start, p, relax, settling)
    quenched = p.replace(phi=-p.phi)
    after = settle(variant, before.final_state, quenched, post, settling)

    reference = _cloud(before, spec.max_points)
    swapped = _cloud(after, spec.max_points)[:, SPECIES_SWAP]
    distances = (
        hausdorff_distance(swapped, reference),
        hausdorff_distance(swapped * PARITY_SIGNS, reference),
    )
    distance = min(distances)
    if distance < spec.orbit_tolerance:
        verdict = QuenchVerdict.PT_INVARIANT
    else:
        verdict = QuenchVerdict.PT_BROKEN
    logger.info(
        "quench at phi=%.6g: distance %.3g -> %s", p.phi, distance, verdict.value
    )
    return QuenchReport(
        params=p,
        pre=_summary(before, thresholds),
        post=_summary(after, thresholds),
        verdict=verdict,
        distance=distance,
        distances=distances,
    )


# --- attractor census --------------------------------------------------------

SIGNATURE_NAMES = (
    "lock_angle",
    "mean_sz_p",
    "mean_sz_m",
    "amp_sz_p",
    "amp_sz_m",
    "amp_sx_p",
    "amp_sx_m",
    "amp_abs_beta",
)

# species exchange on signature entries
_SIGNATURE_SWAP = np.array([0, 2, 1, 4, 3, 6, 5, 7])


def signature_distance(a: np.ndarray, b: np.ndarray) -> float:
    """
    Max-norm distance with the locking angle compared modulo pi.  An
    unlocked orbit (NaN angle) is at distance pi/2 from any locked one.
    """
    if math.isnan(a[0]) and math.isnan(b[0]):
        angle = 0.0
    elif math.isnan(a[0]) or math.isnan(b[0]):
        angle = 0.5 * math.pi
    else:
        difference = abs(a[0] - b[0]) % math.pi
        angle = min(difference, math.pi - difference)
    return float(max(angle, np.max(np.abs(a[1:] - b[1:]))))


def pt_signature(signature: np.ndarray) -> np.ndarray:
    """Image of a signature under species swap with phi -> -phi."""
    image = signature[_SIGNATURE_SWAP].copy()
    if not math.isnan(image[0]):
        image[0] = (math.pi - image[0]) % math.pi
    return image


def orbit_signature(
    trajectory: Trajectory, thresholds: SpectralThresholds = SpectralThresholds()
) -> np.ndarray:
    steady = trajectory.steady()
    states = steady.states
    beta = steady.field()
    angle = math.nan
    if float(np.max(np.abs(beta))) >= thresholds.oscillation:
        try:
            angle = locking_of_field(beta, thresholds.isotropy).angle
        except PhaseLockingError:
            pass

    def half_range(values: np.ndarray) -> float:
        return 0.5 * float(np.max(values) - np.min(values))

    return np.array(
        [
            angle,
            float(np.mean(states[:, 2])),
            float(np.mean(states[:, 5])),
            half_range(states[:, 2]),
            half_range(states[:, 5]),
            half_range(states[:, 0]),
            half_range(states[:, 3]),
            half_range(np.abs(beta)),
        ]
    )


def rest_signature(
    state: SystemState, thresholds: SpectralThresholds = SpectralThresholds()
) -> np.ndarray:
    """The signature of an orbit resting at ``state``: no AC amplitudes."""
    angle = math.nan
    if abs(state.field) >= thresholds.oscillation:
        angle = locking_of_field(np.array([state.field]), thresholds.isotropy).angle
    signature = np.zeros(len(SIGNATURE_NAMES))
    signature[:3] = (angle, state.spin_plus.sz, state.spin_minus.sz)
    return signature


@dataclass(frozen=True)
class AttractorCluster:
    signature: np.ndarray
    members: Tuple[int, ...]
    diameter: float


@dataclass(frozen=True)
class CensusReport:
    params: ModelParams
    n_initial_conditions: int
    clusters: Tuple[AttractorCluster, ...]
    pt_paired: bool
    unresolved: bool
    signatures: np.ndarray = field(
        repr=False, default_factory=lambda: np.zeros((0, len(SIGNATURE_NAMES)))
    )

    @property
    def cluster_count(self) -> int:
        return len(self.clusters)


@dataclass(frozen=True)
class _CensusTask:
    params: ModelParams
    variant: ModelVariant
    seed: int
    index: int
    integrator: IntegratorConfig
    settling: SettleSpec
    thresholds: SpectralThresholds


def _census_member(task: _CensusTask) -> np.ndarray:
    seed = _draw_seed(_task_rng(task.seed, task.index))
    start = default_initial_conditions(InitialCondition.RANDOM_BLOCH, seed)
    trajectory = settle(
        task.variant, start, task.params, task.integrator, task.settling
    )
    return orbit_signature(trajectory, task.thresholds)


def _distance_matrix(signatures: np.ndarray) -> np.ndarray:
    count = signatures.shape[0]
    matrix = np.zeros((count, count))
    for i in range(count):
        for j in range(i + 1, count):
            distance = signature_distance(signatures[i], signatures[j])
            matrix[i, j] = matrix[j, i] = distance
    return matrix


def cluster_signatures(
    signatures: np.ndarray, spec: CensusSpec = CensusSpec()
) -> Tuple[List[AttractorCluster], bool]:
    """Single-linkage clusters of orbit signatures and whether any is unresolved."""
    matrix = _distance_matrix(signatures)
    if signatures.shape[0] == 1:
        assignments = np.array([1])
    else:
        tree = linkage(squareform(matrix, checks=False), method="single")
        assignments = fcluster(tree, t=spec.cluster_tolerance, criterion="distance")
    clusters = []
    unresolved = False
    # clusters in order of their first member
    numbers = sorted(
        set(assignments.tolist()),
        key=lambda value: int(np.argmax(assignments == value)),
    )
    for number in numbers:
        members = np.flatnonzero(assignments == number)
        block = matrix[np.ix_(members, members)]
        medoid = members[int(np.argmin(block.max(axis=1)))]
        diameter = float(block.max())
        if diameter > spec.spread_factor * spec.cluster_tolerance:
            unresolved = True
        clusters.append(
            AttractorCluster(
                signatures[medoid], tuple(int(member) for member in members), diameter
            )
        )
    return clusters, unresolved


def _attractor_count(signatures: np.ndarray, tolerance: float) -> int:
    spec = CensusSpec(cluster_tolerance=tolerance)
    clusters, _ = cluster_signatures(signatures, spec)
    return len(clusters)


def pt_paired(clusters: Sequence[AttractorCluster], tolerance: float) -> bool:
    """Whether the PT image of every cluster signature matches a distinct cluster."""
    if not clusters:
        return False
    images = [pt_signature(cluster.signature) for cluster in clusters]
    cost = np.array(
        [[signature_distance(image, b.signature) for b in clusters] for image in images]
    )
    rows, columns = linear_sum_assignment(cost)
    return bool(np.all(cost[rows, columns] < tolerance))


def attractor_census(
    p: ModelParams,
    n_ic: int = CensusSpec.initial_conditions,
    seed: int = 0,
    variant: ModelVariant = ModelVariant.FULL,
    integrator: IntegratorConfig = IntegratorConfig(),
    settling: SettleSpec = SettleSpec(),
    thresholds: SpectralThresholds = SpectralThresholds(),
    spec: CensusSpec = CensusSpec(),
) -> CensusReport:
    """
    Integrate from ``n_ic`` random Bloch states, summarize each orbit by
    its signature and cluster the signatures.
    """
    if n_ic < 2:
        raise DomainError("n_ic", "a census needs at least two initial conditions")
    tasks = [
        _CensusTask(p, variant, seed, index, integrator, settling, thresholds)
        for index in range(n_ic)
    ]
    signatures = np.array(parallel_map(_census_member, tasks, spec.threads))
    clusters, unresolved = cluster_signatures(signatures, spec)
    paired = pt_paired(clusters, spec.cluster_tolerance)
    if unresolved:
        logger.warning(
            "census at %s has clusters wider than %g",
            p,
            spec.spread_factor * spec.cluster_tolerance,
        )
    return CensusReport(
        params=p,
        n_initial_conditions=n_ic,
        clusters=tuple(clusters),
        pt_paired=paired,
        unresolved=unresolved,
        signatures=signatures,
    )


# --- adiabatic consistency ---------------------------------------------------


@dataclass(frozen=True)
class ScaleComparison:
    scale: float
    max_real_full: float
    max_real_adiabatic: float
    # largest difference of the sorted spin-mode frequencies
    frequency_deviation: float

    @property
    def deviation(self) -> float:
        return abs(self.max_real_full - self.max_real_adiabatic)


@dataclass(frozen=True)
class ConsistencyReport:
    params: ModelParams
    n_samples: int
    # largest relative deviation of the adiabatic flow from the full spin
    # flow at the enslaved field
    identity_deviation: float
    comparisons: Tuple[ScaleComparison, ...]


def _random_spins(rng: np.random.Generator) -> Tuple[BlochVector, BlochVector]:
    spins = []
    for _ in range(2):
        direction = rng.normal(size=3)
        direction *= rng.uniform() ** (1.0 / 3.0) / np.linalg.norm(direction)
        spins.append(BlochVector(*map(float, direction)))
    return spins[0], spins[1]


def _spin_frequencies(eigenvalues: np.ndarray, cutoff: float) -> np.ndarray:
    imaginary = eigenvalues.imag
    return np.sort(imaginary[(imaginary > 0) & (imaginary < cutoff)])


def adiabatic_consistency_check(
    p: ModelParams,
    n_samples: int = 100,
    seed: int = 0,
    scales: Iterable[float] = (1.0, 2.0, 5.0, 10.0),
) -> ConsistencyReport:
    """
    (a) The adiabatic flow against the spin block of the full flow at the
    enslaved field, on random states in the Bloch balls; (b) normal-phase
    growth rates and frequencies of both variants as omega_l and kappa are
    scaled up at a fixed ratio.
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        spins = _random_spins(rng)
        state = SystemState(spins[0], spins[1], enslaved_field(spins, p))
        exact = full_rhs(state, p).to_array()[:6]
        adiabatic = adiabatic_rhs(spins, p)
        approximate = np.array(adiabatic[0].as_tuple() + adiabatic[1].as_tuple())
        scale = max(float(np.max(np.abs(exact))), np.finfo(float).tiny)
        worst = max(worst, float(np.max(np.abs(exact - approximate))) / scale)

    comparisons = []
    for factor in scales:
        scaled = p.replace(omega_l=factor * p.omega_l, kappa=factor * p.kappa)
        full = np_spectrum(scaled, ModelVariant.FULL)
        adiabatic_report = np_spectrum(scaled, ModelVariant.ADIABATIC)
        cutoff = 0.5 * scaled.omega_l
        a = _spin_frequencies(full.eigenvalues, cutoff)
        b = _spin_frequencies(adiabatic_report.eigenvalues, cutoff)
        frequency_deviation = math.nan
        if a.size == b.size and a.size:
            frequency_deviation = float(np.max(np.abs(a - b)))
        comparisons.append(
            ScaleComparison(
                float(factor),
                full.max_real,
                adiabatic_report.max_real,
                frequency_deviation,
            )
        )
    return ConsistencyReport(
        params=p,
        n_samples=n_samples,
        identity_deviation=worst,
        comparisons=tuple(comparisons),
    )


# --- coupling scans ----------------------------------------------------------


@dataclass(frozen=True)
class ScanPoint:
    lam: float
    label: PhaseLabel
    regime: RegimeLabel
    mean_intensity: float
    dc_amplitude: float
    # the strongest light peaks away from zero frequency
    peak_frequencies: Tuple[float, ...]
    failure: Optional[str] = None

    @property
    def peak_separation(self) -> float:
        if len(self.peak_frequencies) < 2:
            return math.nan
        return max(self.peak_frequencies) - min(self.peak_frequencies)


@dataclass(frozen=True)
class IntensityJump:
    index: int
    lam_before: float
    lam_after: float
    jump: float
    median_increment: float

    @property
    def ratio(self) -> float:
        if self.median_increment > 0:
            return self.jump / self.median_increment
        return math.inf


@dataclass(frozen=True)
class _ScanTask:
    template: ModelParams
    variant: ModelVariant
    lam: float
    integrator: IntegratorConfig
    settling: SettleSpec
    thresholds: SpectralThresholds


def _scan_point(task: _ScanTask) -> ScanPoint:
    try:
        p = task.template.replace(lam=task.lam)
        start = default_initial_conditions(InitialCondition.PERTURBED_NP)
        trajectory = settle(task.variant, start, p, task.integrator, task.settling)
        regime = classify_regime(trajectory, task.thresholds)
        peaks: Tuple[float, ...] = ()
        if regime.label is not RegimeLabel.STATIONARY:
            spectrum = fft_spectrum(trajectory, "beta", task.thresholds.padding)
            finite = [
                peak
                for peak in dominant_peaks(spectrum, task.thresholds.peak_threshold)
                if abs(peak.frequency) > 3 * spectrum.resolution
            ]
            peaks = tuple(sorted(peak.frequency for peak in finite[:2]))
        return ScanPoint(
            task.lam,
            dynamic_label(trajectory, task.thresholds),
            regime.label,
            mean_intensity(trajectory),
            regime.dc_amplitude,
            peaks,
        )
    except DickeError as ex:
        logger.warning("lambda=%g unresolved: %s", task.lam, ex)
        return ScanPoint(
            task.lam,
            PhaseLabel.UNRESOLVED,
            RegimeLabel.MARGINAL,
            math.nan,
            math.nan,
            (),
            str(ex),
        )


def lambda_scan(
    template: ModelParams,
    lambdas: Iterable[float],
    variant: ModelVariant = ModelVariant.FULL,
    integrator: IntegratorConfig = IntegratorConfig(),
    settling: SettleSpec = SettleSpec(),
    thresholds: SpectralThresholds = SpectralThresholds(),
    threads: int = 1,
) -> List[ScanPoint]:
    """
    Regime, mean intensity and light peaks along a coupling scan, each point
    started from the perturbed normal phase.
    """
    tasks = [
        _ScanTask(template, variant, float(lam), integrator, settling, thresholds)
        for lam in lambdas
    ]
    return parallel_map(_scan_point, tasks, threads)


def intensity_jump(scan: Sequence[ScanPoint]) -> IntensityJump:
    """
    The largest step of the mean intensity between consecutive resolved
    points of a scan, against the median step.  ``index`` is the scan
    position of the point before the step.
    """
    resolved = [
        index for index, point in enumerate(scan) if math.isfinite(point.mean_intensity)
    ]
    if len(resolved) < 3:
        raise DomainError("scan", "at least three resolved points are needed")
    increments = np.abs(np.diff([scan[index].mean_intensity for index in resolved]))
    step = int(np.argmax(increments))
    before, after = resolved[step], resolved[step + 1]
    return IntensityJump(
        index=before,
        lam_before=scan[before].lam,
        lam_after=scan[after].lam,
        jump=float(increments[step]),
        median_increment=float(np.median(increments)),
    )

