# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Linear stability: analytic Jacobians (dynamical matrices) of every variant,
spectra around the normal phase and at arbitrary fixed points, and
detection of exceptional points along phase sweeps.

Growth rates are reported in units of omega0.  A spectrum whose largest
real part lies within ``STABILITY_EPSILON`` of zero is marginal.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable
from typing import List
from typing import Optional
from typing import TYPE_CHECKING
from typing import Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import brentq

from .exceptions import SpectrumError
from .model import ModelParams
from .model import ModelVariant
from .model import SystemState
from .model import adiabatic_coefficients
from .model import reduced_plus_coupling

if TYPE_CHECKING:
    from .fixed_points import FixedPoint

logger = logging.getLogger(__name__)

STABILITY_EPSILON = 1e-8

# coalescence thresholds confirming an exceptional point
EP_GAP_TOLERANCE = 1e-6
EP_ANGLE_TOLERANCE = 1e-3

# eigenvector pairs this close to orthogonal at a degenerate eigenvalue are
# semisimple (decoupled blocks) rather than coalescing
_ORTHOGONAL_COSINE = 1e-8
_DEGENERATE_GAP = 1e-12


class Stability(Enum):
    STABLE = "stable"
    MARGINAL = "marginal"
    UNSTABLE = "unstable"

    @classmethod
    def of(cls, max_real: float, epsilon: float = STABILITY_EPSILON) -> "Stability":
        if max_real < -epsilon:
            return cls.STABLE
        if max_real <= epsilon:
            return cls.MARGINAL
        return cls.UNSTABLE


@dataclass(frozen=True, eq=False)
class EigenReport:
    """
    Eigenvalues (growth rates eta) sorted by descending real part, ties by
    descending imaginary part, with eigenvectors as matching unit columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]
    max_real: float
    min_pair_gap: float
    min_vector_angle: float

    @classmethod
    def from_eigensystem(
        cls,
        values: np.ndarray,
        vectors: Optional[np.ndarray] = None,
        coalescing: Optional[np.ndarray] = None,
    ) -> "EigenReport":
        """
        Sort an eigensystem and compute its coalescence diagnostics.

        ``coalescing`` restricts the pair search to a subset of eigenvalues
        when no eigenvectors are available.
        """
        values = np.asarray(values, dtype=complex)
        order = np.lexsort((-values.imag, -np.round(values.real, 12)))
        values = values[order]
        if vectors is not None:
            vectors = np.asarray(vectors, dtype=complex)[:, order]
            vectors = vectors / np.linalg.norm(vectors, axis=0)
        if coalescing is None:
            gap, angle = _closest_pair(values, vectors)
        else:
            gap, angle = _closest_pair(np.asarray(coalescing, dtype=complex), None)
        return cls(
            eigenvalues=values,
            eigenvectors=vectors,
            max_real=float(values[0].real),
            min_pair_gap=gap,
            min_vector_angle=angle,
        )

    @property
    def stability(self) -> Stability:
        return Stability.of(self.max_real)


def _closest_pair(
    values: np.ndarray, vectors: Optional[np.ndarray]
) -> Tuple[float, float]:
    """
    Smallest pairwise gap, and the eigenvector angle of that pair (NaN
    without vectors).
    """
    best_gap, best_angle = math.inf, math.nan if vectors is None else math.inf
    for i in range(values.size):
        for j in range(i + 1, values.size):
            gap = float(abs(values[i] - values[j]))
            if vectors is None:
                best_gap = min(best_gap, gap)
                continue
            cosine = min(1.0, float(abs(np.vdot(vectors[:, i], vectors[:, j]))))
            if gap < _DEGENERATE_GAP and cosine < _ORTHOGONAL_COSINE:
                continue
            angle = math.acos(cosine)
            if (gap, angle) < (best_gap, best_angle):
                best_gap, best_angle = gap, angle
    return best_gap, best_angle


def _eigensystem(matrix: np.ndarray) -> EigenReport:
    try:
        values, vectors = np.linalg.eig(matrix)
    except np.linalg.LinAlgError as ex:
        raise SpectrumError(f"eigendecomposition failed: {ex}") from ex
    if not np.all(np.isfinite(values)):
        raise SpectrumError("eigendecomposition returned non-finite eigenvalues")
    return EigenReport.from_eigensystem(values, vectors)


# --- Jacobians ---------------------------------------------------------------


def _full_jacobian(y: np.ndarray, p: ModelParams) -> np.ndarray:
    sxp, syp, szp, sxm, sym, szm, br, bi = y
    c = math.cos(p.phi)
    s = math.sin(p.phi)
    fp = 2.0 * (br * c + bi * s)
    fm = 2.0 * (br * c - bi * s)
    wp = p.omega0 + p.delta
    wm = p.omega0 - p.delta
    hg = 0.5 * p.gamma_down
    lam = p.lam
    j = np.zeros((8, 8))
    j[0, 0], j[0, 1] = -hg, -wp
    j[1, 0], j[1, 1], j[1, 2] = wp, -hg, -lam * fp
    j[1, 6], j[1, 7] = -2.0 * lam * szp * c, -2.0 * lam * szp * s
    j[2, 1], j[2, 2] = lam * fp, -p.gamma_down
    j[2, 6], j[2, 7] = 2.0 * lam * syp * c, 2.0 * lam * syp * s
    j[3, 3], j[3, 4] = -hg, -wm
    j[4, 3], j[4, 4], j[4, 5] = wm, -hg, -lam * fm
    j[4, 6], j[4, 7] = -2.0 * lam * szm * c, 2.0 * lam * szm * s
    j[5, 4], j[5, 5] = lam * fm, -p.gamma_down
    j[5, 6], j[5, 7] = 2.0 * lam * sym * c, -2.0 * lam * sym * s
    j[6, 0], j[6, 3] = 0.5 * lam * s, -0.5 * lam * s
    j[6, 6], j[6, 7] = -0.5 * p.kappa, p.omega_l
    j[7, 0], j[7, 3] = -0.5 * lam * c, -0.5 * lam * c
    j[7, 6], j[7, 7] = -p.omega_l, -0.5 * p.kappa
    return j


def _adiabatic_jacobian(y: np.ndarray, p: ModelParams) -> np.ndarray:
    sxp, syp, szp, sxm, sym, szm = y[:6]
    k = adiabatic_coefficients(p)
    gp = -k.xi * sxp + k.chi_plus * sxm
    gm = -k.xi * sxm + k.chi_minus * sxp
    wp = p.omega0 + p.delta
    wm = p.omega0 - p.delta
    hg = 0.5 * p.gamma_down
    j = np.zeros((6, 6))
    j[0, 0], j[0, 1] = -hg, -wp
    j[1, 0], j[1, 1], j[1, 2] = wp + k.xi * szp, -hg, -gp
    j[1, 3] = -k.chi_plus * szp
    j[2, 0], j[2, 1], j[2, 2] = -k.xi * syp, gp, -p.gamma_down
    j[2, 3] = k.chi_plus * syp
    j[3, 3], j[3, 4] = -hg, -wm
    j[4, 3], j[4, 4], j[4, 5] = wm + k.xi * szm, -hg, -gm
    j[4, 0] = -k.chi_minus * szm
    j[5, 3], j[5, 4], j[5, 5] = -k.xi * sym, gm, -p.gamma_down
    j[5, 0] = k.chi_minus * sym
    return j


def _reduced_plus_jacobian(y: np.ndarray, p: ModelParams) -> np.ndarray:
    sx, sy, sz = y[:3]
    g = reduced_plus_coupling(p)
    w = p.omega0
    return np.array(
        [
            [0.0, -w, 0.0],
            [w + g * sz, 0.0, g * sx],
            [-g * sy, -g * sx, 0.0],
        ]
    )


def jacobian_at(y: np.ndarray, p: ModelParams, variant: ModelVariant) -> np.ndarray:
    """Analytic Jacobian of ``variant`` at its flat coordinates ``y``."""
    if variant is ModelVariant.FULL:
        return _full_jacobian(y, p)
    if variant is ModelVariant.ADIABATIC:
        return _adiabatic_jacobian(y, p)
    return _reduced_plus_jacobian(y, p)


def jacobian(state: SystemState, p: ModelParams, variant: ModelVariant) -> np.ndarray:
    return jacobian_at(variant.coordinates(state), p, variant)


def np_dynamical_matrix_complex(p: ModelParams) -> np.ndarray:
    """
    Normal-phase matrix in the complex coordinates
    (d beta, d beta*, dsx+, dsy+, dsz+, dsx-, dsy-, dsz-).
    """
    lam = p.lam
    e = cmath.exp(1j * p.phi)
    wp = p.omega0 + p.delta
    wm = p.omega0 - p.delta
    hg = 0.5 * p.gamma_down
    m = np.zeros((8, 8), dtype=complex)
    m[0, 0] = -1j * p.omega_l - 0.5 * p.kappa
    m[0, 2], m[0, 5] = -0.5j * lam * e, -0.5j * lam / e
    m[1, 1] = 1j * p.omega_l - 0.5 * p.kappa
    m[1, 2], m[1, 5] = 0.5j * lam / e, 0.5j * lam * e
    m[2, 2], m[2, 3] = -hg, -wp
    m[3, 0], m[3, 1], m[3, 2], m[3, 3] = lam / e, lam * e, wp, -hg
    m[4, 4] = -p.gamma_down
    m[5, 5], m[5, 6] = -hg, -wm
    m[6, 0], m[6, 1], m[6, 5], m[6, 6] = lam * e, lam / e, wm, -hg
    m[7, 7] = -p.gamma_down
    return m


# --- normal-phase spectra ----------------------------------------------------


def inner_discriminant(p: ModelParams) -> float:
    """
    delta^2 (2 omega0 + xi_s)^2 + (omega0^2 - delta^2) chi_+s chi_-s,
    which vanishes at the exceptional points of the adiabatic normal phase.
    """
    k = adiabatic_coefficients(p)
    xi_s = -k.xi
    return (
        p.delta**2 * (2.0 * p.omega0 + xi_s) ** 2
        + (p.omega0**2 - p.delta**2) * k.chi_plus * k.chi_minus
    )


def np_spectrum_closed_form(p: ModelParams) -> EigenReport:
    """
    Adiabatic normal-phase spectrum in closed form::

        eta = -G/2 +/- sqrt(-w0 (w0 + xi_s) - d^2 +/- sqrt(inner))

    plus the pair -G from the z fluctuations.  The coefficients follow the
    convention xi_s = -xi, chi_+/-s = -chi_-/+ of the anchored couplings.
    Square roots are taken on the principal branch; the multiset of the
    four branches does not depend on that choice.
    """
    k = adiabatic_coefficients(p)
    xi_s = -k.xi
    chi_plus_s, chi_minus_s = -k.chi_minus, -k.chi_plus
    w0, d = p.omega0, p.delta
    inner = d**2 * (2.0 * w0 + xi_s) ** 2 + (w0**2 - d**2) * chi_plus_s * chi_minus_s
    root = cmath.sqrt(inner)
    base = -w0 * (w0 + xi_s) - d**2
    branches = np.array(
        [
            -0.5 * p.gamma_down + outer * cmath.sqrt(base + sign * root)
            for outer in (1.0, -1.0)
            for sign in (1.0, -1.0)
        ]
    )
    values = np.concatenate([branches, [-p.gamma_down, -p.gamma_down]])
    return EigenReport.from_eigensystem(values, coalescing=branches)


def np_spectrum(p: ModelParams, variant: ModelVariant) -> EigenReport:
    """Numeric spectrum of the normal phase for ``variant``."""
    return _eigensystem(jacobian(SystemState.normal_phase(), p, variant))


def np_spectrum_full(p: ModelParams) -> EigenReport:
    return np_spectrum(p, ModelVariant.FULL)


def np_spectrum_adiabatic(p: ModelParams) -> EigenReport:
    return np_spectrum(p, ModelVariant.ADIABATIC)


def np_spectrum_sweep(
    p: ModelParams, variant: ModelVariant, phis: Iterable[float]
) -> List[EigenReport]:
    return [np_spectrum(p.replace(phi=float(phi)), variant) for phi in phis]


def critical_coupling(p: ModelParams) -> float:
    """Reciprocal (phi = 0) superradiant threshold sqrt(omega0 D / (2 omega_l))."""
    return math.sqrt(p.omega0 * p.response_denominator / (2.0 * p.omega_l))


def threshold_crossing(
    p: ModelParams,
    variant: ModelVariant,
    lam_low: float = 0.0,
    lam_high: float = 10.0,
    iterations: int = 60,
) -> float:
    """Coupling at which the normal phase first turns unstable, by bisection."""

    def unstable(lam: float) -> bool:
        return np_spectrum(p.replace(lam=lam), variant).max_real > STABILITY_EPSILON

    if unstable(lam_low) or not unstable(lam_high):
        raise SpectrumError(
            f"no stability change of the normal phase in [{lam_low}, {lam_high}]"
        )
    for _ in range(iterations):
        middle = 0.5 * (lam_low + lam_high)
        if unstable(middle):
            lam_high = middle
        else:
            lam_low = middle
    return 0.5 * (lam_low + lam_high)


# --- spectra at fixed points -------------------------------------------------


def conserved_directions(
    y: np.ndarray, p: ModelParams, variant: ModelVariant
) -> np.ndarray:
    """
    Gradients of the spin norms, conserved by the flow when gamma_down = 0.

    Returns a (k, n) array, empty when nothing is conserved.
    """
    n = variant.dimension
    if p.gamma_down != 0:
        return np.zeros((0, n))
    rows = []
    for species in range(variant.conserved_norms):
        gradient = np.zeros(n)
        gradient[3 * species : 3 * species + 3] = 2.0 * y[3 * species : 3 * species + 3]
        if np.any(gradient):
            rows.append(gradient)
    return np.array(rows).reshape(len(rows), n)


def spectrum_at(fp: "FixedPoint", p: ModelParams, variant: ModelVariant) -> EigenReport:
    """
    Spectrum of the dynamical matrix at an accepted fixed point, and set
    ``fp.stable`` / ``fp.marginal`` accordingly.

    For gamma_down = 0 the conserved spin-norm directions are left null
    vectors of the Jacobian; the spectrum is reported on the invariant
    tangent space they define.
    """
    y = variant.coordinates(fp.state)
    j = jacobian_at(y, p, variant)
    constraints = conserved_directions(y, p, variant)
    if constraints.shape[0]:
        basis = null_space(constraints)
        reduced = _eigensystem(basis.T @ j @ basis)
        assert reduced.eigenvectors is not None  # nosec
        report = EigenReport(
            eigenvalues=reduced.eigenvalues,
            eigenvectors=basis @ reduced.eigenvectors,
            max_real=reduced.max_real,
            min_pair_gap=reduced.min_pair_gap,
            min_vector_angle=reduced.min_vector_angle,
        )
    else:
        report = _eigensystem(j)
    fp.stable = report.max_real < STABILITY_EPSILON
    fp.marginal = abs(report.max_real) <= STABILITY_EPSILON
    return report


# --- exceptional points ------------------------------------------------------


@dataclass(frozen=True)
class ExceptionalPoint:
    phi: float
    min_pair_gap: float
    min_vector_angle: float
    confirmed: bool
    eigenvalue: complex


def find_exceptional_points(
    p: ModelParams,
    phi_min: float = 0.0,
    phi_max: float = 0.5 * math.pi,
    samples: int = 2001,
) -> List[ExceptionalPoint]:
    """
    Exceptional points of the adiabatic normal phase along a phase sweep.

    Candidates are sign changes of the inner discriminant, refined with
    Brent's method to machine precision in phi; each is confirmed by
    numeric eigenvalue and eigenvector coalescence.
    """

    def discriminant(phi: float) -> float:
        return inner_discriminant(p.replace(phi=phi))

    grid = np.linspace(phi_min, phi_max, samples)
    values = np.array([discriminant(float(phi)) for phi in grid])
    roots = []
    for index in range(samples - 1):
        left, right = values[index], values[index + 1]
        if left == 0.0:
            if 0 < index and values[index - 1] * right < 0:
                roots.append(float(grid[index]))
        elif left * right < 0:
            root = brentq(
                discriminant,
                grid[index],
                grid[index + 1],
                xtol=1e-15,
                rtol=4 * np.finfo(float).eps,
                maxiter=200,
            )
            roots.append(root)

    points = []
    for phi in roots:
        report = np_spectrum_adiabatic(p.replace(phi=phi))
        gap, angle = report.min_pair_gap, report.min_vector_angle
        confirmed = gap < EP_GAP_TOLERANCE and angle < EP_ANGLE_TOLERANCE
        eigenvalue = complex(report.eigenvalues[0])
        logger.debug("EP candidate phi=%.12f gap=%.3g angle=%.3g", phi, gap, angle)
        points.append(ExceptionalPoint(phi, gap, angle, confirmed, eigenvalue))
    return points


def min_gap_along(
    p: ModelParams, variant: ModelVariant, phis: Iterable[float]
) -> float:
    """Smallest normal-phase coalescence gap over a phase sweep."""
    return min(report.min_pair_gap for report in np_spectrum_sweep(p, variant, phis))
