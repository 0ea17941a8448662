# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Fourier analysis of steady-state trajectories.

Frequencies are angular, in units of omega0.  Complex observables (the
light field) have two-sided spectra ordered from negative to positive
frequency; real observables are reported one-sided.  Amplitudes are
normalized by the window sum, so a pure tone of amplitude A shows a peak
of height close to A (A/2 per side for real tones seen two-sided).
"""
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from enum import Enum
from typing import Iterable
from typing import List

import numpy as np
from scipy.signal import find_peaks
from scipy.signal import get_window

from .dynamics import Trajectory
from .exceptions import PhaseLockingError
from .exceptions import SpectrumError
from .model import COORDINATE_NAMES

logger = logging.getLogger(__name__)

# shortest post-transient window accepted for a spectrum
MIN_SAMPLES = 4096

# bins on either side of a peak counted as its main lobe
_LOBE_BINS = 2

FIELD_OBSERVABLES = ("beta", "re_beta", "im_beta", "abs_beta", "intensity")
OBSERVABLES = FIELD_OBSERVABLES + COORDINATE_NAMES[:6]


@dataclass(frozen=True)
class SpectralThresholds:
    """
    Defines how steady states are told apart from oscillating ones.
    """

    # half-range below which an observable is not oscillating
    oscillation: float = 1e-6

    # an oscillation amplitude shrinking by this factor or more between the
    # two halves of the window is a decaying transient; growing by its
    # inverse, a growing one
    decay_ratio: float = 0.5

    # time-averaged field relative to its peak modulus that marks superradiance
    superradiance: float = 1e-3

    # a superradiant orbit is DSR only with a light peak away from zero
    # frequency above this fraction of the time-averaged field
    dsr_peak: float = 1e-3

    # the most discrete peaks a regular orbit may need
    max_peaks: int = 8

    # fraction of the AC power those peaks must capture
    power_capture: float = 0.95

    # peaks are local maxima above this fraction of the largest amplitude
    peak_threshold: float = 0.05

    # minor/major axis ratio of the field cloud above which it is unlocked
    isotropy: float = 0.8

    # zero padding factor of the transform
    padding: int = 1


@dataclass(frozen=True)
class Peak:
    frequency: float
    amplitude: float


@dataclass(frozen=True, eq=False)
class FrequencySpectrum:
    observable: str
    frequencies: np.ndarray
    amplitudes: np.ndarray
    resolution: float
    two_sided: bool
    # power of the windowed signal, sum |w x|^2
    windowed_power: float
    # sum of the window, restoring |X| from the amplitudes
    window_sum: float
    length: int

    @property
    def bin_weights(self) -> np.ndarray:
        """Multiplicity of each bin in the full transform."""
        weights = np.ones(self.amplitudes.size)
        if not self.two_sided:
            weights[1:] = 2.0
            if self.length % 2 == 0:
                weights[-1] = 1.0
        return weights

    def parseval_power(self) -> float:
        """Windowed signal power recovered from the spectrum."""
        magnitude = self.amplitudes * self.window_sum
        return float(np.sum(self.bin_weights * magnitude**2) / self.length)


@dataclass(frozen=True)
class PhaseLock:
    # principal axis of the field cloud, in [0, pi)
    angle: float
    # minor/major axis ratio
    residual: float


class RegimeLabel(Enum):
    STATIONARY = "STATIONARY"
    LIMIT_CYCLE = "LIMIT_CYCLE"
    DSR = "DSR"
    BROADBAND = "BROADBAND"
    MARGINAL = "MARGINAL"


@dataclass(frozen=True)
class Regime:
    label: RegimeLabel
    dc_amplitude: float
    oscillation_amplitude: float
    peaks: List[Peak] = field(default_factory=list)
    power_capture: float = math.nan


def spectrum_of_signal(
    signal: np.ndarray,
    sample_dt: float,
    observable: str = "signal",
    padding: int = 1,
) -> FrequencySpectrum:
    """
    Hann-windowed discrete Fourier transform of a uniformly sampled signal.

    Complex input yields a two-sided spectrum, real input a one-sided one.

    Raises:
      SpectrumError if the signal has fewer than MIN_SAMPLES samples
    """
    x = np.asarray(signal)
    n = x.size
    if n < MIN_SAMPLES:
        raise SpectrumError(
            f"{observable}: {n} samples, at least {MIN_SAMPLES} required"
        )
    window = get_window("hann", n)
    windowed = x * window
    length = n * max(1, int(padding))
    two_sided = np.iscomplexobj(x)
    if two_sided:
        transform = np.fft.fftshift(np.fft.fft(windowed, length))
        frequencies = np.fft.fftshift(np.fft.fftfreq(length, sample_dt))
    else:
        transform = np.fft.rfft(windowed, length)
        frequencies = np.fft.rfftfreq(length, sample_dt)
    window_sum = float(np.sum(window))
    return FrequencySpectrum(
        observable=observable,
        frequencies=2.0 * math.pi * frequencies,
        amplitudes=np.abs(transform) / window_sum,
        resolution=2.0 * math.pi / (length * sample_dt),
        two_sided=two_sided,
        windowed_power=float(np.sum(np.abs(windowed) ** 2)),
        window_sum=window_sum,
        length=length,
    )


def observable(trajectory: Trajectory, name: str) -> np.ndarray:
    """A named projection of the trajectory, complex for ``beta``."""
    if name in FIELD_OBSERVABLES:
        beta = trajectory.field()
        return {
            "beta": lambda: beta,
            "re_beta": lambda: beta.real,
            "im_beta": lambda: beta.imag,
            "abs_beta": lambda: np.abs(beta),
            "intensity": lambda: np.abs(beta) ** 2,
        }[name]()
    if name in COORDINATE_NAMES[:6]:
        return trajectory.states[:, COORDINATE_NAMES.index(name)]
    raise SpectrumError(f"unknown observable {name!r}, expected one of {OBSERVABLES}")


def fft_spectrum(
    trajectory: Trajectory, name: str = "beta", padding: int = 1
) -> FrequencySpectrum:
    """Spectrum of an observable over the post-transient window."""
    steady = trajectory.steady()
    return spectrum_of_signal(observable(steady, name), steady.sample_dt, name, padding)


def spectra(
    trajectory: Trajectory, names: Iterable[str], padding: int = 1
) -> List[FrequencySpectrum]:
    return [fft_spectrum(trajectory, name, padding) for name in names]


def _peak_indices(amplitudes: np.ndarray, rel_threshold: float) -> np.ndarray:
    top = float(np.max(amplitudes)) if amplitudes.size else 0.0
    if top <= 0:
        return np.zeros(0, dtype=int)
    # pad so maxima at either edge (DC of one-sided spectra) are found
    padded = np.concatenate([[-1.0], amplitudes, [-1.0]])
    indices, _ = find_peaks(padded, height=rel_threshold * top)
    return indices - 1


def _interpolate(spectrum: FrequencySpectrum, index: int) -> Peak:
    a = spectrum.amplitudes
    f = spectrum.frequencies
    if index == 0 or index == a.size - 1:
        return Peak(float(f[index]), float(a[index]))
    tiny = np.finfo(float).tiny
    y0, y1, y2 = np.log(np.maximum(a[index - 1 : index + 2], tiny))
    curvature = y0 - 2.0 * y1 + y2
    offset = 0.5 * (y0 - y2) / curvature if curvature < 0 else 0.0
    offset = min(0.5, max(-0.5, offset))
    step = f[index + 1] - f[index]
    height = math.exp(y1 - 0.25 * (y0 - y2) * offset)
    return Peak(float(f[index] + offset * step), float(height))


def dominant_peaks(
    spectrum: FrequencySpectrum, rel_threshold: float = 0.05
) -> List[Peak]:
    """
    Local maxima above ``rel_threshold`` times the global maximum, located
    by parabolic interpolation of the log amplitude, largest first.
    """
    indices = _peak_indices(spectrum.amplitudes, rel_threshold)
    peaks = [_interpolate(spectrum, int(index)) for index in indices]
    return sorted(peaks, key=lambda peak: (-peak.amplitude, peak.frequency))


def mean_intensity(trajectory: Trajectory) -> float:
    """Time average of |beta|^2 over the post-transient window."""
    return float(np.mean(np.abs(trajectory.steady().field()) ** 2))


def locking_of_field(
    beta: np.ndarray, isotropy: float = SpectralThresholds.isotropy
) -> PhaseLock:
    """
    Principal axis of the (Re beta, Im beta) cloud from its second moment.

    Raises:
      PhaseLockingError for an empty or near-isotropic cloud
    """
    beta = np.asarray(beta, dtype=complex)
    if beta.size == 0 or float(np.max(np.abs(beta))) < 1e-12:
        raise PhaseLockingError(None)
    points = np.column_stack([beta.real, beta.imag])
    moment = points.T @ points / beta.size
    values, vectors = np.linalg.eigh(moment)
    ratio = math.sqrt(max(float(values[0]), 0.0) / float(values[1]))
    if ratio > isotropy:
        raise PhaseLockingError(ratio)
    angle = math.atan2(vectors[1, 1], vectors[0, 1]) % math.pi
    if math.isclose(angle, math.pi):
        angle = 0.0
    return PhaseLock(angle=angle, residual=ratio)


def phase_locking_angle(
    trajectory: Trajectory, thresholds: SpectralThresholds = SpectralThresholds()
) -> PhaseLock:
    return locking_of_field(trajectory.steady().field(), thresholds.isotropy)


def dc_amplitude(beta: np.ndarray) -> float:
    """Hann-weighted time average of beta relative to its peak modulus."""
    peak = float(np.max(np.abs(beta)))
    if peak == 0:
        return 0.0
    window = get_window("hann", beta.size)
    return float(abs(np.sum(window * beta)) / np.sum(window) / peak)


def oscillation_amplitude(trajectory: Trajectory) -> float:
    """Largest half-range over the evolved coordinates and the field."""
    columns = [trajectory.states[:, : trajectory.variant.dimension]]
    beta = trajectory.field()
    columns.append(np.column_stack([beta.real, beta.imag]))
    values = np.hstack(columns)
    return float(np.max(0.5 * (values.max(axis=0) - values.min(axis=0))))


def amplitude_trend(trajectory: Trajectory) -> float:
    """
    Oscillation amplitude over the second half of the samples divided by
    that over the first half: below one for a decaying transient, above
    one for a growing one.
    """
    half = len(trajectory) // 2
    if half < 2:
        return 1.0
    first, second = (
        oscillation_amplitude(
            replace(
                trajectory,
                times=trajectory.times[part],
                states=trajectory.states[part],
            )
        )
        for part in (slice(0, half), slice(half, 2 * half))
    )
    if first == 0:
        return 1.0 if second == 0 else math.inf
    return second / first


def power_capture(
    spectrum: FrequencySpectrum, peaks: List[Peak], padding: int = 1
) -> float:
    """Fraction of the total power within the main lobes of ``peaks``."""
    weights = spectrum.bin_weights * (spectrum.amplitudes * spectrum.window_sum) ** 2
    total = float(np.sum(weights))
    if total == 0:
        return 1.0
    lobe = _LOBE_BINS * max(1, padding)
    mask = np.zeros(weights.size, dtype=bool)
    origin = spectrum.frequencies[0]
    step = spectrum.frequencies[1] - spectrum.frequencies[0]
    for peak in peaks:
        index = int(round((peak.frequency - origin) / step))
        mask[max(0, index - lobe) : index + lobe + 1] = True
    return float(np.sum(weights[mask]) / total)


def _persistent_peak(
    peaks: List[Peak], spectrum: FrequencySpectrum, level: float
) -> bool:
    return any(
        abs(peak.frequency) > 3 * spectrum.resolution and peak.amplitude >= level
        for peak in peaks
    )


def classify_regime(
    trajectory: Trajectory, thresholds: SpectralThresholds = SpectralThresholds()
) -> Regime:
    """
    STATIONARY when nothing oscillates or the oscillation dies out over
    the window; otherwise LIMIT_CYCLE or DSR when at most ``max_peaks``
    discrete peaks carry the AC power of the field, else BROADBAND.

    DSR needs a superradiant time average and a light peak away from zero
    frequency that is not negligible against it; a superradiant orbit
    without one is STATIONARY.  An orbit whose steady state could not be
    confirmed, or whose oscillation still grows, is MARGINAL.
    """
    steady = trajectory.steady()
    amplitude = oscillation_amplitude(steady)
    beta = steady.field()
    dc = dc_amplitude(beta)
    if amplitude < thresholds.oscillation:
        return Regime(RegimeLabel.STATIONARY, dc, amplitude)

    # the field carries the dynamics unless it is (numerically) frozen
    half_range = 0.5 * max(np.ptp(beta.real), np.ptp(beta.imag))
    if half_range >= thresholds.oscillation:
        signal = beta - beta.mean()
    else:
        signal = steady.states[:, 0] - steady.states[:, 0].mean()
    spectrum = spectrum_of_signal(signal, steady.sample_dt, "ac", thresholds.padding)
    peaks = dominant_peaks(spectrum, thresholds.peak_threshold)[: thresholds.max_peaks]
    capture = power_capture(spectrum, peaks, thresholds.padding)
    trend = amplitude_trend(steady)
    mean_field = dc * float(np.max(np.abs(beta)))
    if trajectory.settled is False:
        label = RegimeLabel.MARGINAL
    elif trend < thresholds.decay_ratio:
        label = RegimeLabel.STATIONARY
    elif trend * thresholds.decay_ratio > 1.0:
        label = RegimeLabel.MARGINAL
    elif capture < thresholds.power_capture:
        label = RegimeLabel.BROADBAND
    elif dc < thresholds.superradiance:
        label = RegimeLabel.LIMIT_CYCLE
    elif _persistent_peak(peaks, spectrum, thresholds.dsr_peak * mean_field):
        label = RegimeLabel.DSR
    else:
        label = RegimeLabel.STATIONARY
    logger.debug(
        "regime %s: dc=%.3g osc=%.3g trend=%.3g capture=%.3f",
        label.value,
        dc,
        amplitude,
        trend,
        capture,
    )
    return Regime(label, dc, amplitude, peaks, capture)

