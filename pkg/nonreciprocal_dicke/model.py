# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
"""
Parameter and state types of the non-reciprocal Dicke model and its
thermodynamic-limit vector fields.

Two spin species, labelled + and -, couple to one lossy light mode with
coupling modulus ``lam`` and phase +/-``phi``.  The light amplitude is
rescaled as beta = alpha / sqrt(N), so none of the flows depend on N.
Time is measured in units of 1 / omega0.

All coordinates are laid out in a fixed order::

    (sx+, sy+, sz+, sx-, sy-, sz-, Re beta, Im beta)

The adiabatic couplings are anchored to direct substitution of the exact
field steady state into the spin equations, so that ``adiabatic_rhs`` is
identically the spin block of ``full_rhs`` evaluated at ``enslaved_field``.
"""
import cmath
import math
from dataclasses import dataclass
from dataclasses import fields
from dataclasses import replace
from enum import Enum
from typing import Callable
from typing import Optional
from typing import Tuple

import numpy as np

from .exceptions import DomainError

STATE_DIMENSION = 8

COORDINATE_NAMES = (
    "sx_p",
    "sy_p",
    "sz_p",
    "sx_m",
    "sy_m",
    "sz_m",
    "re_beta",
    "im_beta",
)

# sign pattern of the parity map on the flat coordinates
PARITY_SIGNS = np.array([-1.0, -1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0])

# index permutation swapping the two species, field untouched
SPECIES_SWAP = np.array([3, 4, 5, 0, 1, 2, 6, 7])

VectorField = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ModelParams:
    """
    The physical rates and angles of one model instance, in units of omega0.
    """

    # photon frequency
    omega_l: float = 20.0

    # mean spin frequency; the unit of frequency
    omega0: float = 1.0

    # half frequency splitting between the species
    delta: float = 0.0

    # coupling modulus (``lambda`` in configuration files)
    lam: float = 0.0

    # coupling phase in radians, stored in [-pi, pi)
    phi: float = 0.0

    # photon loss rate
    kappa: float = 12.5

    # spin decay rate
    gamma_down: float = 0.0

    def __post_init__(self) -> None:
        for item in fields(self):
            value = getattr(self, item.name)
            if not math.isfinite(value):
                raise DomainError(item.name, f"must be finite, got {value!r}")
        if self.omega_l <= 0:
            raise DomainError("omega_l", "photon frequency must be positive")
        if self.omega0 <= 0:
            raise DomainError("omega0", "spin frequency must be positive")
        for name in ("lam", "kappa", "gamma_down"):
            if getattr(self, name) < 0:
                raise DomainError(name, "must be non-negative")
        if not -math.pi <= self.phi < math.pi:
            object.__setattr__(self, "phi", wrap_phase(self.phi))

    def replace(self, **changes: float) -> "ModelParams":
        return replace(self, **changes)

    @property
    def response_denominator(self) -> float:
        """D = omega_l^2 + kappa^2 / 4, the squared modulus of 1 / G."""
        return self.omega_l**2 + 0.25 * self.kappa**2


def wrap_phase(phi: float) -> float:
    """Fold an angle into [-pi, pi)."""
    wrapped = math.fmod(phi + math.pi, 2.0 * math.pi)
    if wrapped < 0:
        wrapped += 2.0 * math.pi
    return wrapped - math.pi


@dataclass(frozen=True)
class BlochVector:
    sx: float = 0.0
    sy: float = 0.0
    sz: float = -1.0

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.sx, self.sy, self.sz)

    def norm_squared(self) -> float:
        return self.sx**2 + self.sy**2 + self.sz**2


SpinPair = Tuple[BlochVector, BlochVector]


@dataclass(frozen=True)
class SystemState:
    """
    Two Bloch vectors and the rescaled complex light amplitude.

    Also used for time derivatives, in which case the components are rates.
    """

    spin_plus: BlochVector = BlochVector()
    spin_minus: BlochVector = BlochVector()
    field: complex = 0j

    @classmethod
    def normal_phase(cls) -> "SystemState":
        return cls(BlochVector(0.0, 0.0, -1.0), BlochVector(0.0, 0.0, -1.0), 0j)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "SystemState":
        values = np.asarray(values, dtype=float)
        if values.shape != (STATE_DIMENSION,):
            raise DomainError(
                "state",
                f"expected {STATE_DIMENSION} coordinates, got shape {values.shape}",
            )
        return cls(
            BlochVector(float(values[0]), float(values[1]), float(values[2])),
            BlochVector(float(values[3]), float(values[4]), float(values[5])),
            complex(float(values[6]), float(values[7])),
        )

    def to_array(self) -> np.ndarray:
        return np.array(
            [
                self.spin_plus.sx,
                self.spin_plus.sy,
                self.spin_plus.sz,
                self.spin_minus.sx,
                self.spin_minus.sy,
                self.spin_minus.sz,
                self.field.real,
                self.field.imag,
            ]
        )

    @property
    def spins(self) -> SpinPair:
        return (self.spin_plus, self.spin_minus)

    @property
    def intensity(self) -> float:
        """Photon number per spin, |beta|^2."""
        return abs(self.field) ** 2


@dataclass(frozen=True)
class CouplingConstants:
    # complex field response G = 1 / (i omega_l + kappa / 2)
    response: complex

    # phase shift of the light field, arctan(2 omega_l / kappa)
    phi_l: float

    # intra-species coupling
    xi: float

    # inter-species couplings felt by the + and - species
    chi_plus: float
    chi_minus: float


class ModelVariant(Enum):
    FULL = "full"
    ADIABATIC = "adiabatic"
    REDUCED_PLUS = "reduced_plus"

    @property
    def dimension(self) -> int:
        return {
            ModelVariant.FULL: 8,
            ModelVariant.ADIABATIC: 6,
            ModelVariant.REDUCED_PLUS: 3,
        }[self]

    @property
    def conserved_norms(self) -> int:
        """Number of spin norms conserved by the flow when gamma_down = 0."""
        return 1 if self is ModelVariant.REDUCED_PLUS else 2

    def coordinates(self, state: SystemState) -> np.ndarray:
        """Project a full state onto the coordinates this variant evolves."""
        return state.to_array()[: self.dimension]

    def state_from(
        self, y: np.ndarray, p: ModelParams, with_field: bool = False
    ) -> SystemState:
        """
        Lift variant coordinates to a full state.

        Spin-only variants carry a zero field unless ``with_field`` asks for
        the field enslaved to the spins.
        """
        y = np.asarray(y, dtype=float)
        if self is ModelVariant.FULL:
            return SystemState.from_array(y)
        if self is ModelVariant.ADIABATIC:
            spins = (BlochVector(*map(float, y[0:3])), BlochVector(*map(float, y[3:6])))
            field = enslaved_field(spins, p) if with_field else 0j
            return SystemState(spins[0], spins[1], field)
        spin = BlochVector(*map(float, y[0:3]))
        field = reduced_plus_field(spin, p) if with_field else 0j
        return SystemState(spin, BlochVector(0.0, 0.0, 0.0), field)


def _require_finite(values: np.ndarray, quantity: str) -> None:
    if not np.all(np.isfinite(values)):
        raise DomainError(quantity, "contains non-finite entries")


# --- full flow ---------------------------------------------------------------


def full_vector_field(y: np.ndarray, p: ModelParams) -> np.ndarray:
    """Time derivative of the 8 flat coordinates under the full flow."""
    sxp, syp, szp, sxm, sym, szm, br, bi = y
    c = math.cos(p.phi)
    s = math.sin(p.phi)
    # field quadratures 2 Re(beta e^{-/+ i phi}) seen by each species
    fp = 2.0 * (br * c + bi * s)
    fm = 2.0 * (br * c - bi * s)
    wp = p.omega0 + p.delta
    wm = p.omega0 - p.delta
    hg = 0.5 * p.gamma_down
    lam = p.lam
    return np.array(
        [
            -wp * syp - hg * sxp,
            wp * sxp - hg * syp - lam * szp * fp,
            -p.gamma_down * (szp + 1.0) + lam * syp * fp,
            -wm * sym - hg * sxm,
            wm * sxm - hg * sym - lam * szm * fm,
            -p.gamma_down * (szm + 1.0) + lam * sym * fm,
            -0.5 * p.kappa * br + p.omega_l * bi + 0.5 * lam * s * (sxp - sxm),
            -p.omega_l * br - 0.5 * p.kappa * bi - 0.5 * lam * c * (sxp + sxm),
        ]
    )


def full_rhs(state: SystemState, p: ModelParams) -> SystemState:
    y = state.to_array()
    _require_finite(y, "state")
    return SystemState.from_array(full_vector_field(y, p))


# --- adiabatic elimination ---------------------------------------------------


def field_response(p: ModelParams) -> complex:
    denominator = complex(0.5 * p.kappa, p.omega_l)
    if denominator == 0:
        raise DomainError("response", "undefined for omega_l = kappa = 0")
    return 1.0 / denominator


def adiabatic_coefficients(p: ModelParams) -> CouplingConstants:
    """
    Couplings of the spin-only flow obtained by enslaving the field.

    With D = omega_l^2 + kappa^2/4::

        xi       = lam^2 omega_l / D
        chi_+/-  = -lam^2 (omega_l cos 2phi +/- (kappa/2) sin 2phi) / D
    """
    response = field_response(p)
    d = p.response_denominator
    lam2 = p.lam**2
    c2 = math.cos(2.0 * p.phi)
    s2 = math.sin(2.0 * p.phi)
    return CouplingConstants(
        response=response,
        phi_l=math.atan2(2.0 * p.omega_l, p.kappa),
        xi=lam2 * p.omega_l / d,
        chi_plus=-lam2 * (p.omega_l * c2 + 0.5 * p.kappa * s2) / d,
        chi_minus=-lam2 * (p.omega_l * c2 - 0.5 * p.kappa * s2) / d,
    )


def chi_from_phase_shift(p: ModelParams) -> Tuple[float, float]:
    """The inter-species couplings in sin form, -lam^2 |G| sin(phi_l +/- 2 phi)."""
    coefficients = adiabatic_coefficients(p)
    scale = -(p.lam**2) * abs(coefficients.response)
    return (
        scale * math.sin(coefficients.phi_l + 2.0 * p.phi),
        scale * math.sin(coefficients.phi_l - 2.0 * p.phi),
    )


def enslaved_field(spins: SpinPair, p: ModelParams) -> complex:
    """The unique root of d(beta)/dt = 0 at fixed spins."""
    _require_finite(np.array([spins[0].sx, spins[1].sx]), "spins")
    drive = spins[0].sx * cmath.exp(1j * p.phi) + spins[1].sx * cmath.exp(-1j * p.phi)
    return -0.5j * p.lam * drive * field_response(p)


def adiabatic_vector_field(
    y: np.ndarray, p: ModelParams, coefficients: Optional[CouplingConstants] = None
) -> np.ndarray:
    """Time derivative of the 6 spin coordinates with the field eliminated."""
    k = coefficients or adiabatic_coefficients(p)
    sxp, syp, szp, sxm, sym, szm = y
    wp = p.omega0 + p.delta
    wm = p.omega0 - p.delta
    hg = 0.5 * p.gamma_down
    # lam * F_+/- at the enslaved field
    gp = -k.xi * sxp + k.chi_plus * sxm
    gm = -k.xi * sxm + k.chi_minus * sxp
    return np.array(
        [
            -wp * syp - hg * sxp,
            wp * sxp - hg * syp - szp * gp,
            -p.gamma_down * (szp + 1.0) + syp * gp,
            -wm * sym - hg * sxm,
            wm * sxm - hg * sym - szm * gm,
            -p.gamma_down * (szm + 1.0) + sym * gm,
        ]
    )


def adiabatic_rhs(spins: SpinPair, p: ModelParams) -> SpinPair:
    y = np.array(spins[0].as_tuple() + spins[1].as_tuple())
    _require_finite(y, "spins")
    rate = adiabatic_vector_field(y, p)
    return (BlochVector(*map(float, rate[0:3])), BlochVector(*map(float, rate[3:6])))


# --- phase-locked reduction --------------------------------------------------


def reduced_plus_coupling(p: ModelParams) -> float:
    """
    Nonlinear coefficient (lam^2 / 2 omega_l) sin^2(2 phi) of the locked +
    species.
    """
    return p.lam**2 / (2.0 * p.omega_l) * math.sin(2.0 * p.phi) ** 2


def reduced_plus_vector_field(y: np.ndarray, p: ModelParams) -> np.ndarray:
    sx, sy, sz = y
    g = reduced_plus_coupling(p)
    return np.array(
        [
            -p.omega0 * sy,
            p.omega0 * sx + g * sx * sz,
            -g * sx * sy,
        ]
    )


def reduced_plus_rhs(spin: BlochVector, p: ModelParams) -> BlochVector:
    y = np.array(spin.as_tuple())
    _require_finite(y, "spin")
    return BlochVector(*map(float, reduced_plus_vector_field(y, p)))


def reduced_plus_amplitude_ratio(p: ModelParams) -> float:
    """|beta| / |sx+| of the field enslaved to the locked + species."""
    return p.lam * abs(math.sin(2.0 * p.phi)) / (2.0 * p.omega_l)


def reduced_plus_field(spin: BlochVector, p: ModelParams) -> complex:
    """Field locked at angle pi/2 - phi, decoupled from the - species."""
    amplitude = -p.lam * math.sin(2.0 * p.phi) / (2.0 * p.omega_l) * spin.sx
    return amplitude * cmath.exp(1j * (0.5 * math.pi - p.phi))


# --- variants and symmetries -------------------------------------------------


def vector_field(variant: ModelVariant, p: ModelParams) -> VectorField:
    """The flow of ``variant`` as a function of its flat coordinates."""
    if variant is ModelVariant.FULL:
        return lambda y: full_vector_field(y, p)
    if variant is ModelVariant.ADIABATIC:
        coefficients = adiabatic_coefficients(p)
        return lambda y: adiabatic_vector_field(y, p, coefficients)
    return lambda y: reduced_plus_vector_field(y, p)


def parity_transform(state: SystemState) -> SystemState:
    return SystemState.from_array(PARITY_SIGNS * state.to_array())


def pt_transform(state: SystemState) -> SystemState:
    return SystemState(state.spin_minus, state.spin_plus, state.field)


def pt_params(p: ModelParams) -> ModelParams:
    """Parameter half of the PT map, (phi, delta) -> (-phi, -delta)."""
    return p.replace(phi=-p.phi, delta=-p.delta)
