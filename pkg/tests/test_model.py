# -*- coding: utf-8 -*-
#
# Copyright (C) 2026 The nonreciprocal-dicke developers
#
# Distributed under the Apache License, Version 2.0
# See accompanying LICENSE file in this repository or at
# https://www.apache.org/licenses/LICENSE-2.0
#
import math

import numpy as np

from nonreciprocal_dicke.exceptions import DomainError
from nonreciprocal_dicke.model import BlochVector
from nonreciprocal_dicke.model import ModelParams
from nonreciprocal_dicke.model import ModelVariant
from nonreciprocal_dicke.model import PARITY_SIGNS
from nonreciprocal_dicke.model import SPECIES_SWAP
from nonreciprocal_dicke.model import SystemState
from nonreciprocal_dicke.model import adiabatic_coefficients
from nonreciprocal_dicke.model import adiabatic_rhs
from nonreciprocal_dicke.model import chi_from_phase_shift
from nonreciprocal_dicke.model import enslaved_field
from nonreciprocal_dicke.model import full_rhs
from nonreciprocal_dicke.model import full_vector_field
from nonreciprocal_dicke.model import parity_transform
from nonreciprocal_dicke.model import pt_params
from nonreciprocal_dicke.model import pt_transform
from nonreciprocal_dicke.model import reduced_plus_amplitude_ratio
from nonreciprocal_dicke.model import reduced_plus_field
from nonreciprocal_dicke.model import reduced_plus_rhs
from nonreciprocal_dicke.model import vector_field
from tests import DickeTestCase
from tests import QUARTER


class ParamsTest(DickeTestCase):
    def test_defaults(self) -> None:
        p = ModelParams()
        self.assertEqual(
            (20.0, 1.0, 0.0, 0.0, 0.0, 12.5, 0.0),
            (p.omega_l, p.omega0, p.delta, p.lam, p.phi, p.kappa, p.gamma_down),
        )
        self.assertAlmostEqual(439.0625, p.response_denominator)

    def test_invalid(self) -> None:
        invalid = (
            {"kappa": -1.0},
            {"lam": -0.1},
            {"gamma_down": -1e-3},
            {"omega_l": 0.0},
            {"phi": math.nan},
            {"delta": math.inf},
        )
        for changes in invalid:
            with self.subTest(changes=changes):
                with self.assertRaises(DomainError) as raised:
                    ModelParams(**changes)
                self.assertEqual(next(iter(changes)), raised.exception.quantity)

    def test_phi_is_wrapped(self) -> None:
        self.assertAlmostEqual(4.0 - 2 * math.pi, ModelParams(phi=4.0).phi, places=14)
        self.assertAlmostEqual(-math.pi, ModelParams(phi=math.pi).phi, places=14)
        self.assertEqual(0.5, ModelParams(phi=0.5).phi)
        self.assertEqual(-0.5, ModelParams(phi=-0.5).phi)


class FullFlowTest(DickeTestCase):
    def test_normal_phase_is_fixed(self) -> None:
        y = SystemState.normal_phase().to_array()
        for _ in range(20):
            p = self.params(
                lam=self.rng.uniform(0, 6),
                phi=self.rng.uniform(-math.pi, math.pi),
                delta=self.rng.uniform(-0.2, 0.2),
                gamma_down=self.rng.uniform(0, 0.5),
            )
            np.testing.assert_array_equal(np.zeros(8), full_vector_field(y, p))

    def test_parity_equivariance(self) -> None:
        for _ in range(20):
            p = self.params(
                lam=self.rng.uniform(0, 6),
                phi=self.rng.uniform(-1.5, 1.5),
                delta=0.05,
                gamma_down=0.1,
            )
            y = self.random_ball_state()
            np.testing.assert_allclose(
                PARITY_SIGNS * full_vector_field(y, p),
                full_vector_field(PARITY_SIGNS * y, p),
                rtol=0,
                atol=1e-14,
            )

    def test_pt_equivariance(self) -> None:
        for _ in range(20):
            p = self.params(
                lam=self.rng.uniform(0, 6),
                phi=self.rng.uniform(-1.5, 1.5),
                delta=self.rng.uniform(-0.1, 0.1),
            )
            y = self.random_ball_state()
            swapped = full_vector_field(y[SPECIES_SWAP], pt_params(p))
            np.testing.assert_allclose(
                full_vector_field(y, p)[SPECIES_SWAP], swapped, rtol=0, atol=1e-14
            )

    def test_rhs_rejects_non_finite(self) -> None:
        state = SystemState(BlochVector(math.nan, 0.0, -1.0))
        with self.assertRaises(DomainError):
            full_rhs(state, self.params(lam=1.0))

    def test_field_equation(self) -> None:
        p = self.params(lam=2.0, phi=0.3)
        state = SystemState(
            BlochVector(0.6, 0.0, -0.8), BlochVector(-0.2, 0.1, 0.5), 0.1 - 0.05j
        )
        rate = full_rhs(state, p).field
        drive = state.spin_plus.sx * np.exp(1j * p.phi)
        drive += state.spin_minus.sx * np.exp(-1j * p.phi)
        expected = (
            -(1j * p.omega_l + 0.5 * p.kappa) * state.field - 0.5j * p.lam * drive
        )
        self.assertAlmostEqual(expected, rate, places=14)


class AdiabaticTest(DickeTestCase):
    def test_coefficients_at_reference_cavity(self) -> None:
        k = adiabatic_coefficients(self.params(lam=1.0, phi=QUARTER))
        self.assertAlmostEqual(0.045552, k.xi, places=6)
        self.assertAlmostEqual(-0.014235, k.chi_plus, places=6)
        self.assertAlmostEqual(0.014235, k.chi_minus, places=6)
        self.assertAlmostEqual(math.atan(3.2), k.phi_l, places=14)

    def test_phase_shift_form(self) -> None:
        for phi in np.linspace(-math.pi, math.pi, 17):
            p = self.params(lam=2.5, phi=float(phi))
            k = adiabatic_coefficients(p)
            chi_plus, chi_minus = chi_from_phase_shift(p)
            self.assertAlmostEqual(k.chi_plus, chi_plus, places=13)
            self.assertAlmostEqual(k.chi_minus, chi_minus, places=13)

    def test_reciprocal_limit(self) -> None:
        k = adiabatic_coefficients(self.params(lam=2.0, phi=0.0))
        self.assertAlmostEqual(k.chi_plus, k.chi_minus, places=15)
        self.assertAlmostEqual(-k.xi, k.chi_plus, places=15)

    def test_enslaved_field_identity(self) -> None:
        for _ in range(50):
            p = self.params(
                lam=self.rng.uniform(0, 6),
                phi=self.rng.uniform(-math.pi, math.pi),
                delta=0.03,
                gamma_down=0.05,
            )
            y = self.random_ball_state()
            spins = (BlochVector(*y[0:3]), BlochVector(*y[3:6]))
            beta = enslaved_field(spins, p)
            exact = full_rhs(SystemState(spins[0], spins[1], beta), p)
            self.assertAlmostEqual(0.0, abs(exact.field), places=12)
            approximate = adiabatic_rhs(spins, p)
            expected = np.array(
                exact.spin_plus.as_tuple() + exact.spin_minus.as_tuple()
            )
            actual = np.array(approximate[0].as_tuple() + approximate[1].as_tuple())
            scale = max(1.0, float(np.max(np.abs(expected))))
            error = float(np.max(np.abs(expected - actual)))
            self.assertLessEqual(error / scale, 1e-12)

    def test_vector_field_dimensions(self) -> None:
        p = self.params(lam=1.0, phi=0.2)
        for variant in ModelVariant:
            y = variant.coordinates(SystemState.normal_phase())
            self.assertEqual(variant.dimension, y.size)
            np.testing.assert_array_equal(
                np.zeros(variant.dimension), vector_field(variant, p)(y)
            )


class ReducedPlusTest(DickeTestCase):
    def test_normal_phase_is_fixed(self) -> None:
        p = self.params(lam=3.0, phi=QUARTER)
        rate = reduced_plus_rhs(BlochVector(0.0, 0.0, -1.0), p)
        self.assertEqual((0.0, 0.0, 0.0), rate.as_tuple())

    def test_norm_is_conserved(self) -> None:
        p = self.params(lam=3.0, phi=0.6)
        for _ in range(10):
            spin = BlochVector(*self.random_ball_state()[0:3])
            rate = reduced_plus_rhs(spin, p)
            power = float(np.dot(spin.as_tuple(), rate.as_tuple()))
            self.assertAlmostEqual(0.0, power, places=14)

    def test_locked_field(self) -> None:
        p = self.params(lam=3.0, phi=0.4)
        spin = BlochVector(0.5, 0.1, -0.7)
        beta = reduced_plus_field(spin, p)
        ratio = reduced_plus_amplitude_ratio(p)
        self.assertAlmostEqual(ratio * 0.5, abs(beta), places=14)
        angle = np.angle(-beta) % math.pi
        self.assertAlmostEqual(math.pi / 2 - p.phi, angle, places=12)
        reciprocal = self.params(lam=3.0, phi=0.0)
        self.assertEqual(0.0, reduced_plus_amplitude_ratio(reciprocal))

    def test_lift_carries_no_minus_species(self) -> None:
        state = ModelVariant.REDUCED_PLUS.state_from(
            np.array([0.6, 0.0, -0.8]),
            self.params(lam=2.0, phi=QUARTER),
            with_field=True,
        )
        self.assertEqual((0.0, 0.0, 0.0), state.spin_minus.as_tuple())
        self.assertNotEqual(0j, state.field)


class SymmetryMapsTest(DickeTestCase):
    def sample_state(self) -> SystemState:
        return SystemState(
            BlochVector(0.1, 0.2, -0.3), BlochVector(0.4, -0.5, 0.6), 0.7 - 0.8j
        )

    def test_parity_transform(self) -> None:
        state = self.sample_state()
        image = parity_transform(state)
        self.assertEqual((-0.1, -0.2, -0.3), image.spin_plus.as_tuple())
        self.assertEqual(-0.7 + 0.8j, image.field)
        self.assertEqual(state, parity_transform(image))

    def test_pt_transform(self) -> None:
        state = self.sample_state()
        image = pt_transform(state)
        self.assertEqual(state.spin_minus, image.spin_plus)
        self.assertEqual(state.spin_plus, image.spin_minus)
        self.assertEqual(state.field, image.field)
        p = pt_params(self.params(lam=1.0, phi=0.3, delta=0.05))
        self.assertEqual((-0.3, -0.05), (p.phi, p.delta))

    def test_state_round_trip(self) -> None:
        y = self.random_ball_state()
        np.testing.assert_array_equal(y, SystemState.from_array(y).to_array())
        with self.assertRaises(DomainError):
            SystemState.from_array(np.zeros(6))
