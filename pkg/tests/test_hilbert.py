"""Amplitude oracle: state conventions, unitarity, and basis invariance."""

import cmath
import math

import numpy as np
import pytest

from spinstats import (
    SpinState,
    X_AXIS,
    Z_AXIS,
    make_axis,
    random_axis,
    singlet_projection_check,
    spin_half_probability,
    spin_half_state,
    spin_one_probability,
)
from spinstats.hilbert import overlap_probability, rotation_matrix_three_level, spin_one_row


class TestSpinHalfState:
    def test_z_up_is_first_basis_vector(self):
        assert spin_half_state(Z_AXIS, 1).components == (1 + 0j, 0j)

    def test_z_down_is_second_basis_vector(self):
        assert spin_half_state(Z_AXIS, -1).components == (0j, 1 + 0j)

    def test_x_up(self):
        state = spin_half_state(X_AXIS, 1)
        root_half = 1 / math.sqrt(2)
        assert abs(state.components[0] - root_half) < 1e-15
        assert abs(state.components[1] - root_half) < 1e-15

    def test_opposite_signs_are_orthogonal(self, rng):
        for _ in range(200):
            axis = random_axis(rng)
            up = spin_half_state(axis, 1).as_array()
            down = spin_half_state(axis, -1).as_array()
            assert abs(np.vdot(up, down)) < 1e-14

    def test_rejects_bad_sign(self):
        with pytest.raises(ValueError):
            spin_half_state(Z_AXIS, 0)


def test_spin_state_requires_normalization():
    with pytest.raises(ValueError):
        SpinState((1 + 0j, 1 + 0j))
    with pytest.raises(ValueError):
        SpinState((1 + 0j,))


def test_spin_half_probability_same_axis():
    assert spin_half_probability(Z_AXIS, 1, Z_AXIS, 1) == 1.0
    assert spin_half_probability(Z_AXIS, 1, Z_AXIS, -1) == 0.0


def test_spin_half_probability_orthogonal_axes():
    assert abs(spin_half_probability(Z_AXIS, 1, X_AXIS, 1) - 0.5) < 1e-15


def test_spin_half_probability_at_two_thirds_pi():
    meas = make_axis(2 * math.pi / 3, 0.0)
    # both outcome labels flipped leaves the probability at cos^2(theta/2)
    assert abs(spin_half_probability(Z_AXIS, -1, meas, -1) - 0.25) < 1e-12
    # relatively opposite labels give sin^2(theta/2)
    assert abs(spin_half_probability(Z_AXIS, 1, meas, -1) - 0.75) < 1e-12


def test_spin_half_rows_sum_to_one(rng):
    for _ in range(300):
        prep_axis, meas_axis = random_axis(rng), random_axis(rng)
        total = spin_half_probability(prep_axis, 1, meas_axis, 1) + spin_half_probability(
            prep_axis, 1, meas_axis, -1
        )
        assert abs(total - 1.0) < 1e-10


def test_global_phase_invariance(rng):
    for _ in range(100):
        a = spin_half_state(random_axis(rng), 1)
        b = spin_half_state(random_axis(rng), -1)
        phase = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        rotated = SpinState(tuple(phase * c for c in a.components))
        assert abs(overlap_probability(a, b) - overlap_probability(rotated, b)) < 1e-12


class TestSpinOne:
    def test_identity_rotation(self):
        assert abs(spin_one_probability(2, 2, 0.0) - 1.0) < 1e-14
        np.testing.assert_allclose(rotation_matrix_three_level(0.0), np.eye(3), atol=1e-14)

    def test_zero_to_plus_two_at_right_angle(self):
        assert abs(spin_one_probability(0, 2, math.pi / 2) - 0.5) < 1e-12

    def test_plus_two_to_zero_at_pi_third(self):
        assert abs(spin_one_probability(2, 0, math.pi / 3) - 0.375) < 1e-12

    def test_rows_sum_to_one(self):
        for theta in np.linspace(0.0, math.pi, 40):
            for level in (2, 0, -2):
                assert abs(sum(spin_one_row(level, float(theta))) - 1.0) < 1e-10

    def test_rotations_compose(self, rng):
        # exp(-i t1 Jy) exp(-i t2 Jy) = exp(-i (t1+t2) Jy)
        for _ in range(20):
            t1, t2 = rng.uniform(0, math.pi), rng.uniform(0, math.pi)
            lhs = rotation_matrix_three_level(t1) @ rotation_matrix_three_level(t2)
            np.testing.assert_allclose(lhs, rotation_matrix_three_level(t1 + t2), atol=1e-13)

    def test_rejects_bad_level(self):
        with pytest.raises(ValueError):
            spin_one_probability(1, 0, 0.5)
        with pytest.raises(ValueError):
            spin_one_probability(2, 3, 0.5)


def test_singlet_projection_defining_basis():
    assert abs(singlet_projection_check(Z_AXIS) - 1.0) < 1e-15


def test_singlet_projection_rotated_basis():
    assert abs(singlet_projection_check(X_AXIS) - 1.0) < 1e-12


def test_singlet_projection_random_axes(rng):
    for _ in range(200):
        assert abs(singlet_projection_check(random_axis(rng)) - 1.0) < 1e-12
