"""Three-outcome engine: tables, the mixture discrepancy, tensor rotation."""

import math

import numpy as np
import pytest

from spinstats import (
    CANONICAL_FRAME,
    CompositeState,
    ElementaryState,
    SecondMomentTensor,
    TernaryDistribution,
    X_AXIS,
    Z_AXIS,
    j_squared_composite,
    make_axis,
    mixture_transition_table,
    random_axis,
    rotation_about,
    rotated_m33,
    singlet_statistics,
    tensor_for_state,
    transition_probability,
    transition_table,
)
from spinstats.axes import rotate_axis
from spinstats.composite import LEVELS, expectation, second_moment
from spinstats.hilbert import spin_one_row
from spinstats.verify import random_frame


def prepared(level, a=1.0):
    return CompositeState(axis=Z_AXIS, level=level, a=a)


class TestTransitionTable:
    def test_identity_axis(self):
        assert transition_table(prepared(2), Z_AXIS).as_tuple() == (1.0, 0.0, 0.0)
        assert transition_table(prepared(0), Z_AXIS).as_tuple() == (0.0, 1.0, 0.0)
        assert transition_table(prepared(-2), Z_AXIS).as_tuple() == (0.0, 0.0, 1.0)

    def test_plus_two_at_right_angle(self):
        table = transition_table(prepared(2), X_AXIS)
        assert abs(table.p_plus2 - 0.25) < 1e-12
        assert abs(table.p_zero - 0.5) < 1e-12
        assert abs(table.p_minus2 - 0.25) < 1e-12

    def test_zero_at_right_angle(self):
        table = transition_table(prepared(0), X_AXIS)
        assert abs(table.p_plus2 - 0.5) < 1e-12
        assert abs(table.p_zero) < 1e-12
        assert abs(table.p_minus2 - 0.5) < 1e-12

    def test_zero_at_quarter_turn_against_oracle(self):
        meas = make_axis(math.pi / 4, 0.0)
        table = transition_table(prepared(0), meas)
        assert abs(table.p_plus2 - 0.25) < 1e-12
        assert abs(table.p_zero - 0.5) < 1e-12
        oracle = spin_one_row(0, math.pi / 4)
        for ours, theirs in zip(table.as_tuple(), oracle):
            assert abs(ours - theirs) < 1e-12

    def test_minus_two_row_is_reversed_plus_two_row(self, rng):
        for _ in range(200):
            axis, meas = random_axis(rng), random_axis(rng)
            up = transition_table(CompositeState(axis, 2), meas)
            down = transition_table(CompositeState(axis, -2), meas)
            assert up.as_tuple() == tuple(reversed(down.as_tuple()))

    def test_rows_sum_to_one(self, rng):
        for _ in range(10_000):
            level = LEVELS[rng.integers(0, 3)]
            table = transition_table(CompositeState(random_axis(rng), level), random_axis(rng))
            assert abs(sum(table.as_tuple()) - 1.0) < 1e-12

    def test_oracle_agreement_random_angles(self, rng):
        for _ in range(1000):
            theta = rng.uniform(0.0, math.pi)
            meas = make_axis(theta, 0.0)
            level = LEVELS[rng.integers(0, 3)]
            table = transition_table(prepared(level), meas)
            for ours, theirs in zip(table.as_tuple(), spin_one_row(level, theta)):
                assert abs(ours - theirs) < 1e-12

    def test_reversibility(self, rng):
        for _ in range(500):
            a, b = random_axis(rng), random_axis(rng)
            for k in LEVELS:
                forward = transition_table(CompositeState(a, k), b)
                for j in LEVELS:
                    backward = transition_table(CompositeState(b, j), a)
                    assert abs(forward.probability(j) - backward.probability(k)) < 1e-15

    def test_plus_minus_rows_match_product_construction(self, rng):
        # the +/-2 rows are what two independent elementary systems give
        for _ in range(300):
            axis, meas = random_axis(rng), random_axis(rng)
            single = transition_probability(ElementaryState(axis, 1), meas)
            p, q = single.p_plus, single.p_minus
            table = transition_table(CompositeState(axis, 2), meas)
            assert abs(table.p_plus2 - p * p) < 1e-12
            assert abs(table.p_zero - 2 * p * q) < 1e-12
            assert abs(table.p_minus2 - q * q) < 1e-12


class TestMixtureTable:
    def test_identity_axis(self):
        assert mixture_transition_table(prepared(0), Z_AXIS).as_tuple() == (0.0, 1.0, 0.0)

    def test_right_angle(self):
        table = mixture_transition_table(prepared(0), X_AXIS)
        assert abs(table.p_plus2 - 0.25) < 1e-12
        assert abs(table.p_zero - 0.5) < 1e-12

    def test_quarter_turn(self):
        table = mixture_transition_table(prepared(0), make_axis(math.pi / 4, 0.0))
        assert abs(table.p_plus2 - 0.125) < 1e-12
        assert abs(table.p_zero - 0.75) < 1e-12

    def test_rejects_nonzero_levels(self):
        for level in (2, -2):
            with pytest.raises(ValueError):
                mixture_transition_table(prepared(level), X_AXIS)

    def test_rows_sum_to_one(self, rng):
        for _ in range(2000):
            table = mixture_transition_table(
                CompositeState(random_axis(rng), 0), random_axis(rng)
            )
            assert abs(sum(table.as_tuple()) - 1.0) < 1e-12

    def test_breaks_reversibility_by_exactly_half(self, rng):
        # transitions 0 -> +/-2 come out half as likely as +/-2 -> 0
        for _ in range(500):
            a, b = random_axis(rng), random_axis(rng)
            mixture = mixture_transition_table(CompositeState(a, 0), b)
            forward = transition_table(CompositeState(b, 2), a)
            assert abs(mixture.p_plus2 - 0.5 * forward.probability(0)) < 1e-15

    def test_factor_two_against_symmetric_model(self, rng):
        for _ in range(500):
            a, b = random_axis(rng), random_axis(rng)
            principled = transition_table(CompositeState(a, 0), b)
            mixture = mixture_transition_table(CompositeState(a, 0), b)
            assert abs(principled.p_plus2 - 2.0 * mixture.p_plus2) < 1e-15
            assert abs(principled.p_minus2 - 2.0 * mixture.p_minus2) < 1e-15


class TestSecondMomentTensor:
    def test_zero_state_tensor(self):
        tensor = tensor_for_state(prepared(0))
        np.testing.assert_allclose(tensor.m, np.diag([4.0, 4.0, 0.0]), atol=1e-12)
        assert tensor.trace == pytest.approx(8.0, abs=1e-12)

    def test_plus_two_tensor(self):
        tensor = tensor_for_state(prepared(2))
        np.testing.assert_allclose(tensor.m, np.diag([2.0, 2.0, 4.0]), atol=1e-12)

    def test_trace_scales_with_a(self):
        tensor = tensor_for_state(prepared(-2, a=0.5))
        assert tensor.trace == pytest.approx(2.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            SecondMomentTensor(m=np.diag([4.0, 4.0, 4.0]), a=1.0)  # wrong trace
        bad = np.diag([4.0, 4.0, 0.0])
        bad[0, 1] = 0.1
        with pytest.raises(ValueError):
            SecondMomentTensor(m=bad, a=1.0)


class TestRotatedM33:
    def test_no_rotation(self):
        assert rotated_m33(prepared(0), 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_right_angle(self):
        assert rotated_m33(prepared(0), math.pi / 2) == pytest.approx(4.0, abs=1e-12)

    def test_thirty_degrees(self):
        assert rotated_m33(prepared(0), math.pi / 6) == pytest.approx(1.0, abs=1e-12)

    def test_matches_sine_form_on_grid(self):
        for a in (1.0, 0.7):
            state = prepared(0, a=a)
            for theta in np.linspace(0.0, math.pi, 50):
                expected = 4.0 * a * a * math.sin(theta) ** 2
                assert abs(rotated_m33(state, float(theta)) - expected) < 1e-12

    def test_rejects_nonzero_levels(self):
        with pytest.raises(ValueError):
            rotated_m33(prepared(2), 0.3)


class TestJSquaredComposite:
    def test_symmetric_model_value(self):
        for level in LEVELS:
            assert j_squared_composite(prepared(level), CANONICAL_FRAME) == pytest.approx(
                8.0, abs=1e-12
            )

    def test_mixture_model_value(self):
        assert j_squared_composite(prepared(0), CANONICAL_FRAME, model="mixture") == pytest.approx(
            4.0, abs=1e-12
        )

    def test_symmetric_model_is_frame_independent(self, rng):
        for _ in range(100):
            level = LEVELS[rng.integers(0, 3)]
            a = rng.uniform(0.3, 2.0)
            state = CompositeState(random_axis(rng), level, a=a)
            value = j_squared_composite(state, random_frame(rng))
            assert abs(value - 8.0 * a * a) < 1e-10

    def test_mixture_rejects_nonzero_levels(self):
        with pytest.raises(ValueError):
            j_squared_composite(prepared(2), CANONICAL_FRAME, model="mixture")

    def test_rejects_unknown_model(self):
        with pytest.raises(ValueError):
            second_moment(prepared(0), X_AXIS, model="bogus")


def test_mean_transforms_as_a_vector(rng):
    # reconstructing the mean vector from any frame gives the same world vector
    for _ in range(200):
        level = LEVELS[rng.integers(0, 3)]
        state = CompositeState(random_axis(rng), level, a=rng.uniform(0.3, 2.0))
        frame_a, frame_b = random_frame(rng), random_frame(rng)

        def world_mean(frame):
            return sum(
                expectation(state, e) * e.as_array() for e in frame.axes
            )

        np.testing.assert_allclose(world_mean(frame_a), world_mean(frame_b), atol=1e-10)
        np.testing.assert_allclose(
            world_mean(frame_a), state.level * state.a * state.axis.as_array(), atol=1e-10
        )


def test_mean_vector_follows_frame_rotation(rng):
    # components in a rotated frame equal the rotated components
    for _ in range(100):
        state = CompositeState(random_axis(rng), 2, a=1.0)
        frame = random_frame(rng)
        r = rotation_about(random_axis(rng), rng.uniform(0, 2 * math.pi))
        rotated_axes = [rotate_axis(r, e) for e in frame.axes]
        rotated_state = CompositeState(rotate_axis(r, state.axis), 2, a=1.0)
        before = [expectation(state, e) for e in frame.axes]
        after = [expectation(rotated_state, e) for e in rotated_axes]
        np.testing.assert_allclose(before, after, atol=1e-10)


class TestSingletStatistics:
    def test_z_axis(self):
        assert singlet_statistics(Z_AXIS) == (0.0, 0.0)

    def test_x_axis(self):
        assert singlet_statistics(X_AXIS) == (0.0, 0.0)

    def test_random_axes(self, rng):
        for _ in range(300):
            mean, total = singlet_statistics(random_axis(rng))
            assert mean == 0.0
            assert total == 0.0


def test_ternary_distribution_validation():
    with pytest.raises(ValueError):
        TernaryDistribution(0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        TernaryDistribution(-0.1, 0.6, 0.5)


def test_composite_state_validation():
    with pytest.raises(ValueError):
        CompositeState(Z_AXIS, 1)
    with pytest.raises(ValueError):
        CompositeState(Z_AXIS, 2, a=-0.5)
