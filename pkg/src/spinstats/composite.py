"""Three-outcome statistics for a pair of elementary two-outcome systems.

Measuring the pair along one axis yields +2a, 0, or -2a.  The +/-2a rows
of the transition table follow from treating the constituents as
independent two-outcome systems.  The zero-outcome row is where the naive
treatments split:

* the *mixture* model assigns the zero outcome a 50/50 classical blend of
  the two opposite-sign constituent configurations.  Kept on purpose: it
  breaks the forward/backward symmetry of the table and makes the summed
  second moment frame-dependent (4a^2 for the zero state against 8a^2 for
  the others), which is exactly the failure it is here to exhibit;
* the *principled* model fixes the zero row by transforming the second
  moments as a symmetric rank-2 tensor, giving P(0 -> +/-2) = sin^2(theta)/2,
  twice the mixture value, and restoring both symmetry and the constant 8a^2.

Outcome labels are the integers {+2, 0, -2}; the measured values are
label * a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .axes import Frame, UnitAxis, Y_AXIS, angle_between, complete_frame, rotation_about

PROB_TOL = 1e-12

#: Outcome labels in row order.
LEVELS = (2, 0, -2)

MODELS = ("principled", "mixture")


@dataclass(frozen=True)
class CompositeState:
    """Orientation axis plus the recorded three-valued outcome label."""

    axis: UnitAxis
    level: int
    a: float = 1.0

    def __post_init__(self):
        if self.level not in LEVELS:
            raise ValueError(f"level must be one of {LEVELS}, got {self.level!r}")
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"outcome magnitude a must be positive, got {self.a!r}")
        object.__setattr__(self, "level", int(self.level))
        object.__setattr__(self, "a", float(self.a))


@dataclass(frozen=True)
class TernaryDistribution:
    """Probabilities of the +2a, 0, -2a outcomes."""

    p_plus2: float
    p_zero: float
    p_minus2: float

    def __post_init__(self):
        for p in self.as_tuple():
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"probability {p!r} outside [0, 1]")
        if abs(sum(self.as_tuple()) - 1.0) > PROB_TOL:
            raise ValueError("outcome probabilities must sum to 1")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p_plus2, self.p_zero, self.p_minus2)

    def probability(self, level: int) -> float:
        return self.as_tuple()[LEVELS.index(level)]


@dataclass(frozen=True)
class SecondMomentTensor:
    """Symmetric 3x3 tensor of second moments, components in a stated frame."""

    m: np.ndarray
    a: float

    def __post_init__(self):
        m = np.asarray(self.m, dtype=float)
        if m.shape != (3, 3):
            raise ValueError("tensor must be 3x3")
        if np.max(np.abs(m - m.T)) > PROB_TOL:
            raise ValueError("tensor must be symmetric")
        if abs(np.trace(m) - 8.0 * self.a**2) > PROB_TOL:
            raise ValueError("tensor trace must equal 8a^2")
        object.__setattr__(self, "m", m)

    @property
    def trace(self) -> float:
        return float(np.trace(self.m))


def transition_table(prepared: CompositeState, measured_axis: UnitAxis) -> TernaryDistribution:
    """Outcome distribution along a new axis (symmetric model).

    The +/-2 rows are products of the constituent probabilities; the zero
    row carries the tensor-derived sin^2(theta)/2 wings with the central
    entry fixed by normalization.
    """
    c = math.cos(angle_between(prepared.axis, measured_axis))
    s2 = 1.0 - c * c
    if prepared.level == 2:
        return TernaryDistribution((1.0 + c) ** 2 / 4.0, s2 / 2.0, (1.0 - c) ** 2 / 4.0)
    if prepared.level == -2:
        return TernaryDistribution((1.0 - c) ** 2 / 4.0, s2 / 2.0, (1.0 + c) ** 2 / 4.0)
    return TernaryDistribution(s2 / 2.0, c * c, s2 / 2.0)


def mixture_transition_table(
    prepared: CompositeState, measured_axis: UnitAxis
) -> TernaryDistribution:
    """Zero-state outcome distribution under the rejected 50/50 mixture reading.

    Only defined for the zero outcome label (the +/-2 rows involve no
    ambiguity for the mixture construction to resolve).  The wings are
    half the symmetric model's, so transitions 0 -> +/-2 come out
    suppressed relative to +/-2 -> 0.
    """
    if prepared.level != 0:
        raise ValueError("the mixture construction applies only to the zero outcome")
    c = math.cos(angle_between(prepared.axis, measured_axis))
    s2 = 1.0 - c * c
    return TernaryDistribution(s2 / 4.0, 1.0 - s2 / 2.0, s2 / 4.0)


def second_moment(prepared: CompositeState, measured_axis: UnitAxis, model: str = "principled") -> float:
    """Mean squared outcome along an axis, from the chosen model's table."""
    if model == "principled":
        dist = transition_table(prepared, measured_axis)
    elif model == "mixture":
        dist = mixture_transition_table(prepared, measured_axis)
    else:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    return sum((level * prepared.a) ** 2 * p for level, p in zip(LEVELS, dist.as_tuple()))


def expectation(prepared: CompositeState, measured_axis: UnitAxis) -> float:
    """Mean outcome along an axis from the symmetric table; equals level * a * cos(theta)."""
    dist = transition_table(prepared, measured_axis)
    return sum(level * prepared.a * p for level, p in zip(LEVELS, dist.as_tuple()))


def tensor_for_state(prepared: CompositeState) -> SecondMomentTensor:
    """Second-moment tensor in the frame whose third axis is the state axis.

    Diagonal entries are the second moments along the frame axes, read off
    the transition table; off-diagonals vanish because the table depends
    only on the relative angle (axial symmetry about e3).
    """
    frame = complete_frame(prepared.axis)
    diag = [second_moment(prepared, e) for e in frame.axes]
    return SecondMomentTensor(m=np.diag(diag), a=prepared.a)


def rotated_m33(prepared: CompositeState, theta: float) -> float:
    """Second moment along an axis tilted by theta from a zero-state axis.

    Obtained by conjugating the state's tensor with an explicit rotation
    matrix (not by evaluating a closed form), exercising the
    transformation path the zero row is derived from.  Equals
    4 a^2 sin^2(theta).
    """
    if prepared.level != 0:
        raise ValueError("the tensor rotation argument applies to the zero outcome state")
    tensor = tensor_for_state(prepared)
    # Components live in the frame with e3 = state axis; tilting the probe
    # axis within the e1-e3 plane is a rotation about the frame's e2.
    r = rotation_about(Y_AXIS, theta)
    rotated = r @ tensor.m @ r.T
    return float(rotated[2, 2])


def j_squared_composite(prepared: CompositeState, frame: Frame, model: str = "principled") -> float:
    """Sum of second moments over an orthonormal frame.

    The symmetric model returns 8a^2 for every level and every frame; the
    mixture model on the zero state returns 4a^2 instead, at odds with the
    value for the +/-2 states.
    """
    if model == "mixture" and prepared.level != 0:
        raise ValueError("the mixture construction applies only to the zero outcome")
    return sum(second_moment(prepared, e, model=model) for e in frame.axes)


def singlet_statistics(axis: UnitAxis) -> tuple[float, float]:
    """Mean outcome and summed second moment for the inter-system null state.

    The null combination of two opposite elementary systems produces the
    zero outcome along every axis, so both statistics vanish identically.
    """
    dist = TernaryDistribution(0.0, 1.0, 0.0)
    mean = sum(level * p for level, p in zip(LEVELS, dist.as_tuple()))
    per_axis = sum(level**2 * p for level, p in zip(LEVELS, dist.as_tuple()))
    total = sum(per_axis for _ in complete_frame(axis).axes)
    return (float(mean), float(total))
