"""Amplitude-based cross-check backend.

Computes the same transition probabilities as the engine modules, but by a
deliberately different route: normalized complex state vectors and squared
inner products, with the three-outcome rotation matrix obtained by
numerically exponentiating the generator rather than from closed-form
matrix elements.  The engines never call into this module; it exists so
that agreement between the two paths is a genuine check.

Conventions (probabilities do not depend on them, states do):

* polar angle ``theta`` is measured from +z, azimuth ``phi`` from +x,
  matching the frame returned by ``complete_frame(Z_AXIS)``;
* the up eigenvector along an axis is ``(cos(theta/2), e^{i phi} sin(theta/2))``
  and the down eigenvector is ``(-e^{-i phi} sin(theta/2), cos(theta/2))``,
  so the z-axis pair is exactly ``(1, 0)`` and ``(0, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .axes import UnitAxis, Z_AXIS, angle_between

NORM_TOL = 1e-12

#: Composite outcome labels in row order +2, 0, -2.
LEVELS = (2, 0, -2)

# Angular-momentum generator about y for the three-level system, in the
# basis ordered (+1, 0, -1): J+- ladder entries are sqrt(2).
_J_Y = np.array(
    [
        [0.0, -1.0j, 0.0],
        [1.0j, 0.0, -1.0j],
        [0.0, 1.0j, 0.0],
    ]
) / math.sqrt(2.0)


@dataclass(frozen=True)
class SpinState:
    """Normalized complex state vector of dimension 2 or 3."""

    components: tuple[complex, ...]

    def __post_init__(self):
        comps = tuple(complex(c) for c in self.components)
        if len(comps) not in (2, 3):
            raise ValueError("only 2- and 3-dimensional states are supported")
        if not all(math.isfinite(c.real) and math.isfinite(c.imag) for c in comps):
            raise ValueError("state components must be finite")
        norm_sq = sum(abs(c) ** 2 for c in comps)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state squared norm {norm_sq!r} deviates from 1 beyond {NORM_TOL}")
        object.__setattr__(self, "components", comps)

    @property
    def dimension(self) -> int:
        return len(self.components)

    def as_array(self) -> np.ndarray:
        return np.array(self.components, dtype=complex)


def spin_half_state(axis: UnitAxis, sign: int) -> SpinState:
    """Eigenvector of the two-outcome observable along ``axis``."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    theta = angle_between(axis, Z_AXIS)
    phi = math.atan2(axis.y, axis.x)
    ch, sh = math.cos(theta / 2.0), math.sin(theta / 2.0)
    if sign == 1:
        return SpinState((complex(ch), complex(math.cos(phi) * sh, math.sin(phi) * sh)))
    return SpinState((complex(-math.cos(phi) * sh, math.sin(phi) * sh), complex(ch)))


def overlap_probability(a: SpinState, b: SpinState) -> float:
    """Squared modulus of the inner product of two states."""
    if a.dimension != b.dimension:
        raise ValueError("states must live in the same space")
    return abs(np.vdot(a.as_array(), b.as_array())) ** 2


def spin_half_probability(
    prep_axis: UnitAxis, prep_sign: int, meas_axis: UnitAxis, meas_sign: int
) -> float:
    """Two-outcome transition probability as a squared amplitude."""
    return overlap_probability(
        spin_half_state(prep_axis, prep_sign), spin_half_state(meas_axis, meas_sign)
    )


def rotation_matrix_three_level(theta: float) -> np.ndarray:
    """Outcome-basis rotation matrix exp(-i theta Jy) for the 3-level system.

    Computed by numerical matrix exponentiation of the generator; tabulated
    closed forms are exactly what this module must stay independent of.
    """
    return expm(-1.0j * theta * _J_Y)


def _level_index(level: int) -> int:
    try:
        return LEVELS.index(level)
    except ValueError:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}") from None


def spin_one_row(prep_level: int, theta: float) -> tuple[float, float, float]:
    """Probabilities of outcomes (+2, 0, -2) after rotating the axis by theta."""
    col = _level_index(prep_level)
    d = rotation_matrix_three_level(theta)
    return tuple(float(abs(d[row, col]) ** 2) for row in range(3))


def spin_one_probability(prep_level: int, meas_level: int, theta: float) -> float:
    """Three-outcome transition probability from the exponentiated generator."""
    return spin_one_row(prep_level, theta)[_level_index(meas_level)]


def singlet_state(axis: UnitAxis) -> np.ndarray:
    """Antisymmetric two-system combination built in the eigenbasis of ``axis``."""
    up = spin_half_state(axis, 1).as_array()
    down = spin_half_state(axis, -1).as_array()
    return (np.kron(up, down) - np.kron(down, up)) / math.sqrt(2.0)


def singlet_projection_check(axis1: UnitAxis) -> float:
    """Squared overlap of the axis1-basis null combination with the z-basis one.

    Equals 1 for every axis: the antisymmetric combination spans the same
    ray no matter which basis expresses it.
    """
    return float(abs(np.vdot(singlet_state(axis1), singlet_state(Z_AXIS))) ** 2)
