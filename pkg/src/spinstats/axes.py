"""Unit vectors on the measurement sphere, angles, and orthonormal frames.

Axes are stored as Cartesian unit 3-vectors so that dot products (and
through them every transition probability) come straight from the
components; polar/azimuthal angles are derived quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Tolerance for the unit-norm / orthonormality invariants.
NORM_TOL = 1e-12

#: Constructors silently renormalize inputs whose norm is off by less than
#: this, and reject anything worse.  Small enough to fix float drift from
#: rotations, large enough to catch genuinely wrong vectors.
RENORM_LIMIT = 1e-6


@dataclass(frozen=True)
class UnitAxis:
    """A direction on the unit sphere (Poincare/Bloch sphere point)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        x, y, z = float(self.x), float(self.y), float(self.z)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise ValueError("axis components must be finite")
        norm = math.sqrt(x * x + y * y + z * z)
        if abs(norm - 1.0) >= RENORM_LIMIT:
            raise ValueError(f"axis norm {norm!r} is not within {RENORM_LIMIT} of 1")
        if norm != 1.0:
            x, y, z = x / norm, y / norm, z / norm
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    def dot(self, other: "UnitAxis") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "UnitAxis") -> tuple[float, float, float]:
        """Cross product as a raw tuple (generally not unit length)."""
        return (
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def __neg__(self) -> "UnitAxis":
        return UnitAxis(-self.x, -self.y, -self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)

    def to_json(self) -> list[float]:
        """Wire form: a plain ``[x, y, z]`` array."""
        return [self.x, self.y, self.z]


X_AXIS = UnitAxis(1.0, 0.0, 0.0)
Y_AXIS = UnitAxis(0.0, 1.0, 0.0)
Z_AXIS = UnitAxis(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class Frame:
    """Right-handed orthonormal triple (e1, e2, e3)."""

    e1: UnitAxis
    e2: UnitAxis
    e3: UnitAxis

    def __post_init__(self):
        for a, b in ((self.e1, self.e2), (self.e1, self.e3), (self.e2, self.e3)):
            if abs(a.dot(b)) > NORM_TOL:
                raise ValueError("frame axes must be pairwise orthogonal")
        cx, cy, cz = self.e1.cross(self.e2)
        if max(abs(cx - self.e3.x), abs(cy - self.e3.y), abs(cz - self.e3.z)) > NORM_TOL:
            raise ValueError("frame must be right-handed (e1 x e2 = e3)")

    @property
    def axes(self) -> tuple[UnitAxis, UnitAxis, UnitAxis]:
        return (self.e1, self.e2, self.e3)


CANONICAL_FRAME = Frame(X_AXIS, Y_AXIS, Z_AXIS)


def make_axis(theta: float, phi: float) -> UnitAxis:
    """Axis at polar angle ``theta`` from +z and azimuth ``phi`` from +x."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("angles must be finite")
    st = math.sin(theta)
    return UnitAxis(st * math.cos(phi), st * math.sin(phi), math.cos(theta))


def angle_between(a: UnitAxis, b: UnitAxis) -> float:
    """Angle in [0, pi] between two axes.

    Uses atan2(|a x b|, a . b), which stays accurate near 0 and pi where
    acos of the dot product loses digits.
    """
    cx, cy, cz = a.cross(b)
    return math.atan2(math.sqrt(cx * cx + cy * cy + cz * cz), a.dot(b))


def complete_frame(e3: UnitAxis) -> Frame:
    """Deterministic right-handed orthonormal frame with the given e3.

    The Gram-Schmidt seed is the coordinate axis least aligned with e3
    (ties broken toward x, then y), which keeps the construction stable
    near the poles and makes the result a pure function of e3.
    """
    seeds = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
    dots = (abs(e3.x), abs(e3.y), abs(e3.z))
    sx, sy, sz = seeds[dots.index(min(dots))]
    d = sx * e3.x + sy * e3.y + sz * e3.z
    ux, uy, uz = sx - d * e3.x, sy - d * e3.y, sz - d * e3.z
    n = math.sqrt(ux * ux + uy * uy + uz * uz)
    e1 = UnitAxis(ux / n, uy / n, uz / n)
    e2 = UnitAxis(*e3.cross(e1))
    return Frame(e1, e2, e3)


def rotation_about(axis: UnitAxis, angle: float) -> np.ndarray:
    """3x3 rotation matrix for a rotation by ``angle`` about ``axis``."""
    k = axis.as_array()
    kx, ky, kz = k
    cross = np.array([[0.0, -kz, ky], [kz, 0.0, -kx], [-ky, kx, 0.0]])
    c, s = math.cos(angle), math.sin(angle)
    return c * np.eye(3) + s * cross + (1.0 - c) * np.outer(k, k)


def rotate_axis(matrix: np.ndarray, axis: UnitAxis) -> UnitAxis:
    return UnitAxis(*(matrix @ axis.as_array()))


def random_axis(rng: np.random.Generator) -> UnitAxis:
    """Axis drawn uniformly from the sphere."""
    z = rng.uniform(-1.0, 1.0)
    phi = rng.uniform(0.0, 2.0 * math.pi)
    s = math.sqrt(max(0.0, 1.0 - z * z))
    return UnitAxis(s * math.cos(phi), s * math.sin(phi), z)


def parse_angle(text: str) -> float:
    """Parse an angle string with a mandatory ``deg`` or ``rad`` suffix.

    Bare numbers are rejected on purpose: mixing degree and radian inputs
    silently is the classic way to ruin a run.
    """
    s = str(text).strip().lower()
    for suffix, scale in (("deg", math.pi / 180.0), ("rad", 1.0)):
        if s.endswith(suffix):
            try:
                value = float(s[: -len(suffix)])
            except ValueError:
                raise ValueError(f"cannot parse angle {text!r}") from None
            return value * scale
    raise ValueError(f"angle {text!r} needs an explicit 'deg' or 'rad' suffix")


def axis_from_json(data) -> UnitAxis:
    """Accept either ``[x, y, z]`` or ``{"theta": t, "phi": p}``.

    In the object form, numeric angle values are radians; strings carry a
    unit suffix (see :func:`parse_angle`).
    """
    if isinstance(data, (list, tuple)):
        if len(data) != 3:
            raise ValueError(f"axis array must have 3 components, got {len(data)}")
        return UnitAxis(float(data[0]), float(data[1]), float(data[2]))
    if isinstance(data, dict):
        extra = set(data) - {"theta", "phi"}
        if extra or "theta" not in data:
            raise ValueError(f"axis object must have keys theta (and optionally phi), got {sorted(data)}")
        theta = _angle_value(data["theta"])
        phi = _angle_value(data.get("phi", 0.0))
        return make_axis(theta, phi)
    raise ValueError(f"cannot interpret {data!r} as an axis")


def _angle_value(value) -> float:
    if isinstance(value, str):
        return parse_angle(value)
    return float(value)
