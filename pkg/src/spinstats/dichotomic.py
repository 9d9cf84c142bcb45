"""Two-outcome measurement statistics from the mean-value constraint.

A prepared elementary system carries one of two outcome values (+a or -a)
along its orientation axis.  Reorienting the analyzer by an angle theta
cannot reproduce the classical projection a*cos(theta) outcome-by-outcome,
so the statistics are fixed by demanding it in the mean together with
normalization:

    p_plus - p_minus = cos(theta)   and   p_plus + p_minus = 1,

which pins p_plus = cos^2(theta/2) and p_minus = sin^2(theta/2) for a
positively prepared system; a negatively prepared one swaps the two rows.
Everything else here (variance, frame sums, sequential measurement, the
counting experiment) is derived from that table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .axes import Frame, UnitAxis, angle_between
from .rng import derive_rng

PROB_TOL = 1e-12


@dataclass(frozen=True)
class ElementaryState:
    """Orientation axis plus the recorded discrete outcome sign."""

    axis: UnitAxis
    sign: int
    a: float = 1.0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValueError(f"outcome magnitude a must be positive, got {self.a!r}")
        object.__setattr__(self, "sign", int(self.sign))
        object.__setattr__(self, "a", float(self.a))


@dataclass(frozen=True)
class BinaryDistribution:
    """Probabilities of the +a and -a outcomes."""

    p_plus: float
    p_minus: float

    def __post_init__(self):
        for p in (self.p_plus, self.p_minus):
            if not (0.0 <= p <= 1.0):
                raise ValueError(f"probability {p!r} outside [0, 1]")
        if abs(self.p_plus + self.p_minus - 1.0) > PROB_TOL:
            raise ValueError("outcome probabilities must sum to 1")

    def as_tuple(self) -> tuple[float, float]:
        return (self.p_plus, self.p_minus)


@dataclass(frozen=True)
class StokesRecord:
    """Counting-experiment record: counts, normalized difference, uncertainty."""

    n_plus: int
    n_minus: int
    estimate: float
    stderr: float
    seed: int

    def __post_init__(self):
        n = self.n_plus + self.n_minus
        if n <= 0 or self.n_plus < 0 or self.n_minus < 0:
            raise ValueError("counts must be nonnegative with at least one event")
        if abs(self.estimate) > 1.0:
            raise ValueError("normalized count difference cannot exceed 1 in magnitude")
        expected = math.sqrt(max(0.0, 1.0 - self.estimate**2) / n)
        if abs(self.stderr - expected) > PROB_TOL:
            raise ValueError("stderr inconsistent with counts")

    @property
    def n_events(self) -> int:
        return self.n_plus + self.n_minus

    @classmethod
    def from_counts(cls, n_plus: int, n_minus: int, seed: int) -> "StokesRecord":
        n = n_plus + n_minus
        estimate = (n_plus - n_minus) / n
        stderr = math.sqrt(max(0.0, 1.0 - estimate**2) / n)
        return cls(n_plus=n_plus, n_minus=n_minus, estimate=estimate, stderr=stderr, seed=seed)

    def merged(self, other: "StokesRecord") -> "StokesRecord":
        """Combine two independently seeded batches by adding counts."""
        return StokesRecord.from_counts(
            self.n_plus + other.n_plus, self.n_minus + other.n_minus, self.seed
        )

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "n_events": self.n_events,
            "counts": {"plus": self.n_plus, "minus": self.n_minus},
            "estimate": self.estimate,
            "stderr": self.stderr,
        }

    CSV_HEADER = ("seed", "n_events", "n_plus", "n_minus", "estimate", "stderr")

    def csv_row(self) -> tuple:
        return (self.seed, self.n_events, self.n_plus, self.n_minus, self.estimate, self.stderr)


def transition_probability(prepared: ElementaryState, measured_axis: UnitAxis) -> BinaryDistribution:
    """Outcome distribution along a new analyzer axis.

    Only the relative angle enters, and exchanging prepared and measured
    roles (or flipping both outcome labels) leaves the table unchanged.
    """
    theta = angle_between(prepared.axis, measured_axis)
    half = theta / 2.0
    p_up = math.cos(half) ** 2
    p_down = math.sin(half) ** 2
    if prepared.sign == 1:
        return BinaryDistribution(p_up, p_down)
    return BinaryDistribution(p_down, p_up)


def expectation(prepared: ElementaryState, measured_axis: UnitAxis) -> float:
    """Mean outcome along the measured axis: sign * a * cos(theta)."""
    theta = angle_between(prepared.axis, measured_axis)
    return prepared.sign * prepared.a * math.cos(theta)


def second_moment(prepared: ElementaryState, measured_axis: UnitAxis) -> float:
    """Mean squared outcome; a constant a^2 because both outcomes square to a^2."""
    dist = transition_probability(prepared, measured_axis)
    a2 = prepared.a**2
    return a2 * dist.p_plus + a2 * dist.p_minus


def j_squared(prepared: ElementaryState, frame: Frame) -> float:
    """Sum of second moments over an orthonormal frame; 3a^2 for every frame."""
    return sum(second_moment(prepared, e) for e in frame.axes)


def measure(
    state: ElementaryState, axis: UnitAxis, rng: np.random.Generator
) -> tuple[float, ElementaryState]:
    """Sample one outcome and return it with the updated state.

    The post-measurement state is oriented along the measurement axis with
    the sampled sign, so an immediate repeat along the same axis returns
    the same outcome with probability 1.
    """
    dist = transition_probability(state, axis)
    sign = 1 if rng.random() < dist.p_plus else -1
    return (sign * state.a, ElementaryState(axis=axis, sign=sign, a=state.a))


def sample_counts(
    prepared: ElementaryState, axis: UnitAxis, trials: int, rng: np.random.Generator
) -> tuple[int, int]:
    """Counts of (+a, -a) outcomes over many identically prepared systems."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    dist = transition_probability(prepared, axis)
    n_plus = int(rng.binomial(trials, dist.p_plus))
    return (n_plus, trials - n_plus)


def stokes_experiment(
    prep_axis: UnitAxis, measure_axis: UnitAxis, n_events: int, seed: int
) -> StokesRecord:
    """Count single-quantum detections in the +/- channels of an analyzer.

    The prepared beam is the +1 state along ``prep_axis``; each quantum
    lands in the plus channel with probability cos^2(theta/2).  The
    normalized count difference estimates prep . meas and carries the
    binomial standard error sqrt((1 - estimate^2) / N).
    """
    if n_events < 1:
        raise ValueError("n_events must be at least 1")
    prepared = ElementaryState(axis=prep_axis, sign=1)
    n_plus, n_minus = sample_counts(prepared, measure_axis, n_events, derive_rng(seed))
    return StokesRecord.from_counts(n_plus, n_minus, seed)


def chi_square(observed: tuple[int, ...], expected: tuple[float, ...]) -> float:
    """Pearson chi-square statistic; zero-probability cells must stay empty."""
    total = 0.0
    for obs, exp in zip(observed, expected):
        if exp == 0.0:
            if obs != 0:
                return math.inf
            continue
        total += (obs - exp) ** 2 / exp
    return total
