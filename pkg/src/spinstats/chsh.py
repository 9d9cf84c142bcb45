"""CHSH statistic for pluggable correlation models, plus pair sampling.

The statistic combines four two-analyzer correlations,

    b = E(n, m) + E(n', m) + E(n, m') - E(n', m'),

the expansion of [v1(n) + v1(n')] v2(m) + [v1(n) - v1(n')] v2(m').  Models:

* ``quantum_singlet``: E(x, y) = -(x . y), the mean-value rule for a pair
  with zero total along every axis;
* ``lhv_sign``: both observers read the sign of their axis against a shared
  uniformly random unit vector (observer 2 negated), giving the closed
  form E = -1 + 2 theta / pi;
* ``lhv_deterministic``: one of the 16 fixed +/-1 assignments, every one of
  which has b = +/-2 exactly, so every convex mixture obeys |b| <= 2.

Sampling uses the unique joint law with uniform +/-1 marginals and the
required mean product, P(v1, v2) = (1 - v1 v2 (n . m)) / 4; trials are
split into independently seeded batches whose counts add, so estimates do
not depend on execution order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .axes import UnitAxis, angle_between, make_axis
from .rng import derive_rng

VIOLATION_MARGIN = 1e-12

#: Pair order used everywhere: (n,m), (n',m), (n,m'), (n',m').
PAIR_LABELS = ("nm", "npm", "nmp", "npmp")


@dataclass(frozen=True)
class ChshConfig:
    """The four analyzer axes, two per observer."""

    n: UnitAxis
    n_prime: UnitAxis
    m: UnitAxis
    m_prime: UnitAxis

    @classmethod
    def canonical(cls) -> "ChshConfig":
        """Coplanar axes at successive 45 degrees, ordered n', m, n, m'."""
        quarter = math.pi / 4.0
        return cls(
            n=make_axis(2 * quarter, 0.0),
            n_prime=make_axis(0.0, 0.0),
            m=make_axis(quarter, 0.0),
            m_prime=make_axis(3 * quarter, 0.0),
        )

    def pairs(self) -> tuple[tuple[UnitAxis, UnitAxis], ...]:
        return ((self.n, self.m), (self.n_prime, self.m), (self.n, self.m_prime), (self.n_prime, self.m_prime))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n.to_json(),
            "n_prime": self.n_prime.to_json(),
            "m": self.m.to_json(),
            "m_prime": self.m_prime.to_json(),
        }


@dataclass(frozen=True)
class DeterministicStrategy:
    """Fixed +/-1 answers for the four analyzer slots."""

    v1n: int
    v1np: int
    v2m: int
    v2mp: int

    def __post_init__(self):
        for v in (self.v1n, self.v1np, self.v2m, self.v2mp):
            if v not in (1, -1):
                raise ValueError(f"strategy values must be +/-1, got {v!r}")

    def b_value(self) -> int:
        return (self.v1n + self.v1np) * self.v2m + (self.v1n - self.v1np) * self.v2mp

    @classmethod
    def all_strategies(cls) -> tuple["DeterministicStrategy", ...]:
        return tuple(cls(*values) for values in itertools.product((1, -1), repeat=4))


def quantum_correlator(n: UnitAxis, m: UnitAxis) -> float:
    """Mean product of outcomes for the zero-total pair: -(n . m)."""
    return -n.dot(m)


def lhv_sign_correlator(n: UnitAxis, m: UnitAxis) -> float:
    """Closed-form correlation of the shared-random-vector sign model.

    v1 = sign(n . lambda), v2 = -sign(m . lambda) with lambda uniform on
    the sphere; averaging gives -1 + 2 theta / pi.
    """
    return -1.0 + 2.0 * angle_between(n, m) / math.pi


@dataclass(frozen=True)
class CorrelatorModel:
    """A rule assigning each analyzer pair a correlation in [-1, 1]."""

    kind: str
    strategy: DeterministicStrategy | None = None
    components: tuple[tuple[float, DeterministicStrategy], ...] | None = None

    @classmethod
    def quantum_singlet(cls) -> "CorrelatorModel":
        return cls(kind="quantum_singlet")

    @classmethod
    def lhv_sign(cls) -> "CorrelatorModel":
        return cls(kind="lhv_sign")

    @classmethod
    def deterministic(cls, strategy: DeterministicStrategy) -> "CorrelatorModel":
        return cls(kind="lhv_deterministic", strategy=strategy)

    @classmethod
    def mixture(cls, weighted: list[tuple[float, DeterministicStrategy]]) -> "CorrelatorModel":
        weights = [w for w, _ in weighted]
        if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
            raise ValueError("mixture weights must be nonnegative and sum to 1")
        return cls(kind="lhv_mixture", components=tuple((float(w), s) for w, s in weighted))

    def correlation(self, n: UnitAxis, m: UnitAxis) -> float:
        """Axis-level correlation; defined for the axis-driven model kinds."""
        if self.kind == "quantum_singlet":
            return quantum_correlator(n, m)
        if self.kind == "lhv_sign":
            return lhv_sign_correlator(n, m)
        raise ValueError(f"{self.kind} assigns values per analyzer slot, not per axis pair")

    def pair_correlations(self, config: ChshConfig) -> tuple[float, float, float, float]:
        if self.kind in ("quantum_singlet", "lhv_sign"):
            return tuple(self.correlation(a, b) for a, b in config.pairs())
        if self.kind == "lhv_deterministic":
            s = self.strategy
            return (s.v1n * s.v2m, s.v1np * s.v2m, s.v1n * s.v2mp, s.v1np * s.v2mp)
        if self.kind == "lhv_mixture":
            parts = [
                (w, CorrelatorModel.deterministic(s).pair_correlations(config))
                for w, s in self.components
            ]
            return tuple(sum(w * e[i] for w, e in parts) for i in range(4))
        raise ValueError(f"unknown model kind {self.kind!r}")


@dataclass(frozen=True)
class ChshResult:
    """Value of the four-correlation combination for one config and model."""

    b_value: float
    violates: bool
    correlations: tuple[float, float, float, float]

    def to_json_dict(self) -> dict:
        return {
            "b_value": self.b_value,
            "violates": self.violates,
            "correlations": list(self.correlations),
        }


def chsh_value(config: ChshConfig, model: CorrelatorModel) -> ChshResult:
    e = tuple(float(v) for v in model.pair_correlations(config))
    if any(abs(v) > 1.0 + VIOLATION_MARGIN for v in e):
        raise ValueError("model produced a correlation outside [-1, 1]")
    b = e[0] + e[1] + e[2] - e[3]
    return ChshResult(b_value=b, violates=abs(b) > 2.0 + VIOLATION_MARGIN, correlations=e)


def lhv_deterministic_scan() -> tuple[float, list[DeterministicStrategy]]:
    """Exhaust the 16 deterministic strategies.

    Each one evaluates to b = +/-2 (one bracket in the defining combination
    is 0, the other +/-2), so the scan maximum is exactly 2 and no convex
    mixture can exceed it.
    """
    strategies = DeterministicStrategy.all_strategies()
    values = [abs(s.b_value()) for s in strategies]
    max_abs_b = float(max(values))
    maximizers = [s for s, v in zip(strategies, values) if v == max(values)]
    return (max_abs_b, maximizers)


def joint_outcome_probabilities(n: UnitAxis, m: UnitAxis) -> np.ndarray:
    """Joint law over (v1, v2) in order (+1,+1), (+1,-1), (-1,+1), (-1,-1)."""
    c = math.cos(angle_between(n, m))
    p = np.array([(1.0 - c), (1.0 + c), (1.0 + c), (1.0 - c)]) / 4.0
    p[3] = 1.0 - p[:3].sum()
    return p


def sample_singlet_pair(n: UnitAxis, m: UnitAxis, rng: np.random.Generator) -> tuple[int, int]:
    """Draw one outcome pair from the joint law with mean product -(n . m)."""
    p = joint_outcome_probabilities(n, m)
    u = rng.random()
    acc = 0.0
    for (v1, v2), prob in zip(((1, 1), (1, -1), (-1, 1), (-1, -1)), p):
        acc += prob
        if u < acc:
            return (v1, v2)
    return (-1, -1)


def sample_pair_counts(
    n: UnitAxis,
    m: UnitAxis,
    trials: int,
    seed: int,
    pair_index: int = 0,
    batch_size: int = 1 << 20,
) -> np.ndarray:
    """Outcome-pair counts over many trials, accumulated batch by batch.

    Batch ``b`` uses the generator derived from (seed, pair_index, b), so
    the totals are a pure function of the arguments no matter how batches
    are scheduled.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    p = joint_outcome_probabilities(n, m)
    counts = np.zeros(4, dtype=np.int64)
    done = 0
    for b in itertools.count():
        if done >= trials:
            break
        size = min(batch_size, trials - done)
        counts += derive_rng(seed, pair_index, b).multinomial(size, p)
        done += size
    return counts


@dataclass(frozen=True)
class MonteCarloChsh:
    """Sampled estimate of the combination next to its analytic value."""

    estimate: float
    stderr: float
    pair_estimates: tuple[float, float, float, float]
    pair_stderrs: tuple[float, float, float, float]
    pair_counts: tuple[tuple[int, int, int, int], ...]
    trials_per_pair: int
    seed: int
    analytic: ChshResult

    def to_json_dict(self) -> dict:
        return {
            "estimate": self.estimate,
            "stderr": self.stderr,
            "pair_estimates": list(self.pair_estimates),
            "pair_stderrs": list(self.pair_stderrs),
            "pair_counts": [list(c) for c in self.pair_counts],
            "trials_per_pair": self.trials_per_pair,
            "seed": self.seed,
        }


def monte_carlo_chsh(
    config: ChshConfig,
    trials_per_pair: int,
    seed: int,
    batch_size: int = 1 << 20,
) -> MonteCarloChsh:
    """Estimate the combination by sampling outcome pairs for each analyzer pair.

    Per-pair standard errors are sqrt((1 - e^2) / N) for the +/-1 product
    and combine in quadrature for the four-term sum.
    """
    if trials_per_pair < 1:
        raise ValueError("trials_per_pair must be at least 1")
    estimates, stderrs, all_counts = [], [], []
    for j, (a1, a2) in enumerate(config.pairs()):
        counts = sample_pair_counts(a1, a2, trials_per_pair, seed, pair_index=j, batch_size=batch_size)
        n_pp, n_pm, n_mp, n_mm = (int(c) for c in counts)
        e = (n_pp + n_mm - n_pm - n_mp) / trials_per_pair
        estimates.append(e)
        stderrs.append(math.sqrt(max(0.0, 1.0 - e * e) / trials_per_pair))
        all_counts.append((n_pp, n_pm, n_mp, n_mm))
    b_estimate = estimates[0] + estimates[1] + estimates[2] - estimates[3]
    b_stderr = math.sqrt(sum(s * s for s in stderrs))
    return MonteCarloChsh(
        estimate=b_estimate,
        stderr=b_stderr,
        pair_estimates=tuple(estimates),
        pair_stderrs=tuple(stderrs),
        pair_counts=tuple(all_counts),
        trials_per_pair=trials_per_pair,
        seed=seed,
        analytic=chsh_value(config, CorrelatorModel.quantum_singlet()),
    )
