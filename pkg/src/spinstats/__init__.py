"""Discrete-outcome measurement statistics and CHSH experiments.

Reconstructs two- and three-outcome transition statistics from two
modeling rules (outcomes are discrete; classical transformation laws hold
for ensemble means), pits them against hidden-variable strategies in the
CHSH combination, and cross-checks everything against an independent
amplitude-based oracle.
"""

__version__ = "0.1.0"

from .axes import (
    CANONICAL_FRAME,
    Frame,
    UnitAxis,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    angle_between,
    axis_from_json,
    complete_frame,
    make_axis,
    parse_angle,
    random_axis,
    rotation_about,
)
from .chsh import (
    ChshConfig,
    ChshResult,
    CorrelatorModel,
    DeterministicStrategy,
    MonteCarloChsh,
    chsh_value,
    lhv_deterministic_scan,
    lhv_sign_correlator,
    monte_carlo_chsh,
    quantum_correlator,
    sample_singlet_pair,
)
from .composite import (
    CompositeState,
    SecondMomentTensor,
    TernaryDistribution,
    j_squared_composite,
    mixture_transition_table,
    rotated_m33,
    singlet_statistics,
    tensor_for_state,
    transition_table,
)
from .dichotomic import (
    BinaryDistribution,
    ElementaryState,
    StokesRecord,
    expectation,
    j_squared,
    measure,
    second_moment,
    stokes_experiment,
    transition_probability,
)
from .hilbert import (
    SpinState,
    singlet_projection_check,
    spin_half_probability,
    spin_half_state,
    spin_one_probability,
)
from .rng import derive_rng, fresh_seed, make_rng
from .verify import CheckResult, run_verification

__all__ = [
    "__version__",
    "CANONICAL_FRAME",
    "Frame",
    "UnitAxis",
    "X_AXIS",
    "Y_AXIS",
    "Z_AXIS",
    "angle_between",
    "axis_from_json",
    "complete_frame",
    "make_axis",
    "parse_angle",
    "random_axis",
    "rotation_about",
    "ChshConfig",
    "ChshResult",
    "CorrelatorModel",
    "DeterministicStrategy",
    "MonteCarloChsh",
    "chsh_value",
    "lhv_deterministic_scan",
    "lhv_sign_correlator",
    "monte_carlo_chsh",
    "quantum_correlator",
    "sample_singlet_pair",
    "CompositeState",
    "SecondMomentTensor",
    "TernaryDistribution",
    "j_squared_composite",
    "mixture_transition_table",
    "rotated_m33",
    "singlet_statistics",
    "tensor_for_state",
    "transition_table",
    "BinaryDistribution",
    "ElementaryState",
    "StokesRecord",
    "expectation",
    "j_squared",
    "measure",
    "second_moment",
    "stokes_experiment",
    "transition_probability",
    "SpinState",
    "singlet_projection_check",
    "spin_half_probability",
    "spin_half_state",
    "spin_one_probability",
    "derive_rng",
    "fresh_seed",
    "make_rng",
    "CheckResult",
    "run_verification",
]
