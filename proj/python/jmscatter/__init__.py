"""Laguerre-basis J-matrix scattering: S-matrices, phase shifts, bound states and resonances."""

from ._core import (
    DEFAULT_ETA,
    BoundState,
    CensusRow,
    Channel,
    ConvergenceError,
    DomainError,
    InteractionMatrix,
    JmsError,
    KinematicTable,
    OverflowError,
    ResonancePeak,
    ScatteringResult,
    SingularityError,
    conjecture_census,
    find_bound_states,
    find_resonances,
    format_double,
    phase_shift_curve,
    pole_determinant,
    random_interactions,
    s_matrix,
)

__all__ = [
    "DEFAULT_ETA",
    "BoundState",
    "CensusRow",
    "Channel",
    "ConvergenceError",
    "DomainError",
    "InteractionMatrix",
    "JmsError",
    "KinematicTable",
    "OverflowError",
    "ResonancePeak",
    "ScatteringResult",
    "SingularityError",
    "conjecture_census",
    "find_bound_states",
    "find_resonances",
    "format_double",
    "phase_shift_curve",
    "pole_determinant",
    "random_interactions",
    "s_matrix",
]
