"""Occurrence statistics of sequences mirrored through an involution."""

from .asymptotic import (
    AsymptoticParams,
    average_log,
    chebyshev_bound,
    e_cumulative,
    main_term,
    theorem3_threshold,
    threshold_c,
)
from .core import (
    FreeHalf,
    Involution,
    OccurrenceProfile,
    SymmetricVector,
    canonical_involution,
    expand,
    occurrence_profile,
    validate_involution,
)
from .exact import ExactStats, average_exact, s2_exact, second_moment_about, variance_exact

__version__ = "0.1.0"
